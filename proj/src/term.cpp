#include "caf/term.hpp"

#include <stdexcept>
#include <variant>

namespace caf {

std::string DataVariable::str() const {
  switch (kind) {
    case Kind::Port:
      return name;
    case Kind::MemPre:
      return "'" + name;
    case Kind::MemPost:
      return name + "'";
  }
  return name;
}

struct DataTerm::Node {
  struct Application {
    std::string function;
    std::vector<DataTerm> args;
  };
  std::variant<DataVariable, Datum, Application> payload;
};

DataTerm DataTerm::var(DataVariable v) {
  return DataTerm(std::make_shared<const Node>(Node{std::move(v)}));
}

DataTerm DataTerm::constant(Datum d) {
  return DataTerm(std::make_shared<const Node>(Node{d}));
}

DataTerm DataTerm::app(std::string function, std::vector<DataTerm> args) {
  if (args.empty())
    throw std::invalid_argument("function application '" + function +
                                "' needs at least one argument");
  return DataTerm(std::make_shared<const Node>(
      Node{Node::Application{std::move(function), std::move(args)}}));
}

DataTerm::Tag DataTerm::tag() const {
  return static_cast<Tag>(node_->payload.index());
}

const DataVariable& DataTerm::variable() const {
  return std::get<DataVariable>(node_->payload);
}

Datum DataTerm::value() const { return std::get<Datum>(node_->payload); }

const std::string& DataTerm::function() const {
  return std::get<Node::Application>(node_->payload).function;
}

std::span<const DataTerm> DataTerm::args() const {
  if (tag() != Tag::App) return {};
  return std::get<Node::Application>(node_->payload).args;
}

void DataTerm::collect_variables(VariableSet& out) const {
  switch (tag()) {
    case Tag::Var:
      out.insert(variable());
      break;
    case Tag::Const:
      break;
    case Tag::App:
      for (const auto& a : args()) a.collect_variables(out);
      break;
  }
}

VariableSet DataTerm::variables() const {
  VariableSet out;
  collect_variables(out);
  return out;
}

bool DataTerm::mentions(const DataVariable& v) const {
  switch (tag()) {
    case Tag::Var:
      return variable() == v;
    case Tag::Const:
      return false;
    case Tag::App:
      for (const auto& a : args())
        if (a.mentions(v)) return true;
      return false;
  }
  return false;
}

DataTerm DataTerm::substitute(const DataVariable& x, const DataTerm& t) const {
  switch (tag()) {
    case Tag::Var:
      return variable() == x ? t : *this;
    case Tag::Const:
      return *this;
    case Tag::App: {
      if (!mentions(x)) return *this;
      std::vector<DataTerm> sub;
      sub.reserve(args().size());
      for (const auto& a : args()) sub.push_back(a.substitute(x, t));
      return app(function(), std::move(sub));
    }
  }
  return *this;
}

std::string DataTerm::str() const {
  switch (tag()) {
    case Tag::Var:
      return variable().str();
    case Tag::Const:
      return std::to_string(value());
    case Tag::App: {
      std::string s = function() + "(";
      bool first = true;
      for (const auto& a : args()) {
        if (!first) s += ", ";
        first = false;
        s += a.str();
      }
      return s + ")";
    }
  }
  return {};
}

bool operator==(const DataTerm& a, const DataTerm& b) {
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const DataTerm& a, const DataTerm& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.tag() <=> b.tag(); c != 0) return c;
  switch (a.tag()) {
    case DataTerm::Tag::Var:
      return a.variable() <=> b.variable();
    case DataTerm::Tag::Const:
      return a.value() <=> b.value();
    case DataTerm::Tag::App: {
      if (auto c = a.function().compare(b.function()) <=> 0; c != 0) return c;
      auto xs = a.args();
      auto ys = b.args();
      if (auto c = xs.size() <=> ys.size(); c != 0) return c;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (auto c = xs[i] <=> ys[i]; c != 0) return c;
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace caf
