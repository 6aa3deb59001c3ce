#include "caf/primitives.hpp"

#include <algorithm>
#include <set>

#include "caf/error.hpp"

namespace caf {

const std::vector<std::string>& primitive_kinds() {
  static const std::vector<std::string> kinds{"sync",  "syncdrain", "lossysync", "filter",
                                              "fifo",  "merg2",     "repl2",     "binop"};
  return kinds;
}

namespace {

struct Signature {
  std::size_t inputs;
  std::size_t outputs;
  std::size_t memory;
  bool extralogical;
};

Signature signature_of(const std::string& kind) {
  if (kind == "sync") return {1, 1, 0, false};
  if (kind == "syncdrain") return {2, 0, 0, false};
  if (kind == "lossysync") return {1, 1, 0, false};
  if (kind == "filter") return {1, 1, 0, true};
  if (kind == "fifo") return {1, 1, 1, false};
  if (kind == "merg2") return {2, 1, 0, false};
  if (kind == "repl2") return {1, 2, 0, false};
  if (kind == "binop") return {2, 1, 0, true};
  throw ConfigError("unknown primitive '" + kind + "'");
}

DataTerm port(const std::string& p) { return DataTerm::var(DataVariable::port(p)); }

DataLiteral eq(const DataTerm& a, const DataTerm& b) { return DataLiteral::eq(a, b); }

}  // namespace

ConstraintAutomaton make_primitive(const PrimitiveSpec& spec, const ExtralogicalRegistry& reg) {
  const Signature sig = signature_of(spec.kind);
  auto arity = [&](const char* what, std::size_t got, std::size_t want) {
    if (got != want)
      throw ConfigError(spec.kind + " takes " + std::to_string(want) + " " + what + ", got " +
                        std::to_string(got));
  };
  arity("input port(s)", spec.inputs.size(), sig.inputs);
  arity("output port(s)", spec.outputs.size(), sig.outputs);
  arity("memory cell(s)", spec.memory.size(), sig.memory);
  if (sig.extralogical && spec.extralogical.empty())
    throw ConfigError(spec.kind + " needs an extralogical argument");
  if (!sig.extralogical && !spec.extralogical.empty())
    throw ConfigError(spec.kind + " takes no extralogical argument");
  if (spec.kind == "filter" && reg.relation(spec.extralogical).arity != 1)
    throw ConfigError("filter relation '" + spec.extralogical + "' must be unary");
  if (spec.kind == "binop" && reg.function(spec.extralogical).arity != 2)
    throw ConfigError("binop function '" + spec.extralogical + "' must be binary");
  for (const auto& [m, d] : spec.initial_memory)
    if (std::find(spec.memory.begin(), spec.memory.end(), m) == spec.memory.end())
      throw ConfigError("initial value for unknown memory cell '" + m + "'");

  ConstraintAutomaton a;
  a.name = spec.kind;
  std::set<std::string> seen;
  for (const auto* group : {&spec.inputs, &spec.outputs}) {
    for (const auto& p : *group) {
      if (!seen.insert(p).second)
        throw ConfigError(spec.kind + " uses port '" + p + "' twice");
      a.ports.all.insert(p);
    }
  }
  a.ports.inputs.insert(spec.inputs.begin(), spec.inputs.end());
  a.ports.outputs.insert(spec.outputs.begin(), spec.outputs.end());
  a.memory.insert(spec.memory.begin(), spec.memory.end());
  a.initial_memory = spec.initial_memory;
  a.states = {"q0"};
  a.initial = "q0";

  const auto& in = spec.inputs;
  const auto& out = spec.outputs;
  auto add = [&](PortSet sync, std::vector<DataLiteral> kernel, std::string from = "q0",
                 std::string to = "q0") {
    a.transitions.push_back(
        Transition{std::move(from), std::move(sync), DataConstraint(std::move(kernel)), std::move(to)});
  };

  if (spec.kind == "sync") {
    add({in[0], out[0]}, {eq(port(in[0]), port(out[0]))});
  } else if (spec.kind == "syncdrain") {
    add({in[0], in[1]}, {DataLiteral::top()});
  } else if (spec.kind == "lossysync") {
    add({in[0]}, {DataLiteral::top()});
    add({in[0], out[0]}, {eq(port(in[0]), port(out[0]))});
  } else if (spec.kind == "filter") {
    auto r = DataLiteral::rel(spec.extralogical, {port(in[0])});
    add({in[0]}, {DataLiteral::negation(r)});
    add({in[0], out[0]}, {r, eq(port(in[0]), port(out[0]))});
  } else if (spec.kind == "fifo") {
    const auto& m = spec.memory[0];
    a.states = {"q0", "q1"};
    if (spec.initial_memory.count(m)) a.initial = "q1";
    add({in[0]}, {eq(DataTerm::var(DataVariable::post(m)), port(in[0]))}, "q0", "q1");
    add({out[0]}, {eq(port(out[0]), DataTerm::var(DataVariable::pre(m)))}, "q1", "q0");
  } else if (spec.kind == "merg2") {
    add({in[0], out[0]}, {eq(port(in[0]), port(out[0]))});
    add({in[1], out[0]}, {eq(port(in[1]), port(out[0]))});
  } else if (spec.kind == "repl2") {
    add({in[0], out[0], out[1]},
        {eq(port(in[0]), port(out[0])), eq(port(in[0]), port(out[1]))});
  } else if (spec.kind == "binop") {
    add({in[0], in[1], out[0]},
        {eq(DataTerm::app(spec.extralogical, {port(in[0]), port(in[1])}), port(out[0]))});
  }
  return a;
}

}  // namespace caf
