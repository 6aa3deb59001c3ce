#include "caf/registry.hpp"

#include "caf/error.hpp"

namespace caf {

void ExtralogicalRegistry::add_function(std::string name, std::size_t arity,
                                        Function fn) {
  functions_[std::move(name)] = FunctionEntry{arity, std::move(fn)};
}

void ExtralogicalRegistry::add_relation(std::string name, std::size_t arity,
                                        Relation holds) {
  relations_[std::move(name)] = RelationEntry{arity, std::move(holds)};
}

const ExtralogicalRegistry::FunctionEntry& ExtralogicalRegistry::function(
    const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end())
    throw ConfigError("unregistered data function '" + name + "'");
  return it->second;
}

const ExtralogicalRegistry::RelationEntry& ExtralogicalRegistry::relation(
    const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end())
    throw ConfigError("unregistered data relation '" + name + "'");
  return it->second;
}

namespace {

ExtralogicalRegistry make_builtin() {
  ExtralogicalRegistry r;
  r.add_function("add", 2, [](std::span<const Datum> a) { return a[0] + a[1]; });
  r.add_function("mult", 2, [](std::span<const Datum> a) { return a[0] * a[1]; });
  r.add_function("inc", 1, [](std::span<const Datum> a) { return a[0] + 1; });
  // holds for negative odd numbers too
  r.add_relation("Odd", 1, [](std::span<const Datum> a) { return a[0] % 2 != 0; });
  r.add_relation("SmallerThan", 2,
                 [](std::span<const Datum> a) { return a[0] < a[1]; });
  r.add_relation("divByThree", 1,
                 [](std::span<const Datum> a) { return a[0] % 3 == 0; });
  return r;
}

}  // namespace

const ExtralogicalRegistry& ExtralogicalRegistry::builtin() {
  static const ExtralogicalRegistry instance = make_builtin();
  return instance;
}

}  // namespace caf
