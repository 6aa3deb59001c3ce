#include "caf/families.hpp"

#include "caf/error.hpp"

namespace caf {

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"sync", "fifo",           "merg", "lateasyncmerg",
                                              "earlyasyncmerg", "rout", "oddfib"};
  return names;
}

const std::vector<int>& sweep_ks() {
  static const std::vector<int> ks{1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64};
  return ks;
}

namespace {

using Expr = CompositionExpr;

std::string num(const std::string& base, int i) { return base + std::to_string(i); }

Expr prim(std::string kind, std::vector<std::string> in, std::vector<std::string> out,
          std::vector<std::string> memory = {}, std::string ext = {},
          std::map<std::string, Datum> initial = {}) {
  return Expr::prim(PrimitiveSpec{std::move(kind), std::move(ext), std::move(memory),
                                  std::move(initial), std::move(in), std::move(out)});
}

// Builder that collects primitives and the internal ports to hide.
struct Circuit {
  std::vector<Expr> parts;
  std::vector<std::string> internal;
  int fresh = 0;

  std::string node(const std::string& base) {
    std::string p = num(base, ++fresh);
    internal.push_back(p);
    return p;
  }

  void add(Expr e) { parts.push_back(std::move(e)); }

  // Copies src to every port of dsts through a chain of repl2.
  void replicate(const std::string& src, const std::vector<std::string>& dsts) {
    if (dsts.size() == 1) {
      add(prim("sync", {src}, {dsts[0]}));
      return;
    }
    std::string from = src;
    for (std::size_t i = 0; i + 2 < dsts.size(); ++i) {
      std::string next = node("R");
      add(prim("repl2", {from}, {dsts[i], next}));
      from = next;
    }
    add(prim("repl2", {from}, {dsts[dsts.size() - 2], dsts.back()}));
  }

  // Routes each of srcs to dst through a chain of merg2.
  void merge(const std::vector<std::string>& srcs, const std::string& dst) {
    if (srcs.size() == 1) {
      add(prim("sync", {srcs[0]}, {dst}));
      return;
    }
    std::string acc = srcs[0];
    for (std::size_t i = 1; i < srcs.size(); ++i) {
      std::string out = i + 1 == srcs.size() ? dst : node("M");
      add(prim("merg2", {acc, srcs[i]}, {out}));
      acc = out;
    }
  }

  Composition finish(std::string name) {
    Expr e = Expr::join_all(std::move(parts));
    for (const auto& p : internal) e = Expr::hide(std::move(e), p);
    return Composition{std::move(name), std::move(e)};
  }
};

std::vector<std::string> names(const std::string& base, int k) {
  std::vector<std::string> out;
  for (int i = 1; i <= k; ++i) out.push_back(num(base, i));
  return out;
}

Composition chain(const std::string& kind, int k) {
  Circuit c;
  for (int i = 1; i <= k; ++i) {
    if (i > 1) c.internal.push_back(num("p", i));
    if (kind == "sync") c.add(prim("sync", {num("p", i)}, {num("p", i + 1)}));
    else c.add(prim("fifo", {num("p", i)}, {num("p", i + 1)}, {num("x", i)}));
  }
  return c.finish((kind == "sync" ? "Sync_" : "Fifo_") + std::to_string(k));
}

Composition rout(int k) {
  Circuit c;
  auto outs = names("Out", k);
  std::vector<std::string> lossy_in, to_merger;
  for (int i = 1; i <= k; ++i) {
    lossy_in.push_back(c.node("L"));
    to_merger.push_back(c.node("Q"));
  }
  std::string s = c.node("S"), t = c.node("T");
  c.replicate("In", lossy_in);
  c.add(prim("sync", {"In"}, {s}));
  c.add(prim("syncdrain", {s, t}, {}));
  c.merge(to_merger, t);
  for (int i = 0; i < k; ++i) {
    std::string r = c.node("P");
    c.add(prim("lossysync", {lossy_in[i]}, {r}));
    c.add(prim("repl2", {r}, {to_merger[i], outs[i]}));
  }
  return c.finish("Rout_" + std::to_string(k));
}

Composition oddfib(int k) {
  Circuit c;
  c.internal = {"A", "B", "C", "D", "E", "F", "G", "H", "P1", "P2", "P3", "P4", "P5"};
  c.add(prim("binop", {"B", "D"}, {"E"}, {}, "add"));
  c.add(prim("repl2", {"E"}, {"F", "G"}));
  c.add(prim("fifo", {"F"}, {"P1"}, {"y1"}));
  c.add(prim("fifo", {"P1"}, {"P2"}, {"y2"}, {}, {{"y2", 1}}));
  c.add(prim("repl2", {"P2"}, {"C", "P3"}));
  c.add(prim("sync", {"C"}, {"D"}));
  c.add(prim("repl2", {"P3"}, {"P4", "P5"}));
  c.add(prim("fifo", {"P5"}, {"A"}, {"x1"}, {}, {{"x1", 0}}));
  c.add(prim("fifo", {"A"}, {"B"}, {"x2"}));
  c.add(prim("syncdrain", {"P4", "In"}, {}));
  c.add(prim("filter", {"G"}, {"H"}, {}, "Odd"));
  c.replicate("H", names("Out", k));
  return c.finish("OddFib_" + std::to_string(k));
}

}  // namespace

Composition family(const std::string& name, int k) {
  if (k < 1) throw ConfigError("family size must be at least 1");
  if (name == "sync" || name == "fifo") return chain(name, k);
  if (name == "merg") {
    Circuit c;
    c.merge(names("In", k), "Out");
    return c.finish("Merg_" + std::to_string(k));
  }
  if (name == "lateasyncmerg") {
    Circuit c;
    std::string p = c.node("P");
    c.merge(names("In", k), p);
    c.add(prim("fifo", {p}, {"Out"}, {"x"}));
    return c.finish("LateAsyncMerg_" + std::to_string(k));
  }
  if (name == "earlyasyncmerg") {
    Circuit c;
    std::vector<std::string> buffered;
    for (int i = 1; i <= k; ++i) {
      buffered.push_back(c.node("P"));
      c.add(prim("fifo", {num("In", i)}, {buffered.back()}, {num("x", i)}));
    }
    c.merge(buffered, "Out");
    return c.finish("EarlyAsyncMerg_" + std::to_string(k));
  }
  if (name == "rout") return rout(k);
  if (name == "oddfib") return oddfib(k);
  throw ConfigError("unknown family '" + name + "'");
}

}  // namespace caf
