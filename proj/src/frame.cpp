#include "mlwb/frame.hpp"

#include <algorithm>

#include "mlwb/errors.hpp"

namespace mlwb {

NeighborhoodFamily canonical_family(NeighborhoodFamily sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

bool family_contains(const NeighborhoodFamily& fam, WorldSet x) {
  return std::binary_search(fam.begin(), fam.end(), x);
}

NeighborhoodFrame::NeighborhoodFrame(int n, std::vector<Modality> modalities)
    : worlds(n) {
  if (n < 1 || n > kMaxWorlds)
    throw FormatError("world count must be in 1.." + std::to_string(kMaxWorlds));
  for (auto& m : modalities)
    systems.emplace(std::move(m), std::vector<NeighborhoodFamily>(n));
}

std::vector<Modality> NeighborhoodFrame::modalities() const {
  std::vector<Modality> out;
  for (const auto& [m, _] : systems) out.push_back(m);
  return out;
}

const std::vector<NeighborhoodFamily>& NeighborhoodFrame::system(
    const Modality& m) const {
  auto it = systems.find(m);
  if (it == systems.end()) throw EvalError("frame has no modality '" + m.name + "'");
  return it->second;
}

std::vector<NeighborhoodFamily>& NeighborhoodFrame::system(const Modality& m) {
  auto it = systems.find(m);
  if (it == systems.end()) throw EvalError("frame has no modality '" + m.name + "'");
  return it->second;
}

bool NeighborhoodFrame::neighborhood_contains(const Modality& m, int world,
                                              WorldSet x) const {
  return family_contains(system(m)[world], x);
}

void NeighborhoodFrame::validate() const {
  if (worlds < 1 || worlds > kMaxWorlds)
    throw FormatError("world count out of range");
  for (const auto& [m, sys] : systems) {
    if (static_cast<int>(sys.size()) != worlds)
      throw FormatError("neighborhood system for '" + m.name +
                        "' does not cover every world");
    for (const auto& fam : sys) {
      if (!std::is_sorted(fam.begin(), fam.end()) ||
          std::adjacent_find(fam.begin(), fam.end()) != fam.end())
        throw FormatError("neighborhood family not canonical");
      for (WorldSet x : fam)
        if ((x & ~universe()) != 0)
          throw FormatError("neighborhood member is not a subset of the worlds");
    }
  }
}

Relation::Relation(int n, std::vector<Modality> modalities) : worlds(n) {
  if (n < 1 || n > kMaxWorlds)
    throw FormatError("world count must be in 1.." + std::to_string(kMaxWorlds));
  for (auto& m : modalities)
    successors.emplace(std::move(m), std::vector<WorldSet>(n, 0));
}

const std::vector<WorldSet>& Relation::relation(const Modality& m) const {
  auto it = successors.find(m);
  if (it == successors.end())
    throw EvalError("relation has no modality '" + m.name + "'");
  return it->second;
}

std::vector<WorldSet>& Relation::relation(const Modality& m) {
  auto it = successors.find(m);
  if (it == successors.end())
    throw EvalError("relation has no modality '" + m.name + "'");
  return it->second;
}

void Relation::add_edge(const Modality& m, int from, int to) {
  relation(m)[from] |= WorldSet(1) << to;
}

bool Relation::has_edge(const Modality& m, int from, int to) const {
  return (relation(m)[from] >> to) & 1u;
}

bool check_mt(const NeighborhoodFrame& f, const Modality& m) {
  // Upward closure is generated by single-world extensions.
  for (const auto& fam : f.system(m))
    for (WorldSet x : fam)
      for (int w = 0; w < f.worlds; ++w) {
        WorldSet y = x | (WorldSet(1) << w);
        if (y != x && !family_contains(fam, y)) return false;
      }
  return true;
}

bool check_tp(const NeighborhoodFrame& f, const Modality& m) {
  for (const auto& fam : f.system(m))
    if (!family_contains(fam, f.universe())) return false;
  return true;
}

bool check_cf(const NeighborhoodFrame& f, const Modality& m) {
  for (const auto& fam : f.system(m))
    for (WorldSet x : fam)
      for (WorldSet y : fam)
        if (!family_contains(fam, x & y)) return false;
  return true;
}

namespace {

WorldSet family_intersection(const NeighborhoodFamily& fam, WorldSet universe) {
  WorldSet acc = universe;  // empty family intersects to the full universe
  for (WorldSet x : fam) acc &= x;
  return acc;
}

}  // namespace

bool check_kripke(const NeighborhoodFrame& f, const Modality& m) {
  if (!check_mt(f, m)) return false;
  for (const auto& fam : f.system(m))
    if (!family_contains(fam, family_intersection(fam, f.universe())))
      return false;
  return true;
}

Relation extract_relation(const NeighborhoodFrame& f) {
  Relation r(f.worlds, f.modalities());
  for (const auto& [m, sys] : f.systems)
    for (int c = 0; c < f.worlds; ++c)
      r.relation(m)[c] = family_intersection(sys[c], f.universe());
  return r;
}

NeighborhoodFrame relation_to_frame(const Relation& r) {
  std::vector<Modality> mods;
  for (const auto& [m, _] : r.successors) mods.push_back(m);
  NeighborhoodFrame f(r.worlds, mods);
  for (const auto& [m, succ] : r.successors)
    for (int c = 0; c < r.worlds; ++c) {
      NeighborhoodFamily fam;
      // All supersets of succ[c] within the universe.
      WorldSet rest = f.universe() & ~succ[c];
      WorldSet sub = 0;
      for (;;) {
        fam.push_back(succ[c] | sub);
        if (sub == rest) break;
        sub = (sub - rest) & rest;
      }
      f.system(m)[c] = canonical_family(std::move(fam));
    }
  return f;
}

bool check_conversely_wellfounded(const Relation& r, const Modality& m) {
  const auto& succ = r.relation(m);
  // Finite case: conversely well-founded iff acyclic (self-loops included).
  std::vector<int> state(r.worlds, 0);  // 0 unseen, 1 on stack, 2 done
  auto dfs = [&](auto&& self, int v) -> bool {
    state[v] = 1;
    for (int w = 0; w < r.worlds; ++w) {
      if (!((succ[v] >> w) & 1u)) continue;
      if (state[w] == 1) return false;
      if (state[w] == 0 && !self(self, w)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (int v = 0; v < r.worlds; ++v)
    if (state[v] == 0 && !dfs(dfs, v)) return false;
  return true;
}

std::vector<WorldSet> transitive_closure(const std::vector<WorldSet>& succ,
                                         bool include_identity) {
  int n = static_cast<int>(succ.size());
  std::vector<WorldSet> out = succ;
  for (bool changed = true; changed;) {
    changed = false;
    for (int c = 0; c < n; ++c) {
      WorldSet reach = out[c];
      for (int w = 0; w < n; ++w)
        if ((out[c] >> w) & 1u) reach |= out[w];
      if (reach != out[c]) {
        out[c] = reach;
        changed = true;
      }
    }
  }
  if (include_identity)
    for (int c = 0; c < n; ++c) out[c] |= WorldSet(1) << c;
  return out;
}

Relation common_knowledge_relation(const Relation& r, const Modality& e,
                                   const Modality& c, bool include_identity) {
  Relation out = r;
  out.successors[c] = transitive_closure(r.relation(e), include_identity);
  return out;
}

}  // namespace mlwb
