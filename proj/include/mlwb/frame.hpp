#ifndef MLWB_FRAME_HPP
#define MLWB_FRAME_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "mlwb/formula.hpp"

namespace mlwb {

// Worlds are dense ids 0..n-1; a world-set is a bitmask over them. Frames
// are capped at kMaxWorlds so P(C) indices stay machine words.
using WorldSet = std::uint32_t;
inline constexpr int kMaxWorlds = 16;

// A family of world-sets, kept sorted and duplicate-free.
using NeighborhoodFamily = std::vector<WorldSet>;

NeighborhoodFamily canonical_family(NeighborhoodFamily sets);
bool family_contains(const NeighborhoodFamily& fam, WorldSet x);

// Finite neighborhood frame: per modality, each world gets a family of
// world-sets.
struct NeighborhoodFrame {
  int worlds = 1;
  std::map<Modality, std::vector<NeighborhoodFamily>> systems;

  NeighborhoodFrame() = default;
  NeighborhoodFrame(int n, std::vector<Modality> modalities);

  WorldSet universe() const { return static_cast<WorldSet>((1u << worlds) - 1); }
  bool has_modality(const Modality& m) const { return systems.count(m) != 0; }
  std::vector<Modality> modalities() const;

  const std::vector<NeighborhoodFamily>& system(const Modality& m) const;
  std::vector<NeighborhoodFamily>& system(const Modality& m);
  bool neighborhood_contains(const Modality& m, int world, WorldSet x) const;

  // Throws FormatError when world bounds or subset invariants fail.
  void validate() const;
};

// Accessibility relations, one successor mask per world per modality.
struct Relation {
  int worlds = 1;
  std::map<Modality, std::vector<WorldSet>> successors;

  Relation() = default;
  Relation(int n, std::vector<Modality> modalities);

  const std::vector<WorldSet>& relation(const Modality& m) const;
  std::vector<WorldSet>& relation(const Modality& m);
  void add_edge(const Modality& m, int from, int to);
  bool has_edge(const Modality& m, int from, int to) const;
};

// Frame-class property checks (per modality).
bool check_mt(const NeighborhoodFrame& f, const Modality& m);
bool check_tp(const NeighborhoodFrame& f, const Modality& m);
bool check_cf(const NeighborhoodFrame& f, const Modality& m);

// Kripke: MT plus the intersection of each N(c) being a member of N(c);
// the empty intersection is the full universe.
bool check_kripke(const NeighborhoodFrame& f, const Modality& m);

// R[c] = intersection of N(c); meaningful on Kripke frames.
Relation extract_relation(const NeighborhoodFrame& f);

// N_m(c) = all supersets of the successor set; the result passes
// check_kripke for every modality.
NeighborhoodFrame relation_to_frame(const Relation& r);

// On a finite relation: no cycles, including self-loops.
bool check_conversely_wellfounded(const Relation& r, const Modality& m);

// Union of all positive powers of the relation (standard transitive
// closure); with include_identity, the zeroth power is added too.
std::vector<WorldSet> transitive_closure(const std::vector<WorldSet>& succ,
                                         bool include_identity = false);

// Builds the common-knowledge companion relation R_C from R_E. The default
// includes the zeroth power: the C-as-meet condition C x = meet of E^n x
// over all n starts its iteration at x itself, and the matching relation is
// the reflexive-transitive closure.
Relation common_knowledge_relation(const Relation& r, const Modality& e,
                                   const Modality& c,
                                   bool include_identity = true);

}  // namespace mlwb

#endif
