#ifndef MLWB_GENERATORS_HPP
#define MLWB_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "mlwb/algebra.hpp"
#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"

namespace mlwb {

struct FormulaGenOptions {
  int max_depth = 3;        // modal/quantifier nesting bound
  int num_predicates = 2;   // drawn from P0, P1, ... (0-ary) / P, Q (unary)
  int max_arity = 1;
  int num_vars = 2;
  bool closed = true;
  std::vector<Modality> modalities = {Modality::box()};
};

// Seeded random closed formulas; deterministic for a fixed seed sequence.
Formula random_formula(std::mt19937_64& rng, const FormulaGenOptions& opts);

enum class AlgebraStyle {
  Arbitrary,      // unconstrained box table
  Monotone,       // box x = join of seeds below x; satisfies MT
  KripkeDerived,  // box from a successor map; MT+TP+CF and completely
                  // multiplicative
};

ModalAlgebra random_algebra(std::mt19937_64& rng, int atoms,
                            const std::vector<Modality>& modalities,
                            AlgebraStyle style);

// A mixed bag of the three styles, seeded; used by the preservation and
// embedding sweeps.
ModalAlgebra random_algebra_mixed(std::mt19937_64& rng, int atoms,
                                  const std::vector<Modality>& modalities);

MeetFamily random_meet_family(std::mt19937_64& rng, const ModalAlgebra& a,
                              int max_sets = 3, int max_set_size = 4);

// All 2^(2^n) x ... neighborhood systems over n worlds for one modality;
// feasible for n = 2 (256 frames).
std::vector<NeighborhoodFrame> enumerate_frames(int worlds, const Modality& m);

// Every relation over n worlds (2^(n*n) of them) for one modality.
std::vector<Relation> enumerate_relations(int worlds, const Modality& m);

// Relations that are transitively closed and acyclic (strict partial
// orders), in enumeration order of the full relation sweep.
std::vector<Relation> enumerate_strict_orders(int worlds, const Modality& m);

}  // namespace mlwb

#endif
