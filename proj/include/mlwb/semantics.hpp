#ifndef MLWB_SEMANTICS_HPP
#define MLWB_SEMANTICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "mlwb/algebra.hpp"
#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"

namespace mlwb {

// Interpretation of one predicate symbol in a neighborhood model: per
// world, a bitmask over tuple indices. A tuple (t_0..t_{a-1}) over domain d
// has index sum t_i * d^i.
struct PredicateExtension {
  int arity = 0;
  std::vector<std::uint64_t> true_at;  // indexed by world
};

struct NeighborhoodModel {
  NeighborhoodFrame frame;
  int domain = 1;
  std::map<std::string, PredicateExtension> interp;

  void validate() const;
};

// Interpretation in an algebraic model: per tuple index, an algebra element.
struct PredicateValuation {
  int arity = 0;
  std::vector<Elem> value;  // indexed by tuple
};

struct AlgebraicModel {
  ModalAlgebra algebra;
  int domain = 1;
  std::map<std::string, PredicateValuation> interp;

  void validate() const;
};

// Total on the variables the evaluated formula mentions.
using Assignment = std::map<std::string, int>;

std::uint64_t tuple_count(int domain, int arity);
std::uint64_t tuple_index(const std::vector<int>& tuple, int domain);
std::vector<int> tuple_from_index(std::uint64_t index, int domain, int arity);

// The two valuation functions. Both throw EvalError on a missing predicate
// interpretation or unassigned free variable.
WorldSet eval_neighborhood(const NeighborhoodModel& m, const Assignment& a,
                           const Formula& f);
Elem eval_algebraic(const AlgebraicModel& m, const Assignment& a,
                    const Formula& f);

// Model translations along c in P(d1..dn) <=> (d1..dn) in P(c); mutually
// inverse, and valuations agree pointwise across them.
AlgebraicModel model_to_algebraic(const NeighborhoodModel& m);
NeighborhoodModel algebraic_to_model(const AlgebraicModel& m);

struct ValidateOptions {
  int max_domain = 2;
  std::uint64_t budget = 5'000'000;  // root evaluations per call
  bool quantify_free = false;        // false: reject non-closed formulas
};

struct Countermodel {
  NeighborhoodModel model;
  Assignment assignment;
  int world = 0;
};

struct ValidationOutcome {
  bool valid = false;
  int max_domain_checked = 0;
  std::optional<Countermodel> countermodel;
};

// Bounded refutation search: enumerates domains 1..max_domain, every
// interpretation of the formula's predicate symbols (lexicographic over
// (world, predicate, tuple) bit-vectors) and every assignment. Returns the
// lexicographically least countermodel, or bounded validity. Throws
// ResourceLimitError when the enumeration would exceed the step budget and
// EvalError for non-closed formulas under the default policy.
ValidationOutcome frame_validates(const NeighborhoodFrame& frame,
                                  const Formula& f,
                                  const ValidateOptions& opts = {});

struct AlgebraicCounterexample {
  AlgebraicModel model;
  Assignment assignment;
  Elem value = 0;  // u(f), not the top element
};

struct AlgebraicValidationOutcome {
  bool valid = false;
  int max_domain_checked = 0;
  std::optional<AlgebraicCounterexample> counterexample;
};

// Same bounded search on the algebra side: u(f) must be 1 for every domain,
// valuation of the predicate symbols and assignment.
AlgebraicValidationOutcome algebra_validates(const ModalAlgebra& a,
                                             const Formula& f,
                                             const ValidateOptions& opts = {});

struct DualityEntry {
  Formula formula;
  bool frame_valid = false;
  bool algebra_valid = false;
};

struct DualityReport {
  int checked = 0;
  std::vector<DualityEntry> disagreements;
  bool ok() const { return disagreements.empty(); }
};

// Runs frame_validates and the algebraic check over the complex algebra of
// the frame with the same bounds, recording every disagreement (none are
// expected).
DualityReport check_duality(const NeighborhoodFrame& frame,
                            const std::vector<Formula>& formulas,
                            const ValidateOptions& opts = {});

// C(p -> [E]p) -> (p -> [C]p), the common-knowledge induction formula.
Formula ck_induction_formula(const Modality& e, const Modality& c);

struct CklKripkeReport {
  bool kripke_both = false;         // frame is Kripke for E and C
  bool hyp_unfold = false;          // [C]p -> [E]^n p valid, n = 0..max_n
  bool hyp_induction = false;       // induction formula valid
  bool concl_fixpoint = false;      // C X = meet of the E-orbit of X, all X
  bool concl_c_implies_ec = false;  // [C]p -> [E][C]p valid

  bool hypotheses_hold() const {
    return kripke_both && hyp_unfold && hyp_induction;
  }
  bool conclusions_hold() const { return concl_fixpoint && concl_c_implies_ec; }
  // The finite-frame consequence: hypotheses force the conclusions.
  bool consistent() const { return !hypotheses_hold() || conclusions_hold(); }
};

// Checks, over a Kripke bi-frame, the hypothesis surrogates of the
// common-knowledge soundness lemma and both of its conclusions.
CklKripkeReport check_ckl_kripke_consequences(const NeighborhoodFrame& frame,
                                              const Modality& e,
                                              const Modality& c, int max_n = 3,
                                              const ValidateOptions& opts = {});

}  // namespace mlwb

#endif
