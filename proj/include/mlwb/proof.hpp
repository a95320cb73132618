#ifndef MLWB_PROOF_HPP
#define MLWB_PROOF_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mlwb/formula.hpp"
#include "mlwb/frame.hpp"
#include "mlwb/semantics.hpp"
#include "mlwb/substitution.hpp"

namespace mlwb {

// Axiom schema: a template over schematic 0-ary predicate letters, possibly
// an indexed family over n (e.g. [C]p -> [E]^n p). Richer predicate-level
// instances are reached through the uniform substitution rule.
struct AxiomSchema {
  std::string id;
  bool indexed = false;
  std::function<Formula(int)> make;  // non-indexed schemata ignore the index
};

// One omega-rule step instantiation: the antecedent, the target formula and
// the optional box-prefix context Box_1(c_1 -> Box_2(c_2 -> ... target)).
struct OmegaInstantiation {
  Formula antecedent;
  Formula target;  // may be empty for rules that do not use it
  std::vector<std::pair<Modality, Formula>> prefix;
};

// Countable-premise rule: premise(inst, n) for each n, one conclusion.
struct OmegaRuleDescriptor {
  std::string id;
  std::function<Formula(const OmegaInstantiation&, int)> premise;
  std::function<Formula(const OmegaInstantiation&)> conclusion;
};

struct ProofSystem {
  std::string name;
  std::vector<Modality> modality_set;
  std::vector<AxiomSchema> schemata;
  std::vector<OmegaRuleDescriptor> omega_rules;

  bool has_modality(const Modality& m) const;
  const AxiomSchema* find_schema(const std::string& id) const;
  const OmegaRuleDescriptor* find_omega_rule(const std::string& id) const;

  // Built-in systems. qgl: mono-modal provability logic with the
  // diamond-iterate rule. qckl: the common knowledge system with box-prefix
  // contexts and both Barcan schemata. qckl_minus: qckl without the Barcan
  // schemata and with the context-free rule only.
  static const ProofSystem& qgl();
  static const ProofSystem& qckl();
  static const ProofSystem& qckl_minus();
  static const ProofSystem* by_name(const std::string& name);
};

// Concrete axiom instance of a schema under a substitution for its
// schematic letters. The index is required exactly for indexed families.
// The id "taut" is reserved for the tautology axioms and cannot be
// instantiated from a template. Throws EvalError / ArityMismatchError.
Formula instantiate_axiom(const ProofSystem& sys, const std::string& schema_id,
                          const SubstitutionMap& subst,
                          std::optional<int> index = std::nullopt);

// Desk-scale reading of "all classical tautologies": the formula's boolean
// skeleton (atoms, boxes and quantified subformulas opaque) is true under
// every valuation of its letters.
bool is_skeleton_tautology(const Formula& f, int max_letters = 20);

class Proof;
using ProofPtr = std::shared_ptr<const Proof>;

// What an omega-rule premise recipe yields for one index: a reference to an
// earlier step of the same proof, or a self-contained sub-proof.
using OmegaPremise = std::variant<int, ProofPtr>;

struct PremiseGenerator {
  std::string name;  // registered name; serialized in proof files
  std::function<OmegaPremise(int)> produce;
  // Payloads of the two inline recipes, kept so proof documents round-trip;
  // named builtins carry none.
  std::vector<int> step_refs;        // name "inline-steps"
  std::vector<ProofPtr> sub_proofs;  // name "inline-proofs"
};

PremiseGenerator inline_step_premises(std::vector<int> step_refs);
PremiseGenerator inline_proof_premises(std::vector<ProofPtr> sub_proofs);

struct AxiomJust {
  std::string schema;
  SubstitutionMap subst;
  std::optional<int> index;
};
struct MPJust {
  int implication = 0;
  int antecedent = 0;
};
struct UniformSubJust {
  int from = 0;
  SubstitutionMap subst;
};
struct NecessitationJust {
  int from = 0;
  Modality modality = Modality::box();
};
struct GeneralizationJust {
  int from = 0;
  std::string var;
};
struct OmegaJust {
  std::string rule;
  OmegaInstantiation inst;
  PremiseGenerator premises;
};

using Justification = std::variant<AxiomJust, MPJust, UniformSubJust,
                                   NecessitationJust, GeneralizationJust,
                                   OmegaJust>;

struct ProofStep {
  Formula formula;
  Justification just;
};

class Proof {
 public:
  Proof() = default;

  int add(Formula f, Justification j);
  int add_taut(Formula f);
  int add_mp(Formula f, int implication, int antecedent);

  const std::vector<ProofStep>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  const Formula& conclusion() const;

 private:
  std::vector<ProofStep> steps_;
};

enum class CheckStatus { FullyChecked, CheckedToBound, Rejected };

struct CheckReport {
  CheckStatus status = CheckStatus::Rejected;
  int bound = 0;          // meaningful for CheckedToBound
  int rejected_step = -1; // meaningful for Rejected
  std::string reason;
  std::vector<std::string> step_verdicts;  // one per top-level step

  bool accepted() const { return status != CheckStatus::Rejected; }
};

// Verifies every step syntactically. Omega-rule steps are verified by
// running their premise recipe for n = 0..omega_bound; the report is then
// CheckedToBound, never FullyChecked. Rejection points at the earliest bad
// step.
CheckReport check_proof(const ProofSystem& sys, const Proof& proof,
                        int omega_bound = 8);

// Derivation of the common-knowledge induction formula
// [C](p -> [E]p) -> (p -> [C]p) in the context-free system, concluded by
// its omega rule; the premise recipe builds, for each k, the derivation of
// (p & [C](p -> [E]p)) -> [E]^k p.
Proof generate_ck_induction_proof();

// The premise recipe above, exposed for reuse by proof files.
PremiseGenerator ck_induction_premises();

// Looks up registered premise recipes by name ("ck-induction-premises").
const PremiseGenerator* find_premise_generator(const std::string& name);

struct SoundnessViolation {
  std::size_t step = 0;
  std::size_t frame = 0;
};

struct SoundnessReport {
  int formulas_checked = 0;
  int frames_checked = 0;
  std::vector<SoundnessViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Every formula occurring in an accepted proof must be valid (bounded) on
// every supplied frame of the matching class; a violation falsifies either
// the checker or the frame-class checker. With premise_bound >= 0, omega
// steps additionally contribute every formula of their premise sub-proofs
// for indices 0..premise_bound.
SoundnessReport soundness_spot_check(const ProofSystem& sys, const Proof& proof,
                                     const std::vector<NeighborhoodFrame>& frames,
                                     const ValidateOptions& opts = {},
                                     int premise_bound = -1);

}  // namespace mlwb

#endif
