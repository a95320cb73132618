#include "mlwb/proof.hpp"

#include <stdexcept>

#include "mlwb/errors.hpp"

namespace mlwb {

namespace {

const Modality kE("E");
const Modality kC("C");

Formula letter(const char* name) { return Formula::atom(name); }

Formula k_axiom(const Modality& m) {
  Formula p = letter("p"), q = letter("q");
  return Formula::implies(Formula::box(m, Formula::implies(p, q)),
                          Formula::implies(Formula::box(m, p),
                                           Formula::box(m, q)));
}

Formula barcan_axiom(const Modality& m) {
  Formula phi = letter("phi");
  return Formula::implies(Formula::forall("x", Formula::box(m, phi)),
                          Formula::box(m, Formula::forall("x", phi)));
}

Formula diamond_power(const Modality& m, int n, Formula f) {
  for (int i = 0; i < n; ++i) f = Formula::diamond(m, std::move(f));
  return f;
}

Formula wrap_prefix(const OmegaInstantiation& inst, Formula inner) {
  for (std::size_t i = inst.prefix.size(); i-- > 0;)
    inner = Formula::box(inst.prefix[i].first,
                         Formula::implies(inst.prefix[i].second, inner));
  return Formula::implies(inst.antecedent, inner);
}

void require_target(const OmegaInstantiation& inst) {
  if (inst.target.empty())
    throw EvalError("omega rule instantiation needs a target formula");
}

OmegaRuleDescriptor gl_omega_rule() {
  OmegaRuleDescriptor r;
  r.id = "gl-omega";
  r.premise = [](const OmegaInstantiation& inst, int n) {
    if (!inst.prefix.empty())
      throw EvalError("gl-omega takes no box-prefix context");
    return Formula::implies(inst.antecedent,
                            diamond_power(Modality::box(), n, Formula::top()));
  };
  r.conclusion = [](const OmegaInstantiation& inst) {
    if (!inst.prefix.empty())
      throw EvalError("gl-omega takes no box-prefix context");
    return Formula::implies(inst.antecedent, Formula::bottom());
  };
  return r;
}

OmegaRuleDescriptor ck_intro_rule(bool allow_prefix) {
  OmegaRuleDescriptor r;
  r.id = "ck-intro";
  r.premise = [allow_prefix](const OmegaInstantiation& inst, int n) {
    require_target(inst);
    if (!allow_prefix && !inst.prefix.empty())
      throw EvalError("ck-intro takes no box-prefix context in this system");
    return wrap_prefix(inst, Formula::box_power(kE, n, inst.target));
  };
  r.conclusion = [allow_prefix](const OmegaInstantiation& inst) {
    require_target(inst);
    if (!allow_prefix && !inst.prefix.empty())
      throw EvalError("ck-intro takes no box-prefix context in this system");
    return wrap_prefix(inst, Formula::box(kC, inst.target));
  };
  return r;
}

ProofSystem build_qgl() {
  ProofSystem sys;
  sys.name = "PS-QGL";
  sys.modality_set = {Modality::box()};
  sys.schemata.push_back({"k", false, [](int) { return k_axiom(Modality::box()); }});
  sys.schemata.push_back({"four", false, [](int) {
                            Formula p = letter("p");
                            return Formula::implies(
                                Formula::box(Modality::box(), p),
                                Formula::box(Modality::box(),
                                             Formula::box(Modality::box(), p)));
                          }});
  sys.omega_rules.push_back(gl_omega_rule());
  return sys;
}

ProofSystem build_qckl(bool minus) {
  ProofSystem sys;
  sys.name = minus ? "PS-QCKL-" : "PS-QCKL";
  sys.modality_set = {kC, kE};
  sys.schemata.push_back({"k-e", false, [](int) { return k_axiom(kE); }});
  sys.schemata.push_back({"k-c", false, [](int) { return k_axiom(kC); }});
  sys.schemata.push_back({"c-unfold", true, [](int n) {
                            Formula p = letter("p");
                            return Formula::implies(
                                Formula::box(kC, p),
                                Formula::box_power(kE, n, p));
                          }});
  if (!minus) {
    sys.schemata.push_back({"barcan-e", false, [](int) { return barcan_axiom(kE); }});
    sys.schemata.push_back({"barcan-c", false, [](int) { return barcan_axiom(kC); }});
  }
  sys.omega_rules.push_back(ck_intro_rule(/*allow_prefix=*/!minus));
  return sys;
}

}  // namespace

bool ProofSystem::has_modality(const Modality& m) const {
  for (const auto& x : modality_set)
    if (x == m) return true;
  return false;
}

const AxiomSchema* ProofSystem::find_schema(const std::string& id) const {
  for (const auto& s : schemata)
    if (s.id == id) return &s;
  return nullptr;
}

const OmegaRuleDescriptor* ProofSystem::find_omega_rule(
    const std::string& id) const {
  for (const auto& r : omega_rules)
    if (r.id == id) return &r;
  return nullptr;
}

const ProofSystem& ProofSystem::qgl() {
  static const ProofSystem sys = build_qgl();
  return sys;
}

const ProofSystem& ProofSystem::qckl() {
  static const ProofSystem sys = build_qckl(false);
  return sys;
}

const ProofSystem& ProofSystem::qckl_minus() {
  static const ProofSystem sys = build_qckl(true);
  return sys;
}

const ProofSystem* ProofSystem::by_name(const std::string& name) {
  if (name == "qgl" || name == "PS-QGL") return &qgl();
  if (name == "qckl" || name == "PS-QCKL") return &qckl();
  if (name == "qckl-" || name == "PS-QCKL-") return &qckl_minus();
  return nullptr;
}

Formula instantiate_axiom(const ProofSystem& sys, const std::string& schema_id,
                          const SubstitutionMap& subst,
                          std::optional<int> index) {
  if (schema_id == "taut")
    throw EvalError("the tautology axioms have no single template");
  const AxiomSchema* schema = sys.find_schema(schema_id);
  if (!schema)
    throw EvalError("unknown axiom schema '" + schema_id + "' in " + sys.name);
  if (schema->indexed && !index)
    throw EvalError("schema '" + schema_id + "' is an indexed family; an index is required");
  if (!schema->indexed && index)
    throw EvalError("schema '" + schema_id + "' is not indexed");
  if (index && *index < 0) throw EvalError("negative schema index");
  return instantiate_schema(subst, schema->make(index.value_or(0)));
}

namespace {

void collect_letters(const Formula& f, std::map<std::string, int>& letters) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return;
    case FormulaKind::And:
      collect_letters(f.left(), letters);
      collect_letters(f.right(), letters);
      return;
    case FormulaKind::Not:
      collect_letters(f.child(), letters);
      return;
    case FormulaKind::Atom:
    case FormulaKind::Forall:
    case FormulaKind::Box: {
      std::string key = f.str();
      letters.emplace(key, static_cast<int>(letters.size()));
      return;
    }
  }
}

bool eval_skeleton(const Formula& f, const std::map<std::string, int>& letters,
                   std::uint32_t valuation) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bottom:
      return false;
    case FormulaKind::And:
      return eval_skeleton(f.left(), letters, valuation) &&
             eval_skeleton(f.right(), letters, valuation);
    case FormulaKind::Not:
      return !eval_skeleton(f.child(), letters, valuation);
    case FormulaKind::Atom:
    case FormulaKind::Forall:
    case FormulaKind::Box:
      return (valuation >> letters.at(f.str())) & 1u;
  }
  return false;
}

}  // namespace

bool is_skeleton_tautology(const Formula& f, int max_letters) {
  std::map<std::string, int> letters;
  collect_letters(f, letters);
  int n = static_cast<int>(letters.size());
  if (n > max_letters)
    throw ResourceLimitError("tautology check over " + std::to_string(n) +
                             " letters exceeds the limit");
  for (std::uint32_t v = 0; v < (std::uint32_t(1) << n); ++v)
    if (!eval_skeleton(f, letters, v)) return false;
  return true;
}

int Proof::add(Formula f, Justification j) {
  steps_.push_back({std::move(f), std::move(j)});
  return static_cast<int>(steps_.size()) - 1;
}

int Proof::add_taut(Formula f) {
  return add(std::move(f), AxiomJust{"taut", {}, std::nullopt});
}

int Proof::add_mp(Formula f, int implication, int antecedent) {
  return add(std::move(f), MPJust{implication, antecedent});
}

const Formula& Proof::conclusion() const {
  if (steps_.empty()) throw std::logic_error("empty proof");
  return steps_.back().formula;
}

namespace {

struct StepFailure {
  std::string reason;
};

void require_earlier(int ref, int current, const char* what) {
  if (ref < 0 || ref >= current)
    throw StepFailure{std::string(what) + " reference " + std::to_string(ref) +
                      " is not an earlier step"};
}

// Verifies one step; throws StepFailure (or the library error types) with
// the reason on the first problem. Sets saw_omega when the step uses an
// omega rule.
void verify_step(const ProofSystem& sys, const Proof& proof, int i,
                 int omega_bound, bool& saw_omega) {
  const ProofStep& step = proof.steps()[i];
  const Formula& f = step.formula;

  if (const auto* ax = std::get_if<AxiomJust>(&step.just)) {
    if (ax->schema == "taut") {
      if (!is_skeleton_tautology(f))
        throw StepFailure{"formula is not a tautology"};
      return;
    }
    Formula expected = instantiate_axiom(sys, ax->schema, ax->subst, ax->index);
    if (f != expected)
      throw StepFailure{"axiom mismatch: schema '" + ax->schema +
                        "' instantiates to " + expected.str()};
    return;
  }
  if (const auto* mp = std::get_if<MPJust>(&step.just)) {
    require_earlier(mp->implication, i, "modus ponens");
    require_earlier(mp->antecedent, i, "modus ponens");
    Formula expected = Formula::implies(
        proof.steps()[mp->antecedent].formula, f);
    if (proof.steps()[mp->implication].formula != expected)
      throw StepFailure{"modus ponens shape mismatch"};
    return;
  }
  if (const auto* us = std::get_if<UniformSubJust>(&step.just)) {
    require_earlier(us->from, i, "substitution");
    if (f != apply_substitution(us->subst, proof.steps()[us->from].formula))
      throw StepFailure{"uniform substitution result mismatch"};
    return;
  }
  if (const auto* nec = std::get_if<NecessitationJust>(&step.just)) {
    require_earlier(nec->from, i, "necessitation");
    if (!sys.has_modality(nec->modality))
      throw StepFailure{"necessitation over unknown modality '" +
                        nec->modality.name + "'"};
    if (f != Formula::box(nec->modality, proof.steps()[nec->from].formula))
      throw StepFailure{"necessitation shape mismatch"};
    return;
  }
  if (const auto* gen = std::get_if<GeneralizationJust>(&step.just)) {
    require_earlier(gen->from, i, "generalization");
    if (f != Formula::forall(gen->var, proof.steps()[gen->from].formula))
      throw StepFailure{"generalization shape mismatch"};
    return;
  }
  const auto& om = std::get<OmegaJust>(step.just);
  const OmegaRuleDescriptor* rule = sys.find_omega_rule(om.rule);
  if (!rule)
    throw StepFailure{"unknown omega rule '" + om.rule + "' in " + sys.name};
  saw_omega = true;
  if (f != rule->conclusion(om.inst))
    throw StepFailure{"omega rule conclusion mismatch"};
  if (!om.premises.produce)
    throw StepFailure{"omega step has no premise recipe"};
  for (int n = 0; n <= omega_bound; ++n) {
    Formula expected = rule->premise(om.inst, n);
    OmegaPremise prem = om.premises.produce(n);
    if (const int* idx = std::get_if<int>(&prem)) {
      require_earlier(*idx, i, "omega premise");
      if (proof.steps()[*idx].formula != expected)
        throw StepFailure{"omega premise " + std::to_string(n) +
                          " does not match step " + std::to_string(*idx)};
    } else {
      const ProofPtr& sub = std::get<ProofPtr>(prem);
      if (!sub || sub->size() == 0)
        throw StepFailure{"omega premise " + std::to_string(n) +
                          " produced an empty sub-proof"};
      CheckReport subrep = check_proof(sys, *sub, omega_bound);
      if (!subrep.accepted())
        throw StepFailure{"omega premise " + std::to_string(n) +
                          " sub-proof rejected at step " +
                          std::to_string(subrep.rejected_step) + ": " +
                          subrep.reason};
      if (sub->conclusion() != expected)
        throw StepFailure{"omega premise " + std::to_string(n) +
                          " sub-proof proves " + sub->conclusion().str() +
                          " instead of " + expected.str()};
    }
  }
}

}  // namespace

CheckReport check_proof(const ProofSystem& sys, const Proof& proof,
                        int omega_bound) {
  if (omega_bound < 1) throw std::invalid_argument("omega bound must be >= 1");
  CheckReport rep;
  bool saw_omega = false;
  for (int i = 0; i < static_cast<int>(proof.size()); ++i) {
    try {
      verify_step(sys, proof, i, omega_bound, saw_omega);
      rep.step_verdicts.push_back("ok");
    } catch (const StepFailure& fail) {
      rep.status = CheckStatus::Rejected;
      rep.rejected_step = i;
      rep.reason = fail.reason;
      rep.step_verdicts.push_back(fail.reason);
      return rep;
    } catch (const std::exception& e) {
      rep.status = CheckStatus::Rejected;
      rep.rejected_step = i;
      rep.reason = e.what();
      rep.step_verdicts.push_back(e.what());
      return rep;
    }
  }
  if (proof.size() == 0) {
    rep.status = CheckStatus::Rejected;
    rep.reason = "empty proof";
    return rep;
  }
  rep.status = saw_omega ? CheckStatus::CheckedToBound : CheckStatus::FullyChecked;
  rep.bound = saw_omega ? omega_bound : 0;
  return rep;
}

namespace {

Formula letter_p() { return Formula::atom("p"); }

// p -> [E]p
Formula step_formula() {
  return Formula::implies(letter_p(), Formula::box(kE, letter_p()));
}

// [C](p -> [E]p)
Formula boxed_step() { return Formula::box(kC, step_formula()); }

// p & [C](p -> [E]p): the antecedent of the omega step.
Formula antecedent() { return Formula::conj(letter_p(), boxed_step()); }

// L_j : [E]^j(p -> [E]p) -> ([E]^j p -> [E]^{j+1} p)
Formula lifting_formula(int j) {
  return Formula::implies(
      Formula::box_power(kE, j, step_formula()),
      Formula::implies(Formula::box_power(kE, j, letter_p()),
                       Formula::box_power(kE, j + 1, letter_p())));
}

// (a -> b) -> ((b -> c) -> (a -> c))
Formula syllogism(const Formula& a, const Formula& b, const Formula& c) {
  return Formula::implies(
      Formula::implies(a, b),
      Formula::implies(Formula::implies(b, c), Formula::implies(a, c)));
}

// Derives L_{j+1} from the step holding L_j via necessitation and two K
// instances; returns the new step index.
int lift_once(Proof& pr, int l_prev, int j) {
  Formula a = Formula::box_power(kE, j + 1, step_formula());
  Formula b = Formula::box(kE,
                           Formula::implies(Formula::box_power(kE, j, letter_p()),
                                            Formula::box_power(kE, j + 1, letter_p())));
  Formula c = Formula::implies(Formula::box_power(kE, j + 1, letter_p()),
                               Formula::box_power(kE, j + 2, letter_p()));

  int nec = pr.add(Formula::box(kE, lifting_formula(j)),
                   NecessitationJust{l_prev, kE});
  SubstitutionMap k1;
  k1.set("p", Formula::box_power(kE, j, step_formula()));
  k1.set("q", Formula::implies(Formula::box_power(kE, j, letter_p()),
                               Formula::box_power(kE, j + 1, letter_p())));
  int ax1 = pr.add(instantiate_axiom(ProofSystem::qckl_minus(), "k-e", k1),
                   AxiomJust{"k-e", k1, std::nullopt});
  int m1 = pr.add_mp(Formula::implies(a, b), ax1, nec);

  SubstitutionMap k2;
  k2.set("p", Formula::box_power(kE, j, letter_p()));
  k2.set("q", Formula::box_power(kE, j + 1, letter_p()));
  int ax2 = pr.add(instantiate_axiom(ProofSystem::qckl_minus(), "k-e", k2),
                   AxiomJust{"k-e", k2, std::nullopt});

  int hs = pr.add_taut(syllogism(a, b, c));
  int m2 = pr.add_mp(Formula::implies(Formula::implies(b, c), Formula::implies(a, c)),
                     hs, m1);
  return pr.add_mp(Formula::implies(a, c), m2, ax2);  // L_{j+1}
}

// Self-contained derivation of (p & [C](p -> [E]p)) -> [E]^k p.
Proof induction_premise_proof(int k) {
  Proof pr;
  Formula d = antecedent();
  int current = pr.add_taut(Formula::implies(d, letter_p()));  // base case
  if (k == 0) return pr;

  int lift = pr.add_taut(lifting_formula(0));
  for (int j = 0; j < k; ++j) {
    if (j > 0) lift = lift_once(pr, lift, j - 1);

    Formula ej_step = Formula::box_power(kE, j, step_formula());
    SubstitutionMap unfold;
    unfold.set("p", step_formula());
    int ax = pr.add(
        instantiate_axiom(ProofSystem::qckl_minus(), "c-unfold", unfold, j),
        AxiomJust{"c-unfold", unfold, j});

    int weaken = pr.add_taut(Formula::implies(d, boxed_step()));
    int hs = pr.add_taut(syllogism(d, boxed_step(), ej_step));
    int m1 = pr.add_mp(Formula::implies(Formula::implies(boxed_step(), ej_step),
                                        Formula::implies(d, ej_step)),
                       hs, weaken);
    int m2 = pr.add_mp(Formula::implies(d, ej_step), m1, ax);

    Formula ej_p = Formula::box_power(kE, j, letter_p());
    Formula ej1_p = Formula::box_power(kE, j + 1, letter_p());
    Formula goal = Formula::implies(d, ej1_p);
    // (d -> E^j s) -> ((d -> E^j p) -> ((E^j s -> (E^j p -> E^{j+1} p)) -> (d -> E^{j+1} p)))
    Formula combine = Formula::implies(
        Formula::implies(d, ej_step),
        Formula::implies(Formula::implies(d, ej_p),
                         Formula::implies(lifting_formula(j), goal)));
    int t = pr.add_taut(combine);
    int m3 = pr.add_mp(Formula::implies(Formula::implies(d, ej_p),
                                        Formula::implies(lifting_formula(j), goal)),
                       t, m2);
    int m4 = pr.add_mp(Formula::implies(lifting_formula(j), goal), m3, current);
    current = pr.add_mp(goal, m4, lift);
  }
  return pr;
}

}  // namespace

PremiseGenerator ck_induction_premises() {
  return PremiseGenerator{
      "ck-induction-premises", [](int n) -> OmegaPremise {
        return std::make_shared<const Proof>(induction_premise_proof(n));
      }};
}

PremiseGenerator inline_step_premises(std::vector<int> step_refs) {
  PremiseGenerator g;
  g.name = "inline-steps";
  g.step_refs = std::move(step_refs);
  const std::vector<int>& refs = g.step_refs;
  g.produce = [refs](int n) -> OmegaPremise {
    if (n < 0 || n >= static_cast<int>(refs.size()))
      throw EvalError("premise list has no entry for n=" + std::to_string(n));
    return refs[static_cast<std::size_t>(n)];
  };
  return g;
}

PremiseGenerator inline_proof_premises(std::vector<ProofPtr> sub_proofs) {
  PremiseGenerator g;
  g.name = "inline-proofs";
  g.sub_proofs = std::move(sub_proofs);
  const std::vector<ProofPtr>& proofs = g.sub_proofs;
  g.produce = [proofs](int n) -> OmegaPremise {
    if (n < 0 || n >= static_cast<int>(proofs.size()))
      throw EvalError("premise list has no entry for n=" + std::to_string(n));
    return proofs[static_cast<std::size_t>(n)];
  };
  return g;
}

const PremiseGenerator* find_premise_generator(const std::string& name) {
  static const PremiseGenerator ck = ck_induction_premises();
  if (name == ck.name) return &ck;
  return nullptr;
}

Proof generate_ck_induction_proof() {
  Proof pr;
  Formula d = antecedent();
  Formula goal = ck_induction_formula(kE, kC);
  Formula omega_conclusion = Formula::implies(d, Formula::box(kC, letter_p()));

  OmegaInstantiation inst;
  inst.antecedent = d;
  inst.target = letter_p();
  int om = pr.add(omega_conclusion,
                  OmegaJust{"ck-intro", inst, ck_induction_premises()});
  // Propositional repackaging of the omega conclusion into the induction
  // formula.
  int t = pr.add_taut(Formula::implies(omega_conclusion, goal));
  pr.add_mp(goal, t, om);
  return pr;
}

namespace {

void collect_proved_formulas(const Proof& proof, int premise_bound,
                             std::vector<Formula>& out) {
  for (const ProofStep& step : proof.steps()) {
    out.push_back(step.formula);
    if (premise_bound < 0) continue;
    const auto* om = std::get_if<OmegaJust>(&step.just);
    if (!om || !om->premises.produce) continue;
    for (int n = 0; n <= premise_bound; ++n) {
      OmegaPremise prem = om->premises.produce(n);
      if (const ProofPtr* sub = std::get_if<ProofPtr>(&prem); sub && *sub)
        collect_proved_formulas(**sub, premise_bound, out);
    }
  }
}

}  // namespace

SoundnessReport soundness_spot_check(const ProofSystem& /*sys*/,
                                     const Proof& proof,
                                     const std::vector<NeighborhoodFrame>& frames,
                                     const ValidateOptions& opts,
                                     int premise_bound) {
  std::vector<Formula> formulas;
  collect_proved_formulas(proof, premise_bound, formulas);
  SoundnessReport rep;
  rep.formulas_checked = static_cast<int>(formulas.size());
  rep.frames_checked = static_cast<int>(frames.size());
  for (std::size_t s = 0; s < formulas.size(); ++s)
    for (std::size_t fr = 0; fr < frames.size(); ++fr)
      if (!frame_validates(frames[fr], formulas[s], opts).valid)
        rep.violations.push_back({s, fr});
  return rep;
}

}  // namespace mlwb
