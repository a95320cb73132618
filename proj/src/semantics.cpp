#include "mlwb/semantics.hpp"

#include <algorithm>

#include "mlwb/errors.hpp"

namespace mlwb {

std::uint64_t tuple_count(int domain, int arity) {
  std::uint64_t n = 1;
  for (int i = 0; i < arity; ++i) {
    n *= static_cast<std::uint64_t>(domain);
    if (n > 64) throw EvalError("tuple space exceeds 64 entries");
  }
  return n;
}

std::uint64_t tuple_index(const std::vector<int>& tuple, int domain) {
  std::uint64_t idx = 0, weight = 1;
  for (int t : tuple) {
    idx += weight * static_cast<std::uint64_t>(t);
    weight *= static_cast<std::uint64_t>(domain);
  }
  return idx;
}

std::vector<int> tuple_from_index(std::uint64_t index, int domain, int arity) {
  std::vector<int> tuple(arity);
  for (int i = 0; i < arity; ++i) {
    tuple[i] = static_cast<int>(index % domain);
    index /= domain;
  }
  return tuple;
}

void NeighborhoodModel::validate() const {
  frame.validate();
  if (domain < 1) throw FormatError("domain must be nonempty");
  for (const auto& [name, ext] : interp) {
    if (ext.arity < 0) throw FormatError("negative arity for " + name);
    std::uint64_t tc = tuple_count(domain, ext.arity);
    if (static_cast<int>(ext.true_at.size()) != frame.worlds)
      throw FormatError("interpretation of " + name + " misses worlds");
    for (std::uint64_t mask : ext.true_at)
      if (tc < 64 && (mask >> tc) != 0)
        throw FormatError("interpretation of " + name + " has stray tuples");
  }
}

void AlgebraicModel::validate() const {
  algebra.validate();
  if (domain < 1) throw FormatError("domain must be nonempty");
  for (const auto& [name, val] : interp) {
    if (val.value.size() != tuple_count(domain, val.arity))
      throw FormatError("valuation of " + name + " is not total on tuples");
    for (Elem e : val.value)
      if ((e & ~algebra.top()) != 0)
        throw FormatError("valuation of " + name + " leaves the carrier");
  }
}

namespace {

std::uint64_t atom_tuple_index(const Assignment& a, const Formula& f,
                               int domain) {
  std::uint64_t idx = 0, weight = 1;
  for (const auto& var : f.args()) {
    auto it = a.find(var);
    if (it == a.end()) throw EvalError("unassigned variable '" + var + "'");
    if (it->second < 0 || it->second >= domain)
      throw EvalError("assignment of '" + var + "' is outside the domain");
    idx += weight * static_cast<std::uint64_t>(it->second);
    weight *= static_cast<std::uint64_t>(domain);
  }
  return idx;
}

}  // namespace

WorldSet eval_neighborhood(const NeighborhoodModel& m, const Assignment& a,
                           const Formula& f) {
  const WorldSet universe = m.frame.universe();
  switch (f.kind()) {
    case FormulaKind::Top:
      return universe;
    case FormulaKind::Bottom:
      return 0;
    case FormulaKind::Atom: {
      auto it = m.interp.find(f.pred());
      if (it == m.interp.end())
        throw EvalError("uninterpreted predicate '" + f.pred() + "'");
      if (it->second.arity != static_cast<int>(f.args().size()))
        throw ArityMismatchError(f.pred());
      std::uint64_t idx = atom_tuple_index(a, f, m.domain);
      WorldSet out = 0;
      for (int c = 0; c < m.frame.worlds; ++c)
        if ((it->second.true_at[c] >> idx) & 1u) out |= WorldSet(1) << c;
      return out;
    }
    case FormulaKind::And:
      return eval_neighborhood(m, a, f.left()) &
             eval_neighborhood(m, a, f.right());
    case FormulaKind::Not:
      return universe & ~eval_neighborhood(m, a, f.child());
    case FormulaKind::Forall: {
      WorldSet acc = universe;
      Assignment shadowed = a;
      for (int d = 0; d < m.domain && acc != 0; ++d) {
        shadowed[f.var()] = d;
        acc &= eval_neighborhood(m, shadowed, f.child());
      }
      return acc;
    }
    case FormulaKind::Box: {
      WorldSet v = eval_neighborhood(m, a, f.child());
      const auto& sys = m.frame.system(f.modality());
      WorldSet out = 0;
      for (int c = 0; c < m.frame.worlds; ++c)
        if (family_contains(sys[c], v)) out |= WorldSet(1) << c;
      return out;
    }
  }
  return 0;
}

Elem eval_algebraic(const AlgebraicModel& m, const Assignment& a,
                    const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return m.algebra.top();
    case FormulaKind::Bottom:
      return ModalAlgebra::bottom();
    case FormulaKind::Atom: {
      auto it = m.interp.find(f.pred());
      if (it == m.interp.end())
        throw EvalError("uninterpreted predicate '" + f.pred() + "'");
      if (it->second.arity != static_cast<int>(f.args().size()))
        throw ArityMismatchError(f.pred());
      return it->second.value[atom_tuple_index(a, f, m.domain)];
    }
    case FormulaKind::And:
      return m.algebra.meet(eval_algebraic(m, a, f.left()),
                            eval_algebraic(m, a, f.right()));
    case FormulaKind::Not:
      return m.algebra.complement(eval_algebraic(m, a, f.child()));
    case FormulaKind::Forall: {
      Elem acc = m.algebra.top();
      Assignment shadowed = a;
      for (int d = 0; d < m.domain; ++d) {
        shadowed[f.var()] = d;
        acc = m.algebra.meet(acc, eval_algebraic(m, shadowed, f.child()));
      }
      return acc;
    }
    case FormulaKind::Box:
      return m.algebra.box(f.modality(), eval_algebraic(m, a, f.child()));
  }
  return 0;
}

AlgebraicModel model_to_algebraic(const NeighborhoodModel& m) {
  AlgebraicModel out;
  out.algebra = complex_algebra(m.frame);
  out.domain = m.domain;
  for (const auto& [name, ext] : m.interp) {
    PredicateValuation val;
    val.arity = ext.arity;
    std::uint64_t tc = tuple_count(m.domain, ext.arity);
    val.value.assign(tc, 0);
    for (std::uint64_t t = 0; t < tc; ++t)
      for (int c = 0; c < m.frame.worlds; ++c)
        if ((ext.true_at[c] >> t) & 1u) val.value[t] |= Elem(1) << c;
    out.interp.emplace(name, std::move(val));
  }
  return out;
}

NeighborhoodModel algebraic_to_model(const AlgebraicModel& m) {
  NeighborhoodModel out;
  out.frame = frame_from_algebra(m.algebra);
  out.domain = m.domain;
  for (const auto& [name, val] : m.interp) {
    PredicateExtension ext;
    ext.arity = val.arity;
    ext.true_at.assign(out.frame.worlds, 0);
    for (std::uint64_t t = 0; t < val.value.size(); ++t)
      for (int c = 0; c < out.frame.worlds; ++c)
        if ((val.value[t] >> c) & 1u) ext.true_at[c] |= std::uint64_t(1) << t;
    out.interp.emplace(name, std::move(ext));
  }
  return out;
}

namespace {

struct PredSlot {
  std::string name;
  int arity;
  std::uint64_t tuples;
};

std::vector<PredSlot> predicate_slots(const Formula& f, int domain) {
  std::vector<PredSlot> slots;
  for (const auto& [name, arity] : f.predicates())
    slots.push_back({name, arity, tuple_count(domain, arity)});
  return slots;
}

std::vector<std::string> sorted_free_vars(const Formula& f,
                                          const ValidateOptions& opts) {
  std::set<std::string> fv = f.free_vars();
  if (!fv.empty() && !opts.quantify_free)
    throw EvalError("formula is not closed; pass the quantify-free policy to "
                    "evaluate it universally");
  return {fv.begin(), fv.end()};
}

// Lexicographic odometer over assignments; returns false after the last one.
bool next_assignment(Assignment& a, const std::vector<std::string>& vars,
                     int domain) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    int& v = a[*it];
    if (++v < domain) return true;
    v = 0;
  }
  return false;
}

}  // namespace

ValidationOutcome frame_validates(const NeighborhoodFrame& frame,
                                  const Formula& f,
                                  const ValidateOptions& opts) {
  std::vector<std::string> fv = sorted_free_vars(f, opts);
  ValidationOutcome out;
  std::uint64_t steps = 0;
  for (int d = 1; d <= opts.max_domain; ++d) {
    std::vector<PredSlot> slots = predicate_slots(f, d);
    // Interpretation bit-vector positions in (world, predicate, tuple)
    // order; the first position is the most significant.
    std::uint64_t total_bits = 0;
    for (const auto& s : slots) total_bits += std::uint64_t(frame.worlds) * s.tuples;
    std::uint64_t assignments = 1;
    for (std::size_t i = 0; i < fv.size(); ++i)
      assignments *= static_cast<std::uint64_t>(d);
    if (total_bits >= 63)
      throw ResourceLimitError("interpretation space too large (" +
                               std::to_string(total_bits) + " bits)");
    std::uint64_t combos = std::uint64_t(1) << total_bits;
    if (assignments == 0) assignments = 1;
    if (combos > opts.budget / assignments ||
        steps + combos * assignments > opts.budget)
      throw ResourceLimitError(
          "validation budget exceeded at domain size " + std::to_string(d));

    NeighborhoodModel model;
    model.frame = frame;
    model.domain = d;
    for (const auto& s : slots) {
      PredicateExtension ext;
      ext.arity = s.arity;
      ext.true_at.assign(frame.worlds, 0);
      model.interp.emplace(s.name, std::move(ext));
    }
    std::vector<std::uint8_t> bits(total_bits, 0);
    for (std::uint64_t combo = 0; combo < combos; ++combo) {
      // Decode the bit-vector into the model.
      std::size_t pos = 0;
      for (int c = 0; c < frame.worlds; ++c)
        for (const auto& s : slots) {
          std::uint64_t mask = 0;
          for (std::uint64_t t = 0; t < s.tuples; ++t, ++pos)
            if (bits[pos]) mask |= std::uint64_t(1) << t;
          model.interp[s.name].true_at[c] = mask;
        }

      Assignment a;
      for (const auto& v : fv) a[v] = 0;
      bool more = true;
      while (more) {
        ++steps;
        WorldSet v = eval_neighborhood(model, a, f);
        if (v != frame.universe()) {
          int world = 0;
          while ((v >> world) & 1u) ++world;
          out.valid = false;
          out.max_domain_checked = d;
          out.countermodel = Countermodel{model, a, world};
          return out;
        }
        more = !fv.empty() && next_assignment(a, fv, d);
      }

      // Advance the interpretation bit-vector (last position is least
      // significant, so ascending order is lexicographic).
      bool carried = false;
      for (std::size_t i = total_bits; i-- > 0;) {
        if (bits[i] == 0) {
          bits[i] = 1;
          std::fill(bits.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                    bits.end(), 0);
          carried = true;
          break;
        }
      }
      if (!carried) break;
    }
  }
  out.valid = true;
  out.max_domain_checked = opts.max_domain;
  return out;
}

AlgebraicValidationOutcome algebra_validates(const ModalAlgebra& alg,
                                             const Formula& f,
                                             const ValidateOptions& opts) {
  std::vector<std::string> fv = sorted_free_vars(f, opts);
  AlgebraicValidationOutcome out;
  std::uint64_t steps = 0;
  std::uint64_t carrier = alg.carrier_size();
  for (int d = 1; d <= opts.max_domain; ++d) {
    std::vector<PredSlot> slots = predicate_slots(f, d);
    std::uint64_t positions = 0;
    for (const auto& s : slots) positions += s.tuples;
    std::uint64_t assignments = 1;
    for (std::size_t i = 0; i < fv.size(); ++i)
      assignments *= static_cast<std::uint64_t>(d);
    // combos = carrier^positions, guarded against overflow.
    std::uint64_t combos = 1;
    for (std::uint64_t i = 0; i < positions; ++i) {
      if (combos > opts.budget) break;
      combos *= carrier;
    }
    if (assignments == 0) assignments = 1;
    if (combos > opts.budget / assignments ||
        steps + combos * assignments > opts.budget)
      throw ResourceLimitError(
          "validation budget exceeded at domain size " + std::to_string(d));

    AlgebraicModel model;
    model.algebra = alg;
    model.domain = d;
    for (const auto& s : slots) {
      PredicateValuation val;
      val.arity = s.arity;
      val.value.assign(s.tuples, 0);
      model.interp.emplace(s.name, std::move(val));
    }
    // Mixed-radix odometer over (predicate, tuple) positions, carrier
    // elements ascending; the first position is the most significant.
    std::vector<Elem*> cells;
    for (const auto& s : slots)
      for (std::uint64_t t = 0; t < s.tuples; ++t)
        cells.push_back(&model.interp[s.name].value[t]);
    for (;;) {
      Assignment a;
      for (const auto& v : fv) a[v] = 0;
      bool more = true;
      while (more) {
        ++steps;
        Elem u = eval_algebraic(model, a, f);
        if (u != alg.top()) {
          out.valid = false;
          out.max_domain_checked = d;
          out.counterexample = AlgebraicCounterexample{model, a, u};
          return out;
        }
        more = !fv.empty() && next_assignment(a, fv, d);
      }
      bool carried = false;
      for (std::size_t i = cells.size(); i-- > 0;) {
        if (*cells[i] < alg.top()) {
          ++*cells[i];
          for (std::size_t j = i + 1; j < cells.size(); ++j) *cells[j] = 0;
          carried = true;
          break;
        }
      }
      if (!carried) break;
    }
  }
  out.valid = true;
  out.max_domain_checked = opts.max_domain;
  return out;
}

DualityReport check_duality(const NeighborhoodFrame& frame,
                            const std::vector<Formula>& formulas,
                            const ValidateOptions& opts) {
  DualityReport rep;
  ModalAlgebra alg = complex_algebra(frame);
  for (const Formula& f : formulas) {
    bool frame_valid = frame_validates(frame, f, opts).valid;
    bool algebra_valid = algebra_validates(alg, f, opts).valid;
    ++rep.checked;
    if (frame_valid != algebra_valid)
      rep.disagreements.push_back({f, frame_valid, algebra_valid});
  }
  return rep;
}

Formula ck_induction_formula(const Modality& e, const Modality& c) {
  Formula p = Formula::atom("p");
  Formula step = Formula::implies(p, Formula::box(e, p));
  return Formula::implies(Formula::box(c, step),
                          Formula::implies(p, Formula::box(c, p)));
}

CklKripkeReport check_ckl_kripke_consequences(const NeighborhoodFrame& frame,
                                              const Modality& e,
                                              const Modality& c, int max_n,
                                              const ValidateOptions& opts) {
  CklKripkeReport rep;
  rep.kripke_both = check_kripke(frame, e) && check_kripke(frame, c);

  Formula p = Formula::atom("p");
  rep.hyp_unfold = true;
  for (int n = 0; n <= max_n; ++n) {
    Formula unfold =
        Formula::implies(Formula::box(c, p), Formula::box_power(e, n, p));
    if (!frame_validates(frame, unfold, opts).valid) {
      rep.hyp_unfold = false;
      break;
    }
  }
  rep.hyp_induction = frame_validates(frame, ck_induction_formula(e, c), opts).valid;

  ModalAlgebra alg = complex_algebra(frame);
  rep.concl_fixpoint = true;
  for (Elem x = 0; x <= alg.top(); ++x)
    if (alg.box(c, x) != omega_meet_orbit(alg, e, x)) {
      rep.concl_fixpoint = false;
      break;
    }
  Formula cecp = Formula::implies(Formula::box(c, p),
                                  Formula::box(e, Formula::box(c, p)));
  rep.concl_c_implies_ec = frame_validates(frame, cecp, opts).valid;
  return rep;
}

}  // namespace mlwb
