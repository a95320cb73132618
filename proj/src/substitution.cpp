#include "mlwb/substitution.hpp"

#include "mlwb/errors.hpp"

namespace mlwb {

SubstitutionMap& SubstitutionMap::set(const std::string& pred,
                                      PredReplacement repl) {
  map_[pred] = std::move(repl);
  return *this;
}

SubstitutionMap& SubstitutionMap::set(const std::string& pred, Formula body) {
  map_[pred] = PredReplacement{{}, std::move(body)};
  return *this;
}

const PredReplacement* SubstitutionMap::find(const std::string& pred) const {
  auto it = map_.find(pred);
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

Formula replace_atom(const PredReplacement& repl, const Formula& atom) {
  if (atom.args().size() != repl.placeholders.size())
    throw ArityMismatchError(atom.pred() + " has arity " +
                             std::to_string(atom.args().size()) +
                             " but the replacement expects " +
                             std::to_string(repl.placeholders.size()));
  std::map<std::string, std::string> renaming;
  for (std::size_t i = 0; i < repl.placeholders.size(); ++i)
    if (repl.placeholders[i] != atom.args()[i])
      renaming.emplace(repl.placeholders[i], atom.args()[i]);
  return rename_free_vars(repl.body, renaming);
}

// Free variables a substitution can introduce into f beyond the atom's own
// arguments; these are the names a binder must not capture.
std::set<std::string> introduced_free(const SubstitutionMap& s,
                                      const Formula& f) {
  std::set<std::string> out;
  for (const auto& [pred, arity] : f.predicates()) {
    const PredReplacement* repl = s.find(pred);
    if (!repl) continue;
    std::set<std::string> fv = repl->body.free_vars();
    for (const auto& p : repl->placeholders) fv.erase(p);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

Formula apply_rec(const SubstitutionMap& s, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom: {
      const PredReplacement* repl = s.find(f.pred());
      return repl ? replace_atom(*repl, f) : f;
    }
    case FormulaKind::And:
      return Formula::conj(apply_rec(s, f.left()), apply_rec(s, f.right()));
    case FormulaKind::Not:
      return Formula::neg(apply_rec(s, f.child()));
    case FormulaKind::Box:
      return Formula::box(f.modality(), apply_rec(s, f.child()));
    case FormulaKind::Forall: {
      std::set<std::string> incoming = introduced_free(s, f.child());
      if (!incoming.count(f.var()))
        return Formula::forall(f.var(), apply_rec(s, f.child()));
      std::set<std::string> taken = f.child().all_vars();
      taken.insert(incoming.begin(), incoming.end());
      std::string nv = fresh_var(f.var(), taken);
      Formula body = rename_free_vars(f.child(), {{f.var(), nv}});
      return Formula::forall(nv, apply_rec(s, body));
    }
  }
  return f;
}

Formula instantiate_rec(const SubstitutionMap& s, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom: {
      const PredReplacement* repl = s.find(f.pred());
      return repl ? replace_atom(*repl, f) : f;
    }
    case FormulaKind::And:
      return Formula::conj(instantiate_rec(s, f.left()),
                           instantiate_rec(s, f.right()));
    case FormulaKind::Not:
      return Formula::neg(instantiate_rec(s, f.child()));
    case FormulaKind::Box:
      return Formula::box(f.modality(), instantiate_rec(s, f.child()));
    case FormulaKind::Forall:
      return Formula::forall(f.var(), instantiate_rec(s, f.child()));
  }
  return f;
}

}  // namespace

Formula apply_substitution(const SubstitutionMap& s, const Formula& f) {
  if (s.empty()) return f;
  return apply_rec(s, f);
}

Formula instantiate_schema(const SubstitutionMap& s, const Formula& tmpl) {
  if (s.empty()) return tmpl;
  return instantiate_rec(s, tmpl);
}

}  // namespace mlwb
