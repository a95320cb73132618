#ifndef MLWB_SUBSTITUTION_HPP
#define MLWB_SUBSTITUTION_HPP

#include <map>
#include <string>
#include <vector>

#include "mlwb/formula.hpp"

namespace mlwb {

// Replacement for one predicate symbol: a template formula whose designated
// placeholder variables stand for the atom's argument positions.
struct PredReplacement {
  std::vector<std::string> placeholders;
  Formula body;
};

// Uniform substitution of formulas into predicate symbols. Keys are the
// predicate names; each replacement's placeholder count fixes the expected
// arity.
class SubstitutionMap {
 public:
  SubstitutionMap() = default;

  SubstitutionMap& set(const std::string& pred, PredReplacement repl);
  // Convenience for 0-ary predicate letters.
  SubstitutionMap& set(const std::string& pred, Formula body);

  bool contains(const std::string& pred) const { return map_.count(pred) != 0; }
  const PredReplacement* find(const std::string& pred) const;
  bool empty() const { return map_.empty(); }
  const std::map<std::string, PredReplacement>& entries() const { return map_; }

 private:
  std::map<std::string, PredReplacement> map_;
};

// Capture-avoiding uniform substitution: every atom P(t1..tn) with P mapped
// is replaced by its template with placeholders instantiated to t1..tn;
// bound variables are renamed where a template's free variable would be
// captured. Throws ArityMismatchError when an atom's arity differs from the
// template's placeholder count.
Formula apply_substitution(const SubstitutionMap& s, const Formula& f);

// Plain schema instantiation: atoms are replaced with no bound-variable
// renaming, so a quantified template keeps its binder over the replacement
// (the reading axiom schemata need). Arity checks as above.
Formula instantiate_schema(const SubstitutionMap& s, const Formula& tmpl);

}  // namespace mlwb

#endif
