#ifndef MLWB_FORMULA_HPP
#define MLWB_FORMULA_HPP

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace mlwb {

// A modal operator, identified by name. The default mono-modal operator is
// named "box" and prints as "[]"; the common-knowledge operators are "E"
// and "C".
struct Modality {
  std::string name;

  explicit Modality(std::string n);
  static const Modality& box();

  auto operator<=>(const Modality&) const = default;
};

enum class FormulaKind { Top, Bottom, Atom, And, Not, Forall, Box };

// Immutable predicate modal formula. Core connectives are T, F, atoms,
// conjunction, negation, universal quantification and one box per modality;
// everything else (|, ->, <->, exists, diamonds) is constructor-level sugar
// that expands into the core set.
class Formula {
 public:
  Formula() = default;  // empty handle; using it is a logic error

  static Formula top();
  static Formula bottom();
  static Formula atom(std::string pred, std::vector<std::string> args = {});
  static Formula conj(Formula l, Formula r);
  static Formula neg(Formula f);
  static Formula forall(std::string var, Formula body);
  static Formula box(Modality m, Formula f);

  // Sugar; expands to core connectives.
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula exists(std::string var, Formula body);
  static Formula diamond(Modality m, Formula f);

  // n-fold application of box(m, .).
  static Formula box_power(const Modality& m, int n, Formula f);

  bool empty() const { return node_ == nullptr; }
  FormulaKind kind() const;

  const std::string& pred() const;                // Atom
  const std::vector<std::string>& args() const;   // Atom
  Formula left() const;                           // And
  Formula right() const;                          // And
  Formula child() const;                          // Not, Forall, Box
  const std::string& var() const;                 // Forall
  Modality modality() const;                      // Box

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // Canonical concrete syntax (core connectives only); parse(str()) == *this.
  std::string str() const;

  std::set<std::string> free_vars() const;
  // Free and bound variables together.
  std::set<std::string> all_vars() const;

  // Predicate symbols with arities; throws ArityMismatchError when a symbol
  // occurs with two different arities.
  std::map<std::string, int> predicates() const;

  // Modalities occurring in the formula.
  std::set<Modality> modalities() const;

  // Number of AST nodes; used for budget accounting.
  std::size_t size() const;

  // Nesting depth counting only boxes and quantifiers.
  int modal_quantifier_depth() const;

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit Formula(NodePtr n) : node_(std::move(n)) {}
  const Node& ref() const;

  NodePtr node_;
};

// [to/from]f: replaces exactly the free occurrences of `from` by `to`.
// Purely syntactic; does not rename bound variables to avoid capture.
Formula substitute_var(const Formula& f, const std::string& from,
                       const std::string& to);

// Simultaneous variable-for-variable substitution on free occurrences,
// renaming bound variables where they would capture a substituted name.
Formula rename_free_vars(const Formula& f,
                         const std::map<std::string, std::string>& renaming);

// Picks an identifier not present in `taken`, derived from `base`.
std::string fresh_var(const std::string& base,
                      const std::set<std::string>& taken);

}  // namespace mlwb

#endif
