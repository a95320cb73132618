#include "mlwb/formula.hpp"

#include <stdexcept>

#include "mlwb/errors.hpp"

namespace mlwb {

Modality::Modality(std::string n) : name(std::move(n)) {
  if (name.empty()) throw std::invalid_argument("modality name must be nonempty");
}

const Modality& Modality::box() {
  static const Modality m("box");
  return m;
}

struct Formula::Node {
  FormulaKind kind;
  std::string name;               // Atom: predicate; Forall: variable; Box: modality
  std::vector<std::string> args;  // Atom only
  NodePtr a, b;                   // And: both; Not/Forall/Box: a
};

const Formula::Node& Formula::ref() const {
  if (!node_) throw std::logic_error("empty formula handle");
  return *node_;
}

Formula Formula::top() {
  static const Formula t{std::make_shared<Node>(Node{FormulaKind::Top, {}, {}, nullptr, nullptr})};
  return t;
}

Formula Formula::bottom() {
  static const Formula f{std::make_shared<Node>(Node{FormulaKind::Bottom, {}, {}, nullptr, nullptr})};
  return f;
}

Formula Formula::atom(std::string pred, std::vector<std::string> args) {
  if (pred.empty()) throw std::invalid_argument("empty predicate name");
  return Formula{std::make_shared<Node>(
      Node{FormulaKind::Atom, std::move(pred), std::move(args), nullptr, nullptr})};
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula{std::make_shared<Node>(
      Node{FormulaKind::And, {}, {}, std::move(l.node_), std::move(r.node_)})};
}

Formula Formula::neg(Formula f) {
  return Formula{std::make_shared<Node>(
      Node{FormulaKind::Not, {}, {}, std::move(f.node_), nullptr})};
}

Formula Formula::forall(std::string var, Formula body) {
  if (var.empty()) throw std::invalid_argument("empty variable name");
  return Formula{std::make_shared<Node>(
      Node{FormulaKind::Forall, std::move(var), {}, std::move(body.node_), nullptr})};
}

Formula Formula::box(Modality m, Formula f) {
  return Formula{std::make_shared<Node>(
      Node{FormulaKind::Box, std::move(m.name), {}, std::move(f.node_), nullptr})};
}

Formula Formula::disj(Formula l, Formula r) {
  return neg(conj(neg(std::move(l)), neg(std::move(r))));
}

Formula Formula::implies(Formula l, Formula r) {
  return neg(conj(std::move(l), neg(std::move(r))));
}

Formula Formula::iff(Formula l, Formula r) {
  return conj(implies(l, r), implies(r, l));
}

Formula Formula::exists(std::string var, Formula body) {
  return neg(forall(std::move(var), neg(std::move(body))));
}

Formula Formula::diamond(Modality m, Formula f) {
  return neg(box(std::move(m), neg(std::move(f))));
}

Formula Formula::box_power(const Modality& m, int n, Formula f) {
  for (int i = 0; i < n; ++i) f = box(m, std::move(f));
  return f;
}

FormulaKind Formula::kind() const { return ref().kind; }

const std::string& Formula::pred() const {
  if (ref().kind != FormulaKind::Atom) throw std::logic_error("pred(): not an atom");
  return ref().name;
}

const std::vector<std::string>& Formula::args() const {
  if (ref().kind != FormulaKind::Atom) throw std::logic_error("args(): not an atom");
  return ref().args;
}

Formula Formula::left() const {
  if (ref().kind != FormulaKind::And) throw std::logic_error("left(): not a conjunction");
  return Formula{ref().a};
}

Formula Formula::right() const {
  if (ref().kind != FormulaKind::And) throw std::logic_error("right(): not a conjunction");
  return Formula{ref().b};
}

Formula Formula::child() const {
  switch (ref().kind) {
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Box:
      return Formula{ref().a};
    default:
      throw std::logic_error("child(): no single child");
  }
}

const std::string& Formula::var() const {
  if (ref().kind != FormulaKind::Forall) throw std::logic_error("var(): not a quantifier");
  return ref().name;
}

Modality Formula::modality() const {
  if (ref().kind != FormulaKind::Box) throw std::logic_error("modality(): not a box");
  return Modality(ref().name);
}

namespace {

bool equal_rec(const Formula& x, const Formula& y) {
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return true;
    case FormulaKind::Atom:
      return x.pred() == y.pred() && x.args() == y.args();
    case FormulaKind::And:
      return equal_rec(x.left(), y.left()) && equal_rec(x.right(), y.right());
    case FormulaKind::Not:
      return equal_rec(x.child(), y.child());
    case FormulaKind::Forall:
      return x.var() == y.var() && equal_rec(x.child(), y.child());
    case FormulaKind::Box:
      return x.modality() == y.modality() && equal_rec(x.child(), y.child());
  }
  return false;
}

}  // namespace

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  return equal_rec(*this, other);
}

namespace {

// Printing contexts mirror the grammar: Full is a complete formula (top
// level, parenthesized group, quantifier body), AndChain is the left
// operand of '&', Unary is anywhere the grammar wants a unary form.
enum class PrintCtx { Full, AndChain, Unary };

void print_rec(std::string& out, const Formula& f, PrintCtx ctx, bool tail);

void print_parens(std::string& out, const Formula& f) {
  out += '(';
  print_rec(out, f, PrintCtx::Full, true);
  out += ')';
}

void print_rec(std::string& out, const Formula& f, PrintCtx ctx, bool tail) {
  switch (f.kind()) {
    case FormulaKind::Top:
      out += 'T';
      return;
    case FormulaKind::Bottom:
      out += 'F';
      return;
    case FormulaKind::Atom: {
      out += f.pred();
      const auto& as = f.args();
      if (!as.empty()) {
        out += '(';
        for (std::size_t i = 0; i < as.size(); ++i) {
          if (i) out += ',';
          out += as[i];
        }
        out += ')';
      }
      return;
    }
    case FormulaKind::And: {
      if (ctx == PrintCtx::Unary) {
        print_parens(out, f);
        return;
      }
      print_rec(out, f.left(), PrintCtx::AndChain, false);
      out += " & ";
      print_rec(out, f.right(), PrintCtx::Unary, tail);
      return;
    }
    case FormulaKind::Not:
      out += '~';
      print_rec(out, f.child(), PrintCtx::Unary, tail);
      return;
    case FormulaKind::Box: {
      const std::string& m = f.modality().name;
      out += '[';
      if (m != "box") out += m;
      out += ']';
      print_rec(out, f.child(), PrintCtx::Unary, tail);
      return;
    }
    case FormulaKind::Forall: {
      // Quantifier scope extends maximally to the right, so a bare
      // quantifier is only printable when nothing follows it.
      bool bare = ctx == PrintCtx::Full || (ctx == PrintCtx::Unary && tail);
      if (!bare) {
        print_parens(out, f);
        return;
      }
      out += "forall ";
      out += f.var();
      out += ". ";
      print_rec(out, f.child(), PrintCtx::Full, true);
      return;
    }
  }
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  print_rec(out, *this, PrintCtx::Full, true);
  return out;
}

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Atom:
      for (const auto& a : f.args())
        if (!bound.count(a)) out.insert(a);
      return;
    case FormulaKind::And:
      free_vars_rec(f.left(), bound, out);
      free_vars_rec(f.right(), bound, out);
      return;
    case FormulaKind::Not:
    case FormulaKind::Box:
      free_vars_rec(f.child(), bound, out);
      return;
    case FormulaKind::Forall: {
      bool fresh = bound.insert(f.var()).second;
      free_vars_rec(f.child(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
  }
}

}  // namespace

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> bound, out;
  free_vars_rec(*this, bound, out);
  return out;
}

std::set<std::string> Formula::all_vars() const {
  std::set<std::string> out;
  auto rec = [&out](auto&& self, const Formula& f) -> void {
    switch (f.kind()) {
      case FormulaKind::Top:
      case FormulaKind::Bottom:
        return;
      case FormulaKind::Atom:
        out.insert(f.args().begin(), f.args().end());
        return;
      case FormulaKind::And:
        self(self, f.left());
        self(self, f.right());
        return;
      case FormulaKind::Not:
      case FormulaKind::Box:
        self(self, f.child());
        return;
      case FormulaKind::Forall:
        out.insert(f.var());
        self(self, f.child());
        return;
    }
  };
  rec(rec, *this);
  return out;
}

std::map<std::string, int> Formula::predicates() const {
  std::map<std::string, int> out;
  auto rec = [&out](auto&& self, const Formula& f) -> void {
    switch (f.kind()) {
      case FormulaKind::Top:
      case FormulaKind::Bottom:
        return;
      case FormulaKind::Atom: {
        int arity = static_cast<int>(f.args().size());
        auto [it, inserted] = out.emplace(f.pred(), arity);
        if (!inserted && it->second != arity)
          throw ArityMismatchError(f.pred() + " used with arity " +
                                   std::to_string(it->second) + " and " +
                                   std::to_string(arity));
        return;
      }
      case FormulaKind::And:
        self(self, f.left());
        self(self, f.right());
        return;
      case FormulaKind::Not:
      case FormulaKind::Box:
      case FormulaKind::Forall:
        self(self, f.child());
        return;
    }
  };
  rec(rec, *this);
  return out;
}

std::set<Modality> Formula::modalities() const {
  std::set<Modality> out;
  auto rec = [&out](auto&& self, const Formula& f) -> void {
    switch (f.kind()) {
      case FormulaKind::Top:
      case FormulaKind::Bottom:
      case FormulaKind::Atom:
        return;
      case FormulaKind::And:
        self(self, f.left());
        self(self, f.right());
        return;
      case FormulaKind::Not:
      case FormulaKind::Forall:
        self(self, f.child());
        return;
      case FormulaKind::Box:
        out.insert(f.modality());
        self(self, f.child());
        return;
    }
  };
  rec(rec, *this);
  return out;
}

std::size_t Formula::size() const {
  switch (kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
      return 1;
    case FormulaKind::And:
      return 1 + left().size() + right().size();
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Box:
      return 1 + child().size();
  }
  return 1;
}

int Formula::modal_quantifier_depth() const {
  switch (kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
    case FormulaKind::Atom:
      return 0;
    case FormulaKind::And:
      return std::max(left().modal_quantifier_depth(),
                      right().modal_quantifier_depth());
    case FormulaKind::Not:
      return child().modal_quantifier_depth();
    case FormulaKind::Forall:
    case FormulaKind::Box:
      return 1 + child().modal_quantifier_depth();
  }
  return 0;
}

Formula substitute_var(const Formula& f, const std::string& from,
                       const std::string& to) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom: {
      bool touched = false;
      std::vector<std::string> args = f.args();
      for (auto& a : args)
        if (a == from) {
          a = to;
          touched = true;
        }
      return touched ? Formula::atom(f.pred(), std::move(args)) : f;
    }
    case FormulaKind::And:
      return Formula::conj(substitute_var(f.left(), from, to),
                           substitute_var(f.right(), from, to));
    case FormulaKind::Not:
      return Formula::neg(substitute_var(f.child(), from, to));
    case FormulaKind::Box:
      return Formula::box(f.modality(), substitute_var(f.child(), from, to));
    case FormulaKind::Forall:
      if (f.var() == from) return f;  // occurrences below are bound
      return Formula::forall(f.var(), substitute_var(f.child(), from, to));
  }
  return f;
}

std::string fresh_var(const std::string& base,
                      const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

Formula rename_free_vars(const Formula& f,
                         const std::map<std::string, std::string>& renaming) {
  if (renaming.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::Atom: {
      std::vector<std::string> args = f.args();
      for (auto& a : args) {
        auto it = renaming.find(a);
        if (it != renaming.end()) a = it->second;
      }
      return Formula::atom(f.pred(), std::move(args));
    }
    case FormulaKind::And:
      return Formula::conj(rename_free_vars(f.left(), renaming),
                           rename_free_vars(f.right(), renaming));
    case FormulaKind::Not:
      return Formula::neg(rename_free_vars(f.child(), renaming));
    case FormulaKind::Box:
      return Formula::box(f.modality(), rename_free_vars(f.child(), renaming));
    case FormulaKind::Forall: {
      std::map<std::string, std::string> active;
      std::set<std::string> body_free = f.child().free_vars();
      for (const auto& [k, v] : renaming)
        if (k != f.var() && body_free.count(k)) active.emplace(k, v);
      if (active.empty()) return f;
      bool captures = false;
      for (const auto& [k, v] : active)
        if (v == f.var()) captures = true;
      if (!captures)
        return Formula::forall(f.var(), rename_free_vars(f.child(), active));
      // The bound variable collides with an incoming name; rename it first.
      std::set<std::string> taken = f.child().all_vars();
      for (const auto& [k, v] : active) {
        taken.insert(k);
        taken.insert(v);
      }
      std::string nv = fresh_var(f.var(), taken);
      active.emplace(f.var(), nv);
      return Formula::forall(nv, rename_free_vars(f.child(), active));
    }
  }
  return f;
}

}  // namespace mlwb
