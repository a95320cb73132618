#include <random>

#include "doctest.h"
#include "mlwb/errors.hpp"
#include "mlwb/generators.hpp"
#include "mlwb/parser.hpp"
#include "mlwb/semantics.hpp"

using namespace mlwb;

namespace {

const Modality kBox = Modality::box();
const Modality kE("E");
const Modality kC("C");

// Independent world-by-world truth oracle: booleans and loops instead of
// set arithmetic. Used to cross-check eval_neighborhood.
bool holds_at(const NeighborhoodModel& m, Assignment a, const Formula& f,
              int world) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return true;
    case FormulaKind::Bottom:
      return false;
    case FormulaKind::Atom: {
      const auto& ext = m.interp.at(f.pred());
      std::vector<int> tuple;
      for (const auto& v : f.args()) tuple.push_back(a.at(v));
      return (ext.true_at[world] >> tuple_index(tuple, m.domain)) & 1u;
    }
    case FormulaKind::And:
      return holds_at(m, a, f.left(), world) && holds_at(m, a, f.right(), world);
    case FormulaKind::Not:
      return !holds_at(m, a, f.child(), world);
    case FormulaKind::Forall: {
      for (int d = 0; d < m.domain; ++d) {
        a[f.var()] = d;
        if (!holds_at(m, a, f.child(), world)) return false;
      }
      return true;
    }
    case FormulaKind::Box: {
      WorldSet truth = 0;
      for (int c = 0; c < m.frame.worlds; ++c)
        if (holds_at(m, a, f.child(), c)) truth |= WorldSet(1) << c;
      return m.frame.neighborhood_contains(f.modality(), world, truth);
    }
  }
  return false;
}

NeighborhoodModel point_model(NeighborhoodFamily fam) {
  NeighborhoodModel m;
  m.frame = NeighborhoodFrame(1, {kBox});
  m.frame.system(kBox)[0] = canonical_family(std::move(fam));
  m.domain = 1;
  return m;
}

std::mt19937_64 g_rng(41);

NeighborhoodModel random_model(const Formula& f, int worlds, int domain) {
  NeighborhoodModel m;
  m.frame = NeighborhoodFrame(worlds, {kBox, kE, kC});
  for (const Modality& mod : {kBox, kE, kC})
    for (int c = 0; c < worlds; ++c) {
      NeighborhoodFamily fam;
      for (WorldSet x = 0; x < (WorldSet(1) << worlds); ++x)
        if (g_rng() & 1) fam.push_back(x);
      m.frame.system(mod)[c] = canonical_family(std::move(fam));
    }
  m.domain = domain;
  for (const auto& [name, arity] : f.predicates()) {
    PredicateExtension ext;
    ext.arity = arity;
    std::uint64_t tc = tuple_count(domain, arity);
    for (int c = 0; c < worlds; ++c)
      ext.true_at.push_back(g_rng() & ((std::uint64_t(1) << tc) - 1));
    m.interp.emplace(name, std::move(ext));
  }
  return m;
}

Assignment random_assignment(const Formula& f, int domain) {
  Assignment a;
  for (const auto& v : f.free_vars()) a[v] = static_cast<int>(g_rng() % domain);
  return a;
}

}  // namespace

TEST_CASE("box truth at a single world") {
  NeighborhoodModel empty = point_model({});
  CHECK(eval_neighborhood(empty, {}, parse("[]T")) == 0);

  NeighborhoodModel full = point_model({1});
  CHECK(eval_neighborhood(full, {}, parse("[]T")) == 1);
}

TEST_CASE("quantifiers against the hand oracle") {
  // Two worlds, domain {0,1}; P holds of element 0 at world 0 only.
  NeighborhoodModel m;
  m.frame = NeighborhoodFrame(2, {kBox});
  m.domain = 2;
  PredicateExtension ext;
  ext.arity = 1;
  ext.true_at = {0b01, 0b00};
  m.interp.emplace("P", ext);

  CHECK(eval_neighborhood(m, {}, parse("forall x. P(x)")) == 0);
  CHECK(eval_neighborhood(m, {}, parse("exists x. P(x)")) == 1);
  for (int w = 0; w < 2; ++w) {
    CHECK(holds_at(m, {}, parse("forall x. P(x)"), w) == false);
    CHECK(holds_at(m, {}, parse("exists x. P(x)"), w) == (w == 0));
  }
}

TEST_CASE("neighborhood valuation matches the world-by-world oracle") {
  FormulaGenOptions opts;
  opts.closed = false;
  opts.modalities = {kBox, kE, kC};
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = random_formula(g_rng, opts);
    int worlds = 1 + static_cast<int>(g_rng() % 3);
    int domain = 1 + static_cast<int>(g_rng() % 3);
    NeighborhoodModel m = random_model(f, worlds, domain);
    Assignment a = random_assignment(f, domain);
    WorldSet v = eval_neighborhood(m, a, f);
    for (int w = 0; w < worlds; ++w)
      CHECK(((v >> w) & 1u) == (holds_at(m, a, f, w) ? 1u : 0u));
  }
}

TEST_CASE("algebraic valuation basics") {
  AlgebraicModel am;
  am.algebra = ModalAlgebra(2, {kBox});
  am.domain = 1;
  CHECK(eval_algebraic(am, {}, parse("T")) == am.algebra.top());
  CHECK(eval_algebraic(am, {}, parse("F")) == 0);

  // Identity box sends the valuation of p straight through.
  for (Elem x = 0; x <= am.algebra.top(); ++x) am.algebra.table(kBox)[x] = x;
  PredicateValuation val;
  val.arity = 0;
  val.value = {1};  // the first atom
  am.interp.emplace("p", val);
  CHECK(eval_algebraic(am, {}, parse("[]p")) == 1);
}

TEST_CASE("valuations agree across the model translation") {
  FormulaGenOptions opts;
  opts.closed = false;
  opts.modalities = {kBox, kE, kC};
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = random_formula(g_rng, opts);
    NeighborhoodModel m = random_model(f, 1 + g_rng() % 3, 1 + g_rng() % 3);
    Assignment a = random_assignment(f, m.domain);
    AlgebraicModel am = model_to_algebraic(m);
    CHECK(eval_algebraic(am, a, f) == eval_neighborhood(m, a, f));
  }
}

TEST_CASE("model translation round trip") {
  FormulaGenOptions opts;
  for (int trial = 0; trial < 60; ++trial) {
    Formula f = random_formula(g_rng, opts);
    NeighborhoodModel m = random_model(f, 1 + g_rng() % 3, 1 + g_rng() % 2);
    NeighborhoodModel back = algebraic_to_model(model_to_algebraic(m));
    CHECK(back.frame.systems == m.frame.systems);
    CHECK(back.domain == m.domain);
    for (const auto& [name, ext] : m.interp) {
      CHECK(back.interp.at(name).arity == ext.arity);
      CHECK(back.interp.at(name).true_at == ext.true_at);
    }
  }
}

TEST_CASE("all-false interpretation translates to the zero valuation") {
  NeighborhoodModel m = point_model({1});
  PredicateExtension ext;
  ext.arity = 0;
  ext.true_at = {0};
  m.interp.emplace("p", ext);
  AlgebraicModel am = model_to_algebraic(m);
  CHECK(am.interp.at("p").value == std::vector<Elem>{0});
}

TEST_CASE("valuation is local to the free variables") {
  FormulaGenOptions opts;
  opts.closed = false;
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = random_formula(g_rng, opts);
    NeighborhoodModel m = random_model(f, 2, 3);
    Assignment a = random_assignment(f, m.domain);
    Assignment b = a;
    b["unrelated"] = 1;
    for (const auto& v : f.all_vars())
      if (!f.free_vars().count(v)) b[v] = static_cast<int>(g_rng() % m.domain);
    CHECK(eval_neighborhood(m, a, f) == eval_neighborhood(m, b, f));
  }
}

TEST_CASE("universal quantifier equals the intersection of reassignments") {
  FormulaGenOptions opts;
  opts.closed = false;
  for (int trial = 0; trial < 150; ++trial) {
    Formula body = random_formula(g_rng, opts);
    Formula f = Formula::forall("x", body);
    for (int domain = 1; domain <= 3; ++domain) {
      NeighborhoodModel m = random_model(f, 2, domain);
      Assignment a = random_assignment(f, domain);
      WorldSet inter = m.frame.universe();
      for (int d = 0; d < domain; ++d) {
        Assignment ad = a;
        ad["x"] = d;
        inter &= eval_neighborhood(m, ad, body);
      }
      CHECK(eval_neighborhood(m, a, f) == inter);
    }
  }
}

TEST_CASE("frame_validates basics") {
  // Full powerset neighborhoods validate box F.
  NeighborhoodFrame full(1, {kBox});
  full.system(kBox)[0] = {0, 1};
  CHECK(frame_validates(full, parse("[]F")).valid);

  // Single reflexive world validates box p -> p.
  Relation refl(1, {kBox});
  refl.add_edge(kBox, 0, 0);
  CHECK(frame_validates(relation_to_frame(refl), parse("[]p -> p")).valid);

  CHECK_THROWS_AS(frame_validates(full, parse("P(x)")), EvalError);
  ValidateOptions open;
  open.quantify_free = true;
  CHECK(frame_validates(full, parse("P(x) -> P(x)"), open).valid);
}

TEST_CASE("property bridges on every 2-world frame") {
  Formula mt_bridge = parse("[](p & q) -> []p & []q");
  Formula tp_bridge = parse("[]T");
  Formula cf_bridge = parse("[]p & []q -> [](p & q)");
  ValidateOptions opts;
  opts.max_domain = 1;
  for (const auto& f : enumerate_frames(2, kBox)) {
    CHECK(frame_validates(f, mt_bridge, opts).valid == check_mt(f, kBox));
    CHECK(frame_validates(f, tp_bridge, opts).valid == check_tp(f, kBox));
    CHECK(frame_validates(f, cf_bridge, opts).valid == check_cf(f, kBox));
  }
}

TEST_CASE("countermodels are deterministic and lexicographically least") {
  NeighborhoodFrame f(2, {kBox});  // no neighborhoods at all
  ValidationOutcome res = frame_validates(f, parse("[]p"));
  REQUIRE_FALSE(res.valid);
  // The least interpretation is all-false, under which box p already fails
  // at world 0.
  CHECK(res.countermodel->world == 0);
  CHECK(res.countermodel->model.domain == 1);
  CHECK(res.countermodel->model.interp.at("p").true_at ==
        std::vector<std::uint64_t>{0, 0});

  ValidationOutcome again = frame_validates(f, parse("[]p"));
  CHECK(again.countermodel->world == res.countermodel->world);
  CHECK(again.countermodel->model.interp.at("p").true_at ==
        res.countermodel->model.interp.at("p").true_at);
}

TEST_CASE("budget limits are enforced") {
  Relation big(6, {kBox});
  NeighborhoodFrame f = relation_to_frame(big);
  ValidateOptions opts;
  opts.budget = 1000;
  CHECK_THROWS_AS(frame_validates(f, parse("forall x. P(x) -> Q(x)"), opts),
                  ResourceLimitError);
  CHECK_THROWS_AS(
      algebra_validates(complex_algebra(f), parse("forall x. P(x) -> Q(x)"), opts),
      ResourceLimitError);
}

TEST_CASE("duality on small frames") {
  std::vector<Formula> corpus = {
      parse("T"),
      parse("[]p -> p"),
      parse("[](p & q) -> []p & []q"),
      parse("forall x. P(x) -> exists x. P(x)"),
      parse("(forall x. []P(x)) -> [] forall x. P(x)"),
  };
  for (int i = 0; i < 40; ++i) {
    auto frames = enumerate_frames(2, kBox);
    const auto& f = frames[(i * 13) % frames.size()];
    DualityReport rep = check_duality(f, corpus);
    CHECK(rep.checked == 5);
    CHECK(rep.ok());
  }
  NeighborhoodFrame any(1, {kBox});
  CHECK(check_duality(any, {}).checked == 0);
  CHECK(check_duality(any, {parse("T")}).ok());
}

TEST_CASE("ckl kripke consequences on a common knowledge frame") {
  Relation r(3, {kE, kC});
  r.add_edge(kE, 0, 1);
  r.add_edge(kE, 1, 2);
  NeighborhoodFrame f = relation_to_frame(common_knowledge_relation(r, kE, kC));
  CklKripkeReport rep = check_ckl_kripke_consequences(f, kE, kC);
  CHECK(rep.kripke_both);
  CHECK(rep.hyp_unfold);
  CHECK(rep.hyp_induction);
  CHECK(rep.concl_fixpoint);
  CHECK(rep.concl_c_implies_ec);
  CHECK(rep.consistent());
}

TEST_CASE("ckl kripke consequences flag a two-cycle with R_C = R_E") {
  Relation r(2, {kE, kC});
  r.add_edge(kE, 0, 1);
  r.add_edge(kE, 1, 0);
  r.add_edge(kC, 0, 1);
  r.add_edge(kC, 1, 0);
  CklKripkeReport rep = check_ckl_kripke_consequences(relation_to_frame(r), kE, kC);
  CHECK_FALSE(rep.hyp_unfold);       // already [C]p -> p fails
  CHECK_FALSE(rep.concl_fixpoint);   // C{0} is not the orbit meet
  CHECK(rep.consistent());
}

TEST_CASE("ckl kripke consequences on the isolated point") {
  Relation r(1, {kE, kC});
  CklKripkeReport rep = check_ckl_kripke_consequences(relation_to_frame(r), kE, kC);
  CHECK(rep.kripke_both);
  CHECK_FALSE(rep.hyp_unfold);      // [C]p -> p fails when C p is vacuous
  CHECK_FALSE(rep.concl_fixpoint);  // C X = C differs from the orbit meet
  CHECK(rep.concl_c_implies_ec);
  CHECK(rep.consistent());
}

TEST_CASE("duality on random 3-world frames and generated formulas") {
  FormulaGenOptions gopts;  // depth <= 3, <= 2 predicate symbols, arity <= 1
  ValidateOptions vopts;
  vopts.max_domain = 2;
  for (int trial = 0; trial < 25; ++trial) {
    Formula f = random_formula(g_rng, gopts);
    NeighborhoodModel shape = random_model(f, 3, 1);
    DualityReport rep = check_duality(shape.frame, {f}, vopts);
    CHECK(rep.ok());
  }
}
