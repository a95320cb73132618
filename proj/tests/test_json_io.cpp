#include <random>

#include "doctest.h"
#include "mlwb/errors.hpp"
#include "mlwb/generators.hpp"
#include "mlwb/json_io.hpp"
#include "mlwb/parser.hpp"

using namespace mlwb;

namespace {
const Modality kBox = Modality::box();
const Modality kE("E");
std::mt19937_64 g_rng(61);
}  // namespace

TEST_CASE("frame documents round trip") {
  for (int trial = 0; trial < 40; ++trial) {
    Relation r(1 + static_cast<int>(g_rng() % 4), {kBox, kE});
    for (auto& [m, succ] : r.successors)
      for (auto& s : succ)
        s = static_cast<WorldSet>(g_rng()) & ((1u << r.worlds) - 1);
    NeighborhoodFrame f = relation_to_frame(r);
    NeighborhoodFrame back = frame_from_json(frame_to_json(f));
    CHECK(back.worlds == f.worlds);
    CHECK(back.systems == f.systems);

    Relation rback = relation_from_json(relation_to_json(r));
    CHECK(rback.successors == r.successors);
  }
}

TEST_CASE("frame documents are validated") {
  CHECK_THROWS_AS(frame_from_json(json{{"worlds", 0}, {"neighborhoods", json::object()}}),
                  FormatError);
  // Neighborhood member mentions world 5 in a 2-world frame.
  json bad{{"worlds", 2},
           {"neighborhoods", {{"box", json::array({json::array({json::array({5})}),
                                                   json::array()})}}}};
  CHECK_THROWS_AS(frame_from_json(bad), FormatError);
}

TEST_CASE("algebra documents round trip") {
  for (int trial = 0; trial < 40; ++trial) {
    ModalAlgebra a =
        random_algebra_mixed(g_rng, 1 + static_cast<int>(g_rng() % 3), {kE});
    ModalAlgebra back = algebra_from_json(algebra_to_json(a));
    CHECK(back.atoms == a.atoms);
    CHECK(back.box_tables == a.box_tables);
  }
  CHECK_THROWS_AS(algebra_from_json(json{{"atoms", 2}, {"box", {{"E", {0, 1}}}}}),
                  FormatError);  // table not total
}

TEST_CASE("model documents round trip") {
  NeighborhoodModel m;
  m.frame = relation_to_frame([] {
    Relation r(2, {kBox});
    r.add_edge(kBox, 0, 1);
    return r;
  }());
  m.domain = 2;
  PredicateExtension ext;
  ext.arity = 1;
  ext.true_at = {0b01, 0b10};
  m.interp.emplace("P", ext);
  PredicateExtension zero;
  zero.arity = 0;
  zero.true_at = {1, 0};
  m.interp.emplace("q", zero);

  NeighborhoodModel back = model_from_json(model_to_json(m));
  CHECK(back.domain == 2);
  CHECK(back.frame.systems == m.frame.systems);
  CHECK(back.interp.at("P").true_at == ext.true_at);
  CHECK(back.interp.at("q").true_at == zero.true_at);
}

TEST_CASE("proof documents round trip through the checker") {
  Proof pr = generate_ck_induction_proof();
  json doc = proof_to_json(pr);
  Proof back = proof_from_json(doc);
  REQUIRE(back.size() == pr.size());
  for (std::size_t i = 0; i < pr.size(); ++i)
    CHECK(back.steps()[i].formula == pr.steps()[i].formula);
  CHECK(check_proof(ProofSystem::qckl_minus(), back, 4).status ==
        CheckStatus::CheckedToBound);
}

TEST_CASE("proof documents with inline premise proofs") {
  // gamma -> [C]p via the context-free rule, premises supplied inline.
  json doc;
  doc["steps"] = json::array();
  json omega;
  omega["formula"] = "F -> [C]p";
  omega["rule"] = "omega";
  omega["omega_rule"] = "ck-intro";
  omega["antecedent"] = "F";
  omega["target"] = "p";
  json proofs = json::array();
  for (int n = 0; n <= 3; ++n) {
    std::string target = "p";
    for (int i = 0; i < n; ++i) target = "[E]" + target;
    json sub;
    sub["steps"] = json::array(
        {json{{"formula", "F -> " + target}, {"rule", "axiom"}, {"schema", "taut"}}});
    proofs.push_back(sub);
  }
  omega["premises"] = json{{"proofs", proofs}};
  doc["steps"].push_back(omega);

  Proof pr = proof_from_json(doc);
  CHECK(check_proof(ProofSystem::qckl_minus(), pr, 3).accepted());
  // Beyond the supplied premises the check must reject.
  CHECK(check_proof(ProofSystem::qckl_minus(), pr, 4).status ==
        CheckStatus::Rejected);
}

TEST_CASE("malformed proof documents") {
  CHECK_THROWS_AS(proof_from_json(json{{"steps", "no"}}), FormatError);
  json bad{{"steps", json::array({json{{"formula", "p"}, {"rule", "wat"}}})}};
  CHECK_THROWS_AS(proof_from_json(bad), FormatError);
  json noprem{{"steps", json::array({json{{"formula", "F -> [C]p"},
                                          {"rule", "omega"},
                                          {"omega_rule", "ck-intro"},
                                          {"antecedent", "F"},
                                          {"target", "p"}}})}};
  CHECK_THROWS_AS(proof_from_json(noprem), FormatError);
}

TEST_CASE("inline premise recipes round trip through documents") {
  Proof pr;
  std::vector<int> refs;
  for (int n = 0; n <= 2; ++n) {
    std::string target = "p";
    for (int i = 0; i < n; ++i) target = "[E]" + target;
    refs.push_back(pr.add_taut(parse("F -> " + target)));
  }
  OmegaInstantiation inst;
  inst.antecedent = Formula::bottom();
  inst.target = Formula::atom("p");
  pr.add(parse("F -> [C]p"),
         OmegaJust{"ck-intro", inst, inline_step_premises(refs)});

  Proof back = proof_from_json(proof_to_json(pr));
  CHECK(back.size() == pr.size());
  CHECK(check_proof(ProofSystem::qckl_minus(), back, 2).accepted());

  // And the sub-proof flavor.
  std::vector<ProofPtr> subs;
  for (int n = 0; n <= 2; ++n) {
    std::string target = "p";
    for (int i = 0; i < n; ++i) target = "[E]" + target;
    auto sub = std::make_shared<Proof>();
    sub->add_taut(parse("F -> " + target));
    subs.push_back(sub);
  }
  Proof pr2;
  pr2.add(parse("F -> [C]p"),
          OmegaJust{"ck-intro", inst, inline_proof_premises(subs)});
  Proof back2 = proof_from_json(proof_to_json(pr2));
  CHECK(check_proof(ProofSystem::qckl_minus(), back2, 2).accepted());
}
