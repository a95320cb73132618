#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mlwb/cli.hpp"
#include "mlwb/frame.hpp"
#include "mlwb/json_io.hpp"
#include "mlwb/parser.hpp"
#include "mlwb/proof.hpp"

using namespace mlwb;

namespace {

std::string asset(const std::string& name) {
  return std::string(MLWB_ASSET_DIR) + "/" + name;
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const json& doc) {
  auto path = std::filesystem::temp_directory_path() / name;
  save_json_file(path.string(), doc);
  return path.string();
}

const Modality kBox = Modality::box();

}  // namespace

TEST_CASE("cli parse") {
  RunResult ok = run_cli({"parse", "[C] p -> [E][C] p"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("Box(C, Atom(p))") != std::string::npos);

  CHECK(run_cli({"parse", "forall ."}).code == cli::kParseError);
  CHECK(run_cli({"parse"}).code == cli::kUsage);
  CHECK(run_cli({"nonsense"}).code == cli::kUsage);
}

TEST_CASE("cli frame check") {
  RunResult ok = run_cli({"frame", "check", asset("frame3.json"),
                          "--props", "mt,tp,cf,kripke"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out == "mt true\ntp true\ncf true\nkripke true\n");

  // A reflexive point is not a GL frame.
  Relation refl(1, {kBox});
  refl.add_edge(kBox, 0, 0);
  std::string f = temp_file("mlwb_refl.json", frame_to_json(relation_to_frame(refl)));
  RunResult gl = run_cli({"frame", "check", f, "--props", "gl"});
  CHECK(gl.code == cli::kCheckFailed);
  CHECK(gl.out == "gl false\n");

  CHECK(run_cli({"frame", "check", "/no/such/file.json"}).code == cli::kBadInput);
}

TEST_CASE("cli frame check jsonl") {
  RunResult ok = run_cli({"--format", "jsonl", "frame", "check",
                          asset("frame3.json"), "--props", "mt,kripke"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out ==
        "{\"holds\":true,\"property\":\"mt\"}\n"
        "{\"holds\":true,\"property\":\"kripke\"}\n");
}

TEST_CASE("cli gl-check accepts relation files") {
  RunResult ok = run_cli({"gl-check", asset("chain3_relation.json")});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("gl true") != std::string::npos);
}

TEST_CASE("cli validate") {
  Relation refl(1, {kBox});
  refl.add_edge(kBox, 0, 0);
  std::string f = temp_file("mlwb_refl2.json", frame_to_json(relation_to_frame(refl)));
  RunResult ok = run_cli({"validate", f, "--formula", "[]p -> p"});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("valid(bounded max-domain=2)") != std::string::npos);

  RunResult cm = run_cli({"validate", f, "--formula", "~p"});
  CHECK(cm.code == cli::kCheckFailed);
  CHECK(cm.out.find("countermodel world=0") != std::string::npos);

  CHECK(run_cli({"validate", f, "--formula", "(("}).code == cli::kParseError);
}

TEST_CASE("cli duality on the bundled pack") {
  RunResult ok = run_cli({"duality", asset("frame3.json"), "--corpus",
                          asset("corpus_depth3.txt")});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out == "duality checked=50 disagreements=0\n");
}

TEST_CASE("cli duality random runs are deterministic") {
  RunResult a = run_cli({"duality", asset("frame3.json"), "--random", "60",
                         "--seed", "0"});
  RunResult b = run_cli({"duality", asset("frame3.json"), "--random", "60",
                         "--seed", "0"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
}

TEST_CASE("cli duality hits the budget on an oversize frame") {
  std::string f =
      temp_file("mlwb_big.json",
                frame_to_json(relation_to_frame(Relation(6, {kBox}))));
  RunResult r = run_cli({"duality", f, "--corpus", asset("corpus_depth3.txt")});
  CHECK(r.code == cli::kBudget);
}

TEST_CASE("cli complex and qfilter") {
  RunResult cx = run_cli({"complex", asset("frame3.json")});
  CHECK(cx.code == cli::kOk);
  ModalAlgebra a = algebra_from_json(json::parse(cx.out));
  CHECK(a.atoms == 3);

  // Identity-box algebra on two atoms.
  ModalAlgebra id(2, {kBox});
  for (Elem x = 0; x <= id.top(); ++x) id.table(kBox)[x] = x;
  std::string alg = temp_file("mlwb_id2.json", algebra_to_json(id));
  RunResult qf = run_cli({"qfilter", alg});
  CHECK(qf.code == cli::kOk);

  RunResult qj = run_cli({"--format", "jsonl", "qfilter", alg});
  CHECK(qj.code == cli::kOk);
  CHECK(qj.out.find("\"preservation\":{\"cf\":\"preserved\",\"mt\":"
                    "\"preserved\",\"tp\":\"preserved\"}") != std::string::npos);

  // Non-MT algebra: preservation rows become not-applicable.
  ModalAlgebra odd(1, {kBox});
  odd.table(kBox) = {1, 0};
  std::string oddf = temp_file("mlwb_odd.json", algebra_to_json(odd));
  RunResult oq = run_cli({"qfilter", oddf});
  CHECK(oq.code == cli::kOk);
  CHECK(oq.out.find("mt=not-applicable") != std::string::npos);
}

TEST_CASE("cli algebra check") {
  ModalAlgebra id(2, {Modality("E"), Modality("C")});
  for (Elem x = 0; x <= id.top(); ++x) {
    id.table(Modality("E"))[x] = x;
    id.table(Modality("C"))[x] = x;
  }
  std::string alg = temp_file("mlwb_ckl.json", algebra_to_json(id));
  RunResult r = run_cli({"algebra", "check", alg, "--props", "mt,tp,cf,cm,ckl"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out ==
        "mt true\ntp true\ncf true\ncm true\nckl true\n");
}

TEST_CASE("cli ckl demo") {
  RunResult r = run_cli({"ckl-demo"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("laws samples=500 violations=0") != std::string::npos);
  CHECK(r.out.find("C x   = 0 on [0,w), 1 on [w,w+w)") != std::string::npos);
  CHECK(r.out.find("E C x = 0 on [0,w+1), 1 on [w+1,w+w)") != std::string::npos);
  CHECK(r.out.find("FAILS at a = w") != std::string::npos);

  RunResult again = run_cli({"ckl-demo"});
  CHECK(again.out == r.out);

  RunResult skip = run_cli({"ckl-demo", "--samples", "0"});
  CHECK(skip.code == cli::kOk);
  CHECK(skip.out.find("laws skipped") != std::string::npos);
  CHECK(skip.out.find("FAILS at a = w") != std::string::npos);
}

TEST_CASE("cli prove check") {
  RunResult builtin = run_cli({"prove", "check", "--system", "qckl-",
                               "--builtin", "ck-induction"});
  CHECK(builtin.code == cli::kBoundedOnly);
  CHECK(builtin.out.find("checked-to-bound bound=8") != std::string::npos);

  RunResult file = run_cli({"prove", "check", asset("ck_induction_proof.json"),
                            "--system", "qckl-", "--omega-bound", "5"});
  CHECK(file.code == cli::kBoundedOnly);
  CHECK(file.out.find("checked-to-bound bound=5") != std::string::npos);

  // A fully propositional proof file is fully checked.
  Proof small;
  small.add_taut(parse("p -> p"));
  std::string sf = temp_file("mlwb_small_proof.json", proof_to_json(small));
  RunResult full = run_cli({"prove", "check", sf, "--system", "qckl-"});
  CHECK(full.code == cli::kOk);

  // Corrupting a justification index is rejected with the step number.
  json doc = proof_to_json(small);
  doc["steps"][0]["rule"] = "mp";
  doc["steps"][0]["implication"] = 7;
  doc["steps"][0]["antecedent"] = 8;
  std::string bad = temp_file("mlwb_bad_proof.json", doc);
  RunResult rej = run_cli({"prove", "check", bad, "--system", "qckl-"});
  CHECK(rej.code == cli::kCheckFailed);
  CHECK(rej.out.find("rejected step=0") != std::string::npos);

  CHECK(run_cli({"prove", "check", sf, "--system", "wat"}).code == cli::kUsage);
}

TEST_CASE("cli prove check soundness sweep") {
  RunResult r = run_cli({"prove", "check", "--system", "qckl-", "--builtin",
                         "ck-induction", "--soundness", "--max-worlds", "2"});
  CHECK(r.code == cli::kBoundedOnly);
  CHECK(r.out.find("violations=0") != std::string::npos);
}

TEST_CASE("cli validate budget and relation-file frame check") {
  std::string big =
      temp_file("mlwb_big2.json",
                frame_to_json(relation_to_frame(Relation(6, {kBox}))));
  // Valid at domain 1, so the search reaches the oversize domain-2 space.
  RunResult r = run_cli(
      {"validate", big, "--formula",
       "(forall x. P(x) & Q(x)) <-> (forall x. P(x)) & forall x. Q(x)"});
  CHECK(r.code == cli::kBudget);

  RunResult rel = run_cli({"frame", "check", asset("chain3_relation.json"),
                           "--props", "kripke,gl"});
  CHECK(rel.code == cli::kOk);
}

TEST_CASE("cli jsonl duality summary is pinned") {
  RunResult r = run_cli({"--format", "jsonl", "duality", asset("frame3.json"),
                         "--corpus", asset("corpus_depth3.txt")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "{\"checked\":50,\"disagreements\":0}\n");
}
