#include "mlwb/cli.hpp"

#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "mlwb/errors.hpp"
#include "mlwb/generators.hpp"
#include "mlwb/json_io.hpp"
#include "mlwb/ordinal.hpp"
#include "mlwb/parser.hpp"
#include "mlwb/proof.hpp"

namespace mlwb::cli {

namespace {

struct Options {
  std::string format = "text";
  int max_domain = 2;
  int omega_bound = 8;
  int max_worlds = 3;
  std::uint64_t seed = 0;
  std::uint64_t budget = 5'000'000;

  ValidateOptions validate() const {
    ValidateOptions v;
    v.max_domain = max_domain;
    v.budget = budget;
    return v;
  }
  bool jsonl() const { return format == "jsonl"; }
};

std::string ast_dump(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return "Top";
    case FormulaKind::Bottom:
      return "Bottom";
    case FormulaKind::Atom: {
      std::string out = "Atom(" + f.pred();
      for (const auto& a : f.args()) out += ", " + a;
      return out + ")";
    }
    case FormulaKind::And:
      return "And(" + ast_dump(f.left()) + ", " + ast_dump(f.right()) + ")";
    case FormulaKind::Not:
      return "Not(" + ast_dump(f.child()) + ")";
    case FormulaKind::Forall:
      return "Forall(" + f.var() + ", " + ast_dump(f.child()) + ")";
    case FormulaKind::Box:
      return "Box(" + f.modality().name + ", " + ast_dump(f.child()) + ")";
  }
  return "?";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_parse(const Options& opt, const std::string& text, std::ostream& out) {
  Formula f = parse(text);
  if (opt.jsonl()) {
    out << json{{"ast", ast_dump(f)}, {"form", f.str()}}.dump() << "\n";
  } else {
    out << "ast:  " << ast_dump(f) << "\n";
    out << "form: " << f.str() << "\n";
  }
  return kOk;
}

std::vector<std::string> split_props(const std::string& props) {
  std::vector<std::string> out;
  std::stringstream ss(props);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_frame_check(const Options& opt, const std::string& file,
                    const std::string& props, std::ostream& out) {
  json doc = load_json_file(file);
  NeighborhoodFrame frame =
      doc.contains("edges") ? relation_to_frame(relation_from_json(doc))
                            : frame_from_json(doc);
  bool all = true;
  for (const std::string& prop : split_props(props)) {
    bool holds = true;
    for (const Modality& m : frame.modalities()) {
      bool h;
      if (prop == "mt") h = check_mt(frame, m);
      else if (prop == "tp") h = check_tp(frame, m);
      else if (prop == "cf") h = check_cf(frame, m);
      else if (prop == "kripke") h = check_kripke(frame, m);
      else if (prop == "gl") h = check_gl_frame(frame, m).ok();
      else throw FormatError("unknown frame property '" + prop + "'");
      holds = holds && h;
    }
    all = all && holds;
    if (opt.jsonl())
      out << json{{"property", prop}, {"holds", holds}}.dump() << "\n";
    else
      out << prop << " " << (holds ? "true" : "false") << "\n";
  }
  return all ? kOk : kCheckFailed;
}

int cmd_algebra_check(const Options& opt, const std::string& file,
                      const std::string& props, std::ostream& out) {
  ModalAlgebra a = algebra_from_json(load_json_file(file));
  bool all = true;
  for (const std::string& prop : split_props(props)) {
    bool holds = true;
    if (prop == "ckl") {
      holds = a.has_modality(Modality("E")) && a.has_modality(Modality("C")) &&
              check_ckl_algebra(a, Modality("E"), Modality("C"));
    } else {
      for (const Modality& m : a.modalities()) {
        bool h;
        if (prop == "mt") h = check_algebra_mt(a, m);
        else if (prop == "tp") h = check_algebra_tp(a, m);
        else if (prop == "cf") h = check_algebra_cf(a, m);
        else if (prop == "cm")
          h = check_completely_multiplicative(a, m, opt.seed);
        else throw FormatError("unknown algebra property '" + prop + "'");
        holds = holds && h;
      }
    }
    all = all && holds;
    if (opt.jsonl())
      out << json{{"property", prop}, {"holds", holds}}.dump() << "\n";
    else
      out << prop << " " << (holds ? "true" : "false") << "\n";
  }
  return all ? kOk : kCheckFailed;
}

int cmd_complex(const std::string& file, const std::string& out_path,
                std::ostream& out) {
  NeighborhoodFrame frame = frame_from_json(load_json_file(file));
  json j = algebra_to_json(complex_algebra(frame));
  if (out_path.empty())
    out << j.dump(2) << "\n";
  else
    save_json_file(out_path, j);
  return kOk;
}

const char* preservation_word(bool source_has, bool target_has) {
  if (!source_has) return "not-applicable";
  return target_has ? "preserved" : "violated";
}

int cmd_qfilter(const Options& opt, const std::string& file,
                const std::string& out_path, std::ostream& out) {
  ModalAlgebra a = algebra_from_json(load_json_file(file));
  QFilterFrame qf = qfilter_frame(a, {});
  EmbeddingReport emb = verify_embedding(a, {});

  json frame_doc = frame_to_json(qf.frame);
  if (out_path.empty()) {
    if (!opt.jsonl()) out << frame_doc.dump(2) << "\n";
  } else {
    save_json_file(out_path, frame_doc);
  }

  bool all = emb.ok();
  json props = json::object();
  std::ostringstream text;
  for (const char* prop : {"mt", "tp", "cf"}) {
    bool src = true, dst = true;
    for (const Modality& m : a.modalities()) {
      std::string p(prop);
      if (p == "mt") {
        src = src && check_algebra_mt(a, m);
        dst = dst && check_mt(qf.frame, m);
      } else if (p == "tp") {
        src = src && check_algebra_tp(a, m);
        dst = dst && check_tp(qf.frame, m);
      } else {
        src = src && check_algebra_cf(a, m);
        dst = dst && check_cf(qf.frame, m);
      }
    }
    const char* word = preservation_word(src, dst);
    props[prop] = word;
    text << " " << prop << "=" << word;
    if (std::string(word) == "violated") all = false;
  }

  if (opt.jsonl()) {
    out << json{{"worlds", qf.frame.worlds},
                {"embedding",
                 {{"injective", emb.injective},
                  {"bounds", emb.preserves_bounds},
                  {"boolean", emb.preserves_meet_join_not},
                  {"box", emb.preserves_box},
                  {"family_meets", emb.preserves_family_meets}}},
                {"preservation", props}}
               .dump()
        << "\n";
  } else {
    out << "worlds " << qf.frame.worlds << "\n";
    out << "embedding injective=" << (emb.injective ? "true" : "false")
        << " bounds=" << (emb.preserves_bounds ? "true" : "false")
        << " boolean=" << (emb.preserves_meet_join_not ? "true" : "false")
        << " box=" << (emb.preserves_box ? "true" : "false")
        << " family-meets=" << (emb.preserves_family_meets ? "true" : "false")
        << "\n";
    out << "preserve" << text.str() << "\n";
  }
  return all ? kOk : kCheckFailed;
}

int cmd_validate(const Options& opt, const std::string& file,
                 const std::string& formula_text, const std::string& corpus,
                 bool quantify_free, std::ostream& out) {
  NeighborhoodFrame frame = frame_from_json(load_json_file(file));
  std::vector<Formula> formulas;
  if (!formula_text.empty()) formulas.push_back(parse(formula_text));
  if (!corpus.empty()) {
    auto more = parse_corpus(read_file(corpus));
    formulas.insert(formulas.end(), more.begin(), more.end());
  }
  if (formulas.empty()) throw FormatError("no formula given");
  ValidateOptions vopts = opt.validate();
  vopts.quantify_free = quantify_free;
  bool all = true;
  for (const Formula& f : formulas) {
    ValidationOutcome res = frame_validates(frame, f, vopts);
    if (opt.jsonl()) {
      json rec{{"formula", f.str()},
               {"status", res.valid ? "valid" : "countermodel"},
               {"max_domain", res.max_domain_checked}};
      if (!res.valid) {
        rec["world"] = res.countermodel->world;
        rec["model"] = model_to_json(res.countermodel->model);
        rec["assignment"] = res.countermodel->assignment;
      }
      out << rec.dump() << "\n";
    } else if (res.valid) {
      out << "valid(bounded max-domain=" << res.max_domain_checked << ") "
          << f.str() << "\n";
    } else {
      out << "countermodel world=" << res.countermodel->world
          << " domain=" << res.countermodel->model.domain << " " << f.str()
          << "\n";
    }
    all = all && res.valid;
  }
  return all ? kOk : kCheckFailed;
}

int cmd_duality(const Options& opt, const std::string& file,
                const std::string& corpus, int random_count,
                std::ostream& out) {
  NeighborhoodFrame frame = frame_from_json(load_json_file(file));
  std::vector<Formula> formulas;
  if (!corpus.empty()) formulas = parse_corpus(read_file(corpus));
  if (random_count > 0) {
    std::mt19937_64 rng(opt.seed);
    FormulaGenOptions gopts;
    for (int i = 0; i < random_count; ++i)
      formulas.push_back(random_formula(rng, gopts));
  }
  if (formulas.empty())
    throw FormatError("duality needs --corpus or --random");
  DualityReport rep = check_duality(frame, formulas, opt.validate());
  if (opt.jsonl()) {
    out << json{{"checked", rep.checked},
                {"disagreements", rep.disagreements.size()}}
               .dump()
        << "\n";
    for (const auto& d : rep.disagreements)
      out << json{{"formula", d.formula.str()},
                  {"frame_valid", d.frame_valid},
                  {"algebra_valid", d.algebra_valid}}
                 .dump()
          << "\n";
  } else {
    out << "duality checked=" << rep.checked
        << " disagreements=" << rep.disagreements.size() << "\n";
    for (const auto& d : rep.disagreements)
      out << "disagree frame=" << (d.frame_valid ? "valid" : "invalid")
          << " algebra=" << (d.algebra_valid ? "valid" : "invalid") << " "
          << d.formula.str() << "\n";
  }
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_gl_check(const Options& opt, const std::string& file,
                 std::ostream& out) {
  json doc = load_json_file(file);
  NeighborhoodFrame frame =
      doc.contains("edges") ? relation_to_frame(relation_from_json(doc))
                            : frame_from_json(doc);
  GlFrameReport rep = check_gl_frame(frame);
  if (opt.jsonl()) {
    out << json{{"mt", rep.mt},
                {"tp", rep.tp},
                {"cf", rep.cf},
                {"transitive", rep.transitive},
                {"omega_empty", rep.omega_intersection_empty},
                {"gl", rep.ok()}}
               .dump()
        << "\n";
  } else {
    auto b = [](bool v) { return v ? "true" : "false"; };
    out << "mt " << b(rep.mt) << "\n";
    out << "tp " << b(rep.tp) << "\n";
    out << "cf " << b(rep.cf) << "\n";
    out << "transitive " << b(rep.transitive) << "\n";
    out << "omega-empty " << b(rep.omega_intersection_empty) << "\n";
    out << "gl " << b(rep.ok()) << "\n";
  }
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_ckl_demo(const Options& opt, int samples, std::ostream& out) {
  CklLawReport laws;
  if (samples > 0) {
    laws = verify_ckl_laws(samples, opt.seed);
  }
  IncompletenessReport demo = demo_incompleteness();
  if (opt.jsonl()) {
    out << json{{"samples", laws.samples}, {"violations", laws.violations}}
               .dump()
        << "\n";
    out << json{{"witness", demo.witness.str()},
                {"c", demo.c_of_witness.str()},
                {"ec", demo.ec_of_witness.str()},
                {"confirmed", demo.confirmed()},
                {"failure_point",
                 demo.confirmed() ? demo.failure_point.str() : ""}}
               .dump()
        << "\n";
  } else {
    if (samples > 0)
      out << "laws samples=" << laws.samples
          << " violations=" << laws.violations << "\n";
    else
      out << "laws skipped\n";
    for (const auto& d : laws.details) out << "violation " << d << "\n";
    out << demo.text;
    if (demo.confirmed())
      out << "[C]p -> [E][C]p is refuted by the interval algebra\n";
  }
  return (laws.ok() && demo.confirmed()) ? kOk : kCheckFailed;
}

std::vector<NeighborhoodFrame> soundness_frames(const ProofSystem& sys,
                                                int max_worlds) {
  std::vector<NeighborhoodFrame> frames;
  if (&sys == &ProofSystem::qgl()) {
    for (int n = 1; n <= max_worlds; ++n)
      for (const Relation& r : enumerate_strict_orders(n, Modality::box()))
        frames.push_back(relation_to_frame(r));
  } else {
    Modality e("E"), c("C");
    for (int n = 1; n <= max_worlds; ++n)
      for (const Relation& r : enumerate_relations(n, e))
        frames.push_back(
            relation_to_frame(common_knowledge_relation(r, e, c)));
  }
  return frames;
}

int cmd_prove_check(const Options& opt, const std::string& system_name,
                    const std::string& file, const std::string& builtin,
                    bool soundness, std::ostream& out, std::ostream& err) {
  const ProofSystem* sys = ProofSystem::by_name(system_name);
  if (!sys) {
    err << "unknown proof system '" << system_name << "'\n";
    return kUsage;
  }
  Proof proof;
  if (!builtin.empty()) {
    if (builtin == "ck-induction") {
      proof = generate_ck_induction_proof();
    } else {
      err << "unknown builtin proof '" << builtin << "'\n";
      return kUsage;
    }
  } else if (!file.empty()) {
    std::string dir = ".";
    if (auto slash = file.find_last_of('/'); slash != std::string::npos)
      dir = file.substr(0, slash);
    proof = proof_from_json(load_json_file(file), dir);
  } else {
    err << "prove check needs a proof file or --builtin\n";
    return kUsage;
  }

  CheckReport rep = check_proof(*sys, proof, opt.omega_bound);
  if (opt.jsonl()) {
    json rec{{"steps", proof.size()}};
    switch (rep.status) {
      case CheckStatus::FullyChecked:
        rec["status"] = "fully-checked";
        break;
      case CheckStatus::CheckedToBound:
        rec["status"] = "checked-to-bound";
        rec["bound"] = rep.bound;
        break;
      case CheckStatus::Rejected:
        rec["status"] = "rejected";
        rec["step"] = rep.rejected_step;
        rec["reason"] = rep.reason;
        break;
    }
    out << rec.dump() << "\n";
  } else {
    switch (rep.status) {
      case CheckStatus::FullyChecked:
        out << "status fully-checked steps=" << proof.size() << "\n";
        break;
      case CheckStatus::CheckedToBound:
        out << "status checked-to-bound bound=" << rep.bound
            << " steps=" << proof.size() << "\n";
        break;
      case CheckStatus::Rejected:
        out << "status rejected step=" << rep.rejected_step << " reason=\""
            << rep.reason << "\"\n";
        break;
    }
  }
  if (rep.status == CheckStatus::Rejected) return kCheckFailed;

  if (soundness) {
    SoundnessReport srep = soundness_spot_check(
        *sys, proof, soundness_frames(*sys, opt.max_worlds), opt.validate());
    if (opt.jsonl())
      out << json{{"soundness_frames", srep.frames_checked},
                  {"soundness_violations", srep.violations.size()}}
                 .dump()
          << "\n";
    else
      out << "soundness frames=" << srep.frames_checked
          << " violations=" << srep.violations.size() << "\n";
    if (!srep.ok()) return kCheckFailed;
  }
  return rep.status == CheckStatus::FullyChecked ? kOk : kBoundedOnly;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"modal logic workbench"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "output format: text or jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}));
  app.add_option("--max-domain", opt.max_domain, "domain bound for validity checks");
  app.add_option("--omega-bound", opt.omega_bound, "omega-rule premise bound");
  app.add_option("--max-worlds", opt.max_worlds, "frame sweep bound");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--budget", opt.budget, "enumeration step budget");

  std::string parse_text;
  auto* c_parse = app.add_subcommand("parse", "parse a formula and dump its AST");
  c_parse->fallthrough();
  c_parse->add_option("formula", parse_text, "formula text")->required();

  std::string frame_file, frame_props = "mt,tp,cf,kripke";
  auto* c_frame = app.add_subcommand("frame", "frame operations");
  c_frame->fallthrough();
  auto* c_frame_check = c_frame->add_subcommand("check", "check frame properties");
  c_frame_check->fallthrough();
  c_frame_check->add_option("file", frame_file, "frame or relation file")->required();
  c_frame_check->add_option("--props", frame_props, "comma list: mt,tp,cf,kripke,gl");

  std::string alg_file, alg_props = "mt,tp,cf";
  auto* c_algebra = app.add_subcommand("algebra", "algebra operations");
  c_algebra->fallthrough();
  auto* c_algebra_check = c_algebra->add_subcommand("check", "check algebra properties");
  c_algebra_check->fallthrough();
  c_algebra_check->add_option("file", alg_file, "algebra file")->required();
  c_algebra_check->add_option("--props", alg_props, "comma list: mt,tp,cf,cm,ckl");

  std::string complex_file, complex_out;
  auto* c_complex = app.add_subcommand("complex", "complex algebra of a frame");
  c_complex->fallthrough();
  c_complex->add_option("file", complex_file, "frame file")->required();
  c_complex->add_option("-o,--output", complex_out, "output algebra file");

  std::string qfilter_file, qfilter_out;
  auto* c_qfilter = app.add_subcommand(
      "qfilter", "Q-filter frame of an algebra, with verification");
  c_qfilter->fallthrough();
  c_qfilter->add_option("file", qfilter_file, "algebra file")->required();
  c_qfilter->add_option("-o,--output", qfilter_out, "output frame file");

  std::string val_file, val_formula, val_corpus;
  bool val_qfree = false;
  auto* c_validate = app.add_subcommand("validate", "bounded frame validity");
  c_validate->fallthrough();
  c_validate->add_option("file", val_file, "frame file")->required();
  c_validate->add_option("--formula", val_formula, "formula text");
  c_validate->add_option("--corpus", val_corpus, "formula corpus file");
  c_validate->add_flag("--quantify-free", val_qfree,
                       "universally quantify free variables");

  std::string dual_file, dual_corpus;
  int dual_random = 0;
  auto* c_duality = app.add_subcommand("duality", "frame vs complex algebra");
  c_duality->fallthrough();
  c_duality->add_option("file", dual_file, "frame file")->required();
  c_duality->add_option("--corpus", dual_corpus, "formula corpus file");
  c_duality->add_option("--random", dual_random, "generate N random formulas");

  std::string gl_file;
  auto* c_gl = app.add_subcommand("gl-check", "GL frame conditions");
  c_gl->fallthrough();
  c_gl->add_option("file", gl_file, "frame or relation file")->required();

  int demo_samples = 500;
  auto* c_demo = app.add_subcommand(
      "ckl-demo", "interval-algebra laws and the incompleteness witness");
  c_demo->fallthrough();
  c_demo->add_option("--samples", demo_samples, "law-check sample count");

  std::string prove_system = "qckl-", prove_file, prove_builtin;
  bool prove_soundness = false;
  auto* c_prove = app.add_subcommand("prove", "proof operations");
  c_prove->fallthrough();
  auto* c_prove_check = c_prove->add_subcommand("check", "check a proof");
  c_prove_check->fallthrough();
  c_prove_check->add_option("file", prove_file, "proof file");
  c_prove_check->add_option("--system", prove_system, "qgl | qckl | qckl-");
  c_prove_check->add_option("--builtin", prove_builtin,
                            "builtin proof name (ck-induction)");
  c_prove_check->add_flag("--soundness", prove_soundness,
                          "spot-check every proved formula on a frame sweep");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*c_parse) return cmd_parse(opt, parse_text, out);
    if (*c_frame_check) return cmd_frame_check(opt, frame_file, frame_props, out);
    if (*c_algebra_check) return cmd_algebra_check(opt, alg_file, alg_props, out);
    if (*c_complex) return cmd_complex(complex_file, complex_out, out);
    if (*c_qfilter) return cmd_qfilter(opt, qfilter_file, qfilter_out, out);
    if (*c_validate)
      return cmd_validate(opt, val_file, val_formula, val_corpus, val_qfree, out);
    if (*c_duality)
      return cmd_duality(opt, dual_file, dual_corpus, dual_random, out);
    if (*c_gl) return cmd_gl_check(opt, gl_file, out);
    if (*c_demo) return cmd_ckl_demo(opt, demo_samples, out);
    if (*c_prove_check)
      return cmd_prove_check(opt, prove_system, prove_file, prove_builtin,
                             prove_soundness, out, err);
    err << "no subcommand given\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kParseError;
  } catch (const ResourceLimitError& e) {
    err << e.what() << "\n";
    return kBudget;
  } catch (const FormatError& e) {
    err << e.what() << "\n";
    return kBadInput;
  } catch (const ArityMismatchError& e) {
    err << e.what() << "\n";
    return kParseError;
  } catch (const EvalError& e) {
    err << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace mlwb::cli
