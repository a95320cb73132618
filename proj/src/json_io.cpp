#include "mlwb/json_io.hpp"

#include <fstream>

#include "mlwb/errors.hpp"
#include "mlwb/parser.hpp"

namespace mlwb {

namespace {

json worldset_to_json(WorldSet x) {
  json out = json::array();
  for (int w = 0; w < kMaxWorlds; ++w)
    if ((x >> w) & 1u) out.push_back(w);
  return out;
}

WorldSet worldset_from_json(const json& j, int worlds) {
  if (!j.is_array()) throw FormatError("world-set must be an array of ids");
  WorldSet x = 0;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw FormatError("world id must be an integer");
    int w = e.get<int>();
    if (w < 0 || w >= worlds) throw FormatError("world id out of range");
    x |= WorldSet(1) << w;
  }
  return x;
}

int get_worlds(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw FormatError(std::string("missing integer field '") + key + "'");
  int n = j[key].get<int>();
  if (n < 1 || n > kMaxWorlds) throw FormatError("world/atom count out of range");
  return n;
}

std::vector<Modality> modalities_from_json(const json& j) {
  std::vector<Modality> out;
  if (!j.contains("modalities")) return out;
  for (const auto& m : j["modalities"]) {
    if (!m.is_string() || m.get<std::string>().empty())
      throw FormatError("modality names must be nonempty strings");
    out.push_back(Modality(m.get<std::string>()));
  }
  return out;
}

}  // namespace

json frame_to_json(const NeighborhoodFrame& f) {
  json j;
  j["worlds"] = f.worlds;
  json mods = json::array();
  json systems = json::object();
  for (const auto& [m, sys] : f.systems) {
    mods.push_back(m.name);
    json per_world = json::array();
    for (const auto& fam : sys) {
      json sets = json::array();
      for (WorldSet x : fam) sets.push_back(worldset_to_json(x));
      per_world.push_back(sets);
    }
    systems[m.name] = per_world;
  }
  j["modalities"] = mods;
  j["neighborhoods"] = systems;
  return j;
}

NeighborhoodFrame frame_from_json(const json& j) {
  int n = get_worlds(j, "worlds");
  if (!j.contains("neighborhoods") || !j["neighborhoods"].is_object())
    throw FormatError("missing 'neighborhoods' object");
  std::vector<Modality> mods = modalities_from_json(j);
  if (mods.empty())
    for (const auto& [name, _] : j["neighborhoods"].items())
      mods.push_back(Modality(name));
  NeighborhoodFrame f(n, mods);
  for (const auto& m : mods) {
    if (!j["neighborhoods"].contains(m.name))
      throw FormatError("no neighborhood system for modality '" + m.name + "'");
    const json& per_world = j["neighborhoods"][m.name];
    if (!per_world.is_array() || static_cast<int>(per_world.size()) != n)
      throw FormatError("neighborhood list must have one entry per world");
    for (int c = 0; c < n; ++c) {
      NeighborhoodFamily fam;
      for (const auto& setj : per_world[c])
        fam.push_back(worldset_from_json(setj, n));
      f.system(m)[c] = canonical_family(std::move(fam));
    }
  }
  f.validate();
  return f;
}

json relation_to_json(const Relation& r) {
  json j;
  j["worlds"] = r.worlds;
  json edges = json::object();
  for (const auto& [m, succ] : r.successors) {
    json pairs = json::array();
    for (int from = 0; from < r.worlds; ++from)
      for (int to = 0; to < r.worlds; ++to)
        if ((succ[from] >> to) & 1u) pairs.push_back(json::array({from, to}));
    edges[m.name] = pairs;
  }
  j["edges"] = edges;
  return j;
}

Relation relation_from_json(const json& j) {
  int n = get_worlds(j, "worlds");
  if (!j.contains("edges") || !j["edges"].is_object())
    throw FormatError("missing 'edges' object");
  std::vector<Modality> mods;
  for (const auto& [name, _] : j["edges"].items()) mods.push_back(Modality(name));
  Relation r(n, mods);
  for (const auto& [name, pairs] : j["edges"].items()) {
    if (!pairs.is_array()) throw FormatError("edge list must be an array");
    for (const auto& pr : pairs) {
      if (!pr.is_array() || pr.size() != 2)
        throw FormatError("edges are [from, to] pairs");
      int from = pr[0].get<int>(), to = pr[1].get<int>();
      if (from < 0 || from >= n || to < 0 || to >= n)
        throw FormatError("edge endpoint out of range");
      r.add_edge(Modality(name), from, to);
    }
  }
  return r;
}

json algebra_to_json(const ModalAlgebra& a) {
  json j;
  j["atoms"] = a.atoms;
  json mods = json::array();
  json boxes = json::object();
  for (const auto& [m, t] : a.box_tables) {
    mods.push_back(m.name);
    boxes[m.name] = t;
  }
  j["modalities"] = mods;
  j["box"] = boxes;
  return j;
}

ModalAlgebra algebra_from_json(const json& j) {
  int k = get_worlds(j, "atoms");
  if (!j.contains("box") || !j["box"].is_object())
    throw FormatError("missing 'box' object");
  std::vector<Modality> mods = modalities_from_json(j);
  if (mods.empty())
    for (const auto& [name, _] : j["box"].items()) mods.push_back(Modality(name));
  ModalAlgebra a(k, mods);
  for (const auto& m : mods) {
    if (!j["box"].contains(m.name))
      throw FormatError("no box table for modality '" + m.name + "'");
    const json& t = j["box"][m.name];
    if (!t.is_array() || t.size() != a.carrier_size())
      throw FormatError("box table must list all " +
                        std::to_string(a.carrier_size()) + " elements");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_number_integer()) throw FormatError("box entries are indices");
      std::int64_t v = t[i].get<std::int64_t>();
      if (v < 0 || v > a.top()) throw FormatError("box entry outside the carrier");
      a.table(m)[i] = static_cast<Elem>(v);
    }
  }
  a.validate();
  return a;
}

json model_to_json(const NeighborhoodModel& m) {
  json j = frame_to_json(m.frame);
  j["domain"] = m.domain;
  json interp = json::object();
  for (const auto& [name, ext] : m.interp) {
    json rec;
    rec["arity"] = ext.arity;
    json rows = json::array();
    std::uint64_t tc = tuple_count(m.domain, ext.arity);
    for (int c = 0; c < m.frame.worlds; ++c)
      for (std::uint64_t t = 0; t < tc; ++t)
        if ((ext.true_at[c] >> t) & 1u)
          rows.push_back(json::array(
              {c, tuple_from_index(t, m.domain, ext.arity)}));
    rec["true_at"] = rows;
    interp[name] = rec;
  }
  j["interpretation"] = interp;
  return j;
}

NeighborhoodModel model_from_json(const json& j) {
  NeighborhoodModel m;
  m.frame = frame_from_json(j);
  if (!j.contains("domain")) throw FormatError("missing 'domain'");
  m.domain = j["domain"].get<int>();
  if (m.domain < 1) throw FormatError("domain must be nonempty");
  if (j.contains("interpretation")) {
    for (const auto& [name, rec] : j["interpretation"].items()) {
      PredicateExtension ext;
      ext.arity = rec.value("arity", 0);
      ext.true_at.assign(m.frame.worlds, 0);
      for (const auto& row : rec.value("true_at", json::array())) {
        if (!row.is_array() || row.size() != 2)
          throw FormatError("'true_at' rows are [world, tuple] pairs");
        int world = row[0].get<int>();
        if (world < 0 || world >= m.frame.worlds)
          throw FormatError("world out of range in interpretation");
        std::vector<int> tuple = row[1].get<std::vector<int>>();
        if (static_cast<int>(tuple.size()) != ext.arity)
          throw FormatError("tuple arity mismatch for " + name);
        for (int t : tuple)
          if (t < 0 || t >= m.domain)
            throw FormatError("tuple entry outside the domain");
        ext.true_at[world] |= std::uint64_t(1)
                              << tuple_index(tuple, m.domain);
      }
      m.interp.emplace(name, std::move(ext));
    }
  }
  m.validate();
  return m;
}

namespace {

json subst_to_json(const SubstitutionMap& s) {
  json out = json::object();
  for (const auto& [pred, repl] : s.entries()) {
    if (repl.placeholders.empty()) {
      out[pred] = repl.body.str();
    } else {
      out[pred] = {{"placeholders", repl.placeholders},
                   {"body", repl.body.str()}};
    }
  }
  return out;
}

SubstitutionMap subst_from_json(const json& j) {
  SubstitutionMap s;
  if (j.is_null()) return s;
  if (!j.is_object()) throw FormatError("substitution must be an object");
  for (const auto& [pred, val] : j.items()) {
    if (val.is_string()) {
      s.set(pred, parse(val.get<std::string>()));
    } else if (val.is_object()) {
      PredReplacement repl;
      repl.placeholders = val.value("placeholders", std::vector<std::string>{});
      if (!val.contains("body")) throw FormatError("replacement needs a 'body'");
      repl.body = parse(val["body"].get<std::string>());
      s.set(pred, std::move(repl));
    } else {
      throw FormatError("replacement must be a formula string or object");
    }
  }
  return s;
}

json instantiation_to_json(const OmegaInstantiation& inst) {
  json j;
  j["antecedent"] = inst.antecedent.str();
  if (!inst.target.empty()) j["target"] = inst.target.str();
  if (!inst.prefix.empty()) {
    json prefix = json::array();
    for (const auto& [m, f] : inst.prefix)
      prefix.push_back(json::array({m.name, f.str()}));
    j["prefix"] = prefix;
  }
  return j;
}

OmegaInstantiation instantiation_from_json(const json& j) {
  OmegaInstantiation inst;
  if (!j.contains("antecedent"))
    throw FormatError("omega step needs an 'antecedent'");
  inst.antecedent = parse(j["antecedent"].get<std::string>());
  if (j.contains("target")) inst.target = parse(j["target"].get<std::string>());
  for (const auto& pr : j.value("prefix", json::array())) {
    if (!pr.is_array() || pr.size() != 2)
      throw FormatError("prefix entries are [modality, formula] pairs");
    inst.prefix.emplace_back(Modality(pr[0].get<std::string>()),
                             parse(pr[1].get<std::string>()));
  }
  return inst;
}

json premises_to_json(const PremiseGenerator& g) {
  if (g.name == "inline-steps") return json{{"steps", g.step_refs}};
  if (g.name == "inline-proofs") {
    json proofs = json::array();
    for (const ProofPtr& p : g.sub_proofs) proofs.push_back(proof_to_json(*p));
    return json{{"proofs", proofs}};
  }
  return json{{"builtin", g.name}};
}

PremiseGenerator premises_from_json(const json& j, const std::string& base_dir);

json step_to_json(const ProofStep& step) {
  json j;
  j["formula"] = step.formula.str();
  if (const auto* ax = std::get_if<AxiomJust>(&step.just)) {
    j["rule"] = "axiom";
    j["schema"] = ax->schema;
    if (ax->index) j["index"] = *ax->index;
    if (!ax->subst.empty()) j["subst"] = subst_to_json(ax->subst);
  } else if (const auto* mp = std::get_if<MPJust>(&step.just)) {
    j["rule"] = "mp";
    j["implication"] = mp->implication;
    j["antecedent"] = mp->antecedent;
  } else if (const auto* us = std::get_if<UniformSubJust>(&step.just)) {
    j["rule"] = "usub";
    j["from"] = us->from;
    j["subst"] = subst_to_json(us->subst);
  } else if (const auto* nec = std::get_if<NecessitationJust>(&step.just)) {
    j["rule"] = "nec";
    j["from"] = nec->from;
    j["modality"] = nec->modality.name;
  } else if (const auto* gen = std::get_if<GeneralizationJust>(&step.just)) {
    j["rule"] = "gen";
    j["from"] = gen->from;
    j["var"] = gen->var;
  } else {
    const auto& om = std::get<OmegaJust>(step.just);
    j["rule"] = "omega";
    j["omega_rule"] = om.rule;
    j.update(instantiation_to_json(om.inst));
    j["premises"] = premises_to_json(om.premises);
  }
  return j;
}

Justification just_from_json(const json& j, const std::string& base_dir) {
  std::string rule = j.value("rule", "");
  if (rule == "axiom") {
    AxiomJust ax;
    ax.schema = j.value("schema", "");
    if (ax.schema.empty()) throw FormatError("axiom step needs a 'schema'");
    if (j.contains("index")) ax.index = j["index"].get<int>();
    ax.subst = subst_from_json(j.value("subst", json()));
    return ax;
  }
  if (rule == "mp") {
    if (!j.contains("implication") || !j.contains("antecedent"))
      throw FormatError("mp step needs 'implication' and 'antecedent'");
    return MPJust{j["implication"].get<int>(), j["antecedent"].get<int>()};
  }
  if (rule == "usub") {
    if (!j.contains("from")) throw FormatError("usub step needs 'from'");
    return UniformSubJust{j["from"].get<int>(),
                          subst_from_json(j.value("subst", json()))};
  }
  if (rule == "nec") {
    if (!j.contains("from") || !j.contains("modality"))
      throw FormatError("nec step needs 'from' and 'modality'");
    return NecessitationJust{j["from"].get<int>(),
                             Modality(j["modality"].get<std::string>())};
  }
  if (rule == "gen") {
    if (!j.contains("from") || !j.contains("var"))
      throw FormatError("gen step needs 'from' and 'var'");
    return GeneralizationJust{j["from"].get<int>(),
                              j["var"].get<std::string>()};
  }
  if (rule == "omega") {
    OmegaJust om;
    om.rule = j.value("omega_rule", "");
    if (om.rule.empty()) throw FormatError("omega step needs 'omega_rule'");
    om.inst = instantiation_from_json(j);
    if (!j.contains("premises")) throw FormatError("omega step needs 'premises'");
    om.premises = premises_from_json(j["premises"], base_dir);
    return om;
  }
  throw FormatError("unknown proof rule '" + rule + "'");
}

PremiseGenerator premises_from_json(const json& j, const std::string& base_dir) {
  if (j.contains("builtin")) {
    std::string name = j["builtin"].get<std::string>();
    const PremiseGenerator* g = find_premise_generator(name);
    if (!g) throw FormatError("unknown builtin premise recipe '" + name + "'");
    return *g;
  }
  if (j.contains("steps"))
    return inline_step_premises(j["steps"].get<std::vector<int>>());
  if (j.contains("proofs")) {
    std::vector<ProofPtr> proofs;
    for (const auto& pj : j["proofs"])
      proofs.push_back(std::make_shared<const Proof>(proof_from_json(pj, base_dir)));
    return inline_proof_premises(std::move(proofs));
  }
  if (j.contains("proof_files")) {
    std::vector<ProofPtr> proofs;
    for (const auto& pf : j["proof_files"]) {
      std::string path = base_dir + "/" + pf.get<std::string>();
      proofs.push_back(std::make_shared<const Proof>(
          proof_from_json(load_json_file(path), base_dir)));
    }
    return inline_proof_premises(std::move(proofs));
  }
  throw FormatError(
      "premises must give 'builtin', 'steps', 'proofs' or 'proof_files'");
}

}  // namespace

json proof_to_json(const Proof& p) {
  json j;
  json steps = json::array();
  for (const auto& s : p.steps()) steps.push_back(step_to_json(s));
  j["steps"] = steps;
  return j;
}

Proof proof_from_json(const json& j, const std::string& base_dir) {
  if (!j.contains("steps") || !j["steps"].is_array())
    throw FormatError("proof document needs a 'steps' array");
  Proof p;
  for (const auto& sj : j["steps"]) {
    if (!sj.contains("formula")) throw FormatError("step needs a 'formula'");
    p.add(parse(sj["formula"].get<std::string>()), just_from_json(sj, base_dir));
  }
  return p;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("invalid JSON in '" + path + "': " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace mlwb
