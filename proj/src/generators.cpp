#include "mlwb/generators.hpp"

#include <string>

namespace mlwb {

namespace {

std::string pred_name(int i, int arity) {
  // 0-ary letters p, q, r...; positive arity P, Q, R...
  char base = arity == 0 ? 'p' : 'P';
  return std::string(1, static_cast<char>(base + (i % 3))) +
         (i >= 3 ? std::to_string(i) : "");
}

std::string var_name(int i) {
  return std::string(1, static_cast<char>('x' + (i % 3))) +
         (i >= 3 ? std::to_string(i) : "");
}

Formula gen_rec(std::mt19937_64& rng, const FormulaGenOptions& opts, int depth,
                std::vector<std::string>& scope) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 3 : 9);
  switch (pick(rng)) {
    case 0:
      return Formula::top();
    case 1:
      return Formula::bottom();
    case 2:
    case 3: {  // atom
      std::uniform_int_distribution<int> pi(0, opts.num_predicates - 1);
      int i = pi(rng);
      std::uniform_int_distribution<int> ai(0, opts.max_arity);
      int arity = ai(rng);
      if (arity > 0 && scope.empty() && opts.closed) arity = 0;
      std::vector<std::string> args;
      for (int k = 0; k < arity; ++k) {
        if (!scope.empty() && (opts.closed || (rng() & 1))) {
          std::uniform_int_distribution<std::size_t> vi(0, scope.size() - 1);
          args.push_back(scope[vi(rng)]);
        } else {
          std::uniform_int_distribution<int> vi(0, opts.num_vars - 1);
          args.push_back(var_name(vi(rng)));
        }
      }
      // Keep each symbol's arity uniform by folding it into the name.
      return Formula::atom(pred_name(i, arity) +
                               (arity > 1 ? std::to_string(arity) : ""),
                           std::move(args));
    }
    case 4:
      return Formula::neg(gen_rec(rng, opts, depth, scope));
    case 5:
      return Formula::conj(gen_rec(rng, opts, depth, scope),
                           gen_rec(rng, opts, depth, scope));
    case 6:
      return Formula::implies(gen_rec(rng, opts, depth, scope),
                              gen_rec(rng, opts, depth, scope));
    case 7: {
      std::uniform_int_distribution<std::size_t> mi(0, opts.modalities.size() - 1);
      return Formula::box(opts.modalities[mi(rng)],
                          gen_rec(rng, opts, depth - 1, scope));
    }
    case 8: {
      std::uniform_int_distribution<std::size_t> mi(0, opts.modalities.size() - 1);
      return Formula::diamond(opts.modalities[mi(rng)],
                              gen_rec(rng, opts, depth - 1, scope));
    }
    default: {
      std::uniform_int_distribution<int> vi(0, opts.num_vars - 1);
      std::string v = var_name(vi(rng));
      scope.push_back(v);
      Formula body = gen_rec(rng, opts, depth - 1, scope);
      scope.pop_back();
      return (rng() & 1) ? Formula::forall(v, std::move(body))
                         : Formula::exists(v, std::move(body));
    }
  }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const FormulaGenOptions& opts) {
  std::vector<std::string> scope;
  return gen_rec(rng, opts, opts.max_depth, scope);
}

ModalAlgebra random_algebra(std::mt19937_64& rng, int atoms,
                            const std::vector<Modality>& modalities,
                            AlgebraStyle style) {
  ModalAlgebra a(atoms, modalities);
  std::uniform_int_distribution<Elem> any(0, a.top());
  for (const auto& m : modalities) {
    auto& t = a.table(m);
    switch (style) {
      case AlgebraStyle::Arbitrary:
        for (auto& e : t) e = any(rng);
        break;
      case AlgebraStyle::Monotone: {
        // box x = union of seed values of the elements below x.
        std::vector<Elem> seed(a.carrier_size());
        std::uniform_int_distribution<int> sparse(0, 3);
        for (auto& e : seed) e = sparse(rng) == 0 ? any(rng) : 0;
        for (Elem x = 0; x <= a.top(); ++x) {
          Elem acc = 0;
          for (Elem y = 0; y <= a.top(); ++y)
            if (a.leq(y, x)) acc |= seed[y];
          t[x] = acc;
        }
        break;
      }
      case AlgebraStyle::KripkeDerived: {
        std::vector<Elem> succ(atoms);
        for (auto& s : succ) s = any(rng);
        for (Elem x = 0; x <= a.top(); ++x) {
          Elem acc = 0;
          for (int i = 0; i < atoms; ++i)
            if (a.leq(succ[i], x)) acc |= Elem(1) << i;
          t[x] = acc;
        }
        break;
      }
    }
  }
  return a;
}

ModalAlgebra random_algebra_mixed(std::mt19937_64& rng, int atoms,
                                  const std::vector<Modality>& modalities) {
  std::uniform_int_distribution<int> pick(0, 2);
  AlgebraStyle style = static_cast<AlgebraStyle>(pick(rng));
  return random_algebra(rng, atoms, modalities, style);
}

MeetFamily random_meet_family(std::mt19937_64& rng, const ModalAlgebra& a,
                              int max_sets, int max_set_size) {
  std::uniform_int_distribution<int> nsets(0, max_sets);
  std::uniform_int_distribution<int> nsize(0, max_set_size);
  std::uniform_int_distribution<Elem> any(0, a.top());
  MeetFamily s(nsets(rng));
  for (auto& family : s) {
    family.resize(nsize(rng));
    for (auto& e : family) e = any(rng);
  }
  return s;
}

std::vector<NeighborhoodFrame> enumerate_frames(int worlds, const Modality& m) {
  // 2^(n 2^n) systems; already 16.7M at three worlds.
  if (worlds > 2) throw std::invalid_argument("frame sweep is limited to 2 worlds");
  std::size_t subsets = std::size_t(1) << worlds;          // |P(C)|
  std::size_t families = std::size_t(1) << subsets;        // |P(P(C))|
  std::vector<NeighborhoodFrame> out;
  std::vector<std::size_t> family_mask(worlds, 0);
  for (;;) {
    NeighborhoodFrame f(worlds, {m});
    for (int c = 0; c < worlds; ++c) {
      NeighborhoodFamily fam;
      for (std::size_t s = 0; s < subsets; ++s)
        if ((family_mask[c] >> s) & 1u) fam.push_back(static_cast<WorldSet>(s));
      f.system(m)[c] = std::move(fam);  // already sorted ascending
    }
    out.push_back(std::move(f));
    int c = worlds - 1;
    while (c >= 0 && ++family_mask[c] == families) family_mask[c--] = 0;
    if (c < 0) break;
  }
  return out;
}

std::vector<Relation> enumerate_relations(int worlds, const Modality& m) {
  std::vector<Relation> out;
  std::size_t edges = std::size_t(worlds) * worlds;
  for (std::size_t mask = 0; mask < (std::size_t(1) << edges); ++mask) {
    Relation r(worlds, {m});
    for (int from = 0; from < worlds; ++from)
      for (int to = 0; to < worlds; ++to)
        if ((mask >> (from * worlds + to)) & 1u) r.add_edge(m, from, to);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Relation> enumerate_strict_orders(int worlds, const Modality& m) {
  std::vector<Relation> out;
  for (Relation& r : enumerate_relations(worlds, m)) {
    if (!check_conversely_wellfounded(r, m)) continue;
    if (transitive_closure(r.relation(m)) != r.relation(m)) continue;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mlwb
