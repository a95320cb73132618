#include "mlwb/algebra.hpp"

#include <algorithm>
#include <random>

#include "mlwb/errors.hpp"

namespace mlwb {

ModalAlgebra::ModalAlgebra(int k, std::vector<Modality> modalities) : atoms(k) {
  if (k < 1 || k > kMaxWorlds)
    throw FormatError("atom count must be in 1.." + std::to_string(kMaxWorlds));
  for (auto& m : modalities)
    box_tables.emplace(std::move(m), std::vector<Elem>(carrier_size(), 0));
}

std::vector<Modality> ModalAlgebra::modalities() const {
  std::vector<Modality> out;
  for (const auto& [m, _] : box_tables) out.push_back(m);
  return out;
}

const std::vector<Elem>& ModalAlgebra::table(const Modality& m) const {
  auto it = box_tables.find(m);
  if (it == box_tables.end())
    throw EvalError("algebra has no modality '" + m.name + "'");
  return it->second;
}

std::vector<Elem>& ModalAlgebra::table(const Modality& m) {
  auto it = box_tables.find(m);
  if (it == box_tables.end())
    throw EvalError("algebra has no modality '" + m.name + "'");
  return it->second;
}

void ModalAlgebra::validate() const {
  if (atoms < 1 || atoms > kMaxWorlds) throw FormatError("atom count out of range");
  for (const auto& [m, tbl] : box_tables) {
    if (tbl.size() != carrier_size())
      throw FormatError("box table for '" + m.name + "' is not total");
    for (Elem e : tbl)
      if ((e & ~top()) != 0)
        throw FormatError("box table value outside the carrier");
  }
}

bool check_algebra_mt(const ModalAlgebra& a, const Modality& m) {
  const auto& t = a.table(m);
  for (Elem x = 0; x <= a.top(); ++x)
    for (Elem y = 0; y <= a.top(); ++y)
      if (!a.leq(t[x & y], t[x] & t[y])) return false;
  return true;
}

bool check_algebra_tp(const ModalAlgebra& a, const Modality& m) {
  return a.box(m, a.top()) == a.top();
}

bool check_algebra_cf(const ModalAlgebra& a, const Modality& m) {
  const auto& t = a.table(m);
  for (Elem x = 0; x <= a.top(); ++x)
    for (Elem y = 0; y <= a.top(); ++y)
      if (!a.leq(t[x] & t[y], t[x & y])) return false;
  return true;
}

namespace {

bool multiplicative_on(const ModalAlgebra& a, const Modality& m,
                       const std::vector<Elem>& family) {
  Elem meet_of_boxes = a.top();
  Elem meet_of_family = a.top();  // empty family meets to 1
  for (Elem x : family) {
    meet_of_boxes &= a.box(m, x);
    meet_of_family &= x;
  }
  return meet_of_boxes == a.box(m, meet_of_family);
}

}  // namespace

bool check_completely_multiplicative(const ModalAlgebra& a, const Modality& m,
                                     std::uint64_t seed, int samples) {
  std::size_t n = a.carrier_size();
  if (a.atoms <= 4) {
    // All 2^(2^k) subsets of the carrier.
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
      std::vector<Elem> family;
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) family.push_back(static_cast<Elem>(i));
      if (!multiplicative_on(a, m, family)) return false;
    }
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(0, n);
  std::uniform_int_distribution<Elem> elem_dist(0, a.top());
  for (int s = 0; s < samples; ++s) {
    std::vector<Elem> family(size_dist(rng));
    for (auto& e : family) e = elem_dist(rng);
    if (!multiplicative_on(a, m, family)) return false;
  }
  return true;
}

ModalAlgebra complex_algebra(const NeighborhoodFrame& f) {
  ModalAlgebra a(f.worlds, f.modalities());
  for (const auto& [m, sys] : f.systems) {
    auto& t = a.table(m);
    for (Elem x = 0; x <= a.top(); ++x) {
      Elem value = 0;
      for (int c = 0; c < f.worlds; ++c)
        if (family_contains(sys[c], static_cast<WorldSet>(x)))
          value |= Elem(1) << c;
      t[x] = value;
    }
  }
  return a;
}

NeighborhoodFrame frame_from_algebra(const ModalAlgebra& a) {
  NeighborhoodFrame f(a.atoms, a.modalities());
  for (const auto& [m, t] : a.box_tables)
    for (int c = 0; c < f.worlds; ++c) {
      NeighborhoodFamily fam;
      for (Elem x = 0; x <= a.top(); ++x)
        if ((t[x] >> c) & 1u) fam.push_back(static_cast<WorldSet>(x));
      f.system(m)[c] = canonical_family(std::move(fam));
    }
  return f;
}

bool Filter::contains(Elem x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

bool is_filter(const ModalAlgebra& a, const Filter& f) {
  if (f.members.empty()) return false;
  for (Elem x : f.members) {
    for (Elem y : f.members)
      if (!f.contains(a.meet(x, y))) return false;
    // Upward closure via single-atom extensions.
    for (int i = 0; i < a.atoms; ++i) {
      Elem up = x | (Elem(1) << i);
      if (up != x && !f.contains(up)) return false;
    }
  }
  return true;
}

bool is_proper_filter(const ModalAlgebra& a, const Filter& f) {
  return is_filter(a, f) && !f.contains(ModalAlgebra::bottom());
}

bool is_prime_filter(const ModalAlgebra& a, const Filter& f) {
  if (!is_proper_filter(a, f)) return false;
  for (Elem x = 0; x <= a.top(); ++x)
    for (Elem y = 0; y <= a.top(); ++y)
      if (f.contains(a.join(x, y)) && !f.contains(x) && !f.contains(y))
        return false;
  return true;
}

Filter upward_filter(const ModalAlgebra& a, Elem x) {
  Filter f;
  for (Elem y = 0; y <= a.top(); ++y)
    if (a.leq(x, y)) f.members.push_back(y);
  return f;
}

std::vector<Filter> enumerate_prime_filters(const ModalAlgebra& a) {
  std::vector<Filter> out;
  for (int i = 0; i < a.atoms; ++i)
    out.push_back(upward_filter(a, Elem(1) << i));
  return out;
}

bool is_qfilter(const ModalAlgebra& a, const Filter& f, const MeetFamily& s) {
  for (const auto& family : s) {
    bool contained = true;
    Elem meet = a.top();
    for (Elem x : family) {
      if (!f.contains(x)) {
        contained = false;
        break;
      }
      meet &= x;
    }
    if (contained && !f.contains(meet)) return false;
  }
  return true;
}

QFilterFrame qfilter_frame(const ModalAlgebra& a, const MeetFamily& s) {
  QFilterFrame out;
  for (const Filter& f : enumerate_prime_filters(a))
    if (is_qfilter(a, f, s)) out.filters.push_back(f);
  int n = static_cast<int>(out.filters.size());
  if (n == 0) throw EvalError("algebra admits no Q-filters for S");
  out.frame = NeighborhoodFrame(n, a.modalities());
  std::vector<WorldSet> image = embedding(a, out.filters);
  for (const auto& [m, t] : a.box_tables)
    for (int i = 0; i < n; ++i) {
      NeighborhoodFamily fam;
      for (Elem x = 0; x <= a.top(); ++x)
        if (out.filters[i].contains(t[x])) fam.push_back(image[x]);
      out.frame.system(m)[i] = canonical_family(std::move(fam));
    }
  return out;
}

std::vector<WorldSet> embedding(const ModalAlgebra& a,
                                const std::vector<Filter>& filters) {
  std::vector<WorldSet> image(a.carrier_size(), 0);
  for (Elem x = 0; x <= a.top(); ++x)
    for (std::size_t i = 0; i < filters.size(); ++i)
      if (filters[i].contains(x)) image[x] |= WorldSet(1) << i;
  return image;
}

bool check_qfilter_neighborhood_conditions(const ModalAlgebra& a,
                                           const QFilterFrame& qf) {
  int n = static_cast<int>(qf.filters.size());
  for (const auto& [m, sys] : qf.frame.systems) {
    if (!a.has_modality(m)) throw EvalError("modality mismatch: " + m.name);
    for (int i = 0; i < n; ++i) {
      const Filter& f = qf.filters[i];
      const NeighborhoodFamily& fam = sys[i];
      for (Elem x = 0; x <= a.top(); ++x) {
        if (f.contains(a.box(m, x))) {
          // x must lie in the intersection of some neighborhood.
          bool witnessed = false;
          for (WorldSet ws : fam) {
            bool in_all = true;
            for (int j = 0; j < n && in_all; ++j)
              if ((ws >> j) & 1u) in_all = qf.filters[j].contains(x);
            if (in_all) {
              witnessed = true;
              break;
            }
          }
          if (!witnessed) return false;
        }
        if (f.contains(a.diamond(m, x))) {
          // x must meet every neighborhood.
          for (WorldSet ws : fam) {
            bool in_some = false;
            for (int j = 0; j < n && !in_some; ++j)
              if ((ws >> j) & 1u) in_some = qf.filters[j].contains(x);
            if (!in_some) return false;
          }
        }
      }
    }
  }
  return true;
}

namespace {

EmbeddingReport verify_embedding_impl(const ModalAlgebra& a,
                                      const QFilterFrame& qf,
                                      const MeetFamily& s,
                                      bool upward_close_neighborhoods) {
  EmbeddingReport rep;
  std::vector<WorldSet> f = embedding(a, qf.filters);
  WorldSet all = qf.frame.universe();

  rep.injective = true;
  std::vector<bool> seen(std::size_t(1) << qf.filters.size(), false);
  for (Elem x = 0; x <= a.top(); ++x) {
    if (seen[f[x]]) rep.injective = false;
    seen[f[x]] = true;
  }

  rep.preserves_bounds = f[ModalAlgebra::bottom()] == 0 && f[a.top()] == all;

  rep.preserves_meet_join_not = true;
  for (Elem x = 0; x <= a.top(); ++x) {
    if (f[a.complement(x)] != (all & ~f[x])) rep.preserves_meet_join_not = false;
    for (Elem y = 0; y <= a.top(); ++y) {
      if (f[a.meet(x, y)] != (f[x] & f[y])) rep.preserves_meet_join_not = false;
      if (f[a.join(x, y)] != (f[x] | f[y])) rep.preserves_meet_join_not = false;
    }
  }

  // Box on the frame side: membership of f(x) in the (possibly up-closed)
  // neighborhood family of each world.
  rep.preserves_box = true;
  for (const auto& [m, sys] : qf.frame.systems) {
    for (Elem x = 0; x <= a.top(); ++x) {
      WorldSet frame_box = 0;
      for (std::size_t i = 0; i < qf.filters.size(); ++i) {
        bool member;
        if (upward_close_neighborhoods) {
          member = false;
          for (WorldSet ws : sys[i])
            if ((ws & f[x]) == ws) {  // some neighborhood below f(x)
              member = true;
              break;
            }
        } else {
          member = family_contains(sys[i], f[x]);
        }
        if (member) frame_box |= WorldSet(1) << i;
      }
      if (frame_box != f[a.box(m, x)]) {
        rep.preserves_box = false;
        break;
      }
    }
    if (!rep.preserves_box) break;
  }

  rep.preserves_family_meets = true;
  for (const auto& family : s) {
    Elem meet = a.top();
    WorldSet inter = all;
    for (Elem x : family) {
      meet &= x;
      inter &= f[x];
    }
    if (f[meet] != inter) rep.preserves_family_meets = false;
  }
  return rep;
}

}  // namespace

EmbeddingReport verify_embedding(const ModalAlgebra& a, const MeetFamily& s) {
  return verify_embedding_impl(a, qfilter_frame(a, s), s, false);
}

EmbeddingReport verify_embedding_against(const ModalAlgebra& a,
                                         const QFilterFrame& qf,
                                         const MeetFamily& s) {
  return verify_embedding_impl(a, qf, s, true);
}

Elem omega_meet_orbit(const ModalAlgebra& a, const Modality& m, Elem x) {
  std::vector<bool> visited(a.carrier_size(), false);
  Elem acc = a.top();
  for (Elem y = x; !visited[y]; y = a.box(m, y)) {
    visited[y] = true;
    acc &= y;
  }
  return acc;
}

GlFrameReport check_gl_frame(const NeighborhoodFrame& f, const Modality& m) {
  GlFrameReport rep;
  ModalAlgebra a = complex_algebra(f);
  rep.mt = check_algebra_mt(a, m);
  rep.tp = check_algebra_tp(a, m);
  rep.cf = check_algebra_cf(a, m);
  rep.transitive = true;
  for (Elem x = 0; x <= a.top(); ++x)
    if (!a.leq(a.box(m, x), a.box(m, a.box(m, x)))) {
      rep.transitive = false;
      break;
    }
  // Iterate the diamond orbit of the top and intersect all visited values.
  std::vector<bool> visited(a.carrier_size(), false);
  Elem acc = a.top();
  for (Elem y = a.top(); !visited[y]; y = a.diamond(m, y)) {
    visited[y] = true;
    acc &= y;
  }
  rep.omega_intersection_empty = acc == ModalAlgebra::bottom();
  return rep;
}

GlFrameReport check_gl_frame(const NeighborhoodFrame& f) {
  auto mods = f.modalities();
  if (mods.size() != 1)
    throw EvalError("GL check over a multi-modal frame needs an explicit modality");
  return check_gl_frame(f, mods.front());
}

bool check_ckl_algebra(const ModalAlgebra& a, const Modality& e,
                       const Modality& c) {
  for (const Modality& m : {e, c})
    if (!check_algebra_mt(a, m) || !check_algebra_tp(a, m) ||
        !check_algebra_cf(a, m))
      return false;
  for (Elem x = 0; x <= a.top(); ++x)
    if (a.box(c, x) != omega_meet_orbit(a, e, x)) return false;
  return true;
}

}  // namespace mlwb
