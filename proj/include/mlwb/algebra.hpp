#ifndef MLWB_ALGEBRA_HPP
#define MLWB_ALGEBRA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mlwb/frame.hpp"

namespace mlwb {

// Element of a finite powerset modal algebra: a bitmask over atoms. The
// mask doubles as the element's index into box tables.
using Elem = std::uint32_t;

// Finite complete modal algebra presented over explicit atoms (every finite
// complete Boolean algebra is such a powerset algebra). Box operators are
// explicit tables, so non-normal and non-monotone boxes are representable.
struct ModalAlgebra {
  int atoms = 1;
  std::map<Modality, std::vector<Elem>> box_tables;

  ModalAlgebra() = default;
  ModalAlgebra(int k, std::vector<Modality> modalities);

  std::size_t carrier_size() const { return std::size_t(1) << atoms; }
  Elem top() const { return static_cast<Elem>((1u << atoms) - 1); }
  static constexpr Elem bottom() { return 0; }
  Elem meet(Elem x, Elem y) const { return x & y; }
  Elem join(Elem x, Elem y) const { return x | y; }
  Elem complement(Elem x) const { return top() & ~x; }
  bool leq(Elem x, Elem y) const { return (x & y) == x; }

  bool has_modality(const Modality& m) const { return box_tables.count(m) != 0; }
  std::vector<Modality> modalities() const;
  const std::vector<Elem>& table(const Modality& m) const;
  std::vector<Elem>& table(const Modality& m);

  Elem box(const Modality& m, Elem x) const { return table(m)[x]; }
  Elem diamond(const Modality& m, Elem x) const {
    return complement(box(m, complement(x)));
  }

  void validate() const;
};

// Algebra-side MT / TP / CF, checked exhaustively over the carrier.
bool check_algebra_mt(const ModalAlgebra& a, const Modality& m);
bool check_algebra_tp(const ModalAlgebra& a, const Modality& m);
bool check_algebra_cf(const ModalAlgebra& a, const Modality& m);

// Box distributes over arbitrary meets. Exhaustive over all subsets of the
// carrier up to 4 atoms; seeded sampling beyond that.
bool check_completely_multiplicative(const ModalAlgebra& a, const Modality& m,
                                     std::uint64_t seed = 0,
                                     int samples = 4096);

// Complex modal algebra of a frame: atoms are the worlds and
// box(X) = set of worlds whose neighborhoods contain X.
ModalAlgebra complex_algebra(const NeighborhoodFrame& f);

// Inverse presentation: the frame whose complex algebra has these box
// tables, N(c) = { X | c in box(X) }. complex_algebra and frame_from_algebra
// are mutually inverse on this representation.
NeighborhoodFrame frame_from_algebra(const ModalAlgebra& a);

// A filter as an explicit carrier subset (sorted element list).
struct Filter {
  std::vector<Elem> members;

  bool contains(Elem x) const;
};

bool is_filter(const ModalAlgebra& a, const Filter& f);
bool is_proper_filter(const ModalAlgebra& a, const Filter& f);
bool is_prime_filter(const ModalAlgebra& a, const Filter& f);

// Principal filter of an element.
Filter upward_filter(const ModalAlgebra& a, Elem x);

// On a finite Boolean algebra these are exactly the principal filters of
// atoms, returned in atom order.
std::vector<Filter> enumerate_prime_filters(const ModalAlgebra& a);

// A countable-at-desk-scale family of carrier subsets whose existing meets
// a Q-filter must respect.
using MeetFamily = std::vector<std::vector<Elem>>;

// F is a Q-filter for S when every X in S contained in F has its meet in F.
// Expects F prime.
bool is_qfilter(const ModalAlgebra& a, const Filter& f, const MeetFamily& s);

// Q-filter neighborhood frame with its world indexing: world i is
// filters[i], and N_m(F) = { {G | x in G} : box_m(x) in F }.
struct QFilterFrame {
  NeighborhoodFrame frame;
  std::vector<Filter> filters;
};

QFilterFrame qfilter_frame(const ModalAlgebra& a, const MeetFamily& s);

// The representation map f(x) = { F : x in F } as a table over the carrier,
// valued in world-sets of the given Q-filter indexing.
std::vector<WorldSet> embedding(const ModalAlgebra& a,
                                const std::vector<Filter>& filters);

// Conditions a user-supplied neighborhood system over Q-filter worlds must
// satisfy for the representation map to stay a modal-algebra morphism: each
// boxed preimage element lies in the intersection of some neighborhood, and
// each diamond preimage element meets every neighborhood.
bool check_qfilter_neighborhood_conditions(const ModalAlgebra& a,
                                           const QFilterFrame& qf);

// Result of exhaustively verifying the representation map.
struct EmbeddingReport {
  bool injective = false;
  bool preserves_bounds = false;      // 0 and 1
  bool preserves_meet_join_not = false;
  bool preserves_box = false;         // per every modality
  bool preserves_family_meets = false;  // f(meet X) = intersection f[X], X in S
  bool ok() const {
    return injective && preserves_bounds && preserves_meet_join_not &&
           preserves_box && preserves_family_meets;
  }
};

EmbeddingReport verify_embedding(const ModalAlgebra& a, const MeetFamily& s);

// Same verification against a frame carrying a user-supplied neighborhood
// system over the Q-filter worlds; box preservation is computed against the
// upward closure of that system.
EmbeddingReport verify_embedding_against(const ModalAlgebra& a,
                                         const QFilterFrame& qf,
                                         const MeetFamily& s);

// Meet of the orbit x, box x, box box x, ... (finite carrier, so the orbit
// is eventually periodic; every visited value is intersected).
Elem omega_meet_orbit(const ModalAlgebra& a, const Modality& m, Elem x);

// GL frame: complex algebra is normal, transitivity box X <= box box X
// holds for every X, and the meet of the diamond orbit of the top is empty.
struct GlFrameReport {
  bool mt = false, tp = false, cf = false;
  bool transitive = false;
  bool omega_intersection_empty = false;
  bool ok() const { return mt && tp && cf && transitive && omega_intersection_empty; }
};

GlFrameReport check_gl_frame(const NeighborhoodFrame& f, const Modality& m);
GlFrameReport check_gl_frame(const NeighborhoodFrame& f);  // sole modality

// Bi-modal algebra where C x equals the meet of the E-orbit of x, plus
// normality of both operators.
bool check_ckl_algebra(const ModalAlgebra& a, const Modality& e,
                       const Modality& c);

}  // namespace mlwb

#endif
