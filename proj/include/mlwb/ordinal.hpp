#ifndef MLWB_ORDINAL_HPP
#define MLWB_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlwb {

// Ordinals below w+w, plus w+w itself as an exclusive interval bound. The
// pair (omegas, finite) is compared lexicographically, which matches the
// ordinal order: k < w+k' < w+w.
struct Ordinal {
  int omegas = 0;  // 0: finite, 1: w+n, 2: the bound w+w (finite part 0)
  int finite = 0;

  static Ordinal fin(int n);
  static Ordinal omega_plus(int n);
  static Ordinal omega_omega();

  bool is_bound() const { return omegas == 2; }
  Ordinal successor() const;  // undefined on the bound; throws

  auto operator<=>(const Ordinal&) const = default;
  std::string str() const;  // "3", "w", "w+2", "w+w"
};

struct OrdinalInterval {
  Ordinal lo, hi;  // half-open [lo, hi), lo < hi

  bool operator==(const OrdinalInterval&) const = default;
};

// Element of the interval subalgebra of the powerset algebra over w+w: a
// 0/1-valued function that is 1 exactly on a finite union of half-open
// intervals. Canonical form: intervals sorted, disjoint and non-adjacent.
class OrdinalElement {
 public:
  OrdinalElement() = default;  // the zero element

  static OrdinalElement zero();
  static OrdinalElement one();
  static OrdinalElement from_intervals(std::vector<OrdinalInterval> intervals);
  static OrdinalElement segment(Ordinal lo, Ordinal hi);
  // 1 everywhere except at the given point.
  static OrdinalElement all_but(Ordinal point);

  bool at(Ordinal a) const;  // a must not be the bound
  bool is_zero() const { return ones_.empty(); }
  bool is_one() const;

  OrdinalElement meet(const OrdinalElement& other) const;
  OrdinalElement join(const OrdinalElement& other) const;
  OrdinalElement complement() const;
  bool leq(const OrdinalElement& other) const;

  bool operator==(const OrdinalElement& other) const = default;

  const std::vector<OrdinalInterval>& intervals() const { return ones_; }

  // "0", "1", or "1 on [0,1) ∪ [2,w+w)".
  std::string str() const;
  // Paper-style two-row description: "0 on [...], 1 on [...]".
  std::string case_table() const;

 private:
  std::vector<OrdinalInterval> ones_;
};

// The zero set N_x = { a : x(a) = 0 }: whether it is cofinal in w+w, and
// when it is not, n_x = min{ a : x(b) = 1 for all b >= a }.
struct ZeroSetInfo {
  bool cofinal = false;
  std::optional<Ordinal> threshold;  // n_x; set exactly when not cofinal
};

ZeroSetInfo zero_set_info(const OrdinalElement& x);

// The everyone-knows operator: E 1 = 1; E x = 0 when the zero set of x is
// cofinal; otherwise E x is 0 up to and including n_x and 1 above it.
OrdinalElement op_E(const OrdinalElement& x);

// Common knowledge as the meet of all E-iterates of x, evaluated in closed
// form: 1 for x = 1; 0 when the zero set is cofinal or n_x >= w; otherwise
// 1 exactly on [w, w+w).
OrdinalElement op_C(const OrdinalElement& x);

// Meet of E^0 x .. E^N x by explicit iteration; oracle for op_C.
OrdinalElement truncated_meet_E(const OrdinalElement& x, int n);

struct CklLawReport {
  int samples = 0;
  int violations = 0;
  std::vector<std::string> details;  // first few failures, if any
  bool ok() const { return violations == 0; }
};

// Property-tests E(x^y) = Ex^Ey, C(x^y) = Cx^Cy, E1 = 1 and monotonicity of
// E over seeded random interval elements.
CklLawReport verify_ckl_laws(int samples, std::uint64_t seed);

// Seeded random element generator used by the law checks and tests.
class OrdinalElementGen {
 public:
  explicit OrdinalElementGen(std::uint64_t seed);
  OrdinalElement next();

 private:
  std::uint64_t state_;
  std::uint64_t bits(int n);
};

struct IncompletenessReport {
  OrdinalElement witness, c_of_witness, ec_of_witness;
  bool c_below_ec = true;     // expected false
  Ordinal failure_point;      // least a with Cx(a)=1, ECx(a)=0
  std::string text;           // printable value tables
  bool confirmed() const { return !c_below_ec; }
};

// Builds the witness that is 0 exactly at 1, computes C x and E C x, and
// confirms C x is not below E C x (failing at a = w).
IncompletenessReport demo_incompleteness();

}  // namespace mlwb

#endif
