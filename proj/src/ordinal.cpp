#include "mlwb/ordinal.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlwb {

Ordinal Ordinal::fin(int n) {
  if (n < 0) throw std::invalid_argument("negative ordinal");
  return Ordinal{0, n};
}

Ordinal Ordinal::omega_plus(int n) {
  if (n < 0) throw std::invalid_argument("negative ordinal");
  return Ordinal{1, n};
}

Ordinal Ordinal::omega_omega() { return Ordinal{2, 0}; }

Ordinal Ordinal::successor() const {
  if (is_bound()) throw std::logic_error("w+w has no successor here");
  return Ordinal{omegas, finite + 1};
}

std::string Ordinal::str() const {
  switch (omegas) {
    case 0:
      return std::to_string(finite);
    case 1:
      return finite == 0 ? "w" : "w+" + std::to_string(finite);
    default:
      return "w+w";
  }
}

OrdinalElement OrdinalElement::zero() { return OrdinalElement{}; }

OrdinalElement OrdinalElement::one() {
  return segment(Ordinal::fin(0), Ordinal::omega_omega());
}

OrdinalElement OrdinalElement::segment(Ordinal lo, Ordinal hi) {
  return from_intervals({{lo, hi}});
}

OrdinalElement OrdinalElement::all_but(Ordinal point) {
  return segment(Ordinal::fin(0), Ordinal::omega_omega())
      .meet(segment(point, point.successor()).complement());
}

OrdinalElement OrdinalElement::from_intervals(
    std::vector<OrdinalInterval> intervals) {
  std::erase_if(intervals,
                [](const OrdinalInterval& iv) { return !(iv.lo < iv.hi); });
  std::sort(intervals.begin(), intervals.end(),
            [](const OrdinalInterval& a, const OrdinalInterval& b) {
              return a.lo < b.lo;
            });
  OrdinalElement out;
  for (const auto& iv : intervals) {
    if (!out.ones_.empty() && !(out.ones_.back().hi < iv.lo)) {
      // Overlapping or touching; extend the last interval.
      if (out.ones_.back().hi < iv.hi) out.ones_.back().hi = iv.hi;
    } else {
      out.ones_.push_back(iv);
    }
  }
  return out;
}

bool OrdinalElement::at(Ordinal a) const {
  if (a.is_bound()) throw std::logic_error("w+w is a bound, not a point");
  for (const auto& iv : ones_) {
    if (a < iv.lo) return false;
    if (a < iv.hi) return true;
  }
  return false;
}

bool OrdinalElement::is_one() const {
  return ones_.size() == 1 && ones_[0].lo == Ordinal::fin(0) &&
         ones_[0].hi == Ordinal::omega_omega();
}

OrdinalElement OrdinalElement::complement() const {
  std::vector<OrdinalInterval> gaps;
  Ordinal cursor = Ordinal::fin(0);
  for (const auto& iv : ones_) {
    if (cursor < iv.lo) gaps.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < Ordinal::omega_omega())
    gaps.push_back({cursor, Ordinal::omega_omega()});
  return from_intervals(std::move(gaps));
}

OrdinalElement OrdinalElement::meet(const OrdinalElement& other) const {
  std::vector<OrdinalInterval> out;
  for (const auto& a : ones_)
    for (const auto& b : other.ones_) {
      Ordinal lo = std::max(a.lo, b.lo);
      Ordinal hi = std::min(a.hi, b.hi);
      if (lo < hi) out.push_back({lo, hi});
    }
  return from_intervals(std::move(out));
}

OrdinalElement OrdinalElement::join(const OrdinalElement& other) const {
  std::vector<OrdinalInterval> all = ones_;
  all.insert(all.end(), other.ones_.begin(), other.ones_.end());
  return from_intervals(std::move(all));
}

bool OrdinalElement::leq(const OrdinalElement& other) const {
  return meet(other) == *this;
}

namespace {

std::string interval_list(const std::vector<OrdinalInterval>& ivs) {
  std::string out;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    if (i) out += " ∪ ";
    out += "[" + ivs[i].lo.str() + "," + ivs[i].hi.str() + ")";
  }
  return out;
}

}  // namespace

std::string OrdinalElement::str() const {
  if (is_zero()) return "0";
  if (is_one()) return "1";
  return "1 on " + interval_list(ones_);
}

std::string OrdinalElement::case_table() const {
  if (is_zero()) return "0 on [0,w+w)";
  if (is_one()) return "1 on [0,w+w)";
  return "0 on " + interval_list(complement().ones_) + ", 1 on " +
         interval_list(ones_);
}

ZeroSetInfo zero_set_info(const OrdinalElement& x) {
  OrdinalElement zeros = x.complement();
  if (zeros.is_zero()) return {false, Ordinal::fin(0)};
  const OrdinalInterval& last = zeros.intervals().back();
  if (last.hi == Ordinal::omega_omega()) return {true, std::nullopt};
  // Every point from last.hi on is a one, and no earlier threshold works
  // because [last.lo, last.hi) is all zeros.
  return {false, last.hi};
}

OrdinalElement op_E(const OrdinalElement& x) {
  if (x.is_one()) return x;
  ZeroSetInfo info = zero_set_info(x);
  if (info.cofinal) return OrdinalElement::zero();
  // 0 on [0, n_x], 1 strictly above n_x.
  return OrdinalElement::segment(info.threshold->successor(),
                                 Ordinal::omega_omega());
}

OrdinalElement op_C(const OrdinalElement& x) {
  if (x.is_one()) return x;
  ZeroSetInfo info = zero_set_info(x);
  if (info.cofinal) return OrdinalElement::zero();
  if (info.threshold->omegas >= 1) return OrdinalElement::zero();
  // Finite threshold: the E-iterates sweep out every finite stage, leaving
  // exactly the tail from w.
  return OrdinalElement::segment(Ordinal::omega_plus(0),
                                 Ordinal::omega_omega());
}

OrdinalElement truncated_meet_E(const OrdinalElement& x, int n) {
  OrdinalElement acc = x;
  OrdinalElement iterate = x;
  for (int i = 1; i <= n; ++i) {
    iterate = op_E(iterate);
    acc = acc.meet(iterate);
  }
  return acc;
}

OrdinalElementGen::OrdinalElementGen(std::uint64_t seed)
    : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

std::uint64_t OrdinalElementGen::bits(int n) {
  // splitmix64; keeps generation reproducible across standard libraries.
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z & ((std::uint64_t(1) << n) - 1);
}

OrdinalElement OrdinalElementGen::next() {
  int count = static_cast<int>(bits(2)) + static_cast<int>(bits(1));
  std::vector<OrdinalInterval> ivs;
  for (int i = 0; i < count; ++i) {
    int low_omegas = static_cast<int>(bits(2)) == 3 ? 1 : 0;
    Ordinal lo{low_omegas, static_cast<int>(bits(4))};
    Ordinal hi;
    switch (bits(2)) {
      case 0:
        hi = Ordinal::omega_omega();
        break;
      case 1:
        hi = Ordinal{1, static_cast<int>(bits(4))};
        break;
      default:
        hi = Ordinal{low_omegas, static_cast<int>(bits(4))};
        break;
    }
    if (!(lo < hi)) std::swap(lo, hi);
    if (lo < hi) ivs.push_back({lo, hi});
  }
  return OrdinalElement::from_intervals(std::move(ivs));
}

CklLawReport verify_ckl_laws(int samples, std::uint64_t seed) {
  CklLawReport rep;
  rep.samples = samples;
  OrdinalElementGen gen(seed);
  auto record = [&rep](const std::string& what) {
    ++rep.violations;
    if (rep.details.size() < 8) rep.details.push_back(what);
  };

  if (op_E(OrdinalElement::one()) != OrdinalElement::one())
    record("E 1 != 1");

  for (int i = 0; i < samples; ++i) {
    OrdinalElement x = gen.next();
    OrdinalElement y = gen.next();
    OrdinalElement xy = x.meet(y);
    if (op_E(xy) != op_E(x).meet(op_E(y)))
      record("E(x^y) != Ex^Ey for x=" + x.str() + " y=" + y.str());
    if (op_C(xy) != op_C(x).meet(op_C(y)))
      record("C(x^y) != Cx^Cy for x=" + x.str() + " y=" + y.str());
    // Monotonicity consequence of the meet law.
    OrdinalElement up = x.join(y);
    if (!op_E(x).leq(op_E(up)))
      record("E not monotone for x=" + x.str() + " x|y=" + up.str());
  }
  return rep;
}

IncompletenessReport demo_incompleteness() {
  IncompletenessReport rep;
  rep.witness = OrdinalElement::all_but(Ordinal::fin(1));
  rep.c_of_witness = op_C(rep.witness);
  rep.ec_of_witness = op_E(rep.c_of_witness);
  rep.c_below_ec = rep.c_of_witness.leq(rep.ec_of_witness);

  if (!rep.c_below_ec) {
    // Least point where C x holds but E C x does not.
    OrdinalElement gap =
        rep.c_of_witness.meet(rep.ec_of_witness.complement());
    rep.failure_point = gap.intervals().front().lo;
  }

  rep.text += "x     = " + rep.witness.case_table() + "\n";
  rep.text += "C x   = " + rep.c_of_witness.case_table() + "\n";
  rep.text += "E C x = " + rep.ec_of_witness.case_table() + "\n";
  if (rep.c_below_ec) {
    rep.text += "C x <= E C x holds; no counterexample\n";
  } else {
    rep.text +=
        "C x <= E C x FAILS at a = " + rep.failure_point.str() + "\n";
  }
  return rep;
}

}  // namespace mlwb
