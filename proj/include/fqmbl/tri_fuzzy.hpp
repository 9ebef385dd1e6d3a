#ifndef FQMBL_TRI_FUZZY_HPP
#define FQMBL_TRI_FUZZY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fqmbl {

/// Triangular fuzzy number (lo, mid, hi). Membership rises linearly from lo
/// to 1 at mid and falls back to 0 at hi; a normal triangle has lo <= mid <= hi.
template <typename Scalar>
struct TriFuzzy {
  Scalar lo{0};
  Scalar mid{0};
  Scalar hi{0};

  constexpr TriFuzzy() = default;
  constexpr TriFuzzy(Scalar l, Scalar m, Scalar h) : lo(l), mid(m), hi(h) {}
  static constexpr TriFuzzy crisp(Scalar v) { return {v, v, v}; }

  constexpr bool ordered() const { return lo <= mid && mid <= hi; }
  constexpr bool degenerate() const { return lo == mid && mid == hi; }

  constexpr std::array<Scalar, 3> components() const { return {lo, mid, hi}; }

  friend constexpr bool operator==(const TriFuzzy&, const TriFuzzy&) = default;
};

using TriFuzzyd = TriFuzzy<double>;

/// Crisp slice of a fuzzy parameter.
enum class Slice { lo, mid, hi };

inline constexpr std::array<Slice, 3> kAllSlices{Slice::lo, Slice::mid, Slice::hi};

inline const char* slice_name(Slice s) {
  switch (s) {
    case Slice::lo: return "lo";
    case Slice::mid: return "mid";
    case Slice::hi: return "hi";
  }
  return "?";
}

template <typename Scalar>
constexpr Scalar at(const TriFuzzy<Scalar>& a, Slice s) {
  switch (s) {
    case Slice::lo: return a.lo;
    case Slice::mid: return a.mid;
    case Slice::hi: return a.hi;
  }
  return a.mid;
}

enum class FuzzyOp { add, sub, mul, div };

/// Rearranges the components ascending.
template <typename Scalar>
constexpr TriFuzzy<Scalar> sorted(TriFuzzy<Scalar> a) {
  std::array<Scalar, 3> c{a.lo, a.mid, a.hi};
  std::sort(c.begin(), c.end());
  return {c[0], c[1], c[2]};
}

/// Componentwise arithmetic. The triple is sorted before return because
/// sub and div can otherwise produce lo > mid or mid > hi.
template <typename Scalar>
TriFuzzy<Scalar> tri_combine(const TriFuzzy<Scalar>& a, const TriFuzzy<Scalar>& b, FuzzyOp op) {
  switch (op) {
    case FuzzyOp::add: return sorted(TriFuzzy<Scalar>{a.lo + b.lo, a.mid + b.mid, a.hi + b.hi});
    case FuzzyOp::sub: return sorted(TriFuzzy<Scalar>{a.lo - b.lo, a.mid - b.mid, a.hi - b.hi});
    case FuzzyOp::mul: return sorted(TriFuzzy<Scalar>{a.lo * b.lo, a.mid * b.mid, a.hi * b.hi});
    case FuzzyOp::div:
      if (b.lo == Scalar(0)) throw std::domain_error("tri_combine: division by zero in lo component");
      if (b.mid == Scalar(0)) throw std::domain_error("tri_combine: division by zero in mid component");
      if (b.hi == Scalar(0)) throw std::domain_error("tri_combine: division by zero in hi component");
      return sorted(TriFuzzy<Scalar>{a.lo / b.lo, a.mid / b.mid, a.hi / b.hi});
  }
  throw std::invalid_argument("tri_combine: unknown operator");
}

template <typename Scalar>
TriFuzzy<Scalar> tri_scale(const TriFuzzy<Scalar>& a, Scalar c) {
  if (!(c >= Scalar(0))) throw std::domain_error("tri_scale: negative scale factor");
  return {c * a.lo, c * a.mid, c * a.hi};
}

template <typename Scalar>
TriFuzzy<Scalar> operator+(const TriFuzzy<Scalar>& a, const TriFuzzy<Scalar>& b) {
  return tri_combine(a, b, FuzzyOp::add);
}

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const TriFuzzy<Scalar>& a) {
  return os << '(' << a.lo << ", " << a.mid << ", " << a.hi << ')';
}

}  // namespace fqmbl

#endif  // FQMBL_TRI_FUZZY_HPP
