#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ecte {

/// Exact rational length.
///
/// Every edge weight, budget, potential and route length in the library is a
/// Weight. Arithmetic is signed (differences such as `10*opt - 16*phi` are
/// legitimate intermediate values); positivity of edge weights is enforced by
/// Instance, not here.
class Weight {
 public:
  Weight() = default;

  template <std::integral I>
  Weight(I value) : v_(static_cast<long>(value)) {}  // NOLINT: exact, implicit is fine

  explicit Weight(mpq_class value);

  /// Parses `12`, `2.375` or `7/4`. Throws std::invalid_argument on anything
  /// else (signs, exponents, empty strings, zero denominators).
  static Weight parse(std::string_view text);

  static Weight ratio(long numerator, long denominator);

  /// Canonical text: an integer, a finite decimal when the denominator only
  /// has factors 2 and 5, otherwise `p/q`. Weight::parse(w.str()) == w.
  std::string str() const;
  /// Always `p/q` (or a plain integer when the denominator is 1).
  std::string exact() const;
  double approx() const { return v_.get_d(); }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  /// Smallest integer >= *this.
  Weight ceil() const;

  const mpq_class& raw() const { return v_; }

  Weight& operator+=(const Weight& o) { v_ += o.v_; return *this; }
  Weight& operator-=(const Weight& o) { v_ -= o.v_; return *this; }
  Weight& operator*=(const Weight& o) { v_ *= o.v_; return *this; }
  Weight& operator/=(const Weight& o);

  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(Weight a, const Weight& b) { return a *= b; }
  friend Weight operator/(Weight a, const Weight& b) { return a /= b; }
  friend Weight operator-(const Weight& a) { return Weight(mpq_class(-a.v_)); }

  friend bool operator==(const Weight& a, const Weight& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

/// `p/q (≈d)` for non-integers, the bare integer otherwise. Used by reports.
std::string render(const Weight& w);

}  // namespace ecte
