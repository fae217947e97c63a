#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace spectradef {

using Rational = mpq_class;

/// "p/q" with q > 0 and gcd(p, q) = 1. Integers are written "p/1".
std::string rational_to_string(const Rational& value);
/// Accepts "p/q" or "p" (optionally signed). Throws UnsupportedScalar.
Rational parse_rational(std::string_view text);

/// An element of the Gaussian rationals Q(i), kept in canonical form so
/// that equal values are equal member-by-member.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re, Rational im = 0);

  static Scalar i() { return Scalar(0, 1); }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |x|^2 = x * conj(x), always real and non-negative.
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const { return Scalar(-re_, -im_); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Human-readable form: "3", "-1/2", "2i", "1/2-3i".
std::string to_string(const Scalar& value);
std::ostream& operator<<(std::ostream& os, const Scalar& value);

}  // namespace spectradef
