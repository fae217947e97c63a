#include "spectradef/scalar.hpp"

#include <cctype>
#include <ostream>

#include "spectradef/error.hpp"

namespace spectradef {

std::string rational_to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t k = start; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::UnsupportedScalar, "not a rational literal: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class zn(n, 10);
  mpz_class zd(std::string(den), 10);
  if (sgn(zd) == 0) {
    throw Error(ErrorCode::UnsupportedScalar, "zero denominator in '" + std::string(text) + "'");
  }
  Rational out(zn, zd);
  out.canonicalize();
  return out;
}

Scalar::Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.is_real()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("Scalar division by zero");
  if (o.is_real()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm2();
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const Scalar& value) {
  const bool has_re = sgn(value.re()) != 0;
  const bool has_im = sgn(value.im()) != 0;
  if (!has_re && !has_im) return "0";
  std::string out;
  if (has_re) out = value.re().get_str();
  if (has_im) {
    Rational mag = abs(value.im());
    std::string im = mag == 1                ? std::string()
                     : mag.get_den() == 1 ? mag.get_str()
                                          : "(" + mag.get_str() + ")";
    if (sgn(value.im()) < 0) {
      out += "-";
    } else if (has_re) {
      out += "+";
    }
    out += im + "i";
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) { return os << to_string(value); }

}  // namespace spectradef
