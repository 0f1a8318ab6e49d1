#pragma once

// Exact arithmetic in Q(i, sqrt2, sqrt3, sqrt5, sqrt7).
//
// A value is stored as a sparse sum  sum_S q_S * sqrt(prod S)  where S runs
// over square-free subsets of {2,3,5,7} (encoded as a 4-bit mask) and q_S is
// a Gaussian rational with arbitrary-precision numerator and denominator.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace a3 {

using Rational = mpq_class;
using Integer = mpz_class;

// Reduced num/den; mpq_class(num, den) alone leaves the fraction unreduced.
inline Rational fraction(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw std::domain_error("fraction: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im)
      : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    Rational n = norm();
    if (sgn(n) == 0) throw std::domain_error("GaussianRational: division by zero");
    return {re_ / n, -im_ / n};
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussianRational& operator*=(const Rational& q) {
    re_ *= q;
    im_ *= q;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational x, const GaussianRational& y) { return x += y; }
  friend GaussianRational operator-(GaussianRational x, const GaussianRational& y) { return x -= y; }
  friend GaussianRational operator*(GaussianRational x, const GaussianRational& y) { return x *= y; }
  friend GaussianRational operator/(const GaussianRational& x, const GaussianRational& y) {
    return x * y.inverse();
  }
  friend GaussianRational operator-(const GaussianRational& x) { return {-x.re_, -x.im_}; }
  friend bool operator==(const GaussianRational& x, const GaussianRational& y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }
  friend bool operator!=(const GaussianRational& x, const GaussianRational& y) { return !(x == y); }

  std::string to_string() const {
    std::ostringstream os;
    if (sgn(im_) == 0) {
      os << re_;
    } else if (sgn(re_) == 0) {
      os << im_ << "*i";
    } else {
      os << "(" << re_ << (sgn(im_) > 0 ? "+" : "") << im_ << "*i)";
    }
    return os.str();
  }

 private:
  Rational re_;
  Rational im_;
};

inline bool is_zero(const GaussianRational& x) { return x.is_zero(); }

namespace detail {

inline constexpr std::array<int, 4> kRadicalPrimes{2, 3, 5, 7};

inline long mask_product(unsigned mask) {
  long p = 1;
  for (int k = 0; k < 4; ++k)
    if (mask & (1u << k)) p *= kRadicalPrimes[k];
  return p;
}

// Splits |n| = s^2 * (square-free part over {2,3,5,7}); returns (s, mask).
// Throws if n has a prime factor outside the radical basis to an odd power.
inline std::pair<Integer, unsigned> split_square(Integer n) {
  if (sgn(n) <= 0) throw std::domain_error("split_square: non-positive argument");
  Integer square_root = 1;
  unsigned mask = 0;
  for (int k = 0; k < 4; ++k) {
    int p = kRadicalPrimes[k];
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    for (int j = 0; j < e / 2; ++j) square_root *= p;
    if (e % 2) mask |= 1u << k;
  }
  // What remains must be a perfect square.
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0)
    throw std::domain_error("square root outside Q(sqrt2,sqrt3,sqrt5,sqrt7)");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  square_root *= r;
  return {square_root, mask};
}

}  // namespace detail

class AlgebraicScalar {
 public:
  using Term = std::pair<std::uint8_t, GaussianRational>;

  AlgebraicScalar() = default;
  AlgebraicScalar(long v) { push(0, GaussianRational(v)); }  // NOLINT
  AlgebraicScalar(int v) : AlgebraicScalar(static_cast<long>(v)) {}  // NOLINT
  AlgebraicScalar(const Rational& q) { push(0, GaussianRational(q)); }  // NOLINT
  AlgebraicScalar(const GaussianRational& g) { push(0, g); }  // NOLINT

  static AlgebraicScalar i() { return AlgebraicScalar(GaussianRational(0, 1)); }

  static AlgebraicScalar rational(long num, long den) { return AlgebraicScalar(fraction(num, den)); }

  // coeff * sqrt(prod of primes in mask)
  static AlgebraicScalar radical(unsigned mask, GaussianRational coeff) {
    AlgebraicScalar r;
    r.push(static_cast<std::uint8_t>(mask & 15u), std::move(coeff));
    return r;
  }

  // Positive square root of a non-negative rational whose square-free part
  // only involves 2, 3, 5, 7.
  static AlgebraicScalar sqrt(const Rational& q) {
    if (sgn(q) < 0) throw std::domain_error("AlgebraicScalar::sqrt: negative argument");
    if (sgn(q) == 0) return {};
    // sqrt(a/b) = sqrt(a*b)/b
    Integer ab = q.get_num() * q.get_den();
    auto [s, mask] = detail::split_square(ab);
    return radical(mask, GaussianRational(fraction(s, q.get_den())));
  }
  static AlgebraicScalar sqrt(long n) { return sqrt(Rational(n)); }

  bool is_zero() const { return terms_.empty(); }

  bool is_real() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return sgn(t.second.im()) == 0; });
  }

  bool is_rational() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].first == 0 && sgn(terms_[0].second.im()) == 0);
  }

  // Precondition: is_rational().
  Rational to_rational() const {
    if (!is_rational()) throw std::domain_error("AlgebraicScalar: value is not rational");
    return terms_.empty() ? Rational(0) : terms_[0].second.re();
  }

  const std::vector<Term>& terms() const { return terms_; }

  AlgebraicScalar conj() const {
    AlgebraicScalar r;
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, c.conj());
    return r;
  }

  AlgebraicScalar real_part() const {
    AlgebraicScalar r;
    for (const auto& [m, c] : terms_)
      if (sgn(c.re()) != 0) r.terms_.emplace_back(m, GaussianRational(c.re()));
    return r;
  }

  AlgebraicScalar imag_part() const {
    AlgebraicScalar r;
    for (const auto& [m, c] : terms_)
      if (sgn(c.im()) != 0) r.terms_.emplace_back(m, GaussianRational(c.im()));
    return r;
  }

  AlgebraicScalar inverse() const;

  std::complex<double> to_complex() const {
    std::complex<double> z = 0.0;
    for (const auto& [m, c] : terms_) {
      double rad = std::sqrt(static_cast<double>(detail::mask_product(m)));
      z += std::complex<double>(c.re().get_d(), c.im().get_d()) * rad;
    }
    return z;
  }

  AlgebraicScalar& operator+=(const AlgebraicScalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        GaussianRational s = a->second + b->second;
        if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  AlgebraicScalar& operator-=(const AlgebraicScalar& o) { return *this += -o; }

  AlgebraicScalar& operator*=(const AlgebraicScalar& o) { return *this = *this * o; }

  friend AlgebraicScalar operator*(const AlgebraicScalar& x, const AlgebraicScalar& y) {
    if (x.terms_.empty() || y.terms_.empty()) return {};
    if (x.terms_.size() == 1 && y.terms_.size() == 1) {
      const auto& [mx, cx] = x.terms_[0];
      const auto& [my, cy] = y.terms_[0];
      GaussianRational c = cx * cy;
      long common = detail::mask_product(mx & my);
      if (common != 1) c *= Rational(common);
      return radical(mx ^ my, std::move(c));
    }
    std::array<GaussianRational, 16> acc{};
    std::array<bool, 16> used{};
    for (const auto& [mx, cx] : x.terms_) {
      for (const auto& [my, cy] : y.terms_) {
        GaussianRational c = cx * cy;
        long common = detail::mask_product(mx & my);
        if (common != 1) c *= Rational(common);
        unsigned m = mx ^ my;
        acc[m] += c;
        used[m] = true;
      }
    }
    AlgebraicScalar r;
    for (unsigned m = 0; m < 16; ++m)
      if (used[m] && !acc[m].is_zero()) r.terms_.emplace_back(static_cast<std::uint8_t>(m), std::move(acc[m]));
    return r;
  }

  friend AlgebraicScalar operator+(AlgebraicScalar x, const AlgebraicScalar& y) { return x += y; }
  friend AlgebraicScalar operator-(AlgebraicScalar x, const AlgebraicScalar& y) { return x -= y; }
  friend AlgebraicScalar operator-(const AlgebraicScalar& x) {
    AlgebraicScalar r;
    r.terms_.reserve(x.terms_.size());
    for (const auto& [m, c] : x.terms_) r.terms_.emplace_back(m, -c);
    return r;
  }
  friend AlgebraicScalar operator/(const AlgebraicScalar& x, const AlgebraicScalar& y) {
    if (y.terms_.size() == 1) {
      // Single radical: 1/(c sqrt m) = sqrt(m) / (c m).
      const auto& [m, c] = y.terms_[0];
      GaussianRational inv = c.inverse();
      inv *= fraction(1, detail::mask_product(m));
      return x * radical(m, inv);
    }
    return x * y.inverse();
  }
  AlgebraicScalar& operator/=(const AlgebraicScalar& o) { return *this = *this / o; }

  friend bool operator==(const AlgebraicScalar& x, const AlgebraicScalar& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const AlgebraicScalar& x, const AlgebraicScalar& y) { return !(x == y); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      const auto& [m, c] = terms_[k];
      if (k) s += " + ";
      s += c.to_string();
      if (m) s += "*sqrt(" + std::to_string(detail::mask_product(m)) + ")";
    }
    return s;
  }

 private:
  void push(std::uint8_t mask, GaussianRational c) {
    if (!c.is_zero()) terms_.emplace_back(mask, std::move(c));
  }

  std::vector<Term> terms_;  // sorted by mask, no zero coefficients
};

}  // namespace a3

#include "a3/linalg.hpp"

namespace a3 {

inline bool is_zero(const AlgebraicScalar& x) { return x.is_zero(); }
inline AlgebraicScalar conj(const AlgebraicScalar& x) { return x.conj(); }
inline std::complex<double> float_eval(const AlgebraicScalar& x) { return x.to_complex(); }

inline std::size_t pivot_weight(const AlgebraicScalar& x) {
  std::size_t w = 0;
  for (const auto& [m, c] : x.terms())
    w += 4 + mpz_size(c.re().get_num_mpz_t()) + mpz_size(c.re().get_den_mpz_t()) +
         mpz_size(c.im().get_num_mpz_t()) + mpz_size(c.im().get_den_mpz_t());
  return w;
}

// Solves x * y = 1 in the 16-dimensional regular representation over Q(i).
inline AlgebraicScalar AlgebraicScalar::inverse() const {
  if (terms_.empty()) throw std::domain_error("AlgebraicScalar: division by zero");
  Matrix<GaussianRational> regular(16, 16);
  for (unsigned t = 0; t < 16; ++t) {
    for (const auto& [s, c] : terms_) {
      GaussianRational v = c;
      long common = detail::mask_product(s & t);
      if (common != 1) v *= Rational(common);
      regular(s ^ t, t) += v;
    }
  }
  std::vector<GaussianRational> rhs(16);
  rhs[0] = GaussianRational(1);
  auto y = solve(regular, rhs);
  if (!y) throw std::domain_error("AlgebraicScalar: singular regular representation");
  AlgebraicScalar r;
  for (unsigned t = 0; t < 16; ++t) r.push(static_cast<std::uint8_t>(t), std::move((*y)[t]));
  return r;
}

inline std::ostream& operator<<(std::ostream& os, const AlgebraicScalar& x) { return os << x.to_string(); }

}  // namespace a3
