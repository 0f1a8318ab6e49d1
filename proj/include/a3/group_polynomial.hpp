#pragma once

// Polynomials in the entry functions a, conj(a), b, conj(b) of
// g = [[a, -conj(b)], [b, conj(a)]] in SU(2), with left-invariant
// derivations and exact Haar integration.

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "a3/scalar.hpp"

namespace a3 {

// Exponents of a^p conj(a)^q b^r conj(b)^s.
struct Monomial {
  int p = 0, q = 0, r = 0, s = 0;

  std::uint32_t key() const {
    return (static_cast<std::uint32_t>(p) << 24) | (static_cast<std::uint32_t>(q) << 16) |
           (static_cast<std::uint32_t>(r) << 8) | static_cast<std::uint32_t>(s);
  }
  static Monomial from_key(std::uint32_t k) {
    return {static_cast<int>(k >> 24), static_cast<int>((k >> 16) & 255u), static_cast<int>((k >> 8) & 255u),
            static_cast<int>(k & 255u)};
  }
  int degree() const { return p + q + r + s; }
  Monomial conj() const { return {q, p, s, r}; }
  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    return {x.p + y.p, x.q + y.q, x.r + y.r, x.s + y.s};
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

class GroupPolynomial {
 public:
  using Terms = std::map<std::uint32_t, AlgebraicScalar>;

  GroupPolynomial() = default;
  GroupPolynomial(const AlgebraicScalar& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(0u, c);
  }
  GroupPolynomial(long c) : GroupPolynomial(AlgebraicScalar(c)) {}  // NOLINT

  static GroupPolynomial monomial(Monomial m, const AlgebraicScalar& c = 1) {
    GroupPolynomial f;
    f.add_term(m, c);
    return f;
  }
  static GroupPolynomial a() { return monomial({1, 0, 0, 0}); }
  static GroupPolynomial abar() { return monomial({0, 1, 0, 0}); }
  static GroupPolynomial b() { return monomial({0, 0, 1, 0}); }
  static GroupPolynomial bbar() { return monomial({0, 0, 0, 1}); }

  void add_term(Monomial m, const AlgebraicScalar& c) {
    if (m.p < 0 || m.q < 0 || m.r < 0 || m.s < 0 || m.p > 255 || m.q > 255 || m.r > 255 || m.s > 255)
      throw std::out_of_range("GroupPolynomial: exponent out of range");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m.key(), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  AlgebraicScalar coefficient(Monomial m) const {
    auto it = terms_.find(m.key());
    return it == terms_.end() ? AlgebraicScalar{} : it->second;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, Monomial::from_key(k).degree());
    return d;
  }

  // Part of total degree exactly d.
  GroupPolynomial homogeneous_part(int d) const {
    GroupPolynomial f;
    for (const auto& [k, c] : terms_)
      if (Monomial::from_key(k).degree() == d) f.terms_.emplace(k, c);
    return f;
  }

  // Pointwise complex conjugate as a function on SU(2).
  GroupPolynomial conj() const {
    GroupPolynomial f;
    for (const auto& [k, c] : terms_) f.terms_.emplace(Monomial::from_key(k).conj().key(), c.conj());
    return f;
  }

  GroupPolynomial& operator+=(const GroupPolynomial& o) {
    for (const auto& [k, c] : o.terms_) add_term(Monomial::from_key(k), c);
    return *this;
  }
  GroupPolynomial& operator-=(const GroupPolynomial& o) {
    for (const auto& [k, c] : o.terms_) add_term(Monomial::from_key(k), -c);
    return *this;
  }
  friend GroupPolynomial operator+(GroupPolynomial x, const GroupPolynomial& y) { return x += y; }
  friend GroupPolynomial operator-(GroupPolynomial x, const GroupPolynomial& y) { return x -= y; }
  friend GroupPolynomial operator-(const GroupPolynomial& x) {
    GroupPolynomial f;
    for (const auto& [k, c] : x.terms_) f.terms_.emplace(k, -c);
    return f;
  }
  friend GroupPolynomial operator*(const AlgebraicScalar& s, const GroupPolynomial& x) {
    GroupPolynomial f;
    if (s.is_zero()) return f;
    for (const auto& [k, c] : x.terms_) f.terms_.emplace(k, s * c);
    return f;
  }
  friend GroupPolynomial operator*(const GroupPolynomial& x, const GroupPolynomial& y) {
    GroupPolynomial f;
    for (const auto& [kx, cx] : x.terms_) {
      Monomial mx = Monomial::from_key(kx);
      for (const auto& [ky, cy] : y.terms_) f.add_term(mx * Monomial::from_key(ky), cx * cy);
    }
    return f;
  }
  GroupPolynomial& operator*=(const GroupPolynomial& o) { return *this = *this * o; }

  // Literal (coefficient-wise) equality. Use equal_on_group for equality of functions.
  friend bool operator==(const GroupPolynomial& x, const GroupPolynomial& y) { return x.terms_ == y.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      Monomial m = Monomial::from_key(k);
      if (!first) out += " + ";
      first = false;
      out += "(" + c.to_string() + ")";
      auto put = [&out](const char* name, int e) {
        if (e == 1) out += std::string("*") + name;
        else if (e > 1) out += std::string("*") + name + "^" + std::to_string(e);
      };
      put("a", m.p);
      put("abar", m.q);
      put("b", m.r);
      put("bbar", m.s);
    }
    return out;
  }

 private:
  Terms terms_;
};

inline GroupPolynomial conj(const GroupPolynomial& f) { return f.conj(); }

inline GroupPolynomial power(const GroupPolynomial& f, int e) {
  GroupPolynomial r(1);
  for (int k = 0; k < e; ++k) r *= f;
  return r;
}

namespace detail {

inline Integer factorial(int n) {
  static std::vector<Integer> table{Integer(1)};
  static std::mutex guard;
  std::lock_guard lock(guard);
  while (static_cast<int>(table.size()) <= n) table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  return table[static_cast<std::size_t>(n)];
}

inline Integer binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

}  // namespace detail

// Normal form modulo |a|^2 + |b|^2 = 1: every b^r conj(b)^s with r, s > 0 is
// rewritten through b conj(b) = 1 - a conj(a). The surviving monomials
// (min(r, s) = 0) are linearly independent as functions on SU(2).
inline GroupPolynomial canonical(const GroupPolynomial& f) {
  GroupPolynomial out;
  for (const auto& [k, c] : f.terms()) {
    Monomial m = Monomial::from_key(k);
    int t = std::min(m.r, m.s);
    if (t == 0) {
      out.add_term(m, c);
      continue;
    }
    // (b bbar)^t = sum_u C(t,u) (-1)^u (a abar)^u
    for (int u = 0; u <= t; ++u) {
      AlgebraicScalar coeff = c * AlgebraicScalar(Rational(detail::binomial(t, u)));
      if (u % 2) coeff = -coeff;
      out.add_term({m.p + u, m.q + u, m.r - t, m.s - t}, coeff);
    }
  }
  return out;
}

inline bool equal_on_group(const GroupPolynomial& f, const GroupPolynomial& g) { return canonical(f - g).is_zero(); }
inline bool vanishes_on_group(const GroupPolynomial& f) { return canonical(f).is_zero(); }

// Integral over SU(2) of a^p conj(a)^q b^r conj(b)^s for the normalized Haar
// measure: delta_{pq} delta_{rs} p! r! / (p + r + 1)!.
inline Rational haar_monomial(const Monomial& m) {
  if (m.p != m.q || m.r != m.s) return 0;
  Rational v(detail::factorial(m.p) * detail::factorial(m.r), detail::factorial(m.p + m.r + 1));
  v.canonicalize();
  return v;
}

inline AlgebraicScalar haar_integrate(const GroupPolynomial& f) {
  AlgebraicScalar total;
  for (const auto& [k, c] : f.terms()) {
    Rational w = haar_monomial(Monomial::from_key(k));
    if (sgn(w) != 0) total += c * AlgebraicScalar(w);
  }
  return total;
}

// Integral of f * conj(g), without forming the product. A product monomial
// survives only when the (p - q, r - s) charges of the two factors agree.
inline AlgebraicScalar haar_pairing(const GroupPolynomial& f, const GroupPolynomial& g) {
  std::map<std::pair<int, int>, std::vector<std::pair<Monomial, const AlgebraicScalar*>>> by_charge;
  for (const auto& [k, c] : g.terms()) {
    Monomial m = Monomial::from_key(k);
    by_charge[{m.p - m.q, m.r - m.s}].emplace_back(m, &c);
  }
  AlgebraicScalar total;
  for (const auto& [k, c] : f.terms()) {
    Monomial m = Monomial::from_key(k);
    auto it = by_charge.find({m.p - m.q, m.r - m.s});
    if (it == by_charge.end()) continue;
    for (const auto& [mg, cg] : it->second) {
      Rational w = haar_monomial(m * mg.conj());
      if (sgn(w) != 0) total += c * cg->conj() * AlgebraicScalar(w);
    }
  }
  return total;
}

// Complexified left-invariant vector field x1 E1 + x2 E2 + x3 E3 with
// E1 = [[0,1],[-1,0]], E2 = [[0,i],[i,0]], E3 = [[i,0],[0,-i]]. It acts on the
// entry functions as the entries of g * E.
class LieDerivation {
 public:
  LieDerivation() = default;
  LieDerivation(AlgebraicScalar x1, AlgebraicScalar x2, AlgebraicScalar x3)
      : x_{std::move(x1), std::move(x2), std::move(x3)} {}

  static LieDerivation E1() { return {1, 0, 0}; }
  static LieDerivation E2() { return {0, 1, 0}; }
  static LieDerivation E3() { return {0, 0, 1}; }

  const AlgebraicScalar& component(int i) const { return x_.at(static_cast<std::size_t>(i)); }

  friend LieDerivation operator+(const LieDerivation& u, const LieDerivation& v) {
    return {u.x_[0] + v.x_[0], u.x_[1] + v.x_[1], u.x_[2] + v.x_[2]};
  }
  friend LieDerivation operator-(const LieDerivation& u, const LieDerivation& v) {
    return {u.x_[0] - v.x_[0], u.x_[1] - v.x_[1], u.x_[2] - v.x_[2]};
  }
  friend LieDerivation operator*(const AlgebraicScalar& s, const LieDerivation& u) {
    return {s * u.x_[0], s * u.x_[1], s * u.x_[2]};
  }

  // The 2x2 matrix x1 E1 + x2 E2 + x3 E3 as entries (m11, m12, m21, m22).
  std::array<AlgebraicScalar, 4> matrix() const {
    const AlgebraicScalar I = AlgebraicScalar::i();
    return {I * x_[2], x_[0] + I * x_[1], -x_[0] + I * x_[1], -(I * x_[2])};
  }

  GroupPolynomial operator()(const GroupPolynomial& f) const {
    // g E with g = [[a, -bbar], [b, abar]]:
    //   X(a)    = a m11 - bbar m21        X(-bbar) = a m12 - bbar m22
    //   X(b)    = b m11 + abar m21        X(abar)  = b m12 + abar m22
    auto [m11, m12, m21, m22] = matrix();
    struct Image {
      AlgebraicScalar c1;
      Monomial e1;
      AlgebraicScalar c2;
      Monomial e2;
    };
    const Monomial A{1, 0, 0, 0}, Abar{0, 1, 0, 0}, B{0, 0, 1, 0}, Bbar{0, 0, 0, 1};
    const std::array<Image, 4> image{{
        {m11, A, -m21, Bbar},     // X(a)
        {m12, B, m22, Abar},      // X(abar)
        {m11, B, m21, Abar},      // X(b)
        {-m12, A, m22, Bbar},     // X(bbar)
    }};
    GroupPolynomial out;
    for (const auto& [k, c] : f.terms()) {
      Monomial m = Monomial::from_key(k);
      const std::array<int, 4> e{m.p, m.q, m.r, m.s};
      for (int v = 0; v < 4; ++v) {
        if (e[static_cast<std::size_t>(v)] == 0) continue;
        Monomial lowered = m;
        if (v == 0) --lowered.p;
        if (v == 1) --lowered.q;
        if (v == 2) --lowered.r;
        if (v == 3) --lowered.s;
        const Image& im = image[static_cast<std::size_t>(v)];
        AlgebraicScalar mult = c * AlgebraicScalar(static_cast<long>(e[static_cast<std::size_t>(v)]));
        if (!im.c1.is_zero()) out.add_term(lowered * im.e1, mult * im.c1);
        if (!im.c2.is_zero()) out.add_term(lowered * im.e2, mult * im.c2);
      }
    }
    return out;
  }

 private:
  std::array<AlgebraicScalar, 3> x_{};
};

inline GroupPolynomial left_invariant_derivative(const LieDerivation& X, const GroupPolynomial& f) { return X(f); }

// An element of SU(2) with exact entries.
class SU2Element {
 public:
  SU2Element(AlgebraicScalar a, AlgebraicScalar b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_ * a_.conj() + b_ * b_.conj() != AlgebraicScalar(1))
      throw std::domain_error("SU2Element: |a|^2 + |b|^2 must equal 1");
  }
  static SU2Element identity() { return {1, 0}; }

  // Inverse stereographic image of t in Q^3: a point of S^3 with
  // Gaussian-rational coordinates.
  static SU2Element from_rational_point(const Rational& t1, const Rational& t2, const Rational& t3) {
    Rational n2 = t1 * t1 + t2 * t2 + t3 * t3;
    Rational d = 1 + n2;
    return {AlgebraicScalar(GaussianRational(Rational((1 - n2) / d), Rational(2 * t1 / d))),
            AlgebraicScalar(GaussianRational(Rational(2 * t2 / d), Rational(2 * t3 / d)))};
  }

  const AlgebraicScalar& a() const { return a_; }
  const AlgebraicScalar& b() const { return b_; }

  friend SU2Element operator*(const SU2Element& g, const SU2Element& h) {
    // [[a,-bb],[b,ab]] [[c,-dd],[d,cd]] has first column (ac - bbar d, bc + abar d).
    return {g.a_ * h.a_ - g.b_.conj() * h.b_, g.b_ * h.a_ + g.a_.conj() * h.b_};
  }

 private:
  AlgebraicScalar a_, b_;
};

inline AlgebraicScalar evaluate(const GroupPolynomial& f, const SU2Element& g) {
  std::array<std::vector<AlgebraicScalar>, 4> powers;
  const std::array<AlgebraicScalar, 4> base{g.a(), g.a().conj(), g.b(), g.b().conj()};
  auto pw = [&](int v, int e) -> const AlgebraicScalar& {
    auto& tab = powers[static_cast<std::size_t>(v)];
    if (tab.empty()) tab.emplace_back(1);
    while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * base[static_cast<std::size_t>(v)]);
    return tab[static_cast<std::size_t>(e)];
  };
  AlgebraicScalar total;
  for (const auto& [k, c] : f.terms()) {
    Monomial m = Monomial::from_key(k);
    total += c * pw(0, m.p) * pw(1, m.q) * pw(2, m.r) * pw(3, m.s);
  }
  return total;
}

}  // namespace a3
