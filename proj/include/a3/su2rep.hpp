#pragma once

// Irreducible SU(2)-modules V_n (homogeneous polynomials of degree n in
// z1, z2 with unitary basis v_k = z1^(n-k) z2^k / sqrt(k! (n-k)!)), their
// matrix coefficients, the structure map, Clebsch-Gordan embeddings and
// characters on the maximal torus.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "a3/group_polynomial.hpp"
#include "a3/linalg.hpp"

namespace a3 {

class RepVector {
 public:
  explicit RepVector(int n) : n_(n), c_(static_cast<std::size_t>(check_level(n) + 1)) {}
  RepVector(int n, std::vector<AlgebraicScalar> c) : n_(n), c_(std::move(c)) {
    if (static_cast<int>(c_.size()) != check_level(n) + 1) throw std::invalid_argument("RepVector: need n+1 coefficients");
  }
  static RepVector basis(int n, int k, const AlgebraicScalar& scale = 1) {
    RepVector u(n);
    u.at(k) = scale;
    return u;
  }

  int level() const { return n_; }
  const std::vector<AlgebraicScalar>& coefficients() const { return c_; }
  AlgebraicScalar& at(int k) {
    check_index(k);
    return c_[static_cast<std::size_t>(k)];
  }
  const AlgebraicScalar& at(int k) const {
    check_index(k);
    return c_[static_cast<std::size_t>(k)];
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend RepVector operator+(RepVector u, const RepVector& v) {
    u.check_same(v);
    for (std::size_t k = 0; k < u.c_.size(); ++k) u.c_[k] += v.c_[k];
    return u;
  }
  friend RepVector operator-(RepVector u, const RepVector& v) {
    u.check_same(v);
    for (std::size_t k = 0; k < u.c_.size(); ++k) u.c_[k] -= v.c_[k];
    return u;
  }
  friend RepVector operator*(const AlgebraicScalar& s, RepVector u) {
    for (auto& x : u.c_) x = s * x;
    return u;
  }
  friend bool operator==(const RepVector& u, const RepVector& v) { return u.n_ == v.n_ && u.c_ == v.c_; }

  void check_same(const RepVector& v) const {
    if (v.n_ != n_) throw std::invalid_argument("RepVector: level mismatch");
  }

 private:
  static int check_level(int n) {
    if (n < 0) throw std::invalid_argument("RepVector: negative level");
    return n;
  }
  void check_index(int k) const {
    if (k < 0 || k > n_) throw std::out_of_range("RepVector: basis index out of range");
  }

  int n_;
  std::vector<AlgebraicScalar> c_;
};

// Hermitian, linear in the first slot.
inline AlgebraicScalar inner(const RepVector& u, const RepVector& v) {
  u.check_same(v);
  AlgebraicScalar s;
  for (int k = 0; k <= u.level(); ++k)
    if (!u.at(k).is_zero() && !v.at(k).is_zero()) s += u.at(k) * v.at(k).conj();
  return s;
}

namespace detail {

inline void check_basis_index(int n, int k, const char* what) {
  if (n < 0 || k < 0 || k > n) throw std::out_of_range(std::string(what) + ": basis index out of range");
}

// (a z1 + b z2)^(n-k) (-bbar z1 + abar z2)^k, coefficient of z1^(n-l) z2^l.
inline GroupPolynomial compute_raw_coefficient(int n, int k, int l) {
  GroupPolynomial f;
  for (int i = 0; i <= n - k; ++i) {
    int j = l - i;
    if (j < 0 || j > k) continue;
    Integer c = detail::binomial(n - k, i) * detail::binomial(k, j);
    if ((k - j) % 2) c = -c;
    f.add_term({n - k - i, j, i, k - j}, AlgebraicScalar(Rational(c)));
  }
  return f;
}

}  // namespace detail

// Integer-coefficient version of <rho_n(g) v_k, v_l>: the normalized matrix
// coefficient times sqrt(k!(n-k)! / (l!(n-l)!)). Homogeneous of degree n;
// each monomial a^p abar^q b^r bbar^s belongs to exactly one (k, l) with
// k = q + s and l = q + r.
inline const GroupPolynomial& raw_matrix_coefficient(int n, int k, int l) {
  detail::check_basis_index(n, k, "raw_matrix_coefficient");
  detail::check_basis_index(n, l, "raw_matrix_coefficient");
  static std::map<std::tuple<int, int, int>, GroupPolynomial> cache;
  static std::mutex guard;
  std::lock_guard lock(guard);
  auto key = std::make_tuple(n, k, l);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, detail::compute_raw_coefficient(n, k, l)).first;
  return it->second;
}

// sqrt(l!(n-l)! / (k!(n-k)!)), the factor turning raw coefficients into
// unitary ones. Exact for n <= 10 (larger factorials need primes beyond 7).
inline AlgebraicScalar matrix_coefficient_scale(int n, int k, int l) {
  Rational q(detail::factorial(l) * detail::factorial(n - l), detail::factorial(k) * detail::factorial(n - k));
  q.canonicalize();
  return AlgebraicScalar::sqrt(q);
}

// <rho_n(g) v_k, v_l>
inline GroupPolynomial matrix_coefficient(int n, int k, int l) {
  return matrix_coefficient_scale(n, k, l) * raw_matrix_coefficient(n, k, l);
}

// g -> <rho_n(g) v_k, u>
inline GroupPolynomial matrix_coefficient(int n, int k, const RepVector& u) {
  detail::check_basis_index(n, k, "matrix_coefficient");
  if (u.level() != n) throw std::invalid_argument("matrix_coefficient: level mismatch");
  GroupPolynomial f;
  for (int l = 0; l <= n; ++l)
    if (!u.at(l).is_zero()) f += u.at(l).conj() * matrix_coefficient(n, k, l);
  return f;
}

// g -> <rho_n(g) u, u'>
inline GroupPolynomial matrix_coefficient(const RepVector& u, const RepVector& u_prime) {
  u.check_same(u_prime);
  GroupPolynomial f;
  for (int k = 0; k <= u.level(); ++k)
    if (!u.at(k).is_zero()) f += u.at(k) * matrix_coefficient(u.level(), k, u_prime);
  return f;
}

// Matrix of rho_n(g) in the unitary basis: column k holds rho_n(g) v_k.
inline Matrix<AlgebraicScalar> rep_matrix(int n, const SU2Element& g) {
  Matrix<AlgebraicScalar> m(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) m(static_cast<std::size_t>(l), static_cast<std::size_t>(k)) = evaluate(matrix_coefficient(n, k, l), g);
  return m;
}

inline RepVector act(const SU2Element& g, const RepVector& u) {
  auto m = rep_matrix(u.level(), g);
  return RepVector(u.level(), m.apply(u.coefficients()));
}

// (j f)(z1, z2) = conj(f(-conj z2, conj z1)) evaluated by substitution:
// j v_l = (-1)^(n-l) v_(n-l), so (j u)_m = (-1)^m conj(u_(n-m)).
inline RepVector structure_map(const RepVector& u) {
  const int n = u.level();
  RepVector r(n);
  for (int m = 0; m <= n; ++m) {
    AlgebraicScalar c = u.at(n - m).conj();
    r.at(m) = (m % 2) ? -c : c;
  }
  return r;
}

// The coefficient rule u*_l = (-1)^(n-l) conj(C_(n-l)). Agrees with
// structure_map exactly when n is even.
inline RepVector structure_map_coefficient_rule(const RepVector& u) {
  const int n = u.level();
  RepVector r(n);
  for (int l = 0; l <= n; ++l) {
    AlgebraicScalar c = u.at(n - l).conj();
    r.at(l) = ((n - l) % 2) ? -c : c;
  }
  return r;
}

enum class StructureMapConvention { substitution, coefficient_rule };

inline RepVector apply_structure_map(const RepVector& u, StructureMapConvention c) {
  return c == StructureMapConvention::substitution ? structure_map(u) : structure_map_coefficient_rule(u);
}

// conj <rho_n(.) v_k, u> == (-1)^k <rho_n(.) v_(n-k), u*> as functions on SU(2).
inline bool conjugate_coefficient_identity_check(int n, int k, const RepVector& u,
                                                 StructureMapConvention c = StructureMapConvention::substitution) {
  GroupPolynomial lhs = conj(matrix_coefficient(n, k, u));
  GroupPolynomial rhs = matrix_coefficient(n, n - k, apply_structure_map(u, c));
  if (k % 2) rhs = -rhs;
  return equal_on_group(lhs, rhs);
}

// Element of V_m (x) V_n, stored as the grid of coefficients on v_d (x) v_e.
class TensorVector {
 public:
  TensorVector(int m, int n) : m_(m), n_(n), c_(static_cast<std::size_t>((m + 1) * (n + 1))) {
    if (m < 0 || n < 0) throw std::invalid_argument("TensorVector: negative level");
  }
  static TensorVector product(const RepVector& x, const RepVector& y) {
    TensorVector t(x.level(), y.level());
    for (int d = 0; d <= x.level(); ++d)
      for (int e = 0; e <= y.level(); ++e) t.at(d, e) = x.at(d) * y.at(e);
    return t;
  }

  int first_level() const { return m_; }
  int second_level() const { return n_; }
  AlgebraicScalar& at(int d, int e) { return c_.at(static_cast<std::size_t>(d * (n_ + 1) + e)); }
  const AlgebraicScalar& at(int d, int e) const { return c_.at(static_cast<std::size_t>(d * (n_ + 1) + e)); }

  friend TensorVector operator*(const AlgebraicScalar& s, TensorVector t) {
    for (auto& x : t.c_) x = s * x;
    return t;
  }
  friend TensorVector operator+(TensorVector t, const TensorVector& u) {
    t.check_same(u);
    for (std::size_t k = 0; k < t.c_.size(); ++k) t.c_[k] += u.c_[k];
    return t;
  }
  friend TensorVector operator-(TensorVector t, const TensorVector& u) {
    t.check_same(u);
    for (std::size_t k = 0; k < t.c_.size(); ++k) t.c_[k] -= u.c_[k];
    return t;
  }
  friend bool operator==(const TensorVector& t, const TensorVector& u) {
    return t.m_ == u.m_ && t.n_ == u.n_ && t.c_ == u.c_;
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  // T(d, e) = -T(e, d); only meaningful for m == n.
  bool is_antisymmetric() const {
    if (m_ != n_) return false;
    for (int d = 0; d <= m_; ++d)
      for (int e = 0; e <= n_; ++e)
        if (at(d, e) != -at(e, d)) return false;
    return true;
  }
  void check_same(const TensorVector& u) const {
    if (u.m_ != m_ || u.n_ != n_) throw std::invalid_argument("TensorVector: shape mismatch");
  }

 private:
  int m_, n_;
  std::vector<AlgebraicScalar> c_;
};

inline std::ostream& operator<<(std::ostream& os, const TensorVector& t) {
  bool first = true;
  for (int d = 0; d <= t.first_level(); ++d)
    for (int e = 0; e <= t.second_level(); ++e) {
      if (t.at(d, e).is_zero()) continue;
      os << (first ? "" : " + ") << "(" << t.at(d, e) << ") v" << d << "(x)v" << e;
      first = false;
    }
  if (first) os << "0";
  return os;
}

inline AlgebraicScalar inner(const TensorVector& s, const TensorVector& t) {
  s.check_same(t);
  AlgebraicScalar r;
  for (int d = 0; d <= s.first_level(); ++d)
    for (int e = 0; e <= s.second_level(); ++e)
      if (!s.at(d, e).is_zero() && !t.at(d, e).is_zero()) r += s.at(d, e) * t.at(d, e).conj();
  return r;
}

// v_d ^ v_e = v_d (x) v_e - v_e (x) v_d
inline TensorVector wedge_basis(int n, int d, int e) {
  TensorVector t(n, n);
  t.at(d, e) += 1;
  t.at(e, d) -= 1;
  return t;
}

// rho_m(g) (x) rho_n(g)
inline TensorVector act(const SU2Element& g, const TensorVector& t) {
  auto A = rep_matrix(t.first_level(), g);
  auto B = rep_matrix(t.second_level(), g);
  TensorVector r(t.first_level(), t.second_level());
  for (int d = 0; d <= t.first_level(); ++d)
    for (int e = 0; e <= t.second_level(); ++e) {
      if (t.at(d, e).is_zero()) continue;
      for (int x = 0; x <= t.first_level(); ++x) {
        const auto& ax = A(static_cast<std::size_t>(x), static_cast<std::size_t>(d));
        if (ax.is_zero()) continue;
        AlgebraicScalar f = t.at(d, e) * ax;
        for (int y = 0; y <= t.second_level(); ++y) {
          const auto& by = B(static_cast<std::size_t>(y), static_cast<std::size_t>(e));
          if (!by.is_zero()) r.at(x, y) += f * by;
        }
      }
    }
  return r;
}

namespace detail {

inline void check_cg_range(int m, int n, int h) {
  if (m < 0 || n < 0 || h < 0 || h > std::min(m, n))
    throw std::out_of_range("clebsch_gordan: need 0 <= h <= min(m, n)");
}

// Polynomial in z1, z2, w1, w2 keyed by the four exponents.
using BiPolynomial = std::map<std::array<int, 4>, AlgebraicScalar>;

inline void accumulate(BiPolynomial& p, const std::array<int, 4>& e, const AlgebraicScalar& c) {
  if (c.is_zero()) return;
  auto& slot = p[e];
  slot += c;
  if (slot.is_zero()) p.erase(e);
}

}  // namespace detail

// (z1 w2 - z2 w1)^h (w1 d/dz1 + w2 d/dz2)^(n-h) f, without the normalizing
// constant.
inline TensorVector clebsch_gordan_raw(int m, int n, int h, const RepVector& f) {
  detail::check_cg_range(m, n, h);
  const int r = m + n - 2 * h;
  if (f.level() != r) throw std::invalid_argument("clebsch_gordan: input must lie in V_(m+n-2h)");
  detail::BiPolynomial p;
  for (int c = 0; c <= r; ++c) {
    if (f.at(c).is_zero()) continue;
    Rational norm2(detail::factorial(c) * detail::factorial(r - c));
    detail::accumulate(p, {r - c, c, 0, 0}, f.at(c) / AlgebraicScalar::sqrt(norm2));
  }
  for (int step = 0; step < n - h; ++step) {
    detail::BiPolynomial q;
    for (const auto& [e, c] : p) {
      if (e[0] > 0) detail::accumulate(q, {e[0] - 1, e[1], e[2] + 1, e[3]}, c * AlgebraicScalar(static_cast<long>(e[0])));
      if (e[1] > 0) detail::accumulate(q, {e[0], e[1] - 1, e[2], e[3] + 1}, c * AlgebraicScalar(static_cast<long>(e[1])));
    }
    p = std::move(q);
  }
  for (int step = 0; step < h; ++step) {
    detail::BiPolynomial q;
    for (const auto& [e, c] : p) {
      detail::accumulate(q, {e[0] + 1, e[1], e[2], e[3] + 1}, c);
      detail::accumulate(q, {e[0], e[1] + 1, e[2] + 1, e[3]}, -c);
    }
    p = std::move(q);
  }
  TensorVector t(m, n);
  for (const auto& [e, c] : p) {
    // z1^(m-d) z2^d w1^(n-e) w2^e = sqrt(d!(m-d)! e!(n-e)!) v_d (x) v_e
    int d = e[1], ee = e[3];
    Rational scale(detail::factorial(d) * detail::factorial(m - d) * detail::factorial(ee) * detail::factorial(n - ee));
    t.at(d, ee) += c * AlgebraicScalar::sqrt(scale);
  }
  return t;
}

// c_{m,n,h}, fixed by requiring |alpha(v_0)| = |v_0| = 1.
inline Rational clebsch_gordan_constant(int m, int n, int h) {
  TensorVector t = clebsch_gordan_raw(m, n, h, RepVector::basis(m + n - 2 * h, 0));
  AlgebraicScalar n2 = inner(t, t);
  if (!n2.is_rational() || sgn(n2.to_rational()) <= 0)
    throw std::logic_error("clebsch_gordan_constant: norm is not a positive rational");
  return 1 / n2.to_rational();
}

inline TensorVector clebsch_gordan(int m, int n, int h, const RepVector& f) {
  return AlgebraicScalar::sqrt(clebsch_gordan_constant(m, n, h)) * clebsch_gordan_raw(m, n, h, f);
}

struct TripleProductIntegral {
  AlgebraicScalar value;          // by Haar integration of the expanded product
  AlgebraicScalar closed_form;    // by the Clebsch-Gordan formula
};

// int <rho_m u_m, u'_m> <rho_n u_n, u'_n> conj<rho_r u_r, u'_r> dg, computed
// two ways. Throws std::logic_error if they disagree.
inline TripleProductIntegral triple_product_integral(const RepVector& um, const RepVector& um_p, const RepVector& un,
                                                     const RepVector& un_p, const RepVector& ur,
                                                     const RepVector& ur_p) {
  const int m = um.level(), n = un.level(), r = ur.level();
  if ((m + n - r) % 2 != 0 || m + n < r || r < std::abs(m - n))
    throw std::invalid_argument("triple_product_integral: r is not m + n - 2h for an admissible h");
  const int h = (m + n - r) / 2;
  GroupPolynomial left = matrix_coefficient(um, um_p) * matrix_coefficient(un, un_p);
  AlgebraicScalar direct = haar_pairing(left, matrix_coefficient(ur, ur_p));
  AlgebraicScalar closed = AlgebraicScalar::rational(1, r + 1) *
                           inner(TensorVector::product(um, un), clebsch_gordan(m, n, h, ur)) *
                           inner(TensorVector::product(um_p, un_p), clebsch_gordan(m, n, h, ur_p)).conj();
  if (direct != closed) throw std::logic_error("triple_product_integral: evaluation paths disagree");
  return {direct, closed};
}

// Character on the maximal torus h_a = diag(a, 1/a), as a Laurent
// polynomial with integer coefficients.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;

  static LaurentPolynomial monomial(int e, long c = 1) {
    LaurentPolynomial p;
    p.add(e, Integer(c));
    return p;
  }

  void add(int e, const Integer& c) {
    if (sgn(c) == 0) return;
    auto& slot = c_[e];
    slot += c;
    if (sgn(slot) == 0) c_.erase(e);
  }
  const std::map<int, Integer>& coefficients() const { return c_; }
  Integer coefficient(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Integer(0) : it->second;
  }
  bool is_zero() const { return c_.empty(); }

  friend LaurentPolynomial operator+(LaurentPolynomial p, const LaurentPolynomial& q) {
    for (const auto& [e, c] : q.c_) p.add(e, c);
    return p;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial p, const LaurentPolynomial& q) {
    for (const auto& [e, c] : q.c_) p.add(e, -c);
    return p;
  }
  friend LaurentPolynomial operator*(long s, LaurentPolynomial p) {
    LaurentPolynomial r;
    for (const auto& [e, c] : p.c_) r.add(e, c * s);
    return r;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    LaurentPolynomial r;
    for (const auto& [e1, c1] : p.c_)
      for (const auto& [e2, c2] : q.c_) r.add(e1 + e2, c1 * c2);
    return r;
  }
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

  // p(a^k)
  LaurentPolynomial substitute_power(int k) const {
    LaurentPolynomial r;
    for (const auto& [e, c] : c_) r.add(e * k, c);
    return r;
  }

  // Value at a rational point a != 0.
  Rational evaluate(const Rational& a) const {
    Rational s = 0;
    for (const auto& [e, c] : c_) {
      Rational t = 1;
      for (int k = 0; k < std::abs(e); ++k) t *= a;
      s += Rational(c) * (e >= 0 ? t : 1 / t);
    }
    return s;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : c_) {
      if (!out.empty()) out += " + ";
      out += c.get_str() + "*a^" + std::to_string(e);
    }
    return out;
  }

 private:
  std::map<int, Integer> c_;
};

// sum_{k=0}^n a^(2k-n)
inline LaurentPolynomial character_complex(int n) {
  if (n < 0) throw std::invalid_argument("character_complex: negative level");
  LaurentPolynomial p;
  for (int k = 0; k <= n; ++k) p.add(2 * k - n, 1);
  return p;
}

// Real irreducible W_k: W_(2m+1) restricts V_(2m); W_(4m+4) is V_(2m+1) as a
// real space, whose character is twice that of V_(2m+1).
inline LaurentPolynomial character_real(int k) {
  if (k > 0 && k % 2 == 1) return character_complex(k - 1);
  if (k > 0 && k % 4 == 0) return 2 * character_complex(k / 2 - 1);
  throw std::invalid_argument("character_real: real irreducibles have dimension 4m or 2m+1");
}

inline LaurentPolynomial symmetric_square(const LaurentPolynomial& chi) {
  LaurentPolynomial twice = chi * chi + chi.substitute_power(2);
  LaurentPolynomial half;
  for (const auto& [e, c] : twice.coefficients()) {
    if (!mpz_divisible_ui_p(c.get_mpz_t(), 2)) throw std::logic_error("symmetric_square: odd coefficient");
    half.add(e, c / 2);
  }
  return half;
}

// Multiplicities of V_n in a character, peeled from the top weight.
inline std::map<int, int> decompose_complex(LaurentPolynomial chi) {
  std::map<int, int> mult;
  while (!chi.is_zero()) {
    int top = chi.coefficients().rbegin()->first;
    const Integer& c = chi.coefficients().rbegin()->second;
    if (top < 0 || sgn(c) < 0) throw std::invalid_argument("decompose_complex: not a character");
    long count = c.get_si();
    mult[top] += static_cast<int>(count);
    chi = chi - count * character_complex(top);
  }
  return mult;
}

// Multiplicities of the real irreducibles W_k in the character of a real
// representation.
inline std::map<int, int> decompose_real(const LaurentPolynomial& chi) {
  std::map<int, int> mult;
  for (const auto& [n, c] : decompose_complex(chi)) {
    if (n % 2 == 0) {
      mult[n + 1] += c;
    } else {
      if (c % 2) throw std::invalid_argument("decompose_real: odd level with odd multiplicity");
      mult[2 * n + 2] += c / 2;
    }
  }
  return mult;
}

}  // namespace a3
