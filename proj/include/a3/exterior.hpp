#pragma once

// Constant-coefficient exterior algebra on R^7 and R^8, the model G2 and
// Spin(7) forms, and the cross products / chi tensors they induce.
//
// Coordinates: on R^7 the components are labelled x1..x7 and stored at
// positions 0..6; on R^8 they are x0..x7 at positions 0..7. A k-form is a
// map from k-element index sets (bit masks) to coefficients.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "a3/scalar.hpp"

namespace a3 {

class Vector {
 public:
  Vector() = default;
  explicit Vector(int dimension) : c_(static_cast<std::size_t>(dimension)) {}
  Vector(std::initializer_list<AlgebraicScalar> c) : c_(c) {}
  explicit Vector(std::vector<AlgebraicScalar> c) : c_(std::move(c)) {}

  static Vector basis(int dimension, int position) {
    Vector v(dimension);
    v.c_.at(static_cast<std::size_t>(position)) = 1;
    return v;
  }

  int dimension() const { return static_cast<int>(c_.size()); }
  AlgebraicScalar& operator[](std::size_t k) { return c_[k]; }
  const AlgebraicScalar& operator[](std::size_t k) const { return c_[k]; }
  const std::vector<AlgebraicScalar>& components() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  Vector& operator+=(const Vector& o) {
    check_same(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_same(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend Vector operator+(Vector x, const Vector& y) { return x += y; }
  friend Vector operator-(Vector x, const Vector& y) { return x -= y; }
  friend Vector operator*(const AlgebraicScalar& s, Vector x) {
    for (auto& c : x.c_) c = s * c;
    return x;
  }
  friend Vector operator-(Vector x) {
    for (auto& c : x.c_) c = -c;
    return x;
  }
  friend bool operator==(const Vector& x, const Vector& y) { return x.c_ == y.c_; }

  void check_same(const Vector& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("Vector: dimension mismatch");
  }

 private:
  std::vector<AlgebraicScalar> c_;
};

// Euclidean (bilinear) inner product; entries are expected to be real.
inline AlgebraicScalar dot(const Vector& x, const Vector& y) {
  x.check_same(y);
  AlgebraicScalar s;
  for (std::size_t k = 0; k < x.components().size(); ++k)
    if (!x[k].is_zero() && !y[k].is_zero()) s += x[k] * y[k];
  return s;
}

inline AlgebraicScalar norm_squared(const Vector& x) { return dot(x, x); }

class MultiForm {
 public:
  using Mask = std::uint16_t;

  MultiForm(int dimension, int degree) : dim_(dimension), degree_(degree) {
    if (dimension < 0 || dimension > 8 || degree < 0 || degree > dimension)
      throw std::invalid_argument("MultiForm: need 0 <= degree <= dimension <= 8");
  }

  int dimension() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<Mask, AlgebraicScalar>& coefficients() const { return coeffs_; }

  // Coefficient of dx_{i1} ^ ... ^ dx_{ik} for positions in any order
  // (antisymmetry applied).
  AlgebraicScalar coefficient(std::initializer_list<int> positions) const {
    auto [mask, sign] = sort_positions(positions);
    if (sign == 0) return {};
    auto it = coeffs_.find(mask);
    if (it == coeffs_.end()) return {};
    return sign > 0 ? it->second : -it->second;
  }

  AlgebraicScalar coefficient(Mask mask) const {
    auto it = coeffs_.find(mask);
    return it == coeffs_.end() ? AlgebraicScalar{} : it->second;
  }

  void add_term(std::initializer_list<int> positions, const AlgebraicScalar& c) {
    if (static_cast<int>(positions.size()) != degree_) throw std::invalid_argument("MultiForm: degree mismatch");
    auto [mask, sign] = sort_positions(positions);
    if (sign == 0) return;
    add_term(mask, sign > 0 ? c : -c);
  }

  void add_term(Mask mask, const AlgebraicScalar& c) {
    if (std::popcount(static_cast<unsigned>(mask)) != degree_ || (mask >> dim_) != 0)
      throw std::invalid_argument("MultiForm: bad index set");
    auto& slot = coeffs_[mask];
    slot += c;
    if (slot.is_zero()) coeffs_.erase(mask);
  }

  bool is_zero() const { return coeffs_.empty(); }

  MultiForm& operator+=(const MultiForm& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.coeffs_) add_term(m, c);
    return *this;
  }
  MultiForm& operator-=(const MultiForm& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.coeffs_) add_term(m, -c);
    return *this;
  }
  friend MultiForm operator+(MultiForm a, const MultiForm& b) { return a += b; }
  friend MultiForm operator-(MultiForm a, const MultiForm& b) { return a -= b; }
  friend MultiForm operator*(const AlgebraicScalar& s, const MultiForm& a) {
    MultiForm r(a.dim_, a.degree_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.coeffs_) r.coeffs_[m] = s * c;
    return r;
  }
  friend bool operator==(const MultiForm& a, const MultiForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  // Sign of the shuffle that sorts the concatenation (a, b) of disjoint sets.
  static int shuffle_sign(Mask a, Mask b) {
    int inversions = 0;
    for (int i = 0; i < 16; ++i)
      if (a & (1u << i)) inversions += std::popcount(static_cast<unsigned>(b) & ((1u << i) - 1));
    return (inversions % 2) ? -1 : 1;
  }

 private:
  void check_compatible(const MultiForm& o) const {
    if (o.dim_ != dim_ || o.degree_ != degree_) throw std::invalid_argument("MultiForm: shape mismatch");
  }

  std::pair<Mask, int> sort_positions(std::initializer_list<int> positions) const {
    std::vector<int> p(positions);
    for (int x : p)
      if (x < 0 || x >= dim_) throw std::out_of_range("MultiForm: index out of range");
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) {
        if (p[i] == p[j]) return {0, 0};
        if (p[i] > p[j]) sign = -sign;
      }
    Mask m = 0;
    for (int x : p) m |= static_cast<Mask>(1u << x);
    return {m, sign};
  }

  int dim_;
  int degree_;
  std::map<Mask, AlgebraicScalar> coeffs_;
};

inline MultiForm wedge(const MultiForm& a, const MultiForm& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("wedge: dimension mismatch");
  if (a.degree() + b.degree() > a.dimension()) return MultiForm(a.dimension(), a.dimension());
  MultiForm r(a.dimension(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.coefficients())
    for (const auto& [mb, cb] : b.coefficients()) {
      if (ma & mb) continue;
      AlgebraicScalar c = ca * cb;
      r.add_term(static_cast<MultiForm::Mask>(ma | mb), MultiForm::shuffle_sign(ma, mb) > 0 ? c : -c);
    }
  return r;
}

namespace detail {

inline AlgebraicScalar small_determinant(const std::vector<std::vector<AlgebraicScalar>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  AlgebraicScalar det;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<AlgebraicScalar>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<AlgebraicScalar> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    AlgebraicScalar term = m[0][col] * small_determinant(minor);
    if (col % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace detail

// alpha(v_1, ..., v_k).
inline AlgebraicScalar eval(const MultiForm& alpha, std::span<const Vector> vectors) {
  if (static_cast<int>(vectors.size()) != alpha.degree()) throw std::invalid_argument("eval: arity mismatch");
  for (const auto& v : vectors)
    if (v.dimension() != alpha.dimension()) throw std::invalid_argument("eval: dimension mismatch");
  AlgebraicScalar total;
  for (const auto& [mask, c] : alpha.coefficients()) {
    std::vector<int> idx;
    for (int i = 0; i < alpha.dimension(); ++i)
      if (mask & (1u << i)) idx.push_back(i);
    std::vector<std::vector<AlgebraicScalar>> m(idx.size(), std::vector<AlgebraicScalar>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t j = 0; j < idx.size(); ++j) m[r][j] = vectors[j][static_cast<std::size_t>(idx[r])];
    AlgebraicScalar d = detail::small_determinant(m);
    if (!d.is_zero()) total += c * d;
  }
  return total;
}

inline AlgebraicScalar eval(const MultiForm& alpha, std::initializer_list<Vector> vectors) {
  std::vector<Vector> v(vectors);
  return eval(alpha, std::span<const Vector>(v));
}

// i(v) alpha: contraction in the first slot.
inline MultiForm interior(const Vector& v, const MultiForm& alpha) {
  if (v.dimension() != alpha.dimension()) throw std::invalid_argument("interior: dimension mismatch");
  if (alpha.degree() == 0) throw std::invalid_argument("interior: cannot contract a function");
  MultiForm r(alpha.dimension(), alpha.degree() - 1);
  for (const auto& [mask, c] : alpha.coefficients()) {
    for (int i = 0; i < alpha.dimension(); ++i) {
      if (!(mask & (1u << i)) || v[static_cast<std::size_t>(i)].is_zero()) continue;
      int before = std::popcount(static_cast<unsigned>(mask) & ((1u << i) - 1));
      AlgebraicScalar t = v[static_cast<std::size_t>(i)] * c;
      r.add_term(static_cast<MultiForm::Mask>(mask & ~(1u << i)), before % 2 ? -t : t);
    }
  }
  return r;
}

inline MultiForm volume_form(int dimension) {
  MultiForm vol(dimension, dimension);
  vol.add_term(static_cast<MultiForm::Mask>((1u << dimension) - 1), 1);
  return vol;
}

// Euclidean Hodge star for the standard orientation: alpha ^ *beta = <alpha,beta> vol.
inline MultiForm hodge_star(const MultiForm& alpha) {
  const int n = alpha.dimension();
  const auto full = static_cast<MultiForm::Mask>((1u << n) - 1);
  MultiForm r(n, n - alpha.degree());
  for (const auto& [mask, c] : alpha.coefficients()) {
    auto rest = static_cast<MultiForm::Mask>(full & ~mask);
    r.add_term(rest, MultiForm::shuffle_sign(mask, rest) > 0 ? c : -c);
  }
  return r;
}

// Builds a form from signed terms written in coordinate labels, e.g.
// {{1, "123"}, {-1, "257"}}. `first_label` is the label of position 0.
inline MultiForm form_from_labels(int dimension, int degree, int first_label,
                                  std::initializer_list<std::pair<int, const char*>> terms) {
  MultiForm f(dimension, degree);
  for (const auto& [sign, labels] : terms) {
    std::string s(labels);
    if (static_cast<int>(s.size()) != degree) throw std::invalid_argument("form_from_labels: degree mismatch");
    std::vector<int> pos;
    for (char ch : s) pos.push_back(ch - '0' - first_label);
    MultiForm::Mask m = 0;
    int parity = 1;
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = i + 1; j < pos.size(); ++j)
        if (pos[i] > pos[j]) parity = -parity;
    for (int p : pos) {
      if (p < 0 || p >= dimension) throw std::out_of_range("form_from_labels: label out of range");
      m |= static_cast<MultiForm::Mask>(1u << p);
    }
    f.add_term(m, AlgebraicScalar(static_cast<long>(sign * parity)));
  }
  return f;
}

// phi0 = dx123 + dx1(dx45 + dx67) + dx2(dx46 - dx57) - dx3(dx47 + dx56)
inline MultiForm model_phi0() {
  return form_from_labels(7, 3, 1,
                          {{1, "123"}, {1, "145"}, {1, "167"}, {1, "246"}, {-1, "257"}, {-1, "347"}, {-1, "356"}});
}

// *phi0 = dx4567 + dx23(dx67 + dx45) + dx13(dx57 - dx46) - dx12(dx56 + dx47)
inline MultiForm model_star_phi0() {
  return form_from_labels(7, 4, 1,
                          {{1, "4567"}, {1, "2367"}, {1, "2345"}, {1, "1357"}, {-1, "1346"}, {-1, "1256"}, {-1, "1247"}});
}

// Moves a form on R^7 (x1..x7) into R^8 (x0..x7).
inline MultiForm embed_r7_in_r8(const MultiForm& f) {
  if (f.dimension() != 7) throw std::invalid_argument("embed_r7_in_r8: need a form on R^7");
  MultiForm r(8, f.degree());
  for (const auto& [m, c] : f.coefficients()) r.add_term(static_cast<MultiForm::Mask>(m << 1), c);
  return r;
}

// Phi0 = dx0 ^ phi0 + *phi0
inline MultiForm model_Phi0() {
  MultiForm dx0(8, 1);
  dx0.add_term({0}, 1);
  return wedge(dx0, embed_r7_in_r8(model_phi0())) + embed_r7_in_r8(model_star_phi0());
}

// The vector w with <w, e_m> = alpha(v_1, ..., v_{k-1}, e_m) for every m.
inline Vector raise_last_slot(const MultiForm& alpha, std::span<const Vector> vectors) {
  if (static_cast<int>(vectors.size()) + 1 != alpha.degree()) throw std::invalid_argument("raise_last_slot: arity mismatch");
  std::vector<Vector> args(vectors.begin(), vectors.end());
  args.emplace_back(alpha.dimension());
  Vector w(alpha.dimension());
  for (int m = 0; m < alpha.dimension(); ++m) {
    args.back() = Vector::basis(alpha.dimension(), m);
    w[static_cast<std::size_t>(m)] = eval(alpha, std::span<const Vector>(args));
  }
  return w;
}

inline void require_dimension(const Vector& v, int dim, const char* what) {
  if (v.dimension() != dim) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// g0(x cross y, z) = phi0(x, y, z)
inline Vector cross7(const Vector& x, const Vector& y) {
  require_dimension(x, 7, "cross7");
  require_dimension(y, 7, "cross7");
  static const MultiForm phi = model_phi0();
  std::vector<Vector> v{x, y};
  return raise_last_slot(phi, v);
}

// g0(chi(x, y, z), w) = *phi0(x, y, z, w)
inline Vector chi7(const Vector& x, const Vector& y, const Vector& z) {
  require_dimension(x, 7, "chi7");
  require_dimension(y, 7, "chi7");
  require_dimension(z, 7, "chi7");
  static const MultiForm psi = model_star_phi0();
  std::vector<Vector> v{x, y, z};
  return raise_last_slot(psi, v);
}

namespace detail {

inline void require_sphere_tangent(const Vector& p, std::initializer_list<const Vector*> vs, const char* what) {
  require_dimension(p, 8, what);
  if (norm_squared(p) != AlgebraicScalar(1)) throw std::domain_error(std::string(what) + ": base point is not a unit vector");
  for (const Vector* v : vs) {
    require_dimension(*v, 8, what);
    if (!dot(*v, p).is_zero()) throw std::domain_error(std::string(what) + ": argument is not tangent to S^7");
  }
}

}  // namespace detail

// Cross product of the nearly parallel G2 structure on S^7 at p:
// <x cross y, z> = Phi0(p, x, y, z).
inline Vector sphere_cross(const Vector& p, const Vector& x, const Vector& y) {
  detail::require_sphere_tangent(p, {&x, &y}, "sphere_cross");
  static const MultiForm Phi = model_Phi0();
  std::vector<Vector> v{p, x, y};
  return raise_last_slot(Phi, v);
}

// chi tensor on S^7 at p: <chi(x, y, z), w> = Phi0(x, y, z, w) for tangent w.
inline Vector sphere_chi(const Vector& p, const Vector& x, const Vector& y, const Vector& z) {
  detail::require_sphere_tangent(p, {&x, &y, &z}, "sphere_chi");
  static const MultiForm Phi = model_Phi0();
  std::vector<Vector> v{x, y, z};
  Vector w = raise_last_slot(Phi, v);
  return w - dot(w, p) * p;
}

}  // namespace a3
