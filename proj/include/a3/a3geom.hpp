#pragma once

// The orbit A3 = rho3(SU(2)) p0 in S^7 in C^4 = R^8, its left-invariant
// frames, normal connection, second fundamental form and cross products.
// Tangent indices i run over 0..2 and normal indices j over 0..3.

#include <array>
#include <stdexcept>
#include <vector>

#include "a3/exterior.hpp"
#include "a3/group_polynomial.hpp"
#include "a3/linalg.hpp"
#include "a3/su2rep.hpp"

namespace a3 {

// Column vector in C^4.
using ComplexVector = std::vector<AlgebraicScalar>;
// Coefficients on (eta_1, .., eta_4).
using NormalCoefficients = std::array<AlgebraicScalar, 4>;
// Coefficients on (e_1, e_2, e_3).
using TangentCoefficients = std::array<AlgebraicScalar, 3>;

inline constexpr int kTangentRank = 3;
inline constexpr int kNormalRank = 4;

// z_j = x_(2j) + i x_(2j+1)
inline Vector to_real8(const ComplexVector& z) {
  if (z.size() != 4) throw std::invalid_argument("to_real8: expected a vector in C^4");
  Vector x(8);
  for (std::size_t j = 0; j < 4; ++j) {
    x[2 * j] = z[j].real_part();
    x[2 * j + 1] = z[j].imag_part();
  }
  return x;
}

inline ComplexVector from_real8(const Vector& x) {
  if (x.dimension() != 8) throw std::invalid_argument("from_real8: expected a vector in R^8");
  ComplexVector z(4);
  for (std::size_t j = 0; j < 4; ++j) z[j] = x[2 * j] + AlgebraicScalar::i() * x[2 * j + 1];
  return z;
}

// Euclidean inner product of R^8 = Re sum x_j conj(y_j).
inline AlgebraicScalar real_inner(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("real_inner: size mismatch");
  AlgebraicScalar s;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * y[j].conj();
  return s.real_part();
}

inline ComplexVector scaled(const AlgebraicScalar& s, ComplexVector v) {
  for (auto& x : v) x = s * x;
  return v;
}

inline ComplexVector added(ComplexVector v, const ComplexVector& w) {
  if (v.size() != w.size()) throw std::invalid_argument("added: size mismatch");
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += w[j];
  return v;
}

inline bool is_zero(const ComplexVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// rho3 as the displayed 4x4 array of polynomials in a, abar, b, bbar.
inline std::array<std::array<GroupPolynomial, 4>, 4> rho3_polynomial() {
  using GP = GroupPolynomial;
  const GP a = GP::a(), ab = GP::abar(), b = GP::b(), bb = GP::bbar();
  const GP aa = a * ab, bbb = b * bb;
  const AlgebraicScalar r3 = AlgebraicScalar::sqrt(3);
  const AlgebraicScalar two(2);
  return {{
      {power(a, 3), -r3 * (a * a * bb), r3 * (a * bb * bb), -power(bb, 3)},
      {r3 * (a * a * b), a * (aa - two * bbb), -(bb * (two * aa - bbb)), r3 * (ab * bb * bb)},
      {r3 * (a * b * b), b * (two * aa - bbb), ab * (aa - two * bbb), -r3 * (ab * ab * bb)},
      {power(b, 3), r3 * (ab * b * b), r3 * (ab * ab * b), power(ab, 3)},
  }};
}

inline Matrix<AlgebraicScalar> rho3(const SU2Element& g) {
  static const auto entries = rho3_polynomial();
  Matrix<AlgebraicScalar> m(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = evaluate(entries[r][c], g);
  return m;
}

// (rho3)_*(X) = d/dt rho3(exp tX) at t = 0.
inline Matrix<AlgebraicScalar> rho3_lie(const LieDerivation& X) {
  static const auto entries = rho3_polynomial();
  Matrix<AlgebraicScalar> m(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = evaluate(X(entries[r][c]), SU2Element::identity());
  return m;
}

// Generators of e_1, e_2, e_3: E1/sqrt7, E2/sqrt7, E3.
inline LieDerivation frame_generator(int i) {
  const AlgebraicScalar s = AlgebraicScalar::sqrt(Rational(1, 7));
  switch (i) {
    case 0:
      return s * LieDerivation::E1();
    case 1:
      return s * LieDerivation::E2();
    case 2:
      return LieDerivation::E3();
    default:
      throw std::out_of_range("frame_generator: tangent index must be 0, 1 or 2");
  }
}

inline const std::array<Matrix<AlgebraicScalar>, 3>& frame_generator_matrices() {
  static const std::array<Matrix<AlgebraicScalar>, 3> m{rho3_lie(frame_generator(0)), rho3_lie(frame_generator(1)),
                                                        rho3_lie(frame_generator(2))};
  return m;
}

inline ComplexVector base_point() {
  const AlgebraicScalar s = AlgebraicScalar::sqrt(Rational(1, 2));
  return {0, s, s * AlgebraicScalar::i(), 0};
}

struct FrameAtPoint {
  ComplexVector point;
  std::array<ComplexVector, 3> tangent;
  std::array<ComplexVector, 4> normal;
};

// The frames at p0 as listed entrywise.
inline FrameAtPoint displayed_frame() {
  const AlgebraicScalar I = AlgebraicScalar::i();
  const AlgebraicScalar r3 = AlgebraicScalar::sqrt(3);
  const AlgebraicScalar s14 = AlgebraicScalar::sqrt(Rational(1, 14));
  const AlgebraicScalar s2 = AlgebraicScalar::sqrt(Rational(1, 2));
  const AlgebraicScalar s42 = AlgebraicScalar::sqrt(Rational(1, 42));
  FrameAtPoint f;
  f.point = base_point();
  f.tangent[0] = scaled(s14, {r3, 2 * I, -2, -(r3 * I)});
  f.tangent[1] = scaled(s14, {r3 * I, -2, 2 * I, -r3});
  f.tangent[2] = scaled(s2, {0, I, 1, 0});
  f.normal[0] = scaled(s2, {I, 0, 0, 1});
  f.normal[1] = scaled(s2, {-1, 0, 0, -I});
  f.normal[2] = scaled(s42, {-2 * r3 * I, -3, 3 * I, 2 * r3});
  f.normal[3] = scaled(s42, {-2 * r3, 3 * I, -3, 2 * r3 * I});
  return f;
}

// Frames at rho3(g) p0, pushed forward from the displayed ones at p0.
inline FrameAtPoint frames_at(const SU2Element& g) {
  static const FrameAtPoint base = displayed_frame();
  const auto R = rho3(g);
  FrameAtPoint f;
  f.point = R.apply(base.point);
  for (std::size_t i = 0; i < 3; ++i) f.tangent[i] = R.apply(base.tangent[i]);
  for (std::size_t j = 0; j < 4; ++j) f.normal[j] = R.apply(base.normal[j]);
  return f;
}

inline NormalCoefficients normal_coefficients(const FrameAtPoint& f, const ComplexVector& w) {
  NormalCoefficients c;
  for (std::size_t k = 0; k < 4; ++k) c[k] = real_inner(w, f.normal[k]);
  return c;
}

inline TangentCoefficients tangent_coefficients(const FrameAtPoint& f, const ComplexVector& w) {
  TangentCoefficients c;
  for (std::size_t k = 0; k < 3; ++k) c[k] = real_inner(w, f.tangent[k]);
  return c;
}

inline ComplexVector combine(const FrameAtPoint& f, const NormalCoefficients& c) {
  ComplexVector v(4);
  for (std::size_t k = 0; k < 4; ++k)
    if (!c[k].is_zero()) v = added(std::move(v), scaled(c[k], f.normal[k]));
  return v;
}

namespace detail {

inline void check_tangent_index(int i) {
  if (i < 0 || i >= kTangentRank) throw std::out_of_range("tangent index out of range");
}
inline void check_normal_index(int j) {
  if (j < 0 || j >= kNormalRank) throw std::out_of_range("normal index out of range");
}

}  // namespace detail

// d/dt rho3(g exp(t X_i)) w0 at t = 0, for the field g -> rho3(g) w0.
inline ComplexVector field_derivative(int i, const SU2Element& g, const ComplexVector& w0) {
  detail::check_tangent_index(i);
  return rho3(g).apply(frame_generator_matrices()[static_cast<std::size_t>(i)].apply(w0));
}

// nabla-perp_{e_i} eta_j at rho3(g) p0: the normal part of the flat
// derivative (the sphere correction <e_i, eta_j> p vanishes).
inline NormalCoefficients normal_connection(int i, int j, const SU2Element& g = SU2Element::identity()) {
  detail::check_normal_index(j);
  static const FrameAtPoint base = displayed_frame();
  return normal_coefficients(frames_at(g), field_derivative(i, g, base.normal[static_cast<std::size_t>(j)]));
}

// Pi(e_i, e_j) = normal part of the derivative of e_j along e_i.
inline NormalCoefficients second_fundamental_form(int i, int j, const SU2Element& g = SU2Element::identity()) {
  detail::check_tangent_index(j);
  static const FrameAtPoint base = displayed_frame();
  return normal_coefficients(frames_at(g), field_derivative(i, g, base.tangent[static_cast<std::size_t>(j)]));
}

// Cross product of S^7 at a frame's base point, on C^4 vectors.
inline ComplexVector cross_at(const FrameAtPoint& f, const ComplexVector& x, const ComplexVector& y) {
  return from_real8(sphere_cross(to_real8(f.point), to_real8(x), to_real8(y)));
}

struct CrossDecomposition {
  TangentCoefficients tangent;
  NormalCoefficients normal;
  AlgebraicScalar radial;
};

inline CrossDecomposition decompose(const FrameAtPoint& f, const ComplexVector& w) {
  return {tangent_coefficients(f, w), normal_coefficients(f, w), real_inner(w, f.point)};
}

// e_i x eta_j in the normal frame. Throws std::logic_error if the product
// leaves the normal bundle.
inline NormalCoefficients cross_frame(int i, int j, const SU2Element& g = SU2Element::identity()) {
  detail::check_tangent_index(i);
  detail::check_normal_index(j);
  const FrameAtPoint f = frames_at(g);
  auto d = decompose(f, cross_at(f, f.tangent[static_cast<std::size_t>(i)], f.normal[static_cast<std::size_t>(j)]));
  for (const auto& t : d.tangent)
    if (!t.is_zero()) throw std::logic_error("cross_frame: e_i x eta_j has a tangent component");
  return d.normal;
}

struct ConnectionTables {
  std::array<std::array<NormalCoefficients, 4>, 3> nabla_perp;
  std::array<std::array<NormalCoefficients, 4>, 3> cross;
  std::array<std::array<NormalCoefficients, 3>, 3> second_fundamental;

  friend bool operator==(const ConnectionTables&, const ConnectionTables&) = default;
};

inline ConnectionTables compute_connection_tables(const SU2Element& g = SU2Element::identity()) {
  ConnectionTables t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      t.nabla_perp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = normal_connection(i, j, g);
      t.cross[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cross_frame(i, j, g);
    }
    for (int j = 0; j < 3; ++j)
      t.second_fundamental[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = second_fundamental_form(i, j, g);
  }
  return t;
}

namespace detail {

// s * eta_k with k given 1-based; 0 gives the zero vector.
inline NormalCoefficients eta(int k, const AlgebraicScalar& s = 1) {
  NormalCoefficients c;
  if (k != 0) c[static_cast<std::size_t>(k - 1)] = s;
  return c;
}

inline NormalCoefficients times(const AlgebraicScalar& s, NormalCoefficients c) {
  for (auto& x : c) x = s * x;
  return c;
}

}  // namespace detail

// The tables as listed in closed form.
inline ConnectionTables reference_tables() {
  using detail::eta;
  using detail::times;
  ConnectionTables t;
  const AlgebraicScalar c = AlgebraicScalar::rational(3, 7);
  const std::array<std::array<NormalCoefficients, 4>, 3> nabla{{
      {eta(4, -1), eta(3, -1), eta(2), eta(1)},
      {eta(3), eta(4, -1), eta(1, -1), eta(2)},
      {eta(2, 7), eta(1, -7), eta(4, -5), eta(3, 5)},
  }};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) t.nabla_perp[i][j] = times(c, nabla[i][j]);
  t.cross = {{
      {eta(4), eta(3), eta(2, -1), eta(1, -1)},
      {eta(3, -1), eta(4), eta(1), eta(2, -1)},
      {eta(2), eta(1, -1), eta(4), eta(3, -1)},
  }};
  const AlgebraicScalar p = AlgebraicScalar::rational(2, 7) * AlgebraicScalar::sqrt(3);
  const std::array<std::array<NormalCoefficients, 3>, 3> pi{{
      {eta(1), eta(2), eta(3, -2)},
      {eta(2), eta(1, -1), eta(4, 2)},
      {eta(3, -2), eta(4, 2), eta(0)},
  }};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t.second_fundamental[i][j] = times(p, pi[i][j]);
  return t;
}

struct AssociativeCheck {
  AlgebraicScalar phi;     // phi(e1, e2, e3)
  bool chi_vanishes = false;
};

// phi = Phi0(p, ., ., .) restricted to the tangent frame, and chi(e1, e2, e3).
inline AssociativeCheck verify_associative(const SU2Element& g = SU2Element::identity()) {
  static const MultiForm Phi0 = model_Phi0();
  const FrameAtPoint f = frames_at(g);
  const Vector p = to_real8(f.point);
  const Vector e1 = to_real8(f.tangent[0]), e2 = to_real8(f.tangent[1]), e3 = to_real8(f.tangent[2]);
  return {eval(Phi0, {p, e1, e2, e3}), sphere_chi(p, e1, e2, e3).is_zero()};
}

}  // namespace a3
