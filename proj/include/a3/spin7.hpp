#pragma once

// spin(7) inside so(8), the su(4) embedding, decompositions under
// ad(rho3), the infinitesimal stabilizer of A3 and the trivial deformations.
// Elements of so(8) are real 8x8 matrices in the coordinates x0..x7 with
// z_j = x_(2j) + i x_(2j+1).

#include <array>
#include <bit>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "a3/a3geom.hpp"
#include "a3/deform.hpp"
#include "a3/exterior.hpp"
#include "a3/linalg.hpp"

namespace a3 {

using LieElement = Matrix<AlgebraicScalar>;

inline bool is_skew(const LieElement& x) {
  if (x.rows() != x.cols()) return false;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c)
      if (x(r, c) != -x(c, r)) return false;
  return true;
}

inline LieElement bracket(const LieElement& x, const LieElement& y) { return x * y - y * x; }

inline LieElement scaled(const AlgebraicScalar& s, LieElement x) {
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) x(r, c) = s * x(r, c);
  return x;
}

// Real form of a complex-linear map of C^4.
inline LieElement realify(const Matrix<AlgebraicScalar>& a) {
  if (a.rows() != 4 || a.cols() != 4) throw std::invalid_argument("realify: expected a 4x4 matrix");
  LieElement m(8, 8);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      const AlgebraicScalar re = a(r, c).real_part(), im = a(r, c).imag_part();
      m(2 * r, 2 * c) = re;
      m(2 * r, 2 * c + 1) = -im;
      m(2 * r + 1, 2 * c) = im;
      m(2 * r + 1, 2 * c + 1) = re;
    }
  return m;
}

inline Matrix<AlgebraicScalar> complex_matrix(std::initializer_list<std::initializer_list<AlgebraicScalar>> rows) {
  Matrix<AlgebraicScalar> m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (const auto& x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

// Multiplication by i on C^4 = R^8.
inline LieElement complex_structure() {
  Matrix<AlgebraicScalar> i(4, 4);
  for (std::size_t k = 0; k < 4; ++k) i(k, k) = AlgebraicScalar::i();
  return realify(i);
}

// X . alpha for X in gl(n) acting by derivations: X . dx_i = -sum_j X_ij dx_j.
inline MultiForm lie_derivative(const LieElement& x, const MultiForm& alpha) {
  const int n = alpha.dimension();
  if (static_cast<int>(x.rows()) != n || static_cast<int>(x.cols()) != n)
    throw std::invalid_argument("lie_derivative: dimension mismatch");
  MultiForm out(n, alpha.degree());
  for (const auto& [mask, c] : alpha.coefficients()) {
    int slot = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      const unsigned rest = mask & ~(1u << i);
      for (int j = 0; j < n; ++j) {
        const AlgebraicScalar& xij = x(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (xij.is_zero() || (rest & (1u << j))) continue;
        const int target = std::popcount(rest & ((1u << j) - 1));
        const int moves = target > slot ? target - slot : slot - target;
        AlgebraicScalar t = -(xij * c);
        out.add_term(static_cast<MultiForm::Mask>(rest | (1u << j)), moves % 2 ? -t : t);
      }
      ++slot;
    }
  }
  return out;
}

// E_ab - E_ba for a < b, in lexicographic order.
inline std::vector<LieElement> so8_basis() {
  std::vector<LieElement> b;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j) {
      LieElement m(8, 8);
      m(i, j) = 1;
      m(j, i) = -1;
      b.push_back(std::move(m));
    }
  return b;
}

inline LieElement combination(const std::vector<LieElement>& basis, const std::vector<AlgebraicScalar>& c) {
  if (basis.size() != c.size() || basis.empty()) throw std::invalid_argument("combination: size mismatch");
  LieElement m(basis.front().rows(), basis.front().cols());
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!c[k].is_zero()) m = m + scaled(c[k], basis[k]);
  return m;
}

// Matrix whose columns are the flattened elements.
inline Matrix<AlgebraicScalar> flatten(const std::vector<LieElement>& xs) {
  if (xs.empty()) return {};
  const std::size_t n = xs.front().rows() * xs.front().cols();
  Matrix<AlgebraicScalar> m(n, xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k)
    for (std::size_t r = 0; r < xs[k].rows(); ++r)
      for (std::size_t c = 0; c < xs[k].cols(); ++c) m(r * xs[k].cols() + c, k) = xs[k](r, c);
  return m;
}

inline std::size_t span_dimension(const std::vector<LieElement>& xs) { return xs.empty() ? 0 : rank(flatten(xs)); }

inline bool in_span(const std::vector<LieElement>& space, const LieElement& x) {
  std::vector<LieElement> both = space;
  both.push_back(x);
  return span_dimension(both) == span_dimension(space);
}

inline bool same_span(const std::vector<LieElement>& a, const std::vector<LieElement>& b) {
  std::vector<LieElement> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t r = span_dimension(both);
  return span_dimension(a) == r && span_dimension(b) == r;
}

// The annihilator of Phi0 in so(8).
inline std::vector<LieElement> compute_spin7() {
  static const std::vector<LieElement> cached = [] {
    const MultiForm phi = model_Phi0();
    const auto so8 = so8_basis();
    std::map<MultiForm::Mask, std::size_t> rows;
    std::vector<MultiForm> images;
    for (const auto& x : so8) {
      images.push_back(lie_derivative(x, phi));
      for (const auto& [m, c] : images.back().coefficients()) rows.emplace(m, 0);
    }
    std::size_t r = 0;
    for (auto& [m, slot] : rows) slot = r++;
    Matrix<AlgebraicScalar> a(rows.size(), so8.size());
    for (std::size_t k = 0; k < so8.size(); ++k)
      for (const auto& [m, c] : images[k].coefficients()) a(rows.at(m), k) = c;
    std::vector<LieElement> out;
    for (const auto& v : null_space(a)) out.push_back(combination(so8, v));
    return out;
  }();
  return cached;
}

inline bool in_spin7(const LieElement& x) { return is_skew(x) && lie_derivative(x, model_Phi0()).is_zero(); }

// Traceless skew-Hermitian 4x4 generators, realified.
inline std::vector<LieElement> su4_basis() {
  std::vector<LieElement> b;
  const AlgebraicScalar I = AlgebraicScalar::i();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = r + 1; c < 4; ++c) {
      Matrix<AlgebraicScalar> x(4, 4), y(4, 4);
      x(r, c) = 1;
      x(c, r) = -1;
      y(r, c) = I;
      y(c, r) = I;
      b.push_back(realify(x));
      b.push_back(realify(y));
    }
  for (std::size_t r = 0; r < 3; ++r) {
    Matrix<AlgebraicScalar> d(4, 4);
    d(r, r) = I;
    d(r + 1, r + 1) = -I;
    b.push_back(realify(d));
  }
  return b;
}

// (rho3)_* E_k on R^8, k = 0, 1, 2.
inline const std::array<LieElement, 3>& rho3_generators() {
  static const std::array<LieElement, 3> g{realify(rho3_lie(LieDerivation::E1())), realify(rho3_lie(LieDerivation::E2())),
                                           realify(rho3_lie(LieDerivation::E3()))};
  return g;
}

// ---------------------------------------------------------------------------
// The displayed families.

namespace displayed {

// (rho3)_* su(2): parameters a real, z complex.
inline LieElement w3_su4(const AlgebraicScalar& a, const AlgebraicScalar& z) {
  const AlgebraicScalar I = AlgebraicScalar::i(), r3 = AlgebraicScalar::sqrt(3), zb = z.conj();
  return realify(complex_matrix({{3 * I * a, r3 * z, 0, 0},
                                 {-(r3 * zb), I * a, 2 * z, 0},
                                 {0, -2 * zb, -(I * a), r3 * z},
                                 {0, 0, -(r3 * zb), -3 * I * a}}));
}

inline LieElement w5_su4(const AlgebraicScalar& a, const AlgebraicScalar& z, const AlgebraicScalar& w) {
  const AlgebraicScalar I = AlgebraicScalar::i();
  return realify(complex_matrix({{I * a, z, w, 0},
                                 {-z.conj(), -(I * a), 0, w},
                                 {-w.conj(), 0, -(I * a), -z},
                                 {0, -w.conj(), z.conj(), I * a}}));
}

inline LieElement w7_su4(const AlgebraicScalar& a, const AlgebraicScalar& z1, const AlgebraicScalar& z2,
                         const AlgebraicScalar& z3) {
  const AlgebraicScalar I = AlgebraicScalar::i(), r3 = AlgebraicScalar::sqrt(3);
  return realify(complex_matrix({{I * a, z1, z2, z3},
                                 {-z1.conj(), -3 * I * a, -(r3 * z1), -z2},
                                 {-z2.conj(), r3 * z1.conj(), 3 * I * a, z1},
                                 {-z3.conj(), z2.conj(), -z1.conj(), -(I * a)}}));
}

inline LieElement h0() {
  LieElement m(8, 8);
  const std::array<std::array<int, 3>, 8> entries{{{0, 6, 1}, {1, 7, -1}, {2, 4, -1}, {3, 5, 1},
                                                   {4, 2, 1}, {5, 3, -1}, {6, 0, -1}, {7, 1, 1}}};
  for (const auto& [r, c, v] : entries) m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = v;
  return m;
}

inline LieElement w5_spin7(const std::array<AlgebraicScalar, 5>& a) {
  const auto& [a1, a2, a3, a4, a5] = a;
  const AlgebraicScalar o;
  const std::array<std::array<AlgebraicScalar, 8>, 8> rows{{
      {o, o, -a1, -a2, -a3, -a4, o, -a5},
      {o, o, -a2, a1, -a4, a3, -a5, o},
      {a1, a2, o, o, o, -a5, -a3, a4},
      {a2, -a1, o, o, -a5, o, a4, a3},
      {a3, a4, o, a5, o, o, a1, -a2},
      {a4, -a3, a5, o, o, o, -a2, -a1},
      {o, a5, a3, -a4, -a1, a2, o, o},
      {a5, o, -a4, -a3, a2, a1, o, o},
  }};
  LieElement m(8, 8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) m(r, c) = rows[r][c];
  return m;
}

inline std::vector<LieElement> w3_su4_basis() {
  return {w3_su4(1, 0), w3_su4(0, 1), w3_su4(0, AlgebraicScalar::i())};
}
inline std::vector<LieElement> w5_su4_basis() {
  const AlgebraicScalar I = AlgebraicScalar::i();
  return {w5_su4(1, 0, 0), w5_su4(0, 1, 0), w5_su4(0, I, 0), w5_su4(0, 0, 1), w5_su4(0, 0, I)};
}
inline std::vector<LieElement> w7_su4_basis() {
  const AlgebraicScalar I = AlgebraicScalar::i();
  return {w7_su4(1, 0, 0, 0), w7_su4(0, 1, 0, 0), w7_su4(0, I, 0, 0), w7_su4(0, 0, 1, 0),
          w7_su4(0, 0, I, 0), w7_su4(0, 0, 0, 1), w7_su4(0, 0, 0, I)};
}
inline std::vector<LieElement> w5_spin7_basis() {
  std::vector<LieElement> b;
  for (std::size_t k = 0; k < 5; ++k) {
    std::array<AlgebraicScalar, 5> a{};
    a[k] = 1;
    b.push_back(w5_spin7(a));
  }
  return b;
}

// The witnesses excluding W5 (su(4)), W7 (su(4)) and W5 (spin(7)).
inline LieElement witness_w5_su4() { return w5_su4(0, AlgebraicScalar::i(), 0); }
inline LieElement witness_w7_su4() { return w7_su4(0, 0, 1, 0); }
inline LieElement witness_w5_spin7() { return w5_spin7({1, 0, 0, 0, 0}); }

}  // namespace displayed

// ---------------------------------------------------------------------------
// Decomposition under ad((rho3)_* su(2)).

struct IsotypicComponent {
  int label = 0;  // W_label
  int multiplicity = 0;
  std::vector<LieElement> basis;
};

struct IsotypicDecomposition {
  int dimension = 0;
  LaurentPolynomial character;  // from the weights of ad((rho3)_* E3)
  std::vector<IsotypicComponent> components;

  int multiplicity(int label) const {
    for (const auto& c : components)
      if (c.label == label) return c.multiplicity;
    return 0;
  }
  const IsotypicComponent& component(int label) const {
    for (const auto& c : components)
      if (c.label == label) return c;
    throw std::out_of_range("IsotypicDecomposition: no component W" + std::to_string(label));
  }
};

namespace detail {

// Matrix of y -> op(y) on span(basis) in the basis coordinates; throws
// std::invalid_argument if the span is not preserved.
template <class Op>
Matrix<AlgebraicScalar> restricted_operator(const std::vector<LieElement>& basis, Op&& op) {
  const Matrix<AlgebraicScalar> b = flatten(basis);
  Matrix<AlgebraicScalar> a(basis.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const LieElement image = op(basis[k]);
    auto x = solve(b, flatten({image}).column(0));
    if (!x) throw std::invalid_argument("decompose_under_su2: subspace is not ad(rho3)-invariant");
    for (std::size_t r = 0; r < basis.size(); ++r) a(r, k) = (*x)[r];
  }
  return a;
}

inline Matrix<AlgebraicScalar> shifted(Matrix<AlgebraicScalar> a, const AlgebraicScalar& s) {
  for (std::size_t k = 0; k < a.rows(); ++k) a(k, k) -= s;
  return a;
}

// A basis of the span with any linear dependencies dropped.
inline std::vector<LieElement> independent(const std::vector<LieElement>& xs) {
  if (xs.empty()) return {};
  auto ech = row_reduce(flatten(xs));
  std::vector<LieElement> out;
  for (auto p : ech.pivots) out.push_back(xs[p]);
  return out;
}

}  // namespace detail

// Throws std::invalid_argument if the span of space is not invariant.
inline IsotypicDecomposition decompose_under_su2(const std::vector<LieElement>& space) {
  const std::vector<LieElement> basis = detail::independent(space);
  IsotypicDecomposition out;
  out.dimension = static_cast<int>(basis.size());
  if (basis.empty()) return out;
  std::array<Matrix<AlgebraicScalar>, 3> ad;
  for (std::size_t k = 0; k < 3; ++k)
    ad[k] = detail::restricted_operator(basis, [&](const LieElement& y) { return bracket(rho3_generators()[k], y); });

  // ad(E3) has eigenvalues i w with integer w; the torus character is sum a^w.
  const int top = 2 * out.dimension;
  int counted = 0;
  for (int w = -top; w <= top; ++w) {
    const auto d = null_space(detail::shifted(ad[2], AlgebraicScalar(w) * AlgebraicScalar::i())).size();
    out.character.add(w, Integer(static_cast<unsigned long>(d)));
    counted += static_cast<int>(d);
  }
  if (counted != out.dimension) throw std::logic_error("decompose_under_su2: ad(E3) is not diagonalizable");

  // Casimir sum ad(E_k)^2 acts on V_n by -n(n + 2).
  const Matrix<AlgebraicScalar> casimir = ad[0] * ad[0] + ad[1] * ad[1] + ad[2] * ad[2];
  for (const auto& [label, mult] : decompose_real(out.character)) {
    const int n = label % 2 ? label - 1 : label / 2 - 1;
    IsotypicComponent c;
    c.label = label;
    c.multiplicity = mult;
    for (const auto& v : null_space(detail::shifted(casimir, AlgebraicScalar(-n * (n + 2))))) c.basis.push_back(combination(basis, v));
    if (static_cast<int>(c.basis.size()) != mult * label)
      throw std::logic_error("decompose_under_su2: Casimir eigenspace has the wrong dimension");
    out.components.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stabilizer of A3 and trivial deformations.

namespace detail {

inline ComplexVector apply_real(const LieElement& x, const ComplexVector& z) { return from_real8(Vector(x.apply(to_real8(z).components()))); }

inline bool preserves(const std::vector<LieElement>& s) {
  for (const auto& gen : rho3_generators())
    for (const auto& y : s)
      if (!in_span(s, bracket(gen, y))) return false;
  return true;
}

inline std::vector<SU2Element> stabilizer_samples() {
  std::vector<SU2Element> g{SU2Element::identity()};
  const std::array<std::array<long, 6>, 5> t{{{1, 2, 0, 1, 0, 1}, {0, 1, 1, 3, 0, 1}, {1, 1, 1, 1, 1, 1},
                                              {2, 1, -1, 3, 1, 2}, {-3, 2, 1, 5, 2, 3}}};
  for (const auto& p : t)
    g.push_back(SU2Element::from_rational_point(fraction(p[0], p[1]), fraction(p[2], p[3]), fraction(p[4], p[5])));
  return g;
}

}  // namespace detail

struct StabilizerResult {
  std::vector<LieElement> basis;
  int samples_used = 0;   // rational group points imposed before saturation
  bool certified = false; // the solution space is ad-invariant
};

// {X in spin(7) : <X rho3(g) p0, eta_i> = 0 for all g, i}. Conditions are
// imposed at rational points until the solution space is ad(rho3)-invariant;
// an invariant space satisfying the condition at p0 satisfies it on the
// whole orbit, and the true stabilizer is always contained in it.
inline StabilizerResult stabilizer_of_A3() {
  const auto spin7 = compute_spin7();
  StabilizerResult out;
  std::vector<std::vector<AlgebraicScalar>> rows;
  for (const auto& g : detail::stabilizer_samples()) {
    const FrameAtPoint f = frames_at(g);
    for (const auto& eta : f.normal) {
      std::vector<AlgebraicScalar> row;
      for (const auto& x : spin7) row.push_back(real_inner(detail::apply_real(x, f.point), eta));
      rows.push_back(std::move(row));
    }
    ++out.samples_used;
    Matrix<AlgebraicScalar> a(rows.size(), spin7.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < spin7.size(); ++c) a(r, c) = rows[r][c];
    out.basis.clear();
    for (const auto& v : null_space(a)) out.basis.push_back(combination(spin7, v));
    if (detail::preserves(out.basis)) {
      out.certified = true;
      return out;
    }
  }
  return out;
}

// g -> <X rho3(g) p0, rho3(g) eta_j> as a normal section.
inline NormalSection trivial_deformation(const LieElement& x) {
  static const auto entries = rho3_polynomial();
  static const FrameAtPoint base = displayed_frame();
  auto real_vector = [&](const ComplexVector& w) {
    std::array<GroupPolynomial, 8> out;
    for (std::size_t r = 0; r < 4; ++r) {
      GroupPolynomial z;
      for (std::size_t c = 0; c < 4; ++c)
        if (!w[c].is_zero()) z += w[c] * entries[r][c];
      out[2 * r] = detail::real_part(z);
      out[2 * r + 1] = detail::imag_part(z);
    }
    return out;
  };
  const auto p = real_vector(base.point);
  std::array<GroupPolynomial, 8> xp;
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      if (!x(r, c).is_zero()) xp[r] += x(r, c) * p[c];
  SectionComponents v;
  for (std::size_t j = 0; j < 4; ++j) {
    const auto eta = real_vector(base.normal[j]);
    for (std::size_t r = 0; r < 8; ++r) v[j] += xp[r] * eta[r];
  }
  return NormalSection::trusted(std::move(v));
}

struct TrivialDeformations {
  std::vector<NormalSection> sections;   // images of the spin(7) basis
  std::size_t dimension = 0;             // real rank of the image
  std::vector<LieElement> kernel;        // elements with zero image
};

inline TrivialDeformations trivial_deformations() {
  const auto spin7 = compute_spin7();
  TrivialDeformations out;
  for (const auto& x : spin7) out.sections.push_back(trivial_deformation(x));
  const auto coords = real_coordinates(out.sections);
  out.dimension = rank(coords);
  for (const auto& v : null_space(coords.transpose())) out.kernel.push_back(combination(spin7, v));
  return out;
}

// ---------------------------------------------------------------------------
// The table of kernel parameters for the non-stabilizing summands.

struct TableRow {
  std::string summand;
  std::vector<NormalSection> image;      // trivial deformations of the summand
  std::vector<NormalSection> predicted;  // kernel elements with the tabulated parameters
  std::size_t image_dimension = 0;
  std::size_t predicted_dimension = 0;
  bool image_inside_prediction = false;
  bool equal = false;
};

namespace detail {

// Real spanning set of (1 + sign j) V_n.
inline std::vector<RepVector> real_form_span(int n, int sign) {
  std::vector<RepVector> out;
  for (int k = 0; k <= n; ++k)
    for (const AlgebraicScalar& s : {AlgebraicScalar(1), AlgebraicScalar::i()}) {
      RepVector u = RepVector::basis(n, k, s);
      out.push_back(sign > 0 ? u + structure_map(u) : u - structure_map(u));
    }
  return out;
}

inline TableRow make_row(std::string name, const std::vector<LieElement>& summand, std::vector<NormalSection> predicted) {
  TableRow row;
  row.summand = std::move(name);
  for (const auto& x : summand) row.image.push_back(trivial_deformation(x));
  row.predicted = std::move(predicted);
  row.image_dimension = real_rank(row.image);
  row.predicted_dimension = real_rank(row.predicted);
  std::vector<NormalSection> both = row.image;
  both.insert(both.end(), row.predicted.begin(), row.predicted.end());
  const std::size_t joint = real_rank(both);
  row.image_inside_prediction = joint == row.predicted_dimension;
  row.equal = row.image_inside_prediction && row.image_dimension == row.predicted_dimension;
  return row;
}

}  // namespace detail

// Rows for W7 (su(4)), W5 (su(4)) and W5 (spin(7)), each reported as found.
inline std::vector<TableRow> trivial_deformation_table() {
  const AlgebraicScalar c = AlgebraicScalar(2) * AlgebraicScalar::sqrt(6) / AlgebraicScalar(3);
  std::vector<NormalSection> w7, w5, w5s;
  for (const auto& u1 : detail::real_form_span(6, -1)) w7.push_back(explicit_kernel(u1, RepVector(4), RepVector(4)));
  for (const auto& u2 : detail::real_form_span(4, -1)) w5.push_back(explicit_kernel(RepVector(6), u2, c * structure_map(u2)));
  for (const auto& u2 : detail::real_form_span(4, +1)) w5s.push_back(explicit_kernel(RepVector(6), u2, c * structure_map(u2)));
  return {detail::make_row("W7 su(4)", displayed::w7_su4_basis(), std::move(w7)),
          detail::make_row("W5 su(4)", displayed::w5_su4_basis(), std::move(w5)),
          detail::make_row("W5 spin(7)", displayed::w5_spin7_basis(), std::move(w5s))};
}

}  // namespace a3
