#pragma once

// Normal sections of A3 as functions on SU(2), the deformation operator D,
// its kernel, and the second-order obstruction pairing.
//
// A section V = sum_j V_j eta_j is stored by its four real component
// functions. Polynomials are kept as produced (homogeneous, not reduced
// modulo |a|^2 + |b|^2 = 1); comparisons go through canonical().

#include <array>
#include <cstddef>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "a3/a3geom.hpp"
#include "a3/group_polynomial.hpp"
#include "a3/linalg.hpp"
#include "a3/su2rep.hpp"

namespace a3 {

using SectionComponents = std::array<GroupPolynomial, 4>;

namespace detail {

inline GroupPolynomial real_part(const GroupPolynomial& f) { return AlgebraicScalar::rational(1, 2) * (f + conj(f)); }

inline GroupPolynomial imag_part(const GroupPolynomial& f) {
  return (AlgebraicScalar::rational(1, 2) * -AlgebraicScalar::i()) * (f - conj(f));
}

}  // namespace detail

class NormalSection {
 public:
  NormalSection() = default;

  // Throws std::invalid_argument unless every component is real on SU(2).
  explicit NormalSection(SectionComponents v) : v_(std::move(v)) {
    for (const auto& f : v_)
      if (!equal_on_group(conj(f), f)) throw std::invalid_argument("NormalSection: components must be real-valued");
  }

  // V1 + i V2 = c1, V3 - i V4 = c2.
  static NormalSection from_complex(const GroupPolynomial& c1, const GroupPolynomial& c2) {
    return trusted({detail::real_part(c1), detail::imag_part(c1), detail::real_part(c2), -detail::imag_part(c2)});
  }

  // Caller guarantees reality.
  static NormalSection trusted(SectionComponents v) {
    NormalSection s;
    s.v_ = std::move(v);
    return s;
  }

  static NormalSection eta(int j, const AlgebraicScalar& s = 1) {
    detail::check_normal_index(j);
    if (!s.is_real()) throw std::invalid_argument("NormalSection::eta: coefficient must be real");
    NormalSection v;
    v.v_[static_cast<std::size_t>(j)] = GroupPolynomial(s);
    return v;
  }

  const SectionComponents& components() const { return v_; }
  const GroupPolynomial& component(int j) const {
    detail::check_normal_index(j);
    return v_[static_cast<std::size_t>(j)];
  }

  GroupPolynomial first_complex() const { return v_[0] + AlgebraicScalar::i() * v_[1]; }
  GroupPolynomial second_complex() const { return v_[2] - AlgebraicScalar::i() * v_[3]; }

  bool is_zero() const {
    for (const auto& f : v_)
      if (!vanishes_on_group(f)) return false;
    return true;
  }

  NormalSection canonical_form() const {
    NormalSection s;
    for (std::size_t j = 0; j < 4; ++j) s.v_[j] = canonical(v_[j]);
    return s;
  }

  friend NormalSection operator+(NormalSection x, const NormalSection& y) {
    for (std::size_t j = 0; j < 4; ++j) x.v_[j] += y.v_[j];
    return x;
  }
  friend NormalSection operator-(NormalSection x, const NormalSection& y) {
    for (std::size_t j = 0; j < 4; ++j) x.v_[j] -= y.v_[j];
    return x;
  }
  friend NormalSection operator*(const AlgebraicScalar& s, NormalSection x) {
    if (!s.is_real()) throw std::invalid_argument("NormalSection: scalars must be real");
    for (auto& f : x.v_) f = s * f;
    return x;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j) out += ", ";
      out += "V" + std::to_string(j + 1) + " = " + canonical(v_[j]).to_string();
    }
    return out;
  }

 private:
  SectionComponents v_;
};

inline bool equal_on_group(const NormalSection& x, const NormalSection& y) { return (x - y).is_zero(); }

// <V, W> in L^2(A3), with the normalized Haar measure.
inline AlgebraicScalar l2_inner(const NormalSection& v, const NormalSection& w) {
  AlgebraicScalar s;
  for (int j = 0; j < 4; ++j) s += haar_pairing(v.component(j), w.component(j));
  return s.real_part();
}

// ---------------------------------------------------------------------------
// The operator D.

namespace detail {

inline const ConnectionTables& tables() {
  static const ConnectionTables t = compute_connection_tables();
  return t;
}

inline const std::array<LieDerivation, 3>& frame() {
  static const std::array<LieDerivation, 3> e{frame_generator(0), frame_generator(1), frame_generator(2)};
  return e;
}

// sum_k c_k f_k with the normal-frame coefficients c.
inline void accumulate(SectionComponents& out, const NormalCoefficients& c, const GroupPolynomial& f) {
  if (f.is_zero()) return;
  for (std::size_t k = 0; k < 4; ++k)
    if (!c[k].is_zero()) out[k] += c[k] * f;
}

// Components of nabla-perp_{e_i} V.
inline SectionComponents normal_derivative(int i, const SectionComponents& v) {
  const auto ii = static_cast<std::size_t>(i);
  SectionComponents out;
  for (std::size_t j = 0; j < 4; ++j) {
    out[j] += frame()[ii](v[j]);
    accumulate(out, tables().nabla_perp[ii][j], v[j]);
  }
  return out;
}

// e_i x W for W normal.
inline SectionComponents cross_tangent(int i, const SectionComponents& w) {
  SectionComponents out;
  for (std::size_t j = 0; j < 4; ++j) accumulate(out, tables().cross[static_cast<std::size_t>(i)][j], w[j]);
  return out;
}

inline void add_to(SectionComponents& acc, const SectionComponents& x, const AlgebraicScalar& s = 1) {
  for (std::size_t j = 0; j < 4; ++j)
    if (!x[j].is_zero()) acc[j] += s * x[j];
}

// D on arbitrary (possibly complex) component functions; real-linear, and
// its complex-linear extension on complex input.
inline SectionComponents apply_D(const SectionComponents& v) {
  SectionComponents out = v;
  for (int i = 0; i < 3; ++i) add_to(out, cross_tangent(i, normal_derivative(i, v)));
  return out;
}

}  // namespace detail

// D V = sum_i e_i x nabla-perp_{e_i} V + V.
inline NormalSection apply_D_geometric(const NormalSection& v) {
  return NormalSection::trusted(detail::apply_D(v.components()));
}

struct ComplexPair {
  GroupPolynomial first;
  GroupPolynomial second;
};

namespace detail {

// The first-order system in V1 = v1 + i v2, V2 = v3 - i v4.
inline ComplexPair apply_D_complex(const GroupPolynomial& c1, const GroupPolynomial& c2) {
  const AlgebraicScalar I = AlgebraicScalar::i();
  const auto& e = frame();
  const LieDerivation lower = (-I) * e[0] + e[1];  // -i e1 + e2
  const LieDerivation raise = I * e[0] + e[1];     // i e1 + e2
  ComplexPair p;
  p.first = (I * e[2])(c1) - AlgebraicScalar::rational(8, 7) * c1 + lower(c2);
  p.second = -raise(c1) - (I * e[2])(c2) + AlgebraicScalar(4) * c2;
  return p;
}

}  // namespace detail

inline ComplexPair apply_D_pde(const NormalSection& v) {
  return detail::apply_D_complex(v.first_complex(), v.second_complex());
}

// (V1 + i V2, V3 - i V4); pack(apply_D_geometric(V)) == apply_D_pde(V).
inline ComplexPair pack(const NormalSection& v) { return {v.first_complex(), v.second_complex()}; }

inline bool in_kernel(const NormalSection& v) { return apply_D_geometric(v).is_zero(); }

// ---------------------------------------------------------------------------
// Kernel: explicit parameterization.

struct KernelParameters {
  RepVector u1{6};
  RepVector u2{4};
  RepVector u3{4};
};

inline ComplexPair explicit_kernel_complex(const RepVector& u1, const RepVector& u2, const RepVector& u3) {
  if (u1.level() != 6 || u2.level() != 4 || u3.level() != 4)
    throw std::invalid_argument("explicit_kernel: expected u1 in V6 and u2, u3 in V4");
  const AlgebraicScalar I = AlgebraicScalar::i();
  ComplexPair p;
  p.first = (-I * AlgebraicScalar::sqrt(Rational(7, 10))) * matrix_coefficient(6, 5, u1) -
            (AlgebraicScalar(2) * I * AlgebraicScalar::sqrt(Rational(7, 6))) * matrix_coefficient(4, 3, u2);
  p.second = matrix_coefficient(6, 4, u1) + matrix_coefficient(4, 2, u2) + matrix_coefficient(4, 4, u3);
  return p;
}

inline NormalSection explicit_kernel(const RepVector& u1, const RepVector& u2, const RepVector& u3) {
  auto p = explicit_kernel_complex(u1, u2, u3);
  return NormalSection::from_complex(p.first, p.second);
}

inline NormalSection explicit_kernel(const KernelParameters& u) { return explicit_kernel(u.u1, u.u2, u.u3); }

struct KernelBasis {
  std::vector<NormalSection> sections;
  std::vector<KernelParameters> parameters;

  std::size_t size() const { return sections.size(); }
};

// Images of the real basis {v_k, i v_k} of V6 (u1), then V4 (u2), then V4 (u3).
inline KernelBasis kernel_basis() {
  KernelBasis b;
  const AlgebraicScalar I = AlgebraicScalar::i();
  auto add = [&](int slot, int n) {
    for (int k = 0; k <= n; ++k)
      for (const AlgebraicScalar& s : {AlgebraicScalar(1), I}) {
        KernelParameters u;
        RepVector& target = slot == 0 ? u.u1 : slot == 1 ? u.u2 : u.u3;
        target = RepVector::basis(n, k, s);
        b.sections.push_back(explicit_kernel(u));
        b.parameters.push_back(std::move(u));
      }
  };
  add(0, 6);
  add(1, 4);
  add(2, 4);
  return b;
}

// ---------------------------------------------------------------------------
// Subspace comparison through canonical monomial coordinates.

// Real coordinates of the sections: (component, canonical monomial,
// real/imaginary part) for every monomial occurring in any of them.
inline Matrix<AlgebraicScalar> real_coordinates(const std::vector<NormalSection>& s) {
  std::vector<NormalSection> c;
  c.reserve(s.size());
  for (const auto& v : s) c.push_back(v.canonical_form());
  std::map<std::pair<int, std::uint32_t>, std::size_t> index;
  for (const auto& v : c)
    for (int j = 0; j < 4; ++j)
      for (const auto& [key, coeff] : v.component(j).terms()) index.emplace(std::make_pair(j, key), 0);
  std::size_t col = 0;
  for (auto& [key, slot] : index) slot = col++;
  Matrix<AlgebraicScalar> m(c.size(), 2 * index.size());
  for (std::size_t r = 0; r < c.size(); ++r)
    for (int j = 0; j < 4; ++j)
      for (const auto& [key, coeff] : c[r].component(j).terms()) {
        std::size_t at = index.at({j, key});
        m(r, 2 * at) = coeff.real_part();
        m(r, 2 * at + 1) = coeff.imag_part();
      }
  return m;
}

inline std::size_t real_rank(const std::vector<NormalSection>& s) {
  if (s.empty()) return 0;
  return rank(real_coordinates(s));
}

// A maximal real-independent subfamily, in the original order.
inline std::vector<NormalSection> independent_subset(const std::vector<NormalSection>& s) {
  if (s.empty()) return {};
  auto ech = row_reduce(real_coordinates(s).transpose());
  std::vector<NormalSection> out;
  for (auto p : ech.pivots) out.push_back(s[p]);
  return out;
}

inline bool same_real_span(const std::vector<NormalSection>& a, const std::vector<NormalSection>& b) {
  std::vector<NormalSection> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t r = real_rank(both);
  return real_rank(a) == r && real_rank(b) == r;
}

// ---------------------------------------------------------------------------
// Kernel: block solve over Peter-Weyl levels.
//
// Left-invariant derivations move only the first index of the matrix
// coefficient <rho_n(g) v_k, v_l>, so each (n, l) spans a D-invariant block.

struct LevelKernel {
  int level = 0;
  int geometric_dimension = 0;  // real
  int pde_dimension = 0;        // real
  std::vector<int> slot_dimensions;  // complex, geometric route, one per l
};

struct KernelSpectrum {
  int n_max = 0;
  std::vector<LevelKernel> levels;
  std::vector<NormalSection> geometric_basis;
  std::vector<NormalSection> pde_basis;

  int total_dimension() const {
    int d = 0;
    for (const auto& l : levels) d += l.geometric_dimension;
    return d;
  }
  int dimension_at(int n) const {
    for (const auto& l : levels)
      if (l.level == n) return l.geometric_dimension;
    return 0;
  }
};

inline constexpr int kMinimumKernelLevel = 6;
inline constexpr int kDefaultKernelLevel = 10;

namespace detail {

// Coordinates of a polynomial in span_k raw_matrix_coefficient(n, k, l);
// throws std::logic_error if it is not in that span.
inline std::vector<AlgebraicScalar> slot_coordinates(const GroupPolynomial& f, int n, int l) {
  std::vector<AlgebraicScalar> c(static_cast<std::size_t>(n + 1));
  GroupPolynomial rest = f;
  for (int k = 0; k <= n; ++k) {
    const auto& basis = raw_matrix_coefficient(n, k, l);
    const auto& [key, w] = *basis.terms().begin();
    AlgebraicScalar x = f.coefficient(Monomial::from_key(key));
    if (x.is_zero()) continue;
    x /= w;
    c[static_cast<std::size_t>(k)] = x;
    rest -= x * basis;
  }
  if (!rest.is_zero()) throw std::logic_error("slot_coordinates: polynomial leaves the Peter-Weyl block");
  return c;
}

inline GroupPolynomial slot_polynomial(const std::vector<AlgebraicScalar>& c, std::size_t offset, int n, int l) {
  GroupPolynomial f;
  for (int k = 0; k <= n; ++k) {
    const auto& x = c[offset + static_cast<std::size_t>(k)];
    if (!x.is_zero()) f += x * raw_matrix_coefficient(n, k, l);
  }
  return f;
}

// Real sections spanned by a complex solution with the given components.
inline void push_real_sections(std::vector<NormalSection>& out, const SectionComponents& z) {
  SectionComponents re, im;
  for (std::size_t j = 0; j < 4; ++j) {
    re[j] = real_part(z[j]);
    im[j] = imag_part(z[j]);
  }
  out.push_back(NormalSection::trusted(std::move(re)));
  out.push_back(NormalSection::trusted(std::move(im)));
}

// Complex-linear D on the block (n, l): unknowns are the 4(n+1) coefficients
// of the components on raw_matrix_coefficient(n, ., l).
inline std::vector<std::vector<AlgebraicScalar>> geometric_block_kernel(int n, int l) {
  const std::size_t m = static_cast<std::size_t>(n + 1);
  Matrix<AlgebraicScalar> a(4 * m, 4 * m);
  for (std::size_t j = 0; j < 4; ++j)
    for (int k = 0; k <= n; ++k) {
      SectionComponents v;
      v[j] = raw_matrix_coefficient(n, k, l);
      SectionComponents dv = apply_D(v);
      for (std::size_t r = 0; r < 4; ++r) {
        auto c = slot_coordinates(dv[r], n, l);
        for (std::size_t q = 0; q < m; ++q) a(r * m + q, j * m + static_cast<std::size_t>(k)) = c[q];
      }
    }
  return null_space(a);
}

// The first-order system in (V1, V2) on the block (n, l): 2(n+1) unknowns.
inline std::vector<std::vector<AlgebraicScalar>> pde_block_kernel(int n, int l) {
  const std::size_t m = static_cast<std::size_t>(n + 1);
  Matrix<AlgebraicScalar> a(2 * m, 2 * m);
  for (std::size_t j = 0; j < 2; ++j)
    for (int k = 0; k <= n; ++k) {
      GroupPolynomial c1, c2;
      (j == 0 ? c1 : c2) = raw_matrix_coefficient(n, k, l);
      auto p = apply_D_complex(c1, c2);
      auto x1 = slot_coordinates(p.first, n, l), x2 = slot_coordinates(p.second, n, l);
      for (std::size_t q = 0; q < m; ++q) {
        a(q, j * m + static_cast<std::size_t>(k)) = x1[q];
        a(m + q, j * m + static_cast<std::size_t>(k)) = x2[q];
      }
    }
  return null_space(a);
}

}  // namespace detail

// Throws std::invalid_argument for n_max < 6. Throws std::logic_error if the
// two formulations of D disagree on any block.
inline KernelSpectrum kernel_block_solve(int n_max = kDefaultKernelLevel) {
  if (n_max < kMinimumKernelLevel)
    throw std::invalid_argument("kernel_block_solve: n_max must be at least 6, lower cutoffs truncate the kernel");
  KernelSpectrum out;
  out.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    LevelKernel level;
    level.level = n;
    for (int l = 0; l <= n; ++l) {
      auto geo = detail::geometric_block_kernel(n, l);
      for (const auto& x : geo) {
        SectionComponents z;
        for (std::size_t j = 0; j < 4; ++j) z[j] = detail::slot_polynomial(x, j * static_cast<std::size_t>(n + 1), n, l);
        detail::push_real_sections(out.geometric_basis, z);
      }
      auto pde = detail::pde_block_kernel(n, l);
      for (const auto& x : pde) {
        auto c1 = detail::slot_polynomial(x, 0, n, l), c2 = detail::slot_polynomial(x, static_cast<std::size_t>(n + 1), n, l);
        const AlgebraicScalar I = AlgebraicScalar::i();
        out.pde_basis.push_back(NormalSection::from_complex(c1, c2));
        out.pde_basis.push_back(NormalSection::from_complex(I * c1, I * c2));
      }
      if (geo.size() != 2 * pde.size())
        throw std::logic_error("kernel_block_solve: geometric and first-order kernels differ at level " + std::to_string(n));
      level.slot_dimensions.push_back(static_cast<int>(geo.size()));
      level.geometric_dimension += static_cast<int>(geo.size());
      level.pde_dimension += 2 * static_cast<int>(pde.size());
    }
    out.levels.push_back(std::move(level));
  }
  // Real and imaginary parts of the complex solutions span the real kernel twice over.
  out.geometric_basis = independent_subset(out.geometric_basis);
  return out;
}

// ---------------------------------------------------------------------------
// Second derivative of the deformation map and the obstruction pairing.

namespace detail {

inline const std::array<std::array<AlgebraicScalar, 4>, 3>& tangent_normal_products() {
  static const auto g = [] {
    std::array<std::array<AlgebraicScalar, 4>, 3> t;
    const FrameAtPoint f = displayed_frame();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) t[i][j] = real_inner(f.tangent[i], f.normal[j]);
    return t;
  }();
  return g;
}

// Tangent coefficients <V, e_i> of a normal section.
inline std::array<GroupPolynomial, 3> tangent_part(const SectionComponents& v) {
  std::array<GroupPolynomial, 3> a;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!tangent_normal_products()[i][j].is_zero()) a[i] += tangent_normal_products()[i][j] * v[j];
  return a;
}

inline GroupPolynomial inner_pointwise(const SectionComponents& v, const SectionComponents& w) {
  GroupPolynomial s;
  for (std::size_t j = 0; j < 4; ++j) s += v[j] * w[j];
  return s;
}

}  // namespace detail

// sum_i e_i x (R(V, e_i) V)^perp for R(x, y) z = <y, z> x - <x, z> y.
inline NormalSection curvature_term(const NormalSection& v) {
  const auto& comps = v.components();
  const auto along = detail::tangent_part(comps);  // <e_i, V>
  const GroupPolynomial norm2 = detail::inner_pointwise(comps, comps);
  const FrameAtPoint f = displayed_frame();
  SectionComponents out;
  for (int i = 0; i < 3; ++i) {
    SectionComponents r;
    for (std::size_t j = 0; j < 4; ++j) r[j] = along[static_cast<std::size_t>(i)] * comps[j];
    const NormalCoefficients ei_perp = normal_coefficients(f, f.tangent[static_cast<std::size_t>(i)]);
    for (std::size_t j = 0; j < 4; ++j)
      if (!ei_perp[j].is_zero()) r[j] -= ei_perp[j] * norm2;
    detail::add_to(out, detail::cross_tangent(i, r));
  }
  return NormalSection::trusted(std::move(out));
}

// ((nabla_V T) V)^perp + T(V)^T x T(V)^perp - 2 nabla-perp_{T(V)^T} V with
// T = id, which is parallel.
inline NormalSection nearly_parallel_terms(const NormalSection& v) {
  const auto& comps = v.components();
  const auto top = detail::tangent_part(comps);
  SectionComponents out;
  for (int i = 0; i < 3; ++i) {
    const auto& a = top[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    SectionComponents lhs = detail::cross_tangent(i, comps), rhs = detail::normal_derivative(i, comps);
    for (std::size_t j = 0; j < 4; ++j) out[j] += a * lhs[j] - AlgebraicScalar(2) * (a * rhs[j]);
  }
  return NormalSection::trusted(std::move(out));
}

namespace detail {

inline AlgebraicScalar second_derivative_scale() { return AlgebraicScalar::rational(4, 7) * AlgebraicScalar::sqrt(3); }

// The closed complex formulas, valid on ker D.
inline NormalSection second_derivative_complex(const NormalSection& v) {
  const AlgebraicScalar I = AlgebraicScalar::i();
  const auto& e = frame();
  const LieDerivation lower = (-I) * e[0] + e[1];
  const LieDerivation raise = I * e[0] + e[1];
  const LieDerivation e3i = I * e[2];
  const GroupPolynomial c1 = v.first_complex(), c2 = v.second_complex();
  const GroupPolynomial c1bar = conj(c1), c2bar = conj(c2);
  const GroupPolynomial c12 = c1 * c2, c22 = c2 * c2, lower1 = lower(c1);
  GroupPolynomial f1 = -raise(c12) + c2bar * lower1 + e3i(c22) - AlgebraicScalar::rational(24, 7) * c22;
  GroupPolynomial f2 = c1bar * lower1 + AlgebraicScalar::rational(1, 2) * raise(c22) +
                       c2bar * (AlgebraicScalar(2) * e3i(c1) - AlgebraicScalar::rational(48, 7) * c1 - lower(c2));
  const AlgebraicScalar s = second_derivative_scale();
  return NormalSection::from_complex(s * f1, s * f2);
}

// 2 sum_ij <V, Pi(e_i, e_j)> e_i x nabla-perp_{e_j} V plus the curvature and
// nearly parallel terms.
inline NormalSection second_derivative_frame(const NormalSection& v) {
  const auto& comps = v.components();
  const auto& t = tables();
  std::array<SectionComponents, 3> grad;
  for (int j = 0; j < 3; ++j) grad[static_cast<std::size_t>(j)] = normal_derivative(j, comps);
  SectionComponents out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      GroupPolynomial w;
      for (std::size_t k = 0; k < 4; ++k)
        if (!t.second_fundamental[i][j][k].is_zero()) w += t.second_fundamental[i][j][k] * comps[k];
      if (w.is_zero()) continue;
      SectionComponents x = cross_tangent(static_cast<int>(i), grad[j]);
      for (std::size_t k = 0; k < 4; ++k)
        if (!x[k].is_zero()) out[k] += AlgebraicScalar(2) * (w * x[k]);
    }
  return NormalSection::trusted(std::move(out)) + curvature_term(v) + nearly_parallel_terms(v);
}

}  // namespace detail

enum class SecondDerivativePath { complex_formula, frame_formula };

// d^2/dt^2 F(tV) at t = 0 by the requested route. Throws
// std::invalid_argument if V is not in ker D.
inline NormalSection second_derivative_F(const NormalSection& v, SecondDerivativePath path) {
  if (!in_kernel(v)) throw std::invalid_argument("second_derivative_F: V is not in ker D");
  return path == SecondDerivativePath::complex_formula ? detail::second_derivative_complex(v)
                                                       : detail::second_derivative_frame(v);
}

// Both routes; throws std::logic_error if they disagree.
inline NormalSection second_derivative_F(const NormalSection& v) {
  NormalSection a = second_derivative_F(v, SecondDerivativePath::complex_formula);
  NormalSection b = detail::second_derivative_frame(v);
  if (!equal_on_group(a, b)) throw std::logic_error("second_derivative_F: complex and frame formulas disagree");
  return a;
}

// I(V, W) = int V1 V2 conj((-i e1 + e2) W1) + 1/2 V2^2 conj((3i e3 - 8) W1).
inline AlgebraicScalar I_functional(const NormalSection& v, const NormalSection& w) {
  const AlgebraicScalar I = AlgebraicScalar::i();
  const LieDerivation lower = (-I) * frame_generator(0) + frame_generator(1);
  const GroupPolynomial c1 = v.first_complex(), c2 = v.second_complex(), w1 = w.first_complex();
  const GroupPolynomial l1 = lower(w1);
  const GroupPolynomial l2 = (AlgebraicScalar(3) * I * frame_generator(2))(w1) - AlgebraicScalar(8) * w1;
  return haar_pairing(c1 * c2, l1) + AlgebraicScalar::rational(1, 2) * haar_pairing(c2 * c2, l2);
}

inline AlgebraicScalar reduced_pairing(const NormalSection& v, const NormalSection& w) {
  AlgebraicScalar s = I_functional(v, w) + I_functional(v + w, v) - I_functional(v, v) - I_functional(w, v);
  return detail::second_derivative_scale() * s.real_part();
}

struct ObstructionPairing {
  AlgebraicScalar direct;   // <F''(V), W> by Haar integration
  AlgebraicScalar reduced;  // through I
};

// Throws std::invalid_argument for non-kernel input, std::logic_error if the
// two evaluations differ.
inline ObstructionPairing obstruction_pairing(const NormalSection& v, const NormalSection& w,
                                              const NormalSection& second_derivative) {
  if (!in_kernel(w)) throw std::invalid_argument("obstruction_pairing: W is not in ker D");
  ObstructionPairing p{l2_inner(second_derivative, w), reduced_pairing(v, w)};
  if (p.direct != p.reduced) throw std::logic_error("obstruction_pairing: direct and reduced values differ");
  return p;
}

inline ObstructionPairing obstruction_pairing(const NormalSection& v, const NormalSection& w) {
  return obstruction_pairing(v, w, second_derivative_F(v));
}

// Polarization of F'': (F''(V + W) - F''(V) - F''(W)) / 2.
inline NormalSection second_derivative_bilinear(const NormalSection& v, const NormalSection& w, const NormalSection& fv,
                                                const NormalSection& fw) {
  return AlgebraicScalar::rational(1, 2) * (second_derivative_F(v + w, SecondDerivativePath::complex_formula) - fv - fw);
}

// The two cancellations behind I = 0, in units of sqrt(c_{4,4,1}): the
// u2 (x) u3 channel against w1, and the u2 (x) w2* channel against u1*.
struct ChannelCancellation {
  std::vector<AlgebraicScalar> terms;
  AlgebraicScalar sum;
};

inline std::array<ChannelCancellation, 2> cancellation_channels() {
  auto bracket = [](int d, int e, int k) {
    return inner(TensorVector::product(RepVector::basis(4, d), RepVector::basis(4, e)),
                 clebsch_gordan_raw(4, 4, 1, RepVector::basis(6, k)));
  };
  std::array<ChannelCancellation, 2> out;
  out[0].terms = {-bracket(3, 4, 6), bracket(2, 4, 5)};
  out[1].terms = {AlgebraicScalar(2) / AlgebraicScalar::sqrt(10) * bracket(2, 0, 1),
                  -(AlgebraicScalar(4) / AlgebraicScalar::sqrt(6)) * bracket(3, 0, 2), bracket(2, 1, 2)};
  for (auto& c : out)
    for (const auto& t : c.terms) c.sum += t;
  return out;
}

// A real section with a few random matrix-coefficient terms of level <= max_level
// per component and small Gaussian-integer weights. Uses the engine's raw
// output so the sequence is the same on every platform.
inline NormalSection random_section(std::mt19937_64& rng, int max_level, int terms_per_component = 3) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  SectionComponents v;
  for (auto& f : v) {
    for (int t = 0; t < terms_per_component; ++t) {
      const int n = pick(0, max_level), k = pick(0, n), l = pick(0, n);
      const AlgebraicScalar c = AlgebraicScalar(pick(-5, 5)) + AlgebraicScalar::i() * AlgebraicScalar(pick(-5, 5));
      f += c * raw_matrix_coefficient(n, k, l);
    }
    f = AlgebraicScalar(2) * detail::real_part(f);
  }
  return NormalSection::trusted(std::move(v));
}

}  // namespace a3
