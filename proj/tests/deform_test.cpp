#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "a3/deform.hpp"

using namespace a3;

namespace {

using cd = std::complex<double>;

cd eval_float(const GroupPolynomial& f, cd a, cd b) {
  cd s = 0;
  for (const auto& [k, c] : f.terms()) {
    Monomial m = Monomial::from_key(k);
    s += float_eval(c) * std::pow(a, m.p) * std::pow(std::conj(a), m.q) * std::pow(b, m.r) * std::pow(std::conj(b), m.s);
  }
  return s;
}

// g exp(t X) for X = x1 E1 + x2 E2 + x3 E3, using X^2 = -|x|^2.
std::pair<cd, cd> flow(cd a, cd b, const std::array<double, 3>& x, double t) {
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const double c = std::cos(r * t), s = std::sin(r * t) / r;
  const cd I(0, 1);
  // exp(tX) = c + s X; X = [[i x3, x1 + i x2], [-x1 + i x2, -i x3]]
  const cd h11 = c + s * I * x[2], h21 = s * (-x[0] + I * x[1]);
  // first column of [[a, -conj b], [b, conj a]] h
  return {a * h11 - std::conj(b) * h21, b * h11 + std::conj(a) * h21};
}

using CVec = std::array<cd, 4>;

CVec rho3_float(cd a, cd b, const ComplexVector& w) {
  static const auto R = rho3_polynomial();
  CVec out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r] += eval_float(R[r][c], a, b) * float_eval(w[c]);
  return out;
}

double real_inner_float(const CVec& x, const CVec& y) {
  double s = 0;
  for (std::size_t j = 0; j < 4; ++j) s += (x[j] * std::conj(y[j])).real();
  return s;
}

// The section as an R^8-valued function on the orbit.
CVec ambient(const NormalSection& v, cd a, cd b) {
  static const FrameAtPoint f = displayed_frame();
  CVec out{};
  for (int j = 0; j < 4; ++j) {
    CVec eta = rho3_float(a, b, f.normal[static_cast<std::size_t>(j)]);
    const double c = eval_float(v.component(j), a, b).real();
    for (std::size_t r = 0; r < 4; ++r) out[r] += c * eta[r];
  }
  return out;
}

// D V at g from central differences of the ambient field, its normal
// projection, and the cross-product table.
std::array<double, 4> D_by_differences(const NormalSection& v, cd a, cd b) {
  static const FrameAtPoint f = displayed_frame();
  const auto cross = reference_tables().cross;
  const double s7 = 1 / std::sqrt(7.0);
  const std::array<std::array<double, 3>, 3> gen{{{s7, 0, 0}, {0, s7, 0}, {0, 0, 1}}};
  const double h = 1e-5;
  std::array<CVec, 4> eta;
  for (int j = 0; j < 4; ++j) eta[static_cast<std::size_t>(j)] = rho3_float(a, b, f.normal[static_cast<std::size_t>(j)]);
  std::array<double, 4> out{};
  for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(j)] = eval_float(v.component(j), a, b).real();
  for (std::size_t i = 0; i < 3; ++i) {
    auto [ap, bp] = flow(a, b, gen[i], h);
    auto [am, bm] = flow(a, b, gen[i], -h);
    CVec plus = ambient(v, ap, bp), minus = ambient(v, am, bm), d{};
    for (std::size_t r = 0; r < 4; ++r) d[r] = (plus[r] - minus[r]) / (2 * h);
    for (std::size_t k = 0; k < 4; ++k) {
      const double nk = real_inner_float(d, eta[k]);
      for (std::size_t m = 0; m < 4; ++m) out[m] += nk * float_eval(cross[i][k][m]).real();
    }
  }
  return out;
}

const KernelBasis& basis() {
  static const KernelBasis b = kernel_basis();
  return b;
}

const std::vector<NormalSection>& second_derivatives() {
  static const std::vector<NormalSection> f = [] {
    std::vector<NormalSection> out;
    for (const auto& v : basis().sections) out.push_back(second_derivative_F(v));
    return out;
  }();
  return f;
}

}  // namespace

TEST(NormalSection, ComplexPairRoundTripAndReality) {
  std::mt19937_64 rng(7);
  NormalSection v = random_section(rng, 4);
  NormalSection w = NormalSection::from_complex(v.first_complex(), v.second_complex());
  EXPECT_TRUE(equal_on_group(v, w));
  for (int j = 0; j < 4; ++j) EXPECT_TRUE(equal_on_group(conj(v.component(j)), v.component(j)));
  EXPECT_THROW(NormalSection({GroupPolynomial::a(), {}, {}, {}}), std::invalid_argument);
  EXPECT_NO_THROW(NormalSection({GroupPolynomial::a() + GroupPolynomial::abar(), {}, {}, {}}));
  EXPECT_THROW(NormalSection::eta(4), std::out_of_range);
  EXPECT_THROW(AlgebraicScalar::i() * v, std::invalid_argument);
  AlgebraicScalar n2 = l2_inner(v, v);
  EXPECT_TRUE(n2.is_rational());
  EXPECT_GT(n2.to_rational(), 0);
}

TEST(OperatorD, ConstantSections) {
  EXPECT_TRUE(equal_on_group(apply_D_geometric(NormalSection::eta(0)), NormalSection::eta(0, AlgebraicScalar::rational(-8, 7))));
  auto p = apply_D_pde(NormalSection::eta(0));
  EXPECT_TRUE(equal_on_group(p.first, GroupPolynomial(AlgebraicScalar::rational(-8, 7))));
  EXPECT_TRUE(p.second.is_zero());
  // V3 = 1 is the constant V2 = 1 of the first-order system.
  auto q = apply_D_pde(NormalSection::eta(2));
  EXPECT_TRUE(q.first.is_zero());
  EXPECT_TRUE(equal_on_group(q.second, GroupPolynomial(4)));
  EXPECT_TRUE(equal_on_group(apply_D_geometric(NormalSection::eta(2)), NormalSection::eta(2, 4)));
}

TEST(OperatorD, PackagingAgreesOnEveryBlockUpToLevelSix) {
  int checked = 0;
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l)
        for (std::size_t j = 0; j < 4; ++j)
          for (bool imaginary : {false, true}) {
            SectionComponents c;
            const auto& m = raw_matrix_coefficient(n, k, l);
            c[j] = imaginary ? detail::imag_part(m) : detail::real_part(m);
            NormalSection v = NormalSection::trusted(c);
            auto packed = pack(apply_D_geometric(v));
            auto pde = apply_D_pde(v);
            ASSERT_TRUE(equal_on_group(packed.first, pde.first)) << n << k << l << j << imaginary;
            ASSERT_TRUE(equal_on_group(packed.second, pde.second)) << n << k << l << j << imaginary;
            ++checked;
          }
  EXPECT_EQ(checked, 1120);
}

TEST(OperatorD, MatchesFiniteDifferencesOfTheAmbientField) {
  std::mt19937_64 rng(11);
  const std::array<std::pair<cd, cd>, 3> points{{{cd(1, 0), cd(0, 0)},
                                                 {cd(0.6, 0.0), cd(0.0, 0.8)},
                                                 {cd(0.5, -0.5), cd(0.5, 0.5)}}};
  for (int trial = 0; trial < 3; ++trial) {
    NormalSection v = random_section(rng, 5);
    NormalSection dv = apply_D_geometric(v);
    for (const auto& [a, b] : points) {
      auto oracle = D_by_differences(v, a, b);
      for (int j = 0; j < 4; ++j)
        EXPECT_NEAR(eval_float(dv.component(j), a, b).real(), oracle[static_cast<std::size_t>(j)], 1e-5) << trial << j;
    }
  }
}

TEST(OperatorD, RealLinearAndSymmetric) {
  std::mt19937_64 rng(20260101);
  const AlgebraicScalar alpha = AlgebraicScalar::rational(3, 2), beta = -AlgebraicScalar::sqrt(2);
  for (int trial = 0; trial < 20; ++trial) {
    NormalSection v = random_section(rng, 6), w = random_section(rng, 6);
    EXPECT_EQ(l2_inner(apply_D_geometric(v), w), l2_inner(v, apply_D_geometric(w))) << trial;
    if (trial < 3) {
      EXPECT_TRUE(equal_on_group(apply_D_geometric(alpha * v + beta * w),
                                 alpha * apply_D_geometric(v) + beta * apply_D_geometric(w)));
    }
  }
}

TEST(Kernel, BlockSolveDimensions) {
  KernelSpectrum s = kernel_block_solve(10);
  EXPECT_EQ(s.total_dimension(), 34);
  for (const auto& level : s.levels) {
    EXPECT_EQ(level.geometric_dimension, level.pde_dimension);
    const int expected = level.level == 4 ? 20 : level.level == 6 ? 14 : 0;
    EXPECT_EQ(level.geometric_dimension, expected) << level.level;
    ASSERT_EQ(level.slot_dimensions.size(), static_cast<std::size_t>(level.level + 1));
    for (int d : level.slot_dimensions) EXPECT_EQ(d, level.level == 4 ? 4 : level.level == 6 ? 2 : 0);
  }
  EXPECT_EQ(s.dimension_at(0), 0);
  EXPECT_EQ(s.geometric_basis.size(), 34u);
  EXPECT_EQ(s.pde_basis.size(), 34u);
  for (const auto& v : s.geometric_basis) EXPECT_TRUE(in_kernel(v));
  EXPECT_TRUE(same_real_span(s.geometric_basis, s.pde_basis));
  EXPECT_EQ(real_rank(s.geometric_basis), 34u);
}

TEST(Kernel, RefusesShortTruncation) {
  EXPECT_THROW(kernel_block_solve(5), std::invalid_argument);
  EXPECT_THROW(kernel_block_solve(-1), std::invalid_argument);
  EXPECT_EQ(kernel_block_solve(6).total_dimension(), 34);
}

TEST(Kernel, ExplicitParameterization) {
  EXPECT_TRUE(explicit_kernel(RepVector(6), RepVector(4), RepVector(4)).is_zero());
  NormalSection v = explicit_kernel(RepVector::basis(6, 5), RepVector(4), RepVector(4));
  EXPECT_FALSE(v.is_zero());
  EXPECT_TRUE(in_kernel(v));
  auto p = apply_D_pde(v);
  EXPECT_TRUE(vanishes_on_group(p.first));
  EXPECT_TRUE(vanishes_on_group(p.second));
  EXPECT_THROW(explicit_kernel(RepVector(4), RepVector(4), RepVector(4)), std::invalid_argument);

  ASSERT_EQ(basis().size(), 34u);
  for (const auto& s : basis().sections) EXPECT_TRUE(in_kernel(s));
  EXPECT_EQ(real_rank(basis().sections), 34u);
  EXPECT_TRUE(same_real_span(basis().sections, kernel_block_solve(10).geometric_basis));

  std::mt19937_64 rng(5);
  NormalSection outside = random_section(rng, 3);
  std::vector<NormalSection> extended = basis().sections;
  extended.push_back(outside);
  EXPECT_EQ(real_rank(extended), 35u);
}

TEST(Kernel, DerivativesOfTheFirstComponent) {
  const AlgebraicScalar I = AlgebraicScalar::i();
  const LieDerivation lower = (-I) * frame_generator(0) + frame_generator(1);
  const LieDerivation e3 = frame_generator(2);
  for (int k = 0; k <= 6; ++k) {
    RepVector w1 = RepVector::basis(6, k, k % 2 ? I : AlgebraicScalar(1));
    RepVector w2 = RepVector::basis(4, k % 5, AlgebraicScalar(2) - I);
    auto c = explicit_kernel_complex(w1, w2, RepVector(4));
    GroupPolynomial expected_lower = AlgebraicScalar(2) * AlgebraicScalar::sqrt(Rational(3, 5)) * matrix_coefficient(6, 6, w1) +
                                     AlgebraicScalar(8) / AlgebraicScalar::sqrt(6) * matrix_coefficient(4, 4, w2);
    GroupPolynomial expected_e3 = -AlgebraicScalar(4) * I * AlgebraicScalar::sqrt(Rational(7, 10)) * matrix_coefficient(6, 5, w1) +
                                  AlgebraicScalar(4) * I * AlgebraicScalar::sqrt(Rational(7, 6)) * matrix_coefficient(4, 3, w2);
    EXPECT_TRUE(equal_on_group(lower(c.first), expected_lower)) << k;
    EXPECT_TRUE(equal_on_group((AlgebraicScalar(3) * I * e3)(c.first) - AlgebraicScalar(8) * c.first, expected_e3)) << k;
  }
}

TEST(SecondDerivative, PathsAgreeAndAreQuadratic) {
  EXPECT_TRUE(second_derivative_F(NormalSection()).is_zero());
  int nonzero = 0;
  for (std::size_t a = 0; a < basis().size(); ++a) {
    const auto& v = basis().sections[a];
    EXPECT_TRUE(equal_on_group(second_derivative_F(v, SecondDerivativePath::complex_formula),
                               second_derivative_F(v, SecondDerivativePath::frame_formula)))
        << a;
    EXPECT_TRUE(curvature_term(v).is_zero());
    EXPECT_TRUE(nearly_parallel_terms(v).is_zero());
    if (!second_derivatives()[a].is_zero()) ++nonzero;
  }
  EXPECT_GT(nonzero, 0);
  const auto& v = basis().sections[3];
  for (const AlgebraicScalar& lambda : {AlgebraicScalar(2), AlgebraicScalar::rational(-1, 3), AlgebraicScalar::sqrt(7)})
    EXPECT_TRUE(equal_on_group(second_derivative_F(lambda * v), (lambda * lambda) * second_derivatives()[3]));
}

TEST(SecondDerivative, RejectsNonKernelInput) {
  EXPECT_THROW(second_derivative_F(NormalSection::eta(0)), std::invalid_argument);
  EXPECT_THROW(obstruction_pairing(NormalSection::eta(1), basis().sections[0]), std::invalid_argument);
  EXPECT_THROW(obstruction_pairing(basis().sections[0], NormalSection::eta(1)), std::invalid_argument);
}

TEST(SecondDerivative, CurvatureTermVanishesForEveryNormalField) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 3; ++k) {
    NormalSection v = random_section(rng, 6);
    EXPECT_TRUE(curvature_term(v).is_zero());
    EXPECT_TRUE(nearly_parallel_terms(v).is_zero());
  }
}

TEST(Obstruction, VanishesOnAllBasisPairs) {
  const auto& b = basis().sections;
  EXPECT_TRUE(obstruction_pairing(NormalSection(), b[0]).direct.is_zero());
  for (std::size_t a = 0; a < b.size(); ++a)
    for (std::size_t c = 0; c < b.size(); ++c) {
      auto p = obstruction_pairing(b[a], b[c], second_derivatives()[a]);
      ASSERT_TRUE(p.direct.is_zero()) << a << "," << c;
      ASSERT_EQ(p.direct, p.reduced);
      ASSERT_TRUE(I_functional(b[a], b[c]).is_zero()) << a << "," << c;
    }
  // Not vacuous: F'' pairs nontrivially with sections outside ker D.
  std::mt19937_64 rng(9);
  bool seen = false;
  for (std::size_t a = 0; a < b.size() && !seen; ++a) seen = !l2_inner(second_derivatives()[a], random_section(rng, 6, 6)).is_zero();
  EXPECT_TRUE(seen);
}

TEST(Obstruction, PolarizedFormVanishesOnAllTriples) {
  const auto& b = basis().sections;
  for (std::size_t x = 0; x < b.size(); ++x)
    for (std::size_t y = x + 1; y < b.size(); ++y) {
      NormalSection mixed = second_derivative_bilinear(b[x], b[y], second_derivatives()[x], second_derivatives()[y]);
      for (std::size_t c = 0; c < b.size(); ++c) ASSERT_TRUE(l2_inner(mixed, b[c]).is_zero()) << x << "," << y << "," << c;
    }
}

TEST(Obstruction, BilinearityOnGeneralCombinations) {
  const auto& b = basis().sections;
  const AlgebraicScalar s = AlgebraicScalar::sqrt(3), t = AlgebraicScalar::rational(-2, 5);
  NormalSection v = s * b[0] + t * b[15] + b[30];
  NormalSection fv = second_derivative_F(v);
  NormalSection expected = (s * s) * second_derivatives()[0] + (t * t) * second_derivatives()[15] + second_derivatives()[30] +
                           (AlgebraicScalar(2) * s * t) * second_derivative_bilinear(b[0], b[15], second_derivatives()[0], second_derivatives()[15]) +
                           (AlgebraicScalar(2) * s) * second_derivative_bilinear(b[0], b[30], second_derivatives()[0], second_derivatives()[30]) +
                           (AlgebraicScalar(2) * t) * second_derivative_bilinear(b[15], b[30], second_derivatives()[15], second_derivatives()[30]);
  EXPECT_TRUE(equal_on_group(fv, expected));
  EXPECT_TRUE(obstruction_pairing(v, b[7] + b[20]).direct.is_zero());
}

TEST(IFunctional, TrivialVanishing) {
  // V2 = 0 on the left, W1 = 0 on the right.
  NormalSection v = NormalSection::from_complex(raw_matrix_coefficient(4, 1, 2), GroupPolynomial());
  NormalSection w = NormalSection::from_complex(GroupPolynomial(), raw_matrix_coefficient(4, 1, 2));
  std::mt19937_64 rng(2);
  EXPECT_TRUE(I_functional(v, random_section(rng, 6)).is_zero());
  EXPECT_TRUE(I_functional(random_section(rng, 6), w).is_zero());
}

TEST(IFunctional, ChannelCancellations) {
  auto c = cancellation_channels();
  const AlgebraicScalar r5 = AlgebraicScalar::sqrt(5);
  ASSERT_EQ(c[0].terms.size(), 2u);
  EXPECT_EQ(c[0].terms[0], -(AlgebraicScalar(24) * r5));
  EXPECT_EQ(c[0].terms[1], AlgebraicScalar(24) * r5);
  EXPECT_TRUE(c[0].sum.is_zero());
  ASSERT_EQ(c[1].terms.size(), 3u);
  EXPECT_EQ(c[1].terms[0], AlgebraicScalar(2) / AlgebraicScalar::sqrt(10) * (AlgebraicScalar(-24) * r5));
  EXPECT_EQ(c[1].terms[1], AlgebraicScalar(4) / AlgebraicScalar::sqrt(6) * (AlgebraicScalar(24) * AlgebraicScalar::sqrt(3)));
  EXPECT_EQ(c[1].terms[2], AlgebraicScalar(-24) * AlgebraicScalar::sqrt(2));
  EXPECT_TRUE(c[1].sum.is_zero());

  // The u2 (x) u3 part of I against w1, by direct integration.
  const AlgebraicScalar I = AlgebraicScalar::i();
  for (int d = 0; d <= 4; ++d)
    for (int e = 0; e <= 4; ++e) {
      NormalSection v2 = explicit_kernel(RepVector(6), RepVector::basis(4, d), RepVector(4));
      NormalSection v3 = explicit_kernel(RepVector(6), RepVector(4), RepVector::basis(4, e, I));
      for (int k = 0; k <= 6; ++k) {
        NormalSection w = explicit_kernel(RepVector::basis(6, k), RepVector(4), RepVector(4));
        EXPECT_TRUE((I_functional(v2 + v3, w) - I_functional(v2, w) - I_functional(v3, w)).is_zero());
      }
    }
}
