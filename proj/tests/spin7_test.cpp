#include <gtest/gtest.h>

#include <random>

#include "a3/spin7.hpp"

using namespace a3;

namespace {

// Coordinates of y in the independent family basis.
std::vector<AlgebraicScalar> coordinates(const std::vector<LieElement>& basis, const LieElement& y) {
  auto x = solve(flatten(basis), flatten({y}).column(0));
  if (!x) throw std::logic_error("coordinates: not in span");
  return *x;
}

// trace of Ad(rho3(g)) on span(basis)
AlgebraicScalar adjoint_trace(const std::vector<LieElement>& basis, const SU2Element& g) {
  const LieElement r = realify(rho3(g));
  const LieElement rinv = r.transpose();
  AlgebraicScalar t;
  for (std::size_t k = 0; k < basis.size(); ++k) t += coordinates(basis, r * basis[k] * rinv)[k];
  return t;
}

Vector column(const LieElement& x, std::size_t c) { return Vector(x.column(c)); }

}  // namespace

TEST(LieAction, DerivationMatchesEvaluationOnBasisQuadruples) {
  const MultiForm phi = model_Phi0();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 3; ++trial) {
    LieElement x(8, 8);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) x(r, c) = AlgebraicScalar(static_cast<long>(rng() % 7) - 3);
    MultiForm d = lie_derivative(x, phi);
    for (unsigned mask = 0; mask < 256; ++mask) {
      if (std::popcount(mask) != 4) continue;
      std::vector<int> idx;
      for (int i = 0; i < 8; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      AlgebraicScalar expected;
      for (std::size_t slot = 0; slot < 4; ++slot) {
        std::vector<Vector> args;
        for (std::size_t k = 0; k < 4; ++k)
          args.push_back(k == slot ? column(x, static_cast<std::size_t>(idx[k])) : Vector::basis(8, idx[k]));
        expected -= eval(phi, std::span<const Vector>(args));
      }
      EXPECT_EQ(d.coefficient(static_cast<MultiForm::Mask>(mask)), expected) << mask;
    }
  }
}

TEST(Spin7, AnnihilatorOfPhi0) {
  const auto s = compute_spin7();
  EXPECT_EQ(s.size(), 21u);
  EXPECT_EQ(span_dimension(s), 21u);
  for (const auto& x : s) {
    EXPECT_TRUE(is_skew(x));
    EXPECT_TRUE(lie_derivative(x, model_Phi0()).is_zero());
  }
  EXPECT_FALSE(in_spin7(so8_basis()[0]));
}

TEST(Spin7, ContainsSu4AndTheDisplayedPieces) {
  const auto su4 = su4_basis();
  EXPECT_EQ(span_dimension(su4), 15u);
  const LieElement J = complex_structure();
  for (const auto& x : su4) {
    EXPECT_TRUE(in_spin7(x));
    EXPECT_EQ(x * J, J * x);
  }
  EXPECT_TRUE(in_spin7(displayed::h0()));
  for (const auto& x : displayed::w5_spin7_basis()) EXPECT_TRUE(in_spin7(x));
  std::vector<LieElement> all = su4;
  all.push_back(displayed::h0());
  for (const auto& x : displayed::w5_spin7_basis()) all.push_back(x);
  EXPECT_TRUE(same_span(all, compute_spin7()));
}

TEST(Spin7, H0IsTheStructureMapOfV3) {
  const LieElement h = displayed::h0();
  LieElement minus_one(8, 8);
  for (std::size_t k = 0; k < 8; ++k) minus_one(k, k) = -1;
  EXPECT_EQ(h * h, minus_one);
  const LieElement J = complex_structure();
  EXPECT_EQ(h * J, scaled(-1, J * h));
  // Columns of H0 against j on the real basis v0, i v0, ..., v3, i v3.
  for (int k = 0; k <= 3; ++k)
    for (const AlgebraicScalar& s : {AlgebraicScalar(1), AlgebraicScalar::i()}) {
      RepVector u = RepVector::basis(3, k, s);
      ComplexVector z(u.coefficients());
      ComplexVector image = detail::apply_real(h, z);
      EXPECT_EQ(image, structure_map(u).coefficients());
      EXPECT_EQ(image, scaled(-1, structure_map_coefficient_rule(u).coefficients()));
    }
}

TEST(Decomposition, Su4SplitsAsThreeSevenFive) {
  auto d = decompose_under_su2(su4_basis());
  EXPECT_EQ(d.dimension, 15);
  EXPECT_EQ(d.multiplicity(3), 1);
  EXPECT_EQ(d.multiplicity(5), 1);
  EXPECT_EQ(d.multiplicity(7), 1);
  EXPECT_TRUE(same_span(d.component(3).basis, displayed::w3_su4_basis()));
  EXPECT_TRUE(same_span(d.component(5).basis, displayed::w5_su4_basis()));
  EXPECT_TRUE(same_span(d.component(7).basis, displayed::w7_su4_basis()));
  std::vector<LieElement> rho{rho3_generators().begin(), rho3_generators().end()};
  EXPECT_TRUE(same_span(rho, displayed::w3_su4_basis()));
  for (const auto& family : {displayed::w3_su4_basis(), displayed::w5_su4_basis(), displayed::w7_su4_basis(),
                             displayed::w5_spin7_basis()})
    EXPECT_NO_THROW(decompose_under_su2(family));
}

TEST(Decomposition, Spin7Multiplicities) {
  auto d = decompose_under_su2(compute_spin7());
  EXPECT_EQ(d.dimension, 21);
  EXPECT_EQ(d.multiplicity(1), 1);
  EXPECT_EQ(d.multiplicity(3), 1);
  EXPECT_EQ(d.multiplicity(5), 2);
  EXPECT_EQ(d.multiplicity(7), 1);
  EXPECT_TRUE(same_span(d.component(1).basis, {displayed::h0()}));
  std::vector<LieElement> w5 = displayed::w5_su4_basis();
  for (const auto& x : displayed::w5_spin7_basis()) w5.push_back(x);
  EXPECT_TRUE(same_span(d.component(5).basis, w5));
  LaurentPolynomial expected = character_real(1) + character_real(3) + 2 * character_real(5) + character_real(7);
  EXPECT_EQ(d.character, expected);
}

TEST(Decomposition, CharacterMatchesTraceOnTheTorus) {
  const auto s = compute_spin7();
  auto d = decompose_under_su2(s);
  for (const auto& [re, im] : {std::pair<long, long>{3, 4}, {5, 12}, {-8, 15}}) {
    const long den = re == 3 ? 5 : re == 5 ? 13 : 17;
    const AlgebraicScalar a = AlgebraicScalar(fraction(re, den)) + AlgebraicScalar::i() * AlgebraicScalar(fraction(im, den));
    AlgebraicScalar chi;
    for (const auto& [w, c] : d.character.coefficients()) {
      AlgebraicScalar p = 1;
      const AlgebraicScalar base = w >= 0 ? a : a.conj();
      for (int k = 0; k < std::abs(w); ++k) p *= base;
      chi += AlgebraicScalar(Rational(c)) * p;
    }
    EXPECT_EQ(adjoint_trace(s, SU2Element(a, 0)), chi);
  }
}

TEST(Decomposition, RejectsNonInvariantInput) {
  EXPECT_THROW(decompose_under_su2({so8_basis()[0]}), std::invalid_argument);
  EXPECT_THROW(decompose_under_su2({displayed::witness_w5_spin7()}), std::invalid_argument);
}

TEST(Stabilizer, FourDimensionalAndCertified) {
  auto st = stabilizer_of_A3();
  EXPECT_TRUE(st.certified);
  EXPECT_EQ(st.basis.size(), 4u);
  std::vector<LieElement> expected = displayed::w3_su4_basis();
  expected.push_back(displayed::h0());
  EXPECT_TRUE(same_span(st.basis, expected));
  EXPECT_TRUE(in_span(st.basis, rho3_generators()[2]));
  // The condition at points never used in the sampling.
  for (const auto& g : {SU2Element::from_rational_point(fraction(5, 3), fraction(-1, 4), fraction(2, 7)),
                        SU2Element::from_rational_point(fraction(-2, 1), fraction(3, 1), fraction(1, 5))}) {
    const FrameAtPoint f = frames_at(g);
    for (const auto& x : st.basis)
      for (const auto& eta : f.normal) EXPECT_TRUE(real_inner(detail::apply_real(x, f.point), eta).is_zero());
  }
}

TEST(Stabilizer, Witnesses) {
  const FrameAtPoint f = displayed_frame();
  const AlgebraicScalar s2 = AlgebraicScalar::sqrt(Rational(1, 2));
  EXPECT_EQ(to_real8(f.point), Vector({0, 0, s2, 0, 0, s2, 0, 0}));
  const AlgebraicScalar s42 = AlgebraicScalar::sqrt(Rational(1, 42)), r3 = AlgebraicScalar::sqrt(3);
  EXPECT_EQ(to_real8(f.normal[3]), s42 * Vector({-2 * r3, 0, 0, 3, -3, 0, 0, 2 * r3}));
  const ComplexVector zp = detail::apply_real(displayed::witness_w5_spin7(), f.point);
  EXPECT_EQ(to_real8(zp), Vector({-s2, 0, 0, 0, 0, 0, 0, s2}));
  EXPECT_EQ(real_inner(zp, f.normal[3]), AlgebraicScalar(2) / AlgebraicScalar::sqrt(7));
  EXPECT_EQ(real_inner(detail::apply_real(displayed::witness_w5_su4(), f.point), f.normal[0]), AlgebraicScalar(1));
  EXPECT_EQ(real_inner(detail::apply_real(displayed::witness_w7_su4(), f.point), f.normal[0]), AlgebraicScalar(1));
  const Vector h0p = to_real8(detail::apply_real(displayed::h0(), f.point));
  EXPECT_EQ(h0p, Vector({0, 0, 0, s2, s2, 0, 0, 0}));
  EXPECT_EQ(h0p, to_real8(detail::apply_real(rho3_generators()[2], f.point)));
}

TEST(TrivialDeformations, SeventeenDimensionalInsideKernel) {
  auto t = trivial_deformations();
  EXPECT_EQ(t.sections.size(), 21u);
  EXPECT_EQ(t.dimension, 17u);
  EXPECT_EQ(t.kernel.size(), 4u);
  EXPECT_TRUE(same_span(t.kernel, stabilizer_of_A3().basis));
  for (const auto& v : t.sections) EXPECT_TRUE(in_kernel(v));
  std::vector<NormalSection> both = kernel_basis().sections;
  both.insert(both.end(), t.sections.begin(), t.sections.end());
  EXPECT_EQ(real_rank(both), 34u);
  // rho3(g) p0 and its variation are real.
  EXPECT_NO_THROW(NormalSection(t.sections[3].components()));
}

TEST(TrivialDeformations, TableRows) {
  auto rows = trivial_deformation_table();
  ASSERT_EQ(rows.size(), 3u);
  const std::array<std::size_t, 3> dims{7, 5, 5};
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(rows[k].image_dimension, dims[k]) << rows[k].summand;
    EXPECT_EQ(rows[k].predicted_dimension, dims[k]) << rows[k].summand;
    EXPECT_TRUE(rows[k].image_inside_prediction) << rows[k].summand;
    EXPECT_TRUE(rows[k].equal) << rows[k].summand;
  }
}
