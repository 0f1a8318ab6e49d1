#include <gtest/gtest.h>

#include <random>

#include "a3/haar_quadrature.hpp"
#include "a3/su2rep.hpp"

using a3::AlgebraicScalar;
using a3::GroupPolynomial;
using a3::LieDerivation;
using a3::RepVector;
using a3::TensorVector;

namespace {

RepVector random_vector(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> c(-6, 6);
  RepVector u(n);
  for (int k = 0; k <= n; ++k) u.at(k) = AlgebraicScalar(a3::GaussianRational(c(rng), c(rng)));
  return u;
}

a3::SU2Element sample_element(int seed) {
  std::mt19937_64 rng(static_cast<unsigned>(seed));
  std::uniform_int_distribution<long> c(-5, 5);
  std::uniform_int_distribution<long> d(1, 4);
  return a3::SU2Element::from_rational_point(a3::fraction(c(rng), d(rng)), a3::fraction(c(rng), d(rng)),
                                             a3::fraction(c(rng), d(rng)));
}

const AlgebraicScalar I = AlgebraicScalar::i();

}  // namespace

TEST(MatrixCoefficient, LevelOneEntries) {
  EXPECT_EQ(a3::matrix_coefficient(1, 0, RepVector::basis(1, 0)), GroupPolynomial::a());
  EXPECT_EQ(a3::matrix_coefficient(1, 1, RepVector::basis(1, 0)), -GroupPolynomial::bbar());
  EXPECT_TRUE(a3::matrix_coefficient(3, 2, RepVector(3)).is_zero());
  EXPECT_THROW(a3::matrix_coefficient(3, 4, RepVector(3)), std::out_of_range);
  EXPECT_THROW(a3::matrix_coefficient(3, 1, RepVector(2)), std::invalid_argument);
}

TEST(MatrixCoefficient, RepMatrixIsUnitaryAndMultiplicative) {
  auto g = sample_element(1), h = sample_element(2);
  for (int n : {2, 3, 4}) {
    auto A = a3::rep_matrix(n, g), B = a3::rep_matrix(n, h), C = a3::rep_matrix(n, g * h);
    EXPECT_EQ(A * B, C);
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) {
        AlgebraicScalar s;
        for (int x = 0; x <= n; ++x) s += A(x, k) * A(x, l).conj();
        EXPECT_EQ(s, AlgebraicScalar(k == l ? 1 : 0));
      }
  }
}

TEST(Haar, MonomialRuleAgreesWithQuadratureUpToDegreeSixteen) {
  for (int p = 0; p <= 16; ++p)
    for (int q = 0; p + q <= 16; ++q)
      for (int r = 0; p + q + r <= 16; ++r)
        for (int s = 0; p + q + r + s <= 16; ++s) {
          a3::Monomial m{p, q, r, s};
          double exact = a3::haar_monomial(m).get_d();
          std::complex<double> numeric = a3::quadrature_monomial(m);
          double tol = exact == 0 ? 1e-8 : 1e-8 * exact;
          ASSERT_NEAR(numeric.real(), exact, tol) << p << q << r << s;
          ASSERT_NEAR(numeric.imag(), 0.0, 1e-8);
        }
}

TEST(Derivation, LadderAndWeightIdentities) {
  std::mt19937_64 rng(7);
  LieDerivation lower = (-I) * LieDerivation::E1() + LieDerivation::E2();
  LieDerivation raise = I * LieDerivation::E1() + LieDerivation::E2();
  LieDerivation weight = I * LieDerivation::E3();
  for (int n = 0; n <= 8; ++n) {
    RepVector u = random_vector(rng, n);
    for (int k = 0; k <= n; ++k) {
      GroupPolynomial f = a3::matrix_coefficient(n, k, u);
      EXPECT_EQ(weight(f), AlgebraicScalar(static_cast<long>(2 * k - n)) * f);
      GroupPolynomial up = k < n ? 2 * I * AlgebraicScalar::sqrt(static_cast<long>((k + 1) * (n - k))) *
                                       a3::matrix_coefficient(n, k + 1, u)
                                 : GroupPolynomial();
      EXPECT_TRUE(a3::equal_on_group(lower(f), up)) << n << " " << k;
      GroupPolynomial down = k > 0 ? 2 * I * AlgebraicScalar::sqrt(static_cast<long>(k * (n - k + 1))) *
                                         a3::matrix_coefficient(n, k - 1, u)
                                   : GroupPolynomial();
      EXPECT_TRUE(a3::equal_on_group(raise(f), down)) << n << " " << k;
    }
  }
}

TEST(Derivation, LowerAtTopOfLevelSix) {
  std::mt19937_64 rng(8);
  RepVector u = random_vector(rng, 6);
  LieDerivation lower = (-I) * LieDerivation::E1() + LieDerivation::E2();
  EXPECT_TRUE(a3::equal_on_group(lower(a3::matrix_coefficient(6, 5, u)),
                                 2 * I * AlgebraicScalar::sqrt(6) * a3::matrix_coefficient(6, 6, u)));
}

TEST(Derivation, BracketRelations) {
  auto E1 = LieDerivation::E1(), E2 = LieDerivation::E2(), E3 = LieDerivation::E3();
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) {
        const GroupPolynomial& f = a3::raw_matrix_coefficient(n, k, l);
        EXPECT_TRUE(a3::equal_on_group(E1(E2(f)) - E2(E1(f)), AlgebraicScalar(2) * E3(f)));
        EXPECT_TRUE(a3::equal_on_group(E2(E3(f)) - E3(E2(f)), AlgebraicScalar(2) * E1(f)));
        EXPECT_TRUE(a3::equal_on_group(E3(E1(f)) - E1(E3(f)), AlgebraicScalar(2) * E2(f)));
      }
}

TEST(PeterWeyl, OrthogonalityThroughLevelSix) {
  std::vector<std::tuple<int, int, int>> labels;
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) labels.emplace_back(n, k, l);
  for (const auto& [n, k, l] : labels) {
    GroupPolynomial f = a3::matrix_coefficient(n, k, l);
    for (const auto& [n2, k2, l2] : labels) {
      if (std::tie(n2, k2, l2) < std::tie(n, k, l)) continue;
      AlgebraicScalar v = a3::haar_pairing(f, a3::matrix_coefficient(n2, k2, l2));
      bool same = n == n2 && k == k2 && l == l2;
      EXPECT_EQ(v, same ? AlgebraicScalar::rational(1, n + 1) : AlgebraicScalar());
    }
  }
}

TEST(StructureMap, Examples) {
  EXPECT_EQ(a3::structure_map(RepVector::basis(4, 0)), RepVector::basis(4, 4));
  EXPECT_EQ(a3::structure_map(RepVector::basis(3, 0)), RepVector::basis(3, 3, -1));
  std::mt19937_64 rng(9);
  RepVector u = random_vector(rng, 4);
  EXPECT_EQ(a3::structure_map(a3::structure_map(u)), u);
  RepVector w = random_vector(rng, 3);
  EXPECT_EQ(a3::structure_map(a3::structure_map(w)), AlgebraicScalar(-1) * w);
}

TEST(StructureMap, IsAntilinearAndEquivariant) {
  std::mt19937_64 rng(10);
  auto g = sample_element(3);
  for (int n : {3, 4}) {
    RepVector u = random_vector(rng, n);
    EXPECT_EQ(a3::structure_map(I * u), (-I) * a3::structure_map(u));
    EXPECT_EQ(a3::act(g, a3::structure_map(u)), a3::structure_map(a3::act(g, u)));
  }
}

TEST(StructureMap, ConjugateCoefficientIdentity) {
  std::mt19937_64 rng(11);
  EXPECT_TRUE(a3::conjugate_coefficient_identity_check(4, 0, random_vector(rng, 4)));
  EXPECT_TRUE(a3::conjugate_coefficient_identity_check(6, 5, random_vector(rng, 6)));
  using a3::StructureMapConvention;
  for (int n = 0; n <= 6; ++n) {
    RepVector u = random_vector(rng, n);
    for (int k = 0; k <= n; ++k) {
      EXPECT_TRUE(a3::conjugate_coefficient_identity_check(n, k, u, StructureMapConvention::coefficient_rule));
      EXPECT_EQ(a3::conjugate_coefficient_identity_check(n, k, u, StructureMapConvention::substitution), n % 2 == 0);
    }
  }
}

TEST(StructureMap, OddLevelConventionsDiffer) {
  using a3::StructureMapConvention;
  RepVector v = RepVector::basis(3, 0);
  // with the sign (-1)^k only the coefficient rule closes up at odd level;
  // the substituted map satisfies it with (-1)^(n-k) instead
  EXPECT_FALSE(a3::conjugate_coefficient_identity_check(3, 0, v, StructureMapConvention::substitution));
  EXPECT_TRUE(a3::conjugate_coefficient_identity_check(3, 0, v, StructureMapConvention::coefficient_rule));
  EXPECT_EQ(a3::structure_map_coefficient_rule(v), RepVector::basis(3, 3));
  std::mt19937_64 rng(12);
  RepVector u = random_vector(rng, 4);
  EXPECT_EQ(a3::structure_map(u), a3::structure_map_coefficient_rule(u));
}

TEST(ClebschGordan, ExplicitTableAtFourFourOne) {
  // raw images of v_k in V_6, up to the common constant sqrt(c)
  auto w = [](int d, int e) { return a3::wedge_basis(4, d, e); };
  AlgebraicScalar r3 = AlgebraicScalar::sqrt(3), r2 = AlgebraicScalar::sqrt(2), r5 = AlgebraicScalar::sqrt(5);
  std::vector<TensorVector> table = {
      24 * r5 * w(0, 1),
      24 * r5 * w(0, 2),
      AlgebraicScalar(24) * (r3 * w(0, 3) + r2 * w(1, 2)),
      AlgebraicScalar(24) * (w(0, 4) + AlgebraicScalar(2) * w(1, 3)),
      // displayed as sqrt3 v1^v3, which has weight 4 instead of 5
      AlgebraicScalar(24) * (r3 * w(1, 4) + r2 * w(2, 3)),
      24 * r5 * w(2, 4),
      24 * r5 * w(3, 4),
  };
  for (int k = 0; k <= 6; ++k) {
    TensorVector raw = a3::clebsch_gordan_raw(4, 4, 1, RepVector::basis(6, k));
    EXPECT_EQ(raw, table[static_cast<std::size_t>(k)]) << "k = " << k;
  }
  EXPECT_EQ(a3::clebsch_gordan_constant(4, 4, 1), a3::fraction(1, 5760));
}

TEST(ClebschGordan, IsometricEquivariantAndAntisymmetric) {
  std::mt19937_64 rng(13);
  auto g = sample_element(4);
  for (auto [m, n, h] : {std::tuple{4, 4, 1}, std::tuple{6, 6, 3}, std::tuple{2, 3, 1}, std::tuple{4, 2, 2},
                         std::tuple{3, 3, 0}}) {
    int r = m + n - 2 * h;
    RepVector f = random_vector(rng, r), f2 = random_vector(rng, r);
    TensorVector a = a3::clebsch_gordan(m, n, h, f);
    EXPECT_EQ(a3::inner(a, a3::clebsch_gordan(m, n, h, f2)), a3::inner(f, f2));
    EXPECT_EQ(a3::act(g, a), a3::clebsch_gordan(m, n, h, a3::act(g, f)));
    if ((m == 4 && h == 1) || (m == 6 && h == 3)) {
      EXPECT_TRUE(a.is_antisymmetric());
    }
  }
  EXPECT_THROW(a3::clebsch_gordan(2, 2, 3, RepVector(0)), std::out_of_range);
  EXPECT_THROW(a3::clebsch_gordan(2, 2, 1, RepVector(3)), std::invalid_argument);
}

TEST(TripleProduct, SelectionRuleAtFourFourOne) {
  std::mt19937_64 rng(14);
  RepVector p4 = random_vector(rng, 4), q4 = random_vector(rng, 4), p6 = random_vector(rng, 6);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 6; ++c) {
        auto t = a3::triple_product_integral(RepVector::basis(4, a), p4, RepVector::basis(4, b), q4,
                                             RepVector::basis(6, c), p6);
        if (a + b != c + 1) {
          EXPECT_TRUE(t.value.is_zero());
        }
      }
}

TEST(TripleProduct, SquaredCoefficientAndSymmetricVanishing) {
  for (int n = 0; n <= 4; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        GroupPolynomial f = a3::matrix_coefficient(n, i, j);
        EXPECT_EQ(a3::haar_pairing(f, f), AlgebraicScalar::rational(1, n + 1));
      }
  std::mt19937_64 rng(15);
  for (int m : {4, 6}) {
    RepVector u = random_vector(rng, m), up = random_vector(rng, m), uq = random_vector(rng, m);
    RepVector v6 = random_vector(rng, 6), v6p = random_vector(rng, 6);
    EXPECT_TRUE(a3::triple_product_integral(u, up, u, uq, v6, v6p).value.is_zero());
    EXPECT_TRUE(a3::triple_product_integral(up, u, uq, u, v6, v6p).value.is_zero());
  }
  EXPECT_THROW(a3::triple_product_integral(RepVector(4), RepVector(4), RepVector(4), RepVector(4), RepVector(5),
                                           RepVector(5)),
               std::invalid_argument);
}

TEST(Characters, ComplexAndReal) {
  a3::LaurentPolynomial chi4 = a3::character_complex(4);
  for (int e : {-4, -2, 0, 2, 4}) EXPECT_EQ(chi4.coefficient(e), 1);
  EXPECT_EQ(chi4.coefficient(1), 0);
  EXPECT_EQ(a3::character_real(5), chi4);
  EXPECT_EQ(a3::character_real(8), 2 * a3::character_complex(3));
  EXPECT_THROW(a3::character_real(6), std::invalid_argument);
}

TEST(Characters, SymmetricSquares) {
  auto s4 = a3::decompose_complex(a3::symmetric_square(a3::character_complex(4)));
  EXPECT_EQ(s4, (std::map<int, int>{{0, 1}, {4, 1}, {8, 1}}));
  auto s6 = a3::decompose_complex(a3::symmetric_square(a3::character_complex(6)));
  EXPECT_EQ(s6, (std::map<int, int>{{0, 1}, {4, 1}, {8, 1}, {12, 1}}));
  auto w = a3::decompose_real(a3::character_real(7) + a3::character_real(8));
  EXPECT_EQ(w, (std::map<int, int>{{7, 1}, {8, 1}}));
}
