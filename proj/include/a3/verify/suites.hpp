#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>

#include "a3/a3geom.hpp"
#include "a3/deform.hpp"
#include "a3/exterior.hpp"
#include "a3/haar_quadrature.hpp"
#include "a3/spin7.hpp"
#include "a3/su2rep.hpp"
#include "a3/verify/report.hpp"

namespace a3::verify {

enum class CheckKind {
  exact,     // residual must be literally 0
  numeric,   // compared against a fixed numerical threshold in every mode
  floating,  // cross-check run only in float mode, against the configured tolerance
};

struct Outcome {
  bool ok = false;
  double residual = 0;
  std::string detail;
};

// Shared across the checks of one run; heavy objects are built on first use.
class Context {
 public:
  explicit Context(const RunConfig& c) : config(c) {}

  const RunConfig& config;

  const KernelSpectrum& spectrum() {
    if (!spectrum_) spectrum_ = kernel_block_solve(config.n_max);
    return *spectrum_;
  }
  const KernelBasis& basis() {
    if (!basis_) basis_ = kernel_basis();
    return *basis_;
  }
  const std::vector<NormalSection>& second_derivatives() {
    if (!second_) {
      second_.emplace();
      for (const auto& v : basis().sections) second_->push_back(second_derivative_F(v));
    }
    return *second_;
  }

 private:
  std::optional<KernelSpectrum> spectrum_;
  std::optional<KernelBasis> basis_;
  std::optional<std::vector<NormalSection>> second_;
};

struct Check {
  std::string id;
  std::string suite;
  CheckKind kind;
  std::string citation;
  std::function<Outcome(Context&)> run;
};

namespace detail {

inline double magnitude(const AlgebraicScalar& x) { return std::abs(x.to_complex()); }

inline Outcome exact_outcome(bool ok, std::string detail, double discrepancy = 1) {
  return {ok, ok ? 0 : discrepancy, std::move(detail)};
}

inline Vector random_rational_vector(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<long> c(-9, 9);
  Vector v(dim);
  for (int k = 0; k < dim; ++k) v[static_cast<std::size_t>(k)] = AlgebraicScalar(c(rng));
  return v;
}

inline RepVector random_rep_vector(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> c(-6, 6);
  RepVector u(n);
  for (int k = 0; k <= n; ++k) u.at(k) = AlgebraicScalar(GaussianRational(c(rng), c(rng)));
  return u;
}

inline std::vector<SU2Element> orbit_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> c(-6, 6);
  std::uniform_int_distribution<long> d(1, 5);
  std::vector<SU2Element> out;
  for (int k = 0; k < count; ++k)
    out.push_back(SU2Element::from_rational_point(fraction(c(rng), d(rng)), fraction(c(rng), d(rng)),
                                                  fraction(c(rng), d(rng))));
  return out;
}

// alpha_{4,4,1}(v_k), k = 0..6, up to one common constant; the k = 4 entry is
// sqrt3 v1^v4 + sqrt2 v2^v3, the only weight-consistent reading.
inline std::vector<TensorVector> alpha_table() {
  auto w = [](int d, int e) { return wedge_basis(4, d, e); };
  const AlgebraicScalar r2 = AlgebraicScalar::sqrt(2), r3 = AlgebraicScalar::sqrt(3), r5 = AlgebraicScalar::sqrt(5);
  return {r5 * w(0, 1),
          r5 * w(0, 2),
          r3 * w(0, 3) + r2 * w(1, 2),
          w(0, 4) + AlgebraicScalar(2) * w(1, 3),
          r3 * w(1, 4) + r2 * w(2, 3),
          r5 * w(2, 4),
          r5 * w(3, 4)};
}

inline std::vector<NormalSection> level_six_sections() {
  std::vector<NormalSection> out;
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l)
        for (std::size_t j = 0; j < 4; ++j)
          for (bool imaginary : {false, true}) {
            SectionComponents c;
            const auto& m = raw_matrix_coefficient(n, k, l);
            c[j] = imaginary ? a3::detail::imag_part(m) : a3::detail::real_part(m);
            out.push_back(NormalSection::trusted(c));
          }
  return out;
}

inline std::string count_detail(std::size_t passed, std::size_t total, const std::string& what) {
  return std::to_string(passed) + "/" + std::to_string(total) + " " + what;
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"scalar", "exterior", "su2rep", "a3geom", "deform", "obstruction", "spin7"};
  return names;
}

inline std::vector<Check> scalar_checks() {
  using S = AlgebraicScalar;
  return {
      {"scalar.radical_arithmetic", "scalar", CheckKind::exact, "exact field with i and square roots of 2, 3, 5, 7",
       [](Context&) {
         const S r2 = S::sqrt(2), r3 = S::sqrt(3), r5 = S::sqrt(5), r7 = S::sqrt(7);
         bool ok = r2 * r3 == S::sqrt(6) && r5 * r7 * r2 == S::sqrt(70) && S::sqrt(fraction(1, 42)) * S::sqrt(42) == S(1) &&
                   (r2 + r3).inverse() * (r2 + r3) == S(1) && S::i() * S::i() == S(-1);
         return detail::exact_outcome(ok, "products, inverses and i^2 reduce exactly");
       }},
      {"scalar.float_homomorphism", "scalar", CheckKind::floating, "exact field with i and square roots of 2, 3, 5, 7",
       [](Context& ctx) {
         std::mt19937_64 rng(ctx.config.seed);
         std::uniform_int_distribution<long> c(-9, 9);
         double worst = 0;
         for (int t = 0; t < 50; ++t) {
           S x = S(c(rng)) * S::sqrt(2) + S(fraction(c(rng), 7)) * S::sqrt(15) + S::i() * S(c(rng)) * S::sqrt(35);
           S y = S(c(rng)) + S(c(rng)) * S::sqrt(105) + S::i() * S(c(rng));
           worst = std::max(worst, std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()));
         }
         return Outcome{worst <= ctx.config.tolerance, worst, "max |float(xy) - float(x)float(y)| over 50 seeded pairs"};
       }},
  };
}

inline std::vector<Check> exterior_checks() {
  return {
      {"exterior.phi0_squared", "exterior", CheckKind::exact, "Spin(7) four-form: Phi0 ^ Phi0 = 14 vol8",
       [](Context&) {
         const MultiForm Phi = model_Phi0();
         bool ok = wedge(Phi, Phi) == AlgebraicScalar(14) * volume_form(8);
         return detail::exact_outcome(ok, "Phi0 ^ Phi0 compared with 14 vol8");
       }},
      {"exterior.metric_from_phi", "exterior", CheckKind::exact,
       "G2 metric identity: (v1 _| phi0) ^ (v2 _| phi0) ^ phi0 = 6 g0(v1, v2) vol7",
       [](Context& ctx) {
         std::mt19937_64 rng(ctx.config.seed);
         const MultiForm phi = model_phi0();
         std::size_t good = 0;
         for (int t = 0; t < 50; ++t) {
           Vector v1 = detail::random_rational_vector(rng, 7), v2 = detail::random_rational_vector(rng, 7);
           if (wedge(wedge(interior(v1, phi), interior(v2, phi)), phi) == AlgebraicScalar(6) * dot(v1, v2) * volume_form(7))
             ++good;
         }
         return detail::exact_outcome(good == 50, detail::count_detail(good, 50, "seeded pairs"));
       }},
      {"exterior.chi_cross_relation", "exterior", CheckKind::exact, "chi and the G2 cross product on R^7",
       [](Context&) {
         // chi(x, y, z) = 0 when z = x * y for orthonormal basis pairs
         std::size_t good = 0, total = 0;
         for (int a = 0; a < 7; ++a)
           for (int b = a + 1; b < 7; ++b) {
             Vector x = Vector::basis(7, a), y = Vector::basis(7, b);
             ++total;
             if (chi7(x, y, cross7(x, y)).is_zero() && norm_squared(cross7(x, y)) == AlgebraicScalar(1)) ++good;
           }
         return detail::exact_outcome(good == total, detail::count_detail(good, total, "basis pairs span associative planes"));
       }},
  };
}

inline std::vector<Check> su2rep_checks() {
  return {
      {"su2rep.haar_oracle", "su2rep", CheckKind::numeric, "Haar integrals of monomials on SU(2)",
       [](Context&) {
         double worst = 0;
         std::size_t count = 0;
         for (int p = 0; p <= 16; ++p)
           for (int q = 0; p + q <= 16; ++q)
             for (int r = 0; p + q + r <= 16; ++r)
               for (int s = 0; p + q + r + s <= 16; ++s) {
                 Monomial m{p, q, r, s};
                 const double exact = haar_monomial(m).get_d();
                 const std::complex<double> num = quadrature_monomial(m);
                 const double err = exact == 0 ? std::abs(num) : std::abs(num - exact) / exact;
                 worst = std::max(worst, err);
                 ++count;
               }
         return Outcome{worst <= 1e-8, worst,
                        std::to_string(count) + " monomials of degree <= 16; max error (relative, absolute at 0) <= 1e-8"};
       }},
      {"su2rep.haar_pairing_quadrature", "su2rep", CheckKind::floating, "Peter-Weyl orthogonality of matrix coefficients",
       [](Context& ctx) {
         double worst = 0;
         for (int n = 0; n <= 4; ++n)
           for (int k = 0; k <= n; ++k)
             for (int l = 0; l <= n; ++l) {
               const GroupPolynomial f = matrix_coefficient(n, k, l);
               const GroupPolynomial g = matrix_coefficient(n, n - k, l);
               for (const GroupPolynomial* h : {&f, &g}) {
                 const std::complex<double> num = quadrature_integrate(f * conj(*h));
                 worst = std::max(worst, std::abs(num - haar_pairing(f, *h).to_complex()));
               }
             }
         return Outcome{worst <= ctx.config.tolerance, worst, "quadrature vs exact pairings through level 4"};
       }},
      {"su2rep.alpha_table", "su2rep", CheckKind::exact, "explicit Clebsch-Gordan images alpha_{4,4,1}(v_k)",
       [](Context&) {
         const auto table = detail::alpha_table();
         std::optional<AlgebraicScalar> constant;
         std::size_t good = 0;
         for (int k = 0; k <= 6; ++k) {
           const TensorVector img = clebsch_gordan(4, 4, 1, RepVector::basis(6, k));
           const TensorVector& t = table[static_cast<std::size_t>(k)];
           const AlgebraicScalar lambda = inner(t, img) / inner(t, t);
           const bool proportional = img == lambda * t;
           if (!constant) constant = lambda;
           const bool positive = lambda.is_real() && lambda.to_complex().real() > 0;
           if (proportional && positive && lambda == *constant) ++good;
         }
         return detail::exact_outcome(good == 7, detail::count_detail(good, 7, "images share one positive constant ") +
                                                    (constant ? constant->to_string() : "") +
                                                    "; v4 entry read as sqrt3 v1^v4 + sqrt2 v2^v3");
       }},
      {"su2rep.selection_rule", "su2rep", CheckKind::exact, "triple-product selection rule a + b != c + h",
       [](Context& ctx) {
         std::mt19937_64 rng(ctx.config.seed);
         const RepVector p4 = detail::random_rep_vector(rng, 4), q4 = detail::random_rep_vector(rng, 4),
                         p6 = detail::random_rep_vector(rng, 6);
         std::size_t violations = 0, nonzero_allowed = 0, forbidden = 0;
         for (int a = 0; a <= 4; ++a)
           for (int b = 0; b <= 4; ++b)
             for (int c = 0; c <= 6; ++c) {
               auto t = triple_product_integral(RepVector::basis(4, a), p4, RepVector::basis(4, b), q4,
                                                RepVector::basis(6, c), p6);
               if (a + b != c + 1) {
                 ++forbidden;
                 if (!t.value.is_zero()) ++violations;
               } else if (!t.value.is_zero()) {
                 ++nonzero_allowed;
               }
             }
         return detail::exact_outcome(violations == 0 && nonzero_allowed > 0,
                                      std::to_string(forbidden) + " forbidden index triples vanish; " +
                                          std::to_string(nonzero_allowed) + " allowed triples are nonzero");
       }},
      {"su2rep.symmetric_squares", "su2rep", CheckKind::exact, "characters of S^2(V4) and S^2(V6)",
       [](Context&) {
         bool ok = decompose_complex(symmetric_square(character_complex(4))) == std::map<int, int>{{0, 1}, {4, 1}, {8, 1}} &&
                   decompose_complex(symmetric_square(character_complex(6))) ==
                       std::map<int, int>{{0, 1}, {4, 1}, {8, 1}, {12, 1}};
         return detail::exact_outcome(ok, "S^2 V4 = V8 + V4 + V0, S^2 V6 = V12 + V8 + V4 + V0");
       }},
  };
}

inline std::vector<Check> a3geom_checks() {
  return {
      {"a3geom.connection_tables", "a3geom", CheckKind::exact,
       "normal connection, cross products with the normal frame and second fundamental form of A3",
       [](Context&) {
         const ConnectionTables got = compute_connection_tables(), ref = reference_tables();
         std::size_t good = 0;
         for (std::size_t i = 0; i < 3; ++i) {
           for (std::size_t j = 0; j < 4; ++j) {
             good += got.nabla_perp[i][j] == ref.nabla_perp[i][j];
             good += got.cross[i][j] == ref.cross[i][j];
           }
           for (std::size_t j = i; j < 3; ++j) good += got.second_fundamental[i][j] == ref.second_fundamental[i][j];
         }
         return detail::exact_outcome(good == 30, detail::count_detail(good, 30, "entries match (12 + 12 + 6)"));
       }},
      {"a3geom.minimal", "a3geom", CheckKind::exact, "A3 is minimal: trace of the second fundamental form",
       [](Context&) {
         const ConnectionTables t = compute_connection_tables();
         NormalCoefficients trace{};
         for (std::size_t i = 0; i < 3; ++i)
           for (std::size_t k = 0; k < 4; ++k) trace[k] += t.second_fundamental[i][i][k];
         return detail::exact_outcome(trace == NormalCoefficients{}, "sum_i Pi(e_i, e_i) = 0");
       }},
      {"a3geom.chi_vanishes", "a3geom", CheckKind::exact, "A3 is associative: chi(e1, e2, e3) = 0",
       [](Context& ctx) {
         std::vector<SU2Element> points{SU2Element::identity()};
         for (auto& g : detail::orbit_points(20, ctx.config.seed)) points.push_back(g);
         std::size_t good = 0;
         for (const auto& g : points) good += verify_associative(g).chi_vanishes;
         return detail::exact_outcome(good == points.size(), detail::count_detail(good, points.size(), "points (p0 and seeded orbit points)"));
       }},
      {"a3geom.phi_orientation", "a3geom", CheckKind::exact, "A3 is associative: phi(e1, e2, e3) = 1",
       [](Context& ctx) {
         std::vector<SU2Element> points{SU2Element::identity()};
         for (auto& g : detail::orbit_points(20, ctx.config.seed)) points.push_back(g);
         std::size_t good = 0;
         double worst = 0;
         for (const auto& g : points) {
           const AlgebraicScalar phi = verify_associative(g).phi;
           good += phi == AlgebraicScalar(1);
           worst = std::max(worst, detail::magnitude(phi - AlgebraicScalar(1)));
         }
         return Outcome{good == points.size(), good == points.size() ? 0 : worst,
                        detail::count_detail(good, points.size(), "points") +
                            "; phi(e1,e2,e3) = " + verify_associative().phi.to_string() + " at p0"};
       }},
      {"a3geom.frame_cross_relation", "a3geom", CheckKind::exact, "tangent frame relation e_i = e_{i+1} x e_{i+2}",
       [](Context&) {
         const FrameAtPoint f = displayed_frame();
         std::size_t good = 0, flipped = 0;
         for (std::size_t i = 0; i < 3; ++i) {
           auto d = decompose(f, cross_at(f, f.tangent[(i + 1) % 3], f.tangent[(i + 2) % 3]));
           TangentCoefficients e{};
           e[i] = 1;
           TangentCoefficients minus_e{};
           minus_e[i] = -1;
           good += d.tangent == e && d.normal == NormalCoefficients{};
           flipped += d.tangent == minus_e && d.normal == NormalCoefficients{};
         }
         return Outcome{good == 3, good == 3 ? 0.0 : 2.0,
                        detail::count_detail(good, 3, "relations hold") + "; e_i = -e_{i+1} x e_{i+2} holds for " +
                            std::to_string(flipped) + "/3"};
       }},
  };
}

inline std::vector<Check> deform_checks() {
  return {
      {"deform.packaging", "deform", CheckKind::exact, "complex packaging of DV = 0 as a first-order system",
       [](Context&) {
         const auto sections = detail::level_six_sections();
         std::size_t good = 0;
         for (const auto& v : sections) {
           auto packed = pack(apply_D_geometric(v));
           auto pde = apply_D_pde(v);
           good += equal_on_group(packed.first, pde.first) && equal_on_group(packed.second, pde.second);
         }
         return detail::exact_outcome(good == sections.size(),
                                      detail::count_detail(good, sections.size(), "matrix-coefficient sections of level <= 6"));
       }},
      {"deform.self_adjoint", "deform", CheckKind::exact, "D is L2 self-adjoint",
       [](Context& ctx) {
         std::mt19937_64 rng(ctx.config.seed);
         std::size_t good = 0;
         for (int t = 0; t < 20; ++t) {
           NormalSection v = random_section(rng, 6), w = random_section(rng, 6);
           good += l2_inner(apply_D_geometric(v), w) == l2_inner(v, apply_D_geometric(w));
         }
         return detail::exact_outcome(good == 20, detail::count_detail(good, 20, "seeded random pairs"));
       }},
      {"deform.self_adjoint_quadrature", "deform", CheckKind::floating, "D is L2 self-adjoint",
       [](Context& ctx) {
         std::mt19937_64 rng(ctx.config.seed);
         double worst = 0;
         for (int t = 0; t < 5; ++t) {
           NormalSection v = random_section(rng, 4), w = random_section(rng, 4);
           GroupPolynomial lhs = a3::detail::inner_pointwise(apply_D_geometric(v).components(), w.components());
           GroupPolynomial rhs = a3::detail::inner_pointwise(v.components(), apply_D_geometric(w).components());
           worst = std::max(worst, std::abs(quadrature_integrate(lhs) - quadrature_integrate(rhs)));
         }
         return Outcome{worst <= ctx.config.tolerance, worst, "quadrature of <DV, W> - <V, DW> on 5 seeded pairs"};
       }},
      {"deform.kernel_dimension", "deform", CheckKind::exact, "ker D is 34-dimensional",
       [](Context& ctx) {
         const KernelSpectrum& s = ctx.spectrum();
         bool ok = s.total_dimension() == 34 && s.dimension_at(4) == 20 && s.dimension_at(6) == 14;
         for (const auto& l : s.levels) ok = ok && l.geometric_dimension == l.pde_dimension;
         return detail::exact_outcome(ok, "levels <= " + std::to_string(s.n_max) + ": total " +
                                              std::to_string(s.total_dimension()) + ", level 4: " +
                                              std::to_string(s.dimension_at(4)) + ", level 6: " +
                                              std::to_string(s.dimension_at(6)));
       }},
      {"deform.kernel_parameterization", "deform", CheckKind::exact, "ker D parameterized by (u1, u2, u3) in V6 x V4 x V4",
       [](Context& ctx) {
         const auto& b = ctx.basis().sections;
         bool ok = b.size() == 34 && real_rank(b) == 34 && same_real_span(ctx.spectrum().geometric_basis, b);
         return detail::exact_outcome(ok, "span of explicit_kernel over a real basis equals the block-solve kernel");
       }},
  };
}

inline std::vector<Check> obstruction_checks() {
  return {
      {"obstruction.pairing_grid", "obstruction", CheckKind::exact, "A3 is unobstructed to second order",
       [](Context& ctx) {
         const auto& b = ctx.basis().sections;
         const auto& f = ctx.second_derivatives();
         std::size_t nonzero = 0, mismatched = 0;
         double worst = 0;
         for (std::size_t a = 0; a < b.size(); ++a)
           for (std::size_t c = 0; c < b.size(); ++c) {
             auto p = obstruction_pairing(b[a], b[c], f[a]);
             if (!p.direct.is_zero()) {
               ++nonzero;
               worst = std::max(worst, detail::magnitude(p.direct));
             }
             mismatched += p.direct != p.reduced;
           }
         const std::string grid = std::to_string(b.size()) + "x" + std::to_string(b.size());
         return Outcome{nonzero == 0 && mismatched == 0, worst,
                        grid + " grid, max |residual| = " + format_decimal(worst) + ", " + std::to_string(nonzero) +
                            " nonzero entries"};
       }},
      {"obstruction.reduction_agrees", "obstruction", CheckKind::exact, "L2 reduction of the obstruction pairing",
       [](Context& ctx) {
         const auto& b = ctx.basis().sections;
         const auto& f = ctx.second_derivatives();
         std::size_t good = 0;
         for (std::size_t a = 0; a < b.size(); ++a)
           for (std::size_t c = 0; c < b.size(); ++c) good += l2_inner(f[a], b[c]) == reduced_pairing(b[a], b[c]);
         return detail::exact_outcome(good == b.size() * b.size(), detail::count_detail(good, b.size() * b.size(), "pairs agree"));
       }},
      {"obstruction.I_functional", "obstruction", CheckKind::exact, "I(V, W) = 0 on ker D",
       [](Context& ctx) {
         const auto& b = ctx.basis().sections;
         std::size_t good = 0;
         for (const auto& v : b)
           for (const auto& w : b) good += I_functional(v, w).is_zero();
         return detail::exact_outcome(good == b.size() * b.size(), detail::count_detail(good, b.size() * b.size(), "pairs vanish"));
       }},
      {"obstruction.channel_cancellation", "obstruction", CheckKind::exact, "Clebsch-Gordan channel cancellations in I",
       [](Context&) {
         auto ch = cancellation_channels();
         bool ok = ch[0].sum.is_zero() && ch[1].sum.is_zero();
         for (const auto& c : ch)
           for (const auto& t : c.terms) ok = ok && !t.is_zero();
         return detail::exact_outcome(ok, "both channels: nonzero terms summing to 0");
       }},
      {"obstruction.diagonal_quadrature", "obstruction", CheckKind::floating, "A3 is unobstructed to second order",
       [](Context& ctx) {
         const auto& b = ctx.basis().sections;
         const auto& f = ctx.second_derivatives();
         double worst = 0;
         for (std::size_t a = 0; a < b.size(); ++a)
           worst = std::max(worst, std::abs(quadrature_integrate(a3::detail::inner_pointwise(f[a].components(), b[a].components()))));
         return Outcome{worst <= ctx.config.tolerance, worst, "quadrature of <F''(V), V> on the 34 basis sections"};
       }},
  };
}

inline std::vector<Check> spin7_checks() {
  return {
      {"spin7.dimension", "spin7", CheckKind::exact, "spin(7) as the stabilizer of Phi0 in so(8)",
       [](Context&) {
         const auto s = compute_spin7();
         bool ok = s.size() == 21 && span_dimension(s) == 21;
         for (const auto& x : su4_basis()) ok = ok && in_spin7(x);
         return detail::exact_outcome(ok, "dim " + std::to_string(s.size()) + ", contains su(4)");
       }},
      {"spin7.isotypic_multiplicities", "spin7", CheckKind::exact, "spin(7) under rho3: W1 + W3 + 2 W5 + W7",
       [](Context&) {
         auto d = decompose_under_su2(compute_spin7());
         bool ok = d.multiplicity(1) == 1 && d.multiplicity(3) == 1 && d.multiplicity(5) == 2 && d.multiplicity(7) == 1 &&
                   d.components.size() == 4;
         return detail::exact_outcome(ok, "W1:" + std::to_string(d.multiplicity(1)) + " W3:" +
                                              std::to_string(d.multiplicity(3)) + " W5:" + std::to_string(d.multiplicity(5)) +
                                              " W7:" + std::to_string(d.multiplicity(7)));
       }},
      {"spin7.stabilizer", "spin7", CheckKind::exact, "stabilizer of A3 in spin(7) is 4-dimensional",
       [](Context&) {
         auto st = stabilizer_of_A3();
         const FrameAtPoint f = displayed_frame();
         const AlgebraicScalar witness =
             real_inner(a3::detail::apply_real(displayed::witness_w5_spin7(), f.point), f.normal[3]);
         bool ok = st.certified && st.basis.size() == 4 && witness == AlgebraicScalar(2) / AlgebraicScalar::sqrt(7);
         return detail::exact_outcome(ok, "dim " + std::to_string(st.basis.size()) + ", certified after " +
                                              std::to_string(st.samples_used) + " samples, <Z p0, eta4> = " +
                                              witness.to_string());
       }},
      {"spin7.trivial_deformations", "spin7", CheckKind::exact, "trivial deformations form a 17-dimensional subspace of ker D",
       [](Context&) {
         auto t = trivial_deformations();
         bool ok = t.dimension == 17;
         for (const auto& v : t.sections) ok = ok && in_kernel(v);
         return detail::exact_outcome(ok, "dim " + std::to_string(t.dimension) + ", all inside ker D");
       }},
      {"spin7.trivial_deformation_table", "spin7", CheckKind::exact, "images of the spin(7) summands in ker D",
       [](Context&) {
         auto rows = trivial_deformation_table();
         std::size_t good = 0;
         for (const auto& r : rows) good += r.equal;
         return detail::exact_outcome(good == rows.size(), detail::count_detail(good, rows.size(), "rows match"));
       }},
  };
}

inline std::vector<Check> all_checks() {
  std::vector<Check> out;
  for (auto&& group : {scalar_checks(), exterior_checks(), su2rep_checks(), a3geom_checks(), deform_checks(),
                       obstruction_checks(), spin7_checks()})
    out.insert(out.end(), group.begin(), group.end());
  return out;
}

inline std::vector<std::string> selected_suites(const RunConfig& config) {
  if (config.suites.empty()) return suite_names();
  for (const auto& s : config.suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw UsageError("unknown suite '" + s + "'");
  // canonical order, duplicates dropped
  std::vector<std::string> out;
  for (const auto& s : suite_names())
    if (std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end()) out.push_back(s);
  return out;
}

inline Report run(RunConfig config) {
  config.validate();
  config.suites = selected_suites(config);
  Report report{config, {}};
  Context ctx(report.config);
  for (const auto& check : all_checks()) {
    if (std::find(config.suites.begin(), config.suites.end(), check.suite) == config.suites.end()) continue;
    CheckResult r{check.id, check.suite, Status::skipped, "0", 0, check.citation, ""};
    if (check.kind == CheckKind::floating && config.mode != Mode::floating) {
      r.detail = "float cross-check; run with --mode float";
      report.checks.push_back(std::move(r));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = check.run(ctx);
      r.status = o.ok ? Status::pass : Status::fail;
      r.residual = format_decimal(o.residual);
      if (check.kind == CheckKind::exact && o.ok && r.residual != "0") r.status = Status::fail;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.status = Status::fail;
      r.residual = "nan";
      r.detail = std::string("exception: ") + e.what();
    }
    const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
    r.elapsed_ms = config.reproducible ? 0 : took.count();
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace a3::verify
