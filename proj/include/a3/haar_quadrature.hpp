#pragma once

// Numerical integration over SU(2) = S^3, independent of the exact monomial
// rule. Hopf angles: a = cos(t) e^{i phi}, b = sin(t) e^{i psi} with
// t in [0, pi/2]; the normalized Haar density is
// 2 sin(t) cos(t) dt dphi dpsi / (4 pi^2).

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "a3/group_polynomial.hpp"

namespace a3 {

using ComplexFunction = std::function<std::complex<double>(std::complex<double>, std::complex<double>)>;

struct QuadratureOptions {
  int angular_points = 64;     // trapezoid nodes per circle; exact for frequencies below this
  unsigned max_depth = 3;      // Gauss-Kronrod bisections in t; the integrands are entire, so a few suffice
  double tolerance = 1e-13;    // relative target in t
};

namespace detail {

template <class F>
std::complex<double> integrate_t(F&& f, const QuadratureOptions& opt) {
  using boost::math::quadrature::gauss_kronrod;
  auto part = [&](bool imag) {
    return gauss_kronrod<double, 31>::integrate(
        [&](double t) {
          std::complex<double> v = f(t);
          return imag ? v.imag() : v.real();
        },
        0.0, std::numbers::pi / 2, opt.max_depth, opt.tolerance);
  };
  return {part(false), part(true)};
}

}  // namespace detail

// Integral of an arbitrary function of (a, b) over SU(2).
inline std::complex<double> quadrature_integrate(const ComplexFunction& f, const QuadratureOptions& opt = {}) {
  const int N = opt.angular_points;
  const double step = 2 * std::numbers::pi / N;
  auto slice = [&](double t) {
    std::complex<double> acc = 0;
    const double c = std::cos(t), s = std::sin(t);
    for (int u = 0; u < N; ++u)
      for (int v = 0; v < N; ++v) {
        std::complex<double> a = std::polar(c, u * step), b = std::polar(s, v * step);
        acc += f(a, b);
      }
    return acc * (2 * s * c / (static_cast<double>(N) * N));
  };
  return detail::integrate_t(slice, opt);
}

// Same measure, specialised to a^p abar^q b^r bbar^s: the integrand
// separates into a t-integral and two circle averages, each still computed
// numerically.
inline std::complex<double> quadrature_monomial(const Monomial& m, const QuadratureOptions& opt = {}) {
  const int N = opt.angular_points;
  const double step = 2 * std::numbers::pi / N;
  auto circle = [&](int k) {
    std::complex<double> acc = 0;
    for (int u = 0; u < N; ++u) acc += std::polar(1.0, k * u * step);
    return acc / static_cast<double>(N);
  };
  std::complex<double> angular = circle(m.p - m.q) * circle(m.r - m.s);
  auto radial = [&](double t) {
    return std::complex<double>(2 * std::pow(std::cos(t), m.p + m.q + 1) * std::pow(std::sin(t), m.r + m.s + 1), 0);
  };
  return angular * detail::integrate_t(radial, opt);
}

inline std::complex<double> quadrature_integrate(const GroupPolynomial& f, const QuadratureOptions& opt = {}) {
  std::complex<double> total = 0;
  for (const auto& [k, c] : f.terms()) total += float_eval(c) * quadrature_monomial(Monomial::from_key(k), opt);
  return total;
}

}  // namespace a3
