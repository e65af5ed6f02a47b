#pragma once

// Reference computations written independently of the library, used as test
// oracles. They rely on Boost quadrature and Boost.Multiprecision only.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <string>

namespace oracle {

using F = boost::multiprecision::cpp_bin_float_50;
using C = std::complex<F>;

inline F pi() { return boost::math::constants::pi<F>(); }

/// Clausen function Cl2(t) = -int_0^t log|2 sin(x/2)| dx. The logarithmic
/// part is integrated in closed form and the remaining analytic integrand
/// log(2 sin(x/2) / x) by adaptive Gauss-Kronrod quadrature.
inline F clausen(F t) {
  const F two_pi = 2 * pi();
  t = t - two_pi * floor(t / two_pi);
  if (t > pi()) return -clausen(two_pi - t);
  if (t == 0 || t == pi()) return F(0);
  const auto smooth = [](F x) {
    if (x == 0) return F(0);
    return log(2 * sin(x / 2) / x);
  };
  const F rest = boost::math::quadrature::gauss_kronrod<F, 31>::integrate(smooth, F(0), t, 10, F("1e-45"));
  return -(t * log(t) - t) - rest;
}

inline F arg(const C& z) { return atan2(z.imag(), z.real()); }

/// Bloch-Wigner D(z) from three Clausen values on the unit circle:
/// 2 D(z) = D(z/zbar) + D((1-1/z)/(1-1/zbar)) + D((1-zbar)/(1-z)).
inline F bloch_wigner(const C& z) {
  const C one(1);
  const C zb = std::conj(z);
  return (clausen(arg(z / zb)) + clausen(arg((one - one / z) / (one - one / zb))) +
          clausen(arg((one - zb) / (one - z)))) /
         2;
}

/// Catalan's constant from the rapidly convergent central-binomial series
/// G = pi/8 log(2 + sqrt 3) + 3/8 sum 1/((2n+1)^2 binom(2n, n)).
inline F catalan() {
  F sum = 0;
  F binom = 1;
  for (int n = 0; n < 200; ++n) {
    if (n > 0) binom = binom * (2 * n) * (2 * n - 1) / (F(n) * n);
    sum += 1 / (F(2 * n + 1) * (2 * n + 1) * binom);
  }
  return pi() / 8 * log(2 + sqrt(F(3))) + 3 * sum / 8;
}

inline F v_oct() { return 4 * catalan(); }
inline F v_tet() { return clausen(pi() / 3); }

inline double to_double(const F& x) { return static_cast<double>(x); }
inline F parse(const std::string& s) { return F(s); }

}  // namespace oracle
