#include "topvol/dilog.hpp"

#include "topvol/error.hpp"

#include <array>
#include <mutex>

namespace topvol {

namespace {

constexpr mpfr_prec_t kGuardBits = 24;

// Coefficients a_n = B_n / n! of t / (e^t - 1), exact. Grown on demand and
// shared between threads.
class BernoulliTable {
 public:
  mpq_class coefficient(std::size_t n) {
    std::lock_guard lock(mutex_);
    while (a_.size() <= n) extend();
    return a_[n];
  }

 private:
  void extend() {
    const std::size_t m = a_.size();
    if (m == 0) {
      a_.emplace_back(1);
      inverse_factorial_.emplace_back(1);
      inverse_factorial_.emplace_back(1);
      return;
    }
    // sum_{k=0}^{m} a_k / (m + 1 - k)! = 0
    while (inverse_factorial_.size() <= m + 1) {
      const std::size_t j = inverse_factorial_.size();
      inverse_factorial_.push_back(inverse_factorial_.back() / mpq_class(static_cast<long>(j)));
    }
    mpq_class sum = 0;
    for (std::size_t k = 0; k < m; ++k) {
      sum += a_[k] * inverse_factorial_[m + 1 - k];
    }
    mpq_class next = -sum;
    next.canonicalize();
    a_.push_back(next);
  }

  std::mutex mutex_;
  std::vector<mpq_class> a_;
  std::vector<mpq_class> inverse_factorial_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

Real lift(const Real& x, mpfr_prec_t bits) {
  Real r = Real::with_bits(bits);
  r += x;
  return r;
}

Real epsilon(mpfr_prec_t bits) {
  Real e = Real::with_bits(bits);
  mpfr_set_ui_2exp(e.get(), 1, -static_cast<mpfr_exp_t>(bits), MPFR_RNDN);
  return e;
}

// Li2(w) = sum w^n / n^2, for |w| <= 1/2.
Complex li2_power_series(const Complex& w, mpfr_prec_t bits) {
  const Real eps = epsilon(bits);
  Complex sum{Real::with_bits(bits), Real::with_bits(bits)};
  Complex power = w;
  for (long n = 1; n < 100000; ++n) {
    Complex term = power;
    term.re /= n * n;
    term.im /= n * n;
    sum += term;
    if (abs(term) < eps) break;
    power *= w;
  }
  return sum;
}

// Li2(w) = sum_{n>=0} B_n u^{n+1} / (n+1)!, u = -log(1 - w); valid for |u| < 2 pi.
Complex li2_bernoulli_series(const Complex& w, mpfr_prec_t bits) {
  const Real eps = epsilon(bits);
  const Complex u = -log(1L - w);
  const Complex u2 = u * u;

  Complex sum = u;
  Complex quarter = u2;
  quarter.re /= 4;
  quarter.im /= 4;
  sum -= quarter;

  // u^{2k+1} terms with coefficient a_{2k} / (2k + 1).
  Complex power = u;
  auto& table = bernoulli_table();
  for (std::size_t k = 1; k < 100000; ++k) {
    power *= u2;
    mpq_class c = table.coefficient(2 * k) / mpq_class(static_cast<long>(2 * k + 1));
    c.canonicalize();
    Real coefficient = Real::with_bits(bits);
    mpfr_set_q(coefficient.get(), c.get_mpq_t(), MPFR_RNDN);
    const Complex term = power * coefficient;
    sum += term;
    if (abs(term) < eps) break;
  }
  return sum;
}

Real bloch_wigner_reduced(const Complex& w, mpfr_prec_t bits) {
  const Real r = abs(w);
  const Complex li2 = (r * 2 <= 1L) ? li2_power_series(w, bits) : li2_bernoulli_series(w, bits);
  return li2.im + arg(1L - w) * log(r);
}

}  // namespace

Real bloch_wigner(const Complex& z) {
  if (!z.is_finite()) {
    throw DomainError("Bloch-Wigner dilogarithm: non-finite argument");
  }
  if (z.im.is_zero()) {
    if (z.re.is_zero() || z.re == 1L) {
      throw DomainError("Bloch-Wigner dilogarithm: argument must not be 0 or 1");
    }
    return Real::with_bits(z.bits());
  }

  const mpfr_prec_t bits = z.bits() + kGuardBits;
  const Complex x{lift(z.re, bits), lift(z.im, bits)};

  // Orbit of z under the cross-ratio symmetries, with the sign of D on each.
  const Complex one_minus = 1L - x;
  const std::array<std::pair<Complex, int>, 6> orbit = {{
      {x, +1},
      {1L / x, -1},
      {one_minus, -1},
      {1L / one_minus, +1},
      {x / (x - 1L), -1},
      {1L - 1L / x, +1},
  }};

  // Pick the image in {|w| <= 1, Re w <= 1/2} of least modulus. The region
  // meets every orbit, and there |log(1 - w)| < 1.26 so the Bernoulli series
  // converges at a geometric rate of about 1/25 per term.
  const std::pair<Complex, int>* best = nullptr;
  Real best_modulus = Real::with_bits(bits);
  for (const auto& candidate : orbit) {
    const Real modulus = abs(candidate.first);
    if (modulus > 1L || candidate.first.re * 2 > 1L) continue;
    if (best == nullptr || modulus < best_modulus) {
      best = &candidate;
      best_modulus = modulus;
    }
  }
  if (best == nullptr) {
    // Only reachable through rounding on the region boundary.
    best = &orbit[0];
    for (const auto& candidate : orbit) {
      if (abs(candidate.first) < abs(best->first)) best = &candidate;
    }
  }

  Real value = bloch_wigner_reduced(best->first, bits) * best->second;
  mpfr_prec_round(value.get(), z.bits(), MPFR_RNDN);
  return value;
}

TetShape::TetShape(Complex value, double tolerance) : value_(std::move(value)) {
  if (!value_.is_finite()) {
    throw DegenerateShapeError("tetrahedron shape must be finite");
  }
  if (!(value_.im > Real::from_double(tolerance, Precision{}))) {
    throw DegenerateShapeError("degenerate tetrahedron shape " + value_.significant(12) +
                               ": imaginary part must exceed " + Real::from_double(tolerance).significant(3));
  }
}

Real tet_volume(const TetShape& shape) { return bloch_wigner(shape.value()); }

Real triangulation_volume(std::span<const TetShape> shapes) {
  if (shapes.empty()) {
    throw DomainError("triangulation volume needs at least one tetrahedron");
  }
  Real total = Real::with_bits(shapes.front().value().bits());
  for (const TetShape& shape : shapes) {
    total += tet_volume(shape);
  }
  return total;
}

Real regular_tetrahedron_volume(Precision precision) {
  // e^{i pi/3} = 1/2 + i sqrt(3)/2
  Complex z{Real::from_int(1, precision) / 2L, sqrt(Real::from_int(3, precision)) / 2L};
  return bloch_wigner(z);
}

Real regular_octahedron_volume(Precision precision) {
  Complex i{Real::from_int(0, precision), Real::from_int(1, precision)};
  return bloch_wigner(i) * 4L;
}

}  // namespace topvol
