#pragma once

// Continued fractions of real quadratic irrationals, in exact integer
// arithmetic. Used to locate the lattice points closest to the lines where
// the leading terms of the W and P volume-change expansions tie.

#include "topvol/slope.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace topvol {

/// (a + b sqrt(d)) / c with d > 1 squarefree, b != 0, c != 0.
class QuadraticIrrational {
 public:
  QuadraticIrrational(mpz_class a, mpz_class b, mpz_class c, mpz_class d);

  /// (16 + sqrt(130)) / 42, the steeper tie line q = x p.
  static QuadraticIrrational tie_ratio_plus();
  /// (16 - sqrt(130)) / 42, the shallower tie line.
  static QuadraticIrrational tie_ratio_minus();

  const mpz_class& a() const noexcept { return a_; }
  const mpz_class& b() const noexcept { return b_; }
  const mpz_class& c() const noexcept { return c_; }
  const mpz_class& d() const noexcept { return d_; }

  double approximate() const;
  std::string to_string() const;

 private:
  mpz_class a_, b_, c_, d_;
};

struct Convergent {
  mpz_class p;
  mpz_class q;
  std::size_t index = 0;
};

/// First `count` partial quotients a_0; a_1, ..., a_{count-1}.
/// Throws DomainError when count == 0.
std::vector<mpz_class> cf_expand(const QuadraticIrrational& x, std::size_t count);

/// p_i / q_i = <a_0; a_1, ..., a_i> for i < count.
std::vector<Convergent> convergents(const QuadraticIrrational& x, std::size_t count);

/// Pre-period and period of the (eventually periodic) expansion.
struct CfPeriod {
  std::vector<mpz_class> preperiod;
  std::vector<mpz_class> period;
};
CfPeriod cf_period(const QuadraticIrrational& x);

/// Exact three-way comparison of |q1 x - p1| against |q2 x - p2|.
int compare_approximation_error(const QuadraticIrrational& x, const mpz_class& p1, const mpz_class& q1,
                                const mpz_class& p2, const mpz_class& q2);

/// Exact three-way comparison of |q x - p| against 1 / m (m > 0).
int compare_error_to_reciprocal(const QuadraticIrrational& x, const mpz_class& p, const mpz_class& q,
                                const mpz_class& m);

/// Outcome of testing the best-approximation theorem on one fraction p/q:
/// the theorem forbids |q x - p| < |q_i x - p_i| whenever q < q_{i+1}.
struct BestApproxVerdict {
  /// Indices i with q < q_{i+1} that were tested.
  std::vector<std::size_t> checked;
  /// First tested index where p/q beat convergent i, if any. A value here
  /// means an arithmetic bug, not a mathematical counterexample.
  std::optional<std::size_t> violation;
};

/// Tests the fraction s.p / s.q (s.q > 0) against every convergent i whose
/// successor is available in `conv`. Throws DomainError on empty `conv` or
/// s.q <= 0.
BestApproxVerdict best_approx_check(const QuadraticIrrational& x, const Slope& s, const std::vector<Convergent>& conv);

}  // namespace topvol
