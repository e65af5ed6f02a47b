#include "topvol/cfrac.hpp"
#include "topvol/error.hpp"

#include <gtest/gtest.h>
#include <mpfr.h>

#include <random>
#include <string>
#include <vector>

using namespace topvol;

namespace {

std::vector<long> as_longs(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

// Partial quotients from a 2000-bit floating value of x, trusted only for
// the leading terms that fit comfortably in the precision.
std::vector<long> float_expansion(long a, long b, long c, long d, std::size_t count) {
  mpfr_t x, t;
  mpfr_inits2(2000, x, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(x, d, MPFR_RNDN);
  mpfr_sqrt(x, x, MPFR_RNDN);
  mpfr_mul_si(x, x, b, MPFR_RNDN);
  mpfr_add_si(x, x, a, MPFR_RNDN);
  mpfr_div_si(x, x, c, MPFR_RNDN);
  std::vector<long> out;
  for (std::size_t i = 0; i < count; ++i) {
    mpfr_floor(t, x);
    out.push_back(mpfr_get_si(t, MPFR_RNDN));
    mpfr_sub(x, x, t, MPFR_RNDN);
    mpfr_si_div(x, 1, x, MPFR_RNDN);
  }
  mpfr_clears(x, t, static_cast<mpfr_ptr>(nullptr));
  return out;
}

// Sign of a + b sqrt(d), computed independently of the library.
int sign_surd(const mpz_class& a, const mpz_class& b, const mpz_class& d) {
  const int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  const mpz_class lhs = a * a, rhs = b * b * d;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

// |q x - p| < 1/m for x = (a + b sqrt d)/c, decided exactly:
// |q a - p c + q b sqrt d| < |c| / m.
bool error_below_reciprocal(const QuadraticIrrational& x, const mpz_class& p, const mpz_class& q,
                            const mpz_class& m) {
  const mpz_class u = q * x.a() - p * x.c();
  const mpz_class v = q * x.b();
  const mpz_class c = abs(x.c());
  // m |u + v sqrt d| < c  <=>  c - m (u + v sqrt d) > 0 and c + m (u + v sqrt d) > 0
  return sign_surd(c - m * u, -m * v, x.d()) > 0 && sign_surd(c + m * u, m * v, x.d()) > 0;
}

}  // namespace

TEST(QuadraticIrrationalType, Validation) {
  EXPECT_THROW(QuadraticIrrational(1, 0, 1, 5), DomainError);
  EXPECT_THROW(QuadraticIrrational(1, 1, 0, 5), DomainError);
  EXPECT_THROW(QuadraticIrrational(1, 1, 1, 4), DomainError);
  EXPECT_THROW(QuadraticIrrational(1, 1, 1, 12), DomainError);
  EXPECT_THROW(QuadraticIrrational(1, 1, 1, 1), DomainError);
  EXPECT_EQ(QuadraticIrrational::tie_ratio_plus().to_string(), "(16 + sqrt(130))/42");
  EXPECT_NEAR(QuadraticIrrational::tie_ratio_plus().approximate(), 0.652423, 1e-6);
  EXPECT_NEAR(QuadraticIrrational::tie_ratio_minus().approximate(), 0.109482, 1e-6);
}

TEST(CfExpand, KnownExpansions) {
  EXPECT_EQ(as_longs(cf_expand(QuadraticIrrational::tie_ratio_plus(), 9)),
            (std::vector<long>{0, 1, 1, 1, 7, 7, 2, 7, 7}));
  EXPECT_EQ(as_longs(cf_expand(QuadraticIrrational::tie_ratio_minus(), 7)),
            (std::vector<long>{0, 9, 7, 2, 7, 7, 2}));
}

TEST(CfExpand, GoldenRatio) {
  EXPECT_EQ(as_longs(cf_expand(QuadraticIrrational(1, 1, 2, 5), 4)), (std::vector<long>{1, 1, 1, 1}));
  EXPECT_THROW(cf_expand(QuadraticIrrational(1, 1, 2, 5), 0), DomainError);
}

TEST(CfExpand, AgreesWithFloatingOracle) {
  struct Case {
    long a, b, c, d;
  };
  const std::vector<Case> cases = {{16, 1, 42, 130}, {16, -1, 42, 130}, {0, 1, 1, 2},   {3, -2, 7, 7},
                                   {-5, 3, -4, 11},  {1, 1, 2, 5},      {-9, -1, 5, 3}, {100, 7, 13, 19}};
  for (const auto& k : cases) {
    const auto exact = as_longs(cf_expand(QuadraticIrrational(k.a, k.b, k.c, k.d), 40));
    EXPECT_EQ(exact, float_expansion(k.a, k.b, k.c, k.d, 40)) << k.a << "," << k.b << "," << k.c << "," << k.d;
  }
}

TEST(Convergents, FirstTerms) {
  const auto c1 = convergents(QuadraticIrrational::tie_ratio_plus(), 4);
  ASSERT_EQ(c1.size(), 4u);
  EXPECT_EQ(c1[0].p, 0);
  EXPECT_EQ(c1[0].q, 1);
  EXPECT_EQ(c1[1].p, 1);
  EXPECT_EQ(c1[1].q, 1);
  EXPECT_EQ(c1[2].p, 1);
  EXPECT_EQ(c1[2].q, 2);
  EXPECT_EQ(c1[3].p, 2);
  EXPECT_EQ(c1[3].q, 3);
  const auto c2 = convergents(QuadraticIrrational::tie_ratio_minus(), 2);
  EXPECT_EQ(c2[1].p, 1);
  EXPECT_EQ(c2[1].q, 9);
  EXPECT_EQ(c2[1].index, 1u);
}

TEST(Convergents, CoprimeIncreasingAndDecreasingError) {
  for (const auto& x : {QuadraticIrrational::tie_ratio_plus(), QuadraticIrrational::tie_ratio_minus()}) {
    const auto conv = convergents(x, 30);
    for (std::size_t i = 0; i < conv.size(); ++i) {
      EXPECT_EQ(gcd(conv[i].p, conv[i].q), 1);
      EXPECT_GT(conv[i].q, 0);
      if (i >= 2) EXPECT_GT(conv[i].q, conv[i - 1].q) << i;
      if (i >= 1) {
        EXPECT_EQ(compare_approximation_error(x, conv[i].p, conv[i].q, conv[i - 1].p, conv[i - 1].q), -1) << i;
      }
    }
  }
}

TEST(Convergents, SandwichAndGrowth) {
  for (const auto& x : {QuadraticIrrational::tie_ratio_plus(), QuadraticIrrational::tie_ratio_minus()}) {
    const auto conv = convergents(x, 23);
    for (std::size_t i = 0; i <= 20; ++i) {
      EXPECT_EQ(compare_error_to_reciprocal(x, conv[i].p, conv[i].q, conv[i + 1].q), -1) << i;
      EXPECT_EQ(compare_error_to_reciprocal(x, conv[i].p, conv[i].q, conv[i + 2].q), 1) << i;
      EXPECT_TRUE(error_below_reciprocal(x, conv[i].p, conv[i].q, conv[i + 1].q)) << i;
      EXPECT_FALSE(error_below_reciprocal(x, conv[i].p, conv[i].q, conv[i + 2].q)) << i;
    }
    for (std::size_t i = 3; i <= 20; ++i) {
      EXPECT_GE(conv[i + 1].q, 2 * conv[i].q) << i;
      EXPECT_LE(conv[i + 1].q, 8 * conv[i].q) << i;
    }
  }
}

TEST(CfPeriod, RotationsOfSevenSevenTwo) {
  const CfPeriod a = cf_period(QuadraticIrrational::tie_ratio_plus());
  EXPECT_EQ(as_longs(a.preperiod), (std::vector<long>{0, 1, 1, 1}));
  EXPECT_EQ(as_longs(a.period), (std::vector<long>{7, 7, 2}));
  const CfPeriod b = cf_period(QuadraticIrrational::tie_ratio_minus());
  EXPECT_EQ(as_longs(b.preperiod), (std::vector<long>{0, 9}));
  EXPECT_EQ(as_longs(b.period), (std::vector<long>{7, 2, 7}));
  const CfPeriod s2 = cf_period(QuadraticIrrational(0, 1, 1, 2));
  EXPECT_EQ(as_longs(s2.preperiod), (std::vector<long>{1}));
  EXPECT_EQ(as_longs(s2.period), (std::vector<long>{2}));
}

TEST(CompareErrors, Exact) {
  const auto x = QuadraticIrrational::tie_ratio_plus();
  EXPECT_EQ(compare_approximation_error(x, 2, 3, 2, 3), 0);
  EXPECT_EQ(compare_approximation_error(x, 2, 3, 1, 2), -1);
  EXPECT_EQ(compare_approximation_error(x, 1, 2, 2, 3), 1);
  EXPECT_EQ(compare_approximation_error(x, -2, -3, 2, 3), 0);
  EXPECT_THROW(compare_error_to_reciprocal(x, 1, 1, 0), DomainError);
}

TEST(BestApprox, ConvergentsThemselves) {
  const auto x = QuadraticIrrational::tie_ratio_plus();
  const auto conv = convergents(x, 12);
  for (std::size_t i = 1; i + 1 < conv.size(); ++i) {
    const Slope s{conv[i].p.get_si(), conv[i].q.get_si()};
    const BestApproxVerdict v = best_approx_check(x, s, conv);
    EXPECT_FALSE(v.violation.has_value()) << i;
  }
}

TEST(BestApprox, BruteForceNoCounterexample) {
  for (const auto& x : {QuadraticIrrational::tie_ratio_plus(), QuadraticIrrational::tie_ratio_minus()}) {
    const auto conv = convergents(x, 8);
    const long qmax = conv.back().q.get_si();
    for (long q = 1; q < qmax; ++q) {
      const double center = x.approximate() * q;
      for (long p = static_cast<long>(center) - 2; p <= static_cast<long>(center) + 3; ++p) {
        if (gcd(p, q) != 1) continue;
        const BestApproxVerdict v = best_approx_check(x, Slope{p, q}, conv);
        EXPECT_FALSE(v.violation.has_value()) << p << "/" << q;
        for (std::size_t i : v.checked) EXPECT_LT(mpz_class(q), conv[i + 1].q);
      }
    }
  }
}

TEST(BestApprox, SkipsIndicesOutsideHypothesis) {
  const auto x = QuadraticIrrational::tie_ratio_plus();
  const auto conv = convergents(x, 6);
  // q = 1000 is past every q_{i+1} available from six convergents.
  ASSERT_LT(conv.back().q, 1000);
  const BestApproxVerdict v = best_approx_check(x, Slope{653, 1000}, conv);
  EXPECT_TRUE(v.checked.empty());
  EXPECT_FALSE(v.violation.has_value());
  EXPECT_THROW(best_approx_check(x, Slope{1, 0}, conv), DomainError);
  EXPECT_THROW(best_approx_check(x, Slope{1, 2}, {}), DomainError);
}
