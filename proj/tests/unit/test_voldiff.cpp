#include "topvol/error.hpp"
#include "topvol/voldiff.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace topvol;

namespace {

using F100 = boost::multiprecision::cpp_bin_float_100;

// Two-term expansions evaluated directly from the closed forms in 100-digit
// floating point.
F100 w_two_term(long p, long q) {
  const F100 pi2 = boost::math::constants::pi<F100>() * boost::math::constants::pi<F100>();
  const F100 P(p), Q(q);
  const F100 form = P * P + 4 * P * Q + 8 * Q * Q;
  return 2 * pi2 / form - pi2 * pi2 * (P * P - 8 * Q * Q) * (P * P + 8 * P * Q + 8 * Q * Q) / (3 * pow(form, 4));
}

F100 p_two_term(long p, long q) {
  const F100 pi2 = boost::math::constants::pi<F100>() * boost::math::constants::pi<F100>();
  const F100 P(p), Q(q);
  const F100 form = (P - 4 * Q) * (P - 4 * Q) + (P - 3 * Q) * (P - 3 * Q);
  const F100 quartic = 4 * pow(P, 4) - 80 * pow(P, 3) * Q + 540 * P * P * Q * Q - 1520 * P * pow(Q, 3) + 1535 * pow(Q, 4);
  return pi2 / form + pi2 * pi2 * quartic / (24 * pow(form, 4));
}

Parent oracle_parent(long p, long q) { return w_two_term(p, q) > p_two_term(p, q) ? Parent::W : Parent::P; }

DeltaVolEstimate make_estimate(const mpq_class& c2, const mpq_class& c4) { return {c2, c4, mpz_class(1000)}; }

}  // namespace

TEST(DeltaVolW, TenOne) {
  const DeltaVolEstimate e = delta_vol_w({10, 1});
  EXPECT_EQ(e.quadratic_form, 148);
  EXPECT_EQ(e.c2, mpq_class(1, 74));
  mpq_class c4(-92 * 188, 3 * 148L * 148 * 148 * 148);
  c4.canonicalize();
  EXPECT_EQ(e.c4, c4);
  const double direct = static_cast<double>(w_two_term(10, 1));
  EXPECT_NEAR(evaluate(e).to_double(), direct, 1e-15);
}

TEST(DeltaVolW, MinusOneFamilyUsesQuadraticForm) {
  for (long p = 1; p <= 60; ++p) {
    const DeltaVolEstimate e = delta_vol_w({p, -1});
    EXPECT_EQ(e.quadratic_form, p * p - 4 * p + 8);
    mpq_class c2(2, p * p - 4 * p + 8);
    c2.canonicalize();
    EXPECT_EQ(e.c2, c2);
  }
}

TEST(DeltaVolW, UnitSlopeAndSymmetry) {
  const DeltaVolEstimate e = delta_vol_w({1, 0});
  EXPECT_EQ(e.quadratic_form, 1);
  EXPECT_EQ(e.c2, 2);
  EXPECT_EQ(delta_vol_w({-7, 3}), delta_vol_w({7, -3}));
  EXPECT_EQ(delta_vol_p({-7, 3}), delta_vol_p({7, -3}));
  EXPECT_THROW(delta_vol_w({0, 0}), DomainError);
  EXPECT_THROW(delta_vol_p({0, 0}), DomainError);
}

TEST(DeltaVolP, Examples) {
  const DeltaVolEstimate one = delta_vol_p({1, 0});
  EXPECT_EQ(one.quadratic_form, 2);
  EXPECT_EQ(one.c2, mpq_class(1, 2));
  EXPECT_EQ(one.c4, mpq_class(1, 96));
  EXPECT_EQ(delta_vol_p({4, 1}).quadratic_form, 1);
  EXPECT_EQ(delta_vol_p({4, 1}).c2, 1);
  EXPECT_EQ(delta_vol_p({10, 1}).quadratic_form, 85);
  EXPECT_EQ(delta_vol_p({10, 1}).c2, mpq_class(1, 85));
}

TEST(QuadraticForms, PositiveDefinite) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> coord(-100000, 100000);
  for (int k = 0; k < 2000; ++k) {
    const Slope s{coord(rng), coord(rng)};
    if (s.p == 0 && s.q == 0) continue;
    EXPECT_GT(quadratic_form_w(s), 0);
    EXPECT_GT(quadratic_form_p(s), 0);
  }
}

TEST(QuadraticForms, LeadingTermDecreasesAlongRays) {
  for (const Slope dir : {Slope{1, 0}, Slope{3, -1}, Slope{2, 5}, Slope{-7, 4}}) {
    mpq_class prev_w = delta_vol_w(dir).c2, prev_p = delta_vol_p(dir).c2;
    for (long k = 2; k <= 40; ++k) {
      const Slope s{k * dir.p, k * dir.q};
      EXPECT_LT(delta_vol_w(s).c2, prev_w);
      EXPECT_LT(delta_vol_p(s).c2, prev_p);
      prev_w = delta_vol_w(s).c2;
      prev_p = delta_vol_p(s).c2;
    }
  }
}

TEST(CompareEstimates, EqualAndTenOne) {
  const DeltaVolEstimate w = delta_vol_w({10, 1});
  const Comparison same = compare_estimates(w, w);
  EXPECT_EQ(same.ordering, Ordering::Equal);
  EXPECT_EQ(same.bits, 0);
  const Comparison c = compare_estimates(w, delta_vol_p({10, 1}));
  EXPECT_EQ(c.ordering, Ordering::Greater);
  EXPECT_EQ(compare_estimates(delta_vol_p({10, 1}), w).ordering, Ordering::Less);
  EXPECT_GT(w_two_term(10, 1), p_two_term(10, 1));
  EXPECT_EQ(to_string(Ordering::Greater), "GREATER");
}

TEST(CompareEstimates, NearTieNeedsMorePrecision) {
  // 1 * pi^2 - 98696044010893586188/10^19 is about 3.4e-20.
  const mpq_class approx("98696044010893586188/10000000000000000000");
  const DeltaVolEstimate a = make_estimate(0, 1);
  const DeltaVolEstimate b = make_estimate(approx, 0);
  const Comparison c = compare_estimates(a, b);
  EXPECT_EQ(c.ordering, Ordering::Greater);
  EXPECT_GT(c.bits, kCompareStartBits);
  EXPECT_LE(c.bits, kCompareCeilingBits);
  EXPECT_THROW(compare_estimates(a, b, 64), UndecidableError);
}

TEST(CompareEstimates, ExactShortcuts) {
  EXPECT_EQ(compare_estimates(make_estimate(1, 1), make_estimate(0, 0)).bits, 0);
  EXPECT_EQ(compare_estimates(make_estimate(1, 0), make_estimate(0, 0)).ordering, Ordering::Greater);
  EXPECT_EQ(compare_estimates(make_estimate(0, -1), make_estimate(0, 0)).ordering, Ordering::Less);
  // 10 - pi^2 > 0 needs the enclosure.
  const Comparison c = compare_estimates(make_estimate(10, -1), make_estimate(0, 0));
  EXPECT_EQ(c.ordering, Ordering::Greater);
  EXPECT_EQ(c.bits, kCompareStartBits);
}

TEST(Decide, UnitSlopeGoesToP) {
  const Decision d = decide_w_vs_p({1, 0});
  EXPECT_EQ(d.parent, Parent::P);
  EXPECT_FALSE(d.asymptotic);
  EXPECT_EQ(oracle_parent(1, 0), Parent::P);
}

TEST(Decide, LargePWithUnitQ) {
  for (long p : {100L, 101L, 150L, 1001L}) {
    EXPECT_EQ(decide_w_vs_p({p, 1}).parent, Parent::W) << p;
    EXPECT_EQ(decide_w_vs_p({p, -1}).parent, Parent::W) << p;
  }
  EXPECT_TRUE(decide_w_vs_p({100, 1}).asymptotic);
}

TEST(Decide, RandomSlopesAgreeWithFloatingOracle) {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<long> coord(-3000, 3000);
  int tested = 0;
  while (tested < 200) {
    const long p = coord(rng), q = coord(rng);
    if (std::gcd(p, q) != 1) continue;
    const Slope s{p, q};
    if (quadratic_form_w(s) < 10000 || quadratic_form_p(s) < 10000) continue;
    const Decision d = decide_w_vs_p(s);
    EXPECT_EQ(d.parent, oracle_parent(p, q)) << s.to_string();
    EXPECT_TRUE(d.asymptotic);
    EXPECT_LE(d.certificate.bits, kCompareCeilingBits);
    ++tested;
  }
}

TEST(Decide, VerdictsFlipAcrossTieLines) {
  const F100 root130 = sqrt(F100(130));
  for (const F100 slope : {(16 + root130) / 42, (16 - root130) / 42}) {
    for (long radius : {1000L, 10000L, 100000L}) {
      int segments_with_flip = 0;
      for (long p = radius; p < radius + 40; ++p) {
        const long q0 = static_cast<long>(floor(slope * p));
        std::vector<Parent> seen;
        for (long q = q0 - 3; q <= q0 + 4; ++q) {
          if (std::gcd(p, q) != 1) continue;
          const Parent verdict = decide_w_vs_p({p, q}).parent;
          EXPECT_EQ(verdict, oracle_parent(p, q)) << p << "," << q;
          seen.push_back(verdict);
        }
        if (std::adjacent_find(seen.begin(), seen.end(), std::not_equal_to<>()) != seen.end()) ++segments_with_flip;
      }
      EXPECT_GT(segments_with_flip, 0) << radius;
    }
  }
}

TEST(LensMinimiser, UnitQFamily) {
  for (long p = 50; p <= 200; ++p) {
    const MinimiserVerdict v = lens_minimiser(LensClass(p, 1));
    EXPECT_EQ(v.parent, Parent::W) << p;
    EXPECT_EQ(v.slope, (Slope{p, -1})) << p;
    EXPECT_TRUE(v.asymptotic);
  }
}

TEST(LensMinimiser, CompetitorsOfL51) {
  const MinimiserVerdict v = lens_minimiser(LensClass(5, 1));
  for (Parent parent : {Parent::W, Parent::P}) {
    for (Slope s : {Slope{5, 1}, Slope{5, -1}, Slope{5, 4}, Slope{5, -4}}) {
      const bool found = std::any_of(v.competitors.begin(), v.competitors.end(), [&](const Competitor& c) {
        return c.parent == parent && c.slope == s && c.census_slope == census_slope(parent, s);
      });
      EXPECT_TRUE(found) << to_string(parent) << s.to_string();
    }
  }
  for (const Competitor& c : v.competitors) {
    EXPECT_NE(compare_estimates(c.estimate, v.estimate).ordering, Ordering::Greater);
  }
}

TEST(LensMinimiser, SmallCaseIsReportedNotAsserted) {
  // Two-term verdict only: the quadratic form is far below the threshold.
  const MinimiserVerdict v = lens_minimiser(LensClass(13, 3));
  EXPECT_EQ(v.parent, Parent::P);
  EXPECT_EQ(census_slope(v.parent, v.slope).unoriented(), (Slope{3, -1}));
  EXPECT_FALSE(v.asymptotic);
  EXPECT_THROW(lens_minimiser(LensClass(5, 1), 0), DomainError);
}

TEST(LensMinimiser, WindowDoesNotChangeLargeCases) {
  for (long p : {60L, 97L, 150L}) {
    const MinimiserVerdict a = lens_minimiser(LensClass(p, 1), 1);
    const MinimiserVerdict b = lens_minimiser(LensClass(p, 1), 6);
    EXPECT_EQ(a.parent, b.parent);
    EXPECT_EQ(a.slope, b.slope);
    EXPECT_LT(a.competitors.size(), b.competitors.size());
  }
}

TEST(FilledVolume, TracksFloatingEvaluationForLargeForms) {
  for (const Slope s : {Slope{200, -1}, Slope{150, 37}, Slope{-99, 170}}) {
    const DeltaVolEstimate w = delta_vol_w(s);
    ASSERT_GE(w.quadratic_form, 10000);
    const Real estimate = filled_volume_estimate(w);
    const double expected = 3.663862376708876 - static_cast<double>(w_two_term(s.p, s.q));
    EXPECT_NEAR(estimate.to_double(), expected, 1e-14);
  }
}

TEST(Names, ParentsAndFraming) {
  EXPECT_EQ(census_name(Parent::W), "m129");
  EXPECT_EQ(census_name(Parent::P), "m125");
  EXPECT_EQ(to_string(Parent::P), "P");
  EXPECT_EQ(census_slope(Parent::W, {5, 1}), (Slope{7, -1}));
  EXPECT_EQ(census_slope(Parent::P, {4, 1}), (Slope{0, 1}));
}
