#include "topvol/voldiff.hpp"

#include "topvol/dilog.hpp"
#include "topvol/error.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace topvol {

namespace {

mpz_class big(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

mpz_class pow4(const mpz_class& v) {
  const mpz_class sq = v * v;
  return sq * sq;
}

// Owns an mpfr_t for the scope of one enclosure computation.
class Scratch {
 public:
  explicit Scratch(mpfr_prec_t bits) { mpfr_init2(value_, bits); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  ~Scratch() { mpfr_clear(value_); }
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

// Encloses dc2 + dc4 * pi^2 in [lo, hi] at the given precision and returns
// the sign if the interval excludes zero, otherwise 0.
int enclosure_sign(const mpq_class& dc2, const mpq_class& dc4, mpfr_prec_t bits) {
  Scratch pi_lo(bits), pi_hi(bits), sq_lo(bits), sq_hi(bits), lo(bits), hi(bits);
  mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
  mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
  mpfr_sqr(sq_lo.get(), pi_lo.get(), MPFR_RNDD);
  mpfr_sqr(sq_hi.get(), pi_hi.get(), MPFR_RNDU);

  if (sgn(dc4) >= 0) {
    mpfr_mul_q(lo.get(), sq_lo.get(), dc4.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), sq_hi.get(), dc4.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(lo.get(), sq_hi.get(), dc4.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), sq_lo.get(), dc4.get_mpq_t(), MPFR_RNDU);
  }
  mpfr_add_q(lo.get(), lo.get(), dc2.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(hi.get(), hi.get(), dc2.get_mpq_t(), MPFR_RNDU);

  if (mpfr_sgn(lo.get()) > 0) return 1;
  if (mpfr_sgn(hi.get()) < 0) return -1;
  return 0;
}

bool asymptotic(const DeltaVolEstimate& e) { return e.quadratic_form >= kAsymptoticThreshold; }

}  // namespace

mpz_class quadratic_form_w(const Slope& s) {
  const mpz_class p = big(s.p), q = big(s.q);
  return p * p + 4 * p * q + 8 * q * q;
}

mpz_class quadratic_form_p(const Slope& s) {
  const mpz_class p = big(s.p), q = big(s.q);
  const mpz_class u = p - 4 * q, v = p - 3 * q;
  return u * u + v * v;
}

DeltaVolEstimate delta_vol_w(const Slope& s) {
  const mpz_class form = quadratic_form_w(s);
  if (form <= 0) throw DomainError("W quadratic form vanishes at slope " + s.to_string());
  const mpz_class p = big(s.p), q = big(s.q);
  DeltaVolEstimate e;
  e.quadratic_form = form;
  e.c2 = mpq_class(2, form);
  e.c2.canonicalize();
  e.c4 = mpq_class(-(p * p - 8 * q * q) * (p * p + 8 * p * q + 8 * q * q), 3 * pow4(form));
  e.c4.canonicalize();
  return e;
}

DeltaVolEstimate delta_vol_p(const Slope& s) {
  const mpz_class form = quadratic_form_p(s);
  if (form <= 0) throw DomainError("P quadratic form vanishes at slope " + s.to_string());
  const mpz_class p = big(s.p), q = big(s.q);
  const mpz_class p2 = p * p, q2 = q * q;
  const mpz_class numerator =
      4 * p2 * p2 - 80 * p2 * p * q + 540 * p2 * q2 - 1520 * p * q2 * q + 1535 * q2 * q2;
  DeltaVolEstimate e;
  e.quadratic_form = form;
  e.c2 = mpq_class(1, form);
  e.c2.canonicalize();
  e.c4 = mpq_class(numerator, 24 * pow4(form));
  e.c4.canonicalize();
  return e;
}

Real evaluate(const DeltaVolEstimate& estimate, Precision precision) {
  const Real pi2 = [&] {
    Real pi = Real::pi(precision);
    return pi * pi;
  }();
  return pi2 * (Real::from_rational(estimate.c2, precision) + Real::from_rational(estimate.c4, precision) * pi2);
}

Real filled_volume_estimate(const DeltaVolEstimate& estimate, Precision precision) {
  return regular_octahedron_volume(precision) - evaluate(estimate, precision);
}

std::string_view to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::Less:
      return "LESS";
    case Ordering::Equal:
      return "EQUAL";
    case Ordering::Greater:
      return "GREATER";
  }
  return "?";
}

Comparison compare_estimates(const DeltaVolEstimate& a, const DeltaVolEstimate& b, mpfr_prec_t ceiling_bits) {
  const mpq_class dc2 = a.c2 - b.c2;
  const mpq_class dc4 = a.c4 - b.c4;
  // The common factor pi^2 > 0 is dropped: sign(dc2 pi^2 + dc4 pi^4) = sign(dc2 + dc4 pi^2).
  if (dc4 == 0) {
    const int s = sgn(dc2);
    return {s > 0 ? Ordering::Greater : s < 0 ? Ordering::Less : Ordering::Equal, 0};
  }
  if (dc2 == 0) {
    return {sgn(dc4) > 0 ? Ordering::Greater : Ordering::Less, 0};
  }
  if (sgn(dc2) == sgn(dc4)) {
    return {sgn(dc2) > 0 ? Ordering::Greater : Ordering::Less, 0};
  }
  for (mpfr_prec_t bits = kCompareStartBits; bits <= ceiling_bits; bits *= 2) {
    const int s = enclosure_sign(dc2, dc4, bits);
    if (s != 0) return {s > 0 ? Ordering::Greater : Ordering::Less, bits};
  }
  throw UndecidableError("sign of the two-term difference is unresolved at " + std::to_string(ceiling_bits) +
                         " bits");
}

std::string_view to_string(Parent parent) { return parent == Parent::W ? "W" : "P"; }

std::string_view census_name(Parent parent) { return parent == Parent::W ? "m129" : "m125"; }

Slope census_slope(Parent parent, const Slope& topological) {
  return parent == Parent::W ? frame_w(topological) : frame_p(topological);
}

Decision decide_w_vs_p(const Slope& s, mpfr_prec_t ceiling_bits) {
  Decision d{Parent::W, delta_vol_w(s), delta_vol_p(s), {Ordering::Equal, 0}, false};
  d.certificate = compare_estimates(d.w, d.p, ceiling_bits);
  if (d.certificate.ordering == Ordering::Equal) {
    throw UndecidableError("two-term estimates of W and P coincide exactly at slope " + s.to_string());
  }
  d.parent = d.certificate.ordering == Ordering::Greater ? Parent::W : Parent::P;
  d.asymptotic = asymptotic(d.w) && asymptotic(d.p);
  return d;
}

MinimiserVerdict lens_minimiser(const LensClass& lens, int window) {
  if (window < 1) throw DomainError("minimiser window must be at least 1");

  std::set<Slope> unoriented;
  for (const Slope& s : lens_equivalent_slopes(lens, window)) unoriented.insert(s.unoriented());

  std::vector<Competitor> competitors;
  competitors.reserve(2 * unoriented.size());
  for (const Parent parent : {Parent::W, Parent::P}) {
    for (const Slope& s : unoriented) {
      competitors.push_back(Competitor{parent, s, census_slope(parent, s),
                                       parent == Parent::W ? delta_vol_w(s) : delta_vol_p(s)});
    }
  }

  const auto key = [](const Competitor& c) { return std::tuple(static_cast<int>(c.parent), c.slope); };
  const Competitor* best = &competitors.front();
  for (const Competitor& c : competitors) {
    if (&c == best) continue;
    const Ordering o = compare_estimates(c.estimate, best->estimate).ordering;
    if (o == Ordering::Greater || (o == Ordering::Equal && key(c) < key(*best))) best = &c;
  }

  MinimiserVerdict verdict{best->parent, best->slope, best->estimate, asymptotic(best->estimate), {}};
  verdict.competitors = std::move(competitors);
  return verdict;
}

}  // namespace topvol
