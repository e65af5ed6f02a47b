#include "topvol/cfrac.hpp"

#include "topvol/error.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace topvol {

namespace {

int sign_of(const mpz_class& v) { return sgn(v); }

// Sign of X + Y sqrt(d) for non-square d.
int sign_surd(const mpz_class& x, const mpz_class& y, const mpz_class& d) {
  const int sx = sign_of(x);
  const int sy = sign_of(y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  const mpz_class lhs = x * x;
  const mpz_class rhs = y * y * d;
  return lhs > rhs ? sx : sy;
}

bool is_squarefree(const mpz_class& d) {
  for (mpz_class k = 2; k * k <= d; ++k) {
    if (d % (k * k) == 0) return false;
  }
  return true;
}

// x = (P + sqrt(D)) / Q with Q | D - P^2.
struct SurdState {
  mpz_class P;
  mpz_class Q;

  friend bool operator<(const SurdState& l, const SurdState& r) {
    return l.P != r.P ? l.P < r.P : l.Q < r.Q;
  }
};

class SurdExpansion {
 public:
  explicit SurdExpansion(const QuadraticIrrational& x) {
    // Rewrite (a + b sqrt(d)) / c with a positive surd coefficient, then scale
    // by |c| so the denominator divides D - P^2.
    mpz_class a = x.a();
    mpz_class b = x.b();
    mpz_class c = x.c();
    if (b < 0) {
      a = -a;
      b = -b;
      c = -c;
    }
    const mpz_class abs_c = abs(c);
    D_ = b * b * x.d() * abs_c * abs_c;
    state_.P = a * abs_c;
    state_.Q = c * abs_c;
    mpz_sqrt(root_.get_mpz_t(), D_.get_mpz_t());
  }

  const SurdState& state() const noexcept { return state_; }

  mpz_class next() {
    mpz_class quotient;
    if (state_.Q > 0) {
      mpz_class numerator = state_.P + root_;
      mpz_fdiv_q(quotient.get_mpz_t(), numerator.get_mpz_t(), state_.Q.get_mpz_t());
    } else {
      mpz_class numerator = state_.P + root_ + 1;
      mpz_fdiv_q(quotient.get_mpz_t(), numerator.get_mpz_t(), state_.Q.get_mpz_t());
    }
    const mpz_class next_p = quotient * state_.Q - state_.P;
    const mpz_class next_q = (D_ - next_p * next_p) / state_.Q;
    state_.P = next_p;
    state_.Q = next_q;
    return quotient;
  }

 private:
  mpz_class D_;
  mpz_class root_;
  SurdState state_;
};

// q x - p = (A + B sqrt(d)) / c
std::pair<mpz_class, mpz_class> error_numerator(const QuadraticIrrational& x, const mpz_class& p,
                                                const mpz_class& q) {
  return {q * x.a() - p * x.c(), q * x.b()};
}

}  // namespace

QuadraticIrrational::QuadraticIrrational(mpz_class a, mpz_class b, mpz_class c, mpz_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw DomainError("quadratic irrational: zero denominator");
  if (b_ == 0) throw DomainError("quadratic irrational: value is rational (b = 0)");
  if (d_ < 2 || !is_squarefree(d_)) {
    throw DomainError("quadratic irrational: d = " + d_.get_str() + " must be a squarefree integer > 1");
  }
}

QuadraticIrrational QuadraticIrrational::tie_ratio_plus() { return {16, 1, 42, 130}; }

QuadraticIrrational QuadraticIrrational::tie_ratio_minus() { return {16, -1, 42, 130}; }

double QuadraticIrrational::approximate() const {
  return (a_.get_d() + b_.get_d() * std::sqrt(d_.get_d())) / c_.get_d();
}

std::string QuadraticIrrational::to_string() const {
  std::string out = "(" + a_.get_str();
  out += b_ < 0 ? " - " : " + ";
  const mpz_class abs_b = abs(b_);
  if (abs_b != 1) out += abs_b.get_str() + "*";
  out += "sqrt(" + d_.get_str() + "))/" + c_.get_str();
  return out;
}

std::vector<mpz_class> cf_expand(const QuadraticIrrational& x, std::size_t count) {
  if (count == 0) throw DomainError("continued fraction: at least one term is required");
  SurdExpansion expansion(x);
  std::vector<mpz_class> quotients;
  quotients.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    quotients.push_back(expansion.next());
  }
  return quotients;
}

std::vector<Convergent> convergents(const QuadraticIrrational& x, std::size_t count) {
  const std::vector<mpz_class> quotients = cf_expand(x, count);
  std::vector<Convergent> result;
  result.reserve(count);
  mpz_class p_prev2 = 0, p_prev = 1;
  mpz_class q_prev2 = 1, q_prev = 0;
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    mpz_class p = quotients[i] * p_prev + p_prev2;
    mpz_class q = quotients[i] * q_prev + q_prev2;
    p_prev2 = std::exchange(p_prev, p);
    q_prev2 = std::exchange(q_prev, q);
    result.push_back(Convergent{std::move(p), std::move(q), i});
  }
  return result;
}

CfPeriod cf_period(const QuadraticIrrational& x) {
  SurdExpansion expansion(x);
  std::map<SurdState, std::size_t> seen;
  std::vector<mpz_class> quotients;
  // Reduced surds have bounded (P, Q), so a repeat occurs within O(D) steps.
  while (true) {
    const auto [it, inserted] = seen.emplace(expansion.state(), quotients.size());
    if (!inserted) {
      const std::size_t start = it->second;
      return CfPeriod{{quotients.begin(), quotients.begin() + static_cast<std::ptrdiff_t>(start)},
                      {quotients.begin() + static_cast<std::ptrdiff_t>(start), quotients.end()}};
    }
    quotients.push_back(expansion.next());
  }
}

int compare_approximation_error(const QuadraticIrrational& x, const mpz_class& p1, const mpz_class& q1,
                                const mpz_class& p2, const mpz_class& q2) {
  const auto [a1, b1] = error_numerator(x, p1, q1);
  const auto [a2, b2] = error_numerator(x, p2, q2);
  // Compare squares: (a1 + b1 r)^2 - (a2 + b2 r)^2 with r = sqrt(d).
  const mpz_class rational = a1 * a1 + b1 * b1 * x.d() - a2 * a2 - b2 * b2 * x.d();
  const mpz_class surd = 2 * (a1 * b1 - a2 * b2);
  return sign_surd(rational, surd, x.d());
}

int compare_error_to_reciprocal(const QuadraticIrrational& x, const mpz_class& p, const mpz_class& q,
                                const mpz_class& m) {
  if (m <= 0) throw DomainError("reciprocal bound needs a positive denominator");
  const auto [a, b] = error_numerator(x, p, q);
  // |(a + b r) / c| vs 1 / m  <=>  m^2 (a + b r)^2 vs c^2
  const mpz_class m2 = m * m;
  const mpz_class rational = m2 * (a * a + b * b * x.d()) - x.c() * x.c();
  const mpz_class surd = 2 * m2 * a * b;
  return sign_surd(rational, surd, x.d());
}

BestApproxVerdict best_approx_check(const QuadraticIrrational& x, const Slope& s, const std::vector<Convergent>& conv) {
  if (conv.empty()) throw DomainError("best-approximation check needs at least one convergent");
  if (s.q <= 0) throw DomainError("best-approximation check needs a positive denominator");
  const mpz_class p = static_cast<long>(s.p);
  const mpz_class q = static_cast<long>(s.q);
  BestApproxVerdict verdict;
  for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
    if (!(q < conv[i + 1].q)) continue;
    verdict.checked.push_back(i);
    if (!verdict.violation && compare_approximation_error(x, p, q, conv[i].p, conv[i].q) < 0) {
      verdict.violation = i;
    }
  }
  return verdict;
}

}  // namespace topvol
