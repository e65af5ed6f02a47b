#include "topvol/lens.hpp"

#include "topvol/error.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <utility>

namespace topvol {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::int64_t mod_inverse(std::int64_t q, std::int64_t p) {
  if (p < 2) {
    throw DomainError("modular inverse needs a modulus of at least 2, got " + std::to_string(p));
  }
  // Extended Euclid on (q mod p, p).
  std::int64_t old_r = floor_mod(q, p);
  std::int64_t r = p;
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t quotient = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quotient * r};
    std::tie(old_s, s) = std::pair{s, old_s - quotient * s};
  }
  if (old_r != 1) {
    throw DomainError(std::to_string(q) + " is not invertible modulo " + std::to_string(p));
  }
  const auto inverse = static_cast<std::int64_t>(old_s % p);
  return inverse < 0 ? inverse + p : inverse;
}

LensClass::LensClass(std::int64_t p, std::int64_t q) : p_(p), q_(0) {
  if (p < 2) {
    throw DomainError("lens space L(p,q) needs p >= 2, got p = " + std::to_string(p));
  }
  if (gcd(p, q) != 1) {
    throw DomainError("lens space L(" + std::to_string(p) + "," + std::to_string(q) + ") needs coprime p and q");
  }
  const std::int64_t r = floor_mod(q, p);
  const std::int64_t r_inverse = mod_inverse(r, p);
  q_ = std::min({r, r_inverse, p - r, p - r_inverse});
}

std::string LensClass::to_string() const { return "L(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

std::vector<Slope> lens_equivalent_slopes(const LensClass& lens, int window) {
  if (window < 0) {
    throw DomainError("slope window must be non-negative");
  }
  const std::int64_t p = lens.p();
  const std::int64_t q = lens.q();
  std::set<Slope> slopes;
  for (const std::int64_t r : {q, mod_inverse(q, p)}) {
    for (std::int64_t n = -window; n <= window; ++n) {
      const std::int64_t shifted = r + n * p;
      slopes.insert(Slope{p, shifted});
      slopes.insert(Slope{-p, shifted});
      slopes.insert(Slope{p, -shifted});
    }
  }
  return {slopes.begin(), slopes.end()};
}

Slope frame_w(const Slope& s) { return Slope{s.p + 2 * s.q, -s.q}; }

Slope frame_p(const Slope& s) { return Slope{s.p - 4 * s.q, s.p - 3 * s.q}; }

Slope frame_p_inverse(const Slope& s) { return Slope{4 * s.q - 3 * s.p, s.q - s.p}; }

}  // namespace topvol
