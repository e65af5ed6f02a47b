#include "topvol/slope.hpp"

#include "topvol/error.hpp"

#include <numeric>

namespace topvol {

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept { return std::gcd(a, b); }

Slope Slope::make(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) {
    throw DomainError("slope (0,0) is not a filling coefficient");
  }
  if (gcd(p, q) != 1) {
    throw DomainError("slope (" + std::to_string(p) + "," + std::to_string(q) + ") is not primitive");
  }
  return Slope{p, q};
}

Slope Slope::unoriented() const noexcept {
  if (p < 0 || (p == 0 && q < 0)) return Slope{-p, -q};
  return *this;
}

std::string Slope::to_string() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

}  // namespace topvol
