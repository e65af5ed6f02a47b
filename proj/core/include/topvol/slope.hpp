#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace topvol {

/// A Dehn filling coefficient: a coprime pair (p, q) other than (0, 0).
/// Ordered lexicographically.
struct Slope {
  std::int64_t p = 1;
  std::int64_t q = 0;

  /// Validating constructor; throws DomainError unless gcd(|p|, |q|) = 1.
  static Slope make(std::int64_t p, std::int64_t q);

  /// The same unoriented curve with p > 0, or p = 0 and q > 0.
  Slope unoriented() const noexcept;

  /// "(p,q)"
  std::string to_string() const;

  friend auto operator<=>(const Slope&, const Slope&) = default;
};

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;

}  // namespace topvol
