#pragma once

// Slope arithmetic for lens spaces and the framing conversions between the
// link-census (topological) and SnapPy-census (geometric) descriptions of the
// Whitehead link complement W = m129 and its sister P = m125.

#include "topvol/slope.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace topvol {

/// q* with 1 <= q* < p and q q* = 1 (mod p). Throws DomainError when p < 2
/// or gcd(q, p) != 1.
std::int64_t mod_inverse(std::int64_t q, std::int64_t p);

/// Homeomorphism class of the lens space L(p, q), stored by its canonical
/// representative. Orientation-reversing homeomorphisms are identified, so
/// q is the least of q, q*, p - q, p - q* reduced mod p.
class LensClass {
 public:
  /// Canonicalises (p, q); throws DomainError unless p >= 2 and gcd(p, q) = 1.
  LensClass(std::int64_t p, std::int64_t q);

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  std::string to_string() const;

  friend bool operator==(const LensClass&, const LensClass&) = default;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

/// Slopes on an unknotted cusp whose filling gives L(p, q):
///   (p, r + n p), (-p, r + n p), (p, -(r + n p))  for r in {q, q*}, |n| <= window.
/// Sorted, without duplicates. Throws DomainError for window < 0.
std::vector<Slope> lens_equivalent_slopes(const LensClass& lens, int window);

/// L5a1(p, q)(0,0) = m129(p + 2q, -q)(0,0). The map is an involution.
Slope frame_w(const Slope& s);

/// L13n5885(p, q)(0,0) = m125(p - 4q, p - 3q)(0,0).
Slope frame_p(const Slope& s);

/// Inverse of frame_p: m125 coordinates back to the link-census framing.
Slope frame_p_inverse(const Slope& s);

}  // namespace topvol
