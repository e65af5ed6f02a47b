#pragma once

// Closed-form bounds on topological volume.

#include "topvol/real.hpp"

#include <string>

namespace topvol {

enum class BoundKind { Upper, Lower };

std::string to_string(BoundKind kind);

struct BoundResult {
  BoundKind kind;
  Real value;
  std::string source;
};

/// (9c + 15n - 20) v_oct + 4 v_tet for a manifold obtained by surgery on a
/// nontrivial n-component link with c crossings. Whether the link is
/// nontrivial is the caller's responsibility. Throws DomainError unless
/// c >= 1 and n >= 1.
BoundResult surgery_upper_bound(long crossings, long components, Precision precision = Precision{});

/// Both forms of the Seifert fibred bound over a genus-g base with N
/// exceptional fibres. `integer_form` is exact and is printed by
/// `integer_text` ("112" for g = 2, N = 3; "3.67" for the two small cases).
struct SfsBounds {
  BoundResult octahedral;
  BoundResult integer_form;
  std::string integer_text;
};

/// Throws DomainError for negative g or N.
SfsBounds sfs_upper_bound(long genus, long fibres, Precision precision = Precision{});

bool is_prime(long value) noexcept;

/// rank / 168.602, raised to 3.08, 3.69 or 3.77 for p = 2 and rank above
/// 5, 7 or 10. Throws DomainError for negative rank or non-prime p.
BoundResult homology_lower_bound(long rank, long prime, Precision precision = Precision{});

/// d * volt(base) for a d-fold cover. Throws DomainError unless the base
/// volume is positive and d >= 1.
BoundResult cover_upper_bound(const Real& base_volume, long degree);

}  // namespace topvol
