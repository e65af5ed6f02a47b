#pragma once

// Two-term volume-change expansions for Dehn filling the first cusp of the
// Whitehead link complement W = m129 and its sister P = m125, in the
// topological framing, together with a rigorous sign decision and the
// lens-space minimiser search built on it.

#include "topvol/lens.hpp"
#include "topvol/real.hpp"
#include "topvol/slope.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <string_view>
#include <vector>

namespace topvol {

/// c2 pi^2 + c4 pi^4, truncated with error O(1 / Q^3) where Q is the
/// quadratic form of the slope.
struct DeltaVolEstimate {
  mpq_class c2;
  mpq_class c4;
  mpz_class quadratic_form;

  friend bool operator==(const DeltaVolEstimate&, const DeltaVolEstimate&) = default;
};

/// p^2 + 4pq + 8q^2
mpz_class quadratic_form_w(const Slope& s);
/// (p - 4q)^2 + (p - 3q)^2
mpz_class quadratic_form_p(const Slope& s);

/// Throws DomainError when the quadratic form vanishes, i.e. for (0, 0).
DeltaVolEstimate delta_vol_w(const Slope& s);
DeltaVolEstimate delta_vol_p(const Slope& s);

/// c2 pi^2 + c4 pi^4 at the requested precision.
Real evaluate(const DeltaVolEstimate& estimate, Precision precision = Precision{});

/// vol(W) - estimate, with vol(W) = vol(P) = 4 D(i).
Real filled_volume_estimate(const DeltaVolEstimate& estimate, Precision precision = Precision{});

inline constexpr mpfr_prec_t kCompareStartBits = 64;
inline constexpr mpfr_prec_t kCompareCeilingBits = 4096;
/// Slopes whose quadratic form is below this are outside the range where the
/// two-term expansion is known to order fillings correctly.
inline constexpr long kAsymptoticThreshold = 100;

enum class Ordering { Less, Equal, Greater };
std::string_view to_string(Ordering ordering);

/// Result of a rigorous comparison. `bits` is the MPFR precision at which
/// the pi^2 enclosure separated the sign from zero (0 for exact decisions).
struct Comparison {
  Ordering ordering;
  mpfr_prec_t bits;
};

/// Sign of (a - b) as real numbers. EQUAL only when both coefficient
/// differences vanish exactly. Throws UndecidableError when the sign is
/// still unresolved at `ceiling_bits`.
Comparison compare_estimates(const DeltaVolEstimate& a, const DeltaVolEstimate& b,
                             mpfr_prec_t ceiling_bits = kCompareCeilingBits);

enum class Parent { W, P };
std::string_view to_string(Parent parent);
/// Census name of the parent manifold: "m129" or "m125".
std::string_view census_name(Parent parent);

/// Slope in the parent's census framing.
Slope census_slope(Parent parent, const Slope& topological);

struct Decision {
  Parent parent;
  DeltaVolEstimate w;
  DeltaVolEstimate p;
  Comparison certificate;
  /// False when either quadratic form is below kAsymptoticThreshold.
  bool asymptotic;
};

/// W when W's filling removes strictly more volume, P when strictly less.
/// Exact ties raise UndecidableError, as do unresolved near-ties.
Decision decide_w_vs_p(const Slope& s, mpfr_prec_t ceiling_bits = kCompareCeilingBits);

struct Competitor {
  Parent parent;
  Slope slope;
  Slope census_slope;
  DeltaVolEstimate estimate;
};

struct MinimiserVerdict {
  Parent parent;
  Slope slope;
  DeltaVolEstimate estimate;
  bool asymptotic;
  std::vector<Competitor> competitors;
};

/// Searches every unoriented slope equivalent to L under the lens moves with
/// |n| <= window, on both parents, and returns the largest two-term volume
/// change. Exact ties go to W, then to the lexicographically smaller slope.
/// Throws DomainError for window < 1.
MinimiserVerdict lens_minimiser(const LensClass& lens, int window = 3);

}  // namespace topvol
