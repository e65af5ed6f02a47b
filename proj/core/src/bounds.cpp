#include "topvol/bounds.hpp"

#include "topvol/dilog.hpp"
#include "topvol/error.hpp"

#include <gmpxx.h>

#include <array>

namespace topvol {

namespace {

Real octahedral_form(long coefficient, Precision precision) {
  return regular_octahedron_volume(precision) * coefficient + regular_tetrahedron_volume(precision) * 4;
}

}  // namespace

std::string to_string(BoundKind kind) { return kind == BoundKind::Upper ? "upper" : "lower"; }

BoundResult surgery_upper_bound(long crossings, long components, Precision precision) {
  if (crossings < 1) throw DomainError("crossing number must be at least 1");
  if (components < 1) throw DomainError("component count must be at least 1");
  const long coefficient = 9 * crossings + 15 * components - 20;
  return {BoundKind::Upper, octahedral_form(coefficient, precision), "surgery on a link"};
}

SfsBounds sfs_upper_bound(long genus, long fibres, Precision precision) {
  if (genus < 0) throw DomainError("base genus must be non-negative");
  if (fibres < 0) throw DomainError("exceptional fibre count must be non-negative");
  const std::string source = "Seifert fibration";
  if (genus == 0 && fibres <= 1) {
    return {{BoundKind::Upper, regular_octahedron_volume(precision), source},
            {BoundKind::Upper, Real::from_rational(mpq_class(367, 100), precision), source},
            "3.67"};
  }
  const long integer_value = 37 * genus + 22 * fibres - 28;
  return {{BoundKind::Upper, octahedral_form(10 * genus + 6 * fibres - 9, precision), source},
          {BoundKind::Upper, Real::from_int(integer_value, precision), source},
          std::to_string(integer_value)};
}

bool is_prime(long value) noexcept {
  if (value < 2) return false;
  for (long k = 2; k <= value / k; ++k) {
    if (value % k == 0) return false;
  }
  return true;
}

BoundResult homology_lower_bound(long rank, long prime, Precision precision) {
  if (rank < 0) throw DomainError("homology rank must be non-negative");
  if (!is_prime(prime)) throw DomainError(std::to_string(prime) + " is not prime");
  mpq_class ratio(rank * 1000L, 168602L);
  ratio.canonicalize();
  Real value = Real::from_rational(ratio, precision);
  if (prime == 2) {
    struct Step {
      long above;
      long hundredths;
    };
    static constexpr std::array<Step, 3> kSteps = {{{5, 308}, {7, 369}, {10, 377}}};
    for (const Step& step : kSteps) {
      if (rank > step.above) value = max(value, Real::from_rational(mpq_class(step.hundredths, 100L), precision));
    }
  }
  return {BoundKind::Lower, std::move(value), "homology rank"};
}

BoundResult cover_upper_bound(const Real& base_volume, long degree) {
  if (!(base_volume > 0L)) throw DomainError("base volume must be positive");
  if (degree < 1) throw DomainError("cover degree must be at least 1");
  return {BoundKind::Upper, base_volume * degree, "finite cover"};
}

}  // namespace topvol
