#pragma once

// Bloch-Wigner dilogarithm and volumes of ideal hyperbolic tetrahedra.

#include "topvol/real.hpp"

#include <span>
#include <vector>

namespace topvol {

/// Default threshold below which Im(z) is treated as a flat tetrahedron.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// D(z) = Im Li2(z) + arg(1 - z) log|z|, evaluated at the precision of `z`.
///
/// D is real-analytic off {0, 1}, odd under conjugation, vanishes on the real
/// line and satisfies D(z) = D(1 - 1/z) = D(1/(1 - z)) = -D(1/z).
/// Throws DomainError for z in {0, 1} or non-finite input.
Real bloch_wigner(const Complex& z);

/// Shape parameter of an ideal tetrahedron: a cross-ratio in the open upper
/// half plane.
class TetShape {
 public:
  /// Throws DegenerateShapeError unless Im(value) > tolerance.
  explicit TetShape(Complex value, double tolerance = kDegeneracyTolerance);

  const Complex& value() const noexcept { return value_; }

 private:
  Complex value_;
};

/// Hyperbolic volume D(shape) of the ideal tetrahedron; always positive.
Real tet_volume(const TetShape& shape);

/// Sum of tetrahedron volumes. Throws DomainError on an empty list.
Real triangulation_volume(std::span<const TetShape> shapes);

/// Volume of the regular ideal tetrahedron, D(e^{i pi / 3}) ~ 1.01494.
Real regular_tetrahedron_volume(Precision precision = Precision{});

/// Volume of the regular ideal octahedron, 4 D(i) ~ 3.66386.
Real regular_octahedron_volume(Precision precision = Precision{});

}  // namespace topvol
