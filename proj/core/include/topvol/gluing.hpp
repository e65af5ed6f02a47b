#pragma once

// Rectangular gluing equations of ideal triangulations, their geometric
// solutions, and the bookkeeping needed to certify that two triangulations
// are built from congruent tetrahedra.

#include "topvol/dilog.hpp"
#include "topvol/real.hpp"

#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace topvol {

/// prod_i z_i^a_i (1 - z_i)^d_i = g
struct RectEquation {
  std::vector<long> a;
  std::vector<long> d;
  int g = 1;
};

struct GluingSystem {
  std::string label;
  std::size_t tetrahedra = 0;
  std::vector<RectEquation> equations;
};

/// Parses the bracketed tuple list "[([a...],[d...],g), ...]". Whitespace
/// and line breaks are ignored. Throws ParseError with the 1-based line and
/// column of the first offending character, including vectors whose length
/// disagrees with the first one and signs other than +-1.
GluingSystem parse_rect(std::string_view text, std::string label = {});

/// Reads a file in the parse_rect syntax; the label is the file stem.
GluingSystem load_rect_file(const std::filesystem::path& path);

/// prod_i z_i^a_i (1 - z_i)^d_i - g. Throws DomainError if the shape count
/// differs from the equation length or a shape with a non-zero exponent is
/// 0 or 1.
Complex evaluate_equation(const RectEquation& equation, std::span<const Complex> shapes);

/// Largest |defect| over all equations of the system.
Real max_defect(const GluingSystem& system, std::span<const Complex> shapes);

struct SolverOptions {
  Precision precision{};
  int max_iterations = 200;
  double degeneracy_tolerance = kDegeneracyTolerance;
};

struct ShapeSolution {
  std::vector<TetShape> shapes;
  Real residual;
  Real volume;
  int iterations = 0;

  std::vector<Complex> values() const;
};

/// Approximate geometric shapes for the bundled census triangulations, keyed
/// by label (m006, m007, m015, m016, m017).
std::optional<std::vector<std::complex<double>>> fixture_seeds(std::string_view label);

/// Gauss-Newton on the full, possibly overdetermined, system.
///
/// With explicit seeds a single refinement is attempted and its failure is
/// reported as is. Without seeds the fixture seeds for the label are used if
/// known; otherwise a coarse grid of upper-half-plane starting points is
/// scanned in double precision (systems of at most four tetrahedra).
///
/// Stops when the step norm drops below 10^(10 - digits) and accepts the
/// point when every defect is below 10^(20 - digits).
///
/// Throws DomainError for systems with fewer equations than unknowns or a
/// seed count different from the tetrahedron count, NonConvergenceError,
/// DegenerateShapeError when the limit leaves the upper half plane, and
/// NoGeometricSolutionError when no starting point succeeds.
ShapeSolution solve_geometric(const GluingSystem& system,
                              const std::optional<std::vector<Complex>>& seeds = std::nullopt,
                              const SolverOptions& options = {});

/// Mobius words in one shape coordinate.
enum class ShapeForm {
  Identity,         // z
  MinusOne,         // z - 1
  OneMinus,         // 1 - z
  Inverse,          // 1/z
  InverseOneMinus,  // 1/(1 - z)
  OverMinusOne,     // z/(z - 1)
  OneMinusInverse,  // (z - 1)/z = 1 - 1/z
};

/// Accepts "z", "z-1", "1-z", "1/z", "1/(1-z)", "z/(z-1)", "(z-1)/z" and
/// "1-1/z" with arbitrary spacing. Throws UnsupportedExpressionError.
ShapeForm parse_shape_form(std::string_view text);
std::string_view to_string(ShapeForm form);
Complex apply(ShapeForm form, const Complex& z);

/// form(z_index) or form(conj(z_index)) on a solved triangulation.
struct CoordinateExpr {
  const ShapeSolution* solution = nullptr;
  std::size_t index = 0;
  ShapeForm form = ShapeForm::Identity;
  bool conjugate = false;

  Complex value() const;
  std::string to_string(std::string_view variable = "z") const;
};

struct RelationReport {
  Real difference;
  bool pass = false;
};

RelationReport verify_relation(const CoordinateExpr& lhs, const CoordinateExpr& rhs, const Real& tolerance);

/// |p(x)| for p given by integer coefficients, highest degree first.
/// Throws DomainError on an empty list or zero leading coefficient.
Real minpoly_residual(std::span<const long> coefficients, const Complex& x);

/// A shape of the second triangulation written as a volume-preserving word
/// in a shape of the first one.
struct ShapeMatch {
  std::size_t index = 0;
  CoordinateExpr source;
  Real difference;
};

struct CongruenceReport {
  Real volume_a;
  Real volume_b;
  Real volume_difference;
  /// One entry per shape of the second triangulation that found a partner.
  std::vector<ShapeMatch> matches;
  bool volumes_equal = false;
  bool congruent = false;
};

/// Compares two solved triangulations: volumes within `volume_tolerance`,
/// and every shape of `b` equal within `shape_tolerance` to some shape of
/// `a` under z, 1/(1-z), 1-1/z or, on the conjugate, 1-z, 1/z, z/(z-1).
CongruenceReport compare_triangulations(const ShapeSolution& a, const ShapeSolution& b, const Real& volume_tolerance,
                                        const Real& shape_tolerance);

}  // namespace topvol
