#include "topvol/gluing.hpp"

#include "topvol/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace topvol {

namespace {

class RectParser {
 public:
  explicit RectParser(std::string_view text) : text_(text) {}

  std::vector<RectEquation> parse() {
    skip_space();
    if (at_end()) fail("empty input, expected '['");
    expect('[');
    std::vector<RectEquation> equations;
    skip_space();
    if (peek() == ']') fail("expected at least one equation");
    while (true) {
      equations.push_back(parse_tuple(equations.empty() ? 0 : equations.front().a.size()));
      skip_space();
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(']');
      break;
    }
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    return equations;
  }

 private:
  RectEquation parse_tuple(std::size_t expected_length) {
    skip_space();
    expect('(');
    RectEquation eq;
    eq.a = parse_vector(expected_length);
    skip_space();
    expect(',');
    eq.d = parse_vector(eq.a.size());
    skip_space();
    expect(',');
    skip_space();
    const std::size_t line = line_, column = column_;
    const long g = parse_integer();
    if (g != 1 && g != -1) throw ParseError("right-hand side must be 1 or -1", line, column);
    eq.g = static_cast<int>(g);
    skip_space();
    expect(')');
    return eq;
  }

  std::vector<long> parse_vector(std::size_t expected_length) {
    skip_space();
    const std::size_t line = line_, column = column_;
    expect('[');
    std::vector<long> values;
    while (true) {
      skip_space();
      values.push_back(parse_integer());
      skip_space();
      if (peek() == ',') {
        advance();
        continue;
      }
      expect(']');
      break;
    }
    if (expected_length != 0 && values.size() != expected_length) {
      throw ParseError("vector has " + std::to_string(values.size()) + " entries, expected " +
                           std::to_string(expected_length),
                       line, column);
    }
    return values;
  }

  long parse_integer() {
    std::string digits;
    if (peek() == '-' || peek() == '+') digits += advance();
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
    if (digits.empty() || digits == "-" || digits == "+") fail("expected an integer");
    try {
      return std::stol(digits);
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::string found = at_end() ? "end of input" : std::string("'") + peek() + "'";
    throw ParseError(message + ", found " + found, line_, column_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

using CVec = std::vector<Complex>;
using DVec = std::vector<std::complex<double>>;

// Solves A x = b for a small dense system by Gaussian elimination with
// partial pivoting. Returns false on a vanishing pivot.
template <typename T, typename Magnitude>
bool solve_dense(std::vector<std::vector<T>>& a, std::vector<T>& b, Magnitude magnitude) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    auto best = magnitude(a[col][col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      auto m = magnitude(a[row][col]);
      if (m > best) {
        best = m;
        pivot = row;
      }
    }
    if (best == 0) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const T factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    T sum = b[i];
    for (std::size_t k = i + 1; k < n; ++k) sum -= a[i][k] * b[k];
    b[i] = sum / a[i][i];
  }
  return true;
}

// One Gauss-Newton step for the product-form defects: fills the defect
// vector and returns the step dz solving (J^H J) dz = J^H f.
std::optional<DVec> gauss_newton_step(const GluingSystem& sys, const DVec& z, double& residual) {
  const std::size_t n = z.size();
  const std::size_t m = sys.equations.size();
  std::vector<DVec> jac(m, DVec(n));
  DVec f(m);
  residual = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const RectEquation& eq = sys.equations[k];
    std::complex<double> prod = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (eq.a[i] != 0) prod *= std::pow(z[i], static_cast<int>(eq.a[i]));
      if (eq.d[i] != 0) prod *= std::pow(1.0 - z[i], static_cast<int>(eq.d[i]));
    }
    f[k] = prod - static_cast<double>(eq.g);
    residual = std::max(residual, std::abs(f[k]));
    for (std::size_t i = 0; i < n; ++i) {
      jac[k][i] = prod * (static_cast<double>(eq.a[i]) / z[i] - static_cast<double>(eq.d[i]) / (1.0 - z[i]));
    }
  }
  std::vector<DVec> normal(n, DVec(n));
  DVec rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < m; ++k) normal[i][j] += std::conj(jac[k][i]) * jac[k][j];
    }
    for (std::size_t k = 0; k < m; ++k) rhs[i] += std::conj(jac[k][i]) * f[k];
  }
  if (!solve_dense(normal, rhs, [](const std::complex<double>& v) { return std::abs(v); })) return std::nullopt;
  if (!std::all_of(rhs.begin(), rhs.end(), [](const auto& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); })) {
    return std::nullopt;
  }
  return rhs;
}

// Cheap double-precision descent used to screen grid starting points.
std::optional<DVec> coarse_solve(const GluingSystem& sys, DVec z) {
  for (int iter = 0; iter < 60; ++iter) {
    for (const auto& v : z) {
      if (std::abs(v) < 1e-9 || std::abs(1.0 - v) < 1e-9 || std::abs(v) > 1e9) return std::nullopt;
    }
    double residual = 0;
    const auto step = gauss_newton_step(sys, z, residual);
    if (!step) return std::nullopt;
    double step_norm = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] -= (*step)[i];
      step_norm = std::max(step_norm, std::abs((*step)[i]));
    }
    if (step_norm < 1e-12) {
      for (const auto& v : z) {
        if (v.imag() <= 1e-6) return std::nullopt;
      }
      return z;
    }
  }
  return std::nullopt;
}

struct Refined {
  CVec z;
  Real residual;
  int iterations;
};

Refined refine(const GluingSystem& sys, CVec z, const SolverOptions& options) {
  const Precision prec = options.precision;
  const std::size_t n = z.size();
  const std::size_t m = sys.equations.size();
  const Real step_tol = pow10(10 - prec.digits(), prec);

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    std::vector<CVec> jac(m, CVec(n, Complex(prec)));
    CVec f(m, Complex(prec));
    for (std::size_t k = 0; k < m; ++k) {
      const RectEquation& eq = sys.equations[k];
      Complex prod(Real::from_int(1, prec), Real(prec));
      for (std::size_t i = 0; i < n; ++i) {
        if (eq.a[i] != 0) prod *= pow(z[i], eq.a[i]);
        if (eq.d[i] != 0) prod *= pow(1 - z[i], eq.d[i]);
      }
      f[k] = prod - eq.g;
      for (std::size_t i = 0; i < n; ++i) {
        Complex dlog(prec);
        if (eq.a[i] != 0) dlog += Complex(Real::from_int(eq.a[i], prec), Real(prec)) / z[i];
        if (eq.d[i] != 0) dlog -= Complex(Real::from_int(eq.d[i], prec), Real(prec)) / (1 - z[i]);
        jac[k][i] = prod * dlog;
      }
    }
    std::vector<CVec> normal(n, CVec(n, Complex(prec)));
    CVec rhs(n, Complex(prec));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < m; ++k) normal[i][j] += conj(jac[k][i]) * jac[k][j];
      }
      for (std::size_t k = 0; k < m; ++k) rhs[i] += conj(jac[k][i]) * f[k];
    }
    if (!solve_dense(normal, rhs, [](const Complex& v) { return norm(v); })) {
      throw NonConvergenceError(sys.label + ": singular Gauss-Newton system at iteration " + std::to_string(iter));
    }
    Real step_norm(prec);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] -= rhs[i];
      step_norm = max(step_norm, abs(rhs[i]));
      if (!z[i].is_finite()) throw NonConvergenceError(sys.label + ": iteration diverged");
    }
    if (step_norm < step_tol) {
      Real residual = max_defect(sys, z);
      return Refined{std::move(z), std::move(residual), iter};
    }
  }
  throw NonConvergenceError(sys.label + ": no convergence after " + std::to_string(options.max_iterations) +
                            " iterations");
}

ShapeSolution finish(const GluingSystem& sys, Refined refined, const SolverOptions& options) {
  const Precision prec = options.precision;
  const Real accept = pow10(20 - prec.digits(), prec);
  if (!(refined.residual < accept)) {
    throw NonConvergenceError(sys.label + ": converged point has defect " + refined.residual.significant(6));
  }
  std::vector<TetShape> shapes;
  shapes.reserve(refined.z.size());
  for (std::size_t i = 0; i < refined.z.size(); ++i) {
    if (!(refined.z[i].im > options.degeneracy_tolerance)) {
      throw DegenerateShapeError(sys.label + ": shape " + std::to_string(i + 1) + " = " +
                                 refined.z[i].significant(12) + " is not in the upper half plane");
    }
    shapes.emplace_back(refined.z[i], options.degeneracy_tolerance);
  }
  Real volume = triangulation_volume(shapes);
  return ShapeSolution{std::move(shapes), std::move(refined.residual), std::move(volume), refined.iterations};
}

void validate(const GluingSystem& sys) {
  if (sys.tetrahedra == 0 || sys.equations.empty()) throw DomainError("gluing system is empty");
  for (const RectEquation& eq : sys.equations) {
    if (eq.a.size() != sys.tetrahedra || eq.d.size() != sys.tetrahedra) {
      throw DomainError("gluing system has an equation of the wrong length");
    }
  }
  if (sys.equations.size() < sys.tetrahedra) {
    throw DomainError("gluing system has fewer equations (" + std::to_string(sys.equations.size()) +
                      ") than tetrahedra (" + std::to_string(sys.tetrahedra) + ")");
  }
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

}  // namespace

GluingSystem parse_rect(std::string_view text, std::string label) {
  GluingSystem sys;
  sys.label = std::move(label);
  sys.equations = RectParser(text).parse();
  sys.tetrahedra = sys.equations.front().a.size();
  return sys;
}

GluingSystem load_rect_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open gluing file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_rect(buffer.str(), path.stem().string());
}

Complex evaluate_equation(const RectEquation& equation, std::span<const Complex> shapes) {
  if (shapes.size() != equation.a.size() || equation.d.size() != equation.a.size()) {
    throw DomainError("equation has " + std::to_string(equation.a.size()) + " variables but " +
                      std::to_string(shapes.size()) + " shapes were given");
  }
  mpfr_prec_t bits = 53;
  for (const Complex& z : shapes) bits = std::max(bits, z.bits());
  Complex prod(Real::with_bits(bits), Real::with_bits(bits));
  mpfr_set_ui(prod.re.get(), 1, MPFR_RNDN);
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const Complex& z = shapes[i];
    if ((equation.a[i] != 0 || equation.d[i] != 0) && (z.re == 0 || z.re == 1) && z.im.is_zero()) {
      throw DomainError("shape " + std::to_string(i + 1) + " is degenerate (0 or 1)");
    }
    if (equation.a[i] != 0) prod *= pow(z, equation.a[i]);
    if (equation.d[i] != 0) prod *= pow(1 - z, equation.d[i]);
  }
  return prod - equation.g;
}

Real max_defect(const GluingSystem& system, std::span<const Complex> shapes) {
  Real worst = Real::with_bits(shapes.empty() ? 53 : shapes.front().bits());
  for (const RectEquation& eq : system.equations) worst = max(worst, abs(evaluate_equation(eq, shapes)));
  return worst;
}

std::vector<Complex> ShapeSolution::values() const {
  std::vector<Complex> out;
  out.reserve(shapes.size());
  for (const TetShape& s : shapes) out.push_back(s.value());
  return out;
}

std::optional<std::vector<std::complex<double>>> fixture_seeds(std::string_view label) {
  using C = std::complex<double>;
  static const std::map<std::string, std::vector<C>, std::less<>> seeds = {
      {"m006", {{0.7733, 1.4677}, {0.3352, 0.4011}, {0.3352, 0.4011}}},
      {"m007", {{-0.1027, 0.6654}, {0.2266, 1.4677}, {-0.1027, 0.6654}}},
      {"m015", {{0.662359, 0.56228}, {0.662359, 0.56228}, {0.662359, 0.56228}}},
      {"m016", {{0.78492, 1.30714}, {0.122561, 0.744862}, {0.122561, 0.744862}}},
      {"m017", {{0.662359, 0.56228}, {0.78492, 1.30714}, {0.78492, 1.30714}}},
  };
  const auto it = seeds.find(label);
  if (it == seeds.end()) return std::nullopt;
  return it->second;
}

ShapeSolution solve_geometric(const GluingSystem& system, const std::optional<std::vector<Complex>>& seeds,
                              const SolverOptions& options) {
  validate(system);
  const Precision prec = options.precision;
  const std::size_t n = system.tetrahedra;

  const auto lift = [&](const std::vector<std::complex<double>>& start) {
    CVec z;
    z.reserve(n);
    for (const auto& v : start) z.push_back(Complex::from_std(v, prec));
    return z;
  };

  if (seeds) {
    if (seeds->size() != n) {
      throw DomainError("expected " + std::to_string(n) + " seeds, got " + std::to_string(seeds->size()));
    }
    CVec z;
    for (const Complex& s : *seeds) {
      Complex c{Real(prec), Real(prec)};
      mpfr_set(c.re.get(), s.re.get(), MPFR_RNDN);
      mpfr_set(c.im.get(), s.im.get(), MPFR_RNDN);
      z.push_back(std::move(c));
    }
    return finish(system, refine(system, std::move(z), options), options);
  }

  if (const auto fixture = fixture_seeds(system.label); fixture && fixture->size() == n) {
    try {
      return finish(system, refine(system, lift(*fixture), options), options);
    } catch (const SolverError&) {
      // fall through to the grid scan
    } catch (const DomainError&) {
    }
  }

  if (n > 4) {
    throw NoGeometricSolutionError(system.label + ": no seeds available and grid scan is limited to 4 tetrahedra");
  }
  static constexpr std::array<double, 3> kRe = {0.25, 0.5, 0.75};
  static constexpr std::array<double, 3> kIm = {0.25, 0.75, 1.5};
  const std::size_t per_shape = kRe.size() * kIm.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per_shape;

  for (std::size_t code = 0; code < total; ++code) {
    DVec start(n);
    std::size_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t cell = rest % per_shape;
      rest /= per_shape;
      start[i] = {kRe[cell / kIm.size()], kIm[cell % kIm.size()]};
    }
    const auto coarse = coarse_solve(system, start);
    if (!coarse) continue;
    try {
      return finish(system, refine(system, lift(*coarse), options), options);
    } catch (const SolverError&) {
    } catch (const DomainError&) {
    }
  }
  throw NoGeometricSolutionError(system.label + ": no starting point converged to a geometric solution");
}

ShapeForm parse_shape_form(std::string_view text) {
  static const std::map<std::string, ShapeForm, std::less<>> forms = {
      {"z", ShapeForm::Identity},
      {"z-1", ShapeForm::MinusOne},
      {"1-z", ShapeForm::OneMinus},
      {"1/z", ShapeForm::Inverse},
      {"1/(1-z)", ShapeForm::InverseOneMinus},
      {"z/(z-1)", ShapeForm::OverMinusOne},
      {"(z-1)/z", ShapeForm::OneMinusInverse},
      {"1-1/z", ShapeForm::OneMinusInverse},
  };
  const std::string key = strip_spaces(text);
  const auto it = forms.find(key);
  if (it == forms.end()) throw UnsupportedExpressionError("unsupported shape expression '" + std::string(text) + "'");
  return it->second;
}

std::string_view to_string(ShapeForm form) {
  switch (form) {
    case ShapeForm::Identity:
      return "z";
    case ShapeForm::MinusOne:
      return "z-1";
    case ShapeForm::OneMinus:
      return "1-z";
    case ShapeForm::Inverse:
      return "1/z";
    case ShapeForm::InverseOneMinus:
      return "1/(1-z)";
    case ShapeForm::OverMinusOne:
      return "z/(z-1)";
    case ShapeForm::OneMinusInverse:
      return "(z-1)/z";
  }
  return "?";
}

Complex apply(ShapeForm form, const Complex& z) {
  switch (form) {
    case ShapeForm::Identity:
      return z;
    case ShapeForm::MinusOne:
      return z - 1;
    case ShapeForm::OneMinus:
      return 1 - z;
    case ShapeForm::Inverse:
      return 1 / z;
    case ShapeForm::InverseOneMinus:
      return 1 / (1 - z);
    case ShapeForm::OverMinusOne:
      return z / (z - 1);
    case ShapeForm::OneMinusInverse:
      return (z - 1) / z;
  }
  throw UnsupportedExpressionError("unknown shape form");
}

Complex CoordinateExpr::value() const {
  if (solution == nullptr) throw DomainError("coordinate expression has no solution attached");
  if (index >= solution->shapes.size()) {
    throw DomainError("shape index " + std::to_string(index + 1) + " out of range");
  }
  const Complex& z = solution->shapes[index].value();
  return apply(form, conjugate ? conj(z) : z);
}

std::string CoordinateExpr::to_string(std::string_view variable) const {
  std::string var = std::string(variable) + std::to_string(index + 1);
  if (conjugate) var = "conj(" + var + ")";
  std::string out;
  for (char c : topvol::to_string(form)) {
    if (c == 'z') {
      out += var;
    } else {
      out += c;
    }
  }
  return out;
}

RelationReport verify_relation(const CoordinateExpr& lhs, const CoordinateExpr& rhs, const Real& tolerance) {
  Real difference = abs(lhs.value() - rhs.value());
  const bool pass = difference < tolerance;
  return RelationReport{std::move(difference), pass};
}

Real minpoly_residual(std::span<const long> coefficients, const Complex& x) {
  if (coefficients.empty()) throw DomainError("polynomial has no coefficients");
  if (coefficients.front() == 0) throw DomainError("polynomial has a zero leading coefficient");
  Complex acc(Real::with_bits(x.bits()), Real::with_bits(x.bits()));
  for (const long c : coefficients) {
    acc *= x;
    acc.re += c;
  }
  return abs(acc);
}

CongruenceReport compare_triangulations(const ShapeSolution& a, const ShapeSolution& b, const Real& volume_tolerance,
                                        const Real& shape_tolerance) {
  struct Word {
    ShapeForm form;
    bool conjugate;
  };
  static constexpr std::array<Word, 6> kWords = {{
      {ShapeForm::Identity, false},
      {ShapeForm::InverseOneMinus, false},
      {ShapeForm::OneMinusInverse, false},
      {ShapeForm::OneMinus, true},
      {ShapeForm::Inverse, true},
      {ShapeForm::OverMinusOne, true},
  }};

  Real difference = abs(a.volume - b.volume);
  CongruenceReport report{a.volume, b.volume, difference, {}, difference < volume_tolerance, false};
  for (std::size_t j = 0; j < b.shapes.size(); ++j) {
    const CoordinateExpr target{&b, j, ShapeForm::Identity, false};
    for (std::size_t i = 0; i < a.shapes.size(); ++i) {
      bool found = false;
      for (const Word& w : kWords) {
        const CoordinateExpr source{&a, i, w.form, w.conjugate};
        RelationReport r = verify_relation(target, source, shape_tolerance);
        if (r.pass) {
          report.matches.push_back(ShapeMatch{j, source, std::move(r.difference)});
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  report.congruent = report.matches.size() == b.shapes.size();
  return report;
}

}  // namespace topvol
