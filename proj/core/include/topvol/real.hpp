#pragma once

// Arbitrary-precision real and complex numbers on top of MPFR.
//
// Every value carries its own precision; binary operations produce a result
// at the larger of the operand precisions. There is no process-wide default,
// so computations at different precisions can run concurrently.

#include <mpfr.h>

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <complex>
#include <string>
#include <string_view>
#include <utility>

namespace topvol {

/// Working precision in decimal digits. Converted to a binary precision with
/// a few guard bits on top.
class Precision {
 public:
  static constexpr int kDefaultDigits = 50;
  static constexpr int kMinDigits = 10;
  static constexpr int kMaxDigits = 5000;

  constexpr Precision() = default;
  explicit Precision(int digits);

  int digits() const noexcept { return digits_; }
  mpfr_prec_t bits() const noexcept;

  friend bool operator==(const Precision&, const Precision&) = default;

 private:
  int digits_ = kDefaultDigits;
};

class Real {
 public:
  explicit Real(Precision precision = Precision{});
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real with_bits(mpfr_prec_t bits);
  static Real from_int(long value, Precision precision = Precision{});
  static Real from_double(double value, Precision precision = Precision{});
  static Real from_rational(const mpq_class& value, Precision precision = Precision{});
  /// Parses a decimal literal such as "2.02988321281931" or "-1e-30".
  static Real parse(std::string_view text, Precision precision = Precision{});
  static Real pi(Precision precision = Precision{});

  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Fixed-point rendering with `decimals` digits after the point.
  std::string fixed(int decimals) const;
  /// Shortest-style rendering with `significant` significant digits.
  std::string significant(int significant) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, long rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator+(long lhs, Real rhs) { return rhs += lhs; }
  friend Real operator-(long lhs, const Real& rhs);
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator/(long lhs, const Real& rhs);

  friend bool operator==(const Real& a, const Real& b) noexcept { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;
  friend bool operator==(const Real& a, long b) noexcept { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) noexcept;

 private:
  struct NoInit {};
  Real(NoInit, mpfr_prec_t bits);

  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real max(const Real& a, const Real& b);
/// 10^exponent at the given precision; used for tolerances.
Real pow10(long exponent, Precision precision = Precision{});

/// Complex number with independent real and imaginary `Real` parts.
struct Complex {
  Real re;
  Real im;

  explicit Complex(Precision precision = Precision{}) : re(precision), im(precision) {}
  Complex(Real real_part, Real imag_part) : re(std::move(real_part)), im(std::move(imag_part)) {}

  static Complex from_std(std::complex<double> z, Precision precision = Precision{});
  static Complex parse(std::string_view real_part, std::string_view imag_part, Precision precision = Precision{});

  std::complex<double> to_std() const noexcept { return {re.to_double(), im.to_double()}; }
  mpfr_prec_t bits() const noexcept { return std::max(re.bits(), im.bits()); }
  bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }
  std::string significant(int digits) const;

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);

  Complex operator-() const { return {-re, -im}; }

  friend Complex operator+(Complex lhs, const Complex& rhs) { return lhs += rhs; }
  friend Complex operator-(Complex lhs, const Complex& rhs) { return lhs -= rhs; }
  friend Complex operator*(Complex lhs, const Complex& rhs) { return lhs *= rhs; }
  friend Complex operator/(Complex lhs, const Complex& rhs) { return lhs /= rhs; }
  friend Complex operator+(Complex lhs, long rhs) {
    lhs.re += rhs;
    return lhs;
  }
  friend Complex operator-(Complex lhs, long rhs) {
    lhs.re -= rhs;
    return lhs;
  }
  friend Complex operator-(long lhs, const Complex& rhs) { return {lhs - rhs.re, -rhs.im}; }
  friend Complex operator*(Complex lhs, const Real& rhs) {
    lhs.re *= rhs;
    lhs.im *= rhs;
    return lhs;
  }
  friend Complex operator*(Complex lhs, long rhs) {
    lhs.re *= rhs;
    lhs.im *= rhs;
    return lhs;
  }
  friend Complex operator/(long lhs, const Complex& rhs);

  friend bool operator==(const Complex& a, const Complex& b) noexcept { return a.re == b.re && a.im == b.im; }
};

Complex conj(const Complex& z);
/// |z|^2.
Real norm(const Complex& z);
Real abs(const Complex& z);
Real arg(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
/// z^n for any integer n (n < 0 inverts; z must be non-zero then).
Complex pow(const Complex& z, long n);

}  // namespace topvol
