#include "topvol/real.hpp"

#include "topvol/error.hpp"

#include <cmath>
#include <memory>
#include <string>

namespace topvol {

namespace {

constexpr mpfr_prec_t kGuardBits = 16;

// Raise x to at least `bits` of precision without changing its value.
void promote(mpfr_ptr x, mpfr_prec_t bits) {
  if (mpfr_get_prec(x) < bits) {
    mpfr_prec_round(x, bits, MPFR_RNDN);
  }
}

std::string render(const char* format, int digits, mpfr_srcptr value) {
  char* buffer = nullptr;
  if (mpfr_asprintf(&buffer, format, digits, value) < 0 || buffer == nullptr) {
    throw Error("mpfr formatting failed");
  }
  std::unique_ptr<char, decltype(&mpfr_free_str)> owner(buffer, &mpfr_free_str);
  return std::string(buffer);
}

}  // namespace

Precision::Precision(int digits) : digits_(digits) {
  if (digits < kMinDigits || digits > kMaxDigits) {
    throw DomainError("precision must be between " + std::to_string(kMinDigits) + " and " +
                      std::to_string(kMaxDigits) + " decimal digits, got " + std::to_string(digits));
  }
}

mpfr_prec_t Precision::bits() const noexcept {
  return static_cast<mpfr_prec_t>(std::ceil(digits_ * 3.3219280948873623)) + kGuardBits;
}

Real::Real(Precision precision) {
  mpfr_init2(value_, precision.bits());
  mpfr_set_zero(value_, 1);
}

Real::Real(NoInit, mpfr_prec_t bits) { mpfr_init2(value_, bits); }

Real::Real(const Real& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_bits(mpfr_prec_t bits) {
  Real r(NoInit{}, bits);
  mpfr_set_zero(r.value_, 1);
  return r;
}

Real Real::from_int(long value, Precision precision) {
  Real r(NoInit{}, precision.bits());
  mpfr_set_si(r.value_, value, MPFR_RNDN);
  return r;
}

Real Real::from_double(double value, Precision precision) {
  Real r(NoInit{}, precision.bits());
  mpfr_set_d(r.value_, value, MPFR_RNDN);
  return r;
}

Real Real::from_rational(const mpq_class& value, Precision precision) {
  Real r(NoInit{}, precision.bits());
  mpfr_set_q(r.value_, value.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real Real::parse(std::string_view text, Precision precision) {
  std::string owned(text);
  Real r(NoInit{}, precision.bits());
  char* end = nullptr;
  if (!owned.empty()) {
    mpfr_strtofr(r.value_, owned.c_str(), &end, 10, MPFR_RNDN);
  }
  if (owned.empty() || end != owned.c_str() + owned.size() || !r.is_finite()) {
    throw DomainError("not a finite decimal number: '" + owned + "'");
  }
  return r;
}

Real Real::pi(Precision precision) {
  Real r(NoInit{}, precision.bits());
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

std::string Real::fixed(int decimals) const { return render("%.*Rf", decimals, value_); }

std::string Real::significant(int significant) const { return render("%.*Rg", significant, value_); }

Real& Real::operator+=(const Real& rhs) {
  promote(value_, rhs.bits());
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  promote(value_, rhs.bits());
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  promote(value_, rhs.bits());
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  promote(value_, rhs.bits());
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real operator-(long lhs, const Real& rhs) {
  Real r(Real::NoInit{}, rhs.bits());
  mpfr_si_sub(r.value_, lhs, rhs.value_, MPFR_RNDN);
  return r;
}

Real operator/(long lhs, const Real& rhs) {
  Real r(Real::NoInit{}, rhs.bits());
  mpfr_si_div(r.value_, lhs, rhs.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, long b) noexcept {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x);
  mpfr_exp(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real sin(const Real& x) {
  Real r(x);
  mpfr_sin(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real cos(const Real& x) {
  Real r(x);
  mpfr_cos(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r = Real::with_bits(std::max(x.bits(), y.bits()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real pow10(long exponent, Precision precision) {
  Real r = Real::from_int(10, precision);
  mpfr_pow_si(r.get(), r.get(), exponent, MPFR_RNDN);
  return r;
}

Complex Complex::from_std(std::complex<double> z, Precision precision) {
  return {Real::from_double(z.real(), precision), Real::from_double(z.imag(), precision)};
}

Complex Complex::parse(std::string_view real_part, std::string_view imag_part, Precision precision) {
  return {Real::parse(real_part, precision), Real::parse(imag_part, precision)};
}

std::string Complex::significant(int digits) const {
  std::string out = re.significant(digits);
  out += im.sign() < 0 ? " - " : " + ";
  out += abs(im).significant(digits);
  out += "i";
  return out;
}

Complex& Complex::operator+=(const Complex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  Real real_part = re * rhs.re - im * rhs.im;
  Real imag_part = re * rhs.im + im * rhs.re;
  re = std::move(real_part);
  im = std::move(imag_part);
  return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
  const Real denominator = norm(rhs);
  if (denominator.is_zero()) {
    throw DomainError("complex division by zero");
  }
  Real real_part = (re * rhs.re + im * rhs.im) / denominator;
  Real imag_part = (im * rhs.re - re * rhs.im) / denominator;
  re = std::move(real_part);
  im = std::move(imag_part);
  return *this;
}

Complex operator/(long lhs, const Complex& rhs) {
  Complex numerator{Real::with_bits(rhs.bits()), Real::with_bits(rhs.bits())};
  numerator.re += lhs;
  return numerator / rhs;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) {
  Real r = Real::with_bits(z.bits());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex log(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) {
    throw DomainError("log of zero");
  }
  return {log(abs(z)), arg(z)};
}

Complex pow(const Complex& z, long n) {
  Complex base = z;
  if (n < 0) {
    base = 1L / z;
    n = -n;
  }
  Complex result{Real::with_bits(z.bits()), Real::with_bits(z.bits())};
  result.re += 1;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

}  // namespace topvol
