#include "medprior/bigfloat.hpp"

#include <atomic>
#include <cstdlib>
#include <utility>

#include "medprior/errors.hpp"

namespace medprior {

namespace {

std::atomic<unsigned> g_default_bits{256};

unsigned resolve_bits(unsigned bits) {
  if (bits == 0) {
    return g_default_bits.load(std::memory_order_relaxed);
  }
  if (bits < BigFloat::kMinBits) {
    throw DomainError("BigFloat precision must be at least 64 bits");
  }
  return bits;
}

mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) {
  const mpfr_prec_t pa = mpfr_get_prec(a.raw());
  const mpfr_prec_t pb = mpfr_get_prec(b.raw());
  return pa > pb ? pa : pb;
}

std::string take_mpfr_string(char* text) {
  std::string out(text);
  mpfr_free_str(text);
  return out;
}

}  // namespace

unsigned BigFloat::default_bits() {
  return g_default_bits.load(std::memory_order_relaxed);
}

void BigFloat::set_default_bits(unsigned bits) {
  if (bits < kMinBits) {
    throw DomainError("BigFloat precision must be at least 64 bits");
  }
  g_default_bits.store(bits, std::memory_order_relaxed);
}

BigFloat::BigFloat(RawTag, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
}

BigFloat::BigFloat() {
  mpfr_init2(value_, resolve_bits(0));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(int value, unsigned bits) {
  mpfr_init2(value_, resolve_bits(bits));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(long value, unsigned bits) {
  mpfr_init2(value_, resolve_bits(bits));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(unsigned long value, unsigned bits) {
  mpfr_init2(value_, resolve_bits(bits));
  mpfr_set_ui(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(double value, unsigned bits) {
  mpfr_init2(value_, resolve_bits(bits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, unsigned bits) {
  mpfr_init2(value_, resolve_bits(bits));
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const std::string& decimal, unsigned bits) {
  mpfr_init2(value_, resolve_bits(bits));
  char* end = nullptr;
  mpfr_strtofr(value_, decimal.c_str(), &end, 10, MPFR_RNDN);
  if (end == decimal.c_str() || *end != '\0' || mpfr_nan_p(value_)) {
    mpfr_clear(value_);
    throw DomainError("not a number: '" + decimal + "'");
  }
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) {
    mpfr_swap(value_, other.value_);
  }
  return *this;
}

BigFloat::~BigFloat() {
  mpfr_clear(value_);
}

unsigned BigFloat::precision_bits() const {
  return static_cast<unsigned>(mpfr_get_prec(value_));
}

BigFloat BigFloat::with_precision(unsigned bits) const {
  BigFloat out(RawTag{}, resolve_bits(bits));
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

bool BigFloat::is_zero() const {
  return mpfr_zero_p(value_) != 0;
}

double BigFloat::to_double() const {
  return mpfr_get_d(value_, MPFR_RNDN);
}

unsigned long BigFloat::floor_ulong() const {
  if (mpfr_sgn(value_) < 0) {
    throw DomainError("floor_ulong of a negative value");
  }
  if (!mpfr_fits_ulong_p(value_, MPFR_RNDZ)) {
    throw DomainError("floor_ulong overflow");
  }
  return mpfr_get_ui(value_, MPFR_RNDZ);
}

std::string BigFloat::str_scientific(std::size_t significant) const {
  if (significant == 0) {
    throw DomainError("need at least one significant digit");
  }
  char* text = nullptr;
  mpfr_asprintf(&text, "%.*Re", static_cast<int>(significant - 1), value_);
  return take_mpfr_string(text);
}

std::string BigFloat::str_general(std::size_t significant) const {
  if (significant == 0) {
    throw DomainError("need at least one significant digit");
  }
  char* text = nullptr;
  mpfr_asprintf(&text, "%.*Rg", static_cast<int>(significant), value_);
  return take_mpfr_string(text);
}

BigFloat BigFloat::operator-() const {
  BigFloat out(RawTag{}, mpfr_get_prec(value_));
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  *this = *this + rhs;
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  *this = *this - rhs;
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  *this = *this * rhs;
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  *this = *this / rhs;
  return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat out(BigFloat::RawTag{}, max_prec(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat out(BigFloat::RawTag{}, max_prec(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat out(BigFloat::RawTag{}, max_prec(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (b.is_zero()) {
    throw DomainError("division by zero");
  }
  BigFloat out(BigFloat::RawTag{}, max_prec(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

bool operator<(const BigFloat& a, const BigFloat& b) {
  return mpfr_less_p(a.value_, b.value_) != 0;
}

bool operator<=(const BigFloat& a, const BigFloat& b) {
  return mpfr_lessequal_p(a.value_, b.value_) != 0;
}

bool operator>(const BigFloat& a, const BigFloat& b) {
  return mpfr_greater_p(a.value_, b.value_) != 0;
}

bool operator>=(const BigFloat& a, const BigFloat& b) {
  return mpfr_greaterequal_p(a.value_, b.value_) != 0;
}

bool operator==(const BigFloat& a, const BigFloat& b) {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}

bool operator!=(const BigFloat& a, const BigFloat& b) {
  return !(a == b);
}

BigFloat exp(const BigFloat& x) {
  BigFloat out(BigFloat::RawTag{}, mpfr_get_prec(x.value_));
  mpfr_exp(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat log(const BigFloat& x) {
  if (mpfr_sgn(x.value_) <= 0) {
    throw DomainError("log requires a positive argument");
  }
  BigFloat out(BigFloat::RawTag{}, mpfr_get_prec(x.value_));
  mpfr_log(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat lngamma(const BigFloat& x) {
  if (mpfr_sgn(x.value_) <= 0) {
    throw DomainError("lngamma requires a positive argument");
  }
  BigFloat out(BigFloat::RawTag{}, mpfr_get_prec(x.value_));
  mpfr_lngamma(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat sqrt(const BigFloat& x) {
  if (mpfr_sgn(x.value_) < 0) {
    throw DomainError("sqrt requires a non-negative argument");
  }
  BigFloat out(BigFloat::RawTag{}, mpfr_get_prec(x.value_));
  mpfr_sqrt(out.value_, x.value_, MPFR_RNDN);
  return out;
}

BigFloat floor(const BigFloat& x) {
  BigFloat out(BigFloat::RawTag{}, mpfr_get_prec(x.value_));
  mpfr_floor(out.value_, x.value_);
  return out;
}

BigFloat pow_ui(const BigFloat& base, unsigned long exponent) {
  BigFloat out(BigFloat::RawTag{}, mpfr_get_prec(base.value_));
  mpfr_pow_ui(out.value_, base.value_, exponent, MPFR_RNDN);
  return out;
}

BigFloat abs_val(const BigFloat& x) {
  BigFloat out(BigFloat::RawTag{}, mpfr_get_prec(x.value_));
  mpfr_abs(out.value_, x.value_, MPFR_RNDN);
  return out;
}

int sign_of(const BigFloat& x) {
  return mpfr_sgn(x.value_);
}

BigFloat pow10(long exponent, unsigned bits) {
  const unsigned long mag = exponent >= 0
                                ? static_cast<unsigned long>(exponent)
                                : static_cast<unsigned long>(-(exponent + 1)) + 1;
  const BigFloat power = pow_ui(BigFloat(10, bits), mag);
  return exponent < 0 ? BigFloat(1, bits) / power : power;
}

}  // namespace medprior
