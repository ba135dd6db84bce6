#include "medprior/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "medprior/errors.hpp"

namespace medprior {

namespace {

// Parses an optionally signed run of digits with an optional fraction part
// and exponent into (mantissa digits, decimal exponent, sign).
struct DecimalParts {
  std::string digits;  // concatenated integer+fraction digits
  long exponent = 0;   // power of ten applied to `digits` as an integer
  bool negative = false;
};

DecimalParts parse_decimal(const std::string& text) {
  DecimalParts out;
  std::size_t pos = 0;
  const std::size_t n = text.size();

  if (pos < n && (text[pos] == '+' || text[pos] == '-')) {
    out.negative = text[pos] == '-';
    ++pos;
  }

  std::size_t int_digits = 0;
  while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    out.digits.push_back(text[pos]);
    ++int_digits;
    ++pos;
  }

  std::size_t frac_digits = 0;
  if (pos < n && text[pos] == '.') {
    ++pos;
    while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      out.digits.push_back(text[pos]);
      ++frac_digits;
      ++pos;
    }
  }
  if (int_digits + frac_digits == 0) {
    throw DomainError("not a number: '" + text + "'");
  }
  out.exponent = -static_cast<long>(frac_digits);

  if (pos < n && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < n && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= n || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw DomainError("malformed exponent in '" + text + "'");
    }
    long exp_value = 0;
    while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      exp_value = exp_value * 10 + (text[pos] - '0');
      if (exp_value > 1000000) {
        throw DomainError("exponent out of range in '" + text + "'");
      }
      ++pos;
    }
    out.exponent += exp_negative ? -exp_value : exp_value;
  }

  if (pos != n) {
    throw DomainError("trailing junk in number '" + text + "'");
  }
  return out;
}

std::string trim(const std::string& text) {
  std::size_t first = 0;
  std::size_t last = text.size();
  while (first < last && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(text[last - 1]))) --last;
  return text.substr(first, last - first);
}

// Multiplicity of `p` in `value`; `value` is replaced by the cofactor.
unsigned long remove_factor(mpz_class& value, unsigned long p) {
  mpz_class cofactor;
  const mp_bitcnt_t count =
      mpz_remove(cofactor.get_mpz_t(), value.get_mpz_t(), mpz_class(p).get_mpz_t());
  value = cofactor;
  return count;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) {
    throw DomainError("empty number");
  }

  const std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string num_text = trim(s.substr(0, slash));
    const std::string den_text = trim(s.substr(slash + 1));
    if (num_text.empty() || den_text.empty() ||
        den_text.find('/') != std::string::npos) {
      throw DomainError("malformed fraction '" + text + "'");
    }
    mpz_class num, den;
    if (mpz_set_str(num.get_mpz_t(), num_text.c_str(), 10) != 0 ||
        mpz_set_str(den.get_mpz_t(), den_text.c_str(), 10) != 0) {
      throw DomainError("malformed fraction '" + text + "'");
    }
    if (den == 0) {
      throw DomainError("zero denominator in '" + text + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  const DecimalParts parts = parse_decimal(s);
  mpz_class mantissa;
  if (mpz_set_str(mantissa.get_mpz_t(),
                  parts.digits.empty() ? "0" : parts.digits.c_str(), 10) != 0) {
    throw DomainError("not a number: '" + text + "'");
  }

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                static_cast<unsigned long>(std::labs(parts.exponent)));
  Rational q = parts.exponent >= 0 ? Rational(mantissa * scale)
                                   : Rational(mantissa, scale);
  q.canonicalize();
  if (parts.negative) {
    q = -q;
  }
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_str();
}

bool has_terminating_decimal(const Rational& q) {
  mpz_class den = q.get_den();
  remove_factor(den, 2);
  remove_factor(den, 5);
  return den == 1;
}

std::string to_decimal_string(const Rational& q, std::size_t significant) {
  if (significant == 0) {
    throw DomainError("need at least one significant digit");
  }
  if (q == 0) {
    return "0";
  }

  const bool negative = q < 0;
  const mpz_class num = abs(q.get_num());
  const mpz_class den = q.get_den();

  std::string body;
  if (has_terminating_decimal(q)) {
    // Exact expansion with max(mult2, mult5) fractional digits.
    mpz_class reduced = den;
    const unsigned long twos = remove_factor(reduced, 2);
    const unsigned long fives = remove_factor(reduced, 5);
    const unsigned long frac_len = twos > fives ? twos : fives;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_len);
    const mpz_class scaled = num * scale / den;
    std::string digits = scaled.get_str();
    if (digits.size() <= frac_len) {
      digits.insert(0, frac_len - digits.size() + 1, '0');
    }
    body = frac_len == 0
               ? digits
               : digits.substr(0, digits.size() - frac_len) + "." +
                     digits.substr(digits.size() - frac_len);
  } else {
    // Rounded (half to even) at `significant` significant digits. First find
    // the magnitude exponent e with 10^e <= |q| < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    const auto magnitude_ok = [&](long exp10) {
      // true iff |q| >= 10^exp10
      mpz_class pow;
      mpz_ui_pow_ui(pow.get_mpz_t(), 10,
                    static_cast<unsigned long>(exp10 >= 0 ? exp10 : -exp10));
      return exp10 >= 0 ? num >= den * pow : num * pow >= den;
    };
    while (!magnitude_ok(e)) --e;
    while (magnitude_ok(e + 1)) ++e;

    const long shift = static_cast<long>(significant) - 1 - e;
    mpz_class n2 = num, d2 = den, scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                  static_cast<unsigned long>(shift >= 0 ? shift : -shift));
    if (shift >= 0) {
      n2 *= scale;
    } else {
      d2 *= scale;
    }
    mpz_class quo, rem;
    mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), n2.get_mpz_t(), d2.get_mpz_t());
    const mpz_class twice = 2 * rem;
    if (twice > d2 || (twice == d2 && mpz_odd_p(quo.get_mpz_t()))) {
      quo += 1;
    }
    mpz_class cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), 10, significant);
    if (quo == cap) {  // rounding carried into a new leading digit
      quo /= 10;
      ++e;
    }

    std::string digits = quo.get_str();
    if (e >= 0) {
      if (static_cast<std::size_t>(e) + 1 >= digits.size()) {
        body = digits + std::string(static_cast<std::size_t>(e) + 1 - digits.size(), '0');
      } else {
        body = digits.substr(0, static_cast<std::size_t>(e) + 1) + "." +
               digits.substr(static_cast<std::size_t>(e) + 1);
      }
    } else {
      body = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    }
  }

  return negative ? "-" + body : body;
}

Rational pow_ui(const Rational& base, unsigned long exponent) {
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den().get_mpz_t(), exponent);
  // base is canonical, so gcd(num^k, den^k) = 1 and the result is canonical.
  return result;
}

}  // namespace medprior
