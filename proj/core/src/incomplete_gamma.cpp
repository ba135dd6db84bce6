#include "medprior/incomplete_gamma.hpp"

#include <string>

#include "medprior/errors.hpp"

namespace medprior {

namespace {

constexpr unsigned long kMaxIterations = 10000;
constexpr unsigned kGuardBits = 64;

// Exact power of two 2^(-bits), used as a machine epsilon at the working
// precision.
BigFloat eps_for(unsigned bits) {
  return BigFloat(1, bits) / pow_ui(BigFloat(2, bits), bits);
}

unsigned work_bits(const BigFloat& a, const BigFloat& b) {
  const unsigned pa = a.precision_bits();
  const unsigned pb = b.precision_bits();
  return (pa > pb ? pa : pb) + kGuardBits;
}

// exp(s ln x - x - lnΓ(s)), the common prefactor of both expansions.
// Requires x > 0.
BigFloat prefactor(const BigFloat& s, const BigFloat& x) {
  return exp(s * log(x) - x - lngamma(s));
}

// Power series P(s,x) = x^s e^{-x}/Γ(s) · Σ_{n≥0} x^n / (s(s+1)···(s+n)),
// effective for x < s + 1 where the terms decay immediately.
BigFloat series_lower(const BigFloat& s, const BigFloat& x, unsigned wp) {
  const BigFloat eps = eps_for(wp);
  BigFloat term = BigFloat(1, wp) / s;
  BigFloat sum = term;
  for (unsigned long n = 1; n <= kMaxIterations; ++n) {
    term *= x / (s + BigFloat(n, wp));
    sum += term;
    if (term < sum * eps) {
      return prefactor(s, x) * sum;
    }
  }
  throw NumericError(
      "incomplete gamma series did not converge within 10000 terms (s=" +
      s.str_general(8) + ", x=" + x.str_general(8) + ")");
}

// Continued fraction (modified Lentz) for Q(s,x) = Γ(s,x)/Γ(s), effective
// for x >= s + 1.
BigFloat cf_upper(const BigFloat& s, const BigFloat& x, unsigned wp) {
  const BigFloat eps = eps_for(wp);
  const BigFloat tiny = eps * eps;
  const BigFloat one(1, wp);

  BigFloat b = x + one - s;
  BigFloat c = one / tiny;
  BigFloat d = b.is_zero() ? one / tiny : one / b;
  BigFloat h = d;
  for (unsigned long i = 1; i <= kMaxIterations; ++i) {
    const BigFloat an = -BigFloat(i, wp) * (BigFloat(i, wp) - s);
    b += BigFloat(2, wp);
    d = b + an * d;
    if (d.is_zero()) d = tiny;
    c = b + an / c;
    if (c.is_zero()) c = tiny;
    d = one / d;
    const BigFloat delta = c * d;
    h *= delta;
    if (abs_val(delta - one) < eps) {
      return prefactor(s, x) * h;
    }
  }
  throw NumericError(
      "incomplete gamma continued fraction did not converge within 10000 "
      "terms (s=" + s.str_general(8) + ", x=" + x.str_general(8) + ")");
}

}  // namespace

BigFloat regularized_lower_incomplete_gamma(const BigFloat& s, const BigFloat& x) {
  if (!(sign_of(s) > 0)) {
    throw DomainError("regularized_lower_incomplete_gamma requires s > 0");
  }
  if (sign_of(x) < 0) {
    throw DomainError("regularized_lower_incomplete_gamma requires x >= 0");
  }
  if (x.is_zero()) {
    return BigFloat(0, s.precision_bits());
  }

  const unsigned wp = work_bits(s, x);
  const BigFloat sw = s.with_precision(wp);
  const BigFloat xw = x.with_precision(wp);
  if (xw < sw + BigFloat(1, wp)) {
    return series_lower(sw, xw, wp);
  }
  return BigFloat(1, wp) - cf_upper(sw, xw, wp);
}

BigFloat inverse_regularized_lower_incomplete_gamma(const BigFloat& s,
                                                    const BigFloat& p) {
  // Default start: the bulk of the mass sits near s, so bracket from there.
  return inverse_regularized_lower_incomplete_gamma(s, p, s + BigFloat(1));
}

BigFloat inverse_regularized_lower_incomplete_gamma(const BigFloat& s,
                                                    const BigFloat& p,
                                                    const BigFloat& initial_guess) {
  if (!(sign_of(s) > 0)) {
    throw DomainError("inverse incomplete gamma requires s > 0");
  }
  if (!(p > BigFloat(0)) || !(p < BigFloat(1))) {
    throw DomainError("inverse incomplete gamma requires p in (0,1)");
  }

  const unsigned wp = work_bits(s, p);
  const BigFloat sw = s.with_precision(wp);
  const BigFloat pw = p.with_precision(wp);
  const BigFloat one(1, wp);
  const BigFloat two(2, wp);
  // Relative step size at which the root is pinned to working precision.
  const BigFloat eps_rel = eps_for(wp) * pow_ui(two, 8);
  const BigFloat lngamma_s = lngamma(sw);

  const auto value_at = [&](const BigFloat& x) {
    return regularized_lower_incomplete_gamma(sw, x) - pw;
  };
  // dP/dx = x^(s-1) e^{-x} / Γ(s)
  const auto derivative_at = [&](const BigFloat& x) {
    return exp((sw - one) * log(x) - x - lngamma_s);
  };

  // Bracket the root: value_at(lo) < 0 <= value_at(hi), lo starts at 0 where
  // P - p = -p < 0.
  BigFloat lo(0, wp);
  BigFloat hi = sign_of(initial_guess) > 0 ? initial_guess.with_precision(wp)
                                           : sw + one;
  unsigned long spent = 0;
  while (true) {
    if (++spent > kMaxIterations) {
      throw NumericError("inverse incomplete gamma: bracketing exhausted (s=" +
                         s.str_general(8) + ", p=" + p.str_general(8) + ")");
    }
    const BigFloat fhi = value_at(hi);
    if (sign_of(fhi) >= 0) {
      break;
    }
    lo = hi;
    hi *= two;
  }

  // Bisection with Newton refinement: Newton steps are taken whenever they
  // stay inside the bracket, otherwise fall back to the midpoint.
  BigFloat x = (lo + hi) / two;
  for (unsigned long it = spent; it <= kMaxIterations; ++it) {
    const BigFloat fx = value_at(x);
    if (fx.is_zero()) {
      return x;
    }
    if (sign_of(fx) > 0) {
      hi = x;
    } else {
      lo = x;
    }

    BigFloat next = (lo + hi) / two;  // fallback: bisect
    const BigFloat deriv = derivative_at(x);
    if (sign_of(deriv) > 0) {
      const BigFloat newton = x - fx / deriv;
      if (lo < newton && newton < hi) {
        next = newton;
      }
    }

    const BigFloat step = abs_val(next - x);
    x = next;
    if (step <= abs_val(x) * eps_rel) {
      return x;
    }
  }
  throw NumericError(
      "inverse incomplete gamma did not converge within 10000 iterations (s=" +
      s.str_general(8) + ", p=" + p.str_general(8) +
      ", bracket=[" + lo.str_general(8) + ", " + hi.str_general(8) + "])");
}

}  // namespace medprior
