#include "eisq/modforms.hpp"

#include <algorithm>

#include "eisq/errors.hpp"

namespace eisq::modforms {

namespace {

void require_prime(Int p, const char* what) {
  EISQ_REQUIRE(arith::is_prime(p), std::string(what) + " must be prime, got " + std::to_string(p));
}

Int div_sum(Int m, Int skip) {
  EISQ_REQUIRE(m >= 1, "divisor sums need m >= 1");
  Int s = 0;
  for (Int d : arith::divisors(m))
    if (skip == 0 || d % skip != 0) s = arith::checked_add(s, d);
  return s;
}

}  // namespace

Int sigma(Int m) { return div_sum(m, 0); }

Int sigma_prime(Int m, Int p) {
  require_prime(p, "p");
  return div_sum(m, p);
}

QSeries add(const QSeries& f, const QSeries& g) {
  EISQ_REQUIRE(f.level == g.level && f.weight == g.weight, "series from different spaces");
  QSeries out{{}, f.level, f.weight};
  const std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
  for (std::size_t i = 0; i < n; ++i) out.coeffs.push_back(arith::checked_add(f.coeffs[i], g.coeffs[i]));
  return out;
}

QSeries scale(const QSeries& f, Int c) {
  QSeries out = f;
  for (Int& a : out.coeffs) a = arith::checked_mul(a, c);
  return out;
}

std::optional<Int> first_discrepancy(const QSeries& f, const QSeries& g) {
  const std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
  for (std::size_t i = 0; i < n; ++i)
    if (f.coeffs[i] != g.coeffs[i]) return static_cast<Int>(i);
  return std::nullopt;
}

QSeries eisenstein_e(Int p, Int P) {
  require_prime(p, "p");
  EISQ_REQUIRE(P >= 0, "precision must be non-negative");
  QSeries e{{1 - p}, p, 2};
  for (Int m = 1; m <= P; ++m) e.coeffs.push_back(-24 * sigma_prime(m, p));
  return e;
}

QSeries eisenstein_e_p(Int p, Int P) {
  const QSeries e = eisenstein_e(p, P / p);
  QSeries out{std::vector<Int>(static_cast<std::size_t>(P + 1), 0), arith::checked_mul(p, p), 2};
  for (Int m = 0; m <= P; m += p) out.coeffs[m] = e[m / p];
  return out;
}

QSeries delta_series(Int p, Int P) {
  require_prime(p, "p");
  EISQ_REQUIRE(P >= 0, "precision must be non-negative");
  QSeries delta{{0}, arith::checked_mul(p, p), 2};
  for (Int m = 1; m <= P; ++m) delta.coeffs.push_back(m % p == 0 ? 0 : sigma(m));

  QSeries e = eisenstein_e(p, P);
  e.level = delta.level;
  const QSeries diff = add(eisenstein_e_p(p, P), scale(e, -1));
  for (Int m = 0; m <= P; ++m) {
    EISQ_CHECK(diff[m] % 24 == 0, "(e(pz) - e(z)) is not divisible by 24 at q^" + std::to_string(m));
    EISQ_CHECK(diff[m] / 24 == delta[m], "delta differs from (e(pz) - e(z)) / 24 at q^" + std::to_string(m));
  }
  return delta;
}

QSeries hecke_T(const QSeries& f, Int ell) {
  require_prime(ell, "l");
  EISQ_REQUIRE(f.level % ell != 0, "T_" + std::to_string(ell) + " needs l prime to the level " +
                                       std::to_string(f.level) + "; use U");
  const Int out_prec = f.precision() / ell;
  QSeries out{{}, f.level, f.weight};
  for (Int m = 0; m <= out_prec; ++m) {
    Int a = f[ell * m];
    if (m % ell == 0) a = arith::checked_add(a, arith::checked_mul(ell, f[m / ell]));
    out.coeffs.push_back(a);
  }
  return out;
}

QSeries hecke_U(const QSeries& f, Int ell) {
  require_prime(ell, "l");
  EISQ_REQUIRE(f.level % ell == 0, "U_" + std::to_string(ell) + " needs l dividing the level " +
                                       std::to_string(f.level) + "; use T");
  const Int out_prec = f.precision() / ell;
  QSeries out{{}, f.level, f.weight};
  for (Int m = 0; m <= out_prec; ++m) out.coeffs.push_back(f[ell * m]);
  return out;
}

bool EigencheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const OperatorCheck& c) { return c.pass; });
}

EigencheckReport eigencheck_series(const QSeries& delta, Int p, const std::vector<Int>& primes,
                                   const EigencheckOptions& options) {
  EigencheckReport rep{p, delta.precision(), {}};
  for (Int ell : primes) {
    OperatorCheck c;
    c.ell = ell;
    QSeries image;
    QSeries expect;
    if (ell == p) {
      c.op = "U";
      c.eigenvalue = 0;
      image = hecke_U(delta, ell);
    } else {
      c.op = "T";
      c.eigenvalue = 1 + ell;
      image = hecke_T(delta, ell);
    }
    expect = scale(delta, c.eigenvalue);
    expect.coeffs.resize(image.coeffs.size());
    c.compared = static_cast<Int>(image.coeffs.size());
    c.low_precision = c.compared < options.min_coefficients;
    if (c.low_precision && options.strict)
      throw ValidationError("insufficient precision: " + c.op + "_" + std::to_string(ell) + " keeps " +
                            std::to_string(c.compared) + " coefficients, fewer than " +
                            std::to_string(options.min_coefficients));
    c.first_bad = first_discrepancy(image, expect);
    c.pass = !c.first_bad.has_value() && c.compared > 0;
    rep.checks.push_back(c);
  }
  return rep;
}

EigencheckReport eisenstein_eigencheck(Int p, Int P, const std::vector<Int>& primes,
                                       const EigencheckOptions& options) {
  return eigencheck_series(delta_series(p, P), p, primes, options);
}

std::pair<Rational, Rational> delta_cusp_constant(Int p) {
  require_prime(p, "p");
  const Int num = arith::checked_mul(p, p) - 1;
  const Rational at_ip(num, arith::checked_mul(24, p));
  return {at_ip, at_ip * Rational(1 - p)};
}

}  // namespace eisq::modforms
