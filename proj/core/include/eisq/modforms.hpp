#pragma once

// Truncated q-expansions of weight-2 forms with integer coefficients and the
// Hecke operators acting on them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "eisq/arith.hpp"

namespace eisq::modforms {

using arith::Int;
using Rational = boost::rational<Int>;

/// a_0 + a_1 q + ... + a_P q^P; coefficients past P are unknown.
struct QSeries {
  std::vector<Int> coeffs;
  Int level = 1;
  int weight = 2;

  Int precision() const { return static_cast<Int>(coeffs.size()) - 1; }
  Int operator[](Int m) const { return coeffs.at(static_cast<std::size_t>(m)); }
};

Int sigma(Int m);
/// Sum of the divisors of m prime to p.
Int sigma_prime(Int m, Int p);

QSeries add(const QSeries& f, const QSeries& g);
QSeries scale(const QSeries& f, Int c);
/// First index below the common precision where f and g differ.
std::optional<Int> first_discrepancy(const QSeries& f, const QSeries& g);

/// e = (1 - p) - 24 sum sigma'(m) q^m on Gamma_0(p).
QSeries eisenstein_e(Int p, Int P);
/// e(pz), level p^2.
QSeries eisenstein_e_p(Int p, Int P);
/// delta = sum_{(m,p)=1} sigma(m) q^m on Gamma_0(p^2); checked against
/// (e(pz) - e(z)) / 24 coefficientwise before returning.
QSeries delta_series(Int p, Int P);

/// (T_l f)_m = a_{lm} + l a_{m/l}, to precision floor(P / l). Needs l prime
/// to the level.
QSeries hecke_T(const QSeries& f, Int ell);
/// (U_l f)_m = a_{lm}, to precision floor(P / l). Needs l | level.
QSeries hecke_U(const QSeries& f, Int ell);

struct EigencheckOptions {
  /// Operators keeping fewer coefficients than this are flagged.
  Int min_coefficients = 20;
  /// Turn the flag into a ValidationError.
  bool strict = false;
};

struct OperatorCheck {
  std::string op;      // "T" or "U"
  Int ell = 0;
  Int eigenvalue = 0;  // 1 + l for T, 0 for U_p
  Int compared = 0;    // coefficients a_0 .. a_{compared-1}
  bool pass = false;
  std::optional<Int> first_bad;
  bool low_precision = false;
};

struct EigencheckReport {
  Int p = 0;
  Int precision = 0;
  std::vector<OperatorCheck> checks;
  bool all_pass() const;
};

/// T_l delta = (1 + l) delta for l != p and U_p delta = 0 on the given series.
EigencheckReport eigencheck_series(const QSeries& delta, Int p, const std::vector<Int>& primes,
                                   const EigencheckOptions& options = {});
EigencheckReport eisenstein_eigencheck(Int p, Int P, const std::vector<Int>& primes,
                                       const EigencheckOptions& options = {});

/// Leading constants of delta at the cusps [i/p] and [0]:
/// (p^2 - 1) / (24 p) and (p^2 - 1)(1 - p) / (24 p).
std::pair<Rational, Rational> delta_cusp_constant(Int p);

}  // namespace eisq::modforms
