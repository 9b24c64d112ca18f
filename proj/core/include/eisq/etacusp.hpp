#pragma once

// Eta products on X0(N), their divisors at the cusps, and orders of rational
// cuspidal divisor classes. Supported levels for the lattice computations
// are N = p and N = p^2.

#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "eisq/arith.hpp"

namespace eisq::etacusp {

using arith::Int;
using Rational = boost::rational<Int>;

struct Cusp {
  Int level = 0;  // c | N, the cusp is x/c
  Int x = 0;      // residue modulo gcd(c, N/c), coprime to it
  Int width = 0;  // N / gcd(c^2, N)
};

struct CuspSet {
  Int N = 0;
  std::vector<Cusp> cusps;  // levels ascending, then x ascending

  int size() const { return static_cast<int>(cusps.size()); }
  /// number of cusps of level c
  int orbit_size(Int c) const;
};

CuspSet cusp_set(Int N);

struct EtaExponents {
  Int N = 0;
  std::map<Int, Int> r;  // divisor d -> r_d, absent means 0

  Int at(Int d) const;
  /// Exponents listed in ascending divisor order.
  static EtaExponents from_list(Int N, const std::vector<Int>& values);
  std::vector<Int> as_list() const;
};

struct LigozatReport {
  Int sum = 0;            // sum r_d
  Int weighted = 0;       // sum d r_d
  Int coweighted = 0;     // sum (N/d) r_d
  bool sum_zero = false;
  bool weighted_ok = false;
  bool coweighted_ok = false;
  bool square_ok = false;
  std::vector<Int> odd_primes;  // primes with odd exponent in prod d^r_d

  bool ok() const { return sum_zero && weighted_ok && coweighted_ok && square_ok; }
};

/// Throws ValidationError if r has an entry at a non-divisor of N.
LigozatReport ligozat_check(const EtaExponents& r);

struct CuspDivisor {
  Int N = 0;
  std::vector<Int> coeffs;  // indexed like cusp_set(N).cusps

  Int degree() const;
  bool is_rational() const;
  /// Coefficient per level; throws ValidationError when not rational.
  std::map<Int, Int> level_coefficients() const;
  static CuspDivisor from_levels(Int N, const std::map<Int, Int>& m);
  std::string str() const;

  friend bool operator==(const CuspDivisor&, const CuspDivisor&) = default;
};

/// Order of the eta product at a cusp of level c, in the local parameter.
Rational eta_order_at_level(const EtaExponents& r, Int c);

struct EtaDivisor {
  std::vector<Rational> orders;  // per cusp
  LigozatReport ligozat;
  bool integral = false;
  CuspDivisor divisor;  // filled when integral

  bool rational() const { return ligozat.ok(); }
};

EtaDivisor eta_divisor(const EtaExponents& r);

/// Level p or p^2 with p prime; returns p. Throws ValidationError otherwise.
Int supported_prime(Int N);

/// Generators of the lattice of eta exponents passing all four conditions.
std::vector<EtaExponents> rational_eta_lattice(Int N);

struct OrderOptions {
  bool verify_shuffled = true;  // recompute under a randomly transformed basis
  std::uint64_t shuffle_seed = 0x5eed;
};

/// Least n >= 1 with n D the divisor of a rational eta product.
Int cuspidal_class_order(const CuspDivisor& D, const OrderOptions& options = {});

/// [0] - [inf] at level p.
CuspDivisor zero_minus_infinity(Int N);
/// C1 = [0] - [inf] and Cp = P_p - (p-1)[inf] at level p^2.
CuspDivisor level_p2_c1(Int p);
CuspDivisor level_p2_cp(Int p);

struct ClosedForm {
  Int a = 0;
  Int b = 0;
  std::vector<Int> invariants;  // nontrivial entries of (a, a, b)
  bool matches = false;
};

struct CuspidalGroupReport {
  Int p = 0;
  std::vector<Int> invariants;  // SNF of the rational cuspidal group, entries > 1
  Int order_c1 = 0;
  Int order_cp = 0;
  ClosedForm gcd12;  // (p-1)/(p-1,12), (p+1)/(p+1,12)
  ClosedForm gcd24;  // (p-1)/(p-1,24), (p+1)/(p+1,24)
};

CuspidalGroupReport cuspidal_group_invariants(Int p);

enum class SpecialKind { prime_level, p2_level };

struct SpecialFunction {
  EtaExponents r;
  Int n = 0;           // multiplicity in the stated divisor
  CuspDivisor divisor; // stated divisor, checked against eta_divisor
};

/// Throws ConsistencyError if the conditions fail or the divisor differs.
SpecialFunction special_function(SpecialKind kind, Int p);

}  // namespace eisq::etacusp
