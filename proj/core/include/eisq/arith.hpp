#pragma once

// Exact integer primitives shared by every other module.
//
// Everything works on signed 64-bit integers. Intermediate products go
// through __int128 and any result that would leave the 64-bit range raises
// ResourceError instead of wrapping.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace eisq::arith {

using Int = std::int64_t;
using Wide = __int128;

struct PrimePower {
  Int prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = sign * prod(prime^exponent), primes strictly ascending.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  /// Recomposes the factored value; throws ResourceError on overflow.
  Int value() const;
  bool squarefree() const;
};

struct FactorOptions {
  /// Upper bound on Pollard rho iterations summed over the whole run.
  std::uint64_t rho_iterations = 1'000'000;
  /// Trial division runs over all primes up to this bound first.
  Int trial_bound = 1000;
};

struct CornacchiaOptions {
  /// For m at or below this bound an exhaustive search over t runs whenever
  /// the Cornacchia descent finds nothing.
  Int exhaustive_threshold = 1'000'000;
};

// Checked arithmetic -------------------------------------------------------

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_pow(Int base, unsigned exponent);
Int narrow(Wide w);

/// Least non-negative residue of a modulo m (m > 0).
Int mod(Int a, Int m);
Int mul_mod(Int a, Int b, Int m);
Int pow_mod(Int base, Int exponent, Int m);
/// Inverse of a modulo m; throws ValidationError when gcd(a, m) != 1.
Int inv_mod(Int a, Int m);

struct ExtGcd {
  Int g, x, y;  // g = x*a + y*b, g >= 0
};
ExtGcd ext_gcd(Int a, Int b);

/// Largest r with r*r <= n (n >= 0).
Int isqrt(Int n);
std::optional<Int> exact_sqrt(Int n);

/// Exponent of the prime p in n (n != 0).
int valuation(Int n, Int p);
int valuation(Wide n, Int p);

// Symbols and primes -------------------------------------------------------

/// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(Int a, Int n);
/// Kronecker symbol (a/n) for n >= 1, extending Jacobi to even n.
int kronecker(Int a, Int n);

/// Deterministic Miller-Rabin for the full signed 64-bit range using the
/// first twelve primes as bases, which is exact below 3.3 * 10^24.
bool is_prime(Int n);

/// Complete factorization via trial division then Brent's variant of
/// Pollard rho. Throws ResourceError("factorization incomplete") when the
/// rho budget runs out, and ValidationError for n == 0.
Factorization factor(Int n, const FactorOptions& options = {});

bool is_squarefree(Int n);
/// Positive divisors of n > 0 in ascending order.
std::vector<Int> divisors(Int n);
Int euler_phi(Int n);

// Square roots and norm equations ------------------------------------------

/// Tonelli-Shanks. For an odd prime q returns the root of x^2 = a (mod q)
/// with the smaller value of min(x, q - x), or nullopt for a non-residue.
std::optional<Int> sqrt_mod(Int a, Int q);

/// All roots of x^2 = a (mod m) in [0, m) for odd m with gcd(a, m) = 1,
/// ascending. Built from Hensel lifts at each prime power and CRT.
std::vector<Int> sqrt_mod_all(Int a, Int m);

/// Solves s^2 + p*t^2 = 4m in non-negative integers for a prime p = 3 mod 4
/// and gcd(m, p) = 1. Runs the modified Cornacchia descent on 4m over every
/// square root of -p modulo m (odd m), which yields the primitive
/// representations; when that finds nothing and m is small, an exhaustive
/// scan over t takes over.
std::optional<std::pair<Int, Int>> cornacchia_4m(Int p, Int m,
                                                 const CornacchiaOptions& options = {});

}  // namespace eisq::arith
