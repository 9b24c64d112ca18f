#pragma once

// Slow, obviously-correct reference computations. Nothing here calls into
// the library except for plain data types.

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Int = std::int64_t;

inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<Int> primes_below(Int bound) {
  std::vector<Int> out;
  for (Int n = 2; n < bound; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline Int pow_mod(Int b, Int e, Int m) {
  __int128 acc = 1, base = mod(b, m);
  while (e > 0) {
    if (e & 1) acc = acc * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return static_cast<Int>(acc);
}

/// Legendre symbol by exhaustive search for a root.
inline int legendre_brute(Int a, Int q) {
  a = mod(a, q);
  if (a == 0) return 0;
  for (Int x = 1; x < q; ++x)
    if (x * x % q == a) return 1;
  return -1;
}

/// Jacobi symbol as a product of brute Legendre symbols over the trial
/// factorization of n.
inline int jacobi_brute(Int a, Int n) {
  int s = 1;
  for (Int q = 3; n > 1; q += 2) {
    while (n % q == 0) {
      s *= legendre_brute(a, q);
      n /= q;
    }
  }
  return s;
}

/// Trial-division factorization of |n| as (prime, exponent) pairs.
inline std::vector<std::pair<Int, int>> factor(Int n) {
  std::vector<std::pair<Int, int>> out;
  if (n < 0) n = -n;
  for (Int d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline bool squarefree(Int n) {
  for (auto [q, e] : factor(n))
    if (e > 1) return false;
  return n != 0;
}

/// Kronecker symbol (D / n) for a discriminant D and n >= 1.
inline int kronecker_brute(Int D, Int n) {
  int s = 1;
  for (auto [q, e] : factor(n)) {
    int k;
    if (q == 2)
      k = D % 2 == 0 ? 0 : (mod(D, 8) == 1 || mod(D, 8) == 7 ? 1 : -1);
    else
      k = legendre_brute(D, q);
    for (int i = 0; i < e; ++i) s *= k;
  }
  return s;
}

/// Dirichlet's class number formula for D < -4:
/// h(D) = -(1/|D|) sum_{a=1}^{|D|-1} (D/a) a.
inline Int class_number_analytic(Int D) {
  Int sum = 0;
  for (Int a = 1; a < -D; ++a) sum += kronecker_brute(D, a) * a;
  return -sum / -D;
}

/// sigma(m) by trial division.
inline Int sigma(Int m) {
  Int s = 0;
  for (Int d = 1; d <= m; ++d)
    if (m % d == 0) s += d;
  return s;
}

/// Dirichlet composition of two forms with gcd(a1, a2, (b1 + b2)/2) = 1 by
/// searching for the united middle coefficient. Returns (A, B, C), unreduced.
struct Form {
  Int A, B, C;
};
inline std::optional<Form> united_compose(Form f, Form g) {
  const Int D = f.B * f.B - 4 * f.A * f.C;
  if (std::gcd(std::gcd(f.A, g.A), (f.B + g.B) / 2) != 1) return std::nullopt;
  const Int A = f.A * g.A;
  for (Int B = 0; B < 2 * A; ++B) {
    if (mod(B - f.B, 2 * f.A) != 0 || mod(B - g.B, 2 * g.A) != 0) continue;
    if (mod(B * B - D, 4 * A) != 0) continue;
    return Form{A, B, (B * B - D) / (4 * A)};
  }
  return std::nullopt;
}

/// Reduction of a positive definite form by the textbook swap/translate loop.
inline Form reduce(Form f) {
  const Int D = f.B * f.B - 4 * f.A * f.C;
  for (;;) {
    while (f.B > f.A) {
      f.B -= 2 * f.A;
    }
    while (f.B <= -f.A) {
      f.B += 2 * f.A;
    }
    f.C = (f.B * f.B - D) / (4 * f.A);
    if (f.A > f.C) {
      std::swap(f.A, f.C);
      f.B = -f.B;
      continue;
    }
    if ((f.A == f.C || f.B == -f.A) && f.B < 0) f.B = -f.B;
    return f;
  }
}

using Rng = std::mt19937_64;

inline Int uniform(Rng& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

}  // namespace oracle
