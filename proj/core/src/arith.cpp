#include "eisq/arith.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <string>

#include "eisq/errors.hpp"

namespace eisq::arith {

namespace {

constexpr Int kIntMax = std::numeric_limits<Int>::max();
constexpr Int kIntMin = std::numeric_limits<Int>::min();

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// Brent's cycle-finding variant of Pollard rho. Returns a non-trivial factor
// of the odd composite n, or 0 when the shared budget runs out.
std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t& budget) {
  for (std::uint64_t c = 1; c < n; ++c) {
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        if (budget < lim) return 0;
        budget -= lim;
        g = gcd_u64(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u64(x > ys ? x - ys : ys - x, n);
        if (budget == 0) return 0;
        --budget;
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

void factor_into(std::uint64_t n, std::uint64_t& budget, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(static_cast<Int>(n))) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n, budget);
  if (d == 0) throw ResourceError("factorization incomplete: rho budget exhausted");
  factor_into(d, budget, out);
  factor_into(n / d, budget, out);
}

}  // namespace

Int narrow(Wide w) {
  if (w > kIntMax || w < kIntMin) throw ResourceError("integer overflow: value exceeds 64 bits");
  return static_cast<Int>(w);
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("integer overflow in multiplication");
  return r;
}

Int checked_pow(Int base, unsigned exponent) {
  Int r = 1;
  for (unsigned i = 0; i < exponent; ++i) r = checked_mul(r, base);
  return r;
}

Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int mul_mod(Int a, Int b, Int m) {
  Wide r = static_cast<Wide>(mod(a, m)) * mod(b, m) % m;
  return static_cast<Int>(r);
}

Int pow_mod(Int base, Int exponent, Int m) {
  EISQ_REQUIRE(exponent >= 0, "pow_mod: negative exponent");
  return static_cast<Int>(powmod_u64(static_cast<std::uint64_t>(mod(base, m)),
                                     static_cast<std::uint64_t>(exponent),
                                     static_cast<std::uint64_t>(m)));
}

ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Int inv_mod(Int a, Int m) {
  const auto e = ext_gcd(mod(a, m), m);
  if (e.g != 1) throw ValidationError("inv_mod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  return mod(e.x, m);
}

Int isqrt(Int n) {
  EISQ_REQUIRE(n >= 0, "isqrt of a negative number");
  if (n < 2) return n;
  // Newton iteration from an overestimate; monotone decreasing to floor(sqrt(n)).
  Wide x = static_cast<Wide>(1) << ((64 - __builtin_clzll(static_cast<unsigned long long>(n))) / 2 + 1);
  while (true) {
    const Wide y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return static_cast<Int>(x);
}

std::optional<Int> exact_sqrt(Int n) {
  if (n < 0) return std::nullopt;
  const Int r = isqrt(n);
  if (static_cast<Wide>(r) * r == n) return r;
  return std::nullopt;
}

int valuation(Int n, Int p) { return valuation(static_cast<Wide>(n), p); }

int valuation(Wide n, Int p) {
  EISQ_REQUIRE(n != 0, "valuation of zero");
  EISQ_REQUIRE(p >= 2, "valuation base must be >= 2");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int jacobi(Int a, Int n) {
  EISQ_REQUIRE(n >= 1 && (n & 1), "jacobi: modulus must be odd and positive");
  a = mod(a, n);
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const Int r = n & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

int kronecker(Int a, Int n) {
  EISQ_REQUIRE(n >= 1, "kronecker: modulus must be positive");
  int t = 1;
  while ((n & 1) == 0) {
    if ((a & 1) == 0) return 0;
    const Int r = mod(a, 8);
    if (r == 3 || r == 5) t = -t;
    n >>= 1;
  }
  return t * jacobi(a, n);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const auto u = static_cast<std::uint64_t>(n);
  for (auto b : kBases) {
    if (u == b) return true;
    if (u % b == 0) return false;
  }
  std::uint64_t d = u - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto b : kBases)
    if (miller_rabin_witness(u, b, d, s)) return false;
  return true;
}

Int Factorization::value() const {
  Int v = sign;
  for (const auto& [prime, exponent] : factors)
    v = checked_mul(v, checked_pow(prime, static_cast<unsigned>(exponent)));
  return v;
}

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

Factorization factor(Int n, const FactorOptions& options) {
  EISQ_REQUIRE(n != 0, "factor: zero has no factorization");
  Factorization result;
  result.sign = n < 0 ? -1 : 1;
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(n)
                          : static_cast<std::uint64_t>(n);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t d = 2; d <= static_cast<std::uint64_t>(options.trial_bound) && d * d <= m; d += (d == 2 ? 1 : 2)) {
    while (m % d == 0) {
      primes.push_back(d);
      m /= d;
    }
  }
  std::uint64_t budget = options.rho_iterations;
  factor_into(m, budget, primes);
  std::sort(primes.begin(), primes.end());
  for (auto p : primes) {
    if (!result.factors.empty() && result.factors.back().prime == static_cast<Int>(p))
      ++result.factors.back().exponent;
    else
      result.factors.push_back({static_cast<Int>(p), 1});
  }
  return result;
}

bool is_squarefree(Int n) { return n != 0 && factor(n).squarefree(); }

std::vector<Int> divisors(Int n) {
  EISQ_REQUIRE(n >= 1, "divisors: argument must be positive");
  std::vector<Int> out{1};
  for (const auto& [prime, exponent] : factor(n).factors) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (int e = 1; e <= exponent; ++e) {
      pk *= prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Int euler_phi(Int n) {
  EISQ_REQUIRE(n >= 1, "euler_phi: argument must be positive");
  Int r = n;
  for (const auto& pp : factor(n).factors) r = r / pp.prime * (pp.prime - 1);
  return r;
}

std::optional<Int> sqrt_mod(Int a, Int q) {
  EISQ_REQUIRE(q > 2 && is_prime(q), "sqrt_mod: modulus must be an odd prime");
  a = mod(a, q);
  if (a == 0) return 0;
  if (jacobi(a, q) != 1) return std::nullopt;
  Int x;
  if (q % 4 == 3) {
    x = pow_mod(a, (q + 1) / 4, q);
  } else {
    Int s = q - 1;
    int e = 0;
    while ((s & 1) == 0) {
      s >>= 1;
      ++e;
    }
    Int z = 2;
    while (jacobi(z, q) != -1) ++z;
    Int c = pow_mod(z, s, q);
    x = pow_mod(a, (s + 1) / 2, q);
    Int t = pow_mod(a, s, q);
    int m = e;
    while (t != 1) {
      int i = 0;
      Int tt = t;
      while (tt != 1) {
        tt = mul_mod(tt, tt, q);
        ++i;
      }
      Int b = c;
      for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, q);
      x = mul_mod(x, b, q);
      c = mul_mod(b, b, q);
      t = mul_mod(t, c, q);
      m = i;
    }
  }
  return std::min(x, q - x);
}

std::vector<Int> sqrt_mod_all(Int a, Int m) {
  EISQ_REQUIRE(m >= 1 && (m & 1), "sqrt_mod_all: modulus must be odd and positive");
  if (m == 1) return {0};
  EISQ_REQUIRE(std::gcd(mod(a, m), m) == 1, "sqrt_mod_all: argument must be coprime to the modulus");
  std::vector<Int> roots{0};
  Int modulus = 1;
  for (const auto& [q, e] : factor(m).factors) {
    const auto r0 = sqrt_mod(a, q);
    if (!r0) return {};
    const Int qe = checked_pow(q, static_cast<unsigned>(e));
    Int r = *r0;
    // Newton/Hensel lift from q to q^e; 2r stays invertible since q is odd.
    for (int k = 1; k < e; ++k) {
      const Wide f = static_cast<Wide>(r) * r - a;
      const Int fm = static_cast<Int>(((f % qe) + qe) % qe);
      r = mod(r - mul_mod(fm, inv_mod(2 * r, qe), qe), qe);
    }
    const std::array<Int, 2> local{r, mod(-r, qe)};
    std::vector<Int> next;
    for (Int prev : roots) {
      for (Int loc : local) {
        // CRT: x = prev (mod modulus), x = loc (mod qe)
        const Int k = mul_mod(loc - prev, inv_mod(modulus, qe), qe);
        next.push_back(narrow(static_cast<Wide>(prev) + static_cast<Wide>(k) * modulus));
      }
    }
    modulus = checked_mul(modulus, qe);
    roots = std::move(next);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::optional<std::pair<Int, Int>> cornacchia_4m(Int p, Int m, const CornacchiaOptions& options) {
  EISQ_REQUIRE(p > 2 && p % 4 == 3 && is_prime(p), "cornacchia_4m: p must be a prime = 3 mod 4");
  EISQ_REQUIRE(m >= 1, "cornacchia_4m: m must be positive");
  EISQ_REQUIRE(std::gcd(m, p) == 1, "cornacchia_4m: m must be coprime to p");
  const Int four_m = checked_mul(4, m);
  if (m & 1) {
    const Int bound = isqrt(four_m);
    for (Int x0 : sqrt_mod_all(-p, m)) {
      if ((x0 & 1) == 0) x0 = m - x0;  // x0^2 = -p (mod 4m) needs x0 odd
      Int a = 2 * m, b = x0;
      while (b > bound) std::tie(a, b) = std::make_pair(b, a % b);
      const Int rest = four_m - b * b;
      if (rest < 0 || rest % p != 0) continue;
      if (auto t = exact_sqrt(rest / p)) return std::make_pair(b, *t);
    }
  }
  if (m <= options.exhaustive_threshold) {
    for (Int t = 0; static_cast<Wide>(p) * t * t <= four_m; ++t) {
      if (auto s = exact_sqrt(four_m - p * t * t)) return std::make_pair(*s, t);
    }
  }
  return std::nullopt;
}

}  // namespace eisq::arith
