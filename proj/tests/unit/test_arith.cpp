#include <doctest.h>

#include "eisq/arith.hpp"
#include "eisq/errors.hpp"
#include "oracles.hpp"

using namespace eisq;
using namespace eisq::arith;

TEST_CASE("jacobi examples") {
  CHECK(jacobi(2, 7) == 1);
  CHECK(jacobi(3, 7) == -1);
  CHECK(jacobi(-7, 11) == 1);
  CHECK(jacobi(0, 1) == 1);
  CHECK(jacobi(6, 9) == 0);
  CHECK_THROWS_AS(jacobi(3, 8), ValidationError);
  CHECK_THROWS_AS(jacobi(3, -7), ValidationError);
  CHECK_THROWS_AS(jacobi(3, 0), ValidationError);
}

TEST_CASE("jacobi is multiplicative and matches brute force") {
  oracle::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Int n = 2 * oracle::uniform(rng, 0, 2000) + 1;
    const Int a = oracle::uniform(rng, -5000, 5000);
    const Int b = oracle::uniform(rng, -5000, 5000);
    CHECK(jacobi(a, n) * jacobi(b, n) == jacobi(a * b, n));
    CHECK(jacobi(a, n) == oracle::jacobi_brute(a, n));
  }
}

TEST_CASE("jacobi agrees with Euler's criterion at primes") {
  oracle::Rng rng(12);
  const auto primes = oracle::primes_below(5000);
  for (int i = 0; i < 500; ++i) {
    const Int q = primes[oracle::uniform(rng, 1, primes.size() - 1)];
    const Int a = oracle::uniform(rng, -100000, 100000);
    const Int e = oracle::pow_mod(a, (q - 1) / 2, q);
    const int expect = e == 0 ? 0 : (e == 1 ? 1 : -1);
    CHECK(jacobi(a, q) == expect);
  }
}

TEST_CASE("kronecker extends jacobi to even moduli") {
  for (Int D : {-3, -4, -7, -8, -15, -19, -20, -23, -24}) {
    for (Int n = 1; n < 200; ++n) CHECK(kronecker(D, n) == oracle::kronecker_brute(D, n));
  }
}

TEST_CASE("is_prime examples and agreement with trial division") {
  CHECK(is_prime(73));
  CHECK_FALSE(is_prime(49));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(-7));
  for (Int n = 0; n < 20000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
  CHECK(is_prime(1'000'000'007));
  CHECK(is_prime(9'223'372'036'854'775'783LL));
  CHECK_FALSE(is_prime(3'215'031'751LL));          // strong pseudoprime to 2, 3, 5, 7
  CHECK_FALSE(is_prime(3'825'123'056'546'413'051LL));  // strong pseudoprime to bases up to 23
}

TEST_CASE("factor examples") {
  const auto f = factor(-33);
  CHECK(f.sign == -1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PrimePower{3, 1});
  CHECK(f.factors[1] == PrimePower{11, 1});

  const auto g = factor(4 * 29 * 29 * 29);
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0] == PrimePower{2, 2});
  CHECK(g.factors[1] == PrimePower{29, 3});

  CHECK(factor(1).factors.empty());
  CHECK_THROWS_AS(factor(0), ValidationError);
}

TEST_CASE("factor recomposes exactly") {
  oracle::Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Int n = oracle::uniform(rng, -1'000'000'000'000LL, 1'000'000'000'000LL);
    if (n == 0) continue;
    const auto f = factor(n);
    CHECK(f.value() == n);
    Int prev = 1;
    for (const auto& pp : f.factors) {
      CHECK(is_prime(pp.prime));
      CHECK(pp.prime > prev);
      prev = pp.prime;
    }
  }
  // a semiprime with two large factors needs rho
  const Int n = 1'000'003LL * 999'983LL;
  const auto f = factor(n);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].prime == 999'983);
}

TEST_CASE("factor reports an exhausted rho budget") {
  FactorOptions tight;
  tight.rho_iterations = 1;
  CHECK_THROWS_AS(factor(1'000'003LL * 999'983LL, tight), ResourceError);
}

TEST_CASE("sqrt_mod examples") {
  CHECK(sqrt_mod(-7, 11) == 2);
  CHECK_FALSE(sqrt_mod(3, 5).has_value());
  CHECK(sqrt_mod(0, 7) == 0);
}

TEST_CASE("sqrt_mod roots square back") {
  for (Int q : oracle::primes_below(600)) {
    if (q == 2) continue;
    for (Int a = -40; a < 3 * q; a += 3) {
      const auto r = sqrt_mod(a, q);
      CHECK(r.has_value() == (oracle::legendre_brute(a, q) != -1));
      if (r) {
        CHECK(mod(*r * *r - a, q) == 0);
        CHECK(*r <= q - *r);
      }
    }
  }
  CHECK(sqrt_mod(-23, 1'000'000'007).has_value() == (jacobi(-23, 1'000'000'007) == 1));
}

TEST_CASE("sqrt_mod_all finds every root modulo odd composites") {
  for (Int m : {9, 15, 21, 45, 77, 121, 225, 343, 1001}) {
    for (Int a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      std::vector<Int> brute;
      for (Int x = 0; x < m; ++x)
        if (x * x % m == a) brute.push_back(x);
      CHECK(sqrt_mod_all(a, m) == brute);
    }
  }
}

TEST_CASE("cornacchia_4m examples") {
  CHECK(cornacchia_4m(7, 11) == std::pair<Int, Int>{4, 2});
  CHECK(cornacchia_4m(7, 29) == std::pair<Int, Int>{2, 4});
  CHECK_FALSE(cornacchia_4m(7, 3).has_value());
}

TEST_CASE("cornacchia_4m solutions are exact and existence matches brute force") {
  for (Int p : {7, 11, 19, 23, 31, 43, 47}) {
    for (Int m = 1; m < 800; ++m) {
      if (m % p == 0) continue;
      bool brute = false;
      for (Int t = 0; p * t * t <= 4 * m && !brute; ++t) {
        const Int r = 4 * m - p * t * t;
        const Int s = isqrt(r);
        brute = s * s == r;
      }
      const auto sol = cornacchia_4m(p, m);
      CHECK(sol.has_value() == brute);
      if (sol) {
        CHECK(sol->first >= 0);
        CHECK(sol->second >= 0);
        CHECK(sol->first * sol->first + p * sol->second * sol->second == 4 * m);
      }
    }
  }
}

TEST_CASE("cornacchia descent without fallback still solves split prime powers") {
  CornacchiaOptions off;
  off.exhaustive_threshold = 0;
  // 13^3 for p = 23 (class number 3)
  const auto sol = cornacchia_4m(23, 13 * 13 * 13, off);
  REQUIRE(sol.has_value());
  CHECK(sol->first * sol->first + 23 * sol->second * sol->second == 4 * 2197);
}

TEST_CASE("checked arithmetic raises on overflow") {
  CHECK_THROWS_AS(checked_mul(Int{1} << 62, 4), ResourceError);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), ResourceError);
  CHECK_THROWS_AS(checked_pow(10, 19), ResourceError);
  CHECK(checked_pow(10, 18) == 1'000'000'000'000'000'000LL);
}

TEST_CASE("isqrt and valuations") {
  for (Int n = 0; n < 100000; n += 7) {
    const Int r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
  CHECK(isqrt(INT64_MAX) == 3037000499LL);
  CHECK(valuation(Int{4 * 29 * 29 * 29}, 29) == 3);
  CHECK(valuation(Int{-48}, 2) == 4);
  CHECK(euler_phi(36) == 12);
  CHECK(divisors(12) == std::vector<Int>{1, 2, 3, 4, 6, 12});
  CHECK(is_squarefree(-15));
  CHECK_FALSE(is_squarefree(18));
}
