#include <doctest.h>

#include <set>

#include "eisq/classgroup.hpp"
#include "eisq/errors.hpp"
#include "eisq/quadfield.hpp"
#include "oracles.hpp"

using namespace eisq;
using namespace eisq::classgroup;

namespace {

BQForm from(const oracle::Form& f) { return {f.A, f.B, f.C}; }

const std::vector<Int> kPrimes{7, 23, 31, 47, 71, 79};

}  // namespace

TEST_CASE("class numbers") {
  CHECK(class_number(7) == 1);
  CHECK(class_number(23) == 3);
  CHECK(class_number(47) == 5);
  CHECK(class_number(31) == 3);
  CHECK(class_number(71) == 7);
  CHECK_THROWS_AS(class_number(4), ValidationError);
  CHECK_THROWS_AS(class_number(13), ValidationError);
}

TEST_CASE("reduced form enumeration") {
  CHECK(reduced_forms(-7) == std::vector<BQForm>{{1, 1, 2}});
  CHECK(reduced_forms(-23) == std::vector<BQForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
  CHECK(reduced_forms(-47) ==
        std::vector<BQForm>{{1, 1, 12}, {2, -1, 6}, {2, 1, 6}, {3, -1, 4}, {3, 1, 4}});
  for (Int D = -3; D > -2000; --D) {
    if (!is_fundamental_discriminant(D)) continue;
    for (const auto& f : reduced_forms(D)) {
      CHECK(f.is_reduced());
      CHECK(f.disc() == D);
    }
    if (D < -4) CHECK(class_number_disc(D) == oracle::class_number_analytic(D));
  }
  CHECK(class_number_disc(-3) == 1);
  CHECK(class_number_disc(-4) == 1);
}

TEST_CASE("class numbers of -p are odd") {
  for (Int p = 7; p < 3000; p += 4)
    if (oracle::is_prime(p)) CHECK(class_number(p) % 2 == 1);
}

TEST_CASE("fundamental discriminants") {
  CHECK(is_fundamental_discriminant(-3));
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(-8));
  CHECK(is_fundamental_discriminant(-20));
  CHECK_FALSE(is_fundamental_discriminant(-12));
  CHECK_FALSE(is_fundamental_discriminant(-16));
  CHECK_FALSE(is_fundamental_discriminant(-27));
  CHECK_FALSE(is_fundamental_discriminant(5));
  CHECK(roots_of_unity(-3) == 6);
  CHECK(roots_of_unity(-4) == 4);
  CHECK(roots_of_unity(-7) == 2);
}

TEST_CASE("composition examples") {
  CHECK(compose({2, 1, 3}, {2, 1, 3}) == BQForm{2, -1, 3});
  CHECK(compose(principal(-23), {2, 1, 3}) == BQForm{2, 1, 3});
  CHECK(compose({2, 1, 3}, inverse({2, 1, 3})) == principal(-23));
  CHECK(principal(-7) == BQForm{1, 1, 2});
  CHECK_THROWS_AS(compose({1, 1, 2}, {1, 1, 6}), ValidationError);
}

TEST_CASE("composition agrees with united-form search") {
  int checked = 0;
  for (Int D = -3; D > -1500; --D) {
    if (!is_fundamental_discriminant(D)) continue;
    const auto forms = reduced_forms(D);
    for (const auto& f : forms)
      for (const auto& g : forms) {
        const auto u = oracle::united_compose({f.A, f.B, f.C}, {g.A, g.B, g.C});
        if (!u) continue;
        CHECK(compose(f, g) == from(oracle::reduce(*u)));
        ++checked;
      }
  }
  CHECK(checked > 1000);
}

TEST_CASE("group laws") {
  oracle::Rng rng(31);
  for (Int p : kPrimes) {
    const Int D = -p;
    const auto forms = reduced_forms(D);
    const Int h = static_cast<Int>(forms.size());
    for (const auto& f : forms) {
      std::set<BQForm> row;
      for (const auto& g : forms) row.insert(compose(f, g));
      CHECK(static_cast<Int>(row.size()) == h);
      CHECK(compose(f, inverse(f)) == principal(D));
      CHECK(compose(principal(D), f) == f);
      CHECK(h % class_order(f) == 0);
      CHECK(power(f, class_order(f)) == principal(D));
    }
    for (int i = 0; i < 200; ++i) {
      const auto& a = forms[oracle::uniform(rng, 0, h - 1)];
      const auto& b = forms[oracle::uniform(rng, 0, h - 1)];
      const auto& c = forms[oracle::uniform(rng, 0, h - 1)];
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      CHECK(compose(a, b) == compose(b, a));
    }
  }
}

TEST_CASE("class orders") {
  CHECK(class_order(principal(-23)) == 1);
  CHECK(class_order({2, 1, 3}) == 3);
  CHECK(class_order({7, 7, 2}) == 1);
  CHECK(power({2, 1, 3}, -1) == BQForm{2, -1, 3});
}

TEST_CASE("prime forms") {
  CHECK(prime_form(-7, 7) == BQForm{7, 7, 2});
  CHECK(prime_form(-7, 11) == BQForm{1, 1, 2});
  const BQForm f3 = prime_form(-23, 3);
  CHECK(f3.disc() == -23);
  CHECK((f3 == BQForm{2, 1, 3} || f3 == BQForm{2, -1, 3}));
  CHECK_THROWS_AS(prime_form(-7, 5), ValidationError);
  CHECK_THROWS_AS(prime_form(-23, 2), ValidationError);
  CHECK(prime_form(-3, 13).disc() == -3);
  CHECK(prime_form(-4, 5) == BQForm{1, 0, 1});
}

TEST_CASE("split prime classes are principal iff the prime is a norm") {
  for (Int p : kPrimes) {
    const quad::FieldCtx k(p);
    for (Int q : oracle::primes_below(300)) {
      if (q == 2 || q == p || oracle::legendre_brute(-p, q) != 1) continue;
      bool norm = false;
      for (Int b = 0; !norm && p * b * b <= 4 * q; ++b)
        for (Int a = -2 * q; a <= 2 * q && !norm; ++a) norm = k.element(a, b).norm() == q;
      CHECK((prime_form(-p, q) == principal(-p)) == norm);
    }
  }
}

TEST_CASE("ideal class of an eta datum") {
  // level p^2 special function with the ramified prime above p
  for (Int p : {7, 23, 31, 47}) {
    const auto r = ideal_class_of_eta_datum(-p, p * p, {{1, -1}, {p, p + 1}, {p * p, -p}});
    CHECK(r.exponent == (p - 1) / 2);
    CHECK(r.order == class_order(power(prime_form(-p, p), (p - 1) / 2)));
    CHECK(r.h_r * r.order == class_number(p));
  }
  const auto zero = ideal_class_of_eta_datum(-23, 13, {{1, 0}, {13, 0}});
  CHECK(zero.order == 1);
  CHECK(zero.h_r == 3);
  const auto triv = ideal_class_of_eta_datum(-7, 11, {{1, 12}, {11, -12}});
  CHECK(triv.order == 1);
  CHECK(triv.h_r == 1);
  CHECK_THROWS_WITH_AS(ideal_class_of_eta_datum(-7, 11, {{1, 1}, {11, -1}}),
                       doctest::Contains("not a square ideal"), ValidationError);
  CHECK_THROWS_AS(ideal_class_of_eta_datum(-7, 5, {{1, 2}, {5, -2}}), ValidationError);
  // 3 splits in Q(sqrt(-23)) and its prime has order 3
  const auto split = ideal_class_of_eta_datum(-23, 3, {{1, 2}, {3, -2}});
  CHECK(split.exponent == 1);
  CHECK(split.order == 3);
  CHECK(split.h_r == 1);
}
