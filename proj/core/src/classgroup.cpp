#include "eisq/classgroup.hpp"

#include <algorithm>
#include <numeric>

#include "eisq/errors.hpp"

namespace eisq::classgroup {

using arith::Wide;

namespace {

Int floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return arith::narrow(q);
}

Int c_for(Int D, Int A, Int B) {
  const Wide num = static_cast<Wide>(B) * B - D;
  EISQ_CHECK(num % (4 * static_cast<Wide>(A)) == 0, "form coefficients do not fit the discriminant");
  return arith::narrow(num / (4 * static_cast<Wide>(A)));
}

}  // namespace

Int BQForm::disc() const {
  return arith::narrow(static_cast<Wide>(B) * B - 4 * static_cast<Wide>(A) * C);
}

bool BQForm::is_reduced() const {
  const Int aB = B < 0 ? -B : B;
  if (A <= 0 || aB > A || A > C) return false;
  if ((aB == A || A == C) && B < 0) return false;
  return true;
}

std::string BQForm::str() const {
  return "(" + std::to_string(A) + "," + std::to_string(B) + "," + std::to_string(C) + ")";
}

bool is_fundamental_discriminant(Int D) {
  if (D >= 0) return false;
  if (arith::mod(D, 4) == 1) return arith::is_squarefree(-D);
  if (D % 4 != 0) return false;
  const Int m = D / 4;
  const Int r = arith::mod(m, 4);
  return (r == 2 || r == 3) && arith::is_squarefree(-m);
}

void require_fundamental(Int D) {
  EISQ_REQUIRE(is_fundamental_discriminant(D),
               std::to_string(D) + " is not a negative fundamental discriminant");
}

int roots_of_unity(Int D) {
  if (D == -4) return 4;
  if (D == -3) return 6;
  return 2;
}

BQForm reduce(BQForm f) {
  const Int D = f.disc();
  EISQ_REQUIRE(D < 0 && f.A > 0, "reduce: form must be positive definite");
  for (;;) {
    if (!(-f.A < f.B && f.B <= f.A)) {
      const Int k = floor_div(static_cast<Wide>(f.A) - f.B, 2 * static_cast<Wide>(f.A));
      f.B = arith::narrow(f.B + 2 * static_cast<Wide>(k) * f.A);
      f.C = c_for(D, f.A, f.B);
    }
    if (f.A > f.C) {
      std::swap(f.A, f.C);
      f.B = -f.B;
      continue;
    }
    if ((f.A == f.C || f.B == -f.A) && f.B < 0) f.B = -f.B;
    return f;
  }
}

BQForm principal(Int D) {
  EISQ_REQUIRE(D < 0 && (arith::mod(D, 4) == 0 || arith::mod(D, 4) == 1), "invalid discriminant");
  const Int b = arith::mod(D, 2);
  return {1, b, c_for(D, 1, b)};
}

BQForm inverse(const BQForm& f) { return reduce({f.A, -f.B, f.C}); }

BQForm compose(const BQForm& f, const BQForm& g) {
  const Int D = f.disc();
  if (g.disc() != D) throw ValidationError("compose: discriminant mismatch");
  BQForm f1 = f, f2 = g;
  if (f1.A > f2.A) std::swap(f1, f2);
  const Int s = (f1.B + f2.B) / 2;
  const Int n = f2.B - s;
  Int y1 = 0, d = f1.A;
  if (f2.A % f1.A != 0) {
    const auto e = arith::ext_gcd(f2.A, f1.A);
    y1 = e.x;
    d = e.g;
  }
  Int x2 = 0, y2 = -1, d1 = d;
  if (s % d != 0) {
    const auto e = arith::ext_gcd(s, d);
    x2 = e.x;
    y2 = -e.y;
    d1 = e.g;
  }
  const Int v1 = f1.A / d1;
  const Int v2 = f2.A / d1;
  const Wide rw = static_cast<Wide>(y1) * y2 % v1 * n % v1 - static_cast<Wide>(x2) * f2.C % v1;
  Int r = arith::narrow(rw % v1);
  if (r < 0) r += v1;
  const Int A3 = arith::checked_mul(v1, v2);
  const Int B3 = arith::narrow(f2.B + 2 * static_cast<Wide>(v2) * r);
  return reduce({A3, B3, c_for(D, A3, B3)});
}

BQForm power(const BQForm& f, Int k) {
  BQForm base = k < 0 ? inverse(f) : reduce(f);
  if (k < 0) k = -k;
  BQForm acc = principal(f.disc());
  while (k > 0) {
    if (k & 1) acc = compose(acc, base);
    base = compose(base, base);
    k >>= 1;
  }
  return acc;
}

std::vector<BQForm> reduced_forms(Int D) {
  EISQ_REQUIRE(D < 0 && (arith::mod(D, 4) == 0 || arith::mod(D, 4) == 1), "invalid discriminant");
  std::vector<BQForm> out;
  const Int bmax = arith::isqrt(-D / 3);
  for (Int b = arith::mod(D, 2); b <= bmax; b += 2) {
    const Int m = (b * b - D) / 4;
    for (Int a = std::max<Int>(b, 1); a * a <= m; ++a) {
      if (m % a != 0) continue;
      const Int c = m / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
      if (b != 0 && b != a && a != c) out.push_back({a, -b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Int class_number_disc(Int D) { return static_cast<Int>(reduced_forms(D).size()); }

Int class_number(Int p) {
  EISQ_REQUIRE(p > 3 && p % 4 == 3 && arith::is_prime(p),
               "p must be a prime > 3 with p = 3 (mod 4), got " + std::to_string(p));
  return class_number_disc(-p);
}

Int class_order(const BQForm& f) {
  const BQForm one = principal(f.disc());
  const BQForm g = reduce(f);
  BQForm acc = g;
  Int k = 1;
  const Int h = class_number_disc(f.disc());
  while (acc != one) {
    acc = compose(acc, g);
    ++k;
    EISQ_CHECK(k <= h, "class order exceeds the class number");
  }
  EISQ_CHECK(h % k == 0, "class order does not divide the class number");
  return k;
}

BQForm prime_form(Int D, Int q) {
  EISQ_REQUIRE(q > 2 && arith::is_prime(q), "prime_form: q must be an odd prime");
  if (D % q == 0) {
    if (arith::mod(D, 2) == 1) return {q, q, c_for(D, q, q)};
    return {q, 0, c_for(D, q, 0)};
  }
  EISQ_REQUIRE(arith::kronecker(D, q) == 1, std::to_string(q) + " is inert for discriminant " + std::to_string(D));
  Int B = *arith::sqrt_mod(arith::mod(D, q), q);
  if (arith::mod(B, 2) != arith::mod(D, 2)) B = q - B;
  return reduce({q, B, c_for(D, q, B)});
}

EtaIdealClass ideal_class_of_eta_datum(Int D, Int N, const std::map<Int, Int>& r) {
  require_fundamental(D);
  const auto f = arith::factor(N);
  EISQ_REQUIRE(N > 1 && f.factors.size() == 1 && f.factors[0].exponent <= 2,
               "level must be p or p^2");
  const Int p = f.factors[0].prime;
  EISQ_REQUIRE(p > 2 && arith::kronecker(D, p) != -1, "the prime of the level is inert in K");
  Int E = 0;
  for (const auto& [d, rd] : r) {
    EISQ_REQUIRE(d > 0 && N % d == 0, "exponent index " + std::to_string(d) + " does not divide N");
    E = arith::checked_add(E, arith::checked_mul(rd, arith::valuation(d, p)));
  }
  if (E % 2 != 0) throw ValidationError("not a square ideal: total exponent " + std::to_string(E) + " is odd");
  const Int e = -E / 2;
  const BQForm cls = power(prime_form(D, p), e);
  const Int o = class_order(cls);
  return {cls, e, o, class_number_disc(D) / o};
}

}  // namespace eisq::classgroup
