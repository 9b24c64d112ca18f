#include "eisq/quadfield.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "eisq/errors.hpp"

namespace eisq::quad {

using arith::checked_add;
using arith::checked_mul;
using arith::mod;
using arith::mul_mod;
using arith::Wide;

namespace {

void same_field(const QuadInt& x, const QuadInt& y) {
  if (x.p != y.p) throw ValidationError("quadratic integers from different fields");
}

Int c_of(Int p) { return (1 + p) / 4; }

// v_p of a possibly-zero integer; zero reports a sentinel larger than any
// real valuation.
int val_or_inf(Int n, Int p) { return n == 0 ? 1 << 28 : arith::valuation(n, p); }

Int strip(Int n, Int p, int k) {
  for (int i = 0; i < k; ++i) n /= p;
  return n;
}

}  // namespace

QuadInt QuadInt::conj() const { return {checked_add(a, b), -b, p}; }

Int QuadInt::norm() const {
  const Wide n = static_cast<Wide>(a) * a + static_cast<Wide>(a) * b + static_cast<Wide>(b) * b * c_of(p);
  return arith::narrow(n);
}

std::string QuadInt::str() const {
  if (b == 0) return std::to_string(a);
  std::string s = a == 0 ? "" : std::to_string(a) + (b > 0 ? "+" : "-");
  if (a == 0 && b < 0) s += "-";
  const Int mb = b < 0 ? -b : b;
  if (mb != 1) s += std::to_string(mb) + "*";
  return s + "w";
}

QuadInt operator+(const QuadInt& x, const QuadInt& y) {
  same_field(x, y);
  return {checked_add(x.a, y.a), checked_add(x.b, y.b), x.p};
}

QuadInt operator-(const QuadInt& x) { return {checked_mul(-1, x.a), checked_mul(-1, x.b), x.p}; }

QuadInt operator-(const QuadInt& x, const QuadInt& y) { return x + (-y); }

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
  same_field(x, y);
  const Wide c = c_of(x.p);
  const Wide bb = static_cast<Wide>(x.b) * y.b;
  const Wide a = static_cast<Wide>(x.a) * y.a - c * bb;
  const Wide b = static_cast<Wide>(x.a) * y.b + static_cast<Wide>(y.a) * x.b + bb;
  return {arith::narrow(a), arith::narrow(b), x.p};
}

const char* to_string(PlaceKind kind) {
  switch (kind) {
    case PlaceKind::split_factor: return "split";
    case PlaceKind::split_conjugate: return "split-conj";
    case PlaceKind::inert: return "inert";
    case PlaceKind::ramified: return "ramified";
  }
  return "?";
}

std::string Place::str() const {
  switch (kind) {
    case PlaceKind::ramified: return "pi";
    case PlaceKind::inert: return "(" + std::to_string(prime) + ")";
    default: return "(" + std::to_string(prime) + ", w-" + std::to_string(root) + ")";
  }
}

FieldCtx::FieldCtx(Int p) : p_(p), c_(c_of(p)) {
  EISQ_REQUIRE(p > 3 && p % 4 == 3 && arith::is_prime(p),
               "field parameter p must be a prime > 3 with p = 3 (mod 4), got " + std::to_string(p));
}

Place FieldCtx::ramified_place() const {
  // w = (1 + pi) / 2 = 1/2 modulo pi.
  return {PlaceKind::ramified, p_, arith::inv_mod(2, p_), 1};
}

Place FieldCtx::inert_place(Int Q) const {
  EISQ_REQUIRE(Q > 2 && arith::is_prime(Q), "inert place needs an odd prime");
  EISQ_REQUIRE(classify_prime(*this, Q) == Splitting::inert, std::to_string(Q) + " is not inert");
  return {PlaceKind::inert, Q, 0, 2};
}

Place FieldCtx::split_place(Int q, Int root, PlaceKind kind) const {
  EISQ_REQUIRE(q > 2 && arith::is_prime(q), "split place needs an odd prime");
  EISQ_REQUIRE(kind == PlaceKind::split_factor || kind == PlaceKind::split_conjugate, "not a split kind");
  root = mod(root, q);
  const Int f = mod(static_cast<Int>((static_cast<Wide>(root) * root - root + c_) % q), q);
  EISQ_REQUIRE(f == 0, "root does not satisfy the minimal polynomial of w modulo q");
  EISQ_REQUIRE(q != p_, "p is ramified, not split");
  return {kind, q, root, 1};
}

Place FieldCtx::place_of(const QuadInt& y) const {
  EISQ_REQUIRE(y.p == p_, "element from a different field");
  EISQ_REQUIRE(!y.is_zero(), "zero has no place");
  const Int n = y.norm();
  if (n % p_ == 0) {
    EISQ_REQUIRE(arith::factor(n).factors.size() == 1, "element is not a prime power above p");
    return ramified_place();
  }
  if (y.b == 0) {
    const Int Q = y.a < 0 ? -y.a : y.a;
    return inert_place(Q);
  }
  const auto f = arith::factor(n);
  EISQ_REQUIRE(f.factors.size() == 1, "element norm is not a prime power");
  const Int q = f.factors.front().prime;
  EISQ_REQUIRE(y.b % q != 0 || y.a % q != 0, "element divisible by a rational prime");
  EISQ_REQUIRE(y.b % q != 0, "element does not determine a single split place");
  const Int root = mod(-mul_mod(y.a, arith::inv_mod(y.b, q), q), q);
  return split_place(q, root);
}

Residue residue_mul(const FieldCtx& ctx, const Place& v, const Residue& r, const Residue& s) {
  const Int l = v.prime;
  if (v.residue_degree == 1) return {mul_mod(r.x, s.x, l), 0};
  const Int yy = mul_mod(r.y, s.y, l);
  const Int x = mod(mul_mod(r.x, s.x, l) - mul_mod(ctx.c(), yy, l), l);
  const Int y = mod(mul_mod(r.x, s.y, l) + mul_mod(s.x, r.y, l) + yy, l);
  return {x, y};
}

Residue residue_pow(const FieldCtx& ctx, const Place& v, Residue r, Int exponent) {
  Residue acc{1, 0};
  while (exponent > 0) {
    if (exponent & 1) acc = residue_mul(ctx, v, acc, r);
    r = residue_mul(ctx, v, r, r);
    exponent >>= 1;
  }
  return acc;
}

bool residue_is_square(const FieldCtx& ctx, const Place& v, const Residue& r) {
  EISQ_REQUIRE(!(r.x == 0 && r.y == 0), "zero residue in square test");
  const Int order = v.residue_degree == 1 ? v.prime : checked_mul(v.prime, v.prime);
  const Residue e = residue_pow(ctx, v, r, (order - 1) / 2);
  return e == Residue{1, 0};
}

LocalDatum local_datum(const FieldCtx& ctx, const QuadInt& x, const Place& v) {
  EISQ_REQUIRE(x.p == ctx.p(), "element from a different field");
  EISQ_REQUIRE(!x.is_zero(), "local datum of zero");
  const Int l = v.prime;
  switch (v.kind) {
    case PlaceKind::ramified: {
      // x = (c2 + e*pi) / 2 with c2 = 2a + b, e = b; pi^2 = -p.
      const Int c2 = checked_add(checked_mul(2, x.a), x.b);
      const Int e = x.b;
      const int k1 = val_or_inf(c2, l);
      const int k2 = val_or_inf(e, l);
      const Int half = arith::inv_mod(2, l);
      if (k1 <= k2) {
        Int u = mul_mod(strip(c2, l, k1), half, l);
        if (k1 & 1) u = mod(-u, l);
        return {2 * k1, {u, 0}};
      }
      Int u = mul_mod(strip(e, l, k2), half, l);
      if (k2 & 1) u = mod(-u, l);
      return {2 * k2 + 1, {u, 0}};
    }
    case PlaceKind::inert: {
      const Int g = std::gcd(x.a, x.b);
      const int k = arith::valuation(g, l);
      return {k, {mod(strip(x.a, l, k), l), mod(strip(x.b, l, k), l)}};
    }
    case PlaceKind::split_factor:
    case PlaceKind::split_conjugate: {
      const Int g = std::gcd(x.a, x.b);
      const int k = arith::valuation(g, l);
      const QuadInt xp{strip(x.a, l, k), strip(x.b, l, k), x.p};
      const Int r = mod(xp.a + mul_mod(xp.b, v.root, l), l);
      if (r != 0) return {k, {r, 0}};
      // xp is primitive and lies in this place but not in its conjugate, so
      // xp / q^t = (N(xp) / q^t) / conj(xp) with conj(xp) a unit here.
      const Int n = xp.norm();
      const int t = arith::valuation(n, l);
      const Int m = mod(strip(n, l, t), l);
      const QuadInt cj = xp.conj();
      const Int cr = mod(cj.a + mul_mod(cj.b, v.root, l), l);
      EISQ_CHECK(cr != 0, "conjugate of a primitive element vanishes at the same split place");
      return {k + t, {mul_mod(m, arith::inv_mod(cr, l), l), 0}};
    }
  }
  throw ConsistencyError("unknown place kind");
}

Splitting classify_prime(const FieldCtx& ctx, Int q) {
  EISQ_REQUIRE(q > 2 && arith::is_prime(q), "classify_prime: q must be an odd prime");
  EISQ_REQUIRE(q != ctx.p(), "classify_prime: q = p is ramified");
  return arith::jacobi(-ctx.p(), q) == 1 ? Splitting::split : Splitting::inert;
}

QuadInt split_generator(const FieldCtx& ctx, Int q, Int h, GeneratorChoice choice) {
  EISQ_REQUIRE(classify_prime(ctx, q) == Splitting::split, std::to_string(q) + " does not split");
  EISQ_REQUIRE(h >= 1 && (h & 1), "class number must be a positive odd integer");
  const Int m = arith::checked_pow(q, static_cast<unsigned>(h));
  const auto sol = arith::cornacchia_4m(ctx.p(), m);
  EISQ_CHECK(sol.has_value(), "no norm-form solution for a split prime power q^h");
  const auto [s, t] = *sol;
  std::vector<QuadInt> cands;
  for (Int ss : {s, -s}) {
    for (Int tt : {t, -t}) {
      const QuadInt f{(ss - tt) / 2, tt, ctx.p()};
      if (mod(f.a, 4) != 1) continue;
      if (std::find(cands.begin(), cands.end(), f) == cands.end()) cands.push_back(f);
    }
  }
  EISQ_CHECK(cands.size() == 2, "expected two normalized generators for q = " + std::to_string(q));
  for (const auto& f : cands) {
    EISQ_CHECK(f.norm() == m, "generator norm mismatch");
    EISQ_CHECK(f.a % q != 0 || f.b % q != 0, "generator divisible by q");
    const int v2 = arith::valuation(f.b, 2);
    if (q % 4 == 3)
      EISQ_CHECK(v2 == 1, "v2(b) must be 1 for q = 3 mod 4");
    else
      EISQ_CHECK(v2 >= 2, "v2(b) must be >= 2 for q = 1 mod 4");
  }
  std::sort(cands.begin(), cands.end(), [](const QuadInt& x, const QuadInt& y) {
    const auto key = [](const QuadInt& f) { return std::make_pair(f.b > 0, 2 * f.a + f.b > 0); };
    return key(x) > key(y);
  });
  return choice == GeneratorChoice::standard ? cands[0] : cands[1];
}

int residue_symbol(const FieldCtx& ctx, const QuadInt& x, const Place& v) {
  const LocalDatum d = local_datum(ctx, x, v);
  EISQ_REQUIRE(d.valuation == 0, "residue symbol of a non-unit at " + v.str());
  return residue_is_square(ctx, v, d.unit) ? 1 : -1;
}

int residue_symbol(const FieldCtx& ctx, const QuadInt& x, const QuadInt& y) {
  return residue_symbol(ctx, x, ctx.place_of(y));
}

bool is_local_square(const FieldCtx& ctx, const FormalProduct& x, const Place& v) {
  EISQ_REQUIRE(!x.empty() || true, "");
  std::vector<LocalDatum> data;
  std::vector<int> exps;
  data.reserve(x.size());
  for (const auto& [g, e] : x) {
    data.push_back(local_datum(ctx, g, v));
    exps.push_back(e);
  }
  return is_local_square(ctx, v, data, exps);
}

bool is_local_square(const FieldCtx& ctx, const Place& v, std::span<const LocalDatum> data,
                     std::span<const int> exponents) {
  EISQ_REQUIRE(data.size() == exponents.size(), "generator/exponent length mismatch");
  long long val = 0;
  Residue unit{1, 0};
  for (std::size_t i = 0; i < data.size(); ++i) {
    val += static_cast<long long>(data[i].valuation) * exponents[i];
    if (exponents[i] & 1) unit = residue_mul(ctx, v, unit, data[i].unit);
  }
  if (val & 1) return false;
  return residue_is_square(ctx, v, unit);
}

}  // namespace eisq::quad
