#include "eisq/etacusp.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "eisq/errors.hpp"
#include "eisq/lattice.hpp"

namespace eisq::etacusp {

using arith::checked_add;
using arith::checked_mul;
using lattice::IntMatrix;

namespace {

Int lcm(Int a, Int b) { return checked_mul(a / std::gcd(a, b), b); }

std::vector<Int> primes_of(Int N) {
  std::vector<Int> out;
  for (const auto& pp : arith::factor(N).factors) out.push_back(pp.prime);
  return out;
}

}  // namespace

int CuspSet::orbit_size(Int c) const {
  return static_cast<int>(std::count_if(cusps.begin(), cusps.end(), [c](const Cusp& u) { return u.level == c; }));
}

CuspSet cusp_set(Int N) {
  EISQ_REQUIRE(N >= 1, "level must be positive");
  CuspSet s{N, {}};
  for (Int d : arith::divisors(N)) {
    const Int m = std::gcd(d, N / d);
    const Int width = N / std::gcd(checked_mul(d, d), N);
    for (Int x = 0; x < m; ++x)
      if (std::gcd(x, m) == 1) s.cusps.push_back({d, x, width});
  }
  return s;
}

Int EtaExponents::at(Int d) const {
  const auto it = r.find(d);
  return it == r.end() ? 0 : it->second;
}

EtaExponents EtaExponents::from_list(Int N, const std::vector<Int>& values) {
  const auto divs = arith::divisors(N);
  EISQ_REQUIRE(values.size() == divs.size(), "level " + std::to_string(N) + " has " + std::to_string(divs.size()) +
                                                  " divisors but " + std::to_string(values.size()) +
                                                  " exponents were given");
  EtaExponents e{N, {}};
  for (std::size_t i = 0; i < divs.size(); ++i) e.r[divs[i]] = values[i];
  return e;
}

std::vector<Int> EtaExponents::as_list() const {
  std::vector<Int> out;
  for (Int d : arith::divisors(N)) out.push_back(at(d));
  return out;
}

LigozatReport ligozat_check(const EtaExponents& e) {
  EISQ_REQUIRE(e.N >= 1, "level must be positive");
  for (const auto& [d, v] : e.r)
    EISQ_REQUIRE(d >= 1 && e.N % d == 0, "exponent at " + std::to_string(d) + " which does not divide " +
                                             std::to_string(e.N));
  LigozatReport rep;
  for (const auto& [d, v] : e.r) {
    rep.sum = checked_add(rep.sum, v);
    rep.weighted = checked_add(rep.weighted, checked_mul(d, v));
    rep.coweighted = checked_add(rep.coweighted, checked_mul(e.N / d, v));
  }
  rep.sum_zero = rep.sum == 0;
  rep.weighted_ok = arith::mod(rep.weighted, 24) == 0;
  rep.coweighted_ok = arith::mod(rep.coweighted, 24) == 0;
  for (Int l : primes_of(e.N)) {
    Int ex = 0;
    for (const auto& [d, v] : e.r) ex = checked_add(ex, checked_mul(arith::valuation(d, l), v));
    if (arith::mod(ex, 2) != 0) rep.odd_primes.push_back(l);
  }
  rep.square_ok = rep.odd_primes.empty();
  return rep;
}

Int CuspDivisor::degree() const {
  Int s = 0;
  for (Int c : coeffs) s = checked_add(s, c);
  return s;
}

bool CuspDivisor::is_rational() const {
  const CuspSet cs = cusp_set(N);
  EISQ_REQUIRE(static_cast<int>(coeffs.size()) == cs.size(), "divisor length does not match the cusp count");
  std::map<Int, Int> seen;
  for (int i = 0; i < cs.size(); ++i) {
    const auto [it, fresh] = seen.emplace(cs.cusps[i].level, coeffs[i]);
    if (!fresh && it->second != coeffs[i]) return false;
  }
  return true;
}

std::map<Int, Int> CuspDivisor::level_coefficients() const {
  EISQ_REQUIRE(is_rational(), "divisor is not constant on Galois orbits");
  const CuspSet cs = cusp_set(N);
  std::map<Int, Int> out;
  for (int i = 0; i < cs.size(); ++i) out[cs.cusps[i].level] = coeffs[i];
  return out;
}

CuspDivisor CuspDivisor::from_levels(Int N, const std::map<Int, Int>& m) {
  const CuspSet cs = cusp_set(N);
  for (const auto& [c, v] : m) EISQ_REQUIRE(c >= 1 && N % c == 0, "level " + std::to_string(c) + " does not divide N");
  CuspDivisor D{N, {}};
  for (const Cusp& u : cs.cusps) {
    const auto it = m.find(u.level);
    D.coeffs.push_back(it == m.end() ? 0 : it->second);
  }
  return D;
}

std::string CuspDivisor::str() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](Int v, const std::string& name) {
    if (v == 0) return;
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    const Int a = v < 0 ? -v : v;
    if (a != 1) os << a << "*";
    os << name;
    first = false;
  };
  if (is_rational()) {
    for (const auto& [c, v] : level_coefficients()) {
      std::string name = c == 1 ? "[0]" : c == N ? "[inf]" : "D" + std::to_string(c);
      if (c == 1 && N == 1) name = "[inf]";
      term(v, name);
    }
  } else {
    const CuspSet cs = cusp_set(N);
    for (int i = 0; i < cs.size(); ++i)
      term(coeffs[i], "[" + std::to_string(cs.cusps[i].x) + "/" + std::to_string(cs.cusps[i].level) + "]");
  }
  if (first) os << "0";
  return os.str();
}

Rational eta_order_at_level(const EtaExponents& e, Int c) {
  EISQ_REQUIRE(c >= 1 && e.N % c == 0, "cusp level must divide N");
  Rational s = 0;
  for (const auto& [d, v] : e.r) {
    const Int g = std::gcd(c, d);
    s += Rational(checked_mul(checked_mul(g, g), v), d);
  }
  return s * Rational(e.N, checked_mul(24, std::gcd(checked_mul(c, c), e.N)));
}

EtaDivisor eta_divisor(const EtaExponents& e) {
  EtaDivisor out;
  out.ligozat = ligozat_check(e);
  const CuspSet cs = cusp_set(e.N);
  std::map<Int, Rational> per_level;
  for (Int c : arith::divisors(e.N)) per_level[c] = eta_order_at_level(e, c);
  out.integral = true;
  for (const Cusp& u : cs.cusps) {
    out.orders.push_back(per_level[u.level]);
    out.integral = out.integral && per_level[u.level].denominator() == 1;
  }
  if (out.integral) {
    out.divisor.N = e.N;
    for (const Rational& q : out.orders) out.divisor.coeffs.push_back(q.numerator());
  }
  return out;
}

Int supported_prime(Int N) {
  if (arith::is_prime(N)) return N;
  if (N > 3) {
    const Int r = arith::isqrt(N);
    if (r * r == N && arith::is_prime(r)) return r;
  }
  throw ValidationError("unsupported level " + std::to_string(N) + ": only p and p^2 are supported");
}

std::vector<EtaExponents> rational_eta_lattice(Int N) {
  const auto divs = arith::divisors(N);
  const auto ls = primes_of(N);
  const int k = static_cast<int>(divs.size());
  const int cols = k + 2 + static_cast<int>(ls.size());
  IntMatrix A(3 + static_cast<int>(ls.size()), cols);
  for (int j = 0; j < k; ++j) {
    A(0, j) = 1;
    A(1, j) = divs[j];
    A(2, j) = N / divs[j];
    for (std::size_t i = 0; i < ls.size(); ++i) A(3 + static_cast<int>(i), j) = arith::valuation(divs[j], ls[i]);
  }
  A(1, k) = -24;
  A(2, k + 1) = -24;
  for (std::size_t i = 0; i < ls.size(); ++i) A(3 + static_cast<int>(i), k + 2 + static_cast<int>(i)) = -2;
  std::vector<EtaExponents> out;
  for (const auto& v : lattice::integer_kernel(A)) {
    std::vector<Int> r(v.begin(), v.begin() + k);
    if (std::all_of(r.begin(), r.end(), [](Int x) { return x == 0; })) continue;
    out.push_back(EtaExponents::from_list(N, r));
    EISQ_CHECK(ligozat_check(out.back()).ok(), "lattice generator fails the rationality conditions");
  }
  return out;
}

namespace {

// Least n >= 1 with n*d in the row space of G.
Int order_in_rowspace(const IntMatrix& G, const std::vector<Int>& d) {
  const auto s = lattice::smith_normal_form(G);
  const int n = G.cols();
  std::vector<Int> y(n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) y[j] = checked_add(y[j], checked_mul(d[i], s.V(i, j)));
  Int order = 1;
  for (int j = 0; j < n; ++j) {
    if (j < s.rank) {
      const Int sj = s.S(j, j);
      order = lcm(order, sj / std::gcd(sj, y[j]));
    } else if (y[j] != 0) {
      throw ConsistencyError("divisor is not a rational multiple of an eta divisor");
    }
  }
  return order;
}

IntMatrix image_matrix(Int N) {
  const auto divs = arith::divisors(N);
  std::vector<std::vector<Int>> rows;
  for (const auto& g : rational_eta_lattice(N)) {
    const EtaDivisor ed = eta_divisor(g);
    EISQ_CHECK(ed.integral && ed.divisor.is_rational() && ed.divisor.degree() == 0,
               "eta divisor of a rational eta product is not a rational degree 0 divisor");
    const auto lc = ed.divisor.level_coefficients();
    std::vector<Int> row;
    for (Int c : divs) row.push_back(lc.at(c));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, static_cast<int>(divs.size()));
}

IntMatrix shuffled(const IntMatrix& G, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int m = G.rows();
  IntMatrix T = IntMatrix::identity(m);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  IntMatrix P(m, m);
  for (int i = 0; i < m; ++i) P(i, perm[i]) = 1;
  if (m > 1) {
    std::uniform_int_distribution<int> pick(0, m - 1);
    std::uniform_int_distribution<Int> coef(-3, 3);
    for (int step = 0; step < 4 * m; ++step) {
      const int a = pick(rng), b = pick(rng);
      if (a == b) continue;
      const Int k = coef(rng);
      for (int j = 0; j < m; ++j) T(a, j) = checked_add(T(a, j), checked_mul(k, T(b, j)));
    }
  }
  return T * P * G;
}

}  // namespace

Int cuspidal_class_order(const CuspDivisor& D, const OrderOptions& options) {
  supported_prime(D.N);
  EISQ_REQUIRE(D.is_rational(), "divisor is not rational");
  EISQ_REQUIRE(D.degree() == 0, "divisor does not have degree 0");
  const auto lc = D.level_coefficients();
  std::vector<Int> d;
  for (const auto& [c, v] : lc) d.push_back(v);
  const IntMatrix G = image_matrix(D.N);
  const Int n = order_in_rowspace(G, d);
  if (options.verify_shuffled) {
    EISQ_CHECK(order_in_rowspace(shuffled(G, options.shuffle_seed), d) == n,
               "cuspidal order depends on the lattice basis");
  }
  return n;
}

CuspDivisor zero_minus_infinity(Int N) { return CuspDivisor::from_levels(N, {{1, 1}, {N, -1}}); }

CuspDivisor level_p2_c1(Int p) {
  EISQ_REQUIRE(arith::is_prime(p), "p must be prime");
  return zero_minus_infinity(p * p);
}

CuspDivisor level_p2_cp(Int p) {
  EISQ_REQUIRE(arith::is_prime(p), "p must be prime");
  return CuspDivisor::from_levels(p * p, {{p, 1}, {p * p, -(p - 1)}});
}

namespace {

std::vector<Int> nontrivial_invariants(const IntMatrix& M) {
  const auto s = lattice::smith_normal_form(M);
  EISQ_CHECK(s.rank == M.cols(), "quotient group is infinite");
  std::vector<Int> out;
  for (int i = 0; i < s.rank; ++i)
    if (s.S(i, i) > 1) out.push_back(s.S(i, i));
  return out;
}

ClosedForm closed_form(Int p, Int g, const std::vector<Int>& computed) {
  ClosedForm f;
  f.a = (p - 1) / std::gcd(p - 1, g);
  f.b = (p + 1) / std::gcd(p + 1, g);
  IntMatrix M(3, 3);
  M(0, 0) = f.a;
  M(1, 1) = f.a;
  M(2, 2) = f.b;
  f.invariants = nontrivial_invariants(M);
  f.matches = f.invariants == computed;
  return f;
}

}  // namespace

CuspidalGroupReport cuspidal_group_invariants(Int p) {
  EISQ_REQUIRE(arith::is_prime(p) && p >= 5, "p must be a prime >= 5");
  const Int N = p * p;
  const IntMatrix G = image_matrix(N);
  // degree 0 rational divisors have coordinates (a, b) in the basis C1, Cp
  IntMatrix M(G.rows(), 2);
  for (int i = 0; i < G.rows(); ++i) {
    M(i, 0) = G(i, 0);
    M(i, 1) = G(i, 1);
    EISQ_CHECK(G(i, 2) == -G(i, 0) - (p - 1) * G(i, 1), "image vector has nonzero degree");
  }
  CuspidalGroupReport rep;
  rep.p = p;
  rep.invariants = nontrivial_invariants(M);
  rep.order_c1 = cuspidal_class_order(level_p2_c1(p));
  rep.order_cp = cuspidal_class_order(level_p2_cp(p));
  rep.gcd12 = closed_form(p, 12, rep.invariants);
  rep.gcd24 = closed_form(p, 24, rep.invariants);
  return rep;
}

SpecialFunction special_function(SpecialKind kind, Int p) {
  EISQ_REQUIRE(arith::is_prime(p) && p >= 5, "p must be a prime >= 5");
  SpecialFunction f;
  if (kind == SpecialKind::prime_level) {
    const Int m = std::gcd(p - 1, Int{12});
    f.r = EtaExponents::from_list(p, {24 / m, -24 / m});
    f.n = (p - 1) / m;
    f.divisor = CuspDivisor::from_levels(p, {{1, f.n}, {p, -f.n}});
  } else {
    const Int N = checked_mul(p, p);
    f.r = EtaExponents::from_list(N, {-1, p + 1, -p});
    f.n = (N - 1) / 24;
    f.divisor = CuspDivisor::from_levels(N, {{p, f.n}, {N, -checked_mul(f.n, p - 1)}});
  }
  const EtaDivisor ed = eta_divisor(f.r);
  EISQ_CHECK(ed.ligozat.ok(), "special function fails the rationality conditions");
  EISQ_CHECK(ed.integral && ed.divisor == f.divisor, "special function divisor differs from " + f.divisor.str());
  return f;
}

}  // namespace eisq::etacusp
