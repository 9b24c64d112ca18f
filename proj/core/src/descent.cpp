#include "eisq/descent.hpp"

#include <numeric>

#include "eisq/classgroup.hpp"
#include "eisq/errors.hpp"

namespace eisq::descent {

namespace cg = eisq::classgroup;
namespace ec = eisq::etacusp;

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::assumed: return "assumed";
    case Status::unverified: return "unverified";
  }
  return "?";
}

std::string to_string(Conclusion c) { return c == Conclusion::nontorsion ? "nontorsion" : "inconclusive"; }

Conclusion Verdict::reevaluate() const {
  for (const auto& e : trace)
    if (e.status == Status::fail || e.status == Status::unverified) return Conclusion::inconclusive;
  return Conclusion::nontorsion;
}

namespace {

const char* kInconclusive = "inconclusive means the criterion does not apply, not that the point is torsion";

Status pass_if(bool b) { return b ? Status::pass : Status::fail; }

void finish(Verdict& v, const std::string& success) {
  v.conclusion = v.reevaluate();
  v.note = v.conclusion == Conclusion::nontorsion ? success : kInconclusive;
}

TraceEntry split_entry(const HeegnerSetup& s) {
  return {"p splits in K", "kronecker(" + std::to_string(s.K_disc) + ", " + std::to_string(s.p) + ") = " +
                               std::to_string(arith::kronecker(s.K_disc, s.p)),
          pass_if(s.split_ok)};
}

TraceEntry valuation_entry(const std::string& hname, Int h, Int n, Int q) {
  const int vh = arith::valuation(h, q);
  const int vn = arith::valuation(n, q);
  return {"ord_q(" + hname + ") < ord_q(n)",
          "ord_" + std::to_string(q) + "(" + std::to_string(h) + ") = " + std::to_string(vh) + ", ord_" +
              std::to_string(q) + "(" + std::to_string(n) + ") = " + std::to_string(vn),
          pass_if(vh < vn)};
}

void require_prime_q(Int q) {
  EISQ_REQUIRE(arith::is_prime(q), "q must be prime");
  EISQ_REQUIRE(std::gcd(q, Int{6}) == 1, "q must be coprime to 6");
}

void put_setup(Verdict& v, const HeegnerSetup& s) {
  v.facts["p"] = s.p;
  v.facts["level"] = s.level;
  v.facts["K_disc"] = s.K_disc;
  v.facts["h_K"] = s.h_K;
  v.facts["w_K"] = s.w_K;
  v.facts["o_p"] = s.o_p;
}

}  // namespace

HeegnerSetup heegner_setup(Int level, Int K_disc) {
  cg::require_fundamental(K_disc);
  EISQ_REQUIRE(K_disc < 0, "K must be imaginary quadratic");
  HeegnerSetup s;
  s.level = level;
  s.p = ec::supported_prime(level);
  s.K_disc = K_disc;
  s.h_K = cg::class_number_disc(K_disc);
  s.w_K = cg::roots_of_unity(K_disc);
  s.split_ok = arith::kronecker(K_disc, s.p) == 1;
  if (s.split_ok) s.o_p = cg::class_order(cg::prime_form(K_disc, s.p));
  return s;
}

Int prime_level_n(Int p) {
  EISQ_REQUIRE(arith::is_prime(p), "p must be prime");
  return (p - 1) / std::gcd(p - 1, Int{12});
}

Int p2_level_n(Int p) {
  EISQ_REQUIRE(arith::is_prime(p) && p >= 5, "p must be a prime >= 5");
  return (p * p - 1) / 24;
}

Verdict verdict_prime_level_odd_q(Int p, Int K_disc, Int q) {
  const Int n = prime_level_n(p);
  require_prime_q(q);
  EISQ_REQUIRE(n % q == 0, "q = " + std::to_string(q) + " does not divide n = " + std::to_string(n));
  const HeegnerSetup s = heegner_setup(p, K_disc);
  EISQ_REQUIRE(std::gcd(q, s.w_K) == 1, "q must be coprime to the number of roots of unity in K");
  Verdict v;
  v.theorem = "prime level, odd q";
  put_setup(v, s);
  v.facts["n"] = n;
  v.facts["q"] = q;
  v.trace.push_back(split_entry(s));
  v.trace.push_back(valuation_entry("h_K", s.h_K, n, q));
  v.trace.push_back({"J[m_q] = Z/q + mu_q", "cited structure of the Eisenstein kernel", Status::assumed});
  finish(v, "the Heegner point has infinite order in the q-Eisenstein quotient over K");
  return v;
}

Verdict verdict_prime_level_2(Int p, Int K_disc) {
  const Int n = prime_level_n(p);
  EISQ_REQUIRE(n % 2 == 0, "2 does not divide n = " + std::to_string(n));
  const HeegnerSetup s = heegner_setup(p, K_disc);
  Verdict v;
  v.theorem = "prime level, q = 2";
  put_setup(v, s);
  v.facts["n"] = n;
  v.facts["q"] = 2;
  v.trace.push_back(split_entry(s));
  v.trace.push_back({"h_K odd", "h_K = " + std::to_string(s.h_K), pass_if(s.h_K % 2 == 1)});
  finish(v, "the Heegner point has infinite order in the 2-Eisenstein quotient over K");
  return v;
}

NeumannSetzer neumann_setzer(Int p) {
  NeumannSetzer r;
  r.p = p;
  if (p <= 64 || !arith::is_prime(p)) return r;
  const auto u = arith::exact_sqrt(p - 64);
  if (!u || *u % 2 == 0) return r;
  r.of_form = true;
  r.u = *u;
  const Int m = arith::mod(r.u, 8);
  r.simple = m == 3 || m == 5;
  return r;
}

Verdict verdict_ns_curve(Int p, Int K_disc) {
  const NeumannSetzer ns = neumann_setzer(p);
  Verdict v;
  v.theorem = "Neumann-Setzer curve";
  v.facts["p"] = p;
  v.facts["u"] = ns.u;
  v.trace.push_back({"p = u^2 + 64 with u odd", ns.of_form ? "u = " + std::to_string(ns.u) : "not of this form",
                     pass_if(ns.of_form)});
  v.trace.push_back({"u = +-3 (mod 8)", ns.of_form ? "u mod 8 = " + std::to_string(arith::mod(ns.u, 8)) : "n/a",
                     pass_if(ns.simple)});
  if (!ns.of_form) {
    finish(v, "");
    return v;
  }
  const HeegnerSetup s = heegner_setup(p, K_disc);
  put_setup(v, s);
  v.trace.push_back(split_entry(s));
  v.trace.push_back({"h_K odd", "h_K = " + std::to_string(s.h_K), pass_if(s.h_K % 2 == 1)});
  finish(v, "E(K) has rank 1 and Sha(E/K) is finite");
  return v;
}

Verdict verdict_p2_level(Int p, Int K_disc, Int q) {
  const Int n = p2_level_n(p);
  require_prime_q(q);
  EISQ_REQUIRE((p + 1) % q == 0, "q must divide p + 1");
  EISQ_REQUIRE(n % q == 0, "q must divide n = " + std::to_string(n));
  const HeegnerSetup s = heegner_setup(p * p, K_disc);
  EISQ_REQUIRE(s.split_ok, "p must split in K");
  EISQ_REQUIRE(std::gcd(q, s.w_K) == 1, "q must be coprime to the number of roots of unity in K");
  const Int h = s.h_K / s.o_p;
  Verdict v;
  v.theorem = "level p^2";
  put_setup(v, s);
  v.facts["n"] = n;
  v.facts["q"] = q;
  v.facts["h"] = h;
  v.trace.push_back(split_entry(s));
  v.trace.push_back(valuation_entry("h_K / o_p", h, n, q));
  v.trace.push_back({"J[m_q](K)^- = 0", "cited structure of the Eisenstein kernel at level p^2", Status::assumed});
  finish(v, "the Heegner point is non-torsion in the minus part of the q-Eisenstein quotient over K");
  return v;
}

Verdict verdict_rational_divisor(const ec::EtaExponents& r, const ec::CuspDivisor& D, Int K_disc, Int q) {
  const Int N = r.N;
  const Int p = ec::supported_prime(N);
  EISQ_REQUIRE(D.N == N, "divisor and eta product have different levels");
  bool zero = true;
  for (const auto& [d, e] : r.r) zero = zero && e == 0;
  EISQ_REQUIRE(!zero, "the zero eta product defines no order n");
  const auto ed = ec::eta_divisor(r);
  EISQ_REQUIRE(ed.rational(), "eta product fails the rationality conditions");
  const Int n = ec::cuspidal_class_order(D);
  ec::CuspDivisor nD = D;
  for (Int& c : nD.coeffs) c = arith::checked_mul(c, n);
  EISQ_CHECK(ed.integral && ed.divisor == nD,
             "n D = " + nD.str() + " differs from div(g_r) = " + (ed.integral ? ed.divisor.str() : "non-integral"));
  require_prime_q(q);
  EISQ_REQUIRE(n % q == 0, "q must divide n = " + std::to_string(n));
  const HeegnerSetup s = heegner_setup(N, K_disc);
  EISQ_REQUIRE(s.split_ok, "Heegner hypothesis fails: p does not split in K");
  const auto ic = cg::ideal_class_of_eta_datum(K_disc, N, r.r);

  bool special = false;
  for (auto kind : {ec::SpecialKind::prime_level, ec::SpecialKind::p2_level}) {
    if ((kind == ec::SpecialKind::prime_level) != (N == p) || p < 5) continue;
    special = special || ec::special_function(kind, p).r.as_list() == r.as_list();
  }

  Verdict v;
  v.theorem = "rational cuspidal divisor";
  put_setup(v, s);
  v.facts["n"] = n;
  v.facts["q"] = q;
  v.facts["o_a"] = ic.order;
  v.facts["h_r"] = ic.h_r;
  v.facts["a_exponent"] = ic.exponent;
  v.trace.push_back(split_entry(s));
  v.trace.push_back({"n D = div(g_r)", nD.str(), Status::pass});
  v.trace.push_back(valuation_entry("h_r", ic.h_r, n, q));
  v.trace.push_back({"T_l P = T*_l P for l | N", special ? "checked for this eta product" : "not checked",
                     special ? Status::pass : Status::assumed});
  v.trace.push_back({"J[m_q](K)^- = 0", "cited, not computed", Status::assumed});
  finish(v, "the projection of the Heegner point to the q-Eisenstein quotient is non-torsion");
  return v;
}

Verdict verdict_gross_curve(Int p, Int K_disc) {
  EISQ_REQUIRE(arith::is_prime(p), "p must be prime");
  const HeegnerSetup s = heegner_setup(p, K_disc);
  Verdict v;
  v.theorem = "Gross curve";
  put_setup(v, s);
  v.trace.push_back({"p = 7 (mod 8)", "p mod 8 = " + std::to_string(arith::mod(p, 8)), pass_if(arith::mod(p, 8) == 7)});
  v.trace.push_back({"h_K odd", "h_K = " + std::to_string(s.h_K), pass_if(s.h_K % 2 == 1)});
  v.trace.push_back(split_entry(s));
  v.trace.push_back({"2-Eisenstein quotient is simple", "not effectively checkable", Status::unverified});
  finish(v, "");
  return v;
}

}  // namespace eisq::descent
