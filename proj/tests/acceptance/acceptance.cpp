// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: acceptance [path-to-eisq-binary]

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "eisq/classgroup.hpp"
#include "eisq/cli.hpp"
#include "eisq/descent.hpp"
#include "eisq/errors.hpp"
#include "eisq/etacusp.hpp"
#include "eisq/modforms.hpp"
#include "eisq/quadfield.hpp"
#include "eisq/selmer.hpp"
#include "oracles.hpp"

using namespace eisq;
using arith::Int;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string eisq_binary;

// reduced primitive forms of discriminant D by direct search
Int count_reduced_forms(Int D) {
  Int count = 0;
  for (Int a = 1; 3 * a * a <= -D; ++a)
    for (Int b = -a + 1; b <= a; ++b) {
      const Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const Int c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      ++count;
    }
  return count;
}

Outcome class_numbers() {
  Outcome o;
  const std::array<std::pair<Int, Int>, 5> expect{{{7, 1}, {23, 3}, {31, 3}, {47, 5}, {71, 7}}};
  for (const auto& [p, h] : expect) {
    o.require(classgroup::class_number(p) == h, "h(-" + std::to_string(p) + ") from the library");
    o.require(count_reduced_forms(-p) == h, "h(-" + std::to_string(p) + ") from the form search");
  }
  return o;
}

std::vector<Int> admissible(Int p, Int bound) {
  std::vector<Int> out;
  for (Int d = -bound; d <= bound; ++d)
    if (d != 0 && oracle::mod(d, 4) == 1 && std::gcd(d, 2 * p) == 1 && oracle::squarefree(d)) out.push_back(d);
  return out;
}

Outcome selmer_oracle() {
  Outcome o;
  int checked = 0, skipped = 0;
  for (Int p : {7, 23, 31}) {
    for (Int d : admissible(p, 120)) {
      const auto td = selmer::build_twist(p, d);
      const auto g = selmer::selmer_rank_graph(td);
      try {
        const auto s = selmer::selmer_group_bruteforce(td);
        o.require(s.dim == 2 + 2 * g.t, "dimension mismatch at p=" + std::to_string(p) + " d=" + std::to_string(d));
        o.require(s.contains_torsion, "torsion image missing at d=" + std::to_string(d));
        o.require(s.survivors == (std::size_t{1} << s.dim), "survivors are not a group at d=" + std::to_string(d));
        ++checked;
      } catch (const ResourceError&) {
        ++skipped;
      }
    }
  }
  o.require(checked > 0, "no instance within the oracle cap");
  if (o.ok) o.detail = std::to_string(checked) + " twists, " + std::to_string(skipped) + " over cap";
  return o;
}

Outcome rank_three_case() {
  Outcome o;
  const auto td = selmer::build_twist(7, -11);
  const auto g = selmer::selmer_rank_graph(td);
  o.require(g.paper_rank == 3, "rank bound");
  o.require(selmer::selmer_group_bruteforce(td).dim == 4, "oracle dimension");
  const auto [x, y] = selmer::prop1_generators(td);
  o.require(selmer::member_local(td, x) && selmer::member_local(td, y), "generator pair fails membership");
  o.detail = "generators " + selmer::describe(td, x) + ", " + selmer::describe(td, y);
  return o;
}

Outcome inert_twists() {
  Outcome o;
  for (Int d : {5, 65}) {
    const auto td = selmer::build_twist(7, d);
    const auto v = selmer::thmm_verdict(td);
    o.require(v.minimal, "d=" + std::to_string(d) + " should be minimal");
    o.require(selmer::selmer_group_bruteforce(td).dim == 2, "d=" + std::to_string(d) + " dimension");
    o.require(v.consistent, "verdict inconsistent");
  }
  const auto td = selmer::build_twist(7, -3);
  const auto v = selmer::thmm_verdict(td);
  const int dim = selmer::selmer_group_bruteforce(td).dim;
  o.require(dim >= 3, "d=-3 dimension");
  o.require(v.k == 1 && v.bound == 2, "d=-3 bound 1 + k");
  o.require(v.graph.paper_rank == 3, "d=-3 graph rank");
  o.require(v.consistent, "d=-3 verdict inconsistent");
  return o;
}

Outcome inert_square_laws() {
  Outcome o;
  int n = 0;
  for (Int p : {7, 23, 31}) {
    const quad::FieldCtx k(p);
    std::vector<Int> inert;
    for (Int Q : oracle::primes_below(200))
      if (Q > 2 && Q != p && oracle::legendre_brute(-p, Q) == -1) inert.push_back(Q);
    for (Int Q : inert) {
      const auto v = k.inert_place(Q);
      const bool expect = Q % 4 == 3;
      o.require(quad::is_local_square(k, {{k.pi(), 1}}, v) == expect, "pi at " + std::to_string(Q));
      o.require(quad::is_local_square(k, {{-k.pi(), 1}}, v) == expect, "-pi at " + std::to_string(Q));
      o.require(quad::is_local_square(k, {{k.rational(-1), 1}}, v), "-1 at " + std::to_string(Q));
      for (Int Q1 : inert) {
        if (Q1 == Q) continue;
        const Int star = Q1 % 4 == 1 ? Q1 : -Q1;
        o.require(quad::is_local_square(k, {{k.rational(star), 1}}, v), "Q* at " + std::to_string(Q));
        ++n;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(n) + " pairs";
  return o;
}

Outcome symbol_reciprocity() {
  Outcome o;
  int count[2] = {0, 0};
  for (Int p : {7, 23, 31}) {
    const quad::FieldCtx k(p);
    const Int h = classgroup::class_number(p);
    for (Int q : oracle::primes_below(500)) {
      if (q == 2 || q == p || oracle::legendre_brute(-p, q) != 1) continue;
      const auto f = quad::split_generator(k, q, h);
      const auto fb = f.conj();
      const auto pi = k.pi();
      const int other = q % 4 == 3 ? -1 : 1;
      const std::string at = "p=" + std::to_string(p) + " q=" + std::to_string(q);
      o.require(quad::residue_symbol(k, f, pi) * quad::residue_symbol(k, pi, f) == 1, "first identity " + at);
      o.require(quad::residue_symbol(k, fb, pi) * quad::residue_symbol(k, pi, fb) == other, "second identity " + at);
      o.require(quad::residue_symbol(k, f, pi) == quad::residue_symbol(k, fb, f), "third identity " + at);
      ++count[q % 4 == 3];
    }
  }
  o.require(count[0] > 0 && count[1] > 0, "both residue classes exercised");
  if (o.ok) o.detail = std::to_string(count[1]) + " primes 3 (mod 4), " + std::to_string(count[0]) + " primes 1 (mod 4)";
  return o;
}

Outcome eisenstein_eigenform() {
  Outcome o;
  const Int P = 200;
  for (Int p : {5, 7, 11, 13}) {
    std::vector<Int> ells;
    for (Int l : {2, 3, 5, 7, 11, 13})
      if (l != p) ells.push_back(l);
    ells.push_back(p);
    const auto rep = modforms::eisenstein_eigencheck(p, P, ells);
    o.require(rep.all_pass(), "library check at p=" + std::to_string(p));
    // independent coefficientwise check from divisor sums
    auto a = [&](Int m) { return m % p == 0 ? 0 : oracle::sigma(m); };
    const auto delta = modforms::delta_series(p, P);
    for (Int m = 0; m <= std::min(P, delta.precision()); ++m)
      o.require(delta[m] == a(m), "series coefficient " + std::to_string(m) + " at p=" + std::to_string(p));
    for (Int l : ells) {
      for (Int m = 0; l * m < P; ++m) {
        const Int lhs = l == p ? a(l * m) : a(l * m) + (m % l == 0 ? l * a(m / l) : 0);
        const Int rhs = l == p ? 0 : (1 + l) * a(m);
        o.require(lhs == rhs, "coefficient " + std::to_string(m) + " for l=" + std::to_string(l) + " at p=" +
                                  std::to_string(p));
      }
    }
  }
  return o;
}

Outcome cuspidal_orders() {
  Outcome o;
  for (Int p : {11, 17, 19, 37, 67}) {
    const Int n = etacusp::cuspidal_class_order(etacusp::zero_minus_infinity(p));
    o.require(n == (p - 1) / std::gcd(p - 1, Int{12}), "[0]-[inf] at p=" + std::to_string(p));
  }
  for (Int p : {5, 7, 11, 13}) {
    const Int n = (p * p - 1) / 24;
    o.require(etacusp::cuspidal_class_order(etacusp::level_p2_c1(p)) == n, "C1 at p=" + std::to_string(p));
    o.require(etacusp::cuspidal_class_order(etacusp::level_p2_cp(p)) == n, "Cp at p=" + std::to_string(p));
  }
  return o;
}

Outcome special_function_divisor() {
  Outcome o;
  for (Int p : {7, 11, 13}) {
    const auto r = etacusp::EtaExponents::from_list(p * p, {-1, p + 1, -p});
    const auto ed = etacusp::eta_divisor(r);
    const Int n = (p * p - 1) / 24;
    o.require(ed.ligozat.ok(), "conditions at p=" + std::to_string(p));
    o.require(ed.integral && ed.divisor == etacusp::CuspDivisor::from_levels(p * p, {{p, n}, {p * p, -n * (p - 1)}}),
              "divisor at p=" + std::to_string(p));
  }
  return o;
}

Outcome heegner_verdicts() {
  Outcome o;
  using descent::Conclusion;
  const auto a = descent::verdict_prime_level_odd_q(11, -7, 5);
  o.require(a.conclusion == Conclusion::nontorsion && a.consistent(), "(11, -7, 5)");
  const auto b = descent::verdict_p2_level(13, -3, 7);
  o.require(b.conclusion == Conclusion::nontorsion && b.consistent(), "(169, -3, 7)");
  const auto ns = descent::neumann_setzer(73);
  o.require(ns.of_form && ns.u == 3 && ns.simple, "Neumann-Setzer detection at 73");
  int fired = 0;
  for (Int D = -3; D > -400; --D) {
    if (!classgroup::is_fundamental_discriminant(D)) continue;
    const auto v = descent::verdict_ns_curve(73, D);
    o.require(v.consistent(), "trace at D=" + std::to_string(D));
    const bool hyp = arith::kronecker(D, 73) == 1 && classgroup::class_number_disc(D) % 2 == 1;
    o.require((v.conclusion == Conclusion::nontorsion) == hyp, "corollary at D=" + std::to_string(D));
    fired += hyp;
  }
  o.require(fired > 0, "corollary never applied");
  if (o.ok) o.detail = "corollary fired for " + std::to_string(fired) + " fields";
  return o;
}

const std::vector<std::vector<std::string>> kSuite{
    {"classnum", "--p", "23"},
    {"classnum", "--p", "71"},
    {"selmer", "--p", "7", "--d", "-11", "--oracle"},
    {"selmer", "--p", "7", "--d-range", "-199..199", "--jobs", "4"},
    {"selmer", "--p", "23", "--d-range", "-60..60", "--oracle"},
    {"eta", "--N", "49", "--special", "--group"},
    {"eta", "--N", "11", "--r", "12,-12"},
    {"eta", "--N", "49", "--r", "1,-1,0"},
    {"heegner", "--p", "11", "--K", "-7", "--q", "5"},
    {"heegner", "--p2", "13", "--K", "-3", "--q", "7"},
    {"heegner", "--ns", "73", "--K", "-19"},
    {"heegner", "--N", "169", "--r", "-1,14,-13", "--K", "-3", "--q", "7"},
    {"eigencheck", "--p", "11", "--prec", "500"},
};

std::string run_suite_in_process() {
  std::string all;
  for (auto args : kSuite) {
    args.push_back("--format");
    args.push_back("json");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    all += "# exit " + std::to_string(code) + "\n" + out.str();
  }
  return all;
}

std::string run_suite_subprocess() {
  std::string all;
  for (const auto& args : kSuite) {
    std::string cmd = eisq_binary;
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " --format json 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return "popen failed";
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
    const int status = pclose(f);
    all += "# exit " + std::to_string(WEXITSTATUS(status)) + "\n" + out;
  }
  return all;
}

Outcome determinism() {
  Outcome o;
  const std::string a = run_suite_in_process();
  const std::string b = run_suite_in_process();
  o.require(a == b, "two in-process runs differ");
  o.require(a.find("# exit 0") != std::string::npos && a.find("# exit 2") == std::string::npos &&
                a.find("# exit 3") == std::string::npos && a.find("# exit 4") == std::string::npos,
            "a suite command failed");
  if (!eisq_binary.empty()) o.require(run_suite_subprocess() == a, "the eisq binary output differs");
  if (o.ok)
    o.detail = std::to_string(a.size()) + " bytes" + (eisq_binary.empty() ? "" : ", binary output identical");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) eisq_binary = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"class numbers of Q(sqrt(-p))", class_numbers},
      {"Selmer oracle equals graph criterion", selmer_oracle},
      {"rank three twist d = -11 and its generators", rank_three_case},
      {"twists by inert primes", inert_twists},
      {"local square laws at inert primes", inert_square_laws},
      {"symbol reciprocity at split primes", symbol_reciprocity},
      {"Eisenstein series is a Hecke eigenform", eisenstein_eigenform},
      {"cuspidal divisor class orders", cuspidal_orders},
      {"level p^2 eta quotient divisor", special_function_divisor},
      {"Heegner point verdicts", heegner_verdicts},
      {"deterministic JSON output", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << " [" << ms << " ms]\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n");
  return failed ? 1 : 0;
}
