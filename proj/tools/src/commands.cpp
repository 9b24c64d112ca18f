#include "eisq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "eisq/classgroup.hpp"
#include "eisq/descent.hpp"
#include "eisq/errors.hpp"
#include "eisq/etacusp.hpp"
#include "eisq/modforms.hpp"
#include "eisq/selmer.hpp"

namespace eisq::cli {

using json = nlohmann::json;
using arith::Int;

namespace {

enum class Format { table, json, tsv };

// One record per output unit. JSON is one compact object per line, which
// keeps sorted keys canonical and lets sweeps stream.
struct Emitter {
  std::ostream& out;
  Format format;

  void json_line(const json& j) { out << j.dump() << "\n" << std::flush; }
};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

template <class T>
std::string join_ints(const std::vector<T>& xs, const std::string& sep = ",") {
  std::vector<std::string> s;
  for (const auto& x : xs) s.push_back(std::to_string(x));
  return join(s, sep);
}

json rational(const etacusp::Rational& q) { return json::array({q.numerator(), q.denominator()}); }

void key_values(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::size_t w = 0;
  for (const auto& [k, v] : kv) w = std::max(w, k.size());
  for (const auto& [k, v] : kv) out << k << std::string(w - k.size() + 2, ' ') << v << "\n";
}

void table(std::ostream& out, const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size());
  for (std::size_t j = 0; j < head.size(); ++j) w[j] = head[j].size();
  for (const auto& r : rows)
    for (std::size_t j = 0; j < r.size(); ++j) w[j] = std::max(w[j], r[j].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      out << r[j];
      if (j + 1 < r.size()) out << std::string(w[j] - r[j].size() + 2, ' ');
    }
    out << "\n";
  };
  line(head);
  for (const auto& r : rows) line(r);
}

void tsv(std::ostream& out, const std::vector<std::string>& row) { out << join(row, "\t") << "\n"; }

std::string yes(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------- classnum

void cmd_classnum(Emitter& em, std::optional<Int> p, std::optional<Int> disc) {
  EISQ_REQUIRE(p.has_value() != disc.has_value(), "give exactly one of --p and --disc");
  Int D = 0;
  Int h = 0;
  if (p) {
    h = classgroup::class_number(*p);
    D = -*p;
  } else {
    D = *disc;
    classgroup::require_fundamental(D);
    EISQ_REQUIRE(D < 0, "discriminant must be negative");
    h = classgroup::class_number_disc(D);
  }
  const auto forms = classgroup::reduced_forms(D);
  EISQ_CHECK(static_cast<Int>(forms.size()) == h, "class number disagrees with the form count");
  json j{{"disc", D}, {"h", h}};
  j["forms"] = json::array();
  std::vector<std::string> fs;
  for (const auto& f : forms) {
    j["forms"].push_back({f.A, f.B, f.C});
    fs.push_back(f.str());
  }
  if (p) j["p"] = *p;
  switch (em.format) {
    case Format::json: em.json_line(j); break;
    case Format::tsv:
      tsv(em.out, {"disc", "h", "forms"});
      tsv(em.out, {std::to_string(D), std::to_string(h), join(fs, ";")});
      break;
    case Format::table:
      key_values(em.out, {{"disc", std::to_string(D)}, {"h", std::to_string(h)}, {"forms", join(fs, " ")}});
      break;
  }
}

// ------------------------------------------------------------------ selmer

struct SelmerRow {
  json j;
  bool disagree = false;
};

SelmerRow selmer_row(Int p, Int d, bool oracle, std::optional<std::uint64_t> cap, bool sweep) {
  const auto td = selmer::build_twist(p, d);
  const auto g = selmer::build_graph(td);
  const auto r = selmer::selmer_rank_graph(td);
  SelmerRow row;
  json& j = row.j;
  j["p"] = p;
  j["d"] = d;
  j["h"] = td.h;
  std::vector<std::string> alpha, beta;
  for (const auto& v : td.vertices) {
    alpha.push_back(v.label);
    beta.push_back(v.beta_label);
  }
  j["vertices"] = alpha;
  j["beta_vertices"] = beta;
  auto factors = [](const std::vector<selmer::SplitFactor>& fs) {
    json a = json::array();
    for (const auto& f : fs) a.push_back({{"q", f.q}, {"generator", f.gen.str()}});
    return a;
  };
  j["split3"] = factors(td.split3);
  j["split1"] = factors(td.split1);
  j["inert"] = td.inert;
  json arrows = json::array();
  for (int x = 0; x < g.size(); ++x) {
    std::string s;
    for (int y = 0; y < g.size(); ++y) s += g.arrows[x][y] ? '1' : '0';
    arrows.push_back(s);
  }
  j["arrows"] = arrows;
  j["partitions"] = r.partitions;
  j["t"] = r.t;
  j["paper_rank"] = r.paper_rank;
  j["dim"] = r.dim;
  if (oracle) {
    try {
      const auto s = selmer::selmer_group_bruteforce(td, cap);
      j["oracle"] = {{"dim", s.dim}, {"survivors", s.survivors}, {"contains_torsion", s.contains_torsion},
                     {"agree", s.dim == r.dim && s.contains_torsion}};
      row.disagree = !(s.dim == r.dim && s.contains_torsion);
    } catch (const ResourceError& e) {
      if (!sweep) throw;
      j["oracle"] = {{"skipped", e.what()}};
    }
  }
  return row;
}

std::vector<std::string> selmer_tsv_head(bool oracle) {
  std::vector<std::string> h{"p", "d", "V", "partitions", "t", "paper_rank", "dim"};
  if (oracle) {
    h.push_back("oracle_dim");
    h.push_back("agree");
  }
  return h;
}

std::vector<std::string> selmer_cells(const json& j, bool oracle) {
  std::vector<std::string> c{std::to_string(j["p"].get<Int>()),          std::to_string(j["d"].get<Int>()),
                             std::to_string(j["vertices"].size()),       std::to_string(j["partitions"].get<Int>()),
                             std::to_string(j["t"].get<int>()),          std::to_string(j["paper_rank"].get<int>()),
                             std::to_string(j["dim"].get<int>())};
  if (oracle) {
    const json& o = j["oracle"];
    if (o.contains("skipped")) {
      c.push_back("-");
      c.push_back("skipped");
    } else {
      c.push_back(std::to_string(o["dim"].get<int>()));
      c.push_back(o["agree"].get<bool>() ? "OK" : "MISMATCH");
    }
  }
  return c;
}

void selmer_detail(std::ostream& out, const json& j, bool oracle) {
  std::vector<std::pair<std::string, std::string>> kv{
      {"p", std::to_string(j["p"].get<Int>())},
      {"d", std::to_string(j["d"].get<Int>())},
      {"h", std::to_string(j["h"].get<Int>())}};
  for (const auto& f : j["split3"])
    kv.push_back({"split q=3 (4)", std::to_string(f["q"].get<Int>()) + ", generator " + f["generator"].get<std::string>()});
  for (const auto& f : j["split1"])
    kv.push_back({"split q=1 (4)", std::to_string(f["q"].get<Int>()) + ", generator " + f["generator"].get<std::string>()});
  for (const auto& q : j["inert"]) kv.push_back({"inert", std::to_string(q.get<Int>())});
  kv.push_back({"alpha vertices", join(j["vertices"].get<std::vector<std::string>>(), " ")});
  kv.push_back({"beta vertices", join(j["beta_vertices"].get<std::vector<std::string>>(), " ")});
  for (const auto& a : j["arrows"]) kv.push_back({"arrows", a.get<std::string>()});
  kv.push_back({"even partitions", std::to_string(j["partitions"].get<Int>())});
  kv.push_back({"t", std::to_string(j["t"].get<int>())});
  kv.push_back({"rank bound 1+2t", std::to_string(j["paper_rank"].get<int>())});
  kv.push_back({"dim F2", std::to_string(j["dim"].get<int>())});
  if (oracle) {
    const json& o = j["oracle"];
    kv.push_back({"oracle dim", std::to_string(o["dim"].get<int>())});
    kv.push_back({"agreement", o["agree"].get<bool>() ? "OK" : "MISMATCH"});
  }
  key_values(out, kv);
}

bool admissible(Int p, Int d) {
  return d != 0 && arith::mod(d, 4) == 1 && std::gcd(d, 2 * p) == 1 && arith::is_squarefree(d);
}

void cmd_selmer(Emitter& em, Int p, std::optional<Int> d, std::optional<std::string> range, bool oracle, int jobs) {
  EISQ_REQUIRE(d.has_value() != range.has_value(), "give exactly one of --d and --d-range");
  EISQ_REQUIRE(jobs >= 1, "--jobs must be positive");
  const std::uint64_t cap = selmer::default_oracle_cap();
  if (d) {
    const SelmerRow row = selmer_row(p, *d, oracle, cap, false);
    switch (em.format) {
      case Format::json: em.json_line(row.j); break;
      case Format::tsv:
        tsv(em.out, selmer_tsv_head(oracle));
        tsv(em.out, selmer_cells(row.j, oracle));
        break;
      case Format::table: selmer_detail(em.out, row.j, oracle); break;
    }
    if (row.disagree) throw ConsistencyError("oracle and graph disagree for d = " + std::to_string(*d));
    return;
  }

  const auto [lo, hi] = parse_range(*range);
  // validate p once before any worker starts
  selmer::build_twist(p, 1);
  std::vector<Int> ds;
  for (Int x = lo; x <= hi; ++x)
    if (admissible(p, x)) ds.push_back(x);

  std::vector<std::optional<SelmerRow>> done(ds.size());
  std::vector<std::exception_ptr> errors(ds.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ds.size()) return;
      std::optional<SelmerRow> r;
      std::exception_ptr e;
      try {
        r = selmer_row(p, ds[i], oracle, cap, true);
      } catch (...) {
        e = std::current_exception();
      }
      {
        std::lock_guard lock(mu);
        done[i] = std::move(r);
        errors[i] = e;
        if (!done[i]) done[i].emplace();  // mark completion for the sink
      }
      cv.notify_all();
    }
  };
  const int nthreads = std::min<int>(jobs, std::max<std::size_t>(ds.size(), 1));
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);

  const auto head = selmer_tsv_head(oracle);
  std::vector<std::size_t> widths;
  for (const auto& h : head) widths.push_back(std::max<std::size_t>(h.size(), 6));
  auto table_line = [&](const std::vector<std::string>& c) {
    for (std::size_t k = 0; k < c.size(); ++k)
      em.out << c[k] << (k + 1 < c.size() ? std::string(widths[k] - std::min(widths[k], c[k].size()) + 2, ' ') : "");
    em.out << "\n";
  };
  if (em.format == Format::tsv) tsv(em.out, head);
  if (em.format == Format::table) table_line(head);
  int mismatches = 0;
  std::exception_ptr first_error;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    SelmerRow row;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return done[i].has_value(); });
      if (errors[i]) {
        if (!first_error) first_error = errors[i];
        continue;
      }
      row = std::move(*done[i]);
    }
    if (first_error) continue;
    mismatches += row.disagree;
    switch (em.format) {
      case Format::json: em.json_line(row.j); break;
      case Format::tsv: tsv(em.out, selmer_cells(row.j, oracle)); break;
      case Format::table: table_line(selmer_cells(row.j, oracle)); break;
    }
    em.out << std::flush;
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  if (mismatches) throw ConsistencyError(std::to_string(mismatches) + " oracle/graph disagreements");
}

// --------------------------------------------------------------------- eta

json ligozat_json(const etacusp::LigozatReport& l) {
  return {{"sum", l.sum},
          {"sum_zero", l.sum_zero},
          {"weighted", l.weighted},
          {"weighted_ok", l.weighted_ok},
          {"coweighted", l.coweighted},
          {"coweighted_ok", l.coweighted_ok},
          {"square_ok", l.square_ok},
          {"odd_primes", l.odd_primes},
          {"ok", l.ok()}};
}

bool supported(Int N) {
  try {
    etacusp::supported_prime(N);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

// div = multiplier * primitive with primitive having coprime coefficients
std::pair<Int, etacusp::CuspDivisor> primitive_part(const etacusp::CuspDivisor& D) {
  Int g = 0;
  for (Int c : D.coeffs) g = std::gcd(g, c);
  etacusp::CuspDivisor P = D;
  if (g != 0)
    for (Int& c : P.coeffs) c /= g;
  return {g, P};
}

void cmd_eta(Emitter& em, Int N, const std::string& r_text, bool special, bool group) {
  EISQ_REQUIRE(special != !r_text.empty(), "give exactly one of --r and --special");
  etacusp::EtaExponents r;
  if (special) {
    const Int p = etacusp::supported_prime(N);
    r = etacusp::special_function(p == N ? etacusp::SpecialKind::prime_level : etacusp::SpecialKind::p2_level, p).r;
  } else {
    std::vector<Int> v;
    for (long long x : parse_int_list(r_text)) v.push_back(x);
    r = etacusp::EtaExponents::from_list(N, v);
  }
  const auto ed = etacusp::eta_divisor(r);
  const auto cs = etacusp::cusp_set(N);
  json j;
  j["N"] = N;
  j["divisors"] = arith::divisors(N);
  j["r"] = r.as_list();
  j["ligozat"] = ligozat_json(ed.ligozat);
  j["integral"] = ed.integral;
  json cusps = json::array();
  for (int i = 0; i < cs.size(); ++i)
    cusps.push_back({{"level", cs.cusps[i].level},
                     {"x", cs.cusps[i].x},
                     {"width", cs.cusps[i].width},
                     {"order", rational(ed.orders[i])}});
  j["cusps"] = cusps;
  std::vector<std::pair<std::string, std::string>> kv{
      {"N", std::to_string(N)},
      {"r", join_ints(r.as_list())},
      {"(1) sum r_d = 0", yes(ed.ligozat.sum_zero) + " (" + std::to_string(ed.ligozat.sum) + ")"},
      {"(2) sum d r_d = 0 (24)", yes(ed.ligozat.weighted_ok) + " (" + std::to_string(ed.ligozat.weighted) + ")"},
      {"(3) sum N/d r_d = 0 (24)", yes(ed.ligozat.coweighted_ok) + " (" + std::to_string(ed.ligozat.coweighted) + ")"},
      {"(4) prod d^r_d square", yes(ed.ligozat.square_ok)},
      {"rational on X0(N)", yes(ed.ligozat.ok())}};
  std::string div_s = "-", mult_s = "-", prim_s = "-", order_s = "-";
  if (ed.integral) {
    div_s = ed.divisor.str();
    j["divisor"] = div_s;
    j["divisor_coeffs"] = ed.divisor.coeffs;
    const auto [m, P] = primitive_part(ed.divisor);
    if (m != 0) {
      mult_s = std::to_string(m);
      prim_s = P.str();
      j["multiplier"] = m;
      j["primitive"] = prim_s;
      if (ed.ligozat.ok() && supported(N)) {
        const Int n = etacusp::cuspidal_class_order(P);
        order_s = std::to_string(n);
        j["order"] = n;
      }
    }
  } else {
    std::vector<std::string> os;
    for (const auto& q : ed.orders) os.push_back(std::to_string(q.numerator()) + "/" + std::to_string(q.denominator()));
    div_s = "non-integral: " + join(os, " ");
  }
  kv.push_back({"div", div_s});
  if (mult_s != "-") kv.push_back({"div", mult_s + " * (" + prim_s + ")"});
  kv.push_back({"order of primitive part", order_s});
  if (group) {
    const Int p = etacusp::supported_prime(N);
    EISQ_REQUIRE(p != N, "--group needs level p^2");
    const auto g = etacusp::cuspidal_group_invariants(p);
    auto closed = [](const etacusp::ClosedForm& f) {
      return json{{"a", f.a}, {"b", f.b}, {"invariants", f.invariants}, {"matches", f.matches}};
    };
    j["cuspidal_group"] = {{"invariants", g.invariants},
                           {"order_c1", g.order_c1},
                           {"order_cp", g.order_cp},
                           {"gcd12", closed(g.gcd12)},
                           {"gcd24", closed(g.gcd24)}};
    kv.push_back({"rational cuspidal group", g.invariants.empty() ? "trivial" : "Z/" + join_ints(g.invariants, " + Z/")});
    kv.push_back({"order C1, Cp", std::to_string(g.order_c1) + ", " + std::to_string(g.order_cp)});
    kv.push_back({"closed form gcd 12", "a=" + std::to_string(g.gcd12.a) + " b=" + std::to_string(g.gcd12.b) +
                                           (g.gcd12.matches ? " matches" : " differs")});
    kv.push_back({"closed form gcd 24", "a=" + std::to_string(g.gcd24.a) + " b=" + std::to_string(g.gcd24.b) +
                                           (g.gcd24.matches ? " matches" : " differs")});
  }
  switch (em.format) {
    case Format::json: em.json_line(j); break;
    case Format::tsv:
      tsv(em.out, {"N", "r", "rational", "divisor", "multiplier", "primitive", "order"});
      tsv(em.out, {std::to_string(N), join_ints(r.as_list()), yes(ed.ligozat.ok()), div_s, mult_s, prim_s, order_s});
      break;
    case Format::table: key_values(em.out, kv); break;
  }
}

// ----------------------------------------------------------------- heegner

json verdict_json(const descent::Verdict& v) {
  json trace = json::array();
  for (const auto& e : v.trace) trace.push_back({{"name", e.name}, {"value", e.value}, {"status", to_string(e.status)}});
  return {{"theorem", v.theorem},
          {"conclusion", to_string(v.conclusion)},
          {"note", v.note},
          {"trace", trace},
          {"facts", v.facts},
          {"trace_consistent", v.consistent()}};
}

void render_verdict(Emitter& em, const descent::Verdict& v, const json& extra) {
  EISQ_CHECK(v.consistent(), "verdict does not follow from its own trace");
  json j = verdict_json(v);
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  switch (em.format) {
    case Format::json: em.json_line(j); break;
    case Format::tsv:
      tsv(em.out, {"theorem", "conclusion", "hypothesis", "status", "value"});
      for (const auto& e : v.trace) tsv(em.out, {v.theorem, to_string(v.conclusion), e.name, to_string(e.status), e.value});
      break;
    case Format::table: {
      std::string head = v.conclusion == descent::Conclusion::nontorsion ? "NONTORSION" : "INCONCLUSIVE";
      em.out << head << "  [" << v.theorem << "]\n";
      if (!v.note.empty()) em.out << v.note << "\n";
      std::vector<std::vector<std::string>> rows;
      for (const auto& e : v.trace) rows.push_back({e.name, to_string(e.status), e.value});
      table(em.out, {"hypothesis", "status", "value"}, rows);
      std::vector<std::string> fs;
      for (const auto& [k, x] : v.facts) fs.push_back(k + "=" + std::to_string(x));
      em.out << "facts: " << join(fs, " ") << "\n";
      break;
    }
  }
}

struct HeegnerArgs {
  std::optional<Int> p, p2, ns, gross, N, K, q;
  std::string r;
};

void cmd_heegner(Emitter& em, const HeegnerArgs& a) {
  const int modes = a.p.has_value() + a.p2.has_value() + a.ns.has_value() + a.gross.has_value() + a.N.has_value();
  EISQ_REQUIRE(modes == 1, "give exactly one of --p, --p2, --ns, --gross, --N");
  EISQ_REQUIRE(a.K.has_value(), "--K is required");
  const Int K = *a.K;
  if (a.ns) {
    const auto ns = descent::neumann_setzer(*a.ns);
    json extra{{"neumann_setzer", {{"p", ns.p}, {"of_form", ns.of_form}, {"u", ns.u}, {"simple", ns.simple}}}};
    if (em.format == Format::table)
      em.out << "p = " << ns.p << (ns.of_form ? " = " + std::to_string(ns.u) + "^2 + 64, quotient simple: " + yes(ns.simple)
                                             : " is not u^2 + 64 with u odd")
             << "\n";
    render_verdict(em, descent::verdict_ns_curve(*a.ns, K), extra);
    return;
  }
  if (a.gross) {
    render_verdict(em, descent::verdict_gross_curve(*a.gross, K), json::object());
    return;
  }
  EISQ_REQUIRE(a.q.has_value(), "--q is required");
  const Int q = *a.q;
  if (a.p) {
    render_verdict(em, q == 2 ? descent::verdict_prime_level_2(*a.p, K) : descent::verdict_prime_level_odd_q(*a.p, K, q),
                   json::object());
    return;
  }
  if (a.p2) {
    render_verdict(em, descent::verdict_p2_level(*a.p2, K, q), json::object());
    return;
  }
  EISQ_REQUIRE(!a.r.empty(), "--N needs --r");
  std::vector<Int> v;
  for (long long x : parse_int_list(a.r)) v.push_back(x);
  const auto r = etacusp::EtaExponents::from_list(*a.N, v);
  const auto ed = etacusp::eta_divisor(r);
  EISQ_REQUIRE(ed.integral, "eta product has a non-integral divisor");
  const auto [m, P] = primitive_part(ed.divisor);
  EISQ_REQUIRE(m != 0, "the eta product has trivial divisor");
  render_verdict(em, descent::verdict_rational_divisor(r, P, K, q), json{{"D", P.str()}});
}

// -------------------------------------------------------------- eigencheck

void cmd_eigencheck(Emitter& em, std::ostream& err, Int p, Int prec, const std::string& ells, bool strict) {
  EISQ_REQUIRE(prec > 0, "--prec must be positive");
  std::vector<Int> primes;
  if (ells.empty()) {
    for (Int l = 2; l < 20; ++l)
      if (arith::is_prime(l)) primes.push_back(l);
  } else {
    for (long long x : parse_int_list(ells)) primes.push_back(x);
  }
  modforms::EigencheckOptions opts;
  opts.strict = strict;
  const auto rep = modforms::eisenstein_eigencheck(p, prec, primes, opts);
  const auto [c1, c0] = modforms::delta_cusp_constant(p);
  json checks = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : rep.checks) {
    checks.push_back({{"op", c.op},
                      {"ell", c.ell},
                      {"eigenvalue", c.eigenvalue},
                      {"compared", c.compared},
                      {"pass", c.pass},
                      {"first_bad", c.first_bad ? json(*c.first_bad) : json(nullptr)},
                      {"low_precision", c.low_precision}});
    rows.push_back({c.op + "_" + std::to_string(c.ell), std::to_string(c.eigenvalue), std::to_string(c.compared),
                    c.pass ? "pass" : "FAIL at " + std::to_string(c.first_bad.value_or(-1)),
                    c.low_precision ? "low precision" : ""});
    if (c.low_precision)
      err << "warning: " << c.op << "_" << c.ell << " compared only " << c.compared
          << " coefficients; raise --prec for a stronger check\n";
  }
  json j{{"p", p},
         {"precision", rep.precision},
         {"all_pass", rep.all_pass()},
         {"checks", checks},
         {"cusp_constants", {{"i_over_p", rational(c1)}, {"zero", rational(c0)}}}};
  switch (em.format) {
    case Format::json: em.json_line(j); break;
    case Format::tsv:
      tsv(em.out, {"operator", "eigenvalue", "compared", "result", "note"});
      for (const auto& r : rows) tsv(em.out, r);
      break;
    case Format::table:
      em.out << "delta = (E(pz) - E(z)) / 24 at level " << p << ", precision " << rep.precision << "\n";
      table(em.out, {"operator", "eigenvalue", "compared", "result", "note"}, rows);
      break;
  }
  if (!rep.all_pass()) throw ConsistencyError("eigenform check failed");
}

}  // namespace

std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw ValidationError("not an integer: '" + item + "'");
    }
    EISQ_REQUIRE(pos == item.size(), "not an integer: '" + item + "'");
    out.push_back(v);
  }
  EISQ_REQUIRE(!out.empty(), "empty integer list");
  return out;
}

std::pair<long long, long long> parse_range(const std::string& s) {
  const auto dots = s.find("..", 1);
  EISQ_REQUIRE(dots != std::string::npos, "range must look like A..B");
  const auto a = parse_int_list(s.substr(0, dots));
  const auto b = parse_int_list(s.substr(dots + 2));
  EISQ_REQUIRE(a.size() == 1 && b.size() == 1 && a[0] <= b[0], "range must look like A..B with A <= B");
  return {a[0], b[0]};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations for Eisenstein quotients, Selmer groups of Gross curve twists and Heegner points", "eisq"};
  app.require_subcommand(1);
  // lets --format appear after the subcommand; must precede add_subcommand
  app.fallthrough();
  std::string format_s = "table";
  app.add_option("--format", format_s, "table, json or tsv")
      ->check(CLI::IsMember({"table", "json", "tsv"}))
      ->capture_default_str();

  auto* classnum = app.add_subcommand("classnum", "class number and reduced forms");
  std::optional<Int> cn_p, cn_disc;
  classnum->add_option("--p", cn_p, "prime p = 3 (mod 4), for K = Q(sqrt(-p))");
  classnum->add_option("--disc", cn_disc, "negative fundamental discriminant");

  auto* selmer_cmd = app.add_subcommand("selmer", "2-Selmer rank of a twist by d");
  Int s_p = 0;
  std::optional<Int> s_d;
  std::optional<std::string> s_range;
  bool s_oracle = false;
  int s_jobs = 1;
  selmer_cmd->add_option("--p", s_p, "prime p = 7 (mod 8)")->required();
  selmer_cmd->add_option("--d", s_d, "squarefree d = 1 (mod 4)");
  selmer_cmd->add_option("--d-range", s_range, "sweep every admissible d in A..B");
  selmer_cmd->add_flag("--oracle", s_oracle, "also run the exhaustive local-condition search");
  selmer_cmd->add_option("--jobs", s_jobs, "worker threads for sweeps")->capture_default_str();

  auto* eta_cmd = app.add_subcommand("eta", "eta product on X0(N)");
  Int e_N = 0;
  std::string e_r;
  bool e_special = false, e_group = false;
  eta_cmd->add_option("--N", e_N, "level")->required();
  eta_cmd->add_option("--r", e_r, "exponents r_d in ascending divisor order, comma separated");
  eta_cmd->add_flag("--special", e_special, "the special function at level p or p^2");
  eta_cmd->add_flag("--group", e_group, "rational cuspidal group at level p^2");

  auto* heeg = app.add_subcommand("heegner", "Heegner point verdicts");
  HeegnerArgs ha;
  heeg->add_option("--p", ha.p, "prime level p");
  heeg->add_option("--p2", ha.p2, "level p^2, given by p");
  heeg->add_option("--ns", ha.ns, "Neumann-Setzer prime p = u^2 + 64");
  heeg->add_option("--gross", ha.gross, "Gross curve hypotheses at prime p");
  heeg->add_option("--N", ha.N, "level for the general eta criterion");
  heeg->add_option("--r", ha.r, "eta exponents for --N");
  heeg->add_option("--K", ha.K, "discriminant of K");
  heeg->add_option("--q", ha.q, "prime q");

  auto* eig = app.add_subcommand("eigencheck", "Hecke eigenvalues of the Eisenstein series delta");
  Int g_p = 0, g_prec = 200;
  std::string g_ells;
  bool g_strict = false;
  eig->add_option("--p", g_p, "prime level")->required();
  eig->add_option("--prec", g_prec, "number of coefficients")->capture_default_str();
  eig->add_option("--ell", g_ells, "primes to test, comma separated (default: primes below 20)");
  eig->add_flag("--strict", g_strict, "fail when an operator keeps fewer than 20 coefficients");

  std::vector<std::string> argv_s{"eisq"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Emitter em{out, format_s == "json" ? Format::json : format_s == "tsv" ? Format::tsv : Format::table};
  try {
    if (classnum->parsed())
      cmd_classnum(em, cn_p, cn_disc);
    else if (selmer_cmd->parsed())
      cmd_selmer(em, s_p, s_d, s_range, s_oracle, s_jobs);
    else if (eta_cmd->parsed())
      cmd_eta(em, e_N, e_r, e_special, e_group);
    else if (heeg->parsed())
      cmd_heegner(em, ha);
    else if (eig->parsed())
      cmd_eigencheck(em, err, g_p, g_prec, g_ells, g_strict);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace eisq::cli
