#include "eisq/selmer.hpp"

#include <bit>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <numeric>

#include "eisq/classgroup.hpp"
#include "eisq/errors.hpp"

namespace eisq::selmer {

using quad::LocalDatum;
using quad::PlaceKind;

namespace {

constexpr std::uint64_t kDefaultCap = std::uint64_t{1} << 24;

Int root_where_vanishes(const QuadInt& f, Int q) {
  return arith::mod(-arith::mul_mod(f.a, arith::inv_mod(f.b, q), q), q);
}

}  // namespace

Candidate Candidate::unpack(Mask m, int V) {
  const Mask low = V >= 64 ? ~Mask{0} : (Mask{1} << V) - 1;
  return {m & low, m >> V};
}

Int star(Int Q) { return Q % 4 == 1 ? Q : -Q; }

TwistDatum build_twist(Int p, Int d, const TwistOptions& options) {
  EISQ_REQUIRE(p > 3 && arith::is_prime(p), "p must be a prime > 3, got " + std::to_string(p));
  EISQ_REQUIRE(p % 8 == 7, "p must be 7 (mod 8) so that 2 splits in K; got p = " + std::to_string(p) +
                               " = " + std::to_string(p % 8) + " (mod 8)");
  EISQ_REQUIRE(d != 0 && arith::mod(d, 4) == 1, "d must be 1 (mod 4), got " + std::to_string(d));
  EISQ_REQUIRE(arith::is_squarefree(d), "d must be squarefree, got " + std::to_string(d));
  EISQ_REQUIRE(std::gcd(d, p) == 1, "d must be prime to p");

  TwistDatum td{FieldCtx(p), d, classgroup::class_number(p), {}, {}, {}, {}};
  const FieldCtx& k = td.ctx;
  for (const auto& pp : arith::factor(d).factors) {
    const Int q = pp.prime;
    if (quad::classify_prime(k, q) == quad::Splitting::inert) {
      td.inert.push_back(q);
      continue;
    }
    const QuadInt f = quad::split_generator(k, q, td.h, options.choice);
    (q % 4 == 3 ? td.split3 : td.split1).push_back({q, f});
  }

  Int prod = 1;
  for (const auto& s : td.split3) prod *= -s.q;
  for (const auto& s : td.split1) prod *= s.q;
  for (Int Q : td.inert) prod *= star(Q);
  EISQ_CHECK(prod == d, "d does not factor as the product of -q_i, q'_j and Q*_k");

  td.vertices.push_back({-k.pi(), k.pi(), k.ramified_place(), "-pi", "pi"});
  auto add_pair = [&](const SplitFactor& s, bool minus) {
    const QuadInt f = s.gen;
    const QuadInt fb = f.conj();
    const Int z = root_where_vanishes(f, s.q);
    const Place pf = k.split_place(s.q, z, PlaceKind::split_factor);
    const Place pb = k.split_place(s.q, 1 - z, PlaceKind::split_conjugate);
    const std::string q = std::to_string(s.q);
    if (minus) {
      td.vertices.push_back({f, -f, pf, "f" + q, "-f" + q});
      td.vertices.push_back({-fb, fb, pb, "-fbar" + q, "fbar" + q});
    } else {
      td.vertices.push_back({f, f, pf, "g" + q, "g" + q});
      td.vertices.push_back({fb, fb, pb, "gbar" + q, "gbar" + q});
    }
  };
  for (const auto& s : td.split3) add_pair(s, true);
  for (const auto& s : td.split1) add_pair(s, false);
  for (Int Q : td.inert) {
    const std::string l = std::to_string(star(Q));
    td.vertices.push_back({k.rational(star(Q)), k.rational(star(Q)), k.inert_place(Q), l, l});
  }
  EISQ_REQUIRE(2 * td.size() < 64, "twist has too many places for the candidate encoding");
  return td;
}

std::vector<Candidate> torsion_image(const TwistDatum& td) {
  const Mask all = (Mask{1} << td.size()) - 1;
  return {{0, 0}, {all, 0}, {0, all}, {all, all}};
}

LocalTable::LocalTable(const TwistDatum& td) : td_(&td) {
  const FieldCtx& k = td.ctx;
  const QuadInt d = k.rational(td.d);
  for (const Vertex& v : td.vertices) {
    PlaceData pd{v.place, {}, {}, quad::local_datum(k, -k.pi() * d, v.place),
                 quad::local_datum(k, k.pi() * d, v.place)};
    for (const Vertex& g : td.vertices) {
      pd.alpha.push_back(quad::local_datum(k, g.alpha, v.place));
      pd.beta.push_back(quad::local_datum(k, g.beta, v.place));
    }
    places_.push_back(std::move(pd));
  }
}

bool LocalTable::side_ok(const PlaceData& pd, bool beta_side, Mask m, bool twist) const {
  const auto& gens = beta_side ? pd.beta : pd.alpha;
  std::vector<LocalDatum> data;
  std::vector<int> exps;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!((m >> i) & 1)) continue;
    data.push_back(gens[i]);
    exps.push_back(1);
  }
  if (twist) {
    data.push_back(beta_side ? pd.pi_d : pd.minus_pi_d);
    exps.push_back(1);
  }
  return quad::is_local_square(td_->ctx, pd.place, data, exps);
}

bool LocalTable::member(const Candidate& c) const {
  // torsion pairs as (twist alpha by -pi d, twist beta by pi d)
  static constexpr bool kPairs[4][2] = {{false, false}, {true, false}, {false, true}, {true, true}};
  for (const PlaceData& pd : places_) {
    bool found = false;
    for (const auto& xy : kPairs) {
      if (side_ok(pd, false, c.alpha, xy[0]) && side_ok(pd, true, c.beta, xy[1])) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool member_local(const TwistDatum& td, const Candidate& c) { return LocalTable(td).member(c); }

std::uint64_t default_oracle_cap() {
  const char* env = std::getenv("EISQ_ORACLE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultCap;
  std::uint64_t v = 0;
  const char* end = env + std::strlen(env);
  const auto res = std::from_chars(env, end, v);
  if (res.ec != std::errc() || res.ptr != end || v == 0)
    throw ValidationError(std::string("EISQ_ORACLE_CAP must be a positive integer, got '") + env + "'");
  return v;
}

SelmerGroup selmer_group_bruteforce(const TwistDatum& td, std::optional<std::uint64_t> cap) {
  const std::uint64_t limit = cap ? *cap : default_oracle_cap();
  const int V = td.size();
  const int bits = 2 * V;
  if (bits >= 63 || (std::uint64_t{1} << bits) > limit)
    throw ResourceError("instance too large for oracle: 2^" + std::to_string(bits) +
                        " candidates exceed the cap of " + std::to_string(limit));
  const LocalTable table(td);
  const Mask total = Mask{1} << bits;

  std::vector<Mask> pivots(bits, 0);  // pivots[i]: basis vector with lowest bit i
  SelmerGroup out;
  for (Mask m = 0; m < total; ++m) {
    if (!table.member(Candidate::unpack(m, V))) continue;
    ++out.survivors;
    Mask x = m;
    while (x != 0) {
      const int i = std::countr_zero(x);
      if (pivots[i] == 0) {
        pivots[i] = x;
        ++out.dim;
        break;
      }
      x ^= pivots[i];
    }
  }
  if (out.survivors != (std::size_t{1} << out.dim))
    throw ConsistencyError("Selmer survivors are not a group: " + std::to_string(out.survivors) +
                           " elements span dimension " + std::to_string(out.dim));
  // back-substitute so no basis vector contains another's pivot
  for (int i = 0; i < bits; ++i) {
    if (pivots[i] == 0) continue;
    for (int j = 0; j < bits; ++j)
      if (j != i && pivots[j] != 0 && ((pivots[j] >> i) & 1)) pivots[j] ^= pivots[i];
  }
  for (int i = 0; i < bits; ++i)
    if (pivots[i] != 0) out.basis.push_back(Candidate::unpack(pivots[i], V));

  out.contains_torsion = true;
  for (const Candidate& t : torsion_image(td)) {
    Mask x = t.packed(V);
    while (x != 0 && pivots[std::countr_zero(x)] != 0) x ^= pivots[std::countr_zero(x)];
    if (x != 0 || !table.member(t)) out.contains_torsion = false;
  }
  return out;
}

namespace {

SelmerGraph graph_of(const TwistDatum& td, bool beta_side) {
  SelmerGraph g;
  const int V = td.size();
  g.arrows.assign(V, std::vector<bool>(V, false));
  for (int x = 0; x < V; ++x) {
    const Vertex& vx = td.vertices[x];
    g.labels.push_back(beta_side ? vx.beta_label : vx.label);
    for (int y = 0; y < V; ++y) {
      if (x == y) continue;
      const QuadInt& gx = beta_side ? vx.beta : vx.alpha;
      g.arrows[x][y] = quad::residue_symbol(td.ctx, gx, td.vertices[y].place) == -1;
    }
  }
  return g;
}

}  // namespace

SelmerGraph build_graph(const TwistDatum& td) { return graph_of(td, false); }
SelmerGraph build_conjugate_graph(const TwistDatum& td) { return graph_of(td, true); }

std::vector<int> phi_slots(const TwistDatum& td) {
  std::vector<int> phi(td.size());
  std::iota(phi.begin(), phi.end(), 0);
  const int pairs = static_cast<int>(td.split3.size() + td.split1.size());
  for (int i = 0; i < pairs; ++i) std::swap(phi[1 + 2 * i], phi[2 + 2 * i]);
  return phi;
}

void check_phi_isomorphism(const TwistDatum& td, const SelmerGraph& g, const SelmerGraph& gc) {
  const auto phi = phi_slots(td);
  EISQ_CHECK(g.size() == gc.size() && g.size() == td.size(), "graph sizes differ");
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y)
      EISQ_CHECK(g.arrows[x][y] == gc.arrows[phi[x]][phi[y]],
                 "phi does not preserve the arrow " + g.labels[x] + " -> " + g.labels[y]);
}

PartitionCount count_even_partitions(const SelmerGraph& g, int vertex_cap) {
  const int V = g.size();
  if (V > vertex_cap)
    throw ResourceError("graph has " + std::to_string(V) + " vertices, above the cap of " +
                        std::to_string(vertex_cap));
  std::vector<Mask> in(V, 0);
  for (int x = 0; x < V; ++x)
    for (int y = 0; y < V; ++y)
      if (g.arrows[x][y]) in[y] |= Mask{1} << x;
  const Mask all = (Mask{1} << V) - 1;
  PartitionCount out;
  // one side always holds vertex 0, so each unordered partition is seen once
  for (Mask s = 1; s <= all; s += 2) {
    if (s == all) continue;
    bool even = true;
    for (int y = 0; y < V && even; ++y) {
      const Mask other = ((s >> y) & 1) ? (all & ~s) : s;
      even = std::popcount(in[y] & other) % 2 == 0;
    }
    if (even) ++out.count;
  }
  const auto n = static_cast<std::uint64_t>(out.count + 1);
  EISQ_CHECK(std::has_single_bit(n), "even partitions plus the trivial one do not form a group");
  out.dim = std::countr_zero(n);
  return out;
}

GraphRank selmer_rank_graph(const TwistDatum& td) {
  const SelmerGraph g = build_graph(td);
  const SelmerGraph gc = build_conjugate_graph(td);
  check_phi_isomorphism(td, g, gc);
  const PartitionCount a = count_even_partitions(g);
  const PartitionCount b = count_even_partitions(gc);
  EISQ_CHECK(a.count == b.count, "G_d and its conjugate graph have different even partition counts");
  GraphRank r;
  r.partitions = a.count;
  r.t = a.dim;
  r.paper_rank = 1 + 2 * r.t;
  r.dim = 2 + 2 * r.t;
  return r;
}

ThmmReport thmm_verdict(const TwistDatum& td) {
  EISQ_REQUIRE(td.split3.empty() && td.split1.empty(), "thmm applies only when every prime of d is inert");
  ThmmReport r;
  r.k = 0;
  for (Int Q : td.inert)
    if (Q % 4 == 3) ++r.k;
  r.minimal = r.k == 0;
  r.bound = 1 + r.k;
  r.graph = selmer_rank_graph(td);
  r.consistent = r.graph.paper_rank >= r.bound && (r.minimal == (r.graph.paper_rank == 1));
  return r;
}

std::pair<Candidate, Candidate> prop1_generators(const TwistDatum& td) {
  EISQ_REQUIRE(td.split3.size() == 1 && td.split1.empty() && td.inert.empty(),
               "prop1 needs d = -q with q = 3 (mod 4) split");
  const Vertex& f = td.vertices[1];
  const int sym = quad::residue_symbol(td.ctx, f.alpha, td.ctx.ramified_place());
  const Mask f_slot = Mask{1} << 1;
  const Mask fbar_slot = Mask{1} << 2;
  if (sym == 1) return {{f_slot, 0}, {0, fbar_slot}};
  return {{fbar_slot, 0}, {0, f_slot}};
}

std::string describe(const TwistDatum& td, const Candidate& c) {
  auto side = [&](Mask m, bool beta) {
    std::string s;
    for (int i = 0; i < td.size(); ++i) {
      if (!((m >> i) & 1)) continue;
      if (!s.empty()) s += "*";
      const Vertex& v = td.vertices[i];
      const std::string& l = beta ? v.beta_label : v.label;
      s += l.front() == '-' && !s.empty() ? "(" + l + ")" : l;
    }
    return s.empty() ? std::string("1") : s;
  };
  return "(" + side(c.alpha, false) + ", " + side(c.beta, true) + ")";
}

}  // namespace eisq::selmer
