#pragma once

// 2-Selmer groups of the quadratic twists E^(d) of the Gross curve attached
// to Q(sqrt(-p)), p = 7 (mod 8).
//
// A candidate (alpha, beta) is a pair of products of generators. Since the
// generators have pairwise distinct places they are independent modulo
// squares, so a candidate is the same thing as a pair of bit vectors:
// alpha bits 0..V-1 and beta bits V..2V-1 of one 64-bit mask.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eisq/quadfield.hpp"

namespace eisq::selmer {

using arith::Int;
using quad::FieldCtx;
using quad::Place;
using quad::QuadInt;

struct SplitFactor {
  Int q;
  QuadInt gen;  // normalized generator of norm q^h
};

struct Vertex {
  QuadInt alpha;     // generator on the alpha side
  QuadInt beta;      // generator in the same slot on the beta side
  Place place;       // the place where both vanish
  std::string label;
  std::string beta_label;
};

struct TwistOptions {
  quad::GeneratorChoice choice = quad::GeneratorChoice::standard;
};

struct TwistDatum {
  FieldCtx ctx;
  Int d = 0;
  Int h = 0;  // class number of K
  std::vector<SplitFactor> split3;  // q = 3 (mod 4)
  std::vector<SplitFactor> split1;  // q = 1 (mod 4)
  std::vector<Int> inert;           // Q, with Q* = (-1)^((Q-1)/2) Q
  /// -pi, then f_i, -conj(f_i) per split3 prime, g_j, conj(g_j) per split1
  /// prime, then Q*_k. The beta side is pi, -f_i, conj(f_i), g_j, conj(g_j),
  /// Q*_k in the same slots.
  std::vector<Vertex> vertices;

  int size() const { return static_cast<int>(vertices.size()); }
};

using Mask = std::uint64_t;

struct Candidate {
  Mask alpha = 0;
  Mask beta = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
  Mask packed(int V) const { return alpha | (beta << V); }
  static Candidate unpack(Mask m, int V);
};

/// Q* = Q for Q = 1 (mod 4), -Q otherwise.
Int star(Int Q);

/// Throws ValidationError for bad d, and for p != 7 (mod 8) with a message
/// naming that requirement.
TwistDatum build_twist(Int p, Int d, const TwistOptions& options = {});

/// The four images of the 2-torsion, {(1,1), (-pi d,1), (1,pi d), (-pi d,pi d)}.
std::vector<Candidate> torsion_image(const TwistDatum& td);

/// Local data of every generator at every place of td, computed once.
class LocalTable {
 public:
  explicit LocalTable(const TwistDatum& td);
  /// For every place v there is a torsion pair (x, y) with alpha*x and beta*y
  /// both squares in K_v.
  bool member(const Candidate& c) const;

 private:
  struct PlaceData {
    Place place;
    std::vector<quad::LocalDatum> alpha, beta;  // per vertex
    quad::LocalDatum minus_pi_d, pi_d;
  };
  bool side_ok(const PlaceData& pd, bool beta_side, Mask m, bool twist) const;
  const TwistDatum* td_;
  std::vector<PlaceData> places_;
};

bool member_local(const TwistDatum& td, const Candidate& c);

struct SelmerGroup {
  int dim = 0;
  std::vector<Candidate> basis;  // reduced echelon form, lowest pivot first
  std::size_t survivors = 0;
  bool contains_torsion = false;
};

/// EISQ_ORACLE_CAP when set to a positive integer, else 2^24.
std::uint64_t default_oracle_cap();

/// Exhaustive scan of all 2^(2V) candidates. Throws ResourceError when that
/// exceeds the cap and ConsistencyError if the survivors are not a group.
SelmerGroup selmer_group_bruteforce(const TwistDatum& td, std::optional<std::uint64_t> cap = {});

struct SelmerGraph {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> arrows;  // arrows[x][y]: x -> y

  int size() const { return static_cast<int>(labels.size()); }
};

SelmerGraph build_graph(const TwistDatum& td);
SelmerGraph build_conjugate_graph(const TwistDatum& td);
/// phi maps slot i of G_d to slot phi_slot(i) of G_d'.
std::vector<int> phi_slots(const TwistDatum& td);
/// Throws ConsistencyError if phi does not preserve arrows.
void check_phi_isomorphism(const TwistDatum& td, const SelmerGraph& g, const SelmerGraph& gc);

struct PartitionCount {
  Int count = 0;  // nontrivial even partitions
  int dim = 0;    // F2-dimension of even partitions modulo the trivial one
};

/// Unordered partitions {V1, V2} in which every vertex receives an even
/// number of arrows from the opposite part; the trivial one is not counted.
PartitionCount count_even_partitions(const SelmerGraph& g, int vertex_cap = 24);

struct GraphRank {
  Int partitions = 0;  // nontrivial even partitions of G_d
  int t = 0;           // log2(partitions + 1)
  int paper_rank = 0;  // 1 + 2t
  int dim = 0;         // 2 + 2t, the predicted F2-dimension
};

/// Also counts on G_d' and throws ConsistencyError if the counts differ.
GraphRank selmer_rank_graph(const TwistDatum& td);

struct ThmmReport {
  bool minimal = false;  // every Q = 1 (mod 4)
  int k = 0;             // number of Q = 3 (mod 4)
  int bound = 0;         // 1 + k
  GraphRank graph;
  bool consistent = false;
};

/// Only for d whose prime factors are all inert.
ThmmReport thmm_verdict(const TwistDatum& td);

/// For d = -q with q = 3 (mod 4) split: (f,1) and (1,conj f) when
/// (f / pi) = 1, otherwise (-conj f, 1) and (1, -f).
std::pair<Candidate, Candidate> prop1_generators(const TwistDatum& td);

std::string describe(const TwistDatum& td, const Candidate& c);

}  // namespace eisq::selmer
