#pragma once

// Heegner point verdicts on Eisenstein quotients. Every criterion is
// one-directional: "inconclusive" never means the point is torsion.

#include <map>
#include <string>
#include <vector>

#include "eisq/arith.hpp"
#include "eisq/etacusp.hpp"

namespace eisq::descent {

using arith::Int;

enum class Status { pass, fail, assumed, unverified };
enum class Conclusion { nontorsion, inconclusive };

std::string to_string(Status s);
std::string to_string(Conclusion c);

struct TraceEntry {
  std::string name;
  std::string value;
  Status status = Status::fail;
};

struct Verdict {
  Conclusion conclusion = Conclusion::inconclusive;
  std::string theorem;                // which criterion was applied
  std::vector<TraceEntry> trace;
  std::map<std::string, Int> facts;  // n, h_K, o_p and the like
  std::string note;

  /// Conclusion implied by the trace alone: nontorsion iff nothing failed
  /// and nothing is unverified. Assumed entries are cited facts.
  Conclusion reevaluate() const;
  bool consistent() const { return reevaluate() == conclusion; }
};

struct HeegnerSetup {
  Int level = 0;
  Int p = 0;
  Int K_disc = 0;
  Int h_K = 0;
  bool split_ok = false;  // p splits in K
  Int w_K = 0;
  Int o_p = 0;            // order of the class of a prime above p, 0 unless split
};

/// level is p or p^2; K_disc a negative fundamental discriminant.
HeegnerSetup heegner_setup(Int level, Int K_disc);

/// n = (p-1)/gcd(12, p-1).
Int prime_level_n(Int p);
/// n = (p^2-1)/24.
Int p2_level_n(Int p);

/// Odd q at prime level: nontorsion iff p splits and v_q(h_K) < v_q(n).
Verdict verdict_prime_level_odd_q(Int p, Int K_disc, Int q);

/// q = 2 at prime level: nontorsion iff p splits and h_K is odd.
Verdict verdict_prime_level_2(Int p, Int K_disc);

struct NeumannSetzer {
  Int p = 0;
  bool of_form = false;  // p prime, p = u^2 + 64 with u odd
  Int u = 0;
  bool simple = false;   // u = +-3 (mod 8)
};

NeumannSetzer neumann_setzer(Int p);

/// Rank one and finite Sha for the Neumann-Setzer curve over K.
Verdict verdict_ns_curve(Int p, Int K_disc);

/// Level p^2 with q | p+1: nontorsion iff ord_q(h_K / o_p) < ord_q(n).
Verdict verdict_p2_level(Int p, Int K_disc, Int q);

/// The general criterion for n D = div(g_r).
Verdict verdict_rational_divisor(const etacusp::EtaExponents& r, const etacusp::CuspDivisor& D, Int K_disc, Int q);

/// Checkable hypotheses for the Gross curve; the conclusion stays gated on
/// simplicity of the 2-Eisenstein quotient, which is never verified.
Verdict verdict_gross_curve(Int p, Int K_disc);

}  // namespace eisq::descent
