#pragma once

// Ideal class groups of imaginary quadratic orders, realized on primitive
// positive definite binary quadratic forms A x^2 + B xy + C y^2.

#include <map>
#include <string>
#include <vector>

#include "eisq/arith.hpp"

namespace eisq::classgroup {

using arith::Int;

struct BQForm {
  Int A = 0;
  Int B = 0;
  Int C = 0;

  friend bool operator==(const BQForm&, const BQForm&) = default;
  friend auto operator<=>(const BQForm&, const BQForm&) = default;

  Int disc() const;
  bool is_reduced() const;
  std::string str() const;
};

/// D < 0, D = 1 (mod 4) squarefree or D = 4m with m = 2, 3 (mod 4) squarefree.
bool is_fundamental_discriminant(Int D);
/// Throws ValidationError unless D is a negative fundamental discriminant.
void require_fundamental(Int D);

/// Number of roots of unity: 4 for D = -4, 6 for D = -3, otherwise 2.
int roots_of_unity(Int D);

BQForm reduce(BQForm f);
BQForm principal(Int D);
BQForm inverse(const BQForm& f);

/// Composition of two forms of the same discriminant followed by reduction.
/// Shanks' arrangement of Dirichlet composition (A1 <= A2):
///   s = (B1 + B2)/2, n = B2 - s, d = gcd(A2, A1) = u A2 + v A1,
///   d1 = gcd(s, d) = x s + y d, r = -u y n - x C2 mod A1/d1,
///   A3 = A1 A2 / d1^2, B3 = B2 + 2 r A2 / d1, C3 = (B3^2 - D) / (4 A3).
BQForm compose(const BQForm& f, const BQForm& g);
BQForm power(const BQForm& f, Int k);

/// All reduced forms of discriminant D in ascending (A, B, C) order.
std::vector<BQForm> reduced_forms(Int D);
Int class_number_disc(Int D);
/// Class number of Q(sqrt(-p)) for a prime p = 3 (mod 4), p > 3.
Int class_number(Int p);

/// Least k >= 1 with f^k principal.
Int class_order(const BQForm& f);

/// Form attached to a prime ideal above q in the order of discriminant D.
/// For q | D (odd q) the ramified form (q, q, (q^2 - D)/(4q)) when D is odd,
/// (q, 0, -D/(4q)) otherwise, left unreduced. For split q the reduced class
/// of (q, B, (B^2 - D)/(4q)) with B = D (mod 2) built from sqrt_mod(D, q).
/// Inert q is rejected.
BQForm prime_form(Int D, Int q);

struct EtaIdealClass {
  BQForm form;       // reduced class of a_r
  Int exponent;      // a_r = P^exponent for the chosen prime P above p
  Int order;         // o(a_r)
  Int h_r;           // h_K / o(a_r)
};

/// Class of the ideal a_r with prod N_d^{r_d} = a_r^{-2}, where N = p or p^2
/// and N_d = P^{v_p(d)} for the prime P above p given by prime_form(D, p).
/// r maps each positive divisor of N to its exponent. Needs p split or
/// ramified in K; an odd total exponent raises "not a square ideal".
EtaIdealClass ideal_class_of_eta_datum(Int D, Int N, const std::map<Int, Int>& r);

}  // namespace eisq::classgroup
