#pragma once

// Arithmetic in K = Q(sqrt(-p)) for a prime p = 3 (mod 4), p > 3, whose ring
// of integers is Z[w] with w = (1 + sqrt(-p)) / 2 and w^2 = w - (1 + p) / 4.
//
// Completions at odd places are handled through a fixed uniformizer per
// place (q at a split place, Q at an inert place, sqrt(-p) at the ramified
// place) so that every nonzero element has a valuation and a unit residue.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eisq/arith.hpp"

namespace eisq::quad {

using arith::Int;

/// Element a + b*w of Z[w]. Carries its field's p so that mixing elements of
/// different fields is caught.
struct QuadInt {
  Int a = 0;
  Int b = 0;
  Int p = 0;

  friend bool operator==(const QuadInt&, const QuadInt&) = default;

  bool is_zero() const { return a == 0 && b == 0; }
  QuadInt conj() const;
  /// a^2 + a*b + b^2 (1 + p) / 4; never negative.
  Int norm() const;
  std::string str() const;
};

QuadInt operator+(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x);
QuadInt operator*(const QuadInt& x, const QuadInt& y);

enum class PlaceKind { split_factor, split_conjugate, inert, ramified };
const char* to_string(PlaceKind kind);

/// A finite place of K with odd residue characteristic.
struct Place {
  PlaceKind kind;
  Int prime;            // residue characteristic
  Int root;             // w mod the place (split/ramified); unused when inert
  int residue_degree;   // 2 iff inert

  friend bool operator==(const Place&, const Place&) = default;
  std::string str() const;
};

enum class Splitting { split, inert };

class FieldCtx {
 public:
  /// Validates p prime, p = 3 (mod 4), p > 3.
  explicit FieldCtx(Int p);

  Int p() const { return p_; }
  /// (1 + p) / 4, the constant term of the minimal polynomial of w.
  Int c() const { return c_; }

  QuadInt element(Int a, Int b) const { return {a, b, p_}; }
  QuadInt rational(Int n) const { return {n, 0, p_}; }
  QuadInt omega() const { return {0, 1, p_}; }
  /// sqrt(-p) = 2w - 1.
  QuadInt pi() const { return {-1, 2, p_}; }

  Place ramified_place() const;
  Place inert_place(Int Q) const;
  /// The split place where w = root (mod q); root must satisfy the minimal
  /// polynomial of w modulo q.
  Place split_place(Int q, Int root, PlaceKind kind = PlaceKind::split_factor) const;
  /// The place where the prime element y vanishes: y is one of sqrt(-p),
  /// an inert rational prime (up to sign) or an element whose norm is a
  /// power of a split prime and which is not divisible by that prime.
  Place place_of(const QuadInt& y) const;

  friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

 private:
  Int p_;
  Int c_;
};

/// Element x + y*wbar of the residue field; y == 0 at degree-one places.
struct Residue {
  Int x = 0;
  Int y = 0;
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Valuation at a place together with the residue of x / uniformizer^v.
struct LocalDatum {
  int valuation = 0;
  Residue unit;
};

Residue residue_mul(const FieldCtx& ctx, const Place& v, const Residue& r, const Residue& s);
Residue residue_pow(const FieldCtx& ctx, const Place& v, Residue r, Int exponent);
/// Euler's criterion in the residue field: r^((Nv - 1) / 2) == 1.
bool residue_is_square(const FieldCtx& ctx, const Place& v, const Residue& r);

LocalDatum local_datum(const FieldCtx& ctx, const QuadInt& x, const Place& v);

/// split iff jacobi(-p, q) = +1. Rejects q = 2 and q = p.
Splitting classify_prime(const FieldCtx& ctx, Int q);

/// Which of the two generators allowed by the 2-adic normalization to return.
enum class GeneratorChoice { standard, alternate };

/// Generator f = a + b*w of the h-th power of a prime above the split prime
/// q, with norm q^h, a = 1 (mod 4), v2(b) = 1 when q = 3 (mod 4) and
/// v2(b) >= 2 when q = 1 (mod 4). The normalization leaves two candidates
/// ({f, conj f} for q = 1 mod 4, {f, -conj f} for q = 3 mod 4); standard
/// picks b > 0 and then 2a + b > 0, alternate picks the other one.
QuadInt split_generator(const FieldCtx& ctx, Int q, Int h,
                        GeneratorChoice choice = GeneratorChoice::standard);

/// Quadratic residue symbol (x / v) for x a unit at v.
int residue_symbol(const FieldCtx& ctx, const QuadInt& x, const Place& v);
/// Symbol at the place of a prime element y (see FieldCtx::place_of).
int residue_symbol(const FieldCtx& ctx, const QuadInt& x, const QuadInt& y);

/// Symbolic product of generators with integer exponents, never expanded.
using FormalProduct = std::vector<std::pair<QuadInt, int>>;

/// x in (K_v^*)^2. Valuation is the exponent-weighted sum; an even total is
/// followed by a square test on the product of unit residues.
bool is_local_square(const FieldCtx& ctx, const FormalProduct& x, const Place& v);

/// Same test with the per-generator data at v precomputed; exponents are
/// taken modulo 2 for the unit part.
bool is_local_square(const FieldCtx& ctx, const Place& v, std::span<const LocalDatum> data,
                     std::span<const int> exponents);

}  // namespace eisq::quad
