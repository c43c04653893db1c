#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iq/curve.hpp"
#include "iq/factor.hpp"

namespace iq {

// Torsion machinery: the filtration E_r, integrality filters, point orders,
// 2-torsion by divisor search, subgroup enumeration with reduction
// certificates, and the hypothesis harness for the Z[sqrt(D)] claim.

// Level of a point in the filtration E_r at a prime pi: non-integral
// coordinates come in the pattern (v(x), v(y)) = (-2q, -3q) and r = q when
// q >= 1, r = 0 otherwise.
struct FiltrationLevel {
  PrimeElem pi;
  long r;
  long q;
};

// PatternViolation if the valuations break the (-2q, -3q) shape; the chart
// identities v(1/y) = 3q and v(x/y) = q are re-derived as a cross-check.
FiltrationLevel filtration_level(const Point& p, const PrimeElem& pi,
                                 const Curve& c);

// v(t(P1) + t(P2) - t(P1+P2), pi) >= 5r with r = min of the two levels
// (which must be >= 1). P1 + P2 = infinity contributes t = 0.
bool er_congruence_check(const Point& p1, const Point& p2, const PrimeElem& pi,
                         const Curve& c);  // ChartUndefined

struct OrderResult {
  enum class Kind { Finite, NotTorsionWithinBound, ProvedInfinite };
  Kind kind;
  // Finite: the order. NotTorsionWithinBound: the bound reached.
  // ProvedInfinite: the multiple whose coordinates left O_K.
  long value;

  bool finite() const { return kind == Kind::Finite; }
};

// Walks P, 2P, ..., until infinity or a non-integral multiple; a denominator
// anywhere proves infinite order on an integral model.
OrderResult order_of(const Point& p, const Curve& c, long max_order = 18);

// All affine points of order 2: roots of x^3 + Ax + B in O_K, found through
// the divisors of B (or sqrt(-A) when B = 0). Complete over K.
std::vector<Point> two_torsion(const Curve& c);

// Square root in O_K via the omega-coordinate quadratic system; nullopt when
// w is not a square. The returned root is one of the pair {z, -z}.
std::optional<QuadInt> sqrt_in_ok(const QuadInt& w);

struct ReductionCertificate {
  std::vector<std::pair<PrimeElem, long>> counts;  // good primes, point counts
  long bound;                                      // gcd of the counts
};

// First num_primes primes with residue characteristic > 3, residue size
// <= 1000 and good reduction; counts are naive with infinity included.
ReductionCertificate reduction_certificate(const Curve& c, int num_primes = 5);
long reduction_bound(const Curve& c, int num_primes = 5);

struct PointVerdict {
  Point point;
  long order;
  bool in_ok;
  bool in_zsqrtd;
  int parity_x, parity_y;  // omega coordinates mod 2
};

struct TorsionReport {
  std::vector<Point> points;  // subgroup, canonical order, infinity first
  long invariant_a;           // group is Z/a x Z/exponent (a = 1: cyclic)
  long exponent;
  bool certified_complete;    // |points| == reduction_bound
  long reduction_bound;
  std::vector<PointVerdict> verdicts;  // affine points, same order
};

std::string structure_text(const TorsionReport& r);  // "1", "Z/m", "Z/2xZ/m"

TorsionReport torsion_subgroup(const Curve& c, long height = 50,
                               long max_order = 18, int num_primes = 5);

struct CorpusSpec {
  int D;
  long coeff_bound;
  long count;
  unsigned long long seed;
};

// Deterministic sample of nonsingular integral curves.
std::vector<Curve> corpus_curves(const CorpusSpec& spec);

struct HypothesisEntry {
  Curve curve;
  TorsionReport report;
};

struct HypothesisReport {
  std::vector<HypothesisEntry> entries;
  unsigned long points_checked = 0;
  unsigned long in_ok_violations = 0;   // hard invariant: stays 0
  unsigned long in_zsqrtd_failures = 0;
};

// Runs the torsion pipeline over explicit curves and records, per torsion
// point, membership in O_K (must hold) and in Z[sqrt(D)] (the hypothesis
// under test; failures are reported, never suppressed).
HypothesisReport verify_paper(const std::vector<Curve>& curves,
                              long height = 50, long max_order = 18,
                              int num_primes = 5);

}  // namespace iq
