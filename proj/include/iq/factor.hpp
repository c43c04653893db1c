#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "iq/field.hpp"

namespace iq {

// Unique factorization, divisibility, gcd and prime-adic valuations in O_K.
// Everything here goes through norms and exact trial division, never through
// a Euclidean step, so it works unchanged in the four non-Euclidean fields.

enum class SplitType { Split, Ramified, Inert };

const char* split_type_name(SplitType t);  // "split" | "ramified" | "inert"

struct PrimeElem {
  QuadInt pi;              // canonical representative; p itself when inert
  mpz_class residue_char;  // rational prime below pi
  SplitType split_type;
  mpz_class residue_size;  // p for split/ramified, p^2 for inert
};

// Behavior of the rational prime p in O_K (Dedekind criterion on the field
// discriminant). Throws NotPrime.
SplitType splitting_type(const mpz_class& p, const FieldDesc& f);

// An element of norm p, canonicalized; nullopt exactly when p is inert.
// p = 2 is settled by a direct small search, odd p by Cornacchia on
// u^2 + |D| v^2 = p (SqrtD basis) or = 4p (HalfD basis).
std::optional<QuadInt> cornacchia(const mpz_class& p, const FieldDesc& f);

// Among the associates of x, the lexicographically least (a, b) with a >= 0,
// preferring b >= 0 on ties.
QuadInt canonical_associate(const QuadInt& x);

// The one or two primes of O_K above p, sorted by (a, b).
std::vector<PrimeElem> primes_above(const mpz_class& p, const FieldDesc& f);

struct Factorization {
  QuadInt unit;
  std::vector<std::pair<PrimeElem, unsigned>> factors;  // sorted by (p, a, b)
};

Factorization factor(const QuadInt& x);  // ZeroElement, FactorBudgetExceeded
QuadInt recompose(const Factorization& f);

QuadInt gcd(const QuadInt& x, const QuadInt& y);  // BothZero

bool divides(const QuadInt& beta, const QuadInt& alpha);        // ZeroDivisor
QuadInt divide_exact(const QuadInt& alpha, const QuadInt& beta);  // NotDivisible

// pi-adic value of x != 0: the unique r with x = pi^r * (a1/b1), pi coprime
// to a1 and b1.
long valuation(const QuadInt& x, const PrimeElem& pi);  // ZeroElement
long valuation(const QuadRat& x, const PrimeElem& pi);

}  // namespace iq
