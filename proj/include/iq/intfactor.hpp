#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace iq {

// Rational-integer plumbing behind factorization in O_K: trial division up to
// 10^6, Pollard rho for what remains, and square roots mod p for Cornacchia.

// Largest |n| (and largest element norm) the v1 factor routines accept.
inline constexpr long kFactorBudget = 1'000'000'000'000L;

bool is_probable_prime(const mpz_class& n);
mpz_class isqrt(const mpz_class& n);  // floor square root, n >= 0
bool is_perfect_square(const mpz_class& n, mpz_class* root = nullptr);

// Prime powers of |n|, ascending. Throws ZeroElement for n = 0 and
// FactorBudgetExceeded for |n| > kFactorBudget.
std::vector<std::pair<mpz_class, unsigned>> factor_int(const mpz_class& n);

// One nontrivial factor of an odd composite n (Pollard rho, Brent cycling).
mpz_class pollard_rho(const mpz_class& n);

// Tonelli-Shanks: r with r*r = a (mod p), p an odd prime; nullopt if a is a
// non-residue.
std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a, const mpz_class& p);

const std::vector<std::uint32_t>& small_primes();  // all primes < 10^6

}  // namespace iq
