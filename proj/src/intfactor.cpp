#include "iq/intfactor.hpp"

#include <algorithm>

#include "iq/errors.hpp"

namespace iq {

namespace {
constexpr std::uint32_t kTrialLimit = 1'000'000;
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

mpz_class isqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const mpz_class& n, mpz_class* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) *root = isqrt(n);
  return true;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> sieve(kTrialLimit, true);
    sieve[0] = sieve[1] = false;
    for (std::uint32_t i = 2; std::uint64_t(i) * i < kTrialLimit; ++i)
      if (sieve[i])
        for (std::uint64_t j = std::uint64_t(i) * i; j < kTrialLimit; j += i)
          sieve[j] = false;
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kTrialLimit; ++i)
      if (sieve[i]) out.push_back(i);
    return out;
  }();
  return primes;
}

mpz_class pollard_rho(const mpz_class& n) {
  // Brent's variant with deterministic parameter sweep.
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1, diff;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;  // cycle without factor, try next c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n && diff != 0) return d;
  }
}

std::vector<std::pair<mpz_class, unsigned>> factor_int(const mpz_class& n) {
  if (n == 0) fail(errc::zero_element, "factor_int(0)");
  mpz_class m = abs(n);
  if (m > kFactorBudget)
    fail(errc::factor_budget_exceeded,
         "|" + m.get_str() + "| exceeds the 10^12 factoring budget");

  std::vector<std::pair<mpz_class, unsigned>> out;
  for (std::uint32_t p : small_primes()) {
    if (mpz_class(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
      out.emplace_back(mpz_class(p), e);
    }
  }
  // Whatever survives trial division gets split by rho until prime.
  std::vector<mpz_class> pending;
  if (m > 1) pending.push_back(m);
  std::vector<mpz_class> primes_found;
  while (!pending.empty()) {
    mpz_class v = pending.back();
    pending.pop_back();
    if (is_probable_prime(v)) {
      primes_found.push_back(v);
      continue;
    }
    mpz_class d = pollard_rho(v);
    pending.push_back(d);
    pending.push_back(v / d);
  }
  std::sort(primes_found.begin(), primes_found.end());
  for (std::size_t i = 0; i < primes_found.size();) {
    std::size_t j = i;
    while (j < primes_found.size() && primes_found[j] == primes_found[i]) ++j;
    out.emplace_back(primes_found[i], unsigned(j - i));
    i = j;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a, const mpz_class& p) {
  mpz_class r = a % p;
  if (r < 0) r += p;
  if (r == 0) return mpz_class(0);
  if (p == 2) return r;
  if (mpz_legendre(r.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;

  auto powm = [&p](mpz_class base, const mpz_class& exp) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
    return out;
  };

  if (p % 4 == 3) return powm(r, (p + 1) / 4);

  // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  mpz_class c = powm(z, q);
  mpz_class x = powm(r, (q + 1) / 2);
  mpz_class t = powm(r, q);
  unsigned long m = s;
  while (t != 1) {
    mpz_class tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return x;
}

}  // namespace iq
