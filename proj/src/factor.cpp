#include "iq/factor.hpp"

#include <algorithm>
#include <tuple>

#include "iq/intfactor.hpp"

namespace iq {

const char* split_type_name(SplitType t) {
  switch (t) {
    case SplitType::Split: return "split";
    case SplitType::Ramified: return "ramified";
    case SplitType::Inert: return "inert";
  }
  return "?";
}

SplitType splitting_type(const mpz_class& p, const FieldDesc& f) {
  if (p < 2 || !is_probable_prime(p))
    fail(errc::not_prime, p.get_str() + " is not a rational prime");
  mpz_class disc(f.discriminant());
  if (mpz_divisible_p(disc.get_mpz_t(), p.get_mpz_t()))
    return SplitType::Ramified;
  if (p == 2) {
    // Odd discriminant here; 2 splits iff D = 1 (mod 8).
    long dmod8 = ((f.D() % 8) + 8) % 8;
    return dmod8 == 1 ? SplitType::Split : SplitType::Inert;
  }
  int leg = mpz_legendre(disc.get_mpz_t(), p.get_mpz_t());
  return leg == 1 ? SplitType::Split : SplitType::Inert;
}

QuadInt canonical_associate(const QuadInt& x) {
  const FieldDesc& f = *x.field;
  const QuadInt* best = nullptr;
  QuadInt cand(f);
  QuadInt best_store(f);
  // prefer a > 0, then a = 0; prefer b >= 0; then smallest (a, b). This is
  // what makes canonical(1-class) = 1, canonical(2+i class) = (3, 2)-style
  // picks deterministic across the unit groups of all nine fields.
  auto key_less = [](const QuadInt& u, const QuadInt& v) {
    auto k = [](const QuadInt& z) {
      return std::make_tuple(z.a < 0, z.a == 0, z.b < 0);
    };
    auto ku = k(u), kv = k(v);
    if (ku != kv) return ku < kv;
    int c = cmp(u.a, v.a);
    if (c != 0) return c < 0;
    return cmp(u.b, v.b) < 0;
  };
  for (const QuadInt& u : f.units()) {
    cand = x * u;
    if (!best || key_less(cand, best_store)) {
      best_store = cand;
      best = &best_store;
    }
  }
  return best_store;
}

namespace {

// Classic Cornacchia: x^2 + d*y^2 = p for d = |D|, D = -1 or -2.
std::optional<QuadInt> cornacchia_sqrtd(const mpz_class& p, const FieldDesc& f) {
  mpz_class d = -mpz_class(f.D());
  auto t0 = sqrt_mod_prime(mpz_class(f.D()), p);
  if (!t0) return std::nullopt;
  mpz_class t = *t0;
  if (2 * t < p) t = p - t;
  mpz_class a = p, b = t;
  while (b * b > p) {
    mpz_class r = a % b;
    a = b;
    b = r;
  }
  mpz_class rest = p - b * b, y2, y;
  if (!mpz_divisible_p(rest.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
  y2 = rest / d;
  if (!is_perfect_square(y2, &y)) return std::nullopt;
  return QuadInt(f, b, y);
}

// Modified Cornacchia: u^2 + |D| v^2 = 4p with u = v (mod 2); the element is
// then (u-v)/2 + v*omega.
std::optional<QuadInt> cornacchia_halfd(const mpz_class& p, const FieldDesc& f) {
  mpz_class D(f.D());
  mpz_class absd = -D;
  auto t0 = sqrt_mod_prime(D, p);
  if (!t0) return std::nullopt;
  mpz_class t = *t0;
  if (mpz_odd_p(t.get_mpz_t()) != mpz_odd_p(D.get_mpz_t())) t = p - t;
  mpz_class a = 2 * p, b = t;
  mpz_class bound = isqrt(4 * p);
  while (b > bound) {
    mpz_class r = a % b;
    a = b;
    b = r;
  }
  mpz_class rest = 4 * p - b * b, v2, v;
  if (!mpz_divisible_p(rest.get_mpz_t(), absd.get_mpz_t())) return std::nullopt;
  v2 = rest / absd;
  if (!is_perfect_square(v2, &v)) return std::nullopt;
  if (mpz_odd_p(b.get_mpz_t()) != mpz_odd_p(v.get_mpz_t())) return std::nullopt;
  return QuadInt(f, (b - v) / 2, v);
}

std::optional<QuadInt> norm_p_small_search(const mpz_class& p, const FieldDesc& f) {
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      QuadInt z(f, a, b);
      if (norm(z) == p) return z;
    }
  return std::nullopt;
}

}  // namespace

std::optional<QuadInt> cornacchia(const mpz_class& p, const FieldDesc& f) {
  SplitType st = splitting_type(p, f);  // validates primality
  if (st == SplitType::Inert) return std::nullopt;
  std::optional<QuadInt> z;
  if (p == 2) {
    z = norm_p_small_search(p, f);
  } else if (st == SplitType::Ramified) {
    // p = |D| here; sqrt(D) = 2*omega - trace(omega) has norm |D|.
    z = QuadInt(f, -f.trace_omega(), 2);
  } else if (f.omega_kind() == OmegaKind::SqrtD) {
    z = cornacchia_sqrtd(p, f);
  } else {
    z = cornacchia_halfd(p, f);
  }
  if (!z || norm(*z) != p)
    fail(errc::no_solution,
         "no element of norm " + p.get_str() + " found for D = " +
             std::to_string(f.D()));
  return canonical_associate(*z);
}

std::vector<PrimeElem> primes_above(const mpz_class& p, const FieldDesc& f) {
  SplitType st = splitting_type(p, f);
  if (st == SplitType::Inert)
    return {PrimeElem{QuadInt(f, p, 0), p, st, p * p}};
  QuadInt pi = *cornacchia(p, f);
  if (st == SplitType::Ramified) return {PrimeElem{pi, p, st, p}};
  QuadInt pibar = canonical_associate(conj(pi));
  std::vector<PrimeElem> out;
  out.push_back(PrimeElem{pi, p, st, p});
  out.push_back(PrimeElem{pibar, p, st, p});
  std::sort(out.begin(), out.end(), [](const PrimeElem& u, const PrimeElem& v) {
    int c = cmp(u.pi.a, v.pi.a);
    if (c != 0) return c < 0;
    return cmp(u.pi.b, v.pi.b) < 0;
  });
  return out;
}

bool divides(const QuadInt& beta, const QuadInt& alpha) {
  if (is_zero(beta)) fail(errc::zero_divisor, "division by zero element");
  require_same_field(beta, alpha);
  QuadInt w = alpha * conj(beta);
  mpz_class n = norm(beta);
  return mpz_divisible_p(w.a.get_mpz_t(), n.get_mpz_t()) &&
         mpz_divisible_p(w.b.get_mpz_t(), n.get_mpz_t());
}

QuadInt divide_exact(const QuadInt& alpha, const QuadInt& beta) {
  if (is_zero(beta)) fail(errc::zero_divisor, "division by zero element");
  require_same_field(beta, alpha);
  QuadInt w = alpha * conj(beta);
  mpz_class n = norm(beta);
  if (!mpz_divisible_p(w.a.get_mpz_t(), n.get_mpz_t()) ||
      !mpz_divisible_p(w.b.get_mpz_t(), n.get_mpz_t()))
    fail(errc::not_divisible, "quotient is not in O_K");
  mpz_class qa, qb;
  mpz_divexact(qa.get_mpz_t(), w.a.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(qb.get_mpz_t(), w.b.get_mpz_t(), n.get_mpz_t());
  return QuadInt(*alpha.field, std::move(qa), std::move(qb));
}

namespace {

unsigned extract_prime_power(QuadInt& rem, const QuadInt& pi) {
  unsigned e = 0;
  while (divides(pi, rem)) {
    rem = divide_exact(rem, pi);
    ++e;
  }
  return e;
}

}  // namespace

Factorization factor(const QuadInt& x) {
  if (is_zero(x)) fail(errc::zero_element, "factor(0)");
  const FieldDesc& f = *x.field;
  mpz_class n = norm(x);
  if (n > kFactorBudget)
    fail(errc::factor_budget_exceeded,
         "norm " + n.get_str() + " exceeds the 10^12 budget");

  Factorization out{QuadInt(f, 1, 0), {}};
  QuadInt rem = x;
  for (const auto& [p, e] : factor_int(n)) {
    (void)e;
    for (const PrimeElem& pe : primes_above(p, f)) {
      unsigned k = extract_prime_power(rem, pe.pi);
      if (k > 0) out.factors.emplace_back(pe, k);
    }
  }
  if (!is_unit(rem))
    throw std::logic_error("factor: non-unit cofactor survived");
  out.unit = rem;
  return out;
}

QuadInt recompose(const Factorization& fz) {
  QuadInt out = fz.unit;
  for (const auto& [pe, e] : fz.factors)
    for (unsigned i = 0; i < e; ++i) out = out * pe.pi;
  return out;
}

QuadInt gcd(const QuadInt& x, const QuadInt& y) {
  require_same_field(x, y);
  if (is_zero(x) && is_zero(y)) fail(errc::both_zero, "gcd(0, 0)");
  if (is_zero(x)) return canonical_associate(y);
  if (is_zero(y)) return canonical_associate(x);
  Factorization fx = factor(x), fy = factor(y);
  QuadInt out(*x.field, 1, 0);
  for (const auto& [pe, ex] : fx.factors)
    for (const auto& [qe, ey] : fy.factors)
      if (pe.pi == qe.pi)
        for (unsigned i = 0; i < std::min(ex, ey); ++i) out = out * pe.pi;
  return canonical_associate(out);
}

long valuation(const QuadInt& x, const PrimeElem& pi) {
  if (is_zero(x)) fail(errc::zero_element, "valuation of zero");
  QuadInt rem = x;
  return long(extract_prime_power(rem, pi.pi));
}

long valuation(const QuadRat& x, const PrimeElem& pi) {
  if (is_zero(x)) fail(errc::zero_element, "valuation of zero");
  long vnum = valuation(x.num, pi);
  // The denominator is rational, so only the residue characteristic matters:
  // v_pi(p) = 2 when p ramifies, 1 otherwise.
  long e = 0;
  mpz_class d = x.den;
  while (mpz_divisible_p(d.get_mpz_t(), pi.residue_char.get_mpz_t())) {
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pi.residue_char.get_mpz_t());
    ++e;
  }
  long vp = pi.split_type == SplitType::Ramified ? 2 : 1;
  return vnum - e * vp;
}

}  // namespace iq
