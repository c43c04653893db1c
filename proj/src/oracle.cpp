#include "iq/oracle.hpp"

#include <algorithm>

#include "iq/intfactor.hpp"

namespace iq::oracle {

std::vector<QuadInt> bf_norm_reps(const mpz_class& n, const FieldDesc& f) {
  std::vector<QuadInt> out;
  long t = f.trace_omega();
  long nw = f.norm_omega();
  mpz_class bmax = isqrt(4 * n / mpz_class(-f.D())) + 1;
  for (mpz_class b = -bmax; b <= bmax; ++b) {
    // a^2 + t a b + (nw b^2 - n) = 0: scan the integer candidates around the
    // real roots and keep the exact matches.
    mpz_class disc = t * t * b * b - 4 * (nw * b * b - n);
    if (disc < 0) continue;
    mpz_class s = isqrt(disc);
    mpz_class lo = (-t * b - s) / 2, hi = (-t * b + s) / 2;
    for (const mpz_class& root : {lo, hi}) {
      for (mpz_class a = root - 2; a <= root + 2; ++a) {
        QuadInt z(f, a, b);
        if (norm(z) == n &&
            std::none_of(out.begin(), out.end(),
                         [&](const QuadInt& w) { return w == z; }))
          out.push_back(z);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadInt& u, const QuadInt& v) {
    int c = cmp(u.a, v.a);
    if (c != 0) return c < 0;
    return cmp(u.b, v.b) < 0;
  });
  return out;
}

namespace {

// Residue arithmetic rebuilt from scratch: elements of F_p or F_{p^2} as
// pairs (u, v) = u + v*wbar with wbar^2 = t*wbar - n mod p. For split and
// ramified primes wbar collapses to the rational root determined by pi.
struct Residue {
  long u, v;
};

struct ResidueField {
  long p;
  bool quadratic;
  long t, n;
  long omega_image;  // only for the linear case

  Residue reduce(const QuadInt& z) const {
    mpz_class ra = z.a % p, rb = z.b % p;
    if (ra < 0) ra += p;
    if (rb < 0) rb += p;
    long la = long(ra.get_si()), lb = long(rb.get_si());
    if (quadratic) return Residue{la, lb};
    return Residue{long((la + __int128(lb) * omega_image) % p), 0};
  }

  Residue mul(Residue x, Residue y) const {
    if (!quadratic)
      return Residue{long(__int128(x.u) * y.u % p), 0};
    long cross = long(__int128(x.v) * y.v % p);
    long a = long(((__int128(x.u) * y.u - __int128(n) * cross) % p + p) % p);
    long b = long((__int128(x.u) * y.v + __int128(x.v) * y.u +
                   __int128(t) * cross) % p);
    return Residue{a, b};
  }

  Residue addr(Residue x, Residue y) const {
    return Residue{(x.u + y.u) % p, (x.v + y.v) % p};
  }

  bool equal(Residue x, Residue y) const { return x.u == y.u && x.v == y.v; }
};

ResidueField build_field(const Curve& c, const PrimeElem& pi) {
  ResidueField rf{};
  rf.p = long(pi.residue_char.get_si());
  rf.quadratic = pi.split_type == SplitType::Inert;
  rf.t = c.field().trace_omega() % rf.p;
  rf.n = c.field().norm_omega() % rf.p;
  rf.omega_image = 0;
  if (!rf.quadratic) {
    // omega is congruent to a rational residue mod pi: scan for the w with
    // pi | omega - w, i.e. (omega - w) * conj(pi) has both coordinates
    // divisible by Norm(pi) = p.
    for (long w = 0; w < rf.p; ++w) {
      QuadInt prod = QuadInt(c.field(), -w, 1) * conj(pi.pi);
      if (mpz_divisible_ui_p(prod.a.get_mpz_t(), (unsigned long)rf.p) &&
          mpz_divisible_ui_p(prod.b.get_mpz_t(), (unsigned long)rf.p)) {
        rf.omega_image = w;
        break;
      }
    }
  }
  return rf;
}

}  // namespace

long bf_point_count(const Curve& c, const PrimeElem& pi) {
  if (!c.integral())
    fail(errc::bad_reduction, "point counts need an integral model");
  if (pi.residue_size > 10000)
    fail(errc::bad_reduction, "residue field larger than 10^4");
  ResidueField rf = build_field(c, pi);
  QuadInt delta = c.disc_quantity().num;
  Residue dbar = rf.reduce(delta);
  if (dbar.u == 0 && dbar.v == 0)
    fail(errc::bad_reduction, "pi divides 4A^3 + 27B^2");

  Residue a = rf.reduce(c.A().num);
  Residue b = rf.reduce(c.B().num);
  long vspan = rf.quadratic ? rf.p : 1;
  long count = 0;
  for (long xu = 0; xu < rf.p; ++xu)
    for (long xv = 0; xv < vspan; ++xv) {
      Residue x{xu, xv};
      Residue rhs = rf.addr(rf.addr(rf.mul(rf.mul(x, x), x), rf.mul(a, x)), b);
      for (long yu = 0; yu < rf.p; ++yu)
        for (long yv = 0; yv < vspan; ++yv) {
          Residue y{yu, yv};
          if (rf.equal(rf.mul(y, y), rhs)) ++count;
        }
    }
  return count + 1;
}

namespace {

// Private affine addition: straight chord-tangent formulas, no curve checks.
Point naive_add(const Point& p, const Point& q, const Curve& c) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x()) {
    if (p.y() == -q.y()) return Point::infinity();
    QuadRat three = to_rat(QuadInt(c.field(), 3, 0));
    QuadRat two = to_rat(QuadInt(c.field(), 2, 0));
    QuadRat lambda = (three * p.x() * p.x() + c.A()) / (two * p.y());
    QuadRat x3 = lambda * lambda - p.x() - q.x();
    QuadRat y3 = lambda * (p.x() - x3) - p.y();
    return Point::affine(x3, y3);
  }
  QuadRat lambda = (q.y() - p.y()) / (q.x() - p.x());
  QuadRat x3 = lambda * lambda - p.x() - q.x();
  QuadRat y3 = lambda * (p.x() - x3) - p.y();
  return Point::affine(x3, y3);
}

}  // namespace

OrderResult bf_order(const Point& p, const Curve& c, long cap) {
  Point acc = p;
  for (long m = 1; m <= cap; ++m) {
    if (acc.is_infinity()) return OrderResult{OrderResult::Kind::Finite, m};
    acc = naive_add(acc, p, c);
  }
  return OrderResult{OrderResult::Kind::NotTorsionWithinBound, cap};
}

}  // namespace iq::oracle
