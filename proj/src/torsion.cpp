#include "iq/torsion.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "iq/intfactor.hpp"

namespace iq {

namespace {

void require_integral(const Curve& c) {
  if (!c.integral())
    fail(errc::non_integral_curve, "normalize the curve to O_K coefficients first");
}

long valuation_or_max(const QuadRat& x, const PrimeElem& pi) {
  // Convention for x = 0: no prime divides anything, treat as +infinity.
  if (is_zero(x)) return std::numeric_limits<long>::max();
  return valuation(x, pi);
}

}  // namespace

FiltrationLevel filtration_level(const Point& p, const PrimeElem& pi,
                                 const Curve& c) {
  require_integral(c);
  if (p.is_infinity() || is_zero(p.y()))
    fail(errc::y_is_zero, "filtration level needs an affine point with y != 0");
  if (!on_curve(p, c))
    fail(errc::point_not_on_curve, "filtration level input off the curve");

  long vx = valuation_or_max(p.x(), pi);
  long vy = valuation(p.y(), pi);
  long q = 0;
  if (vx < 0 || vy < 0) {
    bool pattern_ok = vx < 0 && vy < 0 && 3 * vx == 2 * vy;
    if (!pattern_ok) {
      std::ostringstream os;
      os << "valuations (" << (vx == std::numeric_limits<long>::max()
                                   ? std::string("inf")
                                   : std::to_string(vx))
         << ", " << vy << ") at " << format_elem(to_rat(pi.pi))
         << " are not of the form (-2q, -3q)";
      fail(errc::pattern_violation, os.str());
    }
    q = -vx / 2;
  }
  if (q >= 1) {
    // Chart cross-check: s = 1/y has value 3q and t = x/y has value q.
    TSPoint ts = to_ts(p, c);
    if (valuation(ts.s, pi) != 3 * q || valuation(ts.t, pi) != q)
      fail(errc::pattern_violation, "chart valuations disagree with (t, s) = (q, 3q)");
  }
  return FiltrationLevel{pi, q >= 1 ? q : 0, q};
}

bool er_congruence_check(const Point& p1, const Point& p2, const PrimeElem& pi,
                         const Curve& c) {
  FiltrationLevel l1 = filtration_level(p1, pi, c);
  FiltrationLevel l2 = filtration_level(p2, pi, c);
  long r = std::min(l1.r, l2.r);
  if (r < 1)
    fail(errc::chart_undefined, "both points must lie in E_1 at the given prime");
  Point p3 = add(p1, p2, c);
  QuadRat t3 = to_rat(QuadInt(c.field(), 0, 0));
  if (!p3.is_infinity()) {
    if (is_zero(p3.y()))
      fail(errc::chart_undefined, "sum lands on the excluded locus y = 0");
    t3 = to_ts(p3, c).t;
  }
  QuadRat t1 = to_ts(p1, c).t;
  QuadRat t2 = to_ts(p2, c).t;
  QuadRat diff = t1 + t2 - t3;
  if (is_zero(diff)) return true;
  return valuation(diff, pi) >= 5 * r;
}

OrderResult order_of(const Point& p, const Curve& c, long max_order) {
  require_integral(c);
  if (!on_curve(p, c))
    fail(errc::point_not_on_curve, "order_of input off the curve");
  Point acc = p;  // m*p at the top of iteration m
  for (long m = 1; m <= max_order; ++m) {
    if (acc.is_infinity()) return OrderResult{OrderResult::Kind::Finite, m};
    if (!is_integral(acc.x()) || !is_integral(acc.y()))
      return OrderResult{OrderResult::Kind::ProvedInfinite, m};
    if (m < max_order) acc = add(acc, p, c);
  }
  return OrderResult{OrderResult::Kind::NotTorsionWithinBound, max_order};
}

std::optional<QuadInt> sqrt_in_ok(const QuadInt& w) {
  const FieldDesc& f = *w.field;
  if (is_zero(w)) return QuadInt(f, 0, 0);
  mpz_class n = norm(w), m;
  if (!is_perfect_square(n, &m)) return std::nullopt;

  const mpz_class& c0 = w.a;
  const mpz_class& c1 = w.b;
  long t = f.trace_omega();
  long nw = f.norm_omega();

  auto check = [&](const mpz_class& u, const mpz_class& v) -> std::optional<QuadInt> {
    QuadInt z(f, u, v);
    if (z * z == w) return z;
    return std::nullopt;
  };

  if (c1 == 0) {
    // z^2 rational: either z rational or z a rational multiple of sqrt(D).
    mpz_class u;
    if (c0 >= 0 && is_perfect_square(c0, &u)) return check(u, 0);
    if (t == 0) {
      mpz_class v2 = -c0;
      if (mpz_divisible_ui_p(v2.get_mpz_t(), nw)) {
        mpz_class v;
        if (is_perfect_square(v2 / nw, &v)) return check(0, v);
      }
    } else {
      // z = u*(1 - 2*omega) = -u*sqrt(D): z^2 = u^2 * D
      mpz_class u2 = c0;
      if (mpz_divisible_p(u2.get_mpz_t(), mpz_class(f.D()).get_mpz_t())) {
        mpz_class usq = u2 / f.D(), uu;
        if (is_perfect_square(usq, &uu)) {
          auto z = check(uu, -2 * uu);
          if (z) return z;
          return check(-uu, 2 * uu);
        }
      }
    }
    return std::nullopt;
  }

  // General case: 2uv + t v^2 = c1 with v != 0 and |v| <= 2 sqrt(m / |D|).
  mpz_class vmax = isqrt(4 * m / mpz_class(-f.D())) + 1;
  for (mpz_class v = 1; v <= vmax; ++v) {
    for (int sign = 0; sign < 2; ++sign) {
      mpz_class vv = sign ? mpz_class(-v) : v;
      mpz_class num = c1 - t * vv * vv;
      mpz_class twice_v = 2 * vv;
      if (!mpz_divisible_p(num.get_mpz_t(), twice_v.get_mpz_t())) continue;
      auto z = check(num / twice_v, vv);
      if (z) return z;
    }
  }
  return std::nullopt;
}

namespace {

// x-candidates that divide B: unit multiples of canonical divisor products.
std::vector<QuadInt> divisor_candidates(const QuadInt& B) {
  const FieldDesc& f = *B.field;
  Factorization fz = factor(B);
  std::vector<QuadInt> divisors{QuadInt(f, 1, 0)};
  for (const auto& [pe, e] : fz.factors) {
    std::vector<QuadInt> next;
    for (const QuadInt& d : divisors) {
      QuadInt acc = d;
      next.push_back(acc);
      for (unsigned i = 1; i <= e; ++i) {
        acc = acc * pe.pi;
        next.push_back(acc);
      }
    }
    divisors = std::move(next);
  }
  std::vector<QuadInt> out;
  for (const QuadInt& d : divisors)
    for (const QuadInt& u : f.units()) out.push_back(d * u);
  return out;
}

}  // namespace

std::vector<Point> two_torsion(const Curve& c) {
  require_integral(c);
  const FieldDesc& f = c.field();
  const QuadInt& A = c.A().num;
  const QuadInt& B = c.B().num;

  std::vector<QuadInt> candidates;
  if (is_zero(B)) {
    candidates.emplace_back(f, 0, 0);
    if (auto z = sqrt_in_ok(-A)) {
      candidates.push_back(*z);
      candidates.push_back(-*z);
    }
  } else {
    candidates = divisor_candidates(B);
  }

  std::vector<Point> roots;
  for (const QuadInt& x : candidates) {
    if (is_zero(x * x * x + A * x + B)) {
      Point p = Point::affine(to_rat(x), to_rat(QuadInt(f, 0, 0)));
      if (std::none_of(roots.begin(), roots.end(),
                       [&](const Point& q) { return q == p; }))
        roots.push_back(std::move(p));
    }
  }
  std::sort(roots.begin(), roots.end(), point_less);
  return roots;
}

namespace {

// Counting machinery for reduction mod a good prime. The residue field is
// F_p for split/ramified primes and F_{p^2} = F_p[wbar] for inert ones.
struct ResidueCounter {
  long p;
  bool quadratic;   // inert: elements are pairs (u, v) = u + v*wbar
  long t, n;        // wbar^2 = t*wbar - n
  long wbar;        // split/ramified: image of omega in F_p

  long reduce_rational(const mpz_class& v) const {
    mpz_class r = v % p;
    long out = long(mpz_class(r).get_si());
    return out < 0 ? out + p : out;
  }

  // Linear field: a + b*wbar mod p.
  long reduce_linear(const QuadInt& z) const {
    return long((reduce_rational(z.a) + __int128(reduce_rational(z.b)) * wbar) % p);
  }

  std::pair<long, long> reduce_pair(const QuadInt& z) const {
    return {reduce_rational(z.a), reduce_rational(z.b)};
  }

  std::pair<long, long> mul_pair(std::pair<long, long> x,
                                 std::pair<long, long> y) const {
    long cross = long(__int128(x.second) * y.second % p);
    long a = long(((__int128(x.first) * y.first - __int128(n) * cross) % p + p) % p);
    long b = long(((__int128(x.first) * y.second + __int128(x.second) * y.first +
                    __int128(t) * cross) %
                   p) %
                  p);
    return {a, b};
  }
};

ResidueCounter make_counter(const Curve& c, const PrimeElem& pi) {
  ResidueCounter rc{};
  rc.p = long(pi.residue_char.get_si());
  rc.t = c.field().trace_omega();
  rc.n = long(c.field().norm_omega() % rc.p);
  rc.quadratic = pi.split_type == SplitType::Inert;
  rc.wbar = 0;
  if (!rc.quadratic) {
    // pi = g + h*omega with h invertible mod p; omega = -g/h in F_p.
    mpz_class g = pi.pi.a % rc.p, h = pi.pi.b % rc.p;
    if (h < 0) h += rc.p;
    if (g < 0) g += rc.p;
    mpz_class hinv;
    mpz_class pz(rc.p);
    if (mpz_invert(hinv.get_mpz_t(), h.get_mpz_t(), pz.get_mpz_t()) == 0)
      throw std::logic_error("residue map: omega coefficient not invertible");
    mpz_class wb = (pz - g) * hinv % pz;
    rc.wbar = long(wb.get_si());
  }
  return rc;
}

long count_points_mod(const Curve& c, const PrimeElem& pi) {
  ResidueCounter rc = make_counter(c, pi);
  const QuadInt& A = c.A().num;
  const QuadInt& B = c.B().num;
  if (!rc.quadratic) {
    long p = rc.p;
    long a = rc.reduce_linear(A), b = rc.reduce_linear(B);
    std::vector<long> sq(p, 0);
    for (long y = 0; y < p; ++y) sq[long(__int128(y) * y % p)]++;
    long affine = 0;
    for (long x = 0; x < p; ++x) {
      long x2 = long(__int128(x) * x % p);
      long rhs = long((__int128(x2) * x + __int128(a) * x + b) % p);
      affine += sq[rhs];
    }
    return affine + 1;
  }
  long p = rc.p;
  long q = p * p;
  auto idx = [p](std::pair<long, long> z) { return z.first * p + z.second; };
  auto a = rc.reduce_pair(A);
  auto b = rc.reduce_pair(B);
  std::vector<long> sq(q, 0);
  for (long u = 0; u < p; ++u)
    for (long v = 0; v < p; ++v) {
      auto y = std::make_pair(u, v);
      sq[idx(rc.mul_pair(y, y))]++;
    }
  long affine = 0;
  for (long u = 0; u < p; ++u)
    for (long v = 0; v < p; ++v) {
      auto x = std::make_pair(u, v);
      auto x2 = rc.mul_pair(x, x);
      auto x3 = rc.mul_pair(x2, x);
      auto ax = rc.mul_pair(a, x);
      auto rhs = std::make_pair((x3.first + ax.first + b.first) % p,
                                (x3.second + ax.second + b.second) % p);
      affine += sq[idx(rhs)];
    }
  return affine + 1;
}

}  // namespace

ReductionCertificate reduction_certificate(const Curve& c, int num_primes) {
  require_integral(c);
  QuadInt delta = (c.disc_quantity()).num;
  ReductionCertificate cert;
  for (std::uint32_t p : small_primes()) {
    if (p <= 3) continue;
    if (p > 997) break;
    for (const PrimeElem& pe : primes_above(mpz_class(p), c.field())) {
      if (pe.residue_size > 1000) continue;
      if (valuation(delta, pe) != 0) continue;
      cert.counts.emplace_back(pe, count_points_mod(c, pe));
      if (int(cert.counts.size()) == num_primes) {
        long g = 0;
        for (const auto& [prime, count] : cert.counts)
          g = std::gcd(g, count);
        cert.bound = g;
        return cert;
      }
    }
  }
  fail(errc::not_enough_good_primes,
       "fewer than " + std::to_string(num_primes) +
           " good primes with residue size <= 1000");
}

long reduction_bound(const Curve& c, int num_primes) {
  return reduction_certificate(c, num_primes).bound;
}

namespace {

int parity(const mpz_class& v) { return mpz_odd_p(v.get_mpz_t()) ? 1 : 0; }

PointVerdict make_verdict(const Point& p, long order) {
  bool ok = is_integral(p.x()) && is_integral(p.y());
  if (!ok)
    throw std::logic_error("finite-order point with a denominator slipped through");
  return PointVerdict{p,
                      order,
                      ok,
                      in_z_sqrtd(p.x()) && in_z_sqrtd(p.y()),
                      parity(p.x().num.b),
                      parity(p.y().num.b)};
}

struct FoundPoint {
  Point point;
  long order;
};

}  // namespace

std::string structure_text(const TorsionReport& r) {
  if (r.invariant_a == 1 && r.exponent == 1) return "1";
  std::ostringstream os;
  if (r.invariant_a == 1) {
    os << "Z/" << r.exponent;
  } else {
    os << "Z/" << r.invariant_a << "xZ/" << r.exponent;
  }
  return os.str();
}

TorsionReport torsion_subgroup(const Curve& c, long height, long max_order,
                               int num_primes) {
  require_integral(c);
  const FieldDesc& f = c.field();
  ReductionCertificate cert = reduction_certificate(c, num_primes);

  std::vector<FoundPoint> kept;
  auto have = [&](const Point& p) {
    return std::any_of(kept.begin(), kept.end(),
                       [&](const FoundPoint& fp) { return fp.point == p; });
  };
  auto consider = [&](const Point& p, long bound) {
    if (have(p)) return false;
    OrderResult r = order_of(p, c, bound);
    if (!r.finite()) return false;
    kept.push_back(FoundPoint{p, r.value});
    return true;
  };

  kept.push_back(FoundPoint{Point::infinity(), 1});
  for (const Point& p : two_torsion(c)) consider(p, max_order);

  const QuadInt& A = c.A().num;
  const QuadInt& B = c.B().num;
  for (mpz_class a = -height; a <= height; ++a) {
    for (mpz_class b = -height; b <= height; ++b) {
      QuadInt x(f, a, b);
      QuadInt rhs = x * x * x + A * x + B;
      if (is_zero(rhs)) continue;  // 2-torsion already collected
      auto y = sqrt_in_ok(rhs);
      if (!y) continue;
      consider(Point::affine(to_rat(x), to_rat(*y)), max_order);
      consider(Point::affine(to_rat(x), to_rat(-*y)), max_order);
    }
  }

  // Close under negation and addition. Sums of torsion points are torsion of
  // order dividing the lcm, so the order search is run up to that bound.
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      Point neg = negate(kept[i].point);
      if (!have(neg)) {
        kept.push_back(FoundPoint{neg, kept[i].order});
        grew = true;
      }
      for (std::size_t j = 0; j <= i; ++j) {
        Point sum = add(kept[i].point, kept[j].point, c);
        if (have(sum)) continue;
        long bound = std::lcm(kept[i].order, kept[j].order);
        if (!consider(sum, bound))
          throw std::logic_error("sum of torsion points failed the order search");
        grew = true;
      }
    }
  }

  std::sort(kept.begin(), kept.end(), [](const FoundPoint& u, const FoundPoint& v) {
    return point_less(u.point, v.point);
  });

  TorsionReport report;
  long exponent = 1;
  for (const FoundPoint& fp : kept) {
    report.points.push_back(fp.point);
    exponent = std::lcm(exponent, fp.order);
  }
  long n = long(report.points.size());
  if (n % exponent != 0)
    throw std::logic_error("group order is not a multiple of the exponent");
  report.exponent = exponent;
  report.invariant_a = n / exponent;
  if (exponent % report.invariant_a != 0)
    throw std::logic_error("invariant factors do not divide");
  report.reduction_bound = cert.bound;
  if (n > cert.bound)
    throw std::logic_error("more torsion points than the reduction bound allows");
  report.certified_complete = (n == cert.bound);
  for (const FoundPoint& fp : kept)
    if (!fp.point.is_infinity())
      report.verdicts.push_back(make_verdict(fp.point, fp.order));
  return report;
}

std::vector<Curve> corpus_curves(const CorpusSpec& spec) {
  const FieldDesc& f = make_field(spec.D);
  std::mt19937_64 rng(spec.seed);
  long span = 2 * spec.coeff_bound + 1;
  auto draw = [&] { return long(rng() % (unsigned long long)(span)) - spec.coeff_bound; };
  std::vector<Curve> out;
  while (long(out.size()) < spec.count) {
    QuadRat A = to_rat(QuadInt(f, draw(), draw()));
    QuadRat B = to_rat(QuadInt(f, draw(), draw()));
    if (!is_nonsingular(A, B)) continue;
    out.emplace_back(f, std::move(A), std::move(B));
  }
  return out;
}

HypothesisReport verify_paper(const std::vector<Curve>& curves, long height,
                              long max_order, int num_primes) {
  HypothesisReport out;
  for (const Curve& c : curves) {
    TorsionReport r = torsion_subgroup(c, height, max_order, num_primes);
    for (const PointVerdict& v : r.verdicts) {
      ++out.points_checked;
      if (!v.in_ok) ++out.in_ok_violations;
      if (!v.in_zsqrtd) ++out.in_zsqrtd_failures;
    }
    out.entries.push_back(HypothesisEntry{c, std::move(r)});
  }
  return out;
}

}  // namespace iq
