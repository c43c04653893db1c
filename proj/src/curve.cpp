#include "iq/curve.hpp"

#include <array>

namespace iq {

namespace {

QuadRat rat_const(const FieldDesc& f, long v) {
  return to_rat(QuadInt(f, v, 0));
}

QuadRat disc_quantity_of(const QuadRat& A, const QuadRat& B) {
  const FieldDesc& f = *A.num.field;
  return rat_const(f, 4) * A * A * A + rat_const(f, 27) * B * B;
}

}  // namespace

bool is_nonsingular(const QuadRat& A, const QuadRat& B) {
  return !is_zero(disc_quantity_of(A, B));
}

Curve::Curve(const FieldDesc& f, QuadRat A, QuadRat B)
    : field_(&f), a_(std::move(A)), b_(std::move(B)) {
  if (a_.num.field != &f || b_.num.field != &f)
    fail(errc::field_mismatch, "curve coefficients from a different field");
  if (!is_nonsingular(a_, b_))
    fail(errc::singular_curve, "4A^3 + 27B^2 = 0");
}

QuadRat Curve::disc_quantity() const { return disc_quantity_of(a_, b_); }

QuadRat Curve::discriminant() const {
  return rat_const(*field_, -16) * disc_quantity();
}

bool operator==(const Point& p, const Point& q) {
  if (p.is_infinity() || q.is_infinity())
    return p.is_infinity() == q.is_infinity();
  return p.x() == q.x() && p.y() == q.y();
}

bool on_curve(const Point& p, const Curve& c) {
  if (p.is_infinity()) return true;
  QuadRat rhs = p.x() * p.x() * p.x() + c.A() * p.x() + c.B();
  return p.y() * p.y() == rhs;
}

namespace {

void require_on_curve(const Point& p, const Curve& c) {
  if (!on_curve(p, c))
    fail(errc::point_not_on_curve, "point does not satisfy y^2 = x^3+Ax+B");
}

}  // namespace

Point add(const Point& p, const Point& q, const Curve& c) {
  require_on_curve(p, c);
  require_on_curve(q, c);
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x() && p.y() == -q.y()) return Point::infinity();
  QuadRat lambda = [&] {
    if (p.x() == q.x()) {
      // doubling; y != 0 since otherwise p = -q above
      QuadRat three = rat_const(c.field(), 3);
      QuadRat two = rat_const(c.field(), 2);
      return (three * p.x() * p.x() + c.A()) / (two * p.y());
    }
    return (q.y() - p.y()) / (q.x() - p.x());
  }();
  QuadRat x3 = lambda * lambda - p.x() - q.x();
  QuadRat y3 = lambda * (p.x() - x3) - p.y();
  return Point::affine(std::move(x3), std::move(y3));
}

Point negate(const Point& p) {
  if (p.is_infinity()) return p;
  return Point::affine(p.x(), -p.y());
}

Point scalar_mul(const mpz_class& n, const Point& p, const Curve& c) {
  require_on_curve(p, c);
  if (n == 0 || p.is_infinity()) return Point::infinity();
  mpz_class k = abs(n);
  Point base = n < 0 ? negate(p) : p;
  Point acc = Point::infinity();
  for (long i = long(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; i >= 0; --i) {
    acc = add(acc, acc, c);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = add(acc, base, c);
  }
  return acc;
}

bool point_less(const Point& p, const Point& q) {
  if (p.is_infinity() || q.is_infinity())
    return p.is_infinity() && !q.is_infinity();
  std::array<const mpz_class*, 6> kp = {&p.x().num.a, &p.x().num.b, &p.x().den,
                                        &p.y().num.a, &p.y().num.b, &p.y().den};
  std::array<const mpz_class*, 6> kq = {&q.x().num.a, &q.x().num.b, &q.x().den,
                                        &q.y().num.a, &q.y().num.b, &q.y().den};
  for (int i = 0; i < 6; ++i) {
    int c = cmp(*kp[i], *kq[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

bool on_ts_curve(const TSPoint& q, const Curve& c) {
  QuadRat rhs = q.t * q.t * q.t + c.A() * q.t * q.s * q.s +
                c.B() * q.s * q.s * q.s;
  return q.s == rhs;
}

TSPoint to_ts(const Point& p, const Curve& c) {
  if (p.is_infinity()) {
    QuadRat zero = rat_const(c.field(), 0);
    return TSPoint{zero, zero};
  }
  require_on_curve(p, c);
  if (is_zero(p.y())) fail(errc::y_is_zero, "chart undefined where y = 0");
  return TSPoint{p.x() / p.y(), inverse(p.y())};
}

Point from_ts(const TSPoint& q) {
  if (is_zero(q.s)) fail(errc::s_is_zero, "from_ts needs s != 0");
  QuadRat y = inverse(q.s);
  QuadRat x = q.t / q.s;
  return Point::affine(std::move(x), std::move(y));
}

ChordLine chord_slope(const TSPoint& p1, const TSPoint& p2, const Curve& c) {
  if (!on_ts_curve(p1, c) || !on_ts_curve(p2, c))
    fail(errc::point_not_on_curve, "chart point not on s = t^3+Ats^2+Bs^3");
  const QuadRat& A = c.A();
  const QuadRat& B = c.B();
  QuadRat one = rat_const(c.field(), 1);
  auto [num, den] = [&]() -> std::pair<QuadRat, QuadRat> {
    if (p1.t == p2.t) {
      if (!(p1.s == p2.s))
        fail(errc::chart_undefined,
             "distinct chart points on a vertical line t = const");
      QuadRat three = rat_const(c.field(), 3);
      QuadRat two = rat_const(c.field(), 2);
      return {three * p1.t * p1.t + A * p1.s * p1.s,
              one - two * A * p1.s * p1.t - three * B * p1.s * p1.s};
    }
    return {p2.t * p2.t + p1.t * p2.t + p1.t * p1.t + A * p2.s * p2.s,
            one - A * (p1.s + p2.s) * p1.t -
                B * (p2.s * p2.s + p1.s * p2.s + p1.s * p1.s)};
  }();
  if (is_zero(den))
    fail(errc::denominator_zero, "closed-form slope denominator vanishes");
  QuadRat alpha = num / den;
  QuadRat beta = p1.s - alpha * p1.t;
  return ChordLine{std::move(alpha), std::move(beta)};
}

NormalizedCurve normalize(const FieldDesc& f, const QuadRat& A,
                          const QuadRat& B) {
  if (!is_nonsingular(A, B)) fail(errc::singular_curve, "4A^3 + 27B^2 = 0");
  NormalizationData nd{A.num, B.num, A.den, B.den, A.den * B.den};
  mpz_class c3 = nd.c * nd.c * nd.c;
  mpz_class c5 = c3 * nd.c * nd.c;
  QuadInt a2(f, c3 * nd.b_den, 0);
  QuadInt b2(f, c5 * nd.a_den, 0);
  QuadRat Ap = to_rat(nd.a_num * a2);
  QuadRat Bp = to_rat(nd.b_num * b2);
  return NormalizedCurve{Curve(f, std::move(Ap), std::move(Bp)), std::move(nd)};
}

Point map_point(const NormalizationData& nd, const Point& p) {
  if (p.is_infinity()) return p;
  const FieldDesc& f = *p.x().num.field;
  mpz_class c2 = nd.c * nd.c;
  mpz_class c3 = c2 * nd.c;
  QuadRat x = p.x() * to_rat(QuadInt(f, c2, 0));
  QuadRat y = p.y() * to_rat(QuadInt(f, c3, 0));
  return Point::affine(std::move(x), std::move(y));
}

}  // namespace iq
