#pragma once

#include <optional>
#include <utility>

#include "iq/field.hpp"

namespace iq {

// Short Weierstrass curves y^2 = x^3 + Ax + B over K, the affine group law,
// clearing denominators to an O_K model, and the (t, s) = (x/y, 1/y) chart.

bool is_nonsingular(const QuadRat& A, const QuadRat& B);

class Curve {
public:
  Curve(const FieldDesc& f, QuadRat A, QuadRat B);  // SingularCurve

  const FieldDesc& field() const { return *field_; }
  const QuadRat& A() const { return a_; }
  const QuadRat& B() const { return b_; }
  bool integral() const { return a_.den == 1 && b_.den == 1; }

  QuadRat disc_quantity() const;     // 4A^3 + 27B^2
  QuadRat discriminant() const;      // -16(4A^3 + 27B^2)

private:
  const FieldDesc* field_;
  QuadRat a_, b_;
};

class Point {
public:
  static Point infinity() { return Point(); }
  static Point affine(QuadRat x, QuadRat y) {
    Point p;
    p.xy_.emplace(std::move(x), std::move(y));
    return p;
  }

  bool is_infinity() const { return !xy_.has_value(); }
  const QuadRat& x() const { return xy_->first; }
  const QuadRat& y() const { return xy_->second; }

private:
  Point() = default;
  std::optional<std::pair<QuadRat, QuadRat>> xy_;
};

bool operator==(const Point& p, const Point& q);
inline bool operator!=(const Point& p, const Point& q) { return !(p == q); }

bool on_curve(const Point& p, const Curve& c);

// Chord-tangent addition; inputs are verified to lie on the curve.
Point add(const Point& p, const Point& q, const Curve& c);  // PointNotOnCurve
Point negate(const Point& p);
Point scalar_mul(const mpz_class& n, const Point& p, const Curve& c);

// Deterministic ordering: infinity first, then by (x.a, x.b, x.den, y.a,
// y.b, y.den).
bool point_less(const Point& p, const Point& q);

struct TSPoint {
  QuadRat t, s;
};

// s = t^3 + A t s^2 + B s^3 holds exactly.
bool on_ts_curve(const TSPoint& q, const Curve& c);

TSPoint to_ts(const Point& p, const Curve& c);  // YIsZero; infinity -> (0, 0)
Point from_ts(const TSPoint& q);                // SIsZero

struct ChordLine {
  QuadRat alpha, beta;  // the line s = alpha*t + beta
};

// Slope through two chart points by the closed form
//   alpha = (t2^2 + t1 t2 + t1^2 + A s2^2)
//           / (1 - A (s1+s2) t1 - B (s2^2 + s1 s2 + s1^2)),
// or its tangent limit (3t^2 + As^2) / (1 - 2Ast - 3Bs^2) when the points
// coincide. DenominatorZero is reported, never divided through.
ChordLine chord_slope(const TSPoint& p1, const TSPoint& p2, const Curve& c);

struct NormalizationData {
  QuadInt a_num, b_num;     // A = a_num/a_den, B = b_num/b_den
  mpz_class a_den, b_den;
  mpz_class c;              // clearing factor a_den * b_den
};

struct NormalizedCurve {
  Curve curve;  // integral model Y^2 = X^3 + A'X + B'
  NormalizationData data;
};

// Scale to A' = c^3 * a_num * b_den, B' = c^5 * a_den * b_num; points map
// through (x, y) -> (c^2 x, c^3 y), an isomorphism of groups.
NormalizedCurve normalize(const FieldDesc& f, const QuadRat& A,
                          const QuadRat& B);  // SingularCurve
Point map_point(const NormalizationData& nd, const Point& p);

}  // namespace iq
