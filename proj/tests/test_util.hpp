#pragma once

#include <random>

#include "iq/curve.hpp"
#include "iq/field.hpp"

namespace iq::test {

inline QuadInt qi(const FieldDesc& f, long a, long b) {
  return QuadInt(f, a, b);
}

inline QuadRat qr(const FieldDesc& f, long a, long b, long den = 1) {
  return qr_reduce(QuadInt(f, a, b), den);
}

inline QuadInt random_qi(const FieldDesc& f, std::mt19937_64& rng, long bound) {
  auto draw = [&] {
    return long(rng() % (unsigned long long)(2 * bound + 1)) - bound;
  };
  return QuadInt(f, draw(), draw());
}

// Curve through two prescribed affine points: solving the two curve
// equations for A and B.
inline std::pair<QuadRat, QuadRat> coeffs_through(const QuadRat& x1,
                                                  const QuadRat& y1,
                                                  const QuadRat& x2,
                                                  const QuadRat& y2) {
  QuadRat lhs1 = y1 * y1 - x1 * x1 * x1;
  QuadRat lhs2 = y2 * y2 - x2 * x2 * x2;
  QuadRat A = (lhs1 - lhs2) / (x1 - x2);
  QuadRat B = lhs1 - A * x1;
  return {A, B};
}

}  // namespace iq::test
