#include <doctest.h>

#include <algorithm>

#include "iq/oracle.hpp"
#include "test_util.hpp"

using namespace iq;
using test::qi;
using test::qr;

namespace {

Curve curve_zz(const FieldDesc& f, long a, long b) {
  return Curve(f, qr(f, a, 0), qr(f, b, 0));
}

Point pt(const FieldDesc& f, long x, long y) {
  return Point::affine(qr(f, x, 0), qr(f, y, 0));
}

}  // namespace

TEST_CASE("bf_norm_reps") {
  const FieldDesc& gauss = make_field(-1);
  auto reps5 = oracle::bf_norm_reps(5, gauss);
  CHECK(reps5.size() == 8);
  for (const QuadInt& z : reps5) CHECK(norm(z) == 5);
  CHECK(std::is_sorted(reps5.begin(), reps5.end(),
                       [](const QuadInt& u, const QuadInt& v) {
                         int c = cmp(u.a, v.a);
                         return c != 0 ? c < 0 : cmp(u.b, v.b) < 0;
                       }));
  CHECK(oracle::bf_norm_reps(3, gauss).empty());

  for (int D : heegner_numbers()) {
    const FieldDesc& f = make_field(D);
    auto units = oracle::bf_norm_reps(1, f);
    CHECK(units.size() == f.units().size());
    for (const QuadInt& u : f.units())
      CHECK(std::find(units.begin(), units.end(), u) != units.end());
  }
}

TEST_CASE("bf_point_count") {
  const FieldDesc& gauss = make_field(-1);
  Curve c4x = curve_zz(gauss, 4, 0);
  for (const PrimeElem& pe : primes_above(5, gauss))
    CHECK(oracle::bf_point_count(c4x, pe) == 8);

  const FieldDesc& eis = make_field(-3);
  Curve c1 = curve_zz(eis, 0, 1);
  CHECK(oracle::bf_point_count(c1, primes_above(7, eis)[0]) % 6 == 0);

  // inert prime: an 81-pair scan over F_9
  PrimeElem three = primes_above(3, gauss)[0];
  long count9 = oracle::bf_point_count(c4x, three);
  CHECK(count9 % 8 == 0);  // the 8 torsion points inject (3 is a good odd prime)

  CHECK_THROWS_WITH_AS(oracle::bf_point_count(curve_zz(gauss, 0, 3),
                                              primes_above(3, gauss)[0]),
                       doctest::Contains("BadReduction"), Error);
}

TEST_CASE("bf_order") {
  const FieldDesc& eis = make_field(-3);
  OrderResult r6 = oracle::bf_order(pt(eis, 2, 3), curve_zz(eis, 0, 1));
  CHECK(r6.finite());
  CHECK(r6.value == 6);

  const FieldDesc& gauss = make_field(-1);
  OrderResult r2 = oracle::bf_order(pt(gauss, 0, 0), curve_zz(gauss, -1, 0));
  CHECK(r2.finite());
  CHECK(r2.value == 2);

  OrderResult rn = oracle::bf_order(pt(gauss, 1, 2), curve_zz(gauss, 0, 3), 20);
  CHECK(rn.kind == OrderResult::Kind::NotTorsionWithinBound);
  CHECK(rn.value == 20);
}
