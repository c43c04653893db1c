#include <doctest.h>

#include <algorithm>
#include <random>

#include "iq/intfactor.hpp"
#include "iq/oracle.hpp"
#include "iq/torsion.hpp"
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

PrimeElem prime_over(const FieldDesc& f, long p, std::size_t which = 0) {
  return primes_above(mpz_class(p), f)[which];
}

}  // namespace

TEST_CASE("sqrt_in_ok") {
  std::mt19937_64 rng(14142);
  for (int D : heegner_numbers()) {
    const FieldDesc& f = make_field(D);
    CHECK(*sqrt_in_ok(qi(f, 0, 0)) == qi(f, 0, 0));
    CHECK_FALSE(sqrt_in_ok(qi(f, 2, 0)).has_value());
    for (int i = 0; i < 200; ++i) {
      QuadInt z = test::random_qi(f, rng, 40);
      auto r = sqrt_in_ok(z * z);
      REQUIRE(r.has_value());
      CHECK((*r == z || *r == -z));
    }
  }
  // rational negatives: sqrt(-4) exists exactly in Q(i)
  CHECK(sqrt_in_ok(qi(make_field(-1), -4, 0)).has_value());
  CHECK_FALSE(sqrt_in_ok(qi(make_field(-7), -4, 0)).has_value());
  // -3 is the square of sqrt(-3) = 2w - 1 in Q(sqrt(-3))
  auto r3 = sqrt_in_ok(qi(make_field(-3), -3, 0));
  REQUIRE(r3.has_value());
  CHECK(*r3 * *r3 == qi(make_field(-3), -3, 0));
}

TEST_CASE("filtration level") {
  const FieldDesc& gauss = make_field(-1);
  Curve c3 = curve_zz(gauss, 0, 3);
  Point twoP = add(pt(gauss, 1, 2), pt(gauss, 1, 2), c3);

  // den(x) = 2^4 and den(y) = 2^6; at the ramified (1+i) the pi-adic values
  // double to (-8, -12), so q = r = 4
  PrimeElem pi = prime_over(gauss, 2);
  CHECK(valuation(twoP.x(), pi) == -8);
  CHECK(valuation(twoP.y(), pi) == -12);
  FiltrationLevel lvl = filtration_level(twoP, pi, c3);
  CHECK(lvl.q == 4);
  CHECK(lvl.r == 4);

  // at the inert 2 of D = -3 the same point sits at (-4, -6), q = r = 2
  const FieldDesc& eis = make_field(-3);
  Curve c3e = curve_zz(eis, 0, 3);
  Point twoPe = add(pt(eis, 1, 2), pt(eis, 1, 2), c3e);
  FiltrationLevel le = filtration_level(twoPe, prime_over(eis, 2), c3e);
  CHECK(valuation(twoPe.x(), prime_over(eis, 2)) == -4);
  CHECK(valuation(twoPe.y(), prime_over(eis, 2)) == -6);
  CHECK(le.q == 2);
  CHECK(le.r == 2);

  // integral points sit at level zero
  FiltrationLevel l0 = filtration_level(pt(gauss, 1, 2), pi, c3);
  CHECK(l0.r == 0);
  CHECK(l0.q == 0);

  CHECK_THROWS_WITH_AS(
      filtration_level(pt(gauss, -1, 0), pi, curve_zz(gauss, -1, 0)),
      doctest::Contains("YIsZero"), Error);
}

TEST_CASE("er congruence") {
  for (int D : heegner_numbers()) {
    const FieldDesc& f = make_field(D);
    Curve c = curve_zz(f, 0, 3);
    Point p = pt(f, 1, 2);
    Point p2 = add(p, p, c);
    Point p4 = add(p2, p2, c);
    Point p6 = add(p2, p4, c);
    for (const PrimeElem& pi : primes_above(2, f)) {
      CHECK(er_congruence_check(p2, p2, pi, c));
      CHECK(er_congruence_check(p2, p4, pi, c));
      CHECK(er_congruence_check(p4, p4, pi, c));
      CHECK(er_congruence_check(p2, p6, pi, c));
      // p3 = infinity: t(-P) = -t(P), so the congruence degenerates to 0
      CHECK(er_congruence_check(p2, negate(p2), pi, c));
      // mixed levels are evaluated at the smaller r
      CHECK(er_congruence_check(p4, negate(p2), pi, c));
    }
  }
  // both points must actually sit in E_1
  const FieldDesc& gauss = make_field(-1);
  Curve c = curve_zz(gauss, 0, 3);
  CHECK_THROWS_WITH_AS(
      er_congruence_check(pt(gauss, 1, 2), pt(gauss, 1, 2),
                          prime_over(gauss, 2), c),
      doctest::Contains("ChartUndefined"), Error);
}

TEST_CASE("order_of") {
  const FieldDesc& gauss = make_field(-1);
  Curve c4x = curve_zz(gauss, 4, 0);
  OrderResult inf = order_of(Point::infinity(), c4x);
  CHECK(inf.finite());
  CHECK(inf.value == 1);

  OrderResult r4 = order_of(pt(gauss, 2, 4), c4x);
  CHECK(r4.finite());
  CHECK(r4.value == 4);

  Curve c3 = curve_zz(gauss, 0, 3);
  OrderResult ri = order_of(pt(gauss, 1, 2), c3);
  CHECK(ri.kind == OrderResult::Kind::ProvedInfinite);
  CHECK(ri.value == 2);  // the doubling is the first multiple to leave O_K

  const FieldDesc& eis = make_field(-3);
  OrderResult rb = order_of(pt(eis, 2, 3), curve_zz(eis, 0, 1), 5);
  CHECK(rb.kind == OrderResult::Kind::NotTorsionWithinBound);
  CHECK(rb.value == 5);
}

TEST_CASE("order_of rejects bad inputs") {
  const FieldDesc& gauss = make_field(-1);
  Curve c4x = curve_zz(gauss, 4, 0);
  CHECK_THROWS_WITH_AS(order_of(pt(gauss, 1, 1), c4x),
                       doctest::Contains("PointNotOnCurve"), Error);
  Curve half(gauss, qr(gauss, 1, 0, 2), qr(gauss, 0, 0));
  CHECK_THROWS_WITH_AS(order_of(Point::infinity(), half),
                       doctest::Contains("NonIntegralCurve"), Error);
}

TEST_CASE("order_of agrees with the repeated-addition oracle") {
  const FieldDesc& gauss = make_field(-1);
  Curve c4x = curve_zz(gauss, 4, 0);
  for (const Point& p : {pt(gauss, 2, 4), pt(gauss, 0, 0), pt(gauss, 2, -4)}) {
    OrderResult a = order_of(p, c4x);
    OrderResult b = oracle::bf_order(p, c4x);
    CHECK(a.finite());
    CHECK(b.finite());
    CHECK(a.value == b.value);
  }
}

TEST_CASE("two_torsion") {
  const FieldDesc& gauss = make_field(-1);
  auto t1 = two_torsion(curve_zz(gauss, -1, 0));
  REQUIRE(t1.size() == 3);
  CHECK(t1[0] == pt(gauss, -1, 0));
  CHECK(t1[1] == pt(gauss, 0, 0));
  CHECK(t1[2] == pt(gauss, 1, 0));

  auto t2 = two_torsion(curve_zz(gauss, 4, 0));
  REQUIRE(t2.size() == 3);
  CHECK(std::count_if(t2.begin(), t2.end(), [&](const Point& p) {
          return p == Point::affine(qr(gauss, 0, 2), qr(gauss, 0, 0));
        }) == 1);
  CHECK(std::count_if(t2.begin(), t2.end(), [&](const Point& p) {
          return p == Point::affine(qr(gauss, 0, -2), qr(gauss, 0, 0));
        }) == 1);

  const FieldDesc& eis = make_field(-3);
  auto t3 = two_torsion(curve_zz(eis, 0, 1));
  REQUIRE(t3.size() == 3);
  bool has_omega = std::any_of(t3.begin(), t3.end(), [&](const Point& p) {
    return p == Point::affine(qr(eis, 0, 1), qr(eis, 0, 0));
  });
  bool has_conj = std::any_of(t3.begin(), t3.end(), [&](const Point& p) {
    return p == Point::affine(qr(eis, 1, -1), qr(eis, 0, 0));
  });
  CHECK(has_omega);
  CHECK(has_conj);

  // over the other fields x^3 + 1 only has the rational root -1
  for (int D : {-1, -2, -7, -11, -19, -43, -67, -163}) {
    const FieldDesc& f = make_field(D);
    auto t = two_torsion(curve_zz(f, 0, 1));
    REQUIRE(t.size() == 1);
    CHECK(t[0] == pt(f, -1, 0));
  }
}

TEST_CASE("two_torsion points have order two and counts stay in {0, 1, 3}") {
  std::mt19937_64 rng(5551212);
  for (int D : heegner_numbers()) {
    const FieldDesc& f = make_field(D);
    int done = 0;
    while (done < 25) {
      QuadInt A = test::random_qi(f, rng, 6);
      QuadInt B = test::random_qi(f, rng, 6);
      if (!is_nonsingular(to_rat(A), to_rat(B))) continue;
      ++done;
      Curve c(f, to_rat(A), to_rat(B));
      auto roots = two_torsion(c);
      CHECK((roots.size() == 0 || roots.size() == 1 || roots.size() == 3));
      for (const Point& p : roots) {
        CHECK(is_zero(p.y()));
        CHECK(on_curve(p, c));
        OrderResult r = order_of(p, c);
        CHECK(r.finite());
        CHECK(r.value == 2);
      }
    }
  }
}

TEST_CASE("reduction certificates") {
  const FieldDesc& gauss = make_field(-1);
  Curve c4x = curve_zz(gauss, 4, 0);
  ReductionCertificate cert = reduction_certificate(c4x);
  REQUIRE(cert.counts.size() == 5);
  // the first good primes sit above 5 (split), 7 and 11 (inert), 13 (split)
  CHECK(cert.counts[0].first.residue_char == 5);
  CHECK(cert.counts[0].second == 8);
  CHECK(cert.counts[1].first.residue_char == 5);
  CHECK(cert.bound == 8);
  for (const auto& [pe, count] : cert.counts) {
    CHECK(count % cert.bound == 0);
    CHECK(count == oracle::bf_point_count(c4x, pe));
  }

  const FieldDesc& eis = make_field(-3);
  ReductionCertificate ce = reduction_certificate(curve_zz(eis, 0, 1));
  CHECK(ce.bound % 6 == 0);

  CHECK_THROWS_WITH_AS(reduction_certificate(c4x, 100000),
                       doctest::Contains("NotEnoughGoodPrimes"), Error);
}

TEST_CASE("reduction counts match the brute-force plane scan on random curves") {
  for (int D : {-1, -7, -43}) {
    int done = 0;
    for (const Curve& c : corpus_curves({D, 8, 40, 271828})) {
      ReductionCertificate cert = reduction_certificate(c, 2);
      for (const auto& [pi, count] : cert.counts)
        CHECK(count == oracle::bf_point_count(c, pi));
      if (++done == 6) break;
    }
  }
}

TEST_CASE("torsion subgroup: reference curves") {
  const FieldDesc& gauss = make_field(-1);
  TorsionReport r = torsion_subgroup(curve_zz(gauss, 4, 0));
  CHECK(r.points.size() == 8);
  CHECK(r.certified_complete);
  CHECK(r.reduction_bound == 8);
  CHECK(structure_text(r) == "Z/2xZ/4");
  CHECK(std::count_if(r.verdicts.begin(), r.verdicts.end(),
                      [](const PointVerdict& v) { return v.order == 2; }) == 3);
  CHECK(std::count_if(r.verdicts.begin(), r.verdicts.end(),
                      [](const PointVerdict& v) { return v.order == 4; }) == 4);
  for (const PointVerdict& v : r.verdicts) CHECK(v.in_ok);

  // subgroup closure
  for (const Point& p : r.points)
    for (const Point& q : r.points) {
      Point s = add(p, q, curve_zz(gauss, 4, 0));
      CHECK(std::count(r.points.begin(), r.points.end(), s) == 1);
    }

  // y^2 = x^3 + 1 carries a point of order 6 over every field
  for (int D : heegner_numbers()) {
    const FieldDesc& f = make_field(D);
    TorsionReport r1 = torsion_subgroup(curve_zz(f, 0, 1));
    CHECK(std::any_of(r1.verdicts.begin(), r1.verdicts.end(),
                      [](const PointVerdict& v) { return v.order == 6; }));
    if (D == -3) {
      CHECK(r1.points.size() == 12);
      CHECK(structure_text(r1) == "Z/2xZ/6");
      CHECK(r1.certified_complete);
    } else {
      CHECK(r1.points.size() == 6);
      CHECK(structure_text(r1) == "Z/6");
    }
  }

  // trivial torsion
  TorsionReport rt = torsion_subgroup(curve_zz(gauss, 0, 3));
  CHECK(rt.points.size() == 1);
  CHECK(structure_text(rt) == "1");
  CHECK(rt.verdicts.empty());
  CHECK(rt.certified_complete == (rt.reduction_bound == 1));
}

TEST_CASE("two_torsion search is independent of the height box") {
  // roots 100, -60, -40 sit far outside a height-10 scan; the divisor
  // search still finds them
  const FieldDesc& gauss = make_field(-1);
  Curve c = curve_zz(gauss, -7600, -240000);
  TorsionReport r = torsion_subgroup(c, 10);
  CHECK(std::count_if(r.verdicts.begin(), r.verdicts.end(),
                      [](const PointVerdict& v) { return v.order == 2; }) == 3);
  bool found = false;
  for (const PointVerdict& v : r.verdicts)
    if (v.point == pt(gauss, 100, 0)) found = true;
  CHECK(found);
}

TEST_CASE("the reduction bound is an upper bound, not the exact order") {
  // y^2 = x^3 + 1 over D = -7: the first five good-prime counts share a
  // factor 12, but the torsion subgroup has only 6 points. More primes
  // separate them and upgrade the run to certified.
  const FieldDesc& f7 = make_field(-7);
  Curve c = curve_zz(f7, 0, 1);
  TorsionReport loose = torsion_subgroup(c);
  CHECK(loose.points.size() == 6);
  CHECK(loose.reduction_bound == 12);
  CHECK_FALSE(loose.certified_complete);
  TorsionReport tight = torsion_subgroup(c, 50, 18, 12);
  CHECK(tight.points.size() == 6);
  CHECK(tight.reduction_bound == 6);
  CHECK(tight.certified_complete);
}

TEST_CASE("torsion points are reported in canonical order") {
  const FieldDesc& gauss = make_field(-1);
  TorsionReport r = torsion_subgroup(curve_zz(gauss, 4, 0));
  REQUIRE(!r.points.empty());
  CHECK(r.points[0].is_infinity());
  CHECK(std::is_sorted(r.points.begin(), r.points.end(), point_less));
}

TEST_CASE("corpus generation is deterministic and nonsingular") {
  CorpusSpec spec{-7, 10, 25, 42};
  auto a = corpus_curves(spec);
  auto b = corpus_curves(spec);
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].A() == b[i].A());
    CHECK(a[i].B() == b[i].B());
    CHECK(a[i].integral());
  }
  CorpusSpec other{-7, 10, 25, 43};
  auto c = corpus_curves(other);
  bool all_same = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].A() == c[i].A()) || !(a[i].B() == c[i].B())) all_same = false;
  CHECK_FALSE(all_same);
}

TEST_CASE("verify_paper surfaces the separating verdicts") {
  const FieldDesc& eis = make_field(-3);
  HypothesisReport h = verify_paper({curve_zz(eis, 0, 1)});
  CHECK(h.in_ok_violations == 0);
  CHECK(h.points_checked == 11);
  CHECK(h.in_zsqrtd_failures == 2);  // (w, 0) and (1-w, 0)
  const TorsionReport& r = h.entries[0].report;
  int flagged = 0;
  for (const PointVerdict& v : r.verdicts)
    if (!v.in_zsqrtd) {
      ++flagged;
      CHECK(v.order == 2);
      CHECK(v.parity_x == 1);
      CHECK(v.parity_y == 0);
      CHECK(is_zero(v.point.y()));
    }
  CHECK(flagged == 2);

  // SqrtD fields make the stronger claim vacuous
  const FieldDesc& d2 = make_field(-2);
  HypothesisReport h2 = verify_paper({curve_zz(d2, 4, 0)});
  CHECK(h2.in_zsqrtd_failures == 0);
  for (const PointVerdict& v : h2.entries[0].report.verdicts)
    CHECK(v.in_zsqrtd);

  // a small random corpus runs clean on the O_K side
  HypothesisReport hc = verify_paper(corpus_curves({-1, 5, 10, 42}), 25);
  CHECK(hc.in_ok_violations == 0);
}
