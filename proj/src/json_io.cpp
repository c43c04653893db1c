#include "iq/json_io.hpp"

namespace iq {

json mpz_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

mpz_class mpz_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), j.get<std::string>().c_str(), 10) != 0)
      fail(errc::parse_error, "'" + j.get<std::string>() + "' is not an integer");
    return v;
  }
  fail(errc::parse_error, "expected an integer or a decimal string, got " +
                              j.dump());
}

json elem_to_json(const QuadRat& x) {
  return json::array(
      {mpz_to_json(x.num.a), mpz_to_json(x.num.b), mpz_to_json(x.den)});
}

QuadRat elem_from_json(const json& j, const FieldDesc& f) {
  if (!j.is_array() || j.size() != 3)
    fail(errc::parse_error, "element must be a triple [a, b, q]: " + j.dump());
  mpz_class a = mpz_from_json(j[0]);
  mpz_class b = mpz_from_json(j[1]);
  mpz_class q = mpz_from_json(j[2]);
  if (q == 0) fail(errc::zero_denominator, "element denominator is zero");
  return qr_reduce(QuadInt(f, std::move(a), std::move(b)), std::move(q));
}

json curve_to_json(const Curve& c) {
  return json{{"D", c.field().D()},
              {"A", elem_to_json(c.A())},
              {"B", elem_to_json(c.B())}};
}

Curve curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("D") || !j.contains("A") || !j.contains("B"))
    fail(errc::parse_error, "curve must be {\"D\":..,\"A\":..,\"B\":..}");
  if (!j["D"].is_number_integer())
    fail(errc::parse_error, "curve \"D\" must be an integer");
  const FieldDesc& f = make_field(j["D"].get<int>());
  return Curve(f, elem_from_json(j["A"], f), elem_from_json(j["B"], f));
}

json point_to_json(const Point& p) {
  if (p.is_infinity()) return json("inf");
  return json{{"x", elem_to_json(p.x())}, {"y", elem_to_json(p.y())}};
}

Point point_from_json(const json& j, const FieldDesc& f) {
  if (j.is_string() && j.get<std::string>() == "inf") return Point::infinity();
  if (!j.is_object() || !j.contains("x") || !j.contains("y"))
    fail(errc::parse_error, "point must be \"inf\" or {\"x\":..,\"y\":..}");
  return Point::affine(elem_from_json(j["x"], f), elem_from_json(j["y"], f));
}

json factorization_to_json(const Factorization& fz) {
  json factors = json::array();
  for (const auto& [pe, e] : fz.factors)
    factors.push_back(json{{"pi", elem_to_json(to_rat(pe.pi))},
                           {"p", mpz_to_json(pe.residue_char)},
                           {"type", split_type_name(pe.split_type)},
                           {"e", e}});
  return json{{"unit", elem_to_json(to_rat(fz.unit))}, {"factors", factors}};
}

json normalization_to_json(const NormalizationData& nd) {
  return json{{"A1", elem_to_json(to_rat(nd.a_num))},
              {"A2", mpz_to_json(nd.a_den)},
              {"B1", elem_to_json(to_rat(nd.b_num))},
              {"B2", mpz_to_json(nd.b_den)},
              {"c", mpz_to_json(nd.c)}};
}

json order_to_json(const OrderResult& r) {
  switch (r.kind) {
    case OrderResult::Kind::Finite:
      return json{{"status", "finite"}, {"order", r.value}};
    case OrderResult::Kind::NotTorsionWithinBound:
      return json{{"status", "not_torsion_within_bound"}, {"bound", r.value}};
    case OrderResult::Kind::ProvedInfinite:
      return json{{"status", "proved_infinite"}, {"witness_multiple", r.value}};
  }
  return json();
}

json filtration_to_json(const FiltrationLevel& l) {
  return json{{"pi", elem_to_json(to_rat(l.pi.pi))},
              {"p", mpz_to_json(l.pi.residue_char)},
              {"type", split_type_name(l.pi.split_type)},
              {"r", l.r},
              {"q", l.q}};
}

json report_to_json(const TorsionReport& r) {
  json points = json::array();
  for (const Point& p : r.points) points.push_back(point_to_json(p));
  json verdicts = json::array();
  for (const PointVerdict& v : r.verdicts)
    verdicts.push_back(json{{"point", point_to_json(v.point)},
                            {"order", v.order},
                            {"in_OK", v.in_ok},
                            {"in_ZsqrtD", v.in_zsqrtd},
                            {"parity", json::array({v.parity_x, v.parity_y})}});
  return json{{"points", points},
              {"structure", structure_text(r)},
              {"certified", r.certified_complete},
              {"bound", r.reduction_bound},
              {"verdicts", verdicts}};
}

json corpus_to_json(const CorpusSpec& spec) {
  return json{{"D", spec.D},
              {"coeff_bound", spec.coeff_bound},
              {"count", spec.count},
              {"seed", spec.seed}};
}

CorpusSpec corpus_from_json(const json& j) {
  if (!j.is_object() || !j.contains("D") || !j.contains("coeff_bound") ||
      !j.contains("count") || !j.contains("seed"))
    fail(errc::parse_error,
         "corpus spec must be {\"D\",\"coeff_bound\",\"count\",\"seed\"}");
  CorpusSpec spec{};
  spec.D = j["D"].get<int>();
  spec.coeff_bound = j["coeff_bound"].get<long>();
  spec.count = j["count"].get<long>();
  spec.seed = j["seed"].get<unsigned long long>();
  if (spec.coeff_bound < 1 || spec.count < 1)
    fail(errc::parse_error, "corpus bound and count must be >= 1");
  return spec;
}

json hypothesis_to_json(const HypothesisReport& h) {
  json entries = json::array();
  for (const HypothesisEntry& e : h.entries)
    entries.push_back(json{{"curve", curve_to_json(e.curve)},
                           {"torsion", report_to_json(e.report)}});
  json failures = json::array();
  for (const HypothesisEntry& e : h.entries)
    for (const PointVerdict& v : e.report.verdicts)
      if (!v.in_zsqrtd)
        failures.push_back(json{{"curve", curve_to_json(e.curve)},
                                {"point", point_to_json(v.point)},
                                {"parity", json::array({v.parity_x, v.parity_y})}});
  return json{{"curves", h.entries.size()},
              {"points_checked", h.points_checked},
              {"in_OK_violations", h.in_ok_violations},
              {"in_ZsqrtD_failures", h.in_zsqrtd_failures},
              {"failures", failures},
              {"reports", entries}};
}

}  // namespace iq
