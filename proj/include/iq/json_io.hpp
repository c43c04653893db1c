#pragma once

#include <json.hpp>

#include "iq/curve.hpp"
#include "iq/factor.hpp"
#include "iq/torsion.hpp"

namespace iq {

using json = nlohmann::json;

// Wire formats. Elements are [a, b, q] triples (integers, or decimal strings
// beyond 64 bits); curves are {"D": int, "A": triple, "B": triple}; points
// are "inf" or {"x": triple, "y": triple}. The field always travels
// out-of-band (the "D" key or a CLI flag), never inside an element.

json mpz_to_json(const mpz_class& v);
mpz_class mpz_from_json(const json& j);  // ParseError

json elem_to_json(const QuadRat& x);
QuadRat elem_from_json(const json& j, const FieldDesc& f);

json curve_to_json(const Curve& c);
Curve curve_from_json(const json& j);

json point_to_json(const Point& p);
Point point_from_json(const json& j, const FieldDesc& f);

json factorization_to_json(const Factorization& fz);
json normalization_to_json(const NormalizationData& nd);
json order_to_json(const OrderResult& r);
json filtration_to_json(const FiltrationLevel& l);
json report_to_json(const TorsionReport& r);

json corpus_to_json(const CorpusSpec& spec);
CorpusSpec corpus_from_json(const json& j);
json hypothesis_to_json(const HypothesisReport& h);

}  // namespace iq
