#include "iq/errors.hpp"

namespace iq {

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_heegner: return "NotHeegner";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::parse_error: return "ParseError";
    case errc::not_prime: return "NotPrime";
    case errc::no_solution: return "NoSolution";
    case errc::zero_element: return "ZeroElement";
    case errc::both_zero: return "BothZero";
    case errc::zero_divisor: return "ZeroDivisor";
    case errc::not_divisible: return "NotDivisible";
    case errc::factor_budget_exceeded: return "FactorBudgetExceeded";
    case errc::singular_curve: return "SingularCurve";
    case errc::point_not_on_curve: return "PointNotOnCurve";
    case errc::y_is_zero: return "YIsZero";
    case errc::s_is_zero: return "SIsZero";
    case errc::denominator_zero: return "DenominatorZero";
    case errc::pattern_violation: return "PatternViolation";
    case errc::chart_undefined: return "ChartUndefined";
    case errc::non_integral_curve: return "NonIntegralCurve";
    case errc::not_enough_good_primes: return "NotEnoughGoodPrimes";
    case errc::bad_reduction: return "BadReduction";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& what, std::size_t pos)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code),
      pos_(pos) {}

void fail(errc code, const std::string& what, std::size_t pos) {
  throw Error(code, what, pos);
}

}  // namespace iq
