#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iq {

enum class errc {
  not_heegner,
  field_mismatch,
  zero_denominator,
  parse_error,
  not_prime,
  no_solution,
  zero_element,
  both_zero,
  zero_divisor,
  not_divisible,
  factor_budget_exceeded,
  singular_curve,
  point_not_on_curve,
  y_is_zero,
  s_is_zero,
  denominator_zero,
  pattern_violation,
  chart_undefined,
  non_integral_curve,
  not_enough_good_primes,
  bad_reduction,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
  static constexpr std::size_t no_pos = static_cast<std::size_t>(-1);

  Error(errc code, const std::string& what, std::size_t pos = no_pos);

  errc code() const { return code_; }
  // Byte offset into the input for parse errors, no_pos otherwise.
  std::size_t position() const { return pos_; }

private:
  errc code_;
  std::size_t pos_;
};

[[noreturn]] void fail(errc code, const std::string& what,
                       std::size_t pos = Error::no_pos);

}  // namespace iq
