#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iq/errors.hpp"

namespace iq {

// The nine imaginary quadratic fields K = Q(sqrt(D)) with class number one.
// O_K = Z[omega] with omega = sqrt(D) for D = -1, -2 and omega = (1+sqrt(D))/2
// for the other seven, so omega satisfies omega^2 = t*omega - n with
// t = trace(omega) and n = norm(omega).

enum class OmegaKind { SqrtD, HalfD };

struct QuadInt;
class FieldDesc;

const FieldDesc& make_field(int D);  // throws NotHeegner
const std::vector<int>& heegner_numbers();

class FieldDesc {
public:
  int D() const { return d_; }
  OmegaKind omega_kind() const { return kind_; }
  int trace_omega() const { return trace_; }
  long norm_omega() const { return norm_; }
  long discriminant() const { return disc_; }  // D, or 4D for D = -1, -2
  bool euclidean() const { return euclidean_; }
  const std::vector<QuadInt>& units() const { return units_; }
  std::string omega_text() const;  // e.g. "sqrt(-2)" or "(1+sqrt(-7))/2"

  FieldDesc(const FieldDesc&) = delete;
  FieldDesc& operator=(const FieldDesc&) = delete;

private:
  explicit FieldDesc(int D);
  friend const FieldDesc& make_field(int);

  int d_;
  OmegaKind kind_;
  int trace_;
  long norm_;
  long disc_;
  bool euclidean_;
  std::vector<QuadInt> units_;
};

// Element a + b*omega of O_K.
struct QuadInt {
  const FieldDesc* field;
  mpz_class a, b;

  QuadInt(const FieldDesc& f, mpz_class a0 = 0, mpz_class b0 = 0)
      : field(&f), a(std::move(a0)), b(std::move(b0)) {}
};

inline void require_same_field(const QuadInt& x, const QuadInt& y) {
  if (x.field != y.field)
    fail(errc::field_mismatch, "operands belong to different fields");
}

inline bool operator==(const QuadInt& x, const QuadInt& y) {
  require_same_field(x, y);
  return x.a == y.a && x.b == y.b;
}
inline bool operator!=(const QuadInt& x, const QuadInt& y) { return !(x == y); }

inline QuadInt operator+(const QuadInt& x, const QuadInt& y) {
  require_same_field(x, y);
  return QuadInt(*x.field, x.a + y.a, x.b + y.b);
}
inline QuadInt operator-(const QuadInt& x, const QuadInt& y) {
  require_same_field(x, y);
  return QuadInt(*x.field, x.a - y.a, x.b - y.b);
}
inline QuadInt operator-(const QuadInt& x) {
  return QuadInt(*x.field, -x.a, -x.b);
}
inline QuadInt operator*(const QuadInt& x, const QuadInt& y) {
  require_same_field(x, y);
  const FieldDesc& f = *x.field;
  mpz_class cross = x.b * y.b;
  mpz_class a = x.a * y.a - f.norm_omega() * cross;
  mpz_class b = x.a * y.b + x.b * y.a + f.trace_omega() * cross;
  return QuadInt(f, std::move(a), std::move(b));
}
inline QuadInt operator*(const QuadInt& x, const mpz_class& k) {
  return QuadInt(*x.field, x.a * k, x.b * k);
}
inline QuadInt operator*(const mpz_class& k, const QuadInt& x) { return x * k; }

inline QuadInt conj(const QuadInt& x) {
  return QuadInt(*x.field, x.a + x.field->trace_omega() * x.b, -x.b);
}
inline mpz_class norm(const QuadInt& x) {
  return x.a * x.a + x.field->trace_omega() * x.a * x.b +
         x.field->norm_omega() * x.b * x.b;
}
inline mpz_class trace(const QuadInt& x) {
  return 2 * x.a + x.field->trace_omega() * x.b;
}
inline bool is_zero(const QuadInt& x) { return x.a == 0 && x.b == 0; }
inline bool is_unit(const QuadInt& x) { return norm(x) == 1; }

std::ostream& operator<<(std::ostream& os, const QuadInt& x);

// Element of K as a reduced fraction num/den with a rational integer
// denominator: den > 0 and no rational prime divides num.a, num.b and den.
struct QuadRat {
  QuadInt num;
  mpz_class den;
};

QuadRat qr_reduce(QuadInt num, mpz_class den);  // throws ZeroDenominator
inline QuadRat to_rat(QuadInt x) { return QuadRat{std::move(x), 1}; }

inline bool is_zero(const QuadRat& x) { return is_zero(x.num); }
inline bool is_integral(const QuadRat& x) { return x.den == 1; }

inline bool operator==(const QuadRat& x, const QuadRat& y) {
  return x.den == y.den && x.num == y.num;  // both reduced
}
inline bool operator!=(const QuadRat& x, const QuadRat& y) { return !(x == y); }

inline QuadRat operator+(const QuadRat& x, const QuadRat& y) {
  return qr_reduce(x.num * y.den + y.num * x.den, x.den * y.den);
}
inline QuadRat operator-(const QuadRat& x, const QuadRat& y) {
  return qr_reduce(x.num * y.den - y.num * x.den, x.den * y.den);
}
inline QuadRat operator-(const QuadRat& x) { return QuadRat{-x.num, x.den}; }
inline QuadRat operator*(const QuadRat& x, const QuadRat& y) {
  return qr_reduce(x.num * y.num, x.den * y.den);
}

QuadRat inverse(const QuadRat& x);  // throws ZeroElement
inline QuadRat operator/(const QuadRat& x, const QuadRat& y) {
  return x * inverse(y);
}

// x in Z[sqrt(D)]: integral, and for the HalfD fields the omega coordinate
// must be even (a + b*omega = (a + b/2) + (b/2)*sqrt(D)).
bool in_z_sqrtd(const QuadRat& x);

// Text form "(a+b*w)/q"; parse accepts exactly that grammar.
std::string format_elem(const QuadRat& x);
QuadRat parse_elem(std::string_view text, const FieldDesc& f);  // ParseError

std::ostream& operator<<(std::ostream& os, const QuadRat& x);

}  // namespace iq
