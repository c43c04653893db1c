#include "iq/field.hpp"

#include <array>
#include <memory>
#include <ostream>
#include <sstream>

namespace iq {

namespace {

constexpr std::array<int, 9> kHeegner = {-1, -2, -3, -7, -11, -19, -43, -67, -163};

bool half_d(int D) {
  // D mod 4 == 1 for negative D: all but -1 and -2.
  return D != -1 && D != -2;
}

}  // namespace

const std::vector<int>& heegner_numbers() {
  static const std::vector<int> v(kHeegner.begin(), kHeegner.end());
  return v;
}

FieldDesc::FieldDesc(int D) : d_(D) {
  kind_ = half_d(D) ? OmegaKind::HalfD : OmegaKind::SqrtD;
  trace_ = kind_ == OmegaKind::HalfD ? 1 : 0;
  norm_ = kind_ == OmegaKind::HalfD ? (1 - long(D)) / 4 : -long(D);
  disc_ = kind_ == OmegaKind::HalfD ? long(D) : 4 * long(D);
  euclidean_ = D >= -11;
  units_.emplace_back(*this, 1, 0);
  units_.emplace_back(*this, -1, 0);
  if (D == -1) {
    units_.emplace_back(*this, 0, 1);
    units_.emplace_back(*this, 0, -1);
  } else if (D == -3) {
    units_.emplace_back(*this, 0, 1);
    units_.emplace_back(*this, 0, -1);
    units_.emplace_back(*this, -1, 1);
    units_.emplace_back(*this, 1, -1);
  }
}

std::string FieldDesc::omega_text() const {
  std::ostringstream os;
  if (kind_ == OmegaKind::SqrtD)
    os << "sqrt(" << d_ << ")";
  else
    os << "(1+sqrt(" << d_ << "))/2";
  return os.str();
}

const FieldDesc& make_field(int D) {
  static const std::array<std::unique_ptr<FieldDesc>, 9> registry = [] {
    std::array<std::unique_ptr<FieldDesc>, 9> r;
    for (std::size_t i = 0; i < kHeegner.size(); ++i)
      r[i].reset(new FieldDesc(kHeegner[i]));
    return r;
  }();
  for (const auto& f : registry)
    if (f->D() == D) return *f;
  fail(errc::not_heegner,
       "D must be one of -1, -2, -3, -7, -11, -19, -43, -67, -163; got " +
           std::to_string(D));
}

std::ostream& operator<<(std::ostream& os, const QuadInt& x) {
  return os << format_elem(to_rat(x));
}

QuadRat qr_reduce(QuadInt num, mpz_class den) {
  if (den == 0) fail(errc::zero_denominator, "denominator is zero");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.a.get_mpz_t(), num.b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
  if (g > 1) {
    mpz_divexact(num.a.get_mpz_t(), num.a.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(num.b.get_mpz_t(), num.b.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
  return QuadRat{std::move(num), std::move(den)};
}

QuadRat inverse(const QuadRat& x) {
  if (is_zero(x)) fail(errc::zero_element, "inverse of zero");
  // 1/(n/d) = d*conj(n)/Norm(n), and Norm(n) > 0.
  return qr_reduce(conj(x.num) * x.den, norm(x.num));
}

bool in_z_sqrtd(const QuadRat& x) {
  if (x.den != 1) return false;
  if (x.num.field->omega_kind() == OmegaKind::SqrtD) return true;
  return mpz_even_p(x.num.b.get_mpz_t());
}

std::string format_elem(const QuadRat& x) {
  std::ostringstream os;
  os << '(' << x.num.a << (x.num.b < 0 ? '-' : '+') << abs(x.num.b) << "*w)/"
     << x.den;
  return os.str();
}

namespace {

struct Scanner {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void err(const std::string& msg) const {
    fail(errc::parse_error, msg + " at position " + std::to_string(pos), pos);
  }
  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  void expect(char c) {
    if (peek() != c) err(std::string("expected '") + c + "'");
    ++pos;
  }
  mpz_class integer(bool allow_sign) {
    bool negative = false;
    if (allow_sign && (peek() == '+' || peek() == '-')) {
      negative = peek() == '-';
      ++pos;
    }
    std::size_t digits = pos;
    while (!done() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == digits) err("expected integer");
    mpz_class v(std::string(s.substr(digits, pos - digits)), 10);
    return negative ? mpz_class(-v) : v;
  }
};

}  // namespace

QuadRat parse_elem(std::string_view text, const FieldDesc& f) {
  Scanner sc{text};
  sc.expect('(');
  mpz_class a = sc.integer(true);
  char sep = sc.peek();
  if (sep != '+' && sep != '-') sc.err("expected '+' or '-'");
  ++sc.pos;
  mpz_class b = sc.integer(false);
  if (sep == '-') b = -b;
  sc.expect('*');
  sc.expect('w');
  sc.expect(')');
  sc.expect('/');
  mpz_class q = sc.integer(false);
  if (!sc.done()) sc.err("trailing input");
  if (q == 0) fail(errc::zero_denominator, "denominator is zero");
  return qr_reduce(QuadInt(f, std::move(a), std::move(b)), std::move(q));
}

std::ostream& operator<<(std::ostream& os, const QuadRat& x) {
  return os << format_elem(x);
}

}  // namespace iq
