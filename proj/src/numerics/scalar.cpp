#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>

#include <gmp.h>

#include "matchstick/numerics.hpp"

namespace matchstick::numerics {

Scalar::Scalar(Bits bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Scalar::Scalar(long value, Bits bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Scalar::Scalar(const Scalar& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Scalar::Scalar(Scalar&& other) noexcept {
  value_[0] = other.value_[0];
  other.value_->_mpfr_d = nullptr;
}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this == &other) {
    return *this;
  }
  if (value_->_mpfr_d == nullptr) {
    mpfr_init2(value_, other.bits());
  } else if (bits() != other.bits()) {
    mpfr_set_prec(value_, other.bits());
  }
  mpfr_set(value_, other.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator=(Scalar&& other) noexcept {
  if (this != &other) {
    std::swap(value_[0], other.value_[0]);
  }
  return *this;
}

Scalar::~Scalar() {
  if (value_->_mpfr_d != nullptr) {
    mpfr_clear(value_);
  }
}

namespace {

// Guard bits for decimal conversion; the scaled intermediate is rounded once
// more into the target precision.
constexpr Bits kGuard = 64;

// 10^k rounded to `bits`, memoized per thread.
mpfr_srcptr power_of_ten(long k, Bits bits) {
  struct Entry {
    mpfr_t value;
    Entry(long k, Bits bits) {
      mpfr_init2(value, bits);
      mpfr_ui_pow_ui(value, 10, static_cast<unsigned long>(k), MPFR_RNDN);
    }
    ~Entry() { mpfr_clear(value); }
    Entry(const Entry&) = delete;
    Entry& operator=(const Entry&) = delete;
  };
  thread_local std::map<std::pair<long, Bits>, Entry> cache;
  auto it = cache.find({k, bits});
  if (it == cache.end()) {
    it = cache.try_emplace({k, bits}, k, bits).first;
  }
  return it->second.value;
}

// x * 10^k for integer k, at the precision of `out`.
void scale_by_ten(mpfr_ptr out, mpfr_srcptr x, long k) {
  const Bits bits = mpfr_get_prec(out);
  if (k >= 0) {
    mpfr_mul(out, x, power_of_ten(k, bits), MPFR_RNDN);
  } else {
    mpfr_div(out, x, power_of_ten(-k, bits), MPFR_RNDN);
  }
}

// Plain decimals ([-+]digits[.digits][e[-+]digits]) without the general
// string conversion; anything else returns false.
bool parse_plain_decimal(std::string_view text, mpfr_ptr out) {
  std::string digits;
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  long frac = 0;
  bool dot = false;
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      any_digit = true;
      if (!digits.empty() || ch != '0') {
        digits += ch;
      }
      frac += dot ? 1 : 0;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg_exp = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      neg_exp = text[i] == '-';
      ++i;
    }
    if (i == text.size()) {
      return false;
    }
    for (; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9' || exponent > 100000) {
        return false;
      }
      exponent = exponent * 10 + (text[i] - '0');
    }
    exponent = neg_exp ? -exponent : exponent;
  }
  if (i != text.size() || !any_digit || digits.size() > 200) {
    return false;
  }
  if (digits.empty()) {
    mpfr_set_zero(out, negative ? -1 : 1);
    return true;
  }
  mpz_t integer;
  mpz_init_set_str(integer, digits.c_str(), 10);
  mpfr_t wide;
  mpfr_init2(wide, mpfr_get_prec(out) + kGuard + static_cast<Bits>(digits.size() * 4));
  mpfr_set_z(wide, integer, MPFR_RNDN);
  mpz_clear(integer);
  scale_by_ten(wide, wide, exponent - frac);
  if (negative) {
    mpfr_neg(wide, wide, MPFR_RNDN);
  }
  mpfr_set(out, wide, MPFR_RNDN);
  mpfr_clear(wide);
  return true;
}

}  // namespace

Scalar Scalar::from_decimal(std::string_view text, Bits bits) {
  Scalar out(bits);
  if (parse_plain_decimal(text, out.value_)) {
    return out;
  }
  std::string owned(text);
  if (owned.empty() || mpfr_set_str(out.value_, owned.c_str(), 10, MPFR_RNDN) != 0 ||
      !mpfr_number_p(out.value_)) {
    throw Error(ErrorCode::ParseError, "not a decimal number: '" + owned + "'");
  }
  return out;
}

Scalar Scalar::from_ratio(long num, long den, Bits bits) {
  if (den == 0) {
    throw Error(ErrorCode::ParseError, "zero denominator");
  }
  Scalar out(bits);
  mpfr_set_si(out.value_, num, MPFR_RNDN);
  mpfr_div_si(out.value_, out.value_, den, MPFR_RNDN);
  return out;
}

Scalar Scalar::from_double(double value, Bits bits) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "non-finite value");
  }
  Scalar out(bits);
  mpfr_set_d(out.value_, value, MPFR_RNDN);
  return out;
}

Scalar Scalar::pow2(long exponent, Bits bits) {
  Scalar out(bits);
  mpfr_set_ui_2exp(out.value_, 1, exponent, MPFR_RNDN);
  return out;
}

Scalar Scalar::pi(Bits bits) {
  Scalar out(bits);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

Scalar Scalar::with_bits(Bits b) const {
  Scalar out(b);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string Scalar::to_decimal(int digits) const {
  if (mpfr_zero_p(value_)) {
    return "0";
  }
  if (!mpfr_number_p(value_)) {
    return mpfr_nan_p(value_) ? "nan" : (mpfr_sgn(value_) < 0 ? "-inf" : "inf");
  }
  // digits significant figures: round |x| * 10^(digits - exp10) to an integer,
  // where 10^(exp10 - 1) <= |x| < 10^exp10
  mpfr_exp_t exp10 = static_cast<mpfr_exp_t>(std::floor(static_cast<double>(mpfr_get_exp(value_) - 1) * 0.30102999566398120)) + 1;
  std::string mantissa;
  mpfr_t scaled;
  mpfr_init2(scaled, bits() + kGuard + static_cast<Bits>(digits) * 4);
  mpz_t integer;
  mpz_init(integer);
  const auto want = static_cast<std::size_t>(digits);
  for (int attempt = 0; attempt < 4; ++attempt) {
    scale_by_ten(scaled, value_, digits - exp10);
    mpfr_abs(scaled, scaled, MPFR_RNDN);
    mpfr_get_z(integer, scaled, MPFR_RNDN);
    mantissa.assign(mpz_sizeinbase(integer, 10) + 2, '\0');
    mpz_get_str(mantissa.data(), 10, integer);
    mantissa.resize(std::char_traits<char>::length(mantissa.c_str()));
    if (mantissa.size() == want) {
      break;
    }
    if (mantissa.size() == want + 1 && mantissa.find_first_not_of('0', 1) == std::string::npos) {
      mantissa.pop_back();  // rounding carried into a new leading digit
      ++exp10;
      break;
    }
    exp10 += mantissa.size() > want ? 1 : -1;
  }
  mpz_clear(integer);
  mpfr_clear(scaled);
  const std::string sign = mpfr_sgn(value_) < 0 ? "-" : "";
  // value = 0.mantissa * 10^exp10
  std::string out = sign;
  if (exp10 > 0 && exp10 <= digits) {
    out += mantissa.substr(0, static_cast<size_t>(exp10));
    if (static_cast<size_t>(exp10) < mantissa.size()) {
      out += '.';
      out += mantissa.substr(static_cast<size_t>(exp10));
    }
  } else if (exp10 <= 0 && exp10 > -6) {
    out += "0.";
    out.append(static_cast<size_t>(-exp10), '0');
    out += mantissa;
  } else {
    out += mantissa.substr(0, 1);
    if (mantissa.size() > 1) {
      out += '.';
      out += mantissa.substr(1);
    }
    out += 'e';
    out += std::to_string(static_cast<long>(exp10) - 1);
  }
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out(bits());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (rhs.bits() > bits()) {
    mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  }
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (rhs.bits() > bits()) {
    mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  }
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (rhs.bits() > bits()) {
    mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  }
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.bits() > bits()) {
    mpfr_prec_round(value_, rhs.bits(), MPFR_RNDN);
  }
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar out(std::max(a.bits(), b.bits()));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar out(std::max(a.bits(), b.bits()));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out(std::max(a.bits(), b.bits()));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  Scalar out(std::max(a.bits(), b.bits()));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Scalar operator+(const Scalar& a, long b) {
  Scalar out(a.bits());
  mpfr_add_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

Scalar operator-(const Scalar& a, long b) {
  Scalar out(a.bits());
  mpfr_sub_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

Scalar operator*(const Scalar& a, long b) {
  Scalar out(a.bits());
  mpfr_mul_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

Scalar operator/(const Scalar& a, long b) {
  Scalar out(a.bits());
  mpfr_div_si(out.value_, a.value_, b, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Scalar& a, long b) {
  if (mpfr_nan_p(a.value_)) {
    return std::partial_ordering::unordered;
  }
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Scalar sqrt(const Scalar& x) {
  Scalar out(x.bits());
  if (x.sign() <= 0) {
    return out;  // clamps rounding noise below zero
  }
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Scalar abs(const Scalar& x) {
  Scalar out(x.bits());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Scalar square(const Scalar& x) {
  Scalar out(x.bits());
  mpfr_sqr(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

std::pair<Scalar, Scalar> cos_sin_degrees(const Scalar& degrees, Bits bits) {
  // a few guard bits so that multiples of 90 degrees come out within rounding
  const Bits guard = bits + 32;
  Scalar rad = degrees.with_bits(guard) * Scalar::pi(guard) / 180L;
  Scalar c(guard);
  Scalar s(guard);
  mpfr_sin_cos(s.get(), c.get(), rad.get(), MPFR_RNDN);
  return {c.with_bits(bits), s.with_bits(bits)};
}

Ratio Ratio::parse(std::string_view text) {
  auto parse_long = [&](std::string_view part) {
    std::string owned(part);
    if (owned.empty()) {
      throw Error(ErrorCode::ParseError, "empty ratio component");
    }
    char* end = nullptr;
    const long v = std::strtol(owned.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') {
      throw Error(ErrorCode::ParseError, "bad ratio component '" + owned + "'");
    }
    return v;
  };
  Ratio r;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    r.num = parse_long(text);
    r.den = 1;
  } else {
    r.num = parse_long(text.substr(0, slash));
    r.den = parse_long(text.substr(slash + 1));
  }
  if (r.den <= 0) {
    throw Error(ErrorCode::ParseError, "ratio denominator must be positive");
  }
  return r;
}

std::string Ratio::to_string() const {
  if (den == 1) {
    return std::to_string(num);
  }
  return std::to_string(num) + "/" + std::to_string(den);
}

Ratio ratio_near(double value, long den) {
  long num = std::lround(value * static_cast<double>(den));
  long a = num < 0 ? -num : num;
  long b = den;
  while (b != 0) {
    const long t = a % b;
    a = b;
    b = t;
  }
  const long g = a == 0 ? den : a;
  return {num / g, den / g};
}

}  // namespace matchstick::numerics
