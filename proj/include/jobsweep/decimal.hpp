#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

namespace jobsweep {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow10_big(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

// Exact decimal number: mant * 10^exp with an arbitrary-precision mantissa.
// Always kept normalized (no trailing zeros in mant; zero has exp 0), so
// equal values have equal representations.
class Decimal {
 public:
  Decimal() = default;
  Decimal(BigInt mant, long exp) : mant_(std::move(mant)), exp_(exp) { normalize(); }
  explicit Decimal(long long v) : mant_(v), exp_(0) { normalize(); }

  static std::optional<Decimal> parse(const std::string& token) {
    const char* p = token.c_str();
    const char* end = p + token.size();
    bool neg = false;
    if (p != end && (*p == '+' || *p == '-')) {
      neg = *p == '-';
      ++p;
    }
    BigInt mant = 0;
    long frac_digits = 0;
    bool any_digit = false;
    bool seen_dot = false;
    for (; p != end; ++p) {
      if (*p >= '0' && *p <= '9') {
        mant = mant * 10 + (*p - '0');
        if (seen_dot) ++frac_digits;
        any_digit = true;
      } else if (*p == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
    }
    if (!any_digit) return std::nullopt;
    long exp = -frac_digits;
    if (p != end && (*p == 'e' || *p == 'E')) {
      ++p;
      bool eneg = false;
      if (p != end && (*p == '+' || *p == '-')) {
        eneg = *p == '-';
        ++p;
      }
      if (p == end) return std::nullopt;
      long evalue = 0;
      for (; p != end; ++p) {
        if (*p < '0' || *p > '9') return std::nullopt;
        if (evalue < 100000000) evalue = evalue * 10 + (*p - '0');
      }
      exp += eneg ? -evalue : evalue;
    }
    if (p != end) return std::nullopt;
    if (neg) mant = -mant;
    return Decimal(std::move(mant), exp);
  }

  const BigInt& mantissa() const { return mant_; }
  long exponent() const { return exp_; }

  bool is_zero() const { return mant_ == 0; }
  bool is_negative() const { return mant_ < 0; }
  bool is_integral() const { return exp_ >= 0 || mant_ == 0; }

  // Count of significant digits in the mantissa (zero has one).
  long digit_count() const {
    if (mant_ == 0) return 1;
    BigInt m = mant_ < 0 ? BigInt(-mant_) : mant_;
    long n = 0;
    while (m != 0) {
      m /= 10;
      ++n;
    }
    return n;
  }

  // Exponent of the leading digit, as in scientific notation.
  long adjusted_exponent() const { return digit_count() - 1 + exp_; }

  friend Decimal operator-(const Decimal& a) { return Decimal(-a.mant_, a.exp_); }

  friend Decimal operator+(const Decimal& a, const Decimal& b) {
    auto [ma, mb, e] = aligned(a, b);
    return Decimal(ma + mb, e);
  }

  friend Decimal operator-(const Decimal& a, const Decimal& b) {
    auto [ma, mb, e] = aligned(a, b);
    return Decimal(ma - mb, e);
  }

  friend Decimal operator*(const Decimal& a, const Decimal& b) {
    return Decimal(a.mant_ * b.mant_, a.exp_ + b.exp_);
  }

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.mant_ == b.mant_ && a.exp_ == b.exp_;
  }

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    auto [ma, mb, e] = aligned(a, b);
    (void)e;
    if (ma < mb) return std::strong_ordering::less;
    if (ma > mb) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Decimal scaled_pow10(long k) const {
    if (mant_ == 0) return *this;
    return Decimal(mant_, exp_ + k);
  }

  // Drops the fractional part, truncating toward zero.
  Decimal truncated() const {
    if (is_integral()) return *this;
    return Decimal(mant_ / pow10_big(static_cast<unsigned>(-exp_)), 0);
  }

  Decimal abs() const { return mant_ < 0 ? Decimal(-mant_, exp_) : *this; }

  // Integral value as a plain big integer; only valid when is_integral().
  BigInt to_bigint() const {
    if (mant_ == 0) return 0;
    return mant_ * pow10_big(static_cast<unsigned>(exp_));
  }

  bool fits_int64() const {
    if (!is_integral()) return false;
    BigInt v = to_bigint();
    static const BigInt lo = BigInt(std::numeric_limits<long long>::min());
    static const BigInt hi = BigInt(std::numeric_limits<long long>::max());
    return v >= lo && v <= hi;
  }

  long long to_int64() const { return static_cast<long long>(to_bigint()); }

  double to_double() const { return std::strtod(to_exponent_string().c_str(), nullptr); }

  // Exact quotient by a positive integer when the result has a finite
  // decimal expansion; empty otherwise.
  static std::optional<Decimal> divide_exact(const Decimal& a, const BigInt& den) {
    BigInt m = a.mant_;
    long e = a.exp_;
    BigInt d = den;
    BigInt g = boost::multiprecision::gcd(m < 0 ? BigInt(-m) : m, d);
    if (g > 1) {
      m /= g;
      d /= g;
    }
    while (d % 2 == 0) {
      d /= 2;
      m *= 5;
      --e;
    }
    while (d % 5 == 0) {
      d /= 5;
      m *= 2;
      --e;
    }
    if (d != 1) return std::nullopt;
    return Decimal(std::move(m), e);
  }

  // Quotient by a positive integer rounded to `sig` significant digits,
  // ties away from zero.
  static Decimal divide_rounded(const Decimal& a, const BigInt& den, long sig) {
    if (a.mant_ == 0) return Decimal();
    bool neg = a.mant_ < 0;
    BigInt A = neg ? BigInt(-a.mant_) : a.mant_;
    long da = count_digits(A);
    long dd = count_digits(den);
    long k = sig + dd - da + 2;
    BigInt t = (A * pos_pow(k)) / (den * neg_pow(k));
    long dq = count_digits(t);
    k -= dq - sig;
    BigInt num2 = 2 * A * pos_pow(k);
    BigInt den2 = den * neg_pow(k);
    BigInt q = (num2 + den2) / (2 * den2);
    if (neg) q = -q;
    return Decimal(std::move(q), a.exp_ - k);
  }

  // Reads back a binary double with `sig` significant decimal digits.
  static Decimal from_double(double v, int sig = 15) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
    auto d = parse(buf);
    return d ? *d : Decimal();
  }

  // Truncation toward zero at `sig` significant digits; never increases
  // the magnitude, unlike rounded_to_digits.
  Decimal truncated_to_digits(long sig) const {
    long drop = digit_count() - sig;
    if (drop <= 0 || mant_ == 0) return *this;
    BigInt p = pow10_big(static_cast<unsigned>(drop));
    return Decimal(mant_ / p, exp_ + drop);
  }

  Decimal rounded_to_digits(long sig) const {
    long drop = digit_count() - sig;
    if (drop <= 0 || mant_ == 0) return *this;
    BigInt p = pow10_big(static_cast<unsigned>(drop));
    bool neg = mant_ < 0;
    BigInt A = neg ? BigInt(-mant_) : mant_;
    BigInt q = (2 * A + p) / (2 * p);
    if (neg) q = -q;
    return Decimal(std::move(q), exp_ + drop);
  }

  // All digits, sign and decimal point as needed, never an exponent.
  std::string to_plain_string() const {
    if (mant_ == 0) return "0";
    BigInt m = mant_ < 0 ? BigInt(-mant_) : mant_;
    std::string digits = m.str();
    std::string out;
    if (exp_ >= 0) {
      out = digits + std::string(static_cast<size_t>(exp_), '0');
    } else {
      size_t frac = static_cast<size_t>(-exp_);
      if (digits.size() <= frac) digits.insert(0, frac - digits.size() + 1, '0');
      out = digits;
      out.insert(out.size() - frac, ".");
    }
    if (mant_ < 0) out.insert(0, "-");
    return out;
  }

  // Normalized scientific form, d[.ddd]e±XX with a two-digit minimum
  // exponent, matching printf %g.
  std::string to_exponent_string() const {
    if (mant_ == 0) return "0";
    BigInt m = mant_ < 0 ? BigInt(-mant_) : mant_;
    std::string digits = m.str();
    std::string out;
    if (mant_ < 0) out += "-";
    out += digits[0];
    if (digits.size() > 1) {
      out += ".";
      out += digits.substr(1);
    }
    long adj = adjusted_exponent();
    out += "e";
    out += adj < 0 ? "-" : "+";
    std::string ed = std::to_string(adj < 0 ? -adj : adj);
    if (ed.size() < 2) ed.insert(0, "0");
    out += ed;
    return out;
  }

 private:
  void normalize() {
    if (mant_ == 0) {
      exp_ = 0;
      return;
    }
    while (mant_ % 10 == 0) {
      mant_ /= 10;
      ++exp_;
    }
  }

  static long count_digits(const BigInt& v) {
    BigInt m = v < 0 ? BigInt(-v) : v;
    if (m == 0) return 1;
    long n = 0;
    while (m != 0) {
      m /= 10;
      ++n;
    }
    return n;
  }

  static BigInt pos_pow(long k) { return k > 0 ? pow10_big(static_cast<unsigned>(k)) : BigInt(1); }
  static BigInt neg_pow(long k) { return k < 0 ? pow10_big(static_cast<unsigned>(-k)) : BigInt(1); }

  static std::tuple<BigInt, BigInt, long> aligned(const Decimal& a, const Decimal& b) {
    long e = std::min(a.exp_, b.exp_);
    BigInt ma = a.mant_ * pos_pow(a.exp_ - e);
    BigInt mb = b.mant_ * pos_pow(b.exp_ - e);
    return {std::move(ma), std::move(mb), e};
  }

  BigInt mant_ = 0;
  long exp_ = 0;
};

}  // namespace jobsweep
