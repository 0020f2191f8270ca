#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "jobsweep/decimal.hpp"
#include "jobsweep/errors.hpp"

namespace jobsweep {

enum class ValueKind { integer, decimal, scientific, character, bignum, text };

// One parameter value. Numeric kinds carry the exact decimal payload; the
// other kinds carry the literal text.
struct Scalar {
  ValueKind kind = ValueKind::text;
  Decimal num;
  std::string text;

  bool is_numeric() const {
    return kind == ValueKind::integer || kind == ValueKind::decimal ||
           kind == ValueKind::scientific || kind == ValueKind::bignum;
  }

  bool operator==(const Scalar&) const = default;
};

// Builds a numeric scalar, applying the width rules: integers keep full
// precision only under bignum mode, otherwise values beyond the native
// integer range collapse to 15 significant digits and render with an
// exponent, the way a double-backed interpreter would print them.
inline Scalar make_numeric(Decimal v, bool use_bignum) {
  Scalar s;
  if (use_bignum && v.is_integral()) {
    s.kind = ValueKind::bignum;
    s.num = std::move(v);
    return s;
  }
  if (v.is_integral() && !v.fits_int64()) v = v.rounded_to_digits(15);
  if (v.is_integral()) {
    s.kind = v.fits_int64() ? ValueKind::integer : ValueKind::scientific;
  } else {
    long adj = v.adjusted_exponent();
    s.kind = (adj >= -4 && adj < 15) ? ValueKind::decimal : ValueKind::scientific;
  }
  s.num = std::move(v);
  return s;
}

inline Scalar make_text(std::string t) {
  Scalar s;
  s.kind = t.size() == 1 ? ValueKind::character : ValueKind::text;
  s.text = std::move(t);
  return s;
}

inline Scalar parse_scalar(const std::string& token, bool use_bignum) {
  if (auto d = Decimal::parse(token)) return make_numeric(std::move(*d), use_bignum);
  return make_text(token);
}

inline std::string render_scalar(const Scalar& v) {
  switch (v.kind) {
    case ValueKind::integer:
    case ValueKind::bignum:
    case ValueKind::decimal:
      return v.num.to_plain_string();
    case ValueKind::scientific:
      return v.num.to_exponent_string();
    case ValueKind::character:
    case ValueKind::text:
      return v.text;
  }
  return v.text;
}

// Longest numeric prefix after optional whitespace, or zero. Mirrors the
// loose string-to-number coercion of scripting languages.
inline Decimal to_number(const Scalar& v) {
  if (v.is_numeric()) return v.num;
  const std::string& t = v.text;
  size_t i = 0;
  while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  size_t start = i;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
  size_t int_digits = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i, ++int_digits;
  size_t frac_digits = 0;
  if (i < t.size() && t[i] == '.') {
    size_t dot = i++;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i, ++frac_digits;
    if (int_digits == 0 && frac_digits == 0) i = dot;
  }
  if (int_digits == 0 && frac_digits == 0) return Decimal();
  if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
    size_t mark = i++;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
    size_t exp_digits = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) i = mark;
  }
  auto d = Decimal::parse(t.substr(start, i - start));
  return d ? *d : Decimal();
}

inline std::string to_text(const Scalar& v) { return render_scalar(v); }

// Process-wide random stream behind rand/srand. Draws are uniform in
// [0, 1) with 53 random bits.
class RandomStream {
 public:
  explicit RandomStream(std::optional<long long> seed = std::nullopt) {
    if (seed) {
      eng_.seed(static_cast<std::uint64_t>(*seed));
    } else {
      std::random_device rd;
      eng_.seed((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
    }
  }

  void reseed(std::uint64_t s) { eng_.seed(s); }

  double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

struct TransformContext {
  RandomStream& rng;
  bool use_bignum = false;
};

inline const std::vector<std::string>& transform_names() {
  static const std::vector<std::string> names = {
      "abs",  "atan2",  "cos",     "sin",     "sqrt",  "exp",   "log",
      "int",  "hex",    "oct",     "rand",    "srand", "chr",   "ord",
      "length", "reverse", "uc",   "lc",      "ucfirst", "lcfirst",
      "chomp", "chop"};
  return names;
}

inline bool is_known_transform(const std::string& name) {
  for (const auto& n : transform_names())
    if (n == name) return true;
  return false;
}

// Rejects unknown names up front so a bad FUNCTION line fails at parse
// time, not in the middle of expansion.
inline void validate_transform_name(const std::string& name) {
  if (name == "crypt") {
    fail(ExitCode::param_syntax, "function 'crypt' is not supported (requires two arguments)");
  }
  if (!is_known_transform(name)) {
    fail(ExitCode::param_syntax, "unknown function '" + name + "' in FUNCTION chain");
  }
}

namespace detail {

inline Scalar numeric_result(Decimal d, const TransformContext& ctx) {
  return make_numeric(std::move(d), ctx.use_bignum);
}

inline Scalar double_result(double r, const std::string& name, const TransformContext& ctx) {
  if (!std::isfinite(r)) {
    fail(ExitCode::compute_error, "function '" + name + "' produced a non-finite result");
  }
  return numeric_result(Decimal::from_double(r, 15), ctx);
}

inline BigInt parse_radix_prefix(const std::string& text, int radix) {
  size_t i = 0;
  BigInt v = 0;
  auto digit_value = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  for (; i < text.size(); ++i) {
    int d = digit_value(text[i]);
    if (d < 0 || d >= radix) break;
    v = v * radix + d;
  }
  return v;
}

inline Scalar transform_hex(const Scalar& v, const TransformContext& ctx) {
  std::string t = to_text(v);
  if (t.size() >= 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) t = t.substr(2);
  return numeric_result(Decimal(parse_radix_prefix(t, 16), 0), ctx);
}

inline Scalar transform_oct(const Scalar& v, const TransformContext& ctx) {
  std::string t = to_text(v);
  int radix = 8;
  if (t.size() >= 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) {
    t = t.substr(2);
    radix = 16;
  } else if (t.size() >= 2 && t[0] == '0' && (t[1] == 'b' || t[1] == 'B')) {
    t = t.substr(2);
    radix = 2;
  }
  return numeric_result(Decimal(parse_radix_prefix(t, radix), 0), ctx);
}

}  // namespace detail

inline Scalar apply_transform(const std::string& name, const Scalar& v, TransformContext& ctx) {
  using detail::double_result;
  using detail::numeric_result;

  if (name == "abs") return numeric_result(to_number(v).abs(), ctx);
  if (name == "int") return numeric_result(to_number(v).truncated(), ctx);

  if (name == "cos") return double_result(std::cos(to_number(v).to_double()), name, ctx);
  if (name == "sin") return double_result(std::sin(to_number(v).to_double()), name, ctx);
  if (name == "exp") return double_result(std::exp(to_number(v).to_double()), name, ctx);
  if (name == "atan2") return double_result(std::atan2(to_number(v).to_double(), 1.0), name, ctx);
  if (name == "sqrt") {
    Decimal n = to_number(v);
    if (n.is_negative()) {
      fail(ExitCode::compute_error, "function 'sqrt' applied to a negative value");
    }
    return double_result(std::sqrt(n.to_double()), name, ctx);
  }
  if (name == "log") {
    Decimal n = to_number(v);
    if (n.is_zero() || n.is_negative()) {
      fail(ExitCode::compute_error, "function 'log' applied to a non-positive value");
    }
    return double_result(std::log(n.to_double()), name, ctx);
  }

  if (name == "hex") return detail::transform_hex(v, ctx);
  if (name == "oct") return detail::transform_oct(v, ctx);

  if (name == "rand") {
    double u = ctx.rng.next_unit();
    Decimal n = to_number(v);
    double bound = n.is_zero() ? 1.0 : n.to_double();
    double r = u * bound;
    if (!std::isfinite(r)) {
      fail(ExitCode::compute_error, "function 'rand' produced a non-finite result");
    }
    // Truncating re-entry keeps the draw strictly below the bound even
    // when it lands within half an ulp of it.
    return numeric_result(Decimal::from_double(r, 17).truncated_to_digits(15), ctx);
  }
  if (name == "srand") {
    Decimal n = to_number(v).truncated();
    std::uint64_t seed;
    if (n.fits_int64()) {
      seed = static_cast<std::uint64_t>(n.to_int64());
    } else {
      seed = static_cast<std::uint64_t>(n.to_bigint() & BigInt(0xFFFFFFFFFFFFFFFFULL));
    }
    ctx.rng.reseed(seed);
    return v;
  }

  if (name == "chr") {
    Decimal n = to_number(v).truncated();
    long long code = n.fits_int64() ? n.to_int64() : 0;
    Scalar s;
    s.kind = ValueKind::character;
    s.text = std::string(1, static_cast<char>(static_cast<unsigned char>(code)));
    return s;
  }
  if (name == "ord") {
    std::string t = to_text(v);
    long long code = t.empty() ? 0 : static_cast<unsigned char>(t[0]);
    return numeric_result(Decimal(code), ctx);
  }
  if (name == "length") {
    return numeric_result(Decimal(static_cast<long long>(to_text(v).size())), ctx);
  }

  std::string t = to_text(v);
  if (name == "reverse") {
    return make_text(std::string(t.rbegin(), t.rend()));
  }
  if (name == "uc") {
    for (auto& c : t) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return make_text(std::move(t));
  }
  if (name == "lc") {
    for (auto& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return make_text(std::move(t));
  }
  if (name == "ucfirst") {
    if (!t.empty()) t[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
    return make_text(std::move(t));
  }
  if (name == "lcfirst") {
    if (!t.empty()) t[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(t[0])));
    return make_text(std::move(t));
  }
  if (name == "chomp") {
    if (!t.empty() && t.back() == '\n') t.pop_back();
    return make_text(std::move(t));
  }
  if (name == "chop") {
    if (!t.empty()) t.pop_back();
    return make_text(std::move(t));
  }

  fail(ExitCode::param_syntax, "unknown function '" + name + "' in FUNCTION chain");
}

// The chain lists functions outermost first, so application runs from the
// last name to the first, like mathematical composition.
inline Scalar apply_transform_chain(const std::vector<std::string>& chain, Scalar v,
                                    TransformContext& ctx) {
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    v = apply_transform(*it, v, ctx);
  }
  return v;
}

}  // namespace jobsweep
