#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "jobsweep/config.hpp"
#include "jobsweep/decimal.hpp"
#include "jobsweep/errors.hpp"
#include "jobsweep/grammar.hpp"
#include "jobsweep/value_model.hpp"
#include "jobsweep/wildcard.hpp"

namespace jobsweep {

// Hard cap on one dimension's element count; a runaway STEP would
// otherwise exhaust memory before the sweep-size warning could fire.
inline constexpr long long kMaxDimensionElements = 10'000'000;

struct Element {
  std::string text;
  bool deferred = false;  // text still carries wildcards

  bool operator==(const Element&) const = default;
};

struct DimensionSet {
  std::vector<Element> elements;
  std::vector<std::string> chain;  // pending transforms for deferred elements
};

struct SweepPoint {
  long long index = 0;
  std::string label;
  std::vector<std::string> coordinates;

  bool operator==(const SweepPoint&) const = default;
};

inline std::string index_label(long long j, long long m) {
  std::string width_probe = std::to_string(m - 1);
  std::string out = std::to_string(j);
  if (out.size() < width_probe.size()) out.insert(0, width_probe.size() - out.size(), '0');
  return out;
}

namespace detail {

inline std::string spec_location(const SetSpec& spec) {
  return "line " + std::to_string(spec.line_number) + ": ";
}

inline Scalar transformed(const DimensionSet& dim, Scalar v, TransformContext& ctx) {
  if (dim.chain.empty()) return v;
  return apply_transform_chain(dim.chain, std::move(v), ctx);
}

// Numeric skip tokens for a computed range; non-numeric tokens can never
// match numerically and are ignored.
inline std::vector<Decimal> numeric_skips(const SetSpec& spec) {
  std::vector<Decimal> out;
  for (const auto& token : spec.skips) {
    if (auto d = Decimal::parse(token)) out.push_back(*d);
  }
  return out;
}

inline bool skipped_numeric(const Decimal& v, const std::vector<Decimal>& skips) {
  for (const auto& s : skips)
    if (s == v) return true;
  return false;
}

inline bool skipped_literal(const std::string& v, const std::vector<std::string>& skips) {
  for (const auto& s : skips)
    if (s == v) return true;
  return false;
}

inline void guard_dimension_size(const SetSpec& spec, long long count) {
  if (count > kMaxDimensionElements) {
    fail(ExitCode::compute_error,
         spec_location(spec) + "set expands to more than " +
             std::to_string(kMaxDimensionElements) + " elements");
  }
}

inline void push_transformed_numeric(DimensionSet& dim, Decimal v, const ConfigTable& cfg,
                                     TransformContext& ctx) {
  Scalar s = make_numeric(std::move(v), cfg.use_bignum != 0);
  dim.elements.push_back({render_scalar(transformed(dim, std::move(s), ctx)), false});
}

inline void push_transformed_char(DimensionSet& dim, char c, TransformContext& ctx) {
  Scalar s;
  s.kind = ValueKind::character;
  s.text = std::string(1, c);
  dim.elements.push_back({render_scalar(transformed(dim, std::move(s), ctx)), false});
}

inline void expand_numeric_range(const SetSpec& spec, const Decimal& start, const Decimal& end,
                                 const ConfigTable& cfg, TransformContext& ctx,
                                 DimensionSet& dim) {
  auto skips = numeric_skips(spec);
  if (spec.step) {
    auto sd = Decimal::parse(*spec.step);
    if (!sd || sd->is_zero() || sd->is_negative()) {
      fail(ExitCode::param_syntax, spec_location(spec) + "RANGE STEP must be a positive number");
    }
    if (start > end) {
      fail(ExitCode::param_syntax, spec_location(spec) + "RANGE with STEP requires START <= END");
    }
    long long count = 0;
    for (Decimal v = start; v <= end; v = v + *sd) {
      guard_dimension_size(spec, ++count);
      if (!skipped_numeric(v, skips)) push_transformed_numeric(dim, v, cfg, ctx);
    }
    return;
  }
  long long m = *spec.points;
  guard_dimension_size(spec, m);
  Decimal dv = end - start;
  std::optional<Decimal> exact_step;
  if (m > 1) exact_step = Decimal::divide_exact(dv, BigInt(m - 1));
  for (long long j = 0; j < m; ++j) {
    Decimal v;
    if (j == 0) {
      v = start;
    } else if (j == m - 1) {
      v = end;
    } else if (exact_step) {
      v = start + *exact_step * Decimal(j);
    } else {
      v = start + Decimal::divide_rounded(dv * Decimal(j), BigInt(m - 1), 15);
    }
    if (!skipped_numeric(v, skips)) push_transformed_numeric(dim, v, cfg, ctx);
  }
}

inline void expand_char_range(const SetSpec& spec, char start, char end, TransformContext& ctx,
                              DimensionSet& dim) {
  long long cs = static_cast<unsigned char>(start);
  long long ce = static_cast<unsigned char>(end);
  std::vector<long long> codes;
  if (spec.step) {
    auto sd = Decimal::parse(*spec.step);
    if (!sd || !sd->is_integral() || sd->is_zero() || sd->is_negative() || !sd->fits_int64()) {
      fail(ExitCode::param_syntax,
           spec_location(spec) + "character RANGE STEP must be a positive integer");
    }
    if (cs > ce) {
      fail(ExitCode::param_syntax, spec_location(spec) + "character RANGE requires START <= END");
    }
    for (long long c = cs; c <= ce; c += sd->to_int64()) codes.push_back(c);
  } else {
    long long m = *spec.points;
    if (m == 1) {
      codes.push_back(cs);
    } else {
      long long span = ce - cs;
      if (span % (m - 1) != 0) {
        fail(ExitCode::param_syntax,
             spec_location(spec) + "character RANGE POINTS does not divide the span evenly");
      }
      long long stride = span / (m - 1);
      for (long long j = 0; j < m; ++j) codes.push_back(cs + j * stride);
    }
  }
  for (long long c : codes) {
    std::string rendered(1, static_cast<char>(c));
    if (!skipped_literal(rendered, spec.skips)) push_transformed_char(dim, rendered[0], ctx);
  }
}

}  // namespace detail

inline DimensionSet expand_list(const SetSpec& spec, const ConfigTable& cfg,
                                TransformContext& ctx) {
  DimensionSet dim;
  dim.chain = spec.function_chain;
  for (const auto& raw : spec.values) {
    if (detail::skipped_literal(raw, spec.skips)) continue;
    if (has_wildcards(raw, cfg.job_template_wildcard)) {
      dim.elements.push_back({raw, true});
    } else if (dim.chain.empty()) {
      dim.elements.push_back({raw, false});
    } else {
      dim.elements.push_back({render_scalar(apply_transform_chain(dim.chain, make_text(raw), ctx)),
                              false});
    }
  }
  if (dim.elements.empty()) {
    fail(ExitCode::param_syntax, detail::spec_location(spec) + "LIST set is empty after skips");
  }
  return dim;
}

inline DimensionSet expand_range(const SetSpec& spec, const ConfigTable& cfg,
                                 TransformContext& ctx) {
  DimensionSet dim;
  dim.chain = spec.function_chain;
  Scalar s = parse_scalar(spec.start, cfg.use_bignum != 0);
  Scalar e = parse_scalar(spec.end, cfg.use_bignum != 0);
  if (s.is_numeric() && e.is_numeric()) {
    detail::expand_numeric_range(spec, s.num, e.num, cfg, ctx, dim);
  } else if (s.kind == ValueKind::character && e.kind == ValueKind::character) {
    detail::expand_char_range(spec, s.text[0], e.text[0], ctx, dim);
  } else {
    fail(ExitCode::param_syntax,
         detail::spec_location(spec) +
             "RANGE bounds must both be numbers or both be single characters");
  }
  if (dim.elements.empty()) {
    fail(ExitCode::param_syntax, detail::spec_location(spec) + "RANGE set is empty after skips");
  }
  return dim;
}

inline DimensionSet expand_exprange(const SetSpec& spec, const ConfigTable& cfg,
                                    TransformContext& ctx) {
  DimensionSet dim;
  dim.chain = spec.function_chain;
  Scalar s = parse_scalar(spec.start, cfg.use_bignum != 0);
  Scalar e = parse_scalar(spec.end, cfg.use_bignum != 0);
  if (!s.is_numeric() || !e.is_numeric()) {
    fail(ExitCode::param_syntax, detail::spec_location(spec) + "EXPRANGE bounds must be numeric");
  }
  const Decimal& start = s.num;
  const Decimal& end = e.num;
  if (start.is_zero() || start.is_negative() || end.is_zero() || end.is_negative()) {
    fail(ExitCode::param_syntax, detail::spec_location(spec) + "EXPRANGE bounds must be positive");
  }
  if (start > end) {
    fail(ExitCode::param_syntax, detail::spec_location(spec) + "EXPRANGE requires START <= END");
  }
  auto skips = detail::numeric_skips(spec);
  std::vector<Decimal> values;

  if (spec.step) {
    auto ed = Decimal::parse(*spec.step);
    if (!ed || ed->is_zero() || ed->is_negative()) {
      fail(ExitCode::param_syntax,
           detail::spec_location(spec) + "EXPRANGE STEP must be a positive number");
    }
    if (ed->is_integral() && ed->fits_int64()) {
      long long k = ed->to_int64();
      long long count = 0;
      for (Decimal v = start; v <= end; v = v.scaled_pow10(k)) {
        detail::guard_dimension_size(spec, ++count);
        values.push_back(v);
      }
    } else {
      double l0 = std::log10(start.to_double());
      double step = ed->to_double();
      double limit = end.to_double() * (1.0 + 1e-12);
      long long count = 0;
      for (long long j = 0;; ++j) {
        double r = std::pow(10.0, l0 + static_cast<double>(j) * step);
        if (!(r <= limit)) break;
        detail::guard_dimension_size(spec, ++count);
        values.push_back(j == 0 ? start : Decimal::from_double(r, 15));
      }
    }
  } else {
    long long m = *spec.points;
    detail::guard_dimension_size(spec, m);
    if (m == 1) {
      values.push_back(start);
    } else if (start.mantissa() == end.mantissa() &&
               (end.exponent() - start.exponent()) % (m - 1) == 0) {
      long stride = (end.exponent() - start.exponent()) / (m - 1);
      for (long long j = 0; j < m; ++j) values.push_back(start.scaled_pow10(j * stride));
    } else {
      double l0 = std::log10(start.to_double());
      double l1 = std::log10(end.to_double());
      double d = (l1 - l0) / static_cast<double>(m - 1);
      for (long long j = 0; j < m; ++j) {
        if (j == 0) {
          values.push_back(start);
        } else if (j == m - 1) {
          values.push_back(end);
        } else {
          values.push_back(Decimal::from_double(std::pow(10.0, l0 + j * d), 15));
        }
      }
    }
  }

  for (const auto& v : values) {
    if (!detail::skipped_numeric(v, skips)) detail::push_transformed_numeric(dim, v, cfg, ctx);
  }
  if (dim.elements.empty()) {
    fail(ExitCode::param_syntax, detail::spec_location(spec) + "EXPRANGE set is empty after skips");
  }
  return dim;
}

inline DimensionSet expand_set(const SetSpec& spec, const ConfigTable& cfg,
                               TransformContext& ctx) {
  switch (spec.loop_type) {
    case LoopType::list: return expand_list(spec, cfg, ctx);
    case LoopType::range: return expand_range(spec, cfg, ctx);
    case LoopType::exprange: return expand_exprange(spec, cfg, ctx);
  }
  fail(ExitCode::parse_internal, "unhandled loop type");
}

// Streams the Cartesian product in canonical order: the last dimension
// varies fastest. Deferred elements resolve against the coordinates fixed
// so far and the point's label.
class SweepEnumerator {
 public:
  SweepEnumerator(const ParameterSpec& spec, const ConfigTable& cfg, TransformContext& ctx)
      : cfg_(cfg), ctx_(ctx) {
    dims_.reserve(spec.sets.size());
    for (size_t i = 0; i < spec.sets.size(); ++i) {
      DimensionSet dim = expand_set(spec.sets[i], cfg, ctx);
      for (const auto& el : dim.elements) {
        if (el.deferred && max_positional_tag(el.text) > i) {
          fail(ExitCode::param_syntax,
               detail::spec_location(spec.sets[i]) +
                   "wildcard may only reference earlier parameter sets");
        }
      }
      dims_.push_back(std::move(dim));
    }
    total_ = 1;
    for (const auto& dim : dims_) {
      long long size = static_cast<long long>(dim.elements.size());
      if (total_ > (std::numeric_limits<long long>::max() / 2) / size) {
        fail(ExitCode::compute_error, "sweep size overflows the index range");
      }
      total_ *= size;
    }
    indices_.assign(dims_.size(), 0);
  }

  long long total() const { return total_; }

  size_t label_width() const { return std::to_string(total_ - 1).size(); }

  std::optional<SweepPoint> next() {
    if (produced_ == total_) return std::nullopt;
    SweepPoint point;
    point.index = produced_;
    point.label = index_label(produced_, total_);
    point.coordinates.reserve(dims_.size());
    for (size_t d = 0; d < dims_.size(); ++d) {
      const Element& el = dims_[d].elements[indices_[d]];
      if (!el.deferred) {
        point.coordinates.push_back(el.text);
        continue;
      }
      SubstitutionContext sctx{point.coordinates, point.label};
      std::string resolved = substitute(el.text, sctx, cfg_.job_template_wildcard);
      if (!dims_[d].chain.empty()) {
        resolved = render_scalar(apply_transform_chain(dims_[d].chain, make_text(resolved), ctx_));
      }
      point.coordinates.push_back(resolved);
    }
    ++produced_;
    for (size_t d = dims_.size(); d-- > 0;) {
      if (++indices_[d] < dims_[d].elements.size()) break;
      indices_[d] = 0;
    }
    return point;
  }

 private:
  const ConfigTable& cfg_;
  TransformContext& ctx_;
  std::vector<DimensionSet> dims_;
  std::vector<size_t> indices_;
  long long total_ = 0;
  long long produced_ = 0;
};

}  // namespace jobsweep
