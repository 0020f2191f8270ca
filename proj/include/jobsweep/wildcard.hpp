#pragma once

#include <string>
#include <vector>

namespace jobsweep {

// Coordinates already fixed for the current point (1-based dimensions)
// plus its padded index label.
struct SubstitutionContext {
  std::vector<std::string> coordinates;
  std::string label;
};

namespace detail {

// Single left-to-right pass; the replacement text is never re-scanned.
inline std::string replace_all_literal(const std::string& text, const std::string& tag,
                                       const std::string& value) {
  if (tag.empty()) return text;
  std::string out;
  size_t pos = 0;
  for (;;) {
    size_t hit = text.find(tag, pos);
    if (hit == std::string::npos) {
      out.append(text, pos, std::string::npos);
      return out;
    }
    out.append(text, pos, hit - pos);
    out += value;
    pos = hit + tag.size();
  }
}

}  // namespace detail

// Positional tags resolve in increasing dimension order, then the index
// tag. Tags beyond the known coordinates (and anything else in ${...}
// form) pass through untouched.
inline std::string substitute(std::string text, const SubstitutionContext& ctx,
                              const std::string& index_tag = "${JT_ID}") {
  for (size_t i = 0; i < ctx.coordinates.size(); ++i) {
    std::string tag = "${" + std::to_string(i + 1) + "}";
    text = detail::replace_all_literal(text, tag, ctx.coordinates[i]);
  }
  return detail::replace_all_literal(text, index_tag, ctx.label);
}

// True when the text still carries a positional or index tag, i.e. its
// final value depends on the point being rendered.
inline bool has_wildcards(const std::string& text, const std::string& index_tag = "${JT_ID}") {
  if (!index_tag.empty() && text.find(index_tag) != std::string::npos) return true;
  size_t pos = 0;
  while ((pos = text.find("${", pos)) != std::string::npos) {
    size_t end = text.find('}', pos + 2);
    if (end == std::string::npos) return false;
    bool digits = end > pos + 2;
    for (size_t i = pos + 2; i < end && digits; ++i) {
      if (text[i] < '0' || text[i] > '9') digits = false;
    }
    if (digits) return true;
    pos = end + 1;
  }
  return false;
}

// Largest i of any ${i} tag in the text, 0 when none.
inline size_t max_positional_tag(const std::string& text) {
  size_t best = 0;
  size_t pos = 0;
  while ((pos = text.find("${", pos)) != std::string::npos) {
    size_t end = text.find('}', pos + 2);
    if (end == std::string::npos) break;
    bool digits = end > pos + 2;
    size_t value = 0;
    for (size_t i = pos + 2; i < end && digits; ++i) {
      if (text[i] < '0' || text[i] > '9') {
        digits = false;
      } else {
        value = value * 10 + static_cast<size_t>(text[i] - '0');
      }
    }
    if (digits && value > best) best = value;
    pos = end + 1;
  }
  return best;
}

}  // namespace jobsweep
