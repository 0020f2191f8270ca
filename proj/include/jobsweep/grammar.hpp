#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "jobsweep/config.hpp"
#include "jobsweep/errors.hpp"
#include "jobsweep/value_model.hpp"

namespace jobsweep {

enum class LoopType { list, range, exprange };

inline const char* loop_type_name(LoopType t) {
  switch (t) {
    case LoopType::list: return "LIST";
    case LoopType::range: return "RANGE";
    case LoopType::exprange: return "EXPRANGE";
  }
  return "?";
}

// One dimension of the sweep, straight from its sentence in the parameter
// file. Values are kept as raw tokens; interpretation happens later.
struct SetSpec {
  LoopType loop_type = LoopType::list;
  std::vector<std::string> values;
  std::string start;
  std::string end;
  std::optional<std::string> step;
  std::optional<long long> points;
  std::vector<std::string> skips;
  std::vector<std::string> function_chain;
  int line_number = 0;

  bool operator==(const SetSpec&) const = default;

  // Structural equality, ignoring where in the file the sentence sat.
  bool same_structure(const SetSpec& o) const {
    return loop_type == o.loop_type && values == o.values && start == o.start &&
           end == o.end && step == o.step && points == o.points && skips == o.skips &&
           function_chain == o.function_chain;
  }
};

struct ParameterSpec {
  std::vector<SetSpec> sets;

  size_t dimensions() const { return sets.size(); }
};

struct TemplateAppendix {
  std::vector<std::string> lines;
};

namespace detail {

inline std::vector<std::string> physical_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) {
    if (current.back() == '\r') current.pop_back();
    lines.push_back(current);
  }
  return lines;
}

inline bool ends_with_continuation(const std::string& line) {
  size_t i = line.size();
  while (i > 0 && std::isspace(static_cast<unsigned char>(line[i - 1]))) --i;
  return i > 0 && line[i - 1] == '\\';
}

inline std::string strip_continuation(const std::string& line) {
  size_t i = line.size();
  while (i > 0 && std::isspace(static_cast<unsigned char>(line[i - 1]))) --i;
  return line.substr(0, i - 1);
}

inline bool is_blank(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

inline bool is_comment(const std::string& line, const ConfigTable& cfg) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return !cfg.comment_char.empty() && c == cfg.comment_char[0];
  }
  return false;
}

// Splits a sentence into words on the separator character or whitespace,
// outside double quotes. Quotes stay in the word.
inline std::vector<std::string> split_words(const std::string& sentence, const ConfigTable& cfg) {
  char sep = cfg.separation_char.empty() ? ',' : cfg.separation_char[0];
  std::vector<std::string> words;
  std::string current;
  bool in_quotes = false;
  for (char c : sentence) {
    if (c == '"') {
      in_quotes = !in_quotes;
      current += c;
      continue;
    }
    if (!in_quotes && (c == sep || std::isspace(static_cast<unsigned char>(c)))) {
      if (!current.empty()) {
        words.push_back(current);
        current.clear();
      }
      continue;
    }
    current += c;
  }
  if (!current.empty()) words.push_back(current);
  return words;
}

struct KeyValue {
  std::string key;
  std::string value;
};

// Pairs up KEY=VALUE words. A word with no assignment character extends
// the previous word's value, which is how a FUNCTION chain like
// `FUNCTION=int rand` arrives as one value.
inline std::vector<KeyValue> pair_words(const std::vector<std::string>& words,
                                        const ConfigTable& cfg, int line_number) {
  char assign = cfg.keyassignment_char.empty() ? '=' : cfg.keyassignment_char[0];
  std::vector<KeyValue> pairs;
  for (const auto& word : words) {
    auto pos = word.find(assign);
    if (pos == std::string::npos || pos == 0) {
      if (pairs.empty()) {
        fail(ExitCode::param_syntax,
             "line " + std::to_string(line_number) + ": expected KEY" + assign + "VALUE, got '" +
                 word + "'");
      }
      pairs.back().value += " " + word;
      continue;
    }
    pairs.push_back({word.substr(0, pos), word.substr(pos + 1)});
  }
  return pairs;
}

inline std::vector<std::string> split_whitespace(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) {
        out.push_back(current);
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

inline SetSpec parse_sentence(const std::string& sentence, int line_number,
                              const ConfigTable& cfg) {
  auto where = [&] { return "line " + std::to_string(line_number) + ": "; };
  auto words = split_words(sentence, cfg);
  auto pairs = pair_words(words, cfg, line_number);
  if (pairs.empty()) {
    fail(ExitCode::param_syntax, where() + "empty sentence");
  }
  if (pairs[0].key != "LOOPTYPE") {
    fail(ExitCode::param_syntax, where() + "first word must be LOOPTYPE, got '" + pairs[0].key + "'");
  }

  SetSpec spec;
  spec.line_number = line_number;
  const std::string& lt = pairs[0].value;
  if (lt == "LIST") {
    spec.loop_type = LoopType::list;
  } else if (lt == "RANGE") {
    spec.loop_type = LoopType::range;
  } else if (lt == "EXPRANGE") {
    spec.loop_type = LoopType::exprange;
  } else {
    fail(ExitCode::param_syntax, where() + "unknown LOOPTYPE '" + lt + "'");
  }

  bool is_list = spec.loop_type == LoopType::list;
  bool have_start = false, have_end = false;
  std::optional<std::string> function_value;

  for (size_t i = 1; i < pairs.size(); ++i) {
    const auto& [key, value] = pairs[i];
    if (key == "LOOPTYPE") {
      fail(ExitCode::param_syntax, where() + "duplicate LOOPTYPE");
    } else if (key == "VALUE") {
      if (!is_list) {
        fail(ExitCode::param_syntax, where() + "VALUE is only valid with LOOPTYPE=LIST");
      }
      spec.values.push_back(value);
    } else if (key == "START" || key == "END") {
      if (is_list) {
        fail(ExitCode::param_syntax, where() + key + " is not valid with LOOPTYPE=LIST");
      }
      bool& seen = key == "START" ? have_start : have_end;
      if (seen) {
        fail(ExitCode::param_syntax, where() + "duplicate " + key);
      }
      seen = true;
      (key == "START" ? spec.start : spec.end) = value;
    } else if (key == "STEP") {
      if (is_list) {
        fail(ExitCode::param_syntax, where() + "STEP is not valid with LOOPTYPE=LIST");
      }
      if (spec.step) {
        fail(ExitCode::param_syntax, where() + "duplicate STEP");
      }
      spec.step = value;
    } else if (key == "POINTS") {
      if (is_list) {
        fail(ExitCode::param_syntax, where() + "POINTS is not valid with LOOPTYPE=LIST");
      }
      if (spec.points) {
        fail(ExitCode::param_syntax, where() + "duplicate POINTS");
      }
      auto parsed = Decimal::parse(value);
      if (!parsed || !parsed->is_integral() || !parsed->fits_int64() || parsed->to_int64() <= 0) {
        fail(ExitCode::param_syntax, where() + "POINTS must be a positive integer, got '" + value + "'");
      }
      spec.points = parsed->to_int64();
    } else if (key == "SKIP") {
      spec.skips.push_back(value);
    } else if (key == "FUNCTION") {
      if (function_value) {
        fail(ExitCode::param_syntax, where() + "duplicate FUNCTION");
      }
      function_value = value;
    } else {
      fail(ExitCode::param_syntax, where() + "unknown key '" + key + "'");
    }
  }

  if (function_value) {
    spec.function_chain = split_whitespace(*function_value);
    if (spec.function_chain.empty()) {
      fail(ExitCode::param_syntax, where() + "FUNCTION requires at least one function name");
    }
    for (const auto& name : spec.function_chain) validate_transform_name(name);
  }

  if (is_list) {
    if (spec.values.empty()) {
      fail(ExitCode::param_syntax, where() + "LOOPTYPE=LIST requires at least one VALUE");
    }
  } else {
    const char* type_name = loop_type_name(spec.loop_type);
    if (!have_start || !have_end) {
      fail(ExitCode::param_syntax,
           where() + std::string("LOOPTYPE=") + type_name + " requires both START and END");
    }
    if (spec.step.has_value() == spec.points.has_value()) {
      fail(ExitCode::param_syntax,
           where() + std::string("LOOPTYPE=") + type_name + " requires exactly one of STEP or POINTS");
    }
  }
  return spec;
}

}  // namespace detail

// Sentences come from joining continuation lines, then dropping blanks and
// comments. The line number of a sentence is its first physical line.
inline ParameterSpec parse_parameter_file(const std::string& text, const ConfigTable& cfg) {
  auto lines = detail::physical_lines(text);
  ParameterSpec spec;
  size_t i = 0;
  while (i < lines.size()) {
    int first_line = static_cast<int>(i) + 1;
    std::string sentence = lines[i];
    ++i;
    while (detail::ends_with_continuation(sentence) && i < lines.size()) {
      sentence = detail::strip_continuation(sentence) + lines[i];
      ++i;
    }
    if (detail::ends_with_continuation(sentence)) {
      sentence = detail::strip_continuation(sentence);
    }
    if (detail::is_blank(sentence) || detail::is_comment(sentence, cfg)) continue;
    spec.sets.push_back(detail::parse_sentence(sentence, first_line, cfg));
  }
  if (spec.sets.empty()) {
    fail(ExitCode::param_syntax, "parameter file declares no parameter sets");
  }
  return spec;
}

inline TemplateAppendix parse_template_appendix(const std::string& text, const ConfigTable& cfg) {
  TemplateAppendix appendix;
  for (const auto& line : detail::physical_lines(text)) {
    if (detail::is_blank(line) || detail::is_comment(line, cfg)) continue;
    appendix.lines.push_back(line);
  }
  return appendix;
}

// Canonical single-line rendering of a SetSpec; parsing it back yields the
// same structure.
inline std::string to_sentence(const SetSpec& spec, const ConfigTable& cfg) {
  std::string sep = cfg.separation_char + " ";
  std::string assign = cfg.keyassignment_char;
  std::string out = "LOOPTYPE" + assign + loop_type_name(spec.loop_type);
  if (spec.loop_type == LoopType::list) {
    for (const auto& v : spec.values) out += sep + "VALUE" + assign + v;
  } else {
    out += sep + "START" + assign + spec.start;
    out += sep + "END" + assign + spec.end;
    if (spec.step) out += sep + "STEP" + assign + *spec.step;
    if (spec.points) out += sep + "POINTS" + assign + std::to_string(*spec.points);
  }
  for (const auto& s : spec.skips) out += sep + "SKIP" + assign + s;
  if (!spec.function_chain.empty()) {
    out += sep + "FUNCTION" + assign;
    for (size_t i = 0; i < spec.function_chain.size(); ++i) {
      if (i) out += " ";
      out += spec.function_chain[i];
    }
  }
  return out;
}

}  // namespace jobsweep
