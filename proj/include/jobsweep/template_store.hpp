#pragma once

#include <sys/stat.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jobsweep/config.hpp"
#include "jobsweep/enumerator.hpp"
#include "jobsweep/errors.hpp"
#include "jobsweep/events.hpp"
#include "jobsweep/grammar.hpp"
#include "jobsweep/registry.hpp"
#include "jobsweep/wildcard.hpp"

namespace jobsweep {

enum class SelectorKind {
  all,
  submitted,
  unsubmitted,
  finished,
  unfinished,
  successful,
  unsuccessful,
  range,
};

struct Selector {
  SelectorKind kind = SelectorKind::all;
  long long from = 0;
  long long to = 0;

  bool needs_state() const {
    return kind == SelectorKind::finished || kind == SelectorKind::unfinished ||
           kind == SelectorKind::successful || kind == SelectorKind::unsuccessful;
  }

  static std::optional<Selector> parse(const std::string& token) {
    Selector s;
    if (token == "all") {
      s.kind = SelectorKind::all;
    } else if (token == "submitted") {
      s.kind = SelectorKind::submitted;
    } else if (token == "unsubmitted") {
      s.kind = SelectorKind::unsubmitted;
    } else if (token == "finished") {
      s.kind = SelectorKind::finished;
    } else if (token == "unfinished") {
      s.kind = SelectorKind::unfinished;
    } else if (token == "successful") {
      s.kind = SelectorKind::successful;
    } else if (token == "unsuccessful") {
      s.kind = SelectorKind::unsuccessful;
    } else {
      auto dash = token.find('-');
      if (dash == std::string::npos || dash == 0 || dash + 1 == token.size()) return std::nullopt;
      for (size_t i = 0; i < token.size(); ++i) {
        if (i != dash && !std::isdigit(static_cast<unsigned char>(token[i]))) return std::nullopt;
      }
      try {
        s.from = std::stoll(token.substr(0, dash));
        s.to = std::stoll(token.substr(dash + 1));
      } catch (const std::exception&) {
        return std::nullopt;
      }
      if (s.from > s.to) return std::nullopt;
      s.kind = SelectorKind::range;
    }
    return s;
  }
};

// One generated template file: its label, on-disk name, and lines.
struct JobTemplate {
  std::string label;
  std::string filename;
  std::vector<std::string> lines;
};

// A template discovered on disk by name pattern.
struct TemplateFile {
  std::string filename;
  std::string label;
  long long index = 0;
};

inline std::string worker_basename(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

inline std::string job_name_for(const std::string& label, const std::string& worker,
                                const ConfigTable& cfg) {
  return label + cfg.jt_id_to_arg_separation + worker_basename(worker);
}

// Filename form of one argument: quotes dropped, whitespace runs turned
// into the filename separator.
inline std::string clean_argument(const std::string& arg, const ConfigTable& cfg) {
  std::string t = arg;
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
  std::string out;
  bool in_space = false;
  for (char c : t) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += cfg.separation_char_filename;
    in_space = false;
    out += c;
  }
  return out;
}

inline std::string template_stem(const SweepPoint& point, const std::string& worker,
                                 const ConfigTable& cfg) {
  std::string stem = point.label + cfg.jt_id_to_arg_separation + worker_basename(worker);
  for (const auto& coord : point.coordinates) {
    stem += cfg.separation_char_filename + clean_argument(coord, cfg);
  }
  return stem;
}

inline std::string template_filename(const SweepPoint& point, const std::string& worker,
                                     const ConfigTable& cfg) {
  return cfg.job_template_prefix + template_stem(point, worker, cfg) + cfg.job_template_suffix;
}

namespace detail {

inline std::string dir_join(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

}  // namespace detail

inline JobTemplate render_template(const SweepPoint& point, const std::string& worker_path,
                                   const TemplateAppendix& appendix, const ConfigTable& cfg) {
  JobTemplate t;
  t.label = point.label;
  t.filename = template_filename(point, worker_path, cfg);
  std::string stem = template_stem(point, worker_path, cfg);

  const std::string& enc = cfg.template_encloser_char;
  const std::string& eol = cfg.template_end_of_line;
  auto core = [&](const std::string& key, const std::string& value) {
    t.lines.push_back(key + " = " + enc + value + enc + eol);
  };

  std::string arguments;
  for (size_t i = 0; i < point.coordinates.size(); ++i) {
    if (i) arguments += cfg.separation_char_cli;
    arguments += point.coordinates[i];
  }

  core(cfg.template_job_name, job_name_for(point.label, worker_path, cfg));
  core(cfg.template_executable, worker_path);
  core(cfg.template_arguments, arguments);
  core(cfg.template_stdout_file, detail::dir_join(cfg.std_output_dir, stem + ".out"));
  core(cfg.template_stderr_file, detail::dir_join(cfg.std_error_dir, stem + ".err"));

  SubstitutionContext ctx{point.coordinates, point.label};
  for (const auto& line : appendix.lines) {
    t.lines.push_back(substitute(line, ctx, cfg.job_template_wildcard));
  }
  return t;
}

inline void write_template(const JobTemplate& t) {
  std::ofstream out(t.filename, std::ios::trunc);
  if (!out) {
    fail(ExitCode::open_error, "cannot open " + t.filename + " for writing");
  }
  for (const auto& line : t.lines) out << line << "\n";
  out.flush();
  if (!out) {
    fail(ExitCode::close_error, "cannot write " + t.filename);
  }
  out.close();
  if (out.fail()) {
    fail(ExitCode::close_error, "cannot close " + t.filename);
  }
}

// Expands the whole sweep to disk, one file per point, and reports the
// count. The disk estimate warns but never stops the run.
inline long long create_templates(const ParameterSpec& spec, const std::string& worker_path,
                                  const TemplateAppendix& appendix, const ConfigTable& cfg,
                                  TransformContext& ctx, std::ostream& out, std::ostream& err,
                                  bool debug = false) {
  struct stat st {};
  if (::stat(worker_path.c_str(), &st) != 0) {
    fail(ExitCode::not_found, "worker executable not found: " + worker_path);
  }
  SweepEnumerator points(spec, cfg, ctx);
  long long m = points.total();
  if (m > cfg.huge_number_points) {
    err << "WARNING: composing " << m << " job templates, estimated "
        << m * cfg.inode_size_kB << " kB of disk space\n";
  }
  while (auto point = points.next()) {
    JobTemplate t = render_template(*point, worker_path, appendix, cfg);
    if (debug) {
      struct stat existing {};
      if (::stat(t.filename.c_str(), &existing) == 0) {
        err << "debug: overwriting existing template " << t.filename << "\n";
      }
    }
    write_template(t);
  }
  out << "Composed " << m << " job templates\n";
  return m;
}

// Finds template files in the working directory: prefix, then the digit
// label, anything, then the suffix. Sorted by index.
inline std::vector<TemplateFile> scan_templates(const ConfigTable& cfg) {
  std::vector<TemplateFile> found;
  const std::string& prefix = cfg.job_template_prefix;
  const std::string& suffix = cfg.job_template_suffix;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(".", ec)) {
    if (!entry.is_regular_file(ec)) continue;
    std::string name = entry.path().filename().string();
    if (name.size() <= prefix.size() + suffix.size()) continue;
    if (name.compare(0, prefix.size(), prefix) != 0) continue;
    if (name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    size_t i = prefix.size();
    std::string label;
    while (i < name.size() - suffix.size() && std::isdigit(static_cast<unsigned char>(name[i]))) {
      label += name[i++];
    }
    if (label.empty()) continue;
    TemplateFile t;
    t.filename = name;
    t.label = label;
    t.index = std::stoll(label);
    found.push_back(std::move(t));
  }
  std::sort(found.begin(), found.end(), [](const TemplateFile& a, const TemplateFile& b) {
    if (a.index != b.index) return a.index < b.index;
    return a.filename < b.filename;
  });
  return found;
}

// Latest known event per job name, as a state join for selectors. Absent
// when the backend cannot report job states.
struct JobStateView {
  std::map<std::string, JobEvent> latest;
};

inline std::vector<TemplateFile> resolve_selector(const Selector& sel,
                                                  const std::vector<TemplateFile>& templates,
                                                  const std::vector<RegistryEntry>& registry,
                                                  const JobStateView* state) {
  if (sel.needs_state() && state == nullptr) {
    fail(ExitCode::no_jobs, "no job found coming from template in the list");
  }
  auto entry_for = [&](const std::string& filename) -> const RegistryEntry* {
    for (const auto& e : registry)
      if (e.filename == filename) return &e;
    return nullptr;
  };

  std::vector<TemplateFile> matched;
  for (const auto& t : templates) {
    const RegistryEntry* entry = entry_for(t.filename);
    bool take = false;
    switch (sel.kind) {
      case SelectorKind::all:
        take = true;
        break;
      case SelectorKind::range:
        take = t.index >= sel.from && t.index <= sel.to;
        break;
      case SelectorKind::submitted:
        take = entry != nullptr;
        break;
      case SelectorKind::unsubmitted:
        take = entry == nullptr;
        break;
      case SelectorKind::finished:
      case SelectorKind::unfinished:
      case SelectorKind::successful:
      case SelectorKind::unsuccessful: {
        if (entry == nullptr || entry->purged) break;
        auto it = state->latest.find(entry->job_name);
        bool has_event = it != state->latest.end();
        bool terminal = has_event && is_terminal(it->second);
        bool successful = has_event && is_successful(it->second);
        if (sel.kind == SelectorKind::finished) take = terminal;
        if (sel.kind == SelectorKind::unfinished) take = !terminal;
        if (sel.kind == SelectorKind::successful) take = successful;
        if (sel.kind == SelectorKind::unsuccessful) take = terminal && !successful;
        break;
      }
    }
    if (take) matched.push_back(t);
  }
  return matched;
}

// Removes matched template files. A state selector that matches nothing
// is the "no job found" error; the structural selectors just report zero.
inline long long delete_templates(const Selector& sel, const std::vector<TemplateFile>& templates,
                                  const std::vector<RegistryEntry>& registry,
                                  const JobStateView* state, std::ostream& out) {
  auto matched = resolve_selector(sel, templates, registry, state);
  if (matched.empty() && sel.needs_state()) {
    fail(ExitCode::no_jobs, "no job found coming from template in the list");
  }
  for (const auto& t : matched) {
    if (::unlink(t.filename.c_str()) != 0) {
      fail(ExitCode::open_error, "cannot delete " + t.filename);
    }
  }
  out << "Deleted " << matched.size() << " job templates\n";
  return static_cast<long long>(matched.size());
}

// The submit-relevant fields of a template on disk, read back with the
// active keyword dialect.
struct TemplateFields {
  std::string name;
  std::string executable;
  std::string arguments;
  std::string stdout_file;
  std::string stderr_file;
};

inline TemplateFields read_template_fields(const std::string& filename, const ConfigTable& cfg) {
  std::ifstream in(filename);
  if (!in) {
    fail(ExitCode::open_error, "cannot open template " + filename);
  }
  TemplateFields fields;
  const std::string& enc = cfg.template_encloser_char;
  const std::string& eol = cfg.template_end_of_line;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto pos = line.find(" = ");
    if (pos == std::string::npos) continue;
    std::string key = line.substr(0, pos);
    std::string value = line.substr(pos + 3);
    if (!eol.empty() && value.size() >= eol.size() &&
        value.compare(value.size() - eol.size(), eol.size(), eol) == 0) {
      value.erase(value.size() - eol.size());
    }
    if (!enc.empty() && value.size() >= 2 * enc.size() &&
        value.compare(0, enc.size(), enc) == 0 &&
        value.compare(value.size() - enc.size(), enc.size(), enc) == 0) {
      value = value.substr(enc.size(), value.size() - 2 * enc.size());
    }
    if (key == cfg.template_job_name) fields.name = value;
    else if (key == cfg.template_executable) fields.executable = value;
    else if (key == cfg.template_arguments) fields.arguments = value;
    else if (key == cfg.template_stdout_file) fields.stdout_file = value;
    else if (key == cfg.template_stderr_file) fields.stderr_file = value;
  }
  if (fields.executable.empty()) {
    fail(ExitCode::parse_internal, "template " + filename + " lacks an executable definition");
  }
  if (fields.name.empty()) {
    fail(ExitCode::parse_internal, "template " + filename + " lacks a job name definition");
  }
  return fields;
}

}  // namespace jobsweep
