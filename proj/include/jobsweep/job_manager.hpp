#pragma once

#include <unistd.h>

#include <algorithm>
#include <ctime>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jobsweep/backends.hpp"
#include "jobsweep/config.hpp"
#include "jobsweep/errors.hpp"
#include "jobsweep/events.hpp"
#include "jobsweep/registry.hpp"
#include "jobsweep/template_store.hpp"

namespace jobsweep {

// Printed when the configured scheduler cannot be reached; create and
// delete still work in that situation.
inline void print_backend_warning(std::ostream& err) {
  err << "WARNING: GridWay location not set up.\n"
      << "This means that the usability of this tool is limited to create and delete \n"
      << "job templates. Please identify your $GW_LOCATION directory and set the \n"
      << "parameter to that value with \"--config GW_LOCATION=value\".\n";
}

namespace detail {

inline JobStateView build_state_view() {
  JobStateView view;
  for (auto& e : EventLog(kEventLogFile).read_all()) {
    view.latest[e.job_name] = std::move(e);
  }
  return view;
}

inline void require_backend(Backend& backend, std::ostream& err) {
  if (backend.available()) return;
  print_backend_warning(err);
  fail(ExitCode::not_found, "scheduler backend unavailable");
}

// Maps selected templates to their registry records, keeping selection
// order. Jobs dropped from management (purged) are skipped.
inline std::vector<RegistryEntry> live_entries(const std::vector<TemplateFile>& selected,
                                               const std::vector<RegistryEntry>& registry) {
  std::vector<RegistryEntry> out;
  for (const auto& t : selected) {
    for (const auto& e : registry) {
      if (e.filename == t.filename && !e.purged) {
        out.push_back(e);
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

inline int submit_jobs(const Selector& selector, const ConfigTable& cfg, std::ostream& out,
                       std::ostream& err) {
  auto backend = make_backend(cfg);
  detail::require_backend(*backend, err);

  std::vector<TemplateFile> templates = scan_templates(cfg);
  JobRegistry registry(kRegistryFile);
  std::vector<RegistryEntry> records = registry.load();
  std::optional<JobStateView> state;
  if (backend->supports_state()) state = detail::build_state_view();

  std::vector<TemplateFile> selected =
      resolve_selector(selector, templates, records, state ? &*state : nullptr);
  if (selected.empty()) {
    fail(ExitCode::no_jobs, "no job found coming from template in the list");
  }

  for (const auto& t : selected) {
    JobHandle handle = backend->submit_job(t.filename);
    RegistryEntry entry;
    entry.filename = t.filename;
    entry.job_name = handle.name;
    entry.job_id = handle.id;
    entry.epoch = static_cast<long long>(::time(nullptr));
    entry.purged = false;
    registry.upsert(entry);
  }
  backend->finalize_submissions();

  out << "Submitted " << selected.size() << " jobs from templates\n";
  return 0;
}

inline int kill_jobs(const Selector& selector, const std::string& signal, const ConfigTable& cfg,
                     std::ostream& out, std::ostream& err) {
  auto backend = make_backend(cfg);
  detail::require_backend(*backend, err);

  std::vector<TemplateFile> templates = scan_templates(cfg);
  JobRegistry registry(kRegistryFile);
  std::vector<RegistryEntry> records = registry.load();
  std::optional<JobStateView> state;
  if (backend->supports_state()) state = detail::build_state_view();

  std::vector<TemplateFile> selected =
      resolve_selector(selector, templates, records, state ? &*state : nullptr);
  std::vector<RegistryEntry> candidates = detail::live_entries(selected, records);
  if (state) {
    // Terminal jobs have nothing left to signal.
    std::erase_if(candidates, [&state](const RegistryEntry& e) {
      auto it = state->latest.find(e.job_name);
      return it != state->latest.end() && is_terminal(it->second);
    });
  }
  if (candidates.empty()) {
    fail(ExitCode::no_jobs, "no job found coming from template in the list");
  }

  for (const auto& entry : candidates) backend->kill_job(entry, signal);

  out << "Killed " << candidates.size() << " jobs from templates\n";
  return 0;
}

inline int purge_jobs(const Selector& selector, const ConfigTable& cfg, std::ostream& out,
                      std::ostream& err) {
  auto backend = make_backend(cfg);
  detail::require_backend(*backend, err);

  std::vector<TemplateFile> templates = scan_templates(cfg);
  JobRegistry registry(kRegistryFile);
  std::vector<RegistryEntry> records = registry.load();
  std::optional<JobStateView> state;
  if (backend->supports_state()) state = detail::build_state_view();

  std::vector<TemplateFile> selected =
      resolve_selector(selector, templates, records, state ? &*state : nullptr);
  std::vector<RegistryEntry> candidates = detail::live_entries(selected, records);
  if (candidates.empty()) {
    fail(ExitCode::no_jobs, "no job found coming from template in the list");
  }

  for (const auto& entry : candidates) {
    backend->purge_job(entry);
    RegistryEntry updated = entry;
    updated.purged = true;
    registry.upsert(updated);
  }

  out << "Purged " << candidates.size() << " jobs from templates\n";
  return 0;
}

enum class InfoMode { now, history, evolution };

inline std::optional<InfoMode> parse_info_mode(const std::string& token) {
  if (token == "now") return InfoMode::now;
  if (token == "history") return InfoMode::history;
  if (token == "evolution") return InfoMode::evolution;
  return std::nullopt;
}

namespace detail {

inline void print_snapshot(const std::vector<RegistryEntry>& entries, const JobStateView& state,
                           std::ostream& out) {
  out << kEventHeader << "\n";
  for (const auto& entry : entries) {
    auto it = state.latest.find(entry.job_name);
    if (it != state.latest.end()) out << format_event(it->second) << "\n";
  }
}

inline bool snapshot_terminal(const std::vector<RegistryEntry>& entries,
                              const JobStateView& state) {
  for (const auto& entry : entries) {
    auto it = state.latest.find(entry.job_name);
    if (it == state.latest.end() || !is_terminal(it->second)) return false;
  }
  return true;
}

}  // namespace detail

inline int info_jobs(InfoMode mode, const Selector& selector, const ConfigTable& cfg,
                     std::ostream& out, std::ostream& err) {
  auto backend = make_backend(cfg);
  detail::require_backend(*backend, err);

  std::vector<TemplateFile> templates = scan_templates(cfg);
  JobRegistry registry(kRegistryFile);
  std::vector<RegistryEntry> records = registry.load();

  if (!backend->supports_state()) {
    if (selector.needs_state()) {
      fail(ExitCode::no_jobs, "no job found coming from template in the list");
    }
    err << "WARNING: the configured scheduler does not report job state\n";
    out << kEventHeader << "\n";
    return 0;
  }

  JobStateView state = detail::build_state_view();
  std::vector<TemplateFile> selected = resolve_selector(selector, templates, records, &state);
  std::vector<RegistryEntry> entries = detail::live_entries(selected, records);

  switch (mode) {
    case InfoMode::now:
      detail::print_snapshot(entries, state, out);
      break;
    case InfoMode::history: {
      out << kEventHeader << "\n";
      std::vector<JobEvent> events = EventLog(kEventLogFile).read_all();
      for (const auto& entry : entries) {
        for (const auto& e : events) {
          if (e.job_name == entry.job_name) out << format_event(e) << "\n";
        }
      }
      break;
    }
    case InfoMode::evolution: {
      for (;;) {
        detail::print_snapshot(entries, state, out);
        if (detail::snapshot_terminal(entries, state)) break;
        out << "\n";
        out.flush();
        ::usleep(static_cast<useconds_t>(std::max(1LL, cfg.info_poll_seconds) * 1000000));
        state = detail::build_state_view();
      }
      break;
    }
  }
  return 0;
}

}  // namespace jobsweep
