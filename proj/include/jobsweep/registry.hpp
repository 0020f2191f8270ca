#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jobsweep/errors.hpp"

namespace jobsweep {

inline const char* kRegistryFile = ".sweep_registry";

// One template's submission record. A purged entry stays on file so the
// template still counts as submitted, but it no longer matches state
// selectors.
struct RegistryEntry {
  std::string filename;
  std::string job_name;
  std::string job_id;
  long long epoch = 0;
  bool purged = false;

  bool operator==(const RegistryEntry&) const = default;
};

namespace detail {

inline RegistryEntry parse_registry_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == '\t') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  if (fields.size() != 5) {
    fail(ExitCode::parse_internal, "malformed registry record: '" + line + "'");
  }
  RegistryEntry e;
  e.filename = fields[0];
  e.job_name = fields[1];
  e.job_id = fields[2];
  try {
    e.epoch = std::stoll(fields[3]);
  } catch (const std::exception&) {
    fail(ExitCode::parse_internal, "malformed registry epoch in: '" + line + "'");
  }
  if (fields[4] == "0") {
    e.purged = false;
  } else if (fields[4] == "1") {
    e.purged = true;
  } else {
    fail(ExitCode::parse_internal, "malformed registry purge flag in: '" + line + "'");
  }
  return e;
}

inline std::string format_registry_line(const RegistryEntry& e) {
  return e.filename + "\t" + e.job_name + "\t" + e.job_id + "\t" + std::to_string(e.epoch) +
         "\t" + (e.purged ? "1" : "0");
}

}  // namespace detail

// Template-to-job association persisted next to the templates. All access
// goes through one file lock, since the CLI and backend shepherds may
// touch it concurrently.
class JobRegistry {
 public:
  explicit JobRegistry(std::string path) : path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  std::vector<RegistryEntry> load() const {
    int fd = ::open(path_.c_str(), O_RDONLY);
    if (fd < 0) return {};
    ::flock(fd, LOCK_SH);
    std::string content = read_fd(fd);
    ::close(fd);
    return parse(content);
  }

  // Read-modify-write under an exclusive lock.
  void update(const std::function<void(std::vector<RegistryEntry>&)>& mutate) const {
    int fd = ::open(path_.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd < 0) {
      fail(ExitCode::open_error, "cannot open registry " + path_ + ": " + std::strerror(errno));
    }
    ::flock(fd, LOCK_EX);
    std::vector<RegistryEntry> entries;
    try {
      entries = parse(read_fd(fd));
      mutate(entries);
    } catch (...) {
      ::close(fd);
      throw;
    }
    std::string out;
    for (const auto& e : entries) out += detail::format_registry_line(e) + "\n";
    bool ok = ::lseek(fd, 0, SEEK_SET) == 0 && ::ftruncate(fd, 0) == 0;
    if (ok && !out.empty()) {
      ok = ::write(fd, out.data(), out.size()) == static_cast<ssize_t>(out.size());
    }
    if (::close(fd) != 0 || !ok) {
      fail(ExitCode::close_error, "cannot write registry " + path_);
    }
  }

  // Replaces any previous record for the template; one record per
  // template keeps resubmission semantics simple.
  void upsert(const RegistryEntry& entry) const {
    update([&entry](std::vector<RegistryEntry>& entries) {
      for (auto& e : entries) {
        if (e.filename == entry.filename) {
          e = entry;
          return;
        }
      }
      entries.push_back(entry);
    });
  }

  std::optional<RegistryEntry> find(const std::string& filename) const {
    for (const auto& e : load())
      if (e.filename == filename) return e;
    return std::nullopt;
  }

 private:
  static std::string read_fd(int fd) {
    std::string content;
    char buf[4096];
    ssize_t n;
    while ((n = ::read(fd, buf, sizeof(buf))) > 0) content.append(buf, static_cast<size_t>(n));
    return content;
  }

  static std::vector<RegistryEntry> parse(const std::string& content) {
    std::vector<RegistryEntry> entries;
    std::string line;
    for (char c : content) {
      if (c == '\n') {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) entries.push_back(detail::parse_registry_line(line));
        line.clear();
      } else {
        line += c;
      }
    }
    if (!line.empty()) entries.push_back(detail::parse_registry_line(line));
    return entries;
  }

  std::string path_;
};

}  // namespace jobsweep
