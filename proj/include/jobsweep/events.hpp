#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jobsweep/errors.hpp"

namespace jobsweep {

inline const char* kEventHeader = "JOB_NAME,LOCALTIME,TIME,MANAGER,STATUS,QUEUE_NAME,HOST_NAME,EXIT_STATUS";

enum class Manager { dispatch, execution };

enum class JobStatus {
  pending,
  prolog,
  wrapper,
  active,
  done,
  failed,
  epilog_std,
  epilog,
  epilog_fail,
};

inline const char* manager_name(Manager m) {
  return m == Manager::dispatch ? "DISPATCH" : "EXECUTION";
}

inline std::optional<Manager> manager_from(const std::string& s) {
  if (s == "DISPATCH") return Manager::dispatch;
  if (s == "EXECUTION") return Manager::execution;
  return std::nullopt;
}

inline const char* status_name(JobStatus s) {
  switch (s) {
    case JobStatus::pending: return "PENDING";
    case JobStatus::prolog: return "PROLOG";
    case JobStatus::wrapper: return "WRAPPER";
    case JobStatus::active: return "ACTIVE";
    case JobStatus::done: return "DONE";
    case JobStatus::failed: return "FAILED";
    case JobStatus::epilog_std: return "EPILOG_STD";
    case JobStatus::epilog: return "EPILOG";
    case JobStatus::epilog_fail: return "EPILOG_FAIL";
  }
  return "?";
}

inline std::optional<JobStatus> status_from(const std::string& s) {
  static const std::pair<const char*, JobStatus> table[] = {
      {"PENDING", JobStatus::pending},       {"PROLOG", JobStatus::prolog},
      {"WRAPPER", JobStatus::wrapper},       {"ACTIVE", JobStatus::active},
      {"DONE", JobStatus::done},             {"FAILED", JobStatus::failed},
      {"EPILOG_STD", JobStatus::epilog_std}, {"EPILOG", JobStatus::epilog},
      {"EPILOG_FAIL", JobStatus::epilog_fail}};
  for (const auto& [name, value] : table)
    if (s == name) return value;
  return std::nullopt;
}

// One scheduler status transition, one CSV row.
struct JobEvent {
  std::string job_name;
  long long time = 0;  // epoch seconds; LOCALTIME derives from it
  Manager manager = Manager::dispatch;
  JobStatus status = JobStatus::pending;
  std::string queue_name;
  std::string host_name;
  std::optional<int> exit_status;

  bool operator==(const JobEvent&) const = default;
};

// A job is finished once the dispatch manager reports DONE or FAILED;
// execution-level DONE/FAILED still has epilog steps ahead.
inline bool is_terminal(const JobEvent& e) {
  return e.manager == Manager::dispatch &&
         (e.status == JobStatus::done || e.status == JobStatus::failed);
}

inline bool is_successful(const JobEvent& e) {
  return is_terminal(e) && e.status == JobStatus::done && e.exit_status && *e.exit_status == 0;
}

inline std::string format_localtime(long long epoch) {
  std::time_t t = static_cast<std::time_t>(epoch);
  std::tm tm{};
  localtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%a %b %e %H:%M:%S %Y", &tm);
  return buf;
}

inline std::string format_event(const JobEvent& e) {
  std::string out = e.job_name;
  out += ",";
  out += format_localtime(e.time);
  out += ",";
  out += std::to_string(e.time);
  out += ",";
  out += manager_name(e.manager);
  out += ",";
  out += status_name(e.status);
  out += ",";
  out += e.queue_name;
  out += ",";
  out += e.host_name;
  out += ",";
  if (e.exit_status) out += std::to_string(*e.exit_status);
  return out;
}

inline JobEvent parse_event_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  if (fields.size() != 8) {
    fail(ExitCode::parse_internal, "malformed event record: '" + line + "'");
  }
  JobEvent e;
  e.job_name = fields[0];
  try {
    e.time = std::stoll(fields[2]);
  } catch (const std::exception&) {
    fail(ExitCode::parse_internal, "malformed event time in: '" + line + "'");
  }
  auto mgr = manager_from(fields[3]);
  auto st = status_from(fields[4]);
  if (!mgr || !st) {
    fail(ExitCode::parse_internal, "malformed event state in: '" + line + "'");
  }
  e.manager = *mgr;
  e.status = *st;
  e.queue_name = fields[5];
  e.host_name = fields[6];
  if (!fields[7].empty()) {
    try {
      e.exit_status = std::stoi(fields[7]);
    } catch (const std::exception&) {
      fail(ExitCode::parse_internal, "malformed event exit status in: '" + line + "'");
    }
  }
  return e;
}

// Append-only event log shared by every process touching the sweep.
// Appends take an exclusive lock so concurrent writers produce whole
// lines.
class EventLog {
 public:
  explicit EventLog(std::string path) : path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  void append(const JobEvent& e) const {
    int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
    if (fd < 0) {
      fail(ExitCode::open_error, "cannot open event log " + path_ + ": " + std::strerror(errno));
    }
    ::flock(fd, LOCK_EX);
    std::string line = format_event(e) + "\n";
    ssize_t written = ::write(fd, line.data(), line.size());
    bool ok = written == static_cast<ssize_t>(line.size());
    if (::close(fd) != 0 || !ok) {
      fail(ExitCode::close_error, "cannot write event log " + path_);
    }
  }

  std::vector<JobEvent> read_all() const {
    std::vector<JobEvent> events;
    std::ifstream in(path_);
    if (!in) return events;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      events.push_back(parse_event_line(line));
    }
    return events;
  }

 private:
  std::string path_;
};

}  // namespace jobsweep
