#pragma once

#include <fcntl.h>
#include <signal.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jobsweep/config.hpp"
#include "jobsweep/errors.hpp"
#include "jobsweep/events.hpp"
#include "jobsweep/registry.hpp"
#include "jobsweep/template_store.hpp"

namespace jobsweep {

inline const char* kEventLogFile = ".sweep_events";
inline const char* kSlotDir = ".sweep_slots";
inline const char* kSimStateFile = ".sweep_simstate";

struct JobHandle {
  std::string id;
  std::string name;
};

// Scheduler contract: hand over a template, observe events, stop or drop
// jobs. Event history lives in the shared append-only log.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual bool available() const = 0;
  virtual bool supports_state() const = 0;
  virtual JobHandle submit_job(const std::string& template_file) = 0;

  // Called once after a submission batch; the simulator runs its queue
  // here so that in-flight jobs can still be killed beforehand.
  virtual void finalize_submissions() {}

  virtual void kill_job(const RegistryEntry& entry, const std::string& signal) = 0;
  virtual void purge_job(const RegistryEntry& entry) { (void)entry; }

  // Blocks until every entry's job has a terminal event, or the timeout
  // elapses. Returns whether all jobs finished.
  virtual bool wait_jobs(const std::vector<RegistryEntry>& entries, long timeout_ms) = 0;

  virtual std::vector<JobEvent> events(const std::string& job_name) const {
    std::vector<JobEvent> out;
    for (auto& e : EventLog(kEventLogFile).read_all()) {
      if (e.job_name == job_name) out.push_back(std::move(e));
    }
    return out;
  }
};

namespace detail {

inline std::string local_hostname() {
  char buf[256];
  if (::gethostname(buf, sizeof(buf)) != 0) return "localhost";
  buf[sizeof(buf) - 1] = '\0';
  return buf;
}

inline int parse_signal_token(const std::string& token) {
  if (token.empty()) return SIGTERM;
  std::string t = token;
  if (t.size() > 3 && t.compare(0, 3, "SIG") == 0) t = t.substr(3);
  bool digits = !t.empty();
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
  if (digits) return std::stoi(t);
  static const std::pair<const char*, int> names[] = {
      {"TERM", SIGTERM}, {"KILL", SIGKILL}, {"INT", SIGINT},   {"HUP", SIGHUP},
      {"QUIT", SIGQUIT}, {"USR1", SIGUSR1}, {"USR2", SIGUSR2}, {"STOP", SIGSTOP},
      {"CONT", SIGCONT}};
  for (const auto& [name, value] : names)
    if (t == name) return value;
  fail(ExitCode::usage, "unknown signal '" + token + "'");
}

// Splits an ARGUMENTS value on the CLI separator, honoring double quotes
// as grouping and stripping them from the argument.
inline std::vector<std::string> split_cli_arguments(const std::string& text,
                                                    const ConfigTable& cfg) {
  char sep = cfg.separation_char_cli.empty() ? ' ' : cfg.separation_char_cli[0];
  std::vector<std::string> args;
  std::string current;
  bool in_quotes = false;
  bool any = false;
  for (char c : text) {
    if (c == '"') {
      in_quotes = !in_quotes;
      any = true;
      continue;
    }
    if (!in_quotes && c == sep) {
      if (any) args.push_back(current);
      current.clear();
      any = false;
      continue;
    }
    current += c;
    any = true;
  }
  if (any) args.push_back(current);
  return args;
}

inline std::string kill_marker_path(const std::string& job_id) {
  return ".sweep_kill." + job_id;
}

inline bool file_exists(const std::string& path) {
  struct stat st {};
  return ::stat(path.c_str(), &st) == 0;
}

inline bool is_executable_file(const std::string& path) {
  struct stat st {};
  return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
         ::access(path.c_str(), X_OK) == 0;
}

// Resolves a scheduler command: explicit path, then the configured
// GridWay directory variable's bin/, then PATH.
inline std::optional<std::string> resolve_command(const std::string& cmd,
                                                  const ConfigTable& cfg) {
  if (cmd.empty()) return std::nullopt;
  if (cmd.find('/') != std::string::npos) {
    if (is_executable_file(cmd)) return cmd;
    return std::nullopt;
  }
  if (!cfg.gridway_dir_var.empty()) {
    const char* root = std::getenv(cfg.gridway_dir_var.c_str());
    if (root && *root) {
      std::string candidate = std::string(root) + "/bin/" + cmd;
      if (is_executable_file(candidate)) return candidate;
    }
  }
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::string dirs = path;
  size_t start = 0;
  while (start <= dirs.size()) {
    size_t end = dirs.find(':', start);
    if (end == std::string::npos) end = dirs.size();
    std::string dir = dirs.substr(start, end - start);
    if (dir.empty()) dir = ".";
    std::string candidate = dir + "/" + cmd;
    if (is_executable_file(candidate)) return candidate;
    start = end + 1;
  }
  return std::nullopt;
}

// Runs a command to completion with inherited standard streams. Returns
// the exit status, or -1 when the command could not be executed.
inline int run_inherit(const std::vector<std::string>& argv) {
  std::vector<char*> cargv;
  cargv.reserve(argv.size() + 1);
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  int errpipe[2];
  if (::pipe2(errpipe, O_CLOEXEC) != 0) return -1;
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(errpipe[0]);
    ::close(errpipe[1]);
    return -1;
  }
  if (pid == 0) {
    ::execv(cargv[0], cargv.data());
    char c = 1;
    ssize_t ignored = ::write(errpipe[1], &c, 1);
    (void)ignored;
    ::_exit(127);
  }
  ::close(errpipe[1]);
  char c;
  bool exec_failed = ::read(errpipe[0], &c, 1) > 0;
  ::close(errpipe[0]);
  int status = 0;
  ::waitpid(pid, &status, 0);
  if (exec_failed || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

inline bool all_terminal(const std::vector<JobEvent>& events,
                         const std::vector<std::string>& names) {
  std::map<std::string, const JobEvent*> latest;
  for (const auto& e : events) latest[e.job_name] = &e;
  for (const auto& n : names) {
    auto it = latest.find(n);
    if (it == latest.end() || !is_terminal(*it->second)) return false;
  }
  return true;
}

}  // namespace detail

// Runs each job as a detached local process behind a small shepherd that
// records the outcome. Submission returns immediately; at most
// max_parallel workers hold slots at a time.
class LocalBackend : public Backend {
 public:
  explicit LocalBackend(const ConfigTable& cfg) : cfg_(cfg), log_(kEventLogFile) {}

  bool available() const override { return true; }
  bool supports_state() const override { return true; }

  JobHandle submit_job(const std::string& template_file) override {
    TemplateFields fields = read_template_fields(template_file, cfg_);
    ::mkdir(kSlotDir, 0755);

    JobEvent pending;
    pending.job_name = fields.name;
    pending.time = static_cast<long long>(::time(nullptr));
    pending.manager = Manager::dispatch;
    pending.status = JobStatus::pending;
    log_.append(pending);

    int handoff[2];
    if (::pipe(handoff) != 0) {
      fail(ExitCode::exec_error, "cannot create pipe: " + std::string(std::strerror(errno)));
    }
    pid_t first = ::fork();
    if (first < 0) {
      ::close(handoff[0]);
      ::close(handoff[1]);
      fail(ExitCode::exec_error, "cannot fork: " + std::string(std::strerror(errno)));
    }
    if (first == 0) {
      ::close(handoff[0]);
      ::setsid();
      pid_t shepherd = ::fork();
      if (shepherd == 0) {
        ::close(handoff[1]);
        run_shepherd(fields);
      }
      pid_t group = ::getpid();
      ssize_t ignored = ::write(handoff[1], &group, sizeof(group));
      (void)ignored;
      ::_exit(shepherd < 0 ? 1 : 0);
    }
    ::close(handoff[1]);
    pid_t group = 0;
    ssize_t got = ::read(handoff[0], &group, sizeof(group));
    ::close(handoff[0]);
    int status = 0;
    ::waitpid(first, &status, 0);
    if (got != static_cast<ssize_t>(sizeof(group)) ||
        (WIFEXITED(status) && WEXITSTATUS(status) != 0)) {
      fail(ExitCode::exec_error, "cannot start job for " + template_file);
    }
    return {std::to_string(group), fields.name};
  }

  void kill_job(const RegistryEntry& entry, const std::string& signal) override {
    int sig = detail::parse_signal_token(signal);
    long long pgid = 0;
    try {
      pgid = std::stoll(entry.job_id);
    } catch (const std::exception&) {
      fail(ExitCode::parse_internal, "malformed job id '" + entry.job_id + "' in registry");
    }
    std::string marker = detail::kill_marker_path(entry.job_id);
    {
      std::ofstream mark(marker);
    }
    int rc = ::kill(static_cast<pid_t>(-pgid), sig);
    bool gone = rc != 0 && errno == ESRCH;
    if (sig == SIGKILL || gone) {
      // The shepherd cannot report anymore; close the record here.
      auto history = events(entry.job_name);
      if (history.empty() || !is_terminal(history.back())) {
        JobEvent failed;
        failed.job_name = entry.job_name;
        failed.time = static_cast<long long>(::time(nullptr));
        failed.manager = Manager::dispatch;
        failed.status = JobStatus::failed;
        failed.queue_name = "local";
        failed.host_name = detail::local_hostname();
        log_.append(failed);
      }
      ::unlink(marker.c_str());
    }
  }

  bool wait_jobs(const std::vector<RegistryEntry>& entries, long timeout_ms) override {
    std::vector<std::string> names;
    names.reserve(entries.size());
    for (const auto& e : entries) names.push_back(e.job_name);
    long waited = 0;
    for (;;) {
      if (detail::all_terminal(log_.read_all(), names)) return true;
      if (waited >= timeout_ms) return false;
      ::usleep(25000);
      waited += 25;
    }
  }

 private:
  [[noreturn]] void run_shepherd(const TemplateFields& fields) {
    ::signal(SIGTERM, SIG_IGN);
    ::signal(SIGINT, SIG_IGN);
    ::signal(SIGHUP, SIG_IGN);
    int devnull = ::open("/dev/null", O_RDWR);
    if (devnull >= 0) {
      ::dup2(devnull, 0);
      ::dup2(devnull, 1);
      ::dup2(devnull, 2);
      if (devnull > 2) ::close(devnull);
    }
    std::string marker = detail::kill_marker_path(std::to_string(::getpgrp()));

    int slot_fd = acquire_slot(marker, fields.name);
    if (slot_fd < 0) ::_exit(0);  // killed while queued; event already written

    append_quiet(make_event(fields.name, Manager::execution, JobStatus::active));

    int execpipe[2];
    if (::pipe2(execpipe, O_CLOEXEC) != 0) {
      append_quiet(make_event(fields.name, Manager::dispatch, JobStatus::failed));
      ::_exit(0);
    }
    pid_t worker = ::fork();
    if (worker == 0) {
      run_worker(fields, execpipe[1]);
    }
    ::close(execpipe[1]);
    bool spawn_failed = worker < 0;
    if (!spawn_failed) {
      char c;
      spawn_failed = ::read(execpipe[0], &c, 1) > 0;
    }
    ::close(execpipe[0]);

    int status = 0;
    if (worker > 0) ::waitpid(worker, &status, 0);

    JobEvent terminal = make_event(fields.name, Manager::dispatch, JobStatus::failed);
    if (!spawn_failed && WIFEXITED(status)) {
      terminal.status = JobStatus::done;
      terminal.exit_status = WEXITSTATUS(status);
    }
    append_quiet(terminal);
    ::unlink(marker.c_str());
    ::_exit(0);
  }

  [[noreturn]] void run_worker(const TemplateFields& fields, int errfd) {
    auto bail = [errfd]() {
      char c = 1;
      ssize_t ignored = ::write(errfd, &c, 1);
      (void)ignored;
      ::_exit(127);
    };
    int in = ::open("/dev/null", O_RDONLY);
    if (in < 0) bail();
    int out = ::open(fields.stdout_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (out < 0) bail();
    int err = ::open(fields.stderr_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (err < 0) bail();
    ::dup2(in, 0);
    ::dup2(out, 1);
    ::dup2(err, 2);
    if (in > 2) ::close(in);
    if (out > 2) ::close(out);
    if (err > 2) ::close(err);

    std::string exe = fields.executable;
    if (exe.find('/') == std::string::npos) exe = "./" + exe;
    std::vector<std::string> args = detail::split_cli_arguments(fields.arguments, cfg_);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(exe.c_str()));
    for (auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    ::execv(exe.c_str(), argv.data());
    bail();
    ::_exit(127);
  }

  // Claims one of max_parallel slot files; -1 means the job was killed
  // while waiting, with its terminal event already logged.
  int acquire_slot(const std::string& marker, const std::string& job_name) {
    long long slots = std::max(1LL, cfg_.max_parallel);
    for (;;) {
      if (detail::file_exists(marker)) {
        append_quiet(make_event(job_name, Manager::dispatch, JobStatus::failed));
        ::unlink(marker.c_str());
        return -1;
      }
      for (long long k = 0; k < slots; ++k) {
        std::string path = std::string(kSlotDir) + "/slot" + std::to_string(k);
        int fd = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd < 0) continue;
        if (::flock(fd, LOCK_EX | LOCK_NB) == 0) return fd;
        ::close(fd);
      }
      ::usleep(10000);
    }
  }

  JobEvent make_event(const std::string& name, Manager m, JobStatus s) const {
    JobEvent e;
    e.job_name = name;
    e.time = static_cast<long long>(::time(nullptr));
    e.manager = m;
    e.status = s;
    e.queue_name = "local";
    e.host_name = detail::local_hostname();
    return e;
  }

  void append_quiet(const JobEvent& e) const {
    try {
      log_.append(e);
    } catch (const ToolError&) {
      // Detached shepherd has nowhere to report; losing the event is the
      // only option left.
    }
  }

  ConfigTable cfg_;
  EventLog log_;
};

// Deterministic discrete-event stand-in for a metascheduler. Jobs queue
// at submission and run when the batch is finalized; hosts that refuse
// execution accumulate penalties so later jobs avoid them.
class SimBackend : public Backend {
 public:
  struct SimHost {
    std::string queue;
    std::string host;
    bool permits = true;
    long long delay = 1;
  };

  explicit SimBackend(const ConfigTable& cfg) : cfg_(cfg), log_(kEventLogFile) {
    hosts_ = parse_hosts(cfg.sim_hosts);
    load_state();
  }

  bool available() const override { return true; }
  bool supports_state() const override { return true; }

  JobHandle submit_job(const std::string& template_file) override {
    TemplateFields fields = read_template_fields(template_file, cfg_);
    std::string id = "sim" + std::to_string(counter_++);
    log_.append(make_event(fields.name, clock_, Manager::dispatch, JobStatus::pending, "", ""));
    queued_.push_back(fields.name);
    return {id, fields.name};
  }

  void finalize_submissions() override {
    long long batch_end = clock_;
    for (const auto& name : queued_) {
      batch_end = std::max(batch_end, run_lifecycle(name, clock_));
    }
    queued_.clear();
    clock_ = batch_end;
    save_state();
  }

  void kill_job(const RegistryEntry& entry, const std::string& signal) override {
    (void)signal;  // the simulator has no processes to signal
    auto it = std::find(queued_.begin(), queued_.end(), entry.job_name);
    if (it == queued_.end()) return;
    queued_.erase(it);
    log_.append(make_event(entry.job_name, clock_, Manager::dispatch, JobStatus::failed, "", ""));
    save_state();
  }

  bool wait_jobs(const std::vector<RegistryEntry>& entries, long) override {
    finalize_submissions();
    std::vector<std::string> names;
    for (const auto& e : entries) names.push_back(e.job_name);
    return detail::all_terminal(log_.read_all(), names);
  }

  const std::vector<SimHost>& hosts() const { return hosts_; }
  long long penalty(const std::string& host) const {
    auto it = penalties_.find(host);
    return it == penalties_.end() ? 0 : it->second;
  }

 private:
  static std::vector<SimHost> parse_hosts(const std::string& text) {
    std::vector<SimHost> hosts;
    std::string entry;
    auto flush = [&hosts](const std::string& token) {
      if (token.empty()) return;
      std::vector<std::string> parts;
      std::string field;
      for (char c : token) {
        if (c == ':') {
          parts.push_back(field);
          field.clear();
        } else {
          field += c;
        }
      }
      parts.push_back(field);
      if (parts.size() != 4 || parts[0].empty() || parts[1].empty() ||
          (parts[2] != "0" && parts[2] != "1")) {
        fail(ExitCode::usage, "malformed sim_hosts entry '" + token +
                                  "' (expected queue:host:permit:delay)");
      }
      SimHost h;
      h.queue = parts[0];
      h.host = parts[1];
      h.permits = parts[2] == "1";
      try {
        h.delay = std::stoll(parts[3]);
      } catch (const std::exception&) {
        fail(ExitCode::usage, "malformed sim_hosts delay in '" + token + "'");
      }
      hosts.push_back(std::move(h));
    };
    for (char c : text) {
      if (c == ',') {
        flush(entry);
        entry.clear();
      } else {
        entry += c;
      }
    }
    flush(entry);
    if (hosts.empty()) {
      fail(ExitCode::usage, "sim_hosts declares no hosts");
    }
    return hosts;
  }

  // Runs one job to its terminal event, charging penalties as it goes.
  // Returns the terminal time.
  long long run_lifecycle(const std::string& name, long long start) {
    long long t = start;
    long long attempts = 0;
    bool first = true;
    for (;;) {
      const SimHost& h = pick_host();
      t += first ? 3 : 9;
      first = false;
      log_.append(make_event(name, t, Manager::dispatch, JobStatus::prolog, "", ""));
      t += 1;
      log_.append(make_event(name, t, Manager::dispatch, JobStatus::wrapper, h.queue, h.host));
      if (!h.permits) {
        t += h.delay;
        log_.append(make_event(name, t, Manager::execution, JobStatus::failed, h.queue, h.host));
        log_.append(
            make_event(name, t, Manager::dispatch, JobStatus::epilog_fail, h.queue, h.host));
        penalties_[h.host] += 1;
        if (++attempts >= cfg_.sim_retry_cap) {
          log_.append(make_event(name, t, Manager::dispatch, JobStatus::failed, h.queue, h.host));
          return t;
        }
        log_.append(make_event(name, t, Manager::dispatch, JobStatus::pending, "", ""));
        continue;
      }
      log_.append(make_event(name, t, Manager::execution, JobStatus::pending, h.queue, h.host));
      t += 5;
      log_.append(make_event(name, t, Manager::execution, JobStatus::active, h.queue, h.host));
      t += std::max(1LL, h.delay);
      log_.append(make_event(name, t, Manager::execution, JobStatus::done, h.queue, h.host));
      log_.append(make_event(name, t, Manager::dispatch, JobStatus::epilog_std, h.queue, h.host));
      t += 9;
      log_.append(make_event(name, t, Manager::dispatch, JobStatus::epilog, h.queue, h.host));
      t += 9;
      JobEvent done = make_event(name, t, Manager::dispatch, JobStatus::done, h.queue, h.host);
      done.exit_status = 0;
      log_.append(done);
      return t;
    }
  }

  const SimHost& pick_host() const {
    const SimHost* best = &hosts_.front();
    long long best_penalty = penalty(best->host);
    for (const auto& h : hosts_) {
      long long p = penalty(h.host);
      if (p < best_penalty) {
        best = &h;
        best_penalty = p;
      }
    }
    return *best;
  }

  static JobEvent make_event(const std::string& name, long long t, Manager m, JobStatus s,
                             const std::string& queue, const std::string& host) {
    JobEvent e;
    e.job_name = name;
    e.time = t;
    e.manager = m;
    e.status = s;
    e.queue_name = queue;
    e.host_name = host;
    return e;
  }

  void load_state() {
    clock_ = cfg_.rng_seed ? 1000000000 : static_cast<long long>(::time(nullptr));
    std::ifstream in(kSimStateFile);
    if (!in) return;
    std::string key;
    while (in >> key) {
      if (key == "clock") {
        if (!(in >> clock_)) fail(ExitCode::parse_internal, "malformed simulator state");
      } else if (key == "counter") {
        if (!(in >> counter_)) fail(ExitCode::parse_internal, "malformed simulator state");
      } else if (key == "penalty") {
        std::string host;
        long long p = 0;
        if (!(in >> host >> p)) fail(ExitCode::parse_internal, "malformed simulator state");
        penalties_[host] = p;
      } else {
        fail(ExitCode::parse_internal, "malformed simulator state");
      }
    }
  }

  void save_state() const {
    std::ofstream out(kSimStateFile, std::ios::trunc);
    if (!out) {
      fail(ExitCode::open_error, "cannot open simulator state file");
    }
    out << "clock " << clock_ << "\n";
    out << "counter " << counter_ << "\n";
    for (const auto& [host, p] : penalties_) out << "penalty " << host << " " << p << "\n";
    out.flush();
    if (!out) {
      fail(ExitCode::close_error, "cannot write simulator state file");
    }
  }

  ConfigTable cfg_;
  EventLog log_;
  std::vector<SimHost> hosts_;
  std::map<std::string, long long> penalties_;
  std::vector<std::string> queued_;
  long long clock_ = 0;
  long long counter_ = 0;
};

// Thin adapter over user-configured scheduler commands. Output streams
// straight through; job state never comes back, so state selectors do not
// work here.
class ExternalBackend : public Backend {
 public:
  explicit ExternalBackend(const ConfigTable& cfg) : cfg_(cfg) {}

  bool available() const override {
    return detail::resolve_command(cfg_.gridway_submit, cfg_).has_value();
  }
  bool supports_state() const override { return false; }

  JobHandle submit_job(const std::string& template_file) override {
    TemplateFields fields = read_template_fields(template_file, cfg_);
    auto cmd = detail::resolve_command(cfg_.gridway_submit, cfg_);
    if (!cmd) {
      fail(ExitCode::exec_error, "cannot find submit command '" + cfg_.gridway_submit + "'");
    }
    std::vector<std::string> argv{*cmd};
    if (!cfg_.gridway_submit_flag.empty()) argv.push_back(cfg_.gridway_submit_flag);
    argv.push_back(template_file);
    int rc = detail::run_inherit(argv);
    if (rc != 0) {
      fail(ExitCode::exec_error,
           "submit command failed for " + template_file + " (status " + std::to_string(rc) + ")");
    }
    return {template_file, fields.name};
  }

  void kill_job(const RegistryEntry& entry, const std::string& signal) override {
    auto cmd = detail::resolve_command(cfg_.gridway_kill, cfg_);
    if (!cmd) {
      fail(ExitCode::exec_error, "cannot find kill command '" + cfg_.gridway_kill + "'");
    }
    std::vector<std::string> argv{*cmd};
    if (!signal.empty()) argv.push_back(signal);
    argv.push_back(entry.job_id);
    int rc = detail::run_inherit(argv);
    if (rc != 0) {
      fail(ExitCode::exec_error,
           "kill command failed for " + entry.job_id + " (status " + std::to_string(rc) + ")");
    }
  }

  bool wait_jobs(const std::vector<RegistryEntry>& entries, long) override {
    auto cmd = detail::resolve_command(cfg_.gridway_wait, cfg_);
    if (!cmd) return false;
    std::vector<std::string> argv{*cmd};
    for (const auto& e : entries) argv.push_back(e.job_id);
    return detail::run_inherit(argv) == 0;
  }

  std::vector<JobEvent> events(const std::string&) const override { return {}; }

 private:
  ConfigTable cfg_;
};

inline std::unique_ptr<Backend> make_backend(const ConfigTable& cfg) {
  if (cfg.backend == "local") return std::make_unique<LocalBackend>(cfg);
  if (cfg.backend == "simulated") return std::make_unique<SimBackend>(cfg);
  if (cfg.backend == "external") return std::make_unique<ExternalBackend>(cfg);
  fail(ExitCode::usage, "unknown backend '" + cfg.backend + "'");
}

}  // namespace jobsweep
