#pragma once

#include <stdexcept>
#include <string>

namespace jobsweep {

// Process exit codes. Everything user-visible funnels through these; no
// other status values ever reach the shell.
enum class ExitCode : int {
  ok = 0,
  usage = 1,            // wrong syntax in the command line
  exec_error = 2,       // system execution error
  not_found = 3,        // file not found or requirement not matched
  param_syntax = 4,     // parameter file syntax inconsistent
  open_error = 5,       // error opening file
  close_error = 6,      // error closing (or writing) a file
  no_jobs = 7,          // no job found coming from template in the list
  compute_error = 8,    // internal computation error
  parse_internal = 9,   // internal parsing error
};

class ToolError : public std::runtime_error {
 public:
  ToolError(ExitCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ExitCode code() const { return code_; }
  int exit_status() const { return static_cast<int>(code_); }

 private:
  ExitCode code_;
};

[[noreturn]] inline void fail(ExitCode code, const std::string& message) {
  throw ToolError(code, message);
}

}  // namespace jobsweep
