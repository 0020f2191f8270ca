#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "jobsweep/errors.hpp"

namespace jobsweep {

// Every tunable knob of the tool, compiled-in defaults included. A table is
// built once from the command line and treated as read-only afterwards.
struct ConfigTable {
  // Naming and file layout.
  std::string job_template_wildcard = "${JT_ID}";
  std::string job_template_prefix;
  std::string job_template_suffix = ".jt";
  std::string std_output_dir = ".";
  std::string std_error_dir = ".";
  std::string input_file_default_suffix = ".in";

  // Parameter file grammar characters.
  std::string comment_char = "#";
  std::string keyassignment_char = "=";
  std::string separation_char = ",";
  std::string separation_char_cli = " ";
  std::string separation_char_filename = "_";
  std::string jt_id_to_arg_separation = "_";
  std::string unix_operators = "&|<>;()`";

  // External scheduler commands.
  std::string gridway_submit = "gwsubmit";
  std::string gridway_submit_flag;
  std::string gridway_ps = "gwps";
  std::string gridway_kill = "gwkill";
  std::string gridway_wait = "gwwait";
  std::string gridway_dir_var;

  // Numeric behaviour.
  long long use_bignum = 0;
  long long huge_number_points = 10000;
  long long inode_size_kB = 4;

  // Job template keyword dialect.
  std::string template_executable = "EXECUTABLE";
  std::string template_arguments = "ARGUMENTS";
  std::string template_stdout_file = "STDOUT_FILE";
  std::string template_stderr_file = "STDERR_FILE";
  std::string template_job_name = "NAME";
  std::string template_encloser_char;
  std::string template_end_of_line;

  // Execution backend selection and behaviour.
  std::string backend = "local";  // local | simulated | external
  std::optional<long long> rng_seed;
  long long info_poll_seconds = 10;
  long long max_parallel = 1;  // load_defaults() sets the CPU count
  std::string sim_hosts = "default:simhost:1:1";
  long long sim_retry_cap = 5;

  bool operator==(const ConfigTable&) const = default;
};

namespace detail {

enum class ConfigValueKind {
  text,
  single_char,
  optional_char,
  integer,
  positive_integer,
  optional_integer,
  backend_name
};

struct ConfigKey {
  const char* name;
  ConfigValueKind kind;
  std::string ConfigTable::* text_member = nullptr;
  long long ConfigTable::* int_member = nullptr;
  std::optional<long long> ConfigTable::* opt_member = nullptr;
};

inline const std::vector<ConfigKey>& config_keys() {
  using K = ConfigValueKind;
  static const std::vector<ConfigKey> keys = {
      {"job_template_wildcard", K::text, &ConfigTable::job_template_wildcard},
      {"job_template_prefix", K::text, &ConfigTable::job_template_prefix},
      {"job_template_suffix", K::text, &ConfigTable::job_template_suffix},
      {"std_output_dir", K::text, &ConfigTable::std_output_dir},
      {"std_error_dir", K::text, &ConfigTable::std_error_dir},
      {"input_file_default_suffix", K::text, &ConfigTable::input_file_default_suffix},
      {"comment_char", K::single_char, &ConfigTable::comment_char},
      {"keyassignment_char", K::single_char, &ConfigTable::keyassignment_char},
      {"separation_char", K::single_char, &ConfigTable::separation_char},
      {"separation_char_cli", K::single_char, &ConfigTable::separation_char_cli},
      {"separation_char_filename", K::single_char, &ConfigTable::separation_char_filename},
      {"jt_id_to_arg_separation", K::single_char, &ConfigTable::jt_id_to_arg_separation},
      {"unix_operators", K::text, &ConfigTable::unix_operators},
      {"gridway_submit", K::text, &ConfigTable::gridway_submit},
      {"gridway_submit_flag", K::text, &ConfigTable::gridway_submit_flag},
      {"gridway_ps", K::text, &ConfigTable::gridway_ps},
      {"gridway_kill", K::text, &ConfigTable::gridway_kill},
      {"gridway_wait", K::text, &ConfigTable::gridway_wait},
      {"gridway_dir_var", K::text, &ConfigTable::gridway_dir_var},
      {"use_bignum", K::integer, nullptr, &ConfigTable::use_bignum},
      {"huge_number_points", K::positive_integer, nullptr, &ConfigTable::huge_number_points},
      {"inode_size_kB", K::positive_integer, nullptr, &ConfigTable::inode_size_kB},
      {"Template_executable", K::text, &ConfigTable::template_executable},
      {"Template_arguments", K::text, &ConfigTable::template_arguments},
      {"Template_stdout_file", K::text, &ConfigTable::template_stdout_file},
      {"Template_stderr_file", K::text, &ConfigTable::template_stderr_file},
      {"Template_job_name", K::text, &ConfigTable::template_job_name},
      {"Template_encloser_char", K::optional_char, &ConfigTable::template_encloser_char},
      {"Template_end_of_line", K::text, &ConfigTable::template_end_of_line},
      {"backend", K::backend_name, &ConfigTable::backend},
      {"rng_seed", K::optional_integer, nullptr, nullptr, &ConfigTable::rng_seed},
      {"info_poll_seconds", K::positive_integer, nullptr, &ConfigTable::info_poll_seconds},
      {"max_parallel", K::positive_integer, nullptr, &ConfigTable::max_parallel},
      {"sim_hosts", K::text, &ConfigTable::sim_hosts},
      {"sim_retry_cap", K::positive_integer, nullptr, &ConfigTable::sim_retry_cap},
  };
  return keys;
}

inline long long parse_config_int(const std::string& key, const std::string& value) {
  long long result = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, result);
  if (ec != std::errc() || ptr != last) {
    fail(ExitCode::usage, "config value for '" + key + "' must be an integer, got '" + value + "'");
  }
  return result;
}

}  // namespace detail

inline ConfigTable load_defaults() {
  ConfigTable table;
  unsigned cpus = std::thread::hardware_concurrency();
  table.max_parallel = cpus == 0 ? 1 : static_cast<long long>(cpus);
  return table;
}

// Applies one `KEY=VALUE` assignment from the command line. Later
// assignments win over earlier ones for the same key.
inline void apply_override(ConfigTable& table, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    fail(ExitCode::usage, "malformed --config assignment '" + assignment + "' (expected KEY=VALUE)");
  }
  std::string key = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);

  using detail::ConfigValueKind;
  for (const auto& entry : detail::config_keys()) {
    if (key != entry.name) continue;
    switch (entry.kind) {
      case ConfigValueKind::text:
        table.*(entry.text_member) = value;
        return;
      case ConfigValueKind::single_char:
        if (value.size() != 1) {
          fail(ExitCode::usage, "config key '" + key + "' takes a single character");
        }
        table.*(entry.text_member) = value;
        return;
      case ConfigValueKind::optional_char:
        if (value.size() > 1) {
          fail(ExitCode::usage, "config key '" + key + "' takes at most one character");
        }
        table.*(entry.text_member) = value;
        return;
      case ConfigValueKind::integer:
        table.*(entry.int_member) = detail::parse_config_int(key, value);
        return;
      case ConfigValueKind::positive_integer: {
        long long parsed = detail::parse_config_int(key, value);
        if (parsed < 1) {
          fail(ExitCode::usage, "config key '" + key + "' takes a positive integer");
        }
        table.*(entry.int_member) = parsed;
        return;
      }
      case ConfigValueKind::optional_integer:
        table.*(entry.opt_member) = detail::parse_config_int(key, value);
        return;
      case ConfigValueKind::backend_name:
        if (value != "local" && value != "simulated" && value != "external") {
          fail(ExitCode::usage, "config key 'backend' must be local, simulated or external");
        }
        table.*(entry.text_member) = value;
        return;
    }
  }
  fail(ExitCode::usage, "unknown config key '" + key + "'");
}

}  // namespace jobsweep
