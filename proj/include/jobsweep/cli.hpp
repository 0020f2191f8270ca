#pragma once

#include <getopt.h>
#include <sys/stat.h>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "jobsweep/backends.hpp"
#include "jobsweep/config.hpp"
#include "jobsweep/enumerator.hpp"
#include "jobsweep/errors.hpp"
#include "jobsweep/grammar.hpp"
#include "jobsweep/job_manager.hpp"
#include "jobsweep/registry.hpp"
#include "jobsweep/template_store.hpp"
#include "jobsweep/value_model.hpp"

namespace jobsweep {

inline const char* kProgramName = "jobsweep";
inline const char* kVersion = "1.0.0";

inline std::string usage_text() {
  std::ostringstream s;
  s << "Usage: " << kProgramName << " ACTION [OPTION]...\n"
    << "Expand a parameter sweep into job templates and manage the jobs.\n"
    << "\n"
    << "Actions (exactly one):\n"
    << "  -c, --create FILE     compose job templates from a parameter file\n"
    << "  -d, --delete SEL      delete job templates matching a selector\n"
    << "  -s, --submit SEL      submit jobs for matching templates\n"
    << "  -p, --purge SEL       drop matching jobs from management\n"
    << "  -k, --kill SEL        signal matching running jobs\n"
    << "  -i, --info MODE       report job states (now, history, evolution)\n"
    << "  -h, --help            print this help and exit\n"
    << "  -v, --version         print the version and exit\n"
    << "  -l, --license         print the license and exit\n"
    << "\n"
    << "Options:\n"
    << "  -w, --worker FILE     worker executable the jobs run (create)\n"
    << "  -t, --template FILE   extra template lines appended verbatim (create)\n"
    << "      --signal SIG      signal name or number to send (kill)\n"
    << "      --debug           report overwritten templates (create)\n"
    << "      --config KEY=VAL  override a configuration parameter\n"
    << "\n"
    << "Selectors: all, submitted, unsubmitted, finished, unfinished,\n"
    << "           successful, unsuccessful, FROM-TO\n";
  return s.str();
}

inline std::string license_text() {
  return "MIT License. This software is provided \"as is\", without warranty\n"
         "of any kind. See the LICENSE section of the README for details.\n";
}

namespace detail {

inline bool path_exists(const std::string& path) {
  struct stat st {};
  return ::stat(path.c_str(), &st) == 0;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ExitCode::open_error, "cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad() || buffer.fail()) {
    fail(ExitCode::open_error, "cannot read " + path);
  }
  return buffer.str();
}

// The create action accepts the parameter file with or without the
// configured default suffix.
inline std::string resolve_parameter_path(const std::string& given, const ConfigTable& cfg) {
  if (path_exists(given)) return given;
  std::string with_suffix = given + cfg.input_file_default_suffix;
  if (path_exists(with_suffix)) return with_suffix;
  fail(ExitCode::not_found, "parameter file not found: " + given);
}

inline Selector parse_selector_or_fail(const std::string& token) {
  auto sel = Selector::parse(token);
  if (!sel) {
    fail(ExitCode::usage, "invalid selector '" + token + "'");
  }
  return *sel;
}

}  // namespace detail

struct CliRequest {
  enum class Action { none, create, remove, submit, purge, kill, info, help, version, license };
  Action action = Action::none;
  std::string action_arg;
  std::string worker;
  std::optional<std::string> template_file;
  std::string signal;
  bool debug = false;
  std::vector<std::string> overrides;
};

inline CliRequest parse_cli(int argc, char* const argv[]) {
  CliRequest req;
  auto set_action = [&req](CliRequest::Action a, const char* arg) {
    if (req.action != CliRequest::Action::none) {
      fail(ExitCode::usage, "exactly one action may be given");
    }
    req.action = a;
    if (arg) req.action_arg = arg;
  };

  static const option long_options[] = {
      {"create", required_argument, nullptr, 'c'},
      {"delete", required_argument, nullptr, 'd'},
      {"submit", required_argument, nullptr, 's'},
      {"purge", required_argument, nullptr, 'p'},
      {"kill", required_argument, nullptr, 'k'},
      {"info", required_argument, nullptr, 'i'},
      {"help", no_argument, nullptr, 'h'},
      {"version", no_argument, nullptr, 'v'},
      {"license", no_argument, nullptr, 'l'},
      {"worker", required_argument, nullptr, 'w'},
      {"template", required_argument, nullptr, 't'},
      {"signal", required_argument, nullptr, 1000},
      {"debug", no_argument, nullptr, 1001},
      {"config", required_argument, nullptr, 1002},
      {nullptr, 0, nullptr, 0}};

  optind = 0;  // full glibc rescan reset; plain 1 keeps a stale group pointer
  opterr = 0;
  int opt = 0;
  while ((opt = ::getopt_long(argc, argv, ":c:d:s:p:k:i:hvlw:t:", long_options, nullptr)) != -1) {
    switch (opt) {
      case 'c': set_action(CliRequest::Action::create, optarg); break;
      case 'd': set_action(CliRequest::Action::remove, optarg); break;
      case 's': set_action(CliRequest::Action::submit, optarg); break;
      case 'p': set_action(CliRequest::Action::purge, optarg); break;
      case 'k': set_action(CliRequest::Action::kill, optarg); break;
      case 'i': set_action(CliRequest::Action::info, optarg); break;
      case 'h': set_action(CliRequest::Action::help, nullptr); break;
      case 'v': set_action(CliRequest::Action::version, nullptr); break;
      case 'l': set_action(CliRequest::Action::license, nullptr); break;
      case 'w': req.worker = optarg; break;
      case 't': req.template_file = optarg; break;
      case 1000: req.signal = optarg; break;
      case 1001: req.debug = true; break;
      case 1002: req.overrides.emplace_back(optarg); break;
      case ':':
        fail(ExitCode::usage,
             std::string("option '") + argv[optind - 1] + "' requires an argument");
      default:
        fail(ExitCode::usage, std::string("unknown option '") + argv[optind - 1] + "'");
    }
  }
  if (optind < argc) {
    fail(ExitCode::usage, std::string("unexpected argument '") + argv[optind] + "'");
  }
  if (req.action == CliRequest::Action::none) {
    fail(ExitCode::usage, "an action is required; see --help");
  }

  bool is_create = req.action == CliRequest::Action::create;
  if (!is_create && (!req.worker.empty() || req.template_file)) {
    fail(ExitCode::usage, "--worker and --template apply only to --create");
  }
  if (req.debug && !is_create) {
    fail(ExitCode::usage, "--debug applies only to --create");
  }
  if (!req.signal.empty() && req.action != CliRequest::Action::kill) {
    fail(ExitCode::usage, "--signal applies only to --kill");
  }
  return req;
}

namespace detail {

inline int run_create(const CliRequest& req, const ConfigTable& cfg, std::ostream& out,
                      std::ostream& err) {
  std::string param_path = resolve_parameter_path(req.action_arg, cfg);
  ParameterSpec spec = parse_parameter_file(read_text_file(param_path), cfg);

  TemplateAppendix appendix;
  if (req.template_file) {
    if (!path_exists(*req.template_file)) {
      fail(ExitCode::not_found, "template file not found: " + *req.template_file);
    }
    appendix = parse_template_appendix(read_text_file(*req.template_file), cfg);
  }

  auto backend = make_backend(cfg);
  if (!backend->available()) print_backend_warning(err);

  RandomStream rng(cfg.rng_seed);
  TransformContext tctx{rng, cfg.use_bignum != 0};
  create_templates(spec, req.worker, appendix, cfg, tctx, out, err, req.debug);
  return 0;
}

inline int run_delete(const CliRequest& req, const ConfigTable& cfg, std::ostream& out,
                      std::ostream& err) {
  Selector sel = parse_selector_or_fail(req.action_arg);
  auto backend = make_backend(cfg);
  bool available = backend->available();
  if (!available) print_backend_warning(err);

  std::vector<TemplateFile> templates = scan_templates(cfg);
  std::vector<RegistryEntry> records = JobRegistry(kRegistryFile).load();
  std::optional<JobStateView> state;
  if (available && backend->supports_state()) state = build_state_view();

  delete_templates(sel, templates, records, state ? &*state : nullptr, out);
  return 0;
}

}  // namespace detail

// Full command-line entry point; returns the process exit status.
inline int run_cli(int argc, char* const argv[], std::ostream& out, std::ostream& err) {
  try {
    CliRequest req = parse_cli(argc, argv);

    if (req.action == CliRequest::Action::help) {
      out << usage_text();
      return 0;
    }
    if (req.action == CliRequest::Action::version) {
      out << kProgramName << " " << kVersion << "\n";
      return 0;
    }
    if (req.action == CliRequest::Action::license) {
      out << license_text();
      return 0;
    }

    ConfigTable cfg = load_defaults();
    for (const auto& assignment : req.overrides) apply_override(cfg, assignment);

    switch (req.action) {
      case CliRequest::Action::create:
        return detail::run_create(req, cfg, out, err);
      case CliRequest::Action::remove:
        return detail::run_delete(req, cfg, out, err);
      case CliRequest::Action::submit:
        return submit_jobs(detail::parse_selector_or_fail(req.action_arg), cfg, out, err);
      case CliRequest::Action::purge: {
        Selector sel = detail::parse_selector_or_fail(req.action_arg);
        if (sel.kind == SelectorKind::submitted || sel.kind == SelectorKind::unsubmitted) {
          fail(ExitCode::usage, "selector '" + req.action_arg + "' cannot be used with --purge");
        }
        return purge_jobs(sel, cfg, out, err);
      }
      case CliRequest::Action::kill: {
        Selector sel = detail::parse_selector_or_fail(req.action_arg);
        if (sel.kind == SelectorKind::submitted || sel.kind == SelectorKind::unsubmitted) {
          fail(ExitCode::usage, "selector '" + req.action_arg + "' cannot be used with --kill");
        }
        return kill_jobs(sel, req.signal, cfg, out, err);
      }
      case CliRequest::Action::info: {
        auto mode = parse_info_mode(req.action_arg);
        if (!mode) {
          fail(ExitCode::usage, "unknown info mode '" + req.action_arg +
                                    "' (expected now, history, or evolution)");
        }
        Selector all;
        all.kind = SelectorKind::all;
        return info_jobs(*mode, all, cfg, out, err);
      }
      default:
        fail(ExitCode::usage, "an action is required; see --help");
    }
  } catch (const ToolError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_status();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::compute_error);
  }
}

}  // namespace jobsweep
