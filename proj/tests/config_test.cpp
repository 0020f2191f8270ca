#include "jobsweep/config.hpp"

#include <gtest/gtest.h>

#include "jobsweep/errors.hpp"

namespace jobsweep {
namespace {

TEST(ConfigDefaults, MatchTheDocumentedTable) {
  ConfigTable cfg = load_defaults();
  EXPECT_EQ(cfg.job_template_wildcard, "${JT_ID}");
  EXPECT_EQ(cfg.job_template_prefix, "");
  EXPECT_EQ(cfg.job_template_suffix, ".jt");
  EXPECT_EQ(cfg.std_output_dir, ".");
  EXPECT_EQ(cfg.std_error_dir, ".");
  EXPECT_EQ(cfg.input_file_default_suffix, ".in");
  EXPECT_EQ(cfg.comment_char, "#");
  EXPECT_EQ(cfg.keyassignment_char, "=");
  EXPECT_EQ(cfg.separation_char, ",");
  EXPECT_EQ(cfg.separation_char_cli, " ");
  EXPECT_EQ(cfg.separation_char_filename, "_");
  EXPECT_EQ(cfg.jt_id_to_arg_separation, "_");
  EXPECT_EQ(cfg.unix_operators, "&|<>;()`");
  EXPECT_EQ(cfg.gridway_submit, "gwsubmit");
  EXPECT_EQ(cfg.gridway_submit_flag, "");
  EXPECT_EQ(cfg.gridway_ps, "gwps");
  EXPECT_EQ(cfg.gridway_kill, "gwkill");
  EXPECT_EQ(cfg.gridway_wait, "gwwait");
  EXPECT_EQ(cfg.gridway_dir_var, "");
  EXPECT_EQ(cfg.use_bignum, 0);
  EXPECT_EQ(cfg.huge_number_points, 10000);
  EXPECT_EQ(cfg.inode_size_kB, 4);
  EXPECT_EQ(cfg.template_executable, "EXECUTABLE");
  EXPECT_EQ(cfg.template_arguments, "ARGUMENTS");
  EXPECT_EQ(cfg.template_stdout_file, "STDOUT_FILE");
  EXPECT_EQ(cfg.template_stderr_file, "STDERR_FILE");
  EXPECT_EQ(cfg.template_job_name, "NAME");
  EXPECT_EQ(cfg.template_encloser_char, "");
  EXPECT_EQ(cfg.template_end_of_line, "");
  EXPECT_EQ(cfg.backend, "local");
  EXPECT_FALSE(cfg.rng_seed.has_value());
  EXPECT_GE(cfg.max_parallel, 1);
}

TEST(ConfigOverride, AppliesTextIntegerAndOptionalKinds) {
  ConfigTable cfg = load_defaults();
  apply_override(cfg, "job_template_suffix=.jdl");
  EXPECT_EQ(cfg.job_template_suffix, ".jdl");
  apply_override(cfg, "use_bignum=1");
  EXPECT_EQ(cfg.use_bignum, 1);
  apply_override(cfg, "Template_job_name=JobName");
  EXPECT_EQ(cfg.template_job_name, "JobName");
  apply_override(cfg, "Template_encloser_char=\"");
  EXPECT_EQ(cfg.template_encloser_char, "\"");
  apply_override(cfg, "Template_end_of_line=;");
  EXPECT_EQ(cfg.template_end_of_line, ";");
  apply_override(cfg, "rng_seed=42");
  ASSERT_TRUE(cfg.rng_seed.has_value());
  EXPECT_EQ(*cfg.rng_seed, 42);
  apply_override(cfg, "backend=simulated");
  EXPECT_EQ(cfg.backend, "simulated");
  apply_override(cfg, "gridway_submit=glite-wms-job-submit");
  EXPECT_EQ(cfg.gridway_submit, "glite-wms-job-submit");
  apply_override(cfg, "gridway_submit_flag=-a");
  EXPECT_EQ(cfg.gridway_submit_flag, "-a");
}

TEST(ConfigOverride, ValidatesSeparatorsAreSingleCharacters) {
  ConfigTable cfg = load_defaults();
  apply_override(cfg, "separation_char=;");
  EXPECT_EQ(cfg.separation_char, ";");
  for (const char* bad : {"separation_char=ab", "separation_char=", "comment_char=##"}) {
    ConfigTable fresh = load_defaults();
    try {
      apply_override(fresh, bad);
      FAIL() << bad << " accepted";
    } catch (const ToolError& e) {
      EXPECT_EQ(e.code(), ExitCode::usage);
    }
  }
}

TEST(ConfigOverride, RejectsUnknownKeysAndBadValues) {
  for (const char* bad :
       {"nonsense_key=1", "use_bignum=maybe", "huge_number_points=ten", "=5", "noequals",
        "backend=quantum", "max_parallel=-3"}) {
    ConfigTable cfg = load_defaults();
    try {
      apply_override(cfg, bad);
      FAIL() << bad << " accepted";
    } catch (const ToolError& e) {
      EXPECT_EQ(e.code(), ExitCode::usage) << bad;
    }
  }
}

TEST(ConfigOverride, EncloserMayBeEmptyOrOneChar) {
  ConfigTable cfg = load_defaults();
  apply_override(cfg, "Template_encloser_char=");
  EXPECT_EQ(cfg.template_encloser_char, "");
  try {
    apply_override(cfg, "Template_encloser_char=ab");
    FAIL() << "two-character encloser accepted";
  } catch (const ToolError& e) {
    EXPECT_EQ(e.code(), ExitCode::usage);
  }
}

}  // namespace
}  // namespace jobsweep
