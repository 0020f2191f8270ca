#include "jobsweep/events.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <ctime>
#include <string>
#include <vector>

#include "jobsweep/errors.hpp"
#include "support/proc.hpp"

namespace jobsweep {
namespace {

struct ScopedTz {
  explicit ScopedTz(const char* tz) {
    const char* old = std::getenv("TZ");
    if (old) saved = old;
    ::setenv("TZ", tz, 1);
    ::tzset();
  }
  ~ScopedTz() {
    if (saved.empty()) {
      ::unsetenv("TZ");
    } else {
      ::setenv("TZ", saved.c_str(), 1);
    }
    ::tzset();
  }
  std::string saved;
};

ExitCode parse_code(const std::string& line) {
  try {
    parse_event_line(line);
  } catch (const ToolError& e) {
    return e.code();
  }
  return ExitCode::ok;
}

TEST(Events, HeaderNamesEveryColumn) {
  EXPECT_STREQ(kEventHeader,
               "JOB_NAME,LOCALTIME,TIME,MANAGER,STATUS,QUEUE_NAME,HOST_NAME,EXIT_STATUS");
}

TEST(Events, FormatsTheReferenceRow) {
  ScopedTz tz("CET-1");
  JobEvent e{"3_echo", 1266949504, Manager::dispatch, JobStatus::done, "prod", "egee.srce.hr", 0};
  EXPECT_EQ(format_event(e), "3_echo,Tue Feb 23 19:25:04 2010,1266949504,DISPATCH,DONE,prod,egee.srce.hr,0");
}

TEST(Events, SingleDigitDayIsSpacePadded) {
  ScopedTz tz("CET-1");
  EXPECT_EQ(format_localtime(1265000704), "Mon Feb  1 06:05:04 2010");
}

TEST(Events, FormatParseRoundTrip) {
  std::vector<JobEvent> cases{
      {"0_echo_Hello", 1266949000, Manager::dispatch, JobStatus::pending, "", "", std::nullopt},
      {"1_run", 1266949001, Manager::execution, JobStatus::active, "local", "node7", std::nullopt},
      {"2_run", 1266949002, Manager::execution, JobStatus::done, "gilda", "grid.acad.bg",
       std::nullopt},
      {"3_run", 1266949003, Manager::dispatch, JobStatus::failed, "prod", "egee.srce.hr",
       std::nullopt},
      {"4_run", 1266949004, Manager::dispatch, JobStatus::done, "default", "gridway.org", 0},
      {"5_run", 1266949005, Manager::dispatch, JobStatus::done, "default", "gridway.org", 42},
  };
  for (const auto& e : cases) {
    EXPECT_EQ(parse_event_line(format_event(e)), e) << format_event(e);
  }
}

TEST(Events, NameTablesRoundTrip) {
  for (Manager m : {Manager::dispatch, Manager::execution}) {
    EXPECT_EQ(manager_from(manager_name(m)), m);
  }
  for (JobStatus s :
       {JobStatus::pending, JobStatus::prolog, JobStatus::wrapper, JobStatus::active,
        JobStatus::done, JobStatus::failed, JobStatus::epilog_std, JobStatus::epilog,
        JobStatus::epilog_fail}) {
    EXPECT_EQ(status_from(status_name(s)), s);
  }
  EXPECT_FALSE(manager_from("SCHEDULER").has_value());
  EXPECT_FALSE(status_from("RUNNING").has_value());
}

TEST(Events, OnlyDispatchDoneOrFailedIsTerminal) {
  JobEvent e;
  e.manager = Manager::dispatch;
  e.status = JobStatus::done;
  EXPECT_TRUE(is_terminal(e));
  e.status = JobStatus::failed;
  EXPECT_TRUE(is_terminal(e));
  for (JobStatus s : {JobStatus::pending, JobStatus::prolog, JobStatus::wrapper, JobStatus::active,
                      JobStatus::epilog_std, JobStatus::epilog, JobStatus::epilog_fail}) {
    e.status = s;
    EXPECT_FALSE(is_terminal(e)) << status_name(s);
  }
  // execution-level DONE still has the epilog ahead of it
  e.manager = Manager::execution;
  e.status = JobStatus::done;
  EXPECT_FALSE(is_terminal(e));
  e.status = JobStatus::failed;
  EXPECT_FALSE(is_terminal(e));
}

TEST(Events, SuccessNeedsTerminalDoneWithZeroExit) {
  JobEvent e{"j", 1, Manager::dispatch, JobStatus::done, "", "", 0};
  EXPECT_TRUE(is_successful(e));
  e.exit_status = 3;
  EXPECT_FALSE(is_successful(e));
  e.exit_status = std::nullopt;
  EXPECT_FALSE(is_successful(e));
  e.exit_status = 0;
  e.status = JobStatus::failed;
  EXPECT_FALSE(is_successful(e));
  e.status = JobStatus::done;
  e.manager = Manager::execution;
  EXPECT_FALSE(is_successful(e));
}

TEST(Events, MalformedRowsAreRejected) {
  EXPECT_EQ(parse_code("too,few,fields"), ExitCode::parse_internal);
  EXPECT_EQ(parse_code("j,loc,NaN,DISPATCH,DONE,q,h,0"), ExitCode::parse_internal);
  EXPECT_EQ(parse_code("j,loc,1,SCHEDULER,DONE,q,h,0"), ExitCode::parse_internal);
  EXPECT_EQ(parse_code("j,loc,1,DISPATCH,RUNNING,q,h,0"), ExitCode::parse_internal);
  EXPECT_EQ(parse_code("j,loc,1,DISPATCH,DONE,q,h,zero"), ExitCode::parse_internal);
  EXPECT_EQ(parse_code("j,loc,1,DISPATCH,DONE,q,h,0,extra"), ExitCode::parse_internal);
  // empty exit status is a non-terminal row, not an error
  EXPECT_EQ(parse_code("j,loc,1,EXECUTION,ACTIVE,q,h,"), ExitCode::ok);
  EXPECT_FALSE(parse_event_line("j,loc,1,EXECUTION,ACTIVE,q,h,").exit_status.has_value());
}

TEST(Events, LogAppendsAndReadsBack) {
  testsupport::TempDir dir;
  EventLog log(".sweep_events");
  EXPECT_TRUE(log.read_all().empty());

  JobEvent a{"0_j", 100, Manager::dispatch, JobStatus::pending, "", "", std::nullopt};
  JobEvent b{"0_j", 105, Manager::execution, JobStatus::active, "local", "host1", std::nullopt};
  JobEvent c{"0_j", 110, Manager::dispatch, JobStatus::done, "local", "host1", 0};
  log.append(a);
  log.append(b);
  auto two = log.read_all();
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], a);
  EXPECT_EQ(two[1], b);
  log.append(c);
  auto three = log.read_all();
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[2], c);

  std::string raw = testsupport::read_file(".sweep_events");
  EXPECT_EQ(raw.find(format_event(a)), 0u);
  EXPECT_EQ(raw.back(), '\n');
}

TEST(Events, LogReadSurfacesCorruption) {
  testsupport::TempDir dir;
  testsupport::write_file(".sweep_events", "0_j,loc,100,DISPATCH,PENDING,,,\nnot a record\n");
  EventLog log(".sweep_events");
  try {
    log.read_all();
    FAIL() << "expected corruption to throw";
  } catch (const ToolError& e) {
    EXPECT_EQ(e.code(), ExitCode::parse_internal);
  }
}

}  // namespace
}  // namespace jobsweep
