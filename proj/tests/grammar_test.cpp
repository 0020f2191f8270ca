#include "jobsweep/grammar.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "jobsweep/config.hpp"
#include "jobsweep/errors.hpp"

namespace jobsweep {
namespace {

ConfigTable cfg() { return load_defaults(); }

ExitCode code_of(const std::string& text) {
  try {
    parse_parameter_file(text, cfg());
  } catch (const ToolError& e) {
    return e.code();
  }
  return ExitCode::ok;
}

TEST(Grammar, SingleQuotedListValue) {
  ParameterSpec spec = parse_parameter_file("LOOPTYPE=LIST, VALUE=\"Hello world!\"\n", cfg());
  ASSERT_EQ(spec.sets.size(), 1u);
  const SetSpec& s = spec.sets[0];
  EXPECT_EQ(s.loop_type, LoopType::list);
  ASSERT_EQ(s.values.size(), 1u);
  EXPECT_EQ(s.values[0], "\"Hello world!\"");
  EXPECT_TRUE(s.function_chain.empty());
}

TEST(Grammar, TwoListLinesWithFunction) {
  ParameterSpec spec = parse_parameter_file(
      "LOOPTYPE=LIST, VALUE=hello, VALUE=goodbye, FUNCTION=ucfirst\n"
      "LOOPTYPE=LIST, VALUE=world!, VALUE=mars!\n",
      cfg());
  ASSERT_EQ(spec.sets.size(), 2u);
  EXPECT_EQ(spec.sets[0].values, (std::vector<std::string>{"hello", "goodbye"}));
  EXPECT_EQ(spec.sets[0].function_chain, (std::vector<std::string>{"ucfirst"}));
  EXPECT_EQ(spec.sets[1].values, (std::vector<std::string>{"world!", "mars!"}));
}

TEST(Grammar, RangeWithSkip) {
  ParameterSpec spec =
      parse_parameter_file("LOOPTYPE=RANGE, START=1, END=5, STEP=1, SKIP=3\n", cfg());
  ASSERT_EQ(spec.sets.size(), 1u);
  const SetSpec& s = spec.sets[0];
  EXPECT_EQ(s.loop_type, LoopType::range);
  EXPECT_EQ(s.start, "1");
  EXPECT_EQ(s.end, "5");
  ASSERT_TRUE(s.step.has_value());
  EXPECT_EQ(*s.step, "1");
  EXPECT_FALSE(s.points.has_value());
  EXPECT_EQ(s.skips, (std::vector<std::string>{"3"}));
}

TEST(Grammar, ExprangeLine) {
  ParameterSpec spec = parse_parameter_file(
      "LOOPTYPE=EXPRANGE, START=1, END=1E3, STEP=1, SKIP=100\n", cfg());
  const SetSpec& s = spec.sets[0];
  EXPECT_EQ(s.loop_type, LoopType::exprange);
  EXPECT_EQ(s.end, "1E3");
  EXPECT_EQ(s.skips, (std::vector<std::string>{"100"}));
}

TEST(Grammar, FunctionChainMergesUnkeyedWords) {
  ParameterSpec spec = parse_parameter_file(
      "LOOPTYPE=RANGE, START=1000, END=1000, POINTS=8, FUNCTION=int rand\n", cfg());
  const SetSpec& s = spec.sets[0];
  ASSERT_TRUE(s.points.has_value());
  EXPECT_EQ(*s.points, 8);
  EXPECT_EQ(s.function_chain, (std::vector<std::string>{"int", "rand"}));
}

TEST(Grammar, ContinuationJoinsBeforeParsing) {
  std::string text =
      "LOOPTYPE=RANGE,\\\n"
      "START=123456789012345678911234567892123456789312345678941,\\\n"
      "  END=123456789012345678911234567892123456789312345678943,\\\n"
      "POINTS=3\n";
  ParameterSpec spec = parse_parameter_file(text, cfg());
  ASSERT_EQ(spec.sets.size(), 1u);
  const SetSpec& s = spec.sets[0];
  EXPECT_EQ(s.start, "123456789012345678911234567892123456789312345678941");
  EXPECT_EQ(s.end, "123456789012345678911234567892123456789312345678943");
  ASSERT_TRUE(s.points.has_value());
  EXPECT_EQ(*s.points, 3);
}

TEST(Grammar, CommentsAndBlankLinesAreIgnored) {
  ParameterSpec spec = parse_parameter_file(
      "# leading comment\n"
      "\n"
      "LOOPTYPE=LIST, VALUE=a\n"
      "   # indented comment\n"
      "LOOPTYPE=LIST, VALUE=b\n",
      cfg());
  ASSERT_EQ(spec.sets.size(), 2u);
  EXPECT_EQ(spec.sets[0].line_number, 3);
  EXPECT_EQ(spec.sets[1].line_number, 5);
}

TEST(Grammar, WhitespaceAloneSeparatesPairs) {
  ParameterSpec spec = parse_parameter_file("LOOPTYPE=LIST VALUE=x VALUE=y\n", cfg());
  EXPECT_EQ(spec.sets[0].values, (std::vector<std::string>{"x", "y"}));
}

TEST(Grammar, UnkeyedWordExtendsPreviousValue) {
  ParameterSpec spec = parse_parameter_file("LOOPTYPE=LIST VALUE=alpha beta\n", cfg());
  EXPECT_EQ(spec.sets[0].values, (std::vector<std::string>{"alpha beta"}));
}

TEST(Grammar, DeferredWildcardValueSurvivesVerbatim) {
  ParameterSpec spec = parse_parameter_file("LOOPTYPE=LIST, VALUE=${JT_ID}.txt\n", cfg());
  EXPECT_EQ(spec.sets[0].values, (std::vector<std::string>{"${JT_ID}.txt"}));
}

TEST(Grammar, SyntaxErrorsUseTheParameterCode) {
  EXPECT_EQ(code_of(""), ExitCode::param_syntax);
  EXPECT_EQ(code_of("# only a comment\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("VALUE=x\n"), ExitCode::param_syntax);              // missing LOOPTYPE
  EXPECT_EQ(code_of("LOOPTYPE=CIRCLE, VALUE=x\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=LIST\n"), ExitCode::param_syntax);        // no VALUE
  EXPECT_EQ(code_of("LOOPTYPE=LIST, START=1, VALUE=x\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=RANGE, START=1, END=5\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=RANGE, START=1, END=5, STEP=1, POINTS=2\n"),
            ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=RANGE, END=5, STEP=1\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=RANGE, START=1, END=5, POINTS=0\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=RANGE, START=1, END=5, POINTS=-2\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=RANGE, START=1, END=5, POINTS=2.5\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=LIST, VALUE=x, LOOPTYPE=LIST\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=LIST, VALUE=x, FUNCTION=uc, FUNCTION=lc\n"),
            ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=LIST, VALUE=x, FUNCTION=frobnicate\n"), ExitCode::param_syntax);
  EXPECT_EQ(code_of("LOOPTYPE=LIST, VALUE=x, FUNCTION=crypt\n"), ExitCode::param_syntax);
}

TEST(Grammar, ErrorsNameTheLine) {
  try {
    parse_parameter_file("LOOPTYPE=LIST, VALUE=ok\nLOOPTYPE=RANGE, START=1\n", cfg());
    FAIL() << "bad second line accepted";
  } catch (const ToolError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Grammar, CustomSeparatorAndCommentChars) {
  ConfigTable custom = load_defaults();
  apply_override(custom, "separation_char=;");
  apply_override(custom, "comment_char=%");
  ParameterSpec spec = parse_parameter_file(
      "% other comment style\n"
      "LOOPTYPE=LIST; VALUE=a; VALUE=b\n",
      custom);
  EXPECT_EQ(spec.sets[0].values, (std::vector<std::string>{"a", "b"}));
}

TEST(TemplateAppendix, KeepsNonCommentLinesVerbatim) {
  TemplateAppendix a = parse_template_appendix(
      "# comment\n"
      "OUTPUT_FILES=${3}\n"
      "\n"
      "OutputSandbox = {\"${JT_ID}_env_${1}.out\",\"${JT_ID}_env_${1}.err\"};\n",
      cfg());
  ASSERT_EQ(a.lines.size(), 2u);
  EXPECT_EQ(a.lines[0], "OUTPUT_FILES=${3}");
  EXPECT_EQ(a.lines[1], "OutputSandbox = {\"${JT_ID}_env_${1}.out\",\"${JT_ID}_env_${1}.err\"};");
}

// Property: serializing a random well-formed sentence and reparsing it
// yields the same structure.
TEST(GrammarProperty, SentenceRoundTrip) {
  std::mt19937_64 rng(424242);
  auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  const std::vector<std::string> words = {"alpha", "b", "x!", "1.5", "100", "hello"};
  const std::vector<std::string> functions = {"uc", "lc", "ucfirst", "int", "abs"};

  for (int iter = 0; iter < 300; ++iter) {
    SetSpec s;
    s.line_number = 1;
    int type = pick(3);
    if (type == 0) {
      s.loop_type = LoopType::list;
      int n = 1 + pick(4);
      for (int i = 0; i < n; ++i) s.values.push_back(words[pick(words.size())]);
    } else {
      s.loop_type = type == 1 ? LoopType::range : LoopType::exprange;
      s.start = std::to_string(1 + pick(5));
      s.end = std::to_string(10 + pick(90));
      if (pick(2) == 0) {
        s.step = std::to_string(1 + pick(3));
      } else {
        s.points = 2 + pick(4);
      }
      if (pick(3) == 0) s.skips.push_back(std::to_string(pick(100)));
    }
    if (pick(3) == 0) {
      int n = 1 + pick(2);
      for (int i = 0; i < n; ++i) s.function_chain.push_back(functions[pick(functions.size())]);
    }
    ParameterSpec expected;
    expected.sets.push_back(s);

    std::string line = to_sentence(s, cfg());
    ParameterSpec parsed = parse_parameter_file(line + "\n", cfg());
    ASSERT_EQ(parsed.sets.size(), 1u) << line;
    EXPECT_TRUE(parsed.sets[0].same_structure(s)) << line;
  }
}

}  // namespace
}  // namespace jobsweep
