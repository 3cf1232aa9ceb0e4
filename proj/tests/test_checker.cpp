// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include <gtest/gtest.h>

#include "flipkit/checker.hpp"
#include "flipkit/parser.hpp"
#include "flipkit/stdlib.hpp"
#include "support.hpp"

namespace flipkit {
namespace {

std::vector<CheckError> errors_of(std::string_view text) {
  return check_program(parse_program(text)).errors;
}

std::set<CheckErrorKind> kinds_of(const std::vector<CheckError>& errors) {
  std::set<CheckErrorKind> out;
  for (const auto& e : errors) out.insert(e.kind);
  return out;
}

constexpr std::string_view kEither = "data Either a b = Left a | Right b\n";

TEST(Checker, StdlibAccepted) { EXPECT_NO_THROW(load_stdlib()); }

TEST(Checker, ReferenceSourcesAccepted) {
  CheckResult r = check_program(
      parse_program(testing::read_file("tests/fixtures/reference_sources.flp")));
  for (const auto& e : r.errors) ADD_FAILURE() << format_diagnostic("reference", e);
  EXPECT_TRUE(r.ok());
}

TEST(Checker, MiscAccepted) {
  EXPECT_NO_THROW(testing::must_check(testing::read_file("tests/fixtures/misc.flp")));
}

// Each fixture triggers its own kind and nothing else.
TEST(Checker, EveryKindHasAFixture) {
  for (CheckErrorKind kind : kAllCheckErrorKinds) {
    const std::string file =
        "tests/fixtures/errors/" + std::string(to_string(kind)) + ".flp";
    auto errors = check_program(parse_program(testing::read_file(file))).errors;
    EXPECT_EQ(kinds_of(errors), std::set<CheckErrorKind>{kind}) << file;
  }
}

TEST(Checker, Dup) {
  auto e = errors_of("flip dup : a <-> (a , a) = { x <-> (x , x) }");
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].kind, CheckErrorKind::NonlinearUse);
  EXPECT_NE(e[0].detail.find("'x'"), std::string::npos);
}

TEST(Checker, Drop) {
  auto e = errors_of("flip drop : (a , b) <-> a = { (x , y) <-> x }");
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].kind, CheckErrorKind::UnusedVariable);
  EXPECT_NE(e[0].detail.find("'y'"), std::string::npos);
}

TEST(Checker, UnknownVariableInOutput) {
  auto e = errors_of("flip bad : a <-> a = { x <-> y }");
  EXPECT_EQ(kinds_of(e), (std::set{CheckErrorKind::UnusedVariable,
                                   CheckErrorKind::UnknownName}));
}

TEST(Checker, ReferenceDoesNotConsume) {
  const std::string src =
      "flip uncurryF (f : a -> b <-> c) : (a , b) <-> (a , c) = "
      "{ (x , y) <-> y < f x > z <-> (x , z) }";
  EXPECT_TRUE(errors_of(src).empty());
  LinearityResult lin = check_linearity(parse_program(src).flips.at(0));
  const auto& b = lin.table.branches.at(0).bindings;
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].name, "x");
  EXPECT_EQ(b[0].bind_pos, 0);
  EXPECT_EQ(b[0].consume_pos, 2);
}

TEST(Checker, RebindAfterConsume) {
  const std::string src =
      "extern e : (Msg , a) <-> (Msg , a)\n"
      "flip r : (Msg , a) <-> (Msg , a) = "
      "{ (m , x) <-> (m , x) < e > (m , z) <-> (m , z) }";
  EXPECT_TRUE(errors_of(src).empty());
}

TEST(Checker, BbAnsUsage) {
  const Program p =
      parse_program(testing::read_file("tests/fixtures/reference_sources.flp"));
  LinearityResult lin = check_linearity(*p.find_flip("bbAns"));
  EXPECT_TRUE(lin.errors.empty());
  const BranchUsage& u = lin.table.branches.at(0);
  // xv: bound at the lhs, referenced by step 1, consumed by step 2.
  const Binding* xv = u.visible_at("xv", 1);
  ASSERT_NE(xv, nullptr);
  EXPECT_EQ(xv->bind_pos, 0);
  EXPECT_EQ(xv->consume_pos, 2);
  // c is rebound at every step.
  int cs = 0;
  for (const Binding& b : u.bindings) cs += b.name == "c";
  EXPECT_EQ(cs, 4);
}

TEST(Checker, Windows) {
  auto e1 = errors_of("flip w (g : a -> a <-> b) : a <-> b = { x <-> x < g x > y <-> y }");
  EXPECT_EQ(kinds_of(e1), std::set{CheckErrorKind::OutOfWindowReference});
  auto e2 = errors_of(
      "flip w (f : b -> a <-> b) : (a , b) <-> (b , b) = "
      "{ (p , q) <-> p < f r > r <-> (r , q) }");
  EXPECT_EQ(kinds_of(e2), std::set{CheckErrorKind::OutOfWindowReference});
}

TEST(Checker, Partition) {
  EXPECT_TRUE(errors_of(std::string(kEither) +
                        "flip s : Either a b <-> Either b a = {"
                        " (Left x) <-> (Right x); (Right y) <-> (Left y) }")
                  .empty());
  auto overlap = errors_of(std::string(kEither) +
                           "flip s : Either a a <-> Either a a = {"
                           " (Left x) <-> (Left x); (Right y) <-> (Left y) }");
  EXPECT_TRUE(kinds_of(overlap).count(CheckErrorKind::OverlappingPatterns));
  auto missing = errors_of(std::string(kEither) +
                           "flip s : a <-> Either a b = { x <-> (Left x) }");
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_EQ(missing[0].kind, CheckErrorKind::NonExhaustivePatterns);
  EXPECT_NE(missing[0].detail.find("(Right _)"), std::string::npos);
}

TEST(Checker, InputSidePartition) {
  auto e = errors_of(std::string(kEither) +
                     "flip s : Either a a <-> a = { (Left x) <-> x }");
  EXPECT_TRUE(kinds_of(e).count(CheckErrorKind::NonExhaustivePatterns));
}

TEST(Checker, NestedPartition) {
  EXPECT_NO_THROW(testing::must_check(testing::read_file("tests/fixtures/misc.flp")));
  auto e = errors_of(std::string(kEither) +
                     "flip n : Either (Either a a) a <-> Either a (Either a a) = {"
                     " (Left (Left x)) <-> (Left x);"
                     " (Right z) <-> (Right (Right z)) }");
  ASSERT_FALSE(e.empty());
  EXPECT_NE(e[0].detail.find("(Left (Right _))"), std::string::npos) << e[0].detail;
}

TEST(Checker, OpaqueTypesOnlyVariables) {
  auto e = errors_of(std::string(kEither) +
                     "flip s : Int <-> Either Int Int = { x <-> (Left x) }");
  EXPECT_TRUE(kinds_of(e).count(CheckErrorKind::NonExhaustivePatterns));
}

TEST(Checker, Types) {
  // flip f used at the reversed type.
  EXPECT_TRUE(errors_of("flip inv (f : a <-> b) : b <-> a = "
                        "{ y <-> y < flip f > x <-> x }").empty());
  auto pair = errors_of(std::string(kEither) +
                        "flip s : Either a b <-> Either b a = {"
                        " (Left x) <-> (Right x); (Right y) <-> (Left y) }\n"
                        "flip bad : (a , b) <-> Either b a = { p <-> p < s > q <-> q }");
  EXPECT_EQ(kinds_of(pair), std::set{CheckErrorKind::TypeMismatch});
  auto rigid = errors_of("flip bad : a <-> b = { x <-> x }");
  EXPECT_EQ(kinds_of(rigid), std::set{CheckErrorKind::TypeMismatch});
  auto index = errors_of(
      "flip u (f : Int -> a <-> a) : (Msg , a) <-> (Msg , a) = "
      "{ (m , y) <-> y < f m > z <-> (m , z) }");
  EXPECT_EQ(kinds_of(index), std::set{CheckErrorKind::TypeMismatch});
}

TEST(Checker, Names) {
  EXPECT_EQ(kinds_of(errors_of("flip f : a <-> a = { x <-> x < g > y <-> y }")),
            std::set{CheckErrorKind::UnknownName});
  EXPECT_EQ(kinds_of(errors_of("flip f : T <-> T = { x <-> x }")),
            std::set{CheckErrorKind::UnknownName});
  EXPECT_EQ(kinds_of(errors_of("data B = O | I\nflip f : B <-> B = { (Q) <-> (Q) }")),
            std::set{CheckErrorKind::UnknownName});
  EXPECT_EQ(kinds_of(errors_of("data B a = O a\nflip f : B <-> B = { x <-> x }")),
            std::set{CheckErrorKind::ArityMismatch});
}

TEST(Checker, ExternTypes) {
  EXPECT_TRUE(errors_of("extern e : (Msg , Int) <-> Msg\n"
                        "flip f : (Msg , Int) <-> Msg = { p <-> p < e > m <-> m }")
                  .empty());
}

TEST(Checker, AllErrorsReported) {
  auto e = errors_of("flip dup : a <-> (a , a) = { x <-> (x , x) }\n"
                     "flip drop : (a , b) <-> a = { (x , y) <-> x }");
  EXPECT_EQ(kinds_of(e), (std::set{CheckErrorKind::NonlinearUse,
                                   CheckErrorKind::UnusedVariable}));
}

TEST(Checker, Deterministic) {
  const std::string src = testing::read_file("tests/fixtures/errors/TypeMismatch.flp") +
                          "flip dup : a <-> (a , a) = { x <-> (x , x) }\n";
  auto a = errors_of(src);
  auto b = errors_of(src);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(format_diagnostic("f", a[i]), format_diagnostic("f", b[i]));
  }
  for (size_t i = 1; i < a.size(); ++i) EXPECT_FALSE(loc_before(a[i].site, a[i - 1].site));
}

TEST(Checker, DiagnosticFormat) {
  auto e = errors_of("flip drop : (a , b) <-> a = { (x , y) <-> x }");
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(format_diagnostic("d.flp", e[0]),
            "d.flp:1:36: UnusedVariable: 'y' is bound but never used");
}

}  // namespace
}  // namespace flipkit
