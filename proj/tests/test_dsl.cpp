// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lexval/dsl.hpp"

using namespace lexval;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path data_dir() { return LEXVAL_TEST_DATA; }

Valuation val(const Scale& s, std::vector<int> ranks) {
  return Valuation::from_grades(s, std::move(ranks));
}

}  // namespace

TEST_CASE("the medical document parses into the expected structure") {
  const RuleBase rb = parse_document(slurp(data_dir() / "valid/medical.lex"));
  CHECK(rb.scale().size() == 7);
  CHECK(rb.scale().name() == "PLAUSIBILITY");
  REQUIRE(rb.rules().size() == 1);
  const Rule& rule = rb.rules().front();
  CHECK(rule.id == "kidney");
  CHECK(rule.premises.size() == 3);
  REQUIRE(rule.conclusions.size() == 2);
  CHECK(rule.conclusions[0].atom == Atom{"HYPOTHESIS", "UROLITHIASIS"});
  CHECK(rule.conclusions[0].pv == val(rb.scale(), {4}));
  CHECK(rule.conclusions[1].pv == val(rb.scale(), {5}));
  CHECK(rb.facts().size() == 3);

  const InferenceResult result = infer(rb);
  REQUIRE(result.ranking.size() == 2);
  CHECK(result.ranking[0].pv.to_string() ==
        "(LARGE, VERY-LARGE, VERY-LARGE)");
  CHECK(result.ranking[1].pv.to_string() == "(LARGE, LARGE, VERY-LARGE)");
}

TEST_CASE("empty input asks for a scale") {
  try {
    parse_document("");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 1);
    CHECK(e.span.column == 1);
    const std::string what = e.what();
    CHECK(what.find("scale") != std::string::npos);
  }
}

TEST_CASE("unknown grades carry the span of the offending token") {
  const std::string doc = "scale S { A B C }\nrule r1: if X = Y then Z = W [HUGE]\n";
  try {
    parse_document(doc);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 2);
    CHECK(e.span.column == 31);
    CHECK(doc.substr(e.span.offset, 4) == "HUGE");
    CHECK(e.found == "HUGE");
  }
}

TEST_CASE("every malformed document fails with a usable span") {
  const auto dir = data_dir() / "malformed";
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string text = slurp(entry.path());
    INFO("document: " << entry.path().filename().string());
    try {
      parse_document(text);
      FAIL_CHECK("expected ParseError for " << entry.path().filename().string());
    } catch (const ParseError& e) {
      CHECK(e.span.line >= 1);
      CHECK(e.span.column >= 1);
      CHECK(e.span.offset <= text.size());
      CHECK_FALSE(std::string(e.what()).empty());
    }
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("parse then serialize is the identity on rule bases") {
  const auto dir = data_dir() / "valid";
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    INFO("document: " << entry.path().filename().string());
    const RuleBase rb = parse_document(slurp(entry.path()));
    const std::string canonical = serialize(rb);
    const RuleBase reparsed = parse_document(canonical);
    CHECK(reparsed == rb);
    CHECK(serialize(reparsed) == canonical);  // canonical form is a fixpoint
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("custom negation tables round-trip") {
  const RuleBase rb =
      parse_document(slurp(data_dir() / "valid/skewed_negation.lex"));
  CHECK_FALSE(rb.scale().negation_is_default());
  CHECK_FALSE(rb.scale().negation_is_weak());
  const std::string canonical = serialize(rb);
  CHECK(canonical.find("negation {") != std::string::npos);
  CHECK(parse_document(canonical) == rb);
}

TEST_CASE("a default-equivalent table serializes without the table") {
  const RuleBase rb = parse_document(slurp(data_dir() / "valid/negation.lex"));
  CHECK(rb.scale().negation_is_default());
  CHECK(serialize(rb).find("negation {") == std::string::npos);
  CHECK(parse_document(serialize(rb)) == rb);
}

TEST_CASE("unspaced negation arrows lex correctly") {
  const Scale s = parse_scale_decl("scale S { A B } negation { A->B B->A }");
  CHECK(s.negate_rank(0) == 1);
}

TEST_CASE("inline scale declarations reject trailing content") {
  CHECK_THROWS_AS(parse_scale_decl("scale S { A B } fact X = Y [B]"),
                  ParseError);
  CHECK(parse_scale_decl("scale S { A B C }").size() == 3);
}

TEST_CASE("keywords cannot be identifiers") {
  try {
    parse_document("scale S { A B }\nfact rule = Y [B]\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 2);
    CHECK(std::string(e.what()).find("keyword") != std::string::npos);
  }
}

TEST_CASE("duplicate facts and rules point at the duplicate") {
  try {
    parse_document("scale S { A B }\nfact X = Y [B]\nfact X = Y [A]\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 3);
  }
  try {
    parse_document(
        "scale S { A B }\nrule r: if X = Y then Z = W [B]\n"
        "rule r: if P = Q then Z = W [B]\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 3);
    CHECK(e.span.column == 6);
  }
}

TEST_CASE("expression evaluation") {
  const Scale s = Scale::make(
      "PLAUSIBILITY", {"MINIMAL", "VERY-SMALL", "SMALL", "AVERAGE", "LARGE",
                       "VERY-LARGE", "MAXIMAL"});
  CHECK(eval_expression("(LARGE, VERY-LARGE) AND (LARGE)", s) ==
        val(s, {4, 4, 5}));
  CHECK(eval_expression("NOT (MINIMAL)", s) == val(s, {6}));
  CHECK(eval_expression("MPR((LARGE), (LARGE))", s) == val(s, {4, 4}));
  CHECK(eval_expression("RIMP((AVERAGE), ((AVERAGE, VERY-LARGE)))", s) ==
        val(s, {5}));
  CHECK(eval_expression("SIMP((SMALL), (AVERAGE))", s) == val(s, {4}));
  CHECK(eval_expression("MPS((VERY-LARGE), (AVERAGE))", s) == val(s, {3}));
}

TEST_CASE("expression precedence and grouping") {
  const Scale s = Scale::make("S", {"N0", "N1", "N2", "N3", "N4"});
  // NOT binds tighter than AND, AND tighter than OR.
  CHECK(eval_expression("NOT N4 AND N3 OR N2", s) ==
        disj(conj(neg(val(s, {4})), val(s, {3})), val(s, {2})));
  CHECK(eval_expression("N1 OR N2 AND N3", s) ==
        disj(val(s, {1}), conj(val(s, {2}), val(s, {3}))));
  CHECK(eval_expression("(N1 OR N2) AND N3", s) ==
        conj(disj(val(s, {1}), val(s, {2})), val(s, {3})));
  CHECK(eval_expression("NOT NOT N1", s) == val(s, {1}));
  // A parenthesized single grade is the same as the literal.
  CHECK(eval_expression("(N2)", s) == val(s, {2}));
  CHECK(eval_expression("((N2))", s) == val(s, {2}));
  // Multi-grade literals canonicalize.
  CHECK(eval_expression("(N2, N1, N4)", s) == val(s, {1, 2}));
}

TEST_CASE("expression errors carry spans") {
  const Scale s = Scale::make("S", {"A", "B"});
  const auto expect_error = [&](std::string_view text, int column) {
    try {
      eval_expression(text, s);
      FAIL_CHECK("expected ParseError for: " << std::string(text));
    } catch (const ParseError& e) {
      CHECK(e.span.line == 1);
      CHECK(e.span.column == column);
    }
  };
  expect_error("A AND", 6);        // missing operand
  expect_error("A B", 3);          // missing operator
  expect_error("(A", 3);           // unclosed paren
  expect_error("MPR(A)", 6);       // missing second argument
  expect_error("HUGE", 1);         // unknown grade
  expect_error("AND A", 1);        // operator in operand position
}

TEST_CASE("operator words are reserved inside expressions") {
  const Scale s = Scale::make("S", {"A", "AND"});  // unwise but legal scale
  // The grade named AND cannot appear bare, but works inside a literal.
  CHECK(eval_expression("(A, AND)", s) == val(s, {0}));
  CHECK_THROWS_AS(eval_expression("AND", s), ParseError);
}

TEST_CASE("serializer emits multi-grade pvs as literals") {
  const RuleBase rb = parse_document(slurp(data_dir() / "valid/literals.lex"));
  const std::string canonical = serialize(rb);
  CHECK(canonical.find("[(MID, HIGH)]") != std::string::npos);
  CHECK(canonical.find("[(LOW, MID)]") != std::string::npos);
  CHECK(parse_document(canonical) == rb);
}
