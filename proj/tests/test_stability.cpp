// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lexval/stability.hpp"

using namespace lexval;

namespace {

// Six grades: bottom, four interior judgement levels, top. The two-rule
// structure whose numeric conclusions reorder under reinterpretation.
Scale confidence() {
  return Scale::make("CONFIDENCE",
                     {"NONE", "WEAK", "MODEST", "FIRM", "STRONG", "FULL"});
}

RuleBase two_rules(const Scale& s) {
  const Atom a1{"SYMPTOM-A", "PRESENT"};
  const Atom a2{"SYMPTOM-B", "PRESENT"};
  const Atom h1{"DIAGNOSIS", "ALPHA"};
  const Atom h2{"DIAGNOSIS", "BETA"};
  const auto grade = [&](int r) { return Valuation::from_grades(s, {r}); };
  return RuleBase(s,
                  {{"first", {a1}, {{h1, grade(4)}}},    // strong rule
                   {"second", {a2}, {{h2, grade(3)}}}},  // firm rule
                  {{a1, grade(1)}, {a2, grade(2)}});     // weak/modest facts
}

Embedding classic(const Scale& s) {
  return Embedding::from_interior(
      s, {rational_from_decimal("0.3"), rational_from_decimal("0.4"),
          rational_from_decimal("0.6"), rational_from_decimal("0.9")});
}

Embedding shifted(const Scale& s) {
  return Embedding::from_interior(
      s, {rational_from_decimal("0.2"), rational_from_decimal("0.4"),
          rational_from_decimal("0.6"), rational_from_decimal("0.9")});
}

}  // namespace

TEST_CASE("decimal parsing is exact") {
  CHECK(rational_from_decimal("0.3") == Rational(3, 10));
  CHECK(rational_from_decimal("0.27") == Rational(27, 100));
  CHECK(rational_from_decimal(".5") == Rational(1, 2));
  CHECK(rational_from_decimal("1") == 1);
  CHECK(rational_from_decimal("0.09") == Rational(9, 100));
  CHECK(rational_from_decimal("27/100") == Rational(27, 100));
  CHECK(rational_from_decimal("09/100") == Rational(9, 100));
  CHECK_THROWS_AS(rational_from_decimal(""), ValidationError);
  CHECK_THROWS_AS(rational_from_decimal("a.b"), ValidationError);
  CHECK_THROWS_AS(rational_from_decimal("1/0"), ValidationError);
  CHECK(rational_to_string(Rational(27, 100)) == "27/100");
}

TEST_CASE("doubles convert to exact dyadic rationals") {
  CHECK(Rational(0.5) == Rational(1, 2));
  CHECK(Rational(0.375) == Rational(3, 8));
  // 0.3 is not representable; the conversion must keep the dyadic value.
  const Rational r(0.3);
  CHECK(r != Rational(3, 10));
  CHECK(static_cast<double>(r.convert_to<double>()) == 0.3);
}

TEST_CASE("embedding validation") {
  const Scale s = confidence();
  CHECK_NOTHROW(classic(s));
  // bottom not pinned to 0
  CHECK_THROWS_AS(Embedding::make(s, {Rational(1, 10), Rational(2, 10),
                                      Rational(3, 10), Rational(4, 10),
                                      Rational(5, 10), Rational(1)}),
                  ValidationError);
  // not strictly increasing
  CHECK_THROWS_AS(
      Embedding::from_interior(s, {Rational(3, 10), Rational(3, 10),
                                   Rational(6, 10), Rational(9, 10)}),
      ValidationError);
  // wrong arity
  CHECK_THROWS_AS(Embedding::from_interior(s, {Rational(1, 2)}), ValidationError);
  // interior touching a pin
  CHECK_THROWS_AS(
      Embedding::from_interior(s, {Rational(0), Rational(4, 10),
                                   Rational(6, 10), Rational(9, 10)}),
      ValidationError);
}

TEST_CASE("product evaluation reproduces the classic flip") {
  const Scale s = confidence();
  const RuleBase rb = two_rules(s);
  const Atom h1{"DIAGNOSIS", "ALPHA"};
  const Atom h2{"DIAGNOSIS", "BETA"};

  const auto first = evaluate_numeric(rb, classic(s), TNorm::Product);
  CHECK(first.at(h1) == Rational(27, 100));  // 0.3 * 0.9
  CHECK(first.at(h2) == Rational(24, 100));  // 0.4 * 0.6
  CHECK(first.at(h1) > first.at(h2));

  const auto second = evaluate_numeric(rb, shifted(s), TNorm::Product);
  CHECK(second.at(h1) == Rational(18, 100));  // 0.2 * 0.9
  CHECK(second.at(h2) == Rational(24, 100));
  CHECK(second.at(h1) < second.at(h2));
}

TEST_CASE("minimum evaluation ties where strict monotonicity asks for order") {
  // Rule strengths 0.6 = 0.6 with premise values 1 > 0.8.
  const Scale s = Scale::make("S", {"ZERO", "MARK", "NEAR", "ONE"});
  const Atom a1{"A1", "ON"};
  const Atom a2{"A2", "ON"};
  const Atom h1{"H1", "ON"};
  const Atom h2{"H2", "ON"};
  const auto grade = [&](int r) { return Valuation::from_grades(s, {r}); };
  const RuleBase rb(s,
                    {{"r1", {a1}, {{h1, grade(1)}}},
                     {"r2", {a2}, {{h2, grade(1)}}}},
                    {{a1, grade(3)}, {a2, grade(2)}});
  const Embedding emb = Embedding::from_interior(
      s, {rational_from_decimal("0.6"), rational_from_decimal("0.8")});

  const auto values = evaluate_numeric(rb, emb, TNorm::Min);
  CHECK(values.at(h1) == Rational(3, 5));
  CHECK(values.at(h2) == Rational(3, 5));

  // The lexicographic engine orders the same structure strictly.
  const InferenceResult lex = infer(rb, {Mode::MpgfR});
  CHECK(lex.derived.at(h1) > lex.derived.at(h2));
}

TEST_CASE("bounded-sum evaluation clamps at zero") {
  const Scale s = confidence();
  const RuleBase rb = two_rules(s);
  const Embedding emb = Embedding::from_interior(
      s, {rational_from_decimal("0.1"), rational_from_decimal("0.2"),
          rational_from_decimal("0.3"), rational_from_decimal("0.4")});
  const auto values = evaluate_numeric(rb, emb, TNorm::Lukasiewicz);
  // 0.4 + 0.1 - 1 < 0 and 0.3 + 0.2 - 1 < 0.
  CHECK(values.at(Atom{"DIAGNOSIS", "ALPHA"}) == 0);
  CHECK(values.at(Atom{"DIAGNOSIS", "BETA"}) == 0);
}

TEST_CASE("missing premises evaluate to zero") {
  const Scale s = confidence();
  const RuleBase rb = two_rules(s).with_facts(
      {{Atom{"SYMPTOM-A", "PRESENT"}, Valuation::from_grades(s, {1})}});
  const auto values = evaluate_numeric(rb, classic(s), TNorm::Product);
  CHECK(values.at(Atom{"DIAGNOSIS", "BETA"}) == 0);
  CHECK(values.at(Atom{"DIAGNOSIS", "ALPHA"}) == Rational(27, 100));
}

TEST_CASE("sampling is deterministic, valid and rejection-clean") {
  const Scale s = confidence();
  const auto a = sample_embeddings(s, 50, 99);
  const auto b = sample_embeddings(s, 50, 99);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].values() == b[i].values());
  }
  const auto c = sample_embeddings(s, 50, 100);
  bool any_difference = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (a[i].values() != c[i].values()) any_difference = true;
  }
  CHECK(any_difference);
  CHECK(sample_embeddings(s, 0, 1).empty());

  const Scale tiny = Scale::make("B", {"no", "yes"});
  const auto d = sample_embeddings(tiny, 3, 1);
  for (const auto& e : d) {
    CHECK(e.values() == std::vector<Rational>{Rational(0), Rational(1)});
  }
}

TEST_CASE("audit counts the injected flip and keeps the ordinal ranking fixed") {
  const Scale s = confidence();
  const RuleBase rb = two_rules(s);
  AuditOptions options;
  options.samples = 0;
  options.injected = {classic(s), shifted(s)};
  const StabilityReport report = audit(rb, options);
  CHECK(report.samples == 2);
  CHECK(report.flips == 1);
  CHECK(report.disagreements == 1);
  REQUIRE(report.witness.has_value());
  CHECK(report.witness->values_a.at(Atom{"DIAGNOSIS", "ALPHA"}) ==
        Rational(27, 100));
  CHECK(report.witness->values_b.at(Atom{"DIAGNOSIS", "ALPHA"}) ==
        Rational(18, 100));

  // The ordinal ranking ignores embeddings entirely.
  REQUIRE(report.lexicographic_ranking.size() == 2);
  CHECK(report.lexicographic_ranking[0].atom == Atom{"DIAGNOSIS", "BETA"});
  const InferenceResult direct = infer(rb, {Mode::MpgfR});
  CHECK(report.lexicographic_ranking[0].pv == direct.ranking[0].pv);
}

TEST_CASE("a single conclusion cannot flip") {
  const Scale s = confidence();
  const Atom a{"SYMPTOM-A", "PRESENT"};
  const RuleBase rb(s,
                    {{"only", {a}, {{Atom{"D", "X"}, Valuation::from_grades(s, {3})}}}},
                    {{a, Valuation::from_grades(s, {2})}});
  AuditOptions options;
  options.samples = 40;
  options.seed = 5;
  const StabilityReport report = audit(rb, options);
  CHECK(report.flips == 0);
  CHECK(report.disagreements == 0);
  CHECK_FALSE(report.witness.has_value());
}

TEST_CASE("sampled product embeddings flip; minimum never flips strictly") {
  const Scale s = confidence();
  const RuleBase rb = two_rules(s);

  AuditOptions product;
  product.samples = 300;
  product.seed = 7;
  product.injected = {classic(s), shifted(s)};
  const StabilityReport report = audit(rb, product);
  CHECK(report.samples == 302);
  CHECK(report.flips >= 1);

  AuditOptions minimum;
  minimum.tnorm = TNorm::Min;
  minimum.samples = 120;
  minimum.seed = 11;
  const StabilityReport min_report = audit(rb, minimum);
  CHECK(min_report.flips == 0);

  // The ordinal ranking is identical whatever the seed or T-norm.
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    AuditOptions o;
    o.samples = 20;
    o.seed = seed;
    const StabilityReport r = audit(rb, o);
    REQUIRE(r.lexicographic_ranking.size() ==
            report.lexicographic_ranking.size());
    for (std::size_t i = 0; i < r.lexicographic_ranking.size(); ++i) {
      CHECK(r.lexicographic_ranking[i].atom ==
            report.lexicographic_ranking[i].atom);
      CHECK(r.lexicographic_ranking[i].pv ==
            report.lexicographic_ranking[i].pv);
    }
  }
}

TEST_CASE("reports are deterministic and JSON-complete") {
  const Scale s = confidence();
  const RuleBase rb = two_rules(s);
  AuditOptions options;
  options.samples = 60;
  options.seed = 21;
  options.injected = {classic(s)};
  const std::string once = audit(rb, options).to_json().dump();
  const std::string twice = audit(rb, options).to_json().dump();
  CHECK(once == twice);

  const nlohmann::json j = audit(rb, options).to_json();
  for (const char* key : {"samples", "flips", "disagreements", "witness",
                          "lexicographic_ranking", "tnorm", "seed"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["tnorm"] == "product");
  CHECK(j["seed"] == 21);
}

TEST_CASE("auditing the medical demo keeps its golden ranking") {
  const Scale s = Scale::make(
      "PLAUSIBILITY", {"MINIMAL", "VERY-SMALL", "SMALL", "AVERAGE", "LARGE",
                       "VERY-LARGE", "MAXIMAL"});
  const Atom hematuria{"HEMATURIA-INTENSITY", "MACROHEMATURIA"};
  const Atom clot{"CLOT-OF-BLOOD", "YES"};
  const Atom form{"CLOT-FORM", "FORMLESS"};
  const auto grade = [&](int r) { return Valuation::from_grades(s, {r}); };
  const RuleBase rb(s,
                    {{"kidney",
                      {hematuria, clot, form},
                      {{Atom{"HYPOTHESIS", "UROLITHIASIS"}, grade(4)},
                       {Atom{"HYPOTHESIS", "TUMOR-OF-KIDNEY"}, grade(5)}}}},
                    {{hematuria, grade(6)}, {clot, grade(5)}, {form, grade(4)}});
  AuditOptions options;
  options.samples = 500;
  options.seed = 9;
  const StabilityReport report = audit(rb, options);
  CHECK(report.samples == 500);
  REQUIRE(report.lexicographic_ranking.size() == 2);
  CHECK(report.lexicographic_ranking[0].atom ==
        Atom{"HYPOTHESIS", "TUMOR-OF-KIDNEY"});
  CHECK(report.lexicographic_ranking[0].pv.to_string() ==
        "(LARGE, VERY-LARGE, VERY-LARGE)");
  CHECK(report.lexicographic_ranking[1].pv.to_string() ==
        "(LARGE, LARGE, VERY-LARGE)");
}

TEST_CASE("flip invariants") {
  const Scale s = confidence();
  const RuleBase rb = two_rules(s);
  AuditOptions options;
  options.samples = 25;
  options.seed = 13;
  const StabilityReport report = audit(rb, options);
  const std::uint64_t pairs =
      static_cast<std::uint64_t>(report.samples) * (report.samples - 1) / 2;
  CHECK(report.flips <= pairs);
  CHECK(report.disagreements <= pairs);
  CHECK(report.flips <= report.disagreements);
  CHECK((report.flips > 0) == report.witness.has_value());
}
