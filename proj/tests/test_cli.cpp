// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using std::filesystem::path;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run(const std::string& args) {
  const std::string command = std::string(LEXVAL_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

path data_dir() { return LEXVAL_TEST_DATA; }

std::string doc(const char* name) {
  return (data_dir() / "valid" / name).string();
}

path write_temp(const std::string& name, const std::string& contents) {
  const path p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << contents;
  return p;
}

constexpr const char* kScale =
    "\"scale PLAUSIBILITY { MINIMAL VERY-SMALL SMALL AVERAGE LARGE "
    "VERY-LARGE MAXIMAL }\"";

}  // namespace

TEST_CASE("eval prints the valuation") {
  const auto r = run(std::string("eval --scale ") + kScale +
                     " \"(LARGE,VERY-LARGE) AND (VERY-LARGE)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "(LARGE, VERY-LARGE, VERY-LARGE)\n");

  const auto n = run(std::string("eval --scale ") + kScale + " \"NOT (MAXIMAL)\"");
  CHECK(n.exit_code == 0);
  CHECK(n.output == "(MINIMAL)\n");

  const auto rimp = run(std::string("eval --scale ") + kScale +
                        " \"RIMP((AVERAGE), ((AVERAGE, VERY-LARGE)))\"");
  CHECK(rimp.exit_code == 0);
  CHECK(rimp.output == "(VERY-LARGE)\n");
}

TEST_CASE("eval takes its scale from a document and emits JSON") {
  const auto r = run("--json eval --doc " + doc("medical.lex") +
                     " \"(LARGE, VERY-LARGE) AND (LARGE)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "[\"LARGE\",\"LARGE\",\"VERY-LARGE\"]\n");
}

TEST_CASE("eval reports spans for bad expressions") {
  const auto r = run(std::string("eval --scale ") + kScale + " \"(LARGE AND\"");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") != std::string::npos);
  CHECK(r.output.find("1:11") != std::string::npos);

  const auto unknown = run(std::string("eval --scale ") + kScale + " \"HUGE\"");
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.output.find("HUGE") != std::string::npos);
}

TEST_CASE("eval requires a scale source") {
  const auto r = run("eval \"(A)\"");
  CHECK(r.exit_code == 1);

  const auto both = run(std::string("eval --scale ") + kScale + " --doc " +
                        doc("medical.lex") + " \"(LARGE)\"");
  CHECK(both.exit_code == 1);
}

TEST_CASE("the scale flag also works globally") {
  const auto r = run(std::string("--scale ") + kScale +
                     " eval \"MPR((LARGE), (LARGE))\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "(LARGE, LARGE)\n");
}

TEST_CASE("eval reads expressions from a file") {
  const path expr = write_temp("lexval_expr.txt", "NOT (MINIMAL)\n");
  const auto r = run(std::string("eval --scale ") + kScale + " --file " +
                     expr.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output == "(MAXIMAL)\n");
}

TEST_CASE("infer reproduces the demo document") {
  const auto r = run("infer " + doc("medical.lex"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("1. HYPOTHESIS = TUMOR-OF-KIDNEY") != std::string::npos);
  CHECK(r.output.find("(LARGE, VERY-LARGE, VERY-LARGE)") != std::string::npos);
  CHECK(r.output.find("2. HYPOTHESIS = UROLITHIASIS") != std::string::npos);
  CHECK(r.output.find("(LARGE, LARGE, VERY-LARGE)") != std::string::npos);

  const auto flat = run("infer " + doc("medical.lex") + " --mode flat-min");
  CHECK(flat.exit_code == 0);
  CHECK(flat.output.find("(tie)") != std::string::npos);

  const auto json = run("--json infer " + doc("medical.lex"));
  CHECK(json.exit_code == 0);
  CHECK(json.output.find("\"ranking\"") != std::string::npos);
  CHECK(json.output.find("\"trace\"") != std::string::npos);
}

TEST_CASE("infer on a factless document ranks nothing") {
  const path factless = write_temp(
      "lexval_norules.lex",
      "scale S { LO MID HI }\nrule r: if A = ON then B = SET [MID]\n");
  const auto r = run("infer " + factless.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("(empty, no conclusion above bottom)") !=
        std::string::npos);
}

TEST_CASE("infer fails cleanly on malformed documents") {
  const auto missing = run("infer /nonexistent.lex");
  CHECK(missing.exit_code == 1);

  const auto bad = run("infer " +
                       (data_dir() / "malformed" / "unknown_grade.lex").string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("2:31") != std::string::npos);
  CHECK(bad.output.find("HUGE") != std::string::npos);
}

TEST_CASE("check passes on small scales") {
  const auto r = run("check --scale-size 3 --max-len 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("residuation-adjunction") != std::string::npos);
  CHECK(r.output.find("FAIL") == std::string::npos);

  const auto json = run("--json check --scale-size 4 --max-len 2");
  CHECK(json.exit_code == 0);
  CHECK(json.output.find("\"pass\":true") != std::string::npos);
  CHECK(json.output.find("\"pass\":false") == std::string::npos);
}

TEST_CASE("check detects an injected fault") {
  const auto r = run("check --scale-size 3 --max-len 2 --inject-fault");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("FAIL") != std::string::npos);
  CHECK(r.output.find("counterexample") != std::string::npos);
}

TEST_CASE("check refuses budgets above the cost ceiling") {
  const auto r = run("check --scale-size 4 --max-len 3 --cost-ceiling 100");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("ceiling") != std::string::npos);
}

TEST_CASE("stability reports the injected reinterpretation flip") {
  const auto r = run("stability " + doc("unstable.lex") +
                     " --samples 0 --inject 0.3,0.4,0.6,0.9 --inject "
                     "0.2,0.4,0.6,0.9");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("strictly reversed conclusions: 1") != std::string::npos);
  CHECK(r.output.find("27/100") != std::string::npos);
  CHECK(r.output.find("9/50") != std::string::npos);
  CHECK(r.output.find("6/25") != std::string::npos);
}

TEST_CASE("stability JSON is byte-identical across reruns") {
  const std::string cmd = "--json stability " + doc("unstable.lex") +
                          " --samples 120 --seed 17";
  const auto a = run(cmd);
  const auto b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"seed\":17") != std::string::npos);
}

TEST_CASE("consult scripts deterministically") {
  const path answers =
      write_temp("lexval_answers.txt", "MAXIMAL\nVERY-LARGE\nLARGE\n");
  const std::string base = doc("medical.lex");

  // Strip the document's facts so the session must ask.
  const auto factless_text = [&] {
    std::ifstream in(base);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const auto cut = text.find("fact");
    return text.substr(0, cut);
  }();
  const path factless = write_temp("lexval_factless.lex", factless_text);

  const std::string cmd =
      "consult " + factless.string() + " --answers " + answers.string();
  const auto first = run(cmd);
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("HEMATURIA-INTENSITY = MACROHEMATURIA? MAXIMAL") !=
        std::string::npos);
  CHECK(first.output.find("1. HYPOTHESIS = TUMOR-OF-KIDNEY") != std::string::npos);
  const auto second = run(cmd);
  CHECK(first.output == second.output);

  const path unknowns = write_temp("lexval_unknowns.txt", "unknown\nunknown\nunknown\n");
  const auto empty = run("consult " + factless.string() + " --answers " +
                         unknowns.string());
  CHECK(empty.exit_code == 0);
  CHECK(empty.output.find("(empty, no conclusion above bottom)") !=
        std::string::npos);

  const path bad = write_temp("lexval_bad.txt", "NONSENSE\n");
  const auto scripted_error =
      run("consult " + factless.string() + " --answers " + bad.string());
  CHECK(scripted_error.exit_code == 1);
}

TEST_CASE("usage errors exit with the domain-error code") {
  CHECK(run("").exit_code == 1);
  CHECK(run("infer").exit_code == 1);
  CHECK(run("frobnicate").exit_code == 1);
  CHECK(run("--help").exit_code == 0);
}
