// SPDX-License-Identifier: Apache-2.0
//
// lexval command line: a calculator, a forward-chaining inference shell, a
// law checker, a numeric-stability auditor and an interactive consultation
// loop over lexicographic plausibility valuations.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lexval/dsl.hpp"
#include "lexval/oracle.hpp"
#include "lexval/stability.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;   // parse or semantic failure
constexpr int kExitCheckFailure = 2;  // a property check did not pass
constexpr int kExitInternalError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lexval::Error("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

lexval::Scale load_scale(const std::string& inline_decl,
                         const std::string& doc_path) {
  if (!inline_decl.empty() && !doc_path.empty()) {
    throw lexval::Error("pass either --scale or --doc, not both");
  }
  if (!inline_decl.empty()) return lexval::parse_scale_decl(inline_decl);
  if (!doc_path.empty()) {
    return lexval::parse_document(read_file(doc_path)).scale();
  }
  throw lexval::Error("no scale given; pass --scale or --doc");
}

struct EvalArgs {
  std::string expression;
  std::string expression_file;
  std::string scale_decl;
  std::string doc_path;
};

int run_eval(const EvalArgs& args, bool json) {
  const lexval::Scale scale = load_scale(args.scale_decl, args.doc_path);
  std::string text = args.expression;
  if (!args.expression_file.empty()) {
    if (!text.empty()) {
      throw lexval::Error("pass the expression inline or via --file, not both");
    }
    text = read_file(args.expression_file);
  }
  if (text.empty()) throw lexval::Error("no expression given");
  const lexval::Valuation result = lexval::eval_expression(text, scale);
  if (json) {
    std::cout << result.to_json().dump() << '\n';
  } else {
    std::cout << result.to_string() << '\n';
  }
  return kExitOk;
}

struct InferArgs {
  std::string doc_path;
  std::string mode = "mpgf-r";
};

int run_infer(const InferArgs& args, bool json) {
  const lexval::RuleBase rb = lexval::parse_document(read_file(args.doc_path));
  lexval::InferOptions options;
  options.mode = lexval::mode_from_string(args.mode);
  const lexval::InferenceResult result = lexval::infer(rb, options);
  if (json) {
    std::cout << result.to_json().dump() << '\n';
  } else {
    std::cout << result.to_table();
  }
  return kExitOk;
}

struct CheckArgs {
  int scale_size = 3;
  int max_len = 3;
  std::uint64_t cost_ceiling = 10'000'000;
  bool inject_fault = false;
};

int run_check(const CheckArgs& args, bool json) {
  if (args.scale_size < 2) throw lexval::Error("--scale-size must be at least 2");
  if (args.max_len < 1) throw lexval::Error("--max-len must be at least 1");
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(args.scale_size));
  for (int i = 0; i < args.scale_size; ++i) {
    labels.push_back("g" + std::to_string(i));
  }
  const lexval::Scale scale = lexval::Scale::make("check", std::move(labels));
  lexval::LawCheckOptions options;
  options.cost_ceiling = args.cost_ceiling;
  options.fault = args.inject_fault ? lexval::Fault::SkipReduceInConj
                                    : lexval::Fault::None;
  const lexval::LawReport report =
      lexval::check_laws(scale, static_cast<std::size_t>(args.max_len), options);
  if (json) {
    std::cout << report.to_json().dump() << '\n';
  } else {
    std::cout << report.to_table();
  }
  return report.all_pass() ? kExitOk : kExitCheckFailure;
}

struct StabilityArgs {
  std::string doc_path;
  std::string tnorm = "product";
  int samples = 200;
  std::uint64_t seed = 1;
  std::vector<std::string> injected;
};

int run_stability(const StabilityArgs& args, bool json) {
  const lexval::RuleBase rb = lexval::parse_document(read_file(args.doc_path));
  lexval::AuditOptions options;
  options.tnorm = lexval::tnorm_from_string(args.tnorm);
  options.samples = args.samples;
  options.seed = args.seed;
  for (const std::string& entry : args.injected) {
    std::vector<lexval::Rational> interior;
    std::size_t start = 0;
    while (start <= entry.size()) {
      const std::size_t comma = entry.find(',', start);
      const std::string piece =
          entry.substr(start, comma == std::string::npos ? std::string::npos
                                                         : comma - start);
      interior.push_back(lexval::rational_from_decimal(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    options.injected.push_back(
        lexval::Embedding::from_interior(rb.scale(), std::move(interior)));
  }
  const lexval::StabilityReport report = lexval::audit(rb, options);
  if (json) {
    std::cout << report.to_json().dump() << '\n';
  } else {
    std::cout << report.to_table();
  }
  return kExitOk;
}

struct ConsultArgs {
  std::string doc_path;
  std::string answers_path;
  std::string mode = "mpgf-r";
};

// Premise atoms that no rule concludes, in first-appearance order: the
// questions a consultation asks.
std::vector<lexval::Atom> askable_atoms(const lexval::RuleBase& rb) {
  std::vector<lexval::Atom> concluded;
  for (const auto& rule : rb.rules()) {
    for (const auto& concl : rule.conclusions) concluded.push_back(concl.atom);
  }
  std::vector<lexval::Atom> known;
  for (const auto& fact : rb.facts()) known.push_back(fact.atom);
  std::vector<lexval::Atom> out;
  for (const auto& rule : rb.rules()) {
    for (const auto& premise : rule.premises) {
      const auto seen = [&](const std::vector<lexval::Atom>& vs) {
        return std::find(vs.begin(), vs.end(), premise) != vs.end();
      };
      if (!seen(concluded) && !seen(known) && !seen(out)) out.push_back(premise);
    }
  }
  return out;
}

int run_consult(const ConsultArgs& args, bool json) {
  const lexval::RuleBase rb = lexval::parse_document(read_file(args.doc_path));
  const bool scripted = !args.answers_path.empty();
  std::ifstream answers;
  if (scripted) {
    answers.open(args.answers_path);
    if (!answers) {
      throw lexval::Error("cannot open answers file '" + args.answers_path + "'");
    }
  }

  std::vector<lexval::Fact> facts = rb.facts();
  for (const auto& atom : askable_atoms(rb)) {
    while (true) {
      std::cout << atom.to_string() << "? ";
      std::string answer;
      if (scripted) {
        if (!std::getline(answers, answer)) {
          throw lexval::Error("answers file ended before atom " + atom.to_string());
        }
        std::cout << answer << '\n';
      } else {
        if (!std::getline(std::cin, answer)) {
          std::cout << '\n';
          answer = "unknown";
        }
      }
      while (!answer.empty() && (answer.back() == ' ' || answer.back() == '\r')) {
        answer.pop_back();
      }
      try {
        if (answer != "unknown") {
          facts.push_back(
              lexval::Fact{atom, lexval::Valuation::parse(answer, rb.scale())});
        }
        break;
      } catch (const lexval::Error& e) {
        if (scripted) throw;
        std::cout << "  " << e.what() << " -- try again\n";
      }
    }
  }

  lexval::InferOptions options;
  options.mode = lexval::mode_from_string(args.mode);
  const lexval::InferenceResult result = lexval::infer(rb.with_facts(facts), options);
  if (json) {
    std::cout << result.to_json().dump() << '\n';
  } else {
    std::cout << result.to_table();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexicographic plausibility valuations: calculator, inference "
               "shell, law checker and stability auditor"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit JSON instead of human-readable text");
  std::string global_scale;
  app.add_option("--scale", global_scale,
                 "inline scale declaration, e.g. \"scale L { LOW HIGH }\"");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a calculator expression");
  eval_cmd->add_option("expression", eval_args.expression,
                       "expression, e.g. \"(LARGE, VERY-LARGE) AND (LARGE)\"");
  eval_cmd->add_option("--file", eval_args.expression_file,
                       "read the expression from a file");
  eval_cmd->add_option("--scale", eval_args.scale_decl,
                       "inline scale declaration, e.g. \"scale L { LOW HIGH }\"");
  eval_cmd->add_option("--doc", eval_args.doc_path,
                       "take the scale from a rule-base document");

  InferArgs infer_args;
  auto* infer_cmd = app.add_subcommand("infer", "run forward chaining on a document");
  infer_cmd->add_option("document", infer_args.doc_path, "rule-base document")
      ->required();
  infer_cmd->add_option("--mode", infer_args.mode,
                        "mpgf-r (default), mpgf-s or flat-min");

  CheckArgs check_args;
  auto* check_cmd =
      app.add_subcommand("check", "verify the algebraic laws exhaustively");
  check_cmd->add_option("--scale-size", check_args.scale_size,
                        "number of grades of the generated scale (default 3)");
  check_cmd->add_option("--max-len", check_args.max_len,
                        "valuation length bound (default 3)");
  check_cmd->add_option("--cost-ceiling", check_args.cost_ceiling,
                        "maximum predicate evaluations (default 10^7)");
  check_cmd
      ->add_flag("--inject-fault", check_args.inject_fault,
                 "corrupt the conjunction to validate the checker itself")
      ->group("");  // hidden

  StabilityArgs stability_args;
  auto* stability_cmd = app.add_subcommand(
      "stability", "audit numeric T-norm inference under rank-preserving embeddings");
  stability_cmd
      ->add_option("document", stability_args.doc_path, "rule-base document")
      ->required();
  stability_cmd->add_option("--tnorm", stability_args.tnorm,
                            "product (default), min or lukasiewicz");
  stability_cmd->add_option("--samples", stability_args.samples,
                            "number of sampled embeddings (default 200)");
  stability_cmd->add_option("--seed", stability_args.seed,
                            "random seed (default 1)");
  stability_cmd->add_option(
      "--inject", stability_args.injected,
      "fixed embedding as comma-separated interior values, e.g. "
      "\"0.3,0.4,0.6,0.9\" (repeatable)");

  ConsultArgs consult_args;
  auto* consult_cmd =
      app.add_subcommand("consult", "interactive consultation over a document");
  consult_cmd->add_option("document", consult_args.doc_path, "rule-base document")
      ->required();
  consult_cmd->add_option("--answers", consult_args.answers_path,
                          "scripted answers, one per line ('unknown' allowed)");
  consult_cmd->add_option("--mode", consult_args.mode,
                          "mpgf-r (default), mpgf-s or flat-min");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitDomainError;
  }

  try {
    if (eval_args.scale_decl.empty()) eval_args.scale_decl = global_scale;
    if (eval_cmd->parsed()) return run_eval(eval_args, json);
    if (infer_cmd->parsed()) return run_infer(infer_args, json);
    if (check_cmd->parsed()) return run_check(check_args, json);
    if (stability_cmd->parsed()) return run_stability(stability_args, json);
    if (consult_cmd->parsed()) return run_consult(consult_args, json);
    std::cerr << "no subcommand\n";
    return kExitDomainError;
  } catch (const lexval::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const lexval::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
}
