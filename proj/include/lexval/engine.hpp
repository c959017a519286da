// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexval/algebra.hpp"
#include "lexval/valuation.hpp"

namespace lexval {

/// An attribute = value pair, e.g. CLOT-FORM = FORMLESS.
struct Atom {
  std::string attribute;
  std::string value;

  bool operator==(const Atom& other) const {
    return attribute == other.attribute && value == other.value;
  }
  bool operator!=(const Atom& other) const { return !(*this == other); }
  bool operator<(const Atom& other) const {
    if (attribute != other.attribute) return attribute < other.attribute;
    return value < other.value;
  }

  std::string to_string() const { return attribute + " = " + value; }
};

struct Fact {
  Atom atom;
  Valuation pv;
};

struct Conclusion {
  Atom atom;
  Valuation pv;  // rule plausibility toward this conclusion; must be > bottom
};

struct Rule {
  std::string id;
  std::vector<Atom> premises;       // nonempty
  std::vector<Conclusion> conclusions;  // nonempty; fire together
};

/// A scale, rules and facts, validated as a unit: one scale everywhere,
/// unique rule ids, at most one fact per atom, conclusion pvs above bottom.
class RuleBase {
 public:
  RuleBase(Scale scale, std::vector<Rule> rules, std::vector<Fact> facts);

  const Scale& scale() const { return scale_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<Fact>& facts() const { return facts_; }

  /// Same scale, rules and facts in the same order.
  bool operator==(const RuleBase& other) const;

  /// Copy with a different rule order (inference must not care).
  RuleBase with_rule_order(const std::vector<std::size_t>& permutation) const;
  /// Copy with different facts (used by consultation sessions).
  RuleBase with_facts(std::vector<Fact> facts) const;

 private:
  Scale scale_;
  std::vector<Rule> rules_;
  std::vector<Fact> facts_;
};

/// How a fired rule turns (premise conjunction, rule pv) into a conclusion pv.
enum class Mode {
  MpgfR,    // lexicographic conjunction; strictly monotone
  MpgfS,    // implication-based; only non-strictly monotone
  FlatMin,  // minimum over first grades; the classical collapse, kept for
            // comparison only (it ties where MpgfR orders strictly)
};

Mode mode_from_string(std::string_view name);
std::string to_string(Mode mode);

using Environment = std::map<Atom, Valuation>;

/// Conjunction of the rule's premise plausibilities under `env`. A premise
/// with no value contributes bottom, which annihilates the whole conjunction:
/// a rule cannot fire at all unless every premise is known.
Valuation premise_pv(const RuleBase& rb, const Rule& rule,
                     const Environment& env,
                     std::size_t max_len = kDefaultMaxLength);

/// Evaluates one rule under `env`: one (atom, pv) per conclusion.
std::vector<std::pair<Atom, Valuation>> fire(
    const RuleBase& rb, const Rule& rule, const Environment& env, Mode mode,
    std::size_t max_len = kDefaultMaxLength);

/// One successful derivation, re-playable: folding premise_pvs and applying
/// the mode to (conjunction, rule_pv) reproduces `derived` exactly.
struct TraceStep {
  std::string rule_id;
  Atom conclusion;
  std::vector<Valuation> premise_pvs;
  Valuation conjunction;
  Valuation rule_pv;
  Valuation derived;
  int iteration = 0;
};

struct RankedAtom {
  Atom atom;
  Valuation pv;
};

struct InferenceResult {
  /// Final plausibility of every atom concluded by some rule (bottom when the
  /// rule never fired).
  std::map<Atom, Valuation> derived;
  /// Concluded atoms with pv above bottom, most plausible first. Equal pvs
  /// share a rank and order among themselves by atom.
  std::vector<RankedAtom> ranking;
  std::vector<TraceStep> trace;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

struct InferOptions {
  Mode mode = Mode::MpgfR;
  std::size_t max_valuation_length = kDefaultMaxLength;
};

/// Forward chaining to fixpoint. Facts seed the environment; rules fire
/// repeatedly; competing derivations of one atom aggregate by disjunction
/// (order maximum), updating only on strict increase, until nothing moves.
/// Terminates: every update strictly increases one atom in a finite set of
/// reachable values. Aggregation across rules and multi-step chaining are
/// shell extensions beyond single-step modus ponens; see README.
InferenceResult infer(const RuleBase& rb, const InferOptions& options = {});

}  // namespace lexval
