// SPDX-License-Identifier: Apache-2.0
#include "lexval/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace lexval {

RuleBase::RuleBase(Scale scale, std::vector<Rule> rules, std::vector<Fact> facts)
    : scale_(std::move(scale)), rules_(std::move(rules)), facts_(std::move(facts)) {
  std::set<std::string> ids;
  for (const auto& rule : rules_) {
    if (!ids.insert(rule.id).second) {
      throw ValidationError("duplicate rule id '" + rule.id + "'");
    }
    if (rule.premises.empty()) {
      throw ValidationError("rule '" + rule.id + "' has no premises");
    }
    if (rule.conclusions.empty()) {
      throw ValidationError("rule '" + rule.id + "' has no conclusions");
    }
    for (const auto& concl : rule.conclusions) {
      if (concl.pv.scale() != scale_) {
        throw ValidationError("rule '" + rule.id + "' conclusion pv is not on scale '" +
                              scale_.name() + "'");
      }
      if (concl.pv.is_bottom()) {
        throw ValidationError("rule '" + rule.id + "' concludes " +
                              concl.atom.to_string() +
                              " with the bottom plausibility");
      }
    }
  }
  std::set<Atom> fact_atoms;
  for (const auto& fact : facts_) {
    if (fact.pv.scale() != scale_) {
      throw ValidationError("fact " + fact.atom.to_string() + " pv is not on scale '" +
                            scale_.name() + "'");
    }
    if (!fact_atoms.insert(fact.atom).second) {
      throw ValidationError("duplicate fact for atom " + fact.atom.to_string());
    }
  }
}

bool RuleBase::operator==(const RuleBase& other) const {
  auto rule_eq = [](const Rule& a, const Rule& b) {
    if (a.id != b.id || a.premises != b.premises ||
        a.conclusions.size() != b.conclusions.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.conclusions.size(); ++i) {
      if (a.conclusions[i].atom != b.conclusions[i].atom ||
          a.conclusions[i].pv != b.conclusions[i].pv) {
        return false;
      }
    }
    return true;
  };
  if (scale_ != other.scale_ || rules_.size() != other.rules_.size() ||
      facts_.size() != other.facts_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (!rule_eq(rules_[i], other.rules_[i])) return false;
  }
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    if (facts_[i].atom != other.facts_[i].atom ||
        facts_[i].pv != other.facts_[i].pv) {
      return false;
    }
  }
  return true;
}

RuleBase RuleBase::with_rule_order(const std::vector<std::size_t>& permutation) const {
  if (permutation.size() != rules_.size()) {
    throw ValidationError("rule permutation has the wrong size");
  }
  std::vector<Rule> reordered;
  reordered.reserve(rules_.size());
  for (std::size_t idx : permutation) reordered.push_back(rules_.at(idx));
  return RuleBase(scale_, std::move(reordered), facts_);
}

RuleBase RuleBase::with_facts(std::vector<Fact> facts) const {
  return RuleBase(scale_, rules_, std::move(facts));
}

Mode mode_from_string(std::string_view name) {
  if (name == "mpgf-r") return Mode::MpgfR;
  if (name == "mpgf-s") return Mode::MpgfS;
  if (name == "flat-min") return Mode::FlatMin;
  throw ValidationError("unknown inference mode '" + std::string(name) +
                        "' (expected mpgf-r, mpgf-s or flat-min)");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::MpgfR: return "mpgf-r";
    case Mode::MpgfS: return "mpgf-s";
    case Mode::FlatMin: return "flat-min";
  }
  return "?";
}

namespace {

std::vector<Valuation> premise_values(const RuleBase& rb, const Rule& rule,
                                      const Environment& env) {
  std::vector<Valuation> pvs;
  pvs.reserve(rule.premises.size());
  for (const auto& atom : rule.premises) {
    const auto it = env.find(atom);
    pvs.push_back(it == env.end() ? Valuation::bottom(rb.scale()) : it->second);
  }
  return pvs;
}

Valuation apply_mode(const RuleBase& rb, Mode mode,
                     const std::vector<Valuation>& premise_pvs,
                     const Valuation& conjunction, const Valuation& rule_pv,
                     std::size_t max_len) {
  switch (mode) {
    case Mode::MpgfR:
      return mpgf_r(conjunction, rule_pv, max_len);
    case Mode::MpgfS:
      return mpgf_s(conjunction, rule_pv);
    case Mode::FlatMin: {
      int least = rule_pv.first_rank();
      for (const auto& pv : premise_pvs) least = std::min(least, pv.first_rank());
      return Valuation::from_grades(rb.scale(), {least});
    }
  }
  throw EngineError("unreachable inference mode");
}

}  // namespace

Valuation premise_pv(const RuleBase& rb, const Rule& rule,
                     const Environment& env, std::size_t max_len) {
  const auto pvs = premise_values(rb, rule, env);
  return conj_all(pvs, max_len);
}

std::vector<std::pair<Atom, Valuation>> fire(const RuleBase& rb,
                                             const Rule& rule,
                                             const Environment& env, Mode mode,
                                             std::size_t max_len) {
  const auto pvs = premise_values(rb, rule, env);
  const Valuation conjunction = conj_all(pvs, max_len);
  std::vector<std::pair<Atom, Valuation>> out;
  out.reserve(rule.conclusions.size());
  for (const auto& concl : rule.conclusions) {
    out.emplace_back(concl.atom,
                     apply_mode(rb, mode, pvs, conjunction, concl.pv, max_len));
  }
  return out;
}

InferenceResult infer(const RuleBase& rb, const InferOptions& options) {
  const Valuation bottom = Valuation::bottom(rb.scale());

  Environment env;
  for (const auto& fact : rb.facts()) env.emplace(fact.atom, fact.pv);

  InferenceResult result;
  for (const auto& rule : rb.rules()) {
    for (const auto& concl : rule.conclusions) {
      result.derived.try_emplace(concl.atom, bottom);
    }
  }

  for (int iteration = 1;; ++iteration) {
    bool changed = false;
    for (const auto& rule : rb.rules()) {
      const auto pvs = premise_values(rb, rule, env);
      Valuation conjunction = bottom;
      try {
        conjunction = conj_all(pvs, options.max_valuation_length);
      } catch (const LengthCapError& e) {
        throw EngineError(std::string(e.what()) + " while conjoining premises of rule '" +
                          rule.id + "'");
      }
      if (conjunction.is_bottom()) continue;  // some premise unknown
      for (const auto& concl : rule.conclusions) {
        Valuation candidate = bottom;
        try {
          candidate = apply_mode(rb, options.mode, pvs, conjunction, concl.pv,
                                 options.max_valuation_length);
        } catch (const LengthCapError& e) {
          throw EngineError(std::string(e.what()) + " while deriving " +
                            concl.atom.to_string() + " via rule '" + rule.id +
                            "' from " + conjunction.to_string());
        }
        const auto current = env.find(concl.atom);
        // Aggregate competing derivations by disjunction: keep the maximum,
        // update only on strict increase.
        if (current == env.end() ? candidate > bottom
                                 : candidate > current->second) {
          if (current == env.end()) {
            env.emplace(concl.atom, candidate);
          } else {
            current->second = candidate;
          }
          result.trace.push_back(TraceStep{rule.id, concl.atom, pvs,
                                           conjunction, concl.pv, candidate,
                                           iteration});
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  for (auto& [atom, pv] : result.derived) {
    const auto it = env.find(atom);
    if (it != env.end()) pv = it->second;
  }
  for (const auto& [atom, pv] : result.derived) {
    if (!pv.is_bottom()) result.ranking.push_back(RankedAtom{atom, pv});
  }
  std::sort(result.ranking.begin(), result.ranking.end(),
            [](const RankedAtom& a, const RankedAtom& b) {
              const Ordering ord = a.pv.compare(b.pv);
              if (ord != Ordering::Equal) return ord == Ordering::Greater;
              return a.atom < b.atom;
            });
  return result;
}

nlohmann::json InferenceResult::to_json() const {
  nlohmann::json ranking_json = nlohmann::json::array();
  for (const auto& ranked : ranking) {
    ranking_json.push_back(nlohmann::json{{"attribute", ranked.atom.attribute},
                                          {"value", ranked.atom.value},
                                          {"pv", ranked.pv.to_json()}});
  }
  nlohmann::json trace_json = nlohmann::json::array();
  for (const auto& step : trace) {
    nlohmann::json premises = nlohmann::json::array();
    for (const auto& pv : step.premise_pvs) premises.push_back(pv.to_json());
    trace_json.push_back(nlohmann::json{
        {"rule", step.rule_id},
        {"conclusion",
         {{"attribute", step.conclusion.attribute}, {"value", step.conclusion.value}}},
        {"premises", premises},
        {"conjunction", step.conjunction.to_json()},
        {"rule_pv", step.rule_pv.to_json()},
        {"derived", step.derived.to_json()},
        {"iteration", step.iteration}});
  }
  return nlohmann::json{
      {"ranking", ranking_json},
      {"trace", trace_json},
      {"extensions",
       {"multi-rule aggregation by order maximum", "fixpoint chaining"}}};
}

std::string InferenceResult::to_table() const {
  std::ostringstream out;
  if (ranking.empty()) {
    out << "ranking: (empty, no conclusion above bottom)\n";
  } else {
    out << "ranking:\n";
    std::size_t width = 0;
    for (const auto& ranked : ranking) {
      width = std::max(width, ranked.atom.to_string().size());
    }
    std::size_t place = 0;
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      if (i == 0 || ranking[i].pv != ranking[i - 1].pv) place = i + 1;
      const std::string name = ranking[i].atom.to_string();
      out << "  " << place << ". " << name
          << std::string(width - name.size() + 2, ' ')
          << ranking[i].pv.to_string();
      if (place != i + 1) out << "  (tie)";
      out << '\n';
    }
  }
  if (!trace.empty()) {
    out << "trace:\n";
    for (const auto& step : trace) {
      out << "  [" << step.iteration << "] rule " << step.rule_id << ": "
          << step.conclusion.to_string() << '\n';
      out << "      premises:";
      for (const auto& pv : step.premise_pvs) out << ' ' << pv.to_string();
      out << '\n';
      out << "      conjunction: " << step.conjunction.to_string()
          << "  rule pv: " << step.rule_pv.to_string()
          << "  derived: " << step.derived.to_string() << '\n';
    }
  }
  return out.str();
}

}  // namespace lexval
