// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexval/algebra.hpp"
#include "lexval/valuation.hpp"

namespace lexval {

/// Scope of an exhaustive enumeration: a scale plus a valuation length bound.
struct EnumerationBudget {
  Scale scale;
  std::size_t max_len = 3;
};

/// Number of canonical valuations of length <= max_len on a scale:
/// bottom, top, and every nondecreasing string over the interior grades.
/// Throws BudgetError when the count overflows 64 bits.
std::uint64_t count_valuations(const Scale& scale, std::size_t max_len);

/// Every canonical valuation within the budget, each exactly once, in
/// ascending order (every successive pair compares Greater than the last).
std::vector<Valuation> enumerate_valuations(const EnumerationBudget& budget);

using ValuationPredicate = std::function<bool(const Valuation&)>;

/// The greatest enumerated valuation satisfying `pred`, or nullopt.
std::optional<Valuation> brute_sup(const EnumerationBudget& budget,
                                   const ValuationPredicate& pred);

/// The least enumerated valuation satisfying `pred`, or nullopt.
std::optional<Valuation> brute_inf(const EnumerationBudget& budget,
                                   const ValuationPredicate& pred);

/// Deliberate corruption hooks so the checker can be validated against a
/// broken operation (it must fail with a counterexample, not pass).
enum class Fault {
  None,
  SkipReduceInConj,  // conjunction sorts but never reduces
};

struct LawCheckOptions {
  std::uint64_t cost_ceiling = 10'000'000;  // predicate evaluations
  Fault fault = Fault::None;
};

struct LawResult {
  std::string law;
  std::string scope;
  bool pass = false;
  /// First counterexample in enumeration order when the law fails; for the
  /// existence-style strictness-violation law this is the exhibited witness.
  std::optional<nlohmann::json> counterexample;
};

struct LawReport {
  std::vector<LawResult> results;
  std::uint64_t evaluations = 0;

  bool all_pass() const;
  /// [{"law", "scope", "pass", "counterexample": {...}|null}, ...]
  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Evaluates every algebraic law over all valuations within the budget:
/// ordering totality and transitivity, T-norm/T-conorm laws for conjunction
/// and disjunction, strict shrinking and strict monotonicity, negation laws
/// and both De Morgan forms, modus ponens generating function properties for
/// the residuum-based and implication-based variants, oracle agreement for
/// both implications, and the residuation adjunction.
/// Throws CostCeilingError if the evaluation count would exceed the ceiling.
LawReport check_laws(const Scale& scale, std::size_t max_len,
                     const LawCheckOptions& options = {});

}  // namespace lexval
