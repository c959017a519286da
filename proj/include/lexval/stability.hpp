// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "lexval/engine.hpp"

namespace lexval {

/// Exact rational arithmetic. Decimal inputs parse exactly ("0.3" -> 3/10)
/// and sampled doubles convert exactly (they are dyadic), so every numeric
/// comparison in this module is strict, with no epsilon.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "0.27", ".5", "1" or "27/100" into an exact rational.
Rational rational_from_decimal(std::string_view text);
std::string rational_to_string(const Rational& value);

/// A rank-preserving numeric reading of a scale: strictly increasing values
/// in [0,1], bottom pinned to 0 and top pinned to 1.
class Embedding {
 public:
  /// Full value vector, one per grade in rank order.
  static Embedding make(Scale scale, std::vector<Rational> values);
  /// Interior values only; bottom/top pins added automatically.
  static Embedding from_interior(Scale scale, std::vector<Rational> interior);

  const Scale& scale() const { return scale_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& value_of(int rank) const {
    return values_.at(static_cast<std::size_t>(rank));
  }

  nlohmann::json to_json() const;

 private:
  Embedding(Scale scale, std::vector<Rational> values)
      : scale_(std::move(scale)), values_(std::move(values)) {}

  Scale scale_;
  std::vector<Rational> values_;
};

enum class TNorm { Product, Min, Lukasiewicz };

TNorm tnorm_from_string(std::string_view name);
std::string to_string(TNorm tnorm);

/// Quantitative single-step evaluation of the rule base under an embedding:
/// each conclusion's value is the T-norm fold of the embedded premise values
/// and the embedded rule pv; competing rules for one conclusion aggregate by
/// maximum. A pv is embedded by its first grade (all-singleton pvs in
/// practice); a missing premise contributes 0.
std::map<Atom, Rational> evaluate_numeric(const RuleBase& rb,
                                          const Embedding& embedding,
                                          TNorm tnorm);

/// `n` embeddings drawn deterministically from `seed`: interior values
/// sampled uniformly, sorted, assigned by rank; collided draws rejected.
std::vector<Embedding> sample_embeddings(const Scale& scale, int n,
                                         std::uint64_t seed);

struct AuditOptions {
  TNorm tnorm = TNorm::Product;
  int samples = 200;
  std::uint64_t seed = 1;
  /// Fixed embeddings evaluated before the sampled ones.
  std::vector<Embedding> injected;
};

struct StabilityWitness {
  std::size_t index_a = 0;
  std::size_t index_b = 0;
  std::map<Atom, Rational> values_a;
  std::map<Atom, Rational> values_b;
};

struct StabilityReport {
  std::size_t samples = 0;       // total embeddings evaluated
  std::uint64_t flips = 0;       // pairs with a strictly reversed conclusion pair
  std::uint64_t disagreements = 0;  // pairs with any ranking difference
  std::optional<StabilityWitness> witness;  // one flipping pair, iff flips > 0
  std::vector<Embedding> embeddings;
  std::vector<RankedAtom> lexicographic_ranking;  // embedding-independent
  TNorm tnorm = TNorm::Product;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Evaluates every injected and sampled embedding, counts pairs of
/// embeddings whose conclusion orderings strictly reverse (flips) or merely
/// differ (disagreements), and attaches the ordinal engine's ranking, which
/// never consults the numeric values and is therefore constant.
StabilityReport audit(const RuleBase& rb, const AuditOptions& options);

}  // namespace lexval
