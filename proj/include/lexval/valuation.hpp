// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lexval/scale.hpp"

namespace lexval {

/// Default cap on valuation length. Chained inference can only grow strings;
/// the cap keeps resource use predictable. Exceeding it is a hard error.
inline constexpr std::size_t kDefaultMaxLength = 4096;

enum class Ordering { Less, Equal, Greater };

/// A nondecreasing string of grades from one scale. This is the raw,
/// possibly non-canonical form: it may start with the bottom grade or carry
/// trailing top grades. Wedge strings exist transiently between sorting and
/// reduction; everything downstream works on canonical Valuations.
class WedgeString {
 public:
  /// Sorts an arbitrary nonempty grade-rank sequence into a wedge string.
  /// The result is a permutation of the input (multiset semantics).
  static WedgeString sorted(Scale scale, std::vector<int> raw_ranks);

  const Scale& scale() const { return scale_; }
  const std::vector<int>& ranks() const { return ranks_; }
  std::size_t length() const { return ranks_.size(); }

  std::string to_string() const;

 private:
  friend class Valuation;
  WedgeString(Scale scale, std::vector<int> ranks)
      : scale_(std::move(scale)), ranks_(std::move(ranks)) {}

  Scale scale_;
  std::vector<int> ranks_;  // nondecreasing
};

/// Indistinguishability on wedge strings: both start at bottom, or they agree
/// on their common prefix and the longer one continues with the top grade.
/// An equivalence relation; its classes are represented by canonical
/// valuations.
bool indistinguishable(const WedgeString& f, const WedgeString& g);

/// A canonical plausibility valuation: the shortest wedge string in its
/// indistinguishability class. Canonical forms are exactly
///   (bottom) | (top) | any nondecreasing string of interior grades.
/// Valuations are immutable values; all operations are pure.
class Valuation {
 public:
  /// The class of (0): least element of the ordering.
  static Valuation bottom(Scale scale);
  /// The class of (I): greatest element of the ordering.
  static Valuation top(Scale scale);

  /// Sort + reduce: the canonical valuation of an arbitrary nonempty grade
  /// multiset. Throws LengthCapError when the input exceeds `max_len`.
  static Valuation from_grades(Scale scale, std::vector<int> ranks,
                               std::size_t max_len = kDefaultMaxLength);
  static Valuation from_labels(Scale scale,
                               const std::vector<std::string>& labels,
                               std::size_t max_len = kDefaultMaxLength);

  /// Reduction: drops what indistinguishability cannot see. A string
  /// starting at bottom collapses to (bottom); trailing top grades drop,
  /// and an all-top string collapses to (top).
  static Valuation reduce(const WedgeString& w);

  /// Parses the textual form, e.g. "(LARGE, VERY-LARGE)" or a bare label.
  /// Input grades are canonicalized; output of to_string round-trips exactly.
  static Valuation parse(std::string_view text, const Scale& scale);

  /// Canonicalization bypass for checker self-tests (deliberately corrupted
  /// operations must be able to materialize non-canonical values). Never use
  /// in production paths.
  static Valuation unchecked(Scale scale, std::vector<int> ranks);

  const Scale& scale() const { return scale_; }
  const std::vector<int>& ranks() const { return ranks_; }
  std::size_t length() const { return ranks_.size(); }
  int first_rank() const { return ranks_.front(); }
  Grade grade_at(std::size_t i) const {
    return scale_.grade(ranks_.at(i));
  }

  bool is_bottom() const { return ranks_.size() == 1 && ranks_[0] == 0; }
  bool is_top() const {
    return ranks_.size() == 1 && ranks_[0] == scale_.size() - 1;
  }

  WedgeString as_wedge() const { return WedgeString(scale_, ranks_); }

  /// Total order on canonical valuations of one scale: the first differing
  /// position decides (smaller grade loses); with no difference the longer
  /// valuation is Less (more conjuncts, less plausible).
  /// Throws ScaleMismatchError across scales.
  Ordering compare(const Valuation& other) const;

  /// Equality is total: false across scales (container-safe, never throws).
  bool operator==(const Valuation& other) const {
    return scale_ == other.scale_ && ranks_ == other.ranks_;
  }
  bool operator!=(const Valuation& other) const { return !(*this == other); }

  bool operator<(const Valuation& other) const {
    return compare(other) == Ordering::Less;
  }
  bool operator<=(const Valuation& other) const {
    return compare(other) != Ordering::Greater;
  }
  bool operator>(const Valuation& other) const {
    return compare(other) == Ordering::Greater;
  }
  bool operator>=(const Valuation& other) const {
    return compare(other) != Ordering::Less;
  }

  /// "(LARGE, VERY-LARGE)"
  std::string to_string() const;
  /// ["LARGE", "VERY-LARGE"]
  nlohmann::json to_json() const;
  static Valuation from_json(const nlohmann::json& j, const Scale& scale);

 private:
  Valuation(Scale scale, std::vector<int> ranks)
      : scale_(std::move(scale)), ranks_(std::move(ranks)) {}

  Scale scale_;
  std::vector<int> ranks_;
};

inline const Valuation& max(const Valuation& a, const Valuation& b) {
  return a.compare(b) == Ordering::Less ? b : a;
}

inline const Valuation& min(const Valuation& a, const Valuation& b) {
  return a.compare(b) == Ordering::Greater ? b : a;
}

}  // namespace lexval

template <>
struct std::hash<lexval::Valuation> {
  std::size_t operator()(const lexval::Valuation& v) const noexcept {
    std::size_t h = std::hash<std::string>{}(v.scale().name());
    for (int r : v.ranks()) {
      h = h * 1099511628211ULL + static_cast<std::size_t>(r) + 0x9e3779b9;
    }
    return h;
  }
};
