// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lexval/errors.hpp"

namespace lexval {

class Grade;

/// A finite linearly ordered set of plausibility grades.
///
/// A scale owns its grade labels (rank 0 = least plausible, rank m-1 = most
/// plausible) and a negation map on grades. Scales are immutable after
/// construction; copies share state and are cheap. All algebra runs on integer
/// ranks -- grades carry no magnitudes, only order.
class Scale {
 public:
  /// Builds a scale from >= 2 pairwise distinct labels, least to greatest.
  /// The negation defaults to the rank reflection r -> (m-1)-r, which is an
  /// involution for every size.
  static Scale make(std::string name, std::vector<std::string> labels);

  /// Returns a copy of this scale with a custom negation installed.
  /// `image_ranks[r]` is the rank of the negation of the grade at rank r.
  /// The map must be antitone and must send bottom to top and top to bottom;
  /// anything else is a ValidationError. Whether the map is weak (g'' >= g)
  /// and/or an involution (g'' = g) is recorded on the result.
  Scale with_negation(const std::vector<int>& image_ranks) const;

  /// Label-keyed convenience for with_negation.
  Scale with_negation_labels(
      const std::vector<std::pair<std::string, std::string>>& table) const;

  const std::string& name() const { return data_->name; }
  int size() const { return static_cast<int>(data_->labels.size()); }
  const std::vector<std::string>& labels() const { return data_->labels; }

  Grade bottom() const;
  Grade top() const;
  Grade grade(int rank) const;
  Grade grade(std::string_view label) const;
  bool has_label(std::string_view label) const;

  const std::string& label_of(int rank) const;
  int rank_of(std::string_view label) const;

  /// Rank of the negation of the grade at `rank`.
  int negate_rank(int rank) const;
  Grade negate(const Grade& g) const;

  /// True when the installed negation is the default rank reflection.
  bool negation_is_default() const { return data_->default_negation; }
  /// g'' >= g for every grade.
  bool negation_is_weak() const { return data_->weak_negation; }
  /// g'' = g for every grade.
  bool negation_is_involution() const { return data_->involutive_negation; }

  /// Content equality: same name, labels and negation images.
  bool operator==(const Scale& other) const;
  bool operator!=(const Scale& other) const { return !(*this == other); }

  /// {"name": ..., "grades": [...], "negation": [image label per rank]}
  nlohmann::json to_json() const;
  static Scale from_json(const nlohmann::json& j);

 private:
  struct Data {
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> negation;  // image rank per rank
    bool default_negation = true;
    bool weak_negation = true;
    bool involutive_negation = true;
  };

  explicit Scale(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// One element of a scale: a rank plus the scale it belongs to.
/// Grades of different scales never order-compare; that is an error.
class Grade {
 public:
  Grade(Scale scale, int rank) : scale_(std::move(scale)), rank_(rank) {}

  int rank() const { return rank_; }
  const std::string& label() const { return scale_.label_of(rank_); }
  const Scale& scale() const { return scale_; }

  Grade negated() const { return scale_.negate(*this); }

  /// Equality is total: grades of different scales are unequal, never an
  /// error, so grades can live in hash containers.
  bool operator==(const Grade& other) const {
    return scale_ == other.scale_ && rank_ == other.rank_;
  }
  bool operator!=(const Grade& other) const { return !(*this == other); }

  bool operator<(const Grade& other) const {
    require_same_scale(other);
    return rank_ < other.rank_;
  }
  bool operator<=(const Grade& other) const {
    require_same_scale(other);
    return rank_ <= other.rank_;
  }
  bool operator>(const Grade& other) const { return other < *this; }
  bool operator>=(const Grade& other) const { return other <= *this; }

 private:
  void require_same_scale(const Grade& other) const {
    if (scale_ != other.scale_) {
      throw ScaleMismatchError("cannot compare grades of scales '" +
                               scale_.name() + "' and '" +
                               other.scale_.name() + "'");
    }
  }

  Scale scale_;
  int rank_;
};

}  // namespace lexval
