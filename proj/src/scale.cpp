// SPDX-License-Identifier: Apache-2.0
#include "lexval/scale.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

namespace lexval {

Scale Scale::make(std::string name, std::vector<std::string> labels) {
  if (labels.size() < 2) {
    throw ValidationError("scale '" + name + "' needs at least 2 grades, got " +
                          std::to_string(labels.size()));
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (label.empty()) {
      throw ValidationError("scale '" + name + "' has an empty grade label");
    }
    if (!seen.insert(label).second) {
      throw ValidationError("scale '" + name + "' has duplicate grade label '" +
                            label + "'");
    }
  }
  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  data->labels = std::move(labels);
  const int m = static_cast<int>(data->labels.size());
  data->negation.resize(m);
  for (int r = 0; r < m; ++r) data->negation[r] = m - 1 - r;
  data->default_negation = true;
  data->weak_negation = true;        // reflection is an involution
  data->involutive_negation = true;
  return Scale(std::move(data));
}

Scale Scale::with_negation(const std::vector<int>& image_ranks) const {
  const int m = size();
  if (static_cast<int>(image_ranks.size()) != m) {
    throw ValidationError("negation table for scale '" + name() + "' must map all " +
                          std::to_string(m) + " grades, got " +
                          std::to_string(image_ranks.size()));
  }
  for (int img : image_ranks) {
    if (img < 0 || img >= m) {
      throw ValidationError("negation table for scale '" + name() +
                            "' maps to rank " + std::to_string(img) +
                            " outside [0, " + std::to_string(m - 1) + "]");
    }
  }
  if (image_ranks.front() != m - 1) {
    throw ValidationError("negation on scale '" + name() +
                          "' must send the bottom grade to the top grade");
  }
  if (image_ranks.back() != 0) {
    throw ValidationError("negation on scale '" + name() +
                          "' must send the top grade to the bottom grade");
  }
  for (int r = 0; r + 1 < m; ++r) {
    // antitone: r <= r+1 requires image[r+1] <= image[r]
    if (image_ranks[r + 1] > image_ranks[r]) {
      throw ValidationError("negation on scale '" + name() +
                            "' is not antitone between grades '" +
                            label_of(r) + "' and '" + label_of(r + 1) + "'");
    }
  }
  auto data = std::make_shared<Data>(*data_);
  data->negation = image_ranks;
  data->default_negation = true;
  data->weak_negation = true;
  data->involutive_negation = true;
  for (int r = 0; r < m; ++r) {
    if (image_ranks[r] != m - 1 - r) data->default_negation = false;
    const int twice = image_ranks[image_ranks[r]];
    if (twice < r) data->weak_negation = false;
    if (twice != r) data->involutive_negation = false;
  }
  return Scale(std::move(data));
}

Scale Scale::with_negation_labels(
    const std::vector<std::pair<std::string, std::string>>& table) const {
  const int m = size();
  std::vector<int> image(static_cast<std::size_t>(m), -1);
  for (const auto& [from, to] : table) {
    const int r = rank_of(from);
    if (image[static_cast<std::size_t>(r)] != -1) {
      throw ValidationError("negation table lists grade '" + from + "' twice");
    }
    image[static_cast<std::size_t>(r)] = rank_of(to);
  }
  for (int r = 0; r < m; ++r) {
    if (image[static_cast<std::size_t>(r)] == -1) {
      throw ValidationError("negation table is missing grade '" + label_of(r) +
                            "'");
    }
  }
  return with_negation(image);
}

Grade Scale::bottom() const { return Grade(*this, 0); }

Grade Scale::top() const { return Grade(*this, size() - 1); }

Grade Scale::grade(int rank) const {
  if (rank < 0 || rank >= size()) {
    throw ValidationError("scale '" + name() + "' has no grade of rank " +
                          std::to_string(rank));
  }
  return Grade(*this, rank);
}

Grade Scale::grade(std::string_view label) const {
  return Grade(*this, rank_of(label));
}

bool Scale::has_label(std::string_view label) const {
  const auto& ls = data_->labels;
  return std::find(ls.begin(), ls.end(), label) != ls.end();
}

const std::string& Scale::label_of(int rank) const {
  if (rank < 0 || rank >= size()) {
    throw ValidationError("scale '" + name() + "' has no grade of rank " +
                          std::to_string(rank));
  }
  return data_->labels[static_cast<std::size_t>(rank)];
}

int Scale::rank_of(std::string_view label) const {
  const auto& ls = data_->labels;
  const auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) {
    throw ValidationError("scale '" + name() + "' has no grade '" +
                          std::string(label) + "'");
  }
  return static_cast<int>(it - ls.begin());
}

int Scale::negate_rank(int rank) const {
  if (rank < 0 || rank >= size()) {
    throw ValidationError("scale '" + name() + "' has no grade of rank " +
                          std::to_string(rank));
  }
  return data_->negation[static_cast<std::size_t>(rank)];
}

Grade Scale::negate(const Grade& g) const {
  if (g.scale() != *this) {
    throw ValidationError("grade '" + g.label() + "' does not belong to scale '" +
                          name() + "'");
  }
  return Grade(*this, negate_rank(g.rank()));
}

bool Scale::operator==(const Scale& other) const {
  if (data_ == other.data_) return true;
  return data_->name == other.data_->name &&
         data_->labels == other.data_->labels &&
         data_->negation == other.data_->negation;
}

nlohmann::json Scale::to_json() const {
  nlohmann::json neg = nlohmann::json::array();
  for (int r = 0; r < size(); ++r) neg.push_back(label_of(negate_rank(r)));
  return nlohmann::json{
      {"name", name()}, {"grades", labels()}, {"negation", neg}};
}

Scale Scale::from_json(const nlohmann::json& j) {
  Scale s = make(j.at("name").get<std::string>(),
                 j.at("grades").get<std::vector<std::string>>());
  if (j.contains("negation")) {
    const auto images = j.at("negation").get<std::vector<std::string>>();
    if (images.size() != s.labels().size()) {
      throw ValidationError("scale JSON negation array has wrong length");
    }
    std::vector<int> ranks;
    ranks.reserve(images.size());
    for (const auto& label : images) ranks.push_back(s.rank_of(label));
    s = s.with_negation(ranks);
  }
  return s;
}

}  // namespace lexval
