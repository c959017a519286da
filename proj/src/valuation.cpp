// SPDX-License-Identifier: Apache-2.0
#include "lexval/valuation.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace lexval {

namespace {

void require_ranks_valid(const Scale& scale, const std::vector<int>& ranks) {
  if (ranks.empty()) {
    throw ValidationError("a valuation needs at least one grade");
  }
  for (int r : ranks) {
    if (r < 0 || r >= scale.size()) {
      throw ValidationError("rank " + std::to_string(r) +
                            " is outside scale '" + scale.name() + "'");
    }
  }
}

}  // namespace

WedgeString WedgeString::sorted(Scale scale, std::vector<int> raw_ranks) {
  require_ranks_valid(scale, raw_ranks);
  std::sort(raw_ranks.begin(), raw_ranks.end());
  return WedgeString(std::move(scale), std::move(raw_ranks));
}

std::string WedgeString::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (i > 0) out << ", ";
    out << scale_.label_of(ranks_[i]);
  }
  out << ')';
  return out.str();
}

bool indistinguishable(const WedgeString& f, const WedgeString& g) {
  if (f.scale() != g.scale()) {
    throw ScaleMismatchError("cannot relate wedge strings of scales '" +
                             f.scale().name() + "' and '" + g.scale().name() +
                             "'");
  }
  const auto& a = f.ranks();
  const auto& b = g.ranks();
  if (a.front() == 0 && b.front() == 0) return true;
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (a[i] != b[i]) return false;
  }
  const int top = f.scale().size() - 1;
  if (a.size() > common) return a[common] == top;
  if (b.size() > common) return b[common] == top;
  return true;
}

Valuation Valuation::bottom(Scale scale) {
  return Valuation(std::move(scale), {0});
}

Valuation Valuation::top(Scale scale) {
  const int top_rank = scale.size() - 1;
  return Valuation(std::move(scale), {top_rank});
}

Valuation Valuation::reduce(const WedgeString& w) {
  const auto& ranks = w.ranks();
  if (ranks.front() == 0) return bottom(w.scale());
  const int top = w.scale().size() - 1;
  std::size_t keep = ranks.size();
  while (keep > 0 && ranks[keep - 1] == top) --keep;
  if (keep == 0) return Valuation::top(w.scale());
  return Valuation(w.scale(),
                   std::vector<int>(ranks.begin(),
                                    ranks.begin() + static_cast<std::ptrdiff_t>(keep)));
}

Valuation Valuation::from_grades(Scale scale, std::vector<int> ranks,
                                 std::size_t max_len) {
  if (ranks.size() > max_len) throw LengthCapError(max_len, ranks.size());
  return reduce(WedgeString::sorted(std::move(scale), std::move(ranks)));
}

Valuation Valuation::from_labels(Scale scale,
                                 const std::vector<std::string>& labels,
                                 std::size_t max_len) {
  std::vector<int> ranks;
  ranks.reserve(labels.size());
  for (const auto& label : labels) ranks.push_back(scale.rank_of(label));
  return from_grades(std::move(scale), std::move(ranks), max_len);
}

Valuation Valuation::parse(std::string_view text, const Scale& scale) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
      s.remove_suffix(1);
    }
    return s;
  };
  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') {
      throw ValidationError("unbalanced parentheses in valuation literal '" +
                            std::string(text) + "'");
    }
    body.remove_prefix(1);
    body.remove_suffix(1);
  }
  std::vector<std::string> labels;
  std::size_t start = 0;
  while (start <= body.size()) {
    const std::size_t comma = body.find(',', start);
    const std::string_view piece =
        trim(body.substr(start, comma == std::string_view::npos
                                    ? std::string_view::npos
                                    : comma - start));
    if (piece.empty()) {
      throw ValidationError("empty grade in valuation literal '" +
                            std::string(text) + "'");
    }
    labels.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_labels(scale, labels);
}

Valuation Valuation::unchecked(Scale scale, std::vector<int> ranks) {
  require_ranks_valid(scale, ranks);
  return Valuation(std::move(scale), std::move(ranks));
}

Ordering Valuation::compare(const Valuation& other) const {
  if (scale_ != other.scale_) {
    throw ScaleMismatchError("cannot order valuations of scales '" +
                             scale_.name() + "' and '" + other.scale_.name() +
                             "'");
  }
  const auto& a = ranks_;
  const auto& b = other.ranks_;
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (a[i] < b[i]) return Ordering::Less;
    if (a[i] > b[i]) return Ordering::Greater;
  }
  // Equal common prefix: the longer valuation is the smaller one.
  if (a.size() > b.size()) return Ordering::Less;
  if (a.size() < b.size()) return Ordering::Greater;
  return Ordering::Equal;
}

std::string Valuation::to_string() const {
  return WedgeString(scale_, ranks_).to_string();
}

nlohmann::json Valuation::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (int r : ranks_) arr.push_back(scale_.label_of(r));
  return arr;
}

Valuation Valuation::from_json(const nlohmann::json& j, const Scale& scale) {
  return from_labels(scale, j.get<std::vector<std::string>>());
}

}  // namespace lexval
