// SPDX-License-Identifier: Apache-2.0
#include "lexval/algebra.hpp"

#include <algorithm>

namespace lexval {

namespace {

void require_same_scale(const Valuation& f, const Valuation& g) {
  if (f.scale() != g.scale()) {
    throw ScaleMismatchError("operands live on scales '" + f.scale().name() +
                             "' and '" + g.scale().name() + "'");
  }
}

std::vector<int> merge_sorted(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Orders the conjunction of two nondecreasing rank strings against a
// reference valuation. The residuum search evaluates this many times per
// query.
Ordering compare_merged(const Scale& scale, const std::vector<int>& a,
                        const std::vector<int>& b, const Valuation& reference) {
  const Valuation m =
      Valuation::reduce(WedgeString::sorted(scale, merge_sorted(a, b)));
  return m.compare(reference);
}

}  // namespace

Valuation conj(const Valuation& f, const Valuation& g, std::size_t max_len) {
  require_same_scale(f, g);
  if (f.length() + g.length() > max_len) {
    throw LengthCapError(max_len, f.length() + g.length());
  }
  return Valuation::reduce(
      WedgeString::sorted(f.scale(), merge_sorted(f.ranks(), g.ranks())));
}

Valuation conj_all(std::span<const Valuation> vs, std::size_t max_len) {
  if (vs.empty()) {
    throw ValidationError("conj_all needs at least one operand");
  }
  Valuation acc = vs.front();
  for (std::size_t i = 1; i < vs.size(); ++i) acc = conj(acc, vs[i], max_len);
  return acc;
}

Valuation disj(const Valuation& f, const Valuation& g) {
  require_same_scale(f, g);
  return max(f, g);
}

Valuation neg(const Valuation& f) {
  const int negated = f.scale().negate_rank(f.first_rank());
  return Valuation::from_grades(f.scale(), {negated});
}

Valuation s_implication(const Valuation& f, const Valuation& g) {
  require_same_scale(f, g);
  return disj(neg(f), g);
}

Valuation mpgf_s(const Valuation& f, const Valuation& g) {
  require_same_scale(f, g);
  if (neg(f) >= g) return Valuation::bottom(f.scale());
  return g;
}

Valuation r_implication(const Valuation& f, const Valuation& g) {
  require_same_scale(f, g);
  const Scale& scale = f.scale();
  if (f <= g) return Valuation::top(scale);
  // From here f > g; in particular f is not bottom and g is not top.
  if (g.is_bottom()) return Valuation::bottom(scale);
  if (f.is_top()) return g;  // conj(top, h) = h

  // Both f and g are interior strings now, and so is any satisfying h above
  // bottom: conj of interior strings is their plain sorted merge.
  const int max_interior = scale.size() - 2;
  const std::size_t pump = g.length() + 1;
  const std::size_t length_bound = f.length() + g.length() + 1;

  std::vector<int> prefix;
  int next_min = 1;
  while (true) {
    if (!prefix.empty() &&
        compare_merged(scale, f.ranks(), prefix, g) != Ordering::Greater) {
      return Valuation::from_grades(scale, prefix);
    }
    int chosen = -1;
    std::vector<int> probe = prefix;
    for (int c = max_interior; c >= next_min; --c) {
      probe.resize(prefix.size());
      probe.insert(probe.end(), pump, c);
      if (compare_merged(scale, f.ranks(), probe, g) != Ordering::Greater) {
        chosen = c;
        break;
      }
    }
    if (chosen < 0) {
      if (prefix.empty()) return Valuation::bottom(scale);
      // The prefix was feasible when chosen, so some extension satisfies;
      // reaching here would contradict the feasibility test.
      throw UnattainedSupError(
          "residuum search lost feasibility at prefix " +
          Valuation::from_grades(scale, prefix).to_string());
    }
    prefix.push_back(chosen);
    next_min = chosen;
    if (prefix.size() > length_bound) {
      throw UnattainedSupError(
          "residuum of " + f.to_string() + " => " + g.to_string() +
          " exceeded the search length bound " + std::to_string(length_bound));
    }
  }
}

Valuation mpgf_r(const Valuation& f, const Valuation& g, std::size_t max_len) {
  return conj(f, g, max_len);
}

}  // namespace lexval
