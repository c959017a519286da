// SPDX-License-Identifier: Apache-2.0
#include "lexval/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lexval {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw BudgetError("enumeration count overflows a 64-bit counter");
  }
  return out;
}

// C(a, b) with overflow detection.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    result = result * (a - b + i) / i;
    if (result > UINT64_MAX) {
      throw BudgetError("enumeration count overflows a 64-bit counter");
    }
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

std::uint64_t count_valuations(const Scale& scale, std::size_t max_len) {
  if (max_len < 1) {
    throw ValidationError("enumeration budget needs max_len >= 1");
  }
  const std::uint64_t interior = static_cast<std::uint64_t>(scale.size()) - 2;
  std::uint64_t total = 2;  // bottom and top
  for (std::uint64_t n = 1; n <= max_len; ++n) {
    total = checked_add(total, binomial(interior + n - 1, n));
  }
  return total;
}

std::vector<Valuation> enumerate_valuations(const EnumerationBudget& budget) {
  const std::uint64_t expected = count_valuations(budget.scale, budget.max_len);
  std::vector<Valuation> out;
  out.reserve(static_cast<std::size_t>(expected));
  out.push_back(Valuation::bottom(budget.scale));

  // Interior valuations in ascending order: extensions of a prefix are
  // smaller than the prefix itself, so each subtree emits children first
  // (smallest next grade first), then its root.
  const int max_interior = budget.scale.size() - 2;
  std::vector<int> buf;
  auto rec = [&](auto&& self, int lo) -> void {
    for (int c = lo; c <= max_interior; ++c) {
      buf.push_back(c);
      if (buf.size() < budget.max_len) self(self, c);
      out.push_back(Valuation::from_grades(budget.scale, buf));
      buf.pop_back();
    }
  };
  rec(rec, 1);

  out.push_back(Valuation::top(budget.scale));
  return out;
}

std::optional<Valuation> brute_sup(const EnumerationBudget& budget,
                                   const ValuationPredicate& pred) {
  const auto all = enumerate_valuations(budget);
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    if (pred(*it)) return *it;
  }
  return std::nullopt;
}

std::optional<Valuation> brute_inf(const EnumerationBudget& budget,
                                   const ValuationPredicate& pred) {
  const auto all = enumerate_valuations(budget);
  for (const auto& v : all) {
    if (pred(v)) return v;
  }
  return std::nullopt;
}

bool LawReport::all_pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](const LawResult& r) { return r.pass; });
}

nlohmann::json LawReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back(nlohmann::json{
        {"law", r.law},
        {"scope", r.scope},
        {"pass", r.pass},
        {"counterexample",
         r.counterexample ? *r.counterexample : nlohmann::json(nullptr)}});
  }
  return arr;
}

std::string LawReport::to_table() const {
  std::size_t name_width = 4;
  std::size_t scope_width = 5;
  for (const auto& r : results) {
    name_width = std::max(name_width, r.law.size());
    scope_width = std::max(scope_width, r.scope.size());
  }
  std::ostringstream out;
  for (const auto& r : results) {
    out << r.law << std::string(name_width - r.law.size() + 2, ' ') << r.scope
        << std::string(scope_width - r.scope.size() + 2, ' ')
        << (r.pass ? "pass" : "FAIL") << '\n';
    if (r.counterexample) {
      out << "    " << (r.pass ? "witness: " : "counterexample: ")
          << r.counterexample->dump() << '\n';
    }
  }
  out << "evaluations: " << evaluations << '\n';
  return out.str();
}

namespace {

using Cex = std::optional<nlohmann::json>;

class LawChecker {
 public:
  LawChecker(const Scale& scale, std::size_t max_len,
             const LawCheckOptions& options)
      : scale_(scale),
        options_(options),
        all_(enumerate_valuations({scale, max_len})),
        bottom_(Valuation::bottom(scale)),
        top_(Valuation::top(scale)),
        len_scope_("len<=" + std::to_string(max_len)) {
    const unsigned __int128 n = all_.size();
    if (n * n * n > options_.cost_ceiling) {
      throw CostCeilingError(
          "law checking over " + std::to_string(all_.size()) +
          " valuations exceeds the cost ceiling; use a smaller scale or a "
          "shorter length bound");
    }
  }

  LawReport run() {
    ordering_laws();
    conjunction_laws();
    disjunction_laws();
    monotonicity_laws();
    negation_laws();
    mpgf_r_laws();
    mpgf_s_laws();
    implication_oracle_laws();
    return LawReport{std::move(results_), evaluations_};
  }

 private:
  // Conjunction with the optional deliberate corruption, used by every law
  // that quantifies over the conjunction so a broken operation is caught.
  Valuation delta(const Valuation& f, const Valuation& g) const {
    if (options_.fault == Fault::SkipReduceInConj) {
      std::vector<int> merged = f.ranks();
      merged.insert(merged.end(), g.ranks().begin(), g.ranks().end());
      std::sort(merged.begin(), merged.end());
      return Valuation::unchecked(f.scale(), std::move(merged));
    }
    return conj(f, g);
  }

  void bump(std::uint64_t n = 1) {
    evaluations_ += n;
    if (evaluations_ > options_.cost_ceiling) {
      throw CostCeilingError("law checking exceeded the cost ceiling of " +
                             std::to_string(options_.cost_ceiling) +
                             " predicate evaluations");
    }
  }

  void add(std::string law, std::string scope, Cex cex) {
    results_.push_back(
        LawResult{std::move(law), std::move(scope), !cex.has_value(),
                  std::move(cex)});
  }

  void add_existence(std::string law, std::string scope, Cex witness) {
    results_.push_back(LawResult{std::move(law), std::move(scope),
                                 witness.has_value(), std::move(witness)});
  }

  template <typename Fn>
  Cex each1(Fn&& fn) {
    for (const auto& f : all_) {
      bump();
      if (Cex c = fn(f)) return c;
    }
    return std::nullopt;
  }

  template <typename Fn>
  Cex each2(Fn&& fn) {
    for (const auto& f : all_) {
      for (const auto& g : all_) {
        bump();
        if (Cex c = fn(f, g)) return c;
      }
    }
    return std::nullopt;
  }

  template <typename Fn>
  Cex each3(Fn&& fn) {
    for (const auto& f : all_) {
      for (const auto& g : all_) {
        for (const auto& h : all_) {
          bump();
          if (Cex c = fn(f, g, h)) return c;
        }
      }
    }
    return std::nullopt;
  }

  static nlohmann::json cex1(const Valuation& f, const std::string& detail) {
    return nlohmann::json{{"f", f.to_json()}, {"detail", detail}};
  }
  static nlohmann::json cex2(const Valuation& f, const Valuation& g,
                             const std::string& detail) {
    return nlohmann::json{
        {"f", f.to_json()}, {"g", g.to_json()}, {"detail", detail}};
  }
  static nlohmann::json cex3(const Valuation& f, const Valuation& g,
                             const Valuation& h, const std::string& detail) {
    return nlohmann::json{{"f", f.to_json()},
                          {"g", g.to_json()},
                          {"h", h.to_json()},
                          {"detail", detail}};
  }

  std::string pairs_scope() const { return "pairs, " + len_scope_; }
  std::string triples_scope() const { return "triples, " + len_scope_; }
  std::string unary_scope() const { return "all valuations, " + len_scope_; }

  void ordering_laws() {
    add("compare-totality", pairs_scope(), each2([&](const auto& f, const auto& g) -> Cex {
          const Ordering fg = f.compare(g);
          const Ordering gf = g.compare(f);
          const bool inverse =
              (fg == Ordering::Equal && gf == Ordering::Equal) ||
              (fg == Ordering::Less && gf == Ordering::Greater) ||
              (fg == Ordering::Greater && gf == Ordering::Less);
          if (!inverse) return cex2(f, g, "compare(f,g) not inverse of compare(g,f)");
          if ((fg == Ordering::Equal) != (f == g)) {
            return cex2(f, g, "Equal does not coincide with structural equality");
          }
          return std::nullopt;
        }));
    add("compare-transitivity", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (f <= g && g <= h && !(f <= h)) {
            return cex3(f, g, h, "f<=g and g<=h but not f<=h");
          }
          return std::nullopt;
        }));
  }

  void conjunction_laws() {
    add("conj-commutativity", pairs_scope(),
        each2([&](const auto& f, const auto& g) -> Cex {
          if (delta(f, g) != delta(g, f)) {
            return cex2(f, g, delta(f, g).to_string() + " vs " + delta(g, f).to_string());
          }
          return std::nullopt;
        }));
    add("conj-associativity", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (delta(delta(f, g), h) != delta(f, delta(g, h))) {
            return cex3(f, g, h, "grouping changes the conjunction");
          }
          return std::nullopt;
        }));
    add("conj-identity-top", unary_scope(), each1([&](const auto& f) -> Cex {
          if (delta(f, top_) != f) {
            return cex1(f, "f AND top = " + delta(f, top_).to_string());
          }
          return std::nullopt;
        }));
    add("conj-annihilator-bottom", unary_scope(), each1([&](const auto& f) -> Cex {
          if (delta(f, bottom_) != bottom_) {
            return cex1(f, "f AND bottom = " + delta(f, bottom_).to_string());
          }
          return std::nullopt;
        }));
    add("conj-strict-shrinking", pairs_scope(),
        each2([&](const auto& f, const auto& g) -> Cex {
          if (f > bottom_ && g < top_ && !(delta(f, g) < f)) {
            return cex2(f, g, "f AND g = " + delta(f, g).to_string() + " not < f");
          }
          return std::nullopt;
        }));
    add("conj-strict-monotonicity", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (f < g && h > bottom_ && !(delta(f, h) < delta(g, h))) {
            return cex3(f, g, h, "f<g, h>bottom, but f AND h not < g AND h");
          }
          return std::nullopt;
        }));
  }

  void disjunction_laws() {
    add("disj-commutativity", pairs_scope(),
        each2([&](const auto& f, const auto& g) -> Cex {
          if (disj(f, g) != disj(g, f)) return cex2(f, g, "order matters");
          return std::nullopt;
        }));
    add("disj-associativity", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (disj(disj(f, g), h) != disj(f, disj(g, h))) {
            return cex3(f, g, h, "grouping changes the disjunction");
          }
          return std::nullopt;
        }));
    add("disj-identity-bottom", unary_scope(), each1([&](const auto& f) -> Cex {
          if (disj(f, bottom_) != f) return cex1(f, "f OR bottom != f");
          return std::nullopt;
        }));
    add("disj-annihilator-top", unary_scope(), each1([&](const auto& f) -> Cex {
          if (disj(f, top_) != top_) return cex1(f, "f OR top != top");
          return std::nullopt;
        }));
  }

  void monotonicity_laws() {
    add("conj-monotonicity", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (f <= g && !(delta(f, h) <= delta(g, h))) {
            return cex3(f, g, h, "f<=g but f AND h not <= g AND h");
          }
          return std::nullopt;
        }));
    add("disj-monotonicity", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (f <= g && !(disj(f, h) <= disj(g, h))) {
            return cex3(f, g, h, "f<=g but f OR h not <= g OR h");
          }
          return std::nullopt;
        }));
  }

  void negation_laws() {
    bump();
    if (neg(bottom_) != top_ || neg(top_) != bottom_) {
      add("neg-boundaries", "constants", cex1(bottom_, "boundary images wrong"));
    } else {
      add("neg-boundaries", "constants", std::nullopt);
    }
    add("neg-antitone", pairs_scope(), each2([&](const auto& f, const auto& g) -> Cex {
          if (g <= f && !(neg(f) <= neg(g))) {
            return cex2(f, g, "g<=f but NOT f not <= NOT g");
          }
          return std::nullopt;
        }));
    {
      Cex cex;
      for (int r = 0; r < scale_.size() && !cex; ++r) {
        bump();
        const Valuation single = Valuation::from_grades(scale_, {r});
        const Valuation expect =
            Valuation::from_grades(scale_, {scale_.negate_rank(r)});
        if (neg(single) != expect) {
          cex = cex1(single, "NOT (x) != (x')");
        }
      }
      add("neg-singleton", "grades", std::move(cex));
    }
    add("de-morgan-conj", pairs_scope(), each2([&](const auto& f, const auto& g) -> Cex {
          if (neg(delta(f, g)) != disj(neg(f), neg(g))) {
            return cex2(f, g, "NOT(f AND g) != NOT f OR NOT g");
          }
          return std::nullopt;
        }));
    add("de-morgan-disj-ineq", pairs_scope(),
        each2([&](const auto& f, const auto& g) -> Cex {
          if (!(neg(disj(f, g)) >= delta(neg(f), neg(g)))) {
            return cex2(f, g, "NOT(f OR g) not >= NOT f AND NOT g");
          }
          return std::nullopt;
        }));
    if (scale_.negation_is_weak()) {
      add("neg-weak-lift", unary_scope(), each1([&](const auto& f) -> Cex {
            if (!(neg(neg(f)) >= f)) return cex1(f, "NOT NOT f not >= f");
            return std::nullopt;
          }));
    }
    if (scale_.negation_is_involution()) {
      add("neg-triple-collapse", unary_scope(), each1([&](const auto& f) -> Cex {
            if (neg(neg(neg(f))) != neg(f)) {
              return cex1(f, "NOT NOT NOT f != NOT f");
            }
            return std::nullopt;
          }));
    }
  }

  void mpgf_r_laws() {
    add("mpgfr-boundary", unary_scope(), each1([&](const auto& g) -> Cex {
          if (delta(bottom_, g) != bottom_) {
            return cex1(g, "MPR(bottom, g) != bottom");
          }
          if (delta(top_, top_) != top_) {
            return cex1(g, "MPR(top, top) != top");
          }
          return std::nullopt;
        }));
    add("mpgfr-strict-in-premise", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (f < h && g > bottom_ && !(delta(f, g) < delta(h, g))) {
            return cex3(f, g, h, "premise increased strictly, conclusion did not");
          }
          return std::nullopt;
        }));
    add("mpgfr-strict-in-rule", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (g < h && f > bottom_ && !(delta(f, g) < delta(f, h))) {
            return cex3(f, g, h, "rule pv increased strictly, conclusion did not");
          }
          return std::nullopt;
        }));
    add("mpgfr-top-strict", unary_scope(), each1([&](const auto& f) -> Cex {
          if (f < top_ && !(delta(f, top_) < top_)) {
            return cex1(f, "MPR(f, top) not < top");
          }
          return std::nullopt;
        }));
    add("mpgfr-below-min", pairs_scope(), each2([&](const auto& f, const auto& g) -> Cex {
          if (bottom_ < f && f < top_ && bottom_ < g && g < top_ &&
              !(delta(f, g) < min(f, g))) {
            return cex2(f, g, "MPR(f,g) not < min(f,g)");
          }
          return std::nullopt;
        }));
    add("mpgfr-no-drowning", pairs_scope(),
        each2([&](const auto& f, const auto& g) -> Cex {
          if (f > bottom_ && g > bottom_ && !(delta(f, g) > bottom_)) {
            return cex2(f, g, "MPR(f,g) absorbed to bottom");
          }
          return std::nullopt;
        }));
  }

  void mpgf_s_laws() {
    add("mpgfs-boundary", unary_scope(), each1([&](const auto& g) -> Cex {
          if (mpgf_s(bottom_, g) != bottom_) {
            return cex1(g, "MPS(bottom, g) != bottom");
          }
          if (mpgf_s(top_, top_) != top_) {
            return cex1(g, "MPS(top, top) != top");
          }
          return std::nullopt;
        }));
    add("mpgfs-monotone-in-premise", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (f <= h && !(mpgf_s(f, g) <= mpgf_s(h, g))) {
            return cex3(f, g, h, "MPS not monotone in the premise");
          }
          return std::nullopt;
        }));
    add("mpgfs-monotone-in-rule", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          if (g <= h && !(mpgf_s(f, g) <= mpgf_s(f, h))) {
            return cex3(f, g, h, "MPS not monotone in the rule pv");
          }
          return std::nullopt;
        }));
    // Existence: the strict analogue of the premise-monotonicity law fails
    // for MPS. The exhibited triple is the point of the report row.
    {
      Cex witness;
      for (const auto& f : all_) {
        for (const auto& h : all_) {
          if (!(f < h)) continue;
          for (const auto& g : all_) {
            bump();
            if (g > bottom_ && mpgf_s(f, g) == mpgf_s(h, g)) {
              witness = cex3(f, g, h,
                             "f<h, g>bottom, yet MPS(f,g) = MPS(h,g) = " +
                                 mpgf_s(f, g).to_string());
              break;
            }
          }
          if (witness) break;
        }
        if (witness) break;
      }
      add_existence("mpgfs-strictness-violated", triples_scope(),
                    std::move(witness));
    }
  }

  const std::vector<Valuation>& enumeration_for(std::size_t max_len) {
    auto [it, inserted] = budget_cache_.try_emplace(max_len);
    if (inserted) it->second = enumerate_valuations({scale_, max_len});
    return it->second;
  }

  // Supremum / infimum over two nested budgets; disagreement between budgets
  // is evidence of an unattained bound and fails the law.
  struct TwoBudget {
    std::optional<Valuation> small, large;
  };
  template <typename Pred>
  TwoBudget scan(std::size_t base_len, bool want_sup, Pred&& pred) {
    TwoBudget out;
    for (int extra = 0; extra < 2; ++extra) {
      const auto& hs = enumeration_for(base_len + static_cast<std::size_t>(extra));
      std::optional<Valuation> found;
      if (want_sup) {
        for (auto it = hs.rbegin(); it != hs.rend(); ++it) {
          bump();
          if (pred(*it)) {
            found = *it;
            break;
          }
        }
      } else {
        for (const auto& h : hs) {
          bump();
          if (pred(h)) {
            found = h;
            break;
          }
        }
      }
      (extra == 0 ? out.small : out.large) = std::move(found);
    }
    return out;
  }

  void implication_oracle_laws() {
    add("mpgfs-oracle-agreement", pairs_scope(),
        each2([&](const auto& f, const auto& g) -> Cex {
          const auto got = mpgf_s(f, g);
          const auto scanned =
              scan(f.length() + g.length() + 1, /*want_sup=*/false,
                   [&](const Valuation& h) { return s_implication(f, h) >= g; });
          if (!scanned.small || *scanned.small != *scanned.large ||
              *scanned.small != got) {
            return cex2(f, g,
                        "MPS=" + got.to_string() + " oracle inf=" +
                            (scanned.small ? scanned.small->to_string() : "none"));
          }
          return std::nullopt;
        }));
    add("rimp-oracle-agreement", pairs_scope(),
        each2([&](const auto& f, const auto& g) -> Cex {
          const auto got = r_implication(f, g);
          const auto scanned =
              scan(f.length() + g.length() + 1, /*want_sup=*/true,
                   [&](const Valuation& h) { return conj(f, h) <= g; });
          if (!scanned.small || *scanned.small != *scanned.large ||
              *scanned.small != got) {
            return cex2(f, g,
                        "RIMP=" + got.to_string() + " oracle sup=" +
                            (scanned.small ? scanned.small->to_string() : "none"));
          }
          return std::nullopt;
        }));
    add("residuation-adjunction", triples_scope(),
        each3([&](const auto& f, const auto& g, const auto& h) -> Cex {
          const bool lhs = conj(f, h) <= g;
          const bool rhs = h <= r_implication(f, g);
          if (lhs != rhs) {
            return cex3(f, g, h, "conj(f,h)<=g and h<=RIMP(f,g) disagree");
          }
          return std::nullopt;
        }));
  }

  const Scale& scale_;
  LawCheckOptions options_;
  std::vector<Valuation> all_;
  Valuation bottom_;
  Valuation top_;
  std::string len_scope_;
  std::vector<LawResult> results_;
  std::uint64_t evaluations_ = 0;
  std::map<std::size_t, std::vector<Valuation>> budget_cache_;
};

}  // namespace

LawReport check_laws(const Scale& scale, std::size_t max_len,
                     const LawCheckOptions& options) {
  return LawChecker(scale, max_len, options).run();
}

}  // namespace lexval
