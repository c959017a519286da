// SPDX-License-Identifier: Apache-2.0
#include "lexval/stability.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <utility>

namespace lexval {

Rational rational_from_decimal(std::string_view text) {
  const auto bad = [&] {
    return ValidationError("cannot parse '" + std::string(text) +
                           "' as a rational number");
  };
  if (text.empty()) throw bad();
  const auto parse_digits = [&](std::string_view digits) {
    if (digits.empty()) throw bad();
    boost::multiprecision::cpp_int value = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw bad();
      value = value * 10 + (c - '0');
    }
    return value;
  };
  const std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto den = parse_digits(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(parse_digits(text.substr(0, slash)), den);
  }
  const std::size_t dot = text.find('.');
  boost::multiprecision::cpp_int numerator = 0;
  boost::multiprecision::cpp_int denominator = 1;
  bool any_digit = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == dot) continue;
    if (text[i] < '0' || text[i] > '9') throw bad();
    numerator = numerator * 10 + (text[i] - '0');
    any_digit = true;
    if (dot != std::string_view::npos && i > dot) denominator *= 10;
  }
  if (!any_digit) throw bad();
  return Rational(numerator, denominator);
}

std::string rational_to_string(const Rational& value) {
  return value.str();
}

Embedding Embedding::make(Scale scale, std::vector<Rational> values) {
  if (static_cast<int>(values.size()) != scale.size()) {
    throw ValidationError("embedding needs one value per grade of scale '" +
                          scale.name() + "'");
  }
  if (values.front() != 0) {
    throw ValidationError("embedding must pin the bottom grade to 0");
  }
  if (values.back() != 1) {
    throw ValidationError("embedding must pin the top grade to 1");
  }
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i] < values[i + 1])) {
      throw ValidationError("embedding values must increase strictly with rank");
    }
  }
  return Embedding(std::move(scale), std::move(values));
}

Embedding Embedding::from_interior(Scale scale, std::vector<Rational> interior) {
  std::vector<Rational> values;
  values.reserve(interior.size() + 2);
  values.emplace_back(0);
  for (auto& v : interior) values.push_back(std::move(v));
  values.emplace_back(1);
  return make(std::move(scale), std::move(values));
}

nlohmann::json Embedding::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : values_) arr.push_back(rational_to_string(v));
  return arr;
}

TNorm tnorm_from_string(std::string_view name) {
  if (name == "product") return TNorm::Product;
  if (name == "min") return TNorm::Min;
  if (name == "lukasiewicz") return TNorm::Lukasiewicz;
  throw ValidationError("unknown T-norm '" + std::string(name) +
                        "' (expected product, min or lukasiewicz)");
}

std::string to_string(TNorm tnorm) {
  switch (tnorm) {
    case TNorm::Product: return "product";
    case TNorm::Min: return "min";
    case TNorm::Lukasiewicz: return "lukasiewicz";
  }
  return "?";
}

namespace {

Rational tnorm_apply(TNorm tnorm, const Rational& a, const Rational& b) {
  switch (tnorm) {
    case TNorm::Product:
      return a * b;
    case TNorm::Min:
      return a < b ? a : b;
    case TNorm::Lukasiewicz: {
      Rational sum = a + b - 1;
      return sum > 0 ? sum : Rational(0);
    }
  }
  throw ValidationError("unreachable T-norm");
}

}  // namespace

std::map<Atom, Rational> evaluate_numeric(const RuleBase& rb,
                                          const Embedding& embedding,
                                          TNorm tnorm) {
  if (embedding.scale() != rb.scale()) {
    throw ScaleMismatchError("embedding is on scale '" +
                             embedding.scale().name() +
                             "' but the rule base is on '" +
                             rb.scale().name() + "'");
  }
  std::map<Atom, Rational> facts;
  for (const auto& fact : rb.facts()) {
    facts.emplace(fact.atom, embedding.value_of(fact.pv.first_rank()));
  }
  std::map<Atom, Rational> out;
  for (const auto& rule : rb.rules()) {
    for (const auto& concl : rule.conclusions) {
      Rational value = embedding.value_of(concl.pv.first_rank());
      for (const auto& premise : rule.premises) {
        const auto it = facts.find(premise);
        const Rational premise_value = it == facts.end() ? Rational(0) : it->second;
        value = tnorm_apply(tnorm, value, premise_value);
      }
      const auto [it, inserted] = out.emplace(concl.atom, value);
      if (!inserted && value > it->second) it->second = value;
    }
  }
  return out;
}

std::vector<Embedding> sample_embeddings(const Scale& scale, int n,
                                         std::uint64_t seed) {
  if (n < 0) throw ValidationError("cannot sample a negative number of embeddings");
  std::mt19937_64 rng(seed);
  // 53-bit dyadic uniform in [0,1); stable across platforms, exact as a
  // rational.
  const auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const std::size_t interior_count = static_cast<std::size_t>(scale.size()) - 2;
  std::vector<Embedding> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> draws(interior_count);
    while (true) {
      for (auto& d : draws) d = uniform();
      std::sort(draws.begin(), draws.end());
      const bool distinct =
          std::adjacent_find(draws.begin(), draws.end()) == draws.end();
      if (distinct && (draws.empty() || draws.front() > 0.0)) break;
      // collided or hit the pinned bottom: redraw
    }
    std::vector<Rational> interior;
    interior.reserve(interior_count);
    for (double d : draws) interior.emplace_back(d);  // exact dyadic conversion
    out.push_back(Embedding::from_interior(scale, std::move(interior)));
  }
  return out;
}

namespace {

// Strictly reversed conclusion pair between two evaluations.
bool flips(const std::map<Atom, Rational>& a, const std::map<Atom, Rational>& b) {
  for (auto i = a.begin(); i != a.end(); ++i) {
    auto j = i;
    for (++j; j != a.end(); ++j) {
      const Rational& ai = i->second;
      const Rational& aj = j->second;
      const Rational& bi = b.at(i->first);
      const Rational& bj = b.at(j->first);
      if ((ai > aj && bi < bj) || (ai < aj && bi > bj)) return true;
    }
  }
  return false;
}

// Any ordering difference, including ties appearing or resolving.
bool disagrees(const std::map<Atom, Rational>& a,
               const std::map<Atom, Rational>& b) {
  for (auto i = a.begin(); i != a.end(); ++i) {
    auto j = i;
    for (++j; j != a.end(); ++j) {
      const auto order_a = i->second.compare(j->second);
      const auto order_b = b.at(i->first).compare(b.at(j->first));
      if (order_a != order_b) return true;
    }
  }
  return false;
}

}  // namespace

StabilityReport audit(const RuleBase& rb, const AuditOptions& options) {
  StabilityReport report;
  report.tnorm = options.tnorm;
  report.seed = options.seed;

  report.embeddings = options.injected;
  auto sampled = sample_embeddings(rb.scale(), options.samples, options.seed);
  report.embeddings.insert(report.embeddings.end(),
                           std::make_move_iterator(sampled.begin()),
                           std::make_move_iterator(sampled.end()));
  report.samples = report.embeddings.size();

  std::vector<std::map<Atom, Rational>> evaluations;
  evaluations.reserve(report.embeddings.size());
  for (const auto& embedding : report.embeddings) {
    evaluations.push_back(evaluate_numeric(rb, embedding, options.tnorm));
  }

  for (std::size_t i = 0; i < evaluations.size(); ++i) {
    for (std::size_t j = i + 1; j < evaluations.size(); ++j) {
      const bool pair_flips = flips(evaluations[i], evaluations[j]);
      if (pair_flips) {
        ++report.flips;
        if (!report.witness) {
          report.witness = StabilityWitness{i, j, evaluations[i], evaluations[j]};
        }
      }
      if (pair_flips || disagrees(evaluations[i], evaluations[j])) {
        ++report.disagreements;
      }
    }
  }

  report.lexicographic_ranking =
      infer(rb, InferOptions{Mode::MpgfR}).ranking;
  return report;
}

namespace {

nlohmann::json values_to_json(const std::map<Atom, Rational>& values) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [atom, value] : values) {
    obj[atom.to_string()] = rational_to_string(value);
  }
  return obj;
}

}  // namespace

nlohmann::json StabilityReport::to_json() const {
  nlohmann::json ranking = nlohmann::json::array();
  for (const auto& ranked : lexicographic_ranking) {
    ranking.push_back(nlohmann::json{{"attribute", ranked.atom.attribute},
                                     {"value", ranked.atom.value},
                                     {"pv", ranked.pv.to_json()}});
  }
  nlohmann::json witness_json(nullptr);
  if (witness) {
    witness_json = nlohmann::json{
        {"embedding_a", embeddings[witness->index_a].to_json()},
        {"embedding_b", embeddings[witness->index_b].to_json()},
        {"values_a", values_to_json(witness->values_a)},
        {"values_b", values_to_json(witness->values_b)}};
  }
  return nlohmann::json{{"samples", samples},
                        {"flips", flips},
                        {"disagreements", disagreements},
                        {"witness", witness_json},
                        {"lexicographic_ranking", ranking},
                        {"tnorm", lexval::to_string(tnorm)},
                        {"seed", seed}};
}

std::string StabilityReport::to_table() const {
  std::ostringstream out;
  out << "tnorm: " << lexval::to_string(tnorm) << "  samples: " << samples
      << "  seed: " << seed << '\n';
  out << "embedding pairs with strictly reversed conclusions: " << flips << '\n';
  out << "embedding pairs with any ordering difference:       " << disagreements
      << '\n';
  if (witness) {
    out << "witness pair (#" << witness->index_a << ", #" << witness->index_b
        << "):\n";
    auto print_side = [&](const char* tag, std::size_t index,
                          const std::map<Atom, Rational>& values) {
      out << "  " << tag << " embedding " << embeddings[index].to_json().dump()
          << '\n';
      for (const auto& [atom, value] : values) {
        out << "    " << atom.to_string() << " = " << rational_to_string(value)
            << '\n';
      }
    };
    print_side("A:", witness->index_a, witness->values_a);
    print_side("B:", witness->index_b, witness->values_b);
  }
  out << "ordinal ranking (identical for every embedding):\n";
  if (lexicographic_ranking.empty()) {
    out << "  (empty, no conclusion above bottom)\n";
  } else {
    for (const auto& ranked : lexicographic_ranking) {
      out << "  " << ranked.atom.to_string() << "  " << ranked.pv.to_string()
          << '\n';
    }
  }
  return out.str();
}

}  // namespace lexval
