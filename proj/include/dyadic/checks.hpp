#ifndef DYADIC_CHECKS_HPP
#define DYADIC_CHECKS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyadic/coding.hpp"
#include "dyadic/subbase.hpp"
#include "dyadic/symbolic_set.hpp"

namespace dyadic {

/// Largest enumeration depth accepted by the word-enumerating checks.
inline constexpr std::size_t kDepthLimit = 12;

/// At most this many counterexamples are kept; the first one is always the
/// first in enumeration order.
inline constexpr std::size_t kMaxCounterexamples = 32;

enum class Property { proper, independent, dyadic, degree, resolution };

inline const char* property_name(Property p) {
  switch (p) {
    case Property::proper: return "proper";
    case Property::independent: return "independent";
    case Property::dyadic: return "dyadic";
    case Property::degree: return "degree";
    case Property::resolution: return "resolution";
  }
  return "?";
}

struct Counterexample {
  std::optional<TernaryWord> word;
  std::optional<Rational> point;
  std::optional<std::size_t> index;
  std::string detail;
};

struct ProbeDegree {
  Rational point;
  std::size_t degree;
};

struct CheckReport {
  Property property;
  std::size_t depth = 0;
  bool passed = true;
  std::vector<Counterexample> counterexamples;
  std::size_t words_checked = 0;
  std::size_t counterexamples_found = 0;

  // degree reports
  std::optional<std::size_t> degree_sup;
  std::optional<std::size_t> expected_degree;
  std::optional<bool> boundaries_disjoint;
  std::vector<ProbeDegree> probe_degrees;

  // resolution reports
  std::optional<Rational> epsilon;
  std::size_t probes_checked = 0;

  // randomized probe generation, when used
  std::optional<std::uint64_t> seed;

  explicit CheckReport(Property p, std::size_t d = 0) : property(p), depth(d) {}

  void fail(Counterexample c) {
    passed = false;
    ++counterexamples_found;
    if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(std::move(c));
  }
};

namespace detail {

inline std::size_t effective_depth(const DyadicSubbase& subbase, std::size_t depth, std::size_t limit) {
  if (depth > limit) {
    throw precondition_error("depth " + std::to_string(depth) + " exceeds the limit " + std::to_string(limit));
  }
  return std::min(depth, subbase.size());
}

/// Visits every word with dom ⊆ {0..depth-1} in lexicographic order with
/// ⊥ < 0 < 1, together with S(σ) and S̄(σ).
inline void for_each_word(
    const DyadicSubbase& subbase, std::size_t depth,
    const std::function<void(const TernaryWord&, const SymbolicSet&, const SymbolicSet&)>& visit) {
  std::vector<std::array<SymbolicSet, 2>> closures;
  for (std::size_t n = 0; n < depth; ++n) {
    closures.push_back({subbase[n].zero.closure(), subbase[n].one.closure()});
  }
  TernaryWord word;
  std::function<void(std::size_t, const SymbolicSet&, const SymbolicSet&)> walk =
      [&](std::size_t n, const SymbolicSet& open, const SymbolicSet& closed) {
        if (n == depth) {
          visit(word, open, closed);
          return;
        }
        walk(n + 1, open, closed);
        for (unsigned d = 0; d < 2; ++d) {
          word.set(n, d);
          walk(n + 1, intersect(open, subbase[n].side(d)), intersect(closed, closures[n][d]));
          word.clear(n);
        }
      };
  auto full = SymbolicSet::full(subbase.space());
  walk(0, full, full);
}

}  // namespace detail

/// cl S(σ) = S̄(σ) for every word with dom ⊆ {0..depth-1}.
inline CheckReport check_proper(const DyadicSubbase& subbase, std::size_t depth,
                                std::size_t limit = kDepthLimit) {
  CheckReport report(Property::proper, detail::effective_depth(subbase, depth, limit));
  detail::for_each_word(subbase, report.depth,
                        [&](const TernaryWord& w, const SymbolicSet& open, const SymbolicSet& closed) {
                          ++report.words_checked;
                          SymbolicSet cl = open.closure();
                          if (cl == closed) return;
                          Counterexample c;
                          c.word = w;
                          c.point = some_point(subtract(closed, cl));
                          c.detail = "cl S(σ) = " + cl.str() + " but S̄(σ) = " + closed.str();
                          report.fail(std::move(c));
                        });
  return report;
}

/// S(σ) ≠ ∅ for every word with dom ⊆ {0..depth-1}.
inline CheckReport check_independent(const DyadicSubbase& subbase, std::size_t depth,
                                     std::size_t limit = kDepthLimit) {
  CheckReport report(Property::independent, detail::effective_depth(subbase, depth, limit));
  if (subbase.space()->is_empty()) {
    report.fail({std::nullopt, std::nullopt, std::nullopt, "ambient space is empty"});
    return report;
  }
  detail::for_each_word(subbase, report.depth,
                        [&](const TernaryWord& w, const SymbolicSet& open, const SymbolicSet&) {
                          ++report.words_checked;
                          if (!open.is_empty()) return;
                          report.fail({w, std::nullopt, std::nullopt, "S(σ) is empty"});
                        });
  return report;
}

/// Every S_{n,0} is regular open and S_{n,1} is its exterior.
inline CheckReport check_dyadic(const DyadicSubbase& subbase) {
  CheckReport report(Property::dyadic, subbase.size());
  for (std::size_t n = 0; n < subbase.size(); ++n) {
    auto parts = regular_ops(subbase[n].zero);
    if (!parts.is_regular_open) {
      report.fail({std::nullopt, std::nullopt, n,
                   "S_{n,0} = " + subbase[n].zero.str() + " is not regular open (regularization " +
                       parts.regularization.str() + ")"});
    } else if (!(subbase[n].one == parts.exterior)) {
      report.fail({std::nullopt, std::nullopt, n,
                   "S_{n,1} = " + subbase[n].one.str() + " differs from the exterior " + parts.exterior.str()});
    }
  }
  return report;
}

/// The set of points x with x ∉ S_{n,0} ∪ S_{n,1}.
inline SymbolicSet gap_set(const ExteriorPair& pair) { return unite(pair.zero, pair.one).complement(); }

/// Per-probe degrees over the first `depth` indices, plus the exact supremum
/// over all points, computed from the boundary sets. Passes when no
/// expectation is given or when the supremum equals it.
inline CheckReport degree_report(const DyadicSubbase& subbase, std::size_t depth,
                                 const std::vector<Rational>& probes,
                                 std::optional<std::size_t> expected = std::nullopt) {
  CheckReport report(Property::degree, std::min(depth, subbase.size()));
  report.expected_degree = expected;
  std::vector<SymbolicSet> gaps;
  for (std::size_t n = 0; n < report.depth; ++n) gaps.push_back(gap_set(subbase[n]));
  for (const auto& x : probes) {
    if (!subbase.space()->contains(x)) throw precondition_error("probe " + x.str() + " is not in the space");
    std::size_t deg = 0;
    for (const auto& g : gaps) deg += g.contains(x) ? 1 : 0;
    report.probe_degrees.push_back({x, deg});
  }
  std::vector<const SymbolicSet*> ptrs;
  for (const auto& g : gaps) ptrs.push_back(&g);
  std::size_t sup = 0;
  std::vector<std::pair<Rational, std::size_t>> heavy;
  for (const auto& x : witness_points(subbase.space(), ptrs)) {
    std::size_t m = 0;
    for (const auto& g : gaps) m += g.contains(x) ? 1 : 0;
    sup = std::max(sup, m);
    if (m > 1) heavy.emplace_back(x, m);
  }
  report.degree_sup = sup;
  report.boundaries_disjoint = heavy.empty();
  if (expected) {
    for (const auto& [x, m] : heavy) {
      if (m > *expected) {
        report.fail({std::nullopt, x, std::nullopt, "point lies on " + std::to_string(m) + " boundaries"});
      }
    }
    if (sup > *expected && heavy.empty()) {
      report.fail({std::nullopt, std::nullopt, std::nullopt, "degree exceeds the expected value"});
    }
    if (sup < *expected) {
      report.fail({std::nullopt, std::nullopt, std::nullopt,
                   "degree " + std::to_string(sup) + " is below the expected " + std::to_string(*expected)});
    }
  }
  return report;
}

/// For each probe x, looks for a base set with x ∈ S(σ) ⊆ B(x, ε) ∩ X.
/// The smallest base set containing x is S(code of x), so only that word
/// needs testing.
inline CheckReport resolution_check(const DyadicSubbase& subbase, const Rational& epsilon,
                                    const std::vector<Rational>& probes) {
  if (epsilon.sign() <= 0) throw precondition_error("epsilon must be positive");
  CheckReport report(Property::resolution, subbase.size());
  report.epsilon = epsilon;
  for (const auto& x : probes) {
    auto coded = encode_point(subbase, x, subbase.size());
    auto cell = decode_word(subbase, coded.word);
    ++report.probes_checked;
    if (is_subset(cell, SymbolicSet::ball(subbase.space(), x, epsilon))) continue;
    report.fail({coded.word, x, std::nullopt, "smallest base set " + cell.str() + " leaves the ball"});
  }
  return report;
}

}  // namespace dyadic

#endif  // DYADIC_CHECKS_HPP
