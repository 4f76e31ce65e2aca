#ifndef DYADIC_SUBBASE_HPP
#define DYADIC_SUBBASE_HPP

#include <string>
#include <utility>
#include <vector>

#include "dyadic/error.hpp"
#include "dyadic/symbolic_set.hpp"
#include "dyadic/ternary_word.hpp"

namespace dyadic {

/// Raised by make_pair; carries the regularization int cl S as a repair hint.
class not_regular_open : public precondition_error {
 public:
  explicit not_regular_open(SymbolicSet set, SymbolicSet hint)
      : precondition_error("set " + set.str() + " is not regular open; its regularization is " + hint.str()),
        hint_(std::move(hint)) {}
  const SymbolicSet& hint() const { return hint_; }

 private:
  SymbolicSet hint_;
};

/// (S_{n,0}, S_{n,1}) with S_{n,1} the exterior of S_{n,0}.
struct ExteriorPair {
  SymbolicSet zero;
  SymbolicSet one;

  const SymbolicSet& side(unsigned digit) const { return digit ? one : zero; }
  friend bool operator==(const ExteriorPair&, const ExteriorPair&) = default;
};

inline ExteriorPair make_pair(const SymbolicSet& s) {
  auto parts = regular_ops(s);
  if (!parts.is_regular_open) throw not_regular_open(s, parts.regularization);
  return {s, parts.exterior};
}

/// An indexed list of exterior pairs over one ambient space.
class DyadicSubbase {
 public:
  DyadicSubbase() = default;
  explicit DyadicSubbase(SpacePtr space) : space_(std::move(space)) {}

  const SpacePtr& space() const { return space_; }
  const std::vector<ExteriorPair>& pairs() const { return pairs_; }
  const ExteriorPair& operator[](std::size_t n) const { return pairs_.at(n); }
  std::size_t size() const { return pairs_.size(); }

  /// Appends (S, exterior(S)); throws not_regular_open.
  void push(const SymbolicSet& s) {
    require_ambient(s);
    pairs_.push_back(make_pair(s));
  }

  /// Appends a pair as given, without checking the dyadic invariant. Used for
  /// hand-written fixtures that check_dyadic is meant to judge.
  void push_unchecked(ExteriorPair pair) {
    require_ambient(pair.zero);
    require_ambient(pair.one);
    pairs_.push_back(std::move(pair));
  }

  /// The first `count` pairs.
  DyadicSubbase prefix(std::size_t count) const {
    DyadicSubbase out(space_);
    for (std::size_t n = 0; n < count && n < pairs_.size(); ++n) out.pairs_.push_back(pairs_[n]);
    return out;
  }

 private:
  void require_ambient(const SymbolicSet& s) const {
    if (!s.space() || !(*s.space() == *space_)) throw ambient_mismatch();
  }

  SpacePtr space_;
  std::vector<ExteriorPair> pairs_;
};

struct SigmaSets {
  SymbolicSet open;    // S(σ): intersection of the chosen members
  SymbolicSet closed;  // S̄(σ): intersection of their closures
};

inline SigmaSets sigma_sets(const DyadicSubbase& subbase, const TernaryWord& word) {
  SigmaSets out{SymbolicSet::full(subbase.space()), SymbolicSet::full(subbase.space())};
  for (const auto& [n, digit] : word.digits()) {
    if (n >= subbase.size()) {
      throw precondition_error("word index " + std::to_string(n) + " beyond subbase of size " +
                               std::to_string(subbase.size()));
    }
    const auto& s = subbase[n].side(digit);
    out.open = intersect(out.open, s);
    out.closed = intersect(out.closed, s.closure());
  }
  return out;
}

}  // namespace dyadic

#endif  // DYADIC_SUBBASE_HPP
