#ifndef DYADIC_SYMBOLIC_SET_HPP
#define DYADIC_SYMBOLIC_SET_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dyadic/error.hpp"
#include "dyadic/index_set.hpp"
#include "dyadic/interval_trace.hpp"
#include "dyadic/rational.hpp"
#include "dyadic/space.hpp"

namespace dyadic {

/// An exactly represented subset of a SpaceDescription.
///
/// The set is stored primitive by primitive: a canonical IntervalTrace for
/// every interval, a flag for every isolated point and a finite/cofinite
/// IndexSet for every geometric sequence. Because the primitives partition
/// the space, equality of representations is equality of point sets.
class SymbolicSet {
 public:
  SymbolicSet() = default;

  static SymbolicSet empty(SpacePtr space) {
    SymbolicSet s;
    s.space_ = std::move(space);
    for (const auto& iv : s.space_->intervals()) s.traces_.push_back(IntervalTrace::empty(iv.lo, iv.hi));
    s.points_.assign(s.space_->points().size(), 0);
    s.tails_.assign(s.space_->sequences().size(), IndexSet::none());
    return s;
  }

  static SymbolicSet full(SpacePtr space) {
    SymbolicSet s;
    s.space_ = std::move(space);
    for (const auto& iv : s.space_->intervals()) s.traces_.push_back(IntervalTrace::full(iv.lo, iv.hi));
    s.points_.assign(s.space_->points().size(), 1);
    s.tails_.assign(s.space_->sequences().size(), IndexSet::all());
    return s;
  }

  /// piece ∩ X.
  static SymbolicSet from_piece(SpacePtr space, const Piece& piece) {
    SymbolicSet s = empty(std::move(space));
    const auto& sp = *s.space_;
    for (std::size_t i = 0; i < sp.intervals().size(); ++i) {
      s.traces_[i] = IntervalTrace::from_piece(sp.intervals()[i].lo, sp.intervals()[i].hi, piece);
    }
    for (std::size_t i = 0; i < sp.points().size(); ++i) s.points_[i] = piece.contains(sp.points()[i].at);
    for (std::size_t i = 0; i < sp.sequences().size(); ++i) s.tails_[i] = sp.sequences()[i].hits(piece);
    return s;
  }

  /// The open ball (x - radius, x + radius) ∩ X.
  static SymbolicSet ball(SpacePtr space, const Rational& x, const Rational& radius) {
    return from_piece(std::move(space), Piece::open(x - radius, x + radius));
  }

  static SymbolicSet singleton(SpacePtr space, const Rational& x) {
    if (!space->contains(x)) throw precondition_error("point " + x.str() + " is not in the space");
    return from_piece(std::move(space), Piece::point(x));
  }

  static SymbolicSet sequence_members(SpacePtr space, std::size_t seq, IndexSet indices) {
    SymbolicSet s = empty(std::move(space));
    s.tails_.at(seq) = std::move(indices);
    return s;
  }

  const SpacePtr& space() const { return space_; }
  const std::vector<IntervalTrace>& traces() const { return traces_; }
  const std::vector<char>& points() const { return points_; }
  const std::vector<IndexSet>& tails() const { return tails_; }

  bool contains(const Rational& x) const {
    auto loc = space_->locate(x);
    if (!loc) return false;
    switch (loc->kind) {
      case Location::Kind::interval: return traces_[loc->primitive].contains(x);
      case Location::Kind::point: return points_[loc->primitive];
      case Location::Kind::sequence: return tails_[loc->primitive].contains(loc->member);
    }
    return false;
  }

  bool is_empty() const {
    return std::all_of(traces_.begin(), traces_.end(), [](auto& t) { return t.is_empty(); }) &&
           std::none_of(points_.begin(), points_.end(), [](char c) { return c; }) &&
           std::all_of(tails_.begin(), tails_.end(), [](auto& t) { return t.is_empty(); });
  }

  bool same_ambient(const SymbolicSet& o) const {
    return space_ == o.space_ || (space_ && o.space_ && *space_ == *o.space_);
  }

  friend bool operator==(const SymbolicSet& a, const SymbolicSet& b) {
    return a.same_ambient(b) && a.traces_ == b.traces_ && a.points_ == b.points_ && a.tails_ == b.tails_;
  }

  template <class Op>
  static SymbolicSet combine(const SymbolicSet& a, const SymbolicSet& b, Op op) {
    if (!a.same_ambient(b)) throw ambient_mismatch();
    SymbolicSet s = a;
    for (std::size_t i = 0; i < s.traces_.size(); ++i) s.traces_[i] = IntervalTrace::combine(a.traces_[i], b.traces_[i], op);
    for (std::size_t i = 0; i < s.points_.size(); ++i) s.points_[i] = op(a.points_[i] != 0, b.points_[i] != 0);
    for (std::size_t i = 0; i < s.tails_.size(); ++i) {
      const auto& p = a.tails_[i];
      const auto& q = b.tails_[i];
      bool both = op(true, true), left = op(true, false), right = op(false, true), neither = op(false, false);
      IndexSet r = IndexSet::none();
      if (both) r = unite(r, intersect(p, q));
      if (left) r = unite(r, subtract(p, q));
      if (right) r = unite(r, subtract(q, p));
      if (neither) r = unite(r, unite(p, q).complement());
      s.tails_[i] = r;
    }
    return s;
  }

  /// X ∖ A.
  SymbolicSet complement() const {
    SymbolicSet s = *this;
    for (auto& t : s.traces_) t = t.complement();
    for (auto& p : s.points_) p = !p;
    for (auto& t : s.tails_) t = t.complement();
    return s;
  }

  /// Closure in X: cl_ℝ(A) ∩ X. Interval endpoints are adjoined per
  /// primitive; a sequence limit lying in X is adjoined iff infinitely many
  /// members are selected.
  SymbolicSet closure() const {
    SymbolicSet s = *this;
    for (auto& t : s.traces_) t = t.closure();
    for (std::size_t i = 0; i < tails_.size(); ++i) {
      if (!tails_[i].is_infinite()) continue;
      const auto& home = space_->limit_location(i);
      if (!home) continue;
      if (home->kind == Location::Kind::interval) {
        auto& tr = s.traces_[home->primitive];
        tr = tr.with_point(space_->sequences()[i].limit);
      } else if (home->kind == Location::Kind::point) {
        s.points_[home->primitive] = 1;
      }
    }
    return s;
  }

  /// Every point at which some primitive's membership may change, plus the
  /// primitive endpoints; used to build witness grids.
  std::vector<Rational> breakpoints() const {
    std::vector<Rational> out;
    for (const auto& t : traces_) out.insert(out.end(), t.cuts().begin(), t.cuts().end());
    return out;
  }

  std::string str() const {
    std::vector<std::string> parts;
    for (const auto& t : traces_) {
      for (const auto& p : t.pieces()) parts.push_back(p.str());
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i]) parts.push_back("{" + space_->points()[i].at.str() + "}");
    }
    for (std::size_t i = 0; i < tails_.size(); ++i) {
      const auto& seq = space_->sequences()[i];
      for (auto k : tails_[i].members_below_threshold()) parts.push_back("{" + seq.member(k).str() + "}");
      if (tails_[i].is_infinite()) {
        std::string sign = seq.offset.sign() < 0 ? "-" : "+";
        parts.push_back("{" + seq.limit.str() + sign + seq.offset.abs().str() + "*2^-k : k>=" +
                        std::to_string(tails_[i].threshold()) + "}");
      }
    }
    if (parts.empty()) return "∅";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += " ∪ ";
      out += parts[i];
    }
    return out;
  }

  /// Assembles a set from per-primitive parts; sizes must match the space.
  static SymbolicSet from_parts(SpacePtr space, std::vector<IntervalTrace> traces, std::vector<char> points,
                                std::vector<IndexSet> tails) {
    if (traces.size() != space->intervals().size() || points.size() != space->points().size() ||
        tails.size() != space->sequences().size()) {
      throw precondition_error("set parts do not match the space's primitives");
    }
    for (std::size_t i = 0; i < traces.size(); ++i) {
      if (traces[i].lo() != space->intervals()[i].lo || traces[i].hi() != space->intervals()[i].hi) {
        throw precondition_error("interval trace does not match its primitive");
      }
    }
    SymbolicSet s;
    s.space_ = std::move(space);
    s.traces_ = std::move(traces);
    s.points_ = std::move(points);
    s.tails_ = std::move(tails);
    return s;
  }

 private:

  SpacePtr space_;
  std::vector<IntervalTrace> traces_;
  std::vector<char> points_;
  std::vector<IndexSet> tails_;
};

inline SymbolicSet unite(const SymbolicSet& a, const SymbolicSet& b) {
  return SymbolicSet::combine(a, b, [](bool p, bool q) { return p || q; });
}
inline SymbolicSet intersect(const SymbolicSet& a, const SymbolicSet& b) {
  return SymbolicSet::combine(a, b, [](bool p, bool q) { return p && q; });
}
inline SymbolicSet subtract(const SymbolicSet& a, const SymbolicSet& b) {
  return SymbolicSet::combine(a, b, [](bool p, bool q) { return p && !q; });
}
inline bool is_subset(const SymbolicSet& a, const SymbolicSet& b) { return subtract(a, b).is_empty(); }
inline bool are_disjoint(const SymbolicSet& a, const SymbolicSet& b) { return intersect(a, b).is_empty(); }

enum class LatticeKind { union_op, intersection, complement_in_ambient };

inline SymbolicSet lattice_op(LatticeKind kind, const SymbolicSet& a, const SymbolicSet* b = nullptr) {
  switch (kind) {
    case LatticeKind::union_op:
      if (!b) throw precondition_error("union needs two operands");
      return unite(a, *b);
    case LatticeKind::intersection:
      if (!b) throw precondition_error("intersection needs two operands");
      return intersect(a, *b);
    case LatticeKind::complement_in_ambient:
      return a.complement();
  }
  throw precondition_error("unknown lattice operation");
}

inline SymbolicSet closure(const SymbolicSet& a) { return a.closure(); }

/// Interior in X.
inline SymbolicSet interior(const SymbolicSet& a) { return a.complement().closure().complement(); }

inline bool is_open(const SymbolicSet& a) { return a.complement().closure() == a.complement(); }
inline bool is_closed(const SymbolicSet& a) { return a.closure() == a; }

namespace detail {
inline void require_closed_subspace(const SymbolicSet& y, const SymbolicSet& a) {
  if (!a.same_ambient(y)) throw ambient_mismatch();
  if (!is_subset(a, y)) throw precondition_error("set " + a.str() + " is not contained in " + y.str());
  if (!is_closed(y)) throw precondition_error("subspace " + y.str() + " is not closed in the space");
}
}  // namespace detail

/// cl_Y A = cl_X(A) ∩ Y for a closed subspace Y ⊇ A.
inline SymbolicSet closure_in(const SymbolicSet& y, const SymbolicSet& a) {
  detail::require_closed_subspace(y, a);
  return intersect(a.closure(), y);
}

/// int_Y A = Y ∖ cl_X(Y ∖ A) for a closed subspace Y ⊇ A.
inline SymbolicSet interior_in(const SymbolicSet& y, const SymbolicSet& a) {
  detail::require_closed_subspace(y, a);
  return subtract(y, subtract(y, a).closure());
}

struct RegularParts {
  SymbolicSet interior;
  SymbolicSet regularization;
  SymbolicSet exterior;
  SymbolicSet boundary;
  bool is_regular_open = false;
};

inline RegularParts regular_ops(const SymbolicSet& y, const SymbolicSet& a) {
  detail::require_closed_subspace(y, a);
  RegularParts r;
  SymbolicSet cl = intersect(a.closure(), y);
  r.interior = subtract(y, subtract(y, a).closure());
  r.regularization = subtract(y, subtract(y, cl).closure());
  r.exterior = subtract(y, cl);
  r.boundary = intersect(cl, subtract(y, a).closure());
  r.is_regular_open = (a == r.regularization);
  return r;
}

inline RegularParts regular_ops(const SymbolicSet& a) { return regular_ops(SymbolicSet::full(a.space()), a); }

inline bool is_regular_open(const SymbolicSet& a) { return regular_ops(a).is_regular_open; }

inline SymbolicSet exterior(const SymbolicSet& a) { return a.closure().complement(); }

inline SymbolicSet boundary(const SymbolicSet& a) {
  return intersect(a.closure(), a.complement().closure());
}

/// Regular open in X with boundary inside the kernel (given as a subset of X).
inline bool is_half_clopen(const SymbolicSet& a, const SymbolicSet& kernel) {
  return is_regular_open(a) && is_subset(boundary(a), kernel);
}

inline bool is_clopen(const SymbolicSet& a) { return boundary(a).is_empty(); }

enum class Relation { equal, a_subset_b, b_subset_a, disjoint, incomparable };

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::a_subset_b: return "A_subset_B";
    case Relation::b_subset_a: return "B_subset_A";
    case Relation::disjoint: return "disjoint";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

struct Comparison {
  Relation relation;
  bool a_empty;
  bool b_empty;
};

inline Comparison compare(const SymbolicSet& a, const SymbolicSet& b) {
  if (!a.same_ambient(b)) throw ambient_mismatch();
  Comparison c{Relation::incomparable, a.is_empty(), b.is_empty()};
  if (a == b) c.relation = Relation::equal;
  else if (is_subset(a, b)) c.relation = Relation::a_subset_b;
  else if (is_subset(b, a)) c.relation = Relation::b_subset_a;
  else if (are_disjoint(a, b)) c.relation = Relation::disjoint;
  return c;
}

/// A finite set of points of X such that every given set is constant on the
/// region each point represents: all breakpoints, midpoints between
/// consecutive breakpoints, isolated points, sequence members up to the
/// largest tail threshold (and at least `min_members`), and limits in X.
inline std::vector<Rational> witness_points(const SpacePtr& space, const std::vector<const SymbolicSet*>& sets,
                                            IndexSet::index_type min_members = 1) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < space->intervals().size(); ++i) {
    std::set<Rational> cuts{space->intervals()[i].lo, space->intervals()[i].hi};
    for (const auto* s : sets) {
      const auto& c = s->traces()[i].cuts();
      cuts.insert(c.begin(), c.end());
    }
    for (std::size_t s = 0; s < space->sequences().size(); ++s) {
      const auto& home = space->limit_location(s);
      if (home && home->kind == Location::Kind::interval && home->primitive == i) {
        cuts.insert(space->sequences()[s].limit);
      }
    }
    const Rational* prev = nullptr;
    for (const auto& c : cuts) {
      if (prev) out.push_back(midpoint(*prev, c));
      out.push_back(c);
      prev = &c;
    }
  }
  for (const auto& p : space->points()) out.push_back(p.at);
  for (std::size_t s = 0; s < space->sequences().size(); ++s) {
    IndexSet::index_type top = min_members;
    for (const auto* set : sets) top = std::max(top, set->tails()[s].threshold());
    for (IndexSet::index_type k = 1; k <= top; ++k) out.push_back(space->sequences()[s].member(k));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Some point of a nonempty set, taken from its witness grid.
inline std::optional<Rational> some_point(const SymbolicSet& a) {
  for (const auto& p : witness_points(a.space(), {&a})) {
    if (a.contains(p)) return p;
  }
  return std::nullopt;
}

/// Distance from x to a nonempty set (an infimum; may be unattained).
inline std::optional<Rational> distance(const Rational& x, const SymbolicSet& a) {
  std::optional<Rational> best;
  auto consider = [&](const Rational& d) {
    if (!best || d < *best) best = d;
  };
  for (const auto& t : a.traces()) {
    for (const auto& p : t.pieces()) {
      if (x < p.lo) consider(p.lo - x);
      else if (p.hi < x) consider(x - p.hi);
      else consider(Rational(0));
    }
  }
  const auto& sp = *a.space();
  for (std::size_t i = 0; i < a.points().size(); ++i) {
    if (a.points()[i]) consider((sp.points()[i].at - x).abs());
  }
  for (std::size_t i = 0; i < a.tails().size(); ++i) {
    const auto& seq = sp.sequences()[i];
    for (auto k : a.tails()[i].members_below_threshold()) consider((seq.member(k) - x).abs());
    if (a.tails()[i].is_infinite()) {
      // Members from the threshold on approach the limit monotonically; once
      // a member is closer to the limit than x is, later ones only recede
      // from x towards |limit - x|.
      Rational gap = (seq.limit - x).abs();
      consider(gap);
      if (gap.is_zero()) continue;
      for (auto k = a.tails()[i].threshold();; ++k) {
        Rational m = seq.member(k);
        consider((m - x).abs());
        if ((m - seq.limit).abs() < gap) break;
      }
    }
  }
  return best;
}

}  // namespace dyadic

#endif  // DYADIC_SYMBOLIC_SET_HPP
