#ifndef DYADIC_SPACE_HPP
#define DYADIC_SPACE_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dyadic/error.hpp"
#include "dyadic/index_set.hpp"
#include "dyadic/interval_trace.hpp"
#include "dyadic/rational.hpp"

namespace dyadic {

/// The closed segment [lo, hi], lo < hi.
struct IntervalPrimitive {
  Rational lo;
  Rational hi;
  friend bool operator==(const IntervalPrimitive&, const IntervalPrimitive&) = default;
};

struct PointPrimitive {
  Rational at;
  friend bool operator==(const PointPrimitive&, const PointPrimitive&) = default;
};

/// The point set {limit + offset * 2^-k : k >= 1}. The limit itself is not a
/// member; `open_limit` marks a limit that lies outside the space.
struct SequencePrimitive {
  Rational limit;
  Rational offset;
  bool open_limit = false;

  Rational member(IndexSet::index_type k) const {
    return limit + offset * Rational::inverse_power_of_two(k);
  }

  /// The k with member(k) == x, if any.
  std::optional<IndexSet::index_type> index_of(const Rational& x) const {
    Rational t = (x - limit) / offset;
    long long m = 0;
    if (!is_power_of_two(t, &m) || m > -1) return std::nullopt;
    return static_cast<IndexSet::index_type>(-m);
  }

  /// Indices of the members lying in `piece`. Members are monotone in k, so
  /// the result is a range, unbounded above when the piece reaches the limit
  /// from the offset's side.
  IndexSet hits(const Piece& piece) const {
    if (piece.is_empty()) return IndexSet::none();
    // Map the piece to the scale parameter t = 2^-k.
    Rational a = (piece.lo - limit) / offset;
    Rational b = (piece.hi - limit) / offset;
    bool a_closed = piece.lo_closed;
    bool b_closed = piece.hi_closed;
    if (offset.sign() < 0) {
      std::swap(a, b);
      std::swap(a_closed, b_closed);
    }
    auto below_top = [&](const Rational& t) { return b_closed ? t <= b : t < b; };
    auto above_bottom = [&](const Rational& t) { return a_closed ? a <= t : a < t; };
    if (b.sign() <= 0) return IndexSet::none();
    IndexSet::index_type k = 1;
    while (!below_top(Rational::inverse_power_of_two(k))) ++k;
    if (a.sign() <= 0) return IndexSet::from(k);
    IndexSet::index_type last = k;
    if (!above_bottom(Rational::inverse_power_of_two(k))) return IndexSet::none();
    while (above_bottom(Rational::inverse_power_of_two(last + 1))) ++last;
    return IndexSet::range(k, last);
  }

  std::string str() const {
    std::string sign = offset.sign() < 0 ? "-" : "+";
    return "{" + limit.str() + sign + offset.abs().str() + "*2^-k : k>=1}";
  }

  friend bool operator==(const SequencePrimitive&, const SequencePrimitive&) = default;
};

using Primitive = std::variant<IntervalPrimitive, PointPrimitive, SequencePrimitive>;

inline std::string primitive_str(const Primitive& p) {
  return std::visit(
      [](const auto& q) -> std::string {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, IntervalPrimitive>) {
          return "[" + q.lo.str() + "," + q.hi.str() + "]";
        } else if constexpr (std::is_same_v<T, PointPrimitive>) {
          return q.at.str();
        } else {
          return q.str();
        }
      },
      p);
}

/// Where a point of ℝ sits relative to a space's primitives.
struct Location {
  enum class Kind { interval, point, sequence };
  Kind kind;
  std::size_t primitive;               // index within that kind's list
  IndexSet::index_type member = 0;     // sequence index k, for Kind::sequence
  friend bool operator==(const Location&, const Location&) = default;
};

class SpaceDescription;
using SpacePtr = std::shared_ptr<const SpaceDescription>;

/// A separable metric subspace of ℝ given by finitely many symbolic primitives.
///
/// Primitives are validated and stored in a normal order: intervals and
/// isolated points by position, sequences by (limit, offset). Two
/// descriptions of the same primitive list compare equal.
class SpaceDescription {
 public:
  static SpacePtr make(const std::vector<Primitive>& primitives) {
    return std::make_shared<const SpaceDescription>(SpaceDescription(primitives));
  }

  const std::vector<IntervalPrimitive>& intervals() const { return intervals_; }
  const std::vector<PointPrimitive>& points() const { return points_; }
  const std::vector<SequencePrimitive>& sequences() const { return sequences_; }

  /// Where each sequence's limit lives (nullopt for open limits).
  const std::optional<Location>& limit_location(std::size_t seq) const { return limit_homes_[seq]; }

  bool is_empty() const { return intervals_.empty() && points_.empty() && sequences_.empty(); }

  std::vector<Primitive> primitives() const {
    std::vector<Primitive> out;
    for (const auto& i : intervals_) out.emplace_back(i);
    for (const auto& p : points_) out.emplace_back(p);
    for (const auto& s : sequences_) out.emplace_back(s);
    return out;
  }

  std::optional<Location> locate(const Rational& x) const {
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
      if (intervals_[i].lo <= x && x <= intervals_[i].hi) return Location{Location::Kind::interval, i};
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].at == x) return Location{Location::Kind::point, i};
    }
    for (std::size_t i = 0; i < sequences_.size(); ++i) {
      if (auto k = sequences_[i].index_of(x)) return Location{Location::Kind::sequence, i, *k};
    }
    return std::nullopt;
  }

  bool contains(const Rational& x) const { return locate(x).has_value(); }

  /// Sequences converging to the isolated point `point_index`.
  std::vector<std::size_t> sequences_converging_to_point(std::size_t point_index) const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < sequences_.size(); ++s) {
      const auto& home = limit_homes_[s];
      if (home && home->kind == Location::Kind::point && home->primitive == point_index) out.push_back(s);
    }
    return out;
  }

  friend bool operator==(const SpaceDescription& a, const SpaceDescription& b) {
    return a.intervals_ == b.intervals_ && a.points_ == b.points_ && a.sequences_ == b.sequences_;
  }

 private:
  explicit SpaceDescription(const std::vector<Primitive>& primitives) {
    for (const auto& p : primitives) {
      std::visit(
          [this](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, IntervalPrimitive>) intervals_.push_back(q);
            else if constexpr (std::is_same_v<T, PointPrimitive>) points_.push_back(q);
            else sequences_.push_back(q);
          },
          p);
    }
    std::sort(intervals_.begin(), intervals_.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
    std::sort(points_.begin(), points_.end(), [](auto& a, auto& b) { return a.at < b.at; });
    std::sort(sequences_.begin(), sequences_.end(), [](auto& a, auto& b) {
      return a.limit != b.limit ? a.limit < b.limit : a.offset < b.offset;
    });
    validate();
  }

  void validate() {
    for (const auto& i : intervals_) {
      if (!(i.lo < i.hi)) {
        throw input_error("interval [" + i.lo.str() + "," + i.hi.str() + "] needs lo < hi");
      }
    }
    for (std::size_t i = 1; i < intervals_.size(); ++i) {
      if (!(intervals_[i - 1].hi < intervals_[i].lo)) {
        throw input_error("intervals " + primitive_str(intervals_[i - 1]) + " and " +
                          primitive_str(intervals_[i]) + " overlap");
      }
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (i > 0 && points_[i - 1].at == points_[i].at) {
        throw input_error("duplicate point " + points_[i].at.str());
      }
      for (const auto& iv : intervals_) {
        if (iv.lo <= points_[i].at && points_[i].at <= iv.hi) {
          throw input_error("point " + points_[i].at.str() + " lies in interval " + primitive_str(iv));
        }
      }
    }
    for (std::size_t s = 0; s < sequences_.size(); ++s) {
      const auto& seq = sequences_[s];
      if (seq.offset.is_zero()) throw input_error("sequence with zero offset");
      for (const auto& iv : intervals_) {
        if (!seq.hits(Piece::closed(iv.lo, iv.hi)).is_empty()) {
          throw input_error("sequence " + seq.str() + " meets interval " + primitive_str(iv));
        }
      }
      for (const auto& p : points_) {
        if (seq.index_of(p.at)) {
          throw input_error("point " + p.at.str() + " is a member of sequence " + seq.str());
        }
      }
      for (std::size_t t = 0; t < s; ++t) check_disjoint(sequences_[t], seq);
    }
    for (std::size_t s = 0; s < sequences_.size(); ++s) {
      const auto& seq = sequences_[s];
      std::optional<Location> home;
      for (std::size_t i = 0; i < intervals_.size() && !home; ++i) {
        if (intervals_[i].lo <= seq.limit && seq.limit <= intervals_[i].hi) {
          home = Location{Location::Kind::interval, i};
        }
      }
      for (std::size_t i = 0; i < points_.size() && !home; ++i) {
        if (points_[i].at == seq.limit) home = Location{Location::Kind::point, i};
      }
      for (std::size_t t = 0; t < sequences_.size() && !home; ++t) {
        if (sequences_[t].index_of(seq.limit)) {
          throw input_error("limit of " + seq.str() + " is a member of " + sequences_[t].str() +
                            "; Cantor-Bendixson rank above 2 is not supported");
        }
      }
      if (home && seq.open_limit) {
        throw input_error("sequence " + seq.str() + " is flagged open_limit but its limit lies in the space");
      }
      if (!home && !seq.open_limit) {
        throw input_error("limit " + seq.limit.str() + " of " + seq.str() +
                          " is not in the space; flag the sequence open_limit");
      }
      limit_homes_.push_back(home);
    }
  }

  static void check_disjoint(const SequencePrimitive& a, const SequencePrimitive& b) {
    auto clash = [&] {
      return input_error("sequences " + a.str() + " and " + b.str() + " share members");
    };
    if (a.limit == b.limit) {
      if (a.offset.sign() != b.offset.sign()) return;
      if (is_power_of_two(a.offset / b.offset)) throw clash();
      return;
    }
    // Past these indices each sequence stays within half the limit gap of its
    // own limit, so only finitely many members need an explicit test.
    Rational half_gap = (a.limit - b.limit).abs() / Rational(2);
    auto settled = [&](const SequencePrimitive& s) {
      IndexSet::index_type k = 1;
      while (!(s.offset.abs() * Rational::inverse_power_of_two(k) < half_gap)) ++k;
      return k;
    };
    for (IndexSet::index_type k = 1, end = settled(a); k < end; ++k) {
      if (b.index_of(a.member(k))) throw clash();
    }
    for (IndexSet::index_type k = 1, end = settled(b); k < end; ++k) {
      if (a.index_of(b.member(k))) throw clash();
    }
  }

  std::vector<IntervalPrimitive> intervals_;
  std::vector<PointPrimitive> points_;
  std::vector<SequencePrimitive> sequences_;
  std::vector<std::optional<Location>> limit_homes_;
};

}  // namespace dyadic

#endif  // DYADIC_SPACE_HPP
