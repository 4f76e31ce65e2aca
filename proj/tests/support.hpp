#ifndef DYADIC_TESTS_SUPPORT_HPP
#define DYADIC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dyadic/dyadic.hpp"

namespace testing_support {

using namespace dyadic;

inline SpacePtr x1() { return SpaceDescription::make({IntervalPrimitive{0, 1}}); }
inline SpacePtr x2() { return SpaceDescription::make({IntervalPrimitive{0, 1}, PointPrimitive{2}, PointPrimitive{3}}); }
inline SpacePtr x3() { return SpaceDescription::make({IntervalPrimitive{0, 1}, SequencePrimitive{1, 1, false}}); }
inline SpacePtr x4() { return SpaceDescription::make({PointPrimitive{0}, SequencePrimitive{0, 1, false}}); }
inline SpacePtr x5() {
  return SpaceDescription::make({IntervalPrimitive{0, 1}, IntervalPrimitive{2, 3}, PointPrimitive{5}});
}
// Extra shapes: a sequence converging to an isolated point next to the
// kernel, and a sequence whose limit is missing from the space.
inline SpacePtr x6() {
  return SpaceDescription::make(
      {IntervalPrimitive{0, 1}, PointPrimitive{2}, SequencePrimitive{2, Rational(-1, 2), false}});
}
inline SpacePtr x7() {
  return SpaceDescription::make({IntervalPrimitive{0, 1}, SequencePrimitive{3, 1, true}});
}

struct Named {
  std::string name;
  SpacePtr space;
};

inline std::vector<Named> corpus() {
  return {{"X1", x1()}, {"X2", x2()}, {"X3", x3()}, {"X4", x4()}, {"X5", x5()}};
}

inline std::vector<Named> extended_corpus() {
  auto c = corpus();
  c.push_back({"X6", x6()});
  c.push_back({"X7", x7()});
  return c;
}

inline SymbolicSet iv(const SpacePtr& s, const std::string& text) { return SymbolicSet::from_piece(s, Piece::parse(text)); }

// ---------------------------------------------------------------------------
// Seeded random sets

class SetGen {
 public:
  explicit SetGen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(int percent = 50) { return uniform(1, 100) <= percent; }

  /// A rational inside [lo, hi] on a grid of step (hi - lo)/den.
  Rational grid(const Rational& lo, const Rational& hi, int den = 12) {
    return lo + (hi - lo) * Rational(uniform(0, den), den);
  }

  /// A union of a few random pieces, points and tail selections.
  SymbolicSet set(const SpacePtr& space) {
    SymbolicSet out = SymbolicSet::empty(space);
    for (const auto& iv : space->intervals()) {
      int pieces = uniform(0, 3);
      for (int i = 0; i < pieces; ++i) {
        Rational a = grid(iv.lo, iv.hi);
        Rational b = grid(iv.lo, iv.hi);
        if (b < a) std::swap(a, b);
        Piece p{a, b, coin(), coin()};
        if (a == b) p = Piece::point(a);
        out = unite(out, SymbolicSet::from_piece(space, p));
      }
    }
    for (const auto& p : space->points()) {
      if (coin()) out = unite(out, SymbolicSet::singleton(space, p.at));
    }
    for (std::size_t s = 0; s < space->sequences().size(); ++s) {
      IndexSet idx = IndexSet::none();
      if (coin()) idx = IndexSet::from(static_cast<IndexSet::index_type>(uniform(1, 8)));
      std::set<IndexSet::index_type> extra;
      for (int i = uniform(0, 3); i > 0; --i) extra.insert(static_cast<IndexSet::index_type>(uniform(1, 10)));
      idx = unite(idx, IndexSet::finite(extra));
      if (coin(20)) idx = idx.complement();
      out = unite(out, SymbolicSet::sequence_members(space, s, idx));
    }
    if (coin(25)) out = out.complement();
    return out;
  }

  /// A random regular open set.
  SymbolicSet regular_open(const SpacePtr& space) { return interior(set(space).closure()); }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Brute-force membership oracle
//
// Every set in play is constant on the open gaps between consecutive
// breakpoints and constant on sequence members past index 40. The oracle
// decides closure and interior at a point from membership at the point, at
// points a tiny step delta to either side inside the same interval, and at
// member 40 of each sequence converging to it.

class Oracle {
 public:
  using Pred = std::function<bool(const Rational&)>;

  Oracle(SpacePtr space, const std::vector<const SymbolicSet*>& sets) : space_(std::move(space)) {
    std::vector<Rational> line;
    for (const auto& iv : space_->intervals()) {
      line.push_back(iv.lo);
      line.push_back(iv.hi);
    }
    for (const auto* s : sets) {
      for (const auto& t : s->traces()) line.insert(line.end(), t.cuts().begin(), t.cuts().end());
    }
    std::sort(line.begin(), line.end());
    line.erase(std::unique(line.begin(), line.end()), line.end());
    delta_ = Rational(1);
    for (std::size_t i = 0; i + 1 < line.size(); ++i) delta_ = min(delta_, (line[i + 1] - line[i]) / Rational(4));
    for (std::size_t i = 0; i < line.size(); ++i) {
      points_.push_back(line[i]);
      if (i + 1 < line.size()) points_.push_back(midpoint(line[i], line[i + 1]));
    }
    for (const auto& p : space_->points()) points_.push_back(p.at);
    for (const auto& s : space_->sequences()) {
      for (IndexSet::index_type k = 1; k <= 40; ++k) points_.push_back(s.member(k));
    }
    points_.erase(std::remove_if(points_.begin(), points_.end(), [&](const Rational& x) { return !space_->contains(x); }),
                  points_.end());
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  const std::vector<Rational>& points() const { return points_; }

  // `fine` shrinks the step so that nested tests stay inside one gap.
  bool closure(const Pred& in, const Rational& x, bool fine = false) const {
    if (in(x)) return true;
    for (const auto& y : neighbours(x, fine)) {
      if (in(y)) return true;
    }
    return false;
  }

  bool interior(const Pred& in, const Rational& x, bool fine = false) const {
    if (!in(x)) return false;
    for (const auto& y : neighbours(x, fine)) {
      if (!in(y)) return false;
    }
    return true;
  }

  static Pred member(const SymbolicSet& a) {
    return [&a](const Rational& x) { return a.contains(x); };
  }

 private:
  std::vector<Rational> neighbours(const Rational& x, bool fine) const {
    std::vector<Rational> out;
    Rational step = fine ? delta_ / Rational(2) : delta_;
    for (const auto& iv : space_->intervals()) {
      if (x < iv.lo || iv.hi < x) continue;
      if (iv.lo <= x - step) out.push_back(x - step);
      if (x + step <= iv.hi) out.push_back(x + step);
    }
    for (const auto& s : space_->sequences()) {
      if (s.limit == x) out.push_back(s.member(fine ? 41 : 40));
    }
    return out;
  }

  SpacePtr space_;
  Rational delta_;
  std::vector<Rational> points_;
};

}  // namespace testing_support

#endif  // DYADIC_TESTS_SUPPORT_HPP
