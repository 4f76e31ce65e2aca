#ifndef DYADIC_INTERVAL_TRACE_HPP
#define DYADIC_INTERVAL_TRACE_HPP

#include <algorithm>
#include <cassert>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/error.hpp"
#include "dyadic/rational.hpp"

namespace dyadic {

/// A rational interval with independent endpoint flags. A degenerate piece
/// (lo == hi) is the single point {lo} and has both flags set.
struct Piece {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Piece closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
  static Piece open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
  static Piece point(const Rational& p) { return {p, p, true, true}; }

  bool is_empty() const {
    if (lo < hi) return false;
    return !(lo == hi && lo_closed && hi_closed);
  }
  bool is_point() const { return lo == hi && !is_empty(); }

  bool contains(const Rational& x) const {
    bool above = lo_closed ? lo <= x : lo < x;
    bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }

  std::string str() const {
    if (is_point()) return "{" + lo.str() + "}";
    return std::string(lo_closed ? "[" : "(") + lo.str() + "," + hi.str() + (hi_closed ? "]" : ")");
  }

  /// Parses "[a,b]", "(a,b)", "[a,b)", "(a,b]" or "{p}".
  static Piece parse(std::string_view text) {
    auto bad = [&] { return input_error("malformed interval '" + std::string(text) + "'"); };
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.size() < 3) throw bad();
    if (text.front() == '{' && text.back() == '}') {
      return point(Rational::parse(text.substr(1, text.size() - 2)));
    }
    char open_c = text.front();
    char close_c = text.back();
    if ((open_c != '[' && open_c != '(') || (close_c != ']' && close_c != ')')) throw bad();
    auto body = text.substr(1, text.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw bad();
    Piece p{Rational::parse(body.substr(0, comma)), Rational::parse(body.substr(comma + 1)),
            open_c == '[', close_c == ']'};
    if (p.hi < p.lo) throw input_error("interval with reversed endpoints '" + std::string(text) + "'");
    return p;
  }

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// The trace of a subset of ℝ on one closed interval [lo, hi] of the ambient.
///
/// Stored as breakpoints lo = c_0 < c_1 < ... < c_m = hi with a membership
/// flag for every breakpoint and every open gap (c_i, c_{i+1}). Interior
/// breakpoints whose flag agrees with both neighbouring gaps are dropped, so
/// the representation is canonical: equal sets have equal traces.
class IntervalTrace {
 public:
  IntervalTrace() = default;

  static IntervalTrace empty(const Rational& lo, const Rational& hi) { return uniform(lo, hi, false); }
  static IntervalTrace full(const Rational& lo, const Rational& hi) { return uniform(lo, hi, true); }

  /// piece ∩ [lo, hi].
  static IntervalTrace from_piece(const Rational& lo, const Rational& hi, const Piece& piece) {
    if (piece.is_empty() || piece.hi < lo || hi < piece.lo) return empty(lo, hi);
    std::vector<Rational> cuts{lo};
    if (lo < piece.lo) cuts.push_back(piece.lo);
    if (piece.hi < hi && piece.hi != cuts.back()) cuts.push_back(piece.hi);
    if (cuts.back() != hi) cuts.push_back(hi);
    IntervalTrace t;
    t.cuts_ = cuts;
    for (std::size_t i = 0; i < cuts.size(); ++i) t.at_.push_back(piece.contains(cuts[i]));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      t.gap_.push_back(piece.contains(midpoint(cuts[i], cuts[i + 1])));
    }
    t.normalize();
    return t;
  }

  const Rational& lo() const { return cuts_.front(); }
  const Rational& hi() const { return cuts_.back(); }
  const std::vector<Rational>& cuts() const { return cuts_; }

  bool in_range(const Rational& x) const { return lo() <= x && x <= hi(); }

  bool contains(const Rational& x) const {
    if (!in_range(x)) return false;
    auto it = std::lower_bound(cuts_.begin(), cuts_.end(), x);
    auto i = static_cast<std::size_t>(it - cuts_.begin());
    if (*it == x) return at_[i];
    return gap_[i - 1];
  }

  bool is_empty() const {
    return std::none_of(at_.begin(), at_.end(), [](char c) { return c; }) &&
           std::none_of(gap_.begin(), gap_.end(), [](char c) { return c; });
  }
  bool is_full() const {
    return std::all_of(at_.begin(), at_.end(), [](char c) { return c; }) &&
           std::all_of(gap_.begin(), gap_.end(), [](char c) { return c; });
  }

  template <class Op>
  static IntervalTrace combine(const IntervalTrace& a, const IntervalTrace& b, Op op) {
    assert(a.lo() == b.lo() && a.hi() == b.hi());
    IntervalTrace t;
    std::set_union(a.cuts_.begin(), a.cuts_.end(), b.cuts_.begin(), b.cuts_.end(),
                   std::back_inserter(t.cuts_));
    for (const auto& c : t.cuts_) t.at_.push_back(op(a.contains(c), b.contains(c)));
    for (std::size_t i = 0; i + 1 < t.cuts_.size(); ++i) {
      auto m = midpoint(t.cuts_[i], t.cuts_[i + 1]);
      t.gap_.push_back(op(a.contains(m), b.contains(m)));
    }
    t.normalize();
    return t;
  }

  IntervalTrace complement() const {
    IntervalTrace t = *this;
    for (auto& c : t.at_) c = !c;
    for (auto& c : t.gap_) c = !c;
    return t;
  }

  /// Closure relative to [lo, hi].
  IntervalTrace closure() const {
    IntervalTrace t = *this;
    for (std::size_t i = 0; i < cuts_.size(); ++i) {
      bool left = i > 0 && gap_[i - 1];
      bool right = i < gap_.size() && gap_[i];
      t.at_[i] = at_[i] || left || right;
    }
    t.normalize();
    return t;
  }

  IntervalTrace with_point(const Rational& x) const {
    return combine(*this, from_piece(lo(), hi(), Piece::point(x)), [](bool p, bool q) { return p || q; });
  }

  /// Maximal intervals whose union is the trace, left to right.
  std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    std::size_t atoms = 2 * cuts_.size() - 1;
    auto member = [&](std::size_t atom) { return atom % 2 == 0 ? at_[atom / 2] : gap_[atom / 2]; };
    std::size_t a = 0;
    while (a < atoms) {
      if (!member(a)) { ++a; continue; }
      std::size_t e = a;
      while (e + 1 < atoms && member(e + 1)) ++e;
      Piece p;
      if (a % 2 == 0) { p.lo = cuts_[a / 2]; p.lo_closed = true; }
      else { p.lo = cuts_[a / 2]; p.lo_closed = false; }
      if (e % 2 == 0) { p.hi = cuts_[e / 2]; p.hi_closed = true; }
      else { p.hi = cuts_[e / 2 + 1]; p.hi_closed = false; }
      out.push_back(p);
      a = e + 1;
    }
    return out;
  }

  friend bool operator==(const IntervalTrace&, const IntervalTrace&) = default;

 private:
  static IntervalTrace uniform(const Rational& lo, const Rational& hi, bool v) {
    if (!(lo < hi)) throw precondition_error("interval trace needs lo < hi");
    IntervalTrace t;
    t.cuts_ = {lo, hi};
    t.at_ = {v, v};
    t.gap_ = {v};
    return t;
  }

  void normalize() {
    std::vector<Rational> cuts{cuts_.front()};
    std::vector<char> at{at_.front()};
    std::vector<char> gap;
    for (std::size_t i = 1; i + 1 < cuts_.size(); ++i) {
      // gap_[i-1] has already been folded into the pending gap.
      if (at_[i] == gap_[i - 1] && at_[i] == gap_[i]) continue;
      gap.push_back(gap_[i - 1]);
      cuts.push_back(cuts_[i]);
      at.push_back(at_[i]);
    }
    gap.push_back(gap_.back());
    cuts.push_back(cuts_.back());
    at.push_back(at_.back());
    cuts_ = std::move(cuts);
    at_ = std::move(at);
    gap_ = std::move(gap);
  }

  std::vector<Rational> cuts_;
  std::vector<char> at_;
  std::vector<char> gap_;
};

}  // namespace dyadic

#endif  // DYADIC_INTERVAL_TRACE_HPP
