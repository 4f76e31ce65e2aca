#ifndef DYADIC_CONSTRUCTION_HPP
#define DYADIC_CONSTRUCTION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dyadic/checks.hpp"
#include "dyadic/coding.hpp"
#include "dyadic/kernel.hpp"
#include "dyadic/subbase.hpp"
#include "dyadic/symbolic_set.hpp"

namespace dyadic {

/// Largest number of kernel levels the builder accepts.
inline constexpr std::size_t kLevelLimit = 12;

enum class DegreeMode { unconstrained, match_dim };

// ---------------------------------------------------------------------------
// Separation of disjoint relatively open sets

struct OpenPair {
  SymbolicSet first;
  SymbolicSet second;
};

/// Postconditions of separate_open_pair; returns a description of the first
/// violated one.
inline std::optional<std::string> separation_failure(const SymbolicSet& y, const SymbolicSet& u0,
                                                     const SymbolicSet& u1, const OpenPair& v) {
  if (!is_open(v.first)) return "V0 = " + v.first.str() + " is not open";
  if (!is_open(v.second)) return "V1 = " + v.second.str() + " is not open";
  if (!(intersect(v.first, y) == u0)) return "V0 ∩ Y = " + intersect(v.first, y).str() + " differs from U0";
  if (!(intersect(v.second, y) == u1)) return "V1 ∩ Y = " + intersect(v.second, y).str() + " differs from U1";
  auto shared = intersect(v.first.closure(), v.second.closure());
  if (!is_subset(shared, y)) return "cl V0 ∩ cl V1 = " + shared.str() + " leaves Y";
  return std::nullopt;
}

/// Extends disjoint open subsets U0, U1 of a closed subspace Y to open sets
/// V0, V1 of X with V_i ∩ Y = U_i and cl V0 ∩ cl V1 ⊆ Y.
///
/// Points of X ∖ Y are attached only where U_i needs them to stay open:
/// a run of X ∖ Y inside an interval primitive next to a point of U_i gets
/// its adjacent third (the whole run when both ends lie in the same U_i), and
/// a sequence converging to a point of U_i contributes its members outside Y.
inline OpenPair separate_open_pair(const SymbolicSet& y, const SymbolicSet& u0, const SymbolicSet& u1) {
  for (const auto* u : {&u0, &u1}) {
    if (!u->same_ambient(y)) throw ambient_mismatch();
    if (!(interior_in(y, *u) == *u)) throw precondition_error("set " + u->str() + " is not open in Y");
  }
  if (!are_disjoint(u0, u1)) throw precondition_error("U0 and U1 intersect");

  const SpacePtr& space = y.space();
  const SymbolicSet outside = y.complement();
  std::array<SymbolicSet, 2> v{u0, u1};
  std::array<const SymbolicSet*, 2> u{&u0, &u1};
  auto owner = [&](const Rational& p) -> int {
    for (int i = 0; i < 2; ++i) {
      if (u[i]->contains(p)) return i;
    }
    return -1;
  };

  for (const auto& trace : outside.traces()) {
    for (const auto& run : trace.pieces()) {
      Rational len = run.hi - run.lo;
      if (len.sign() == 0) continue;
      int left = run.lo_closed ? -1 : owner(run.lo);
      int right = run.hi_closed ? -1 : owner(run.hi);
      if (left >= 0 && left == right) {
        v[left] = unite(v[left], SymbolicSet::from_piece(space, Piece::open(run.lo, run.hi)));
        continue;
      }
      Rational third = len / Rational(3);
      if (left >= 0) v[left] = unite(v[left], SymbolicSet::from_piece(space, Piece::open(run.lo, run.lo + third)));
      if (right >= 0) v[right] = unite(v[right], SymbolicSet::from_piece(space, Piece::open(run.hi - third, run.hi)));
    }
  }
  for (std::size_t s = 0; s < space->sequences().size(); ++s) {
    if (!space->limit_location(s)) continue;
    int i = owner(space->sequences()[s].limit);
    if (i < 0) continue;
    v[i] = unite(v[i], SymbolicSet::sequence_members(space, s, outside.tails()[s]));
  }

  OpenPair out{v[0], v[1]};
  if (auto bad = separation_failure(y, u0, u1, out)) throw validation_error("separate_open_pair", *bad);
  return out;
}

// ---------------------------------------------------------------------------
// Half-clopen extension

/// Postconditions of half_clopen_extension.
inline std::optional<std::string> half_clopen_failure(const SymbolicSet& u, const SymbolicSet& w,
                                                      const SymbolicSet& v) {
  SymbolicSet kernel = kernel_set(v.space());
  if (!is_regular_open(v)) return "V = " + v.str() + " is not regular open";
  if (!is_subset(boundary(v), kernel)) return "bd V = " + boundary(v).str() + " leaves the kernel";
  if (!(intersect(v, kernel) == u)) return "V ∩ X^♯ = " + intersect(v, kernel).str() + " differs from U";
  if (!is_subset(v, w)) return "V is not inside W";
  return std::nullopt;
}

namespace detail {

/// The point of the kernel intervals nearest to y; the lower one on ties.
inline Rational nearest_kernel_point(const SpaceDescription& kernel, const Rational& y) {
  std::optional<Rational> best;
  Rational best_d;
  for (const auto& iv : kernel.intervals()) {
    Rational c = y < iv.lo ? iv.lo : (iv.hi < y ? iv.hi : y);
    Rational d = (y - c).abs();
    if (!best || d < best_d) {
      best = c;
      best_d = d;
    }
  }
  if (!best) throw precondition_error("kernel is empty");
  return *best;
}

/// Sequence members whose nearest kernel point lies in U. Past the last
/// nearest-point switch on the approach side of the limit every member has
/// the same nearest point, so only finitely many are tested one by one.
inline IndexSet routed_members(const SpaceDescription& kernel, const SequencePrimitive& seq, const SymbolicSet& u) {
  std::vector<Rational> ends;
  for (const auto& iv : kernel.intervals()) {
    ends.push_back(iv.lo);
    ends.push_back(iv.hi);
  }
  std::optional<Rational> reach;  // distance from the limit to the next switch point
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    Rational m = midpoint(ends[i], ends[i + 1]);
    Rational d = (m - seq.limit) / seq.offset;
    if (d.sign() > 0 && (!reach || d < *reach)) reach = d;
  }
  IndexSet::index_type settled = 1;
  if (reach) {
    while (!(Rational::inverse_power_of_two(settled) < *reach)) ++settled;
  }
  Rational probe = reach ? seq.limit + seq.offset * *reach / Rational(2) : seq.member(settled);
  IndexSet out = u.contains(nearest_kernel_point(kernel, probe)) ? IndexSet::from(settled) : IndexSet::none();
  std::set<IndexSet::index_type> early;
  for (IndexSet::index_type k = 1; k < settled; ++k) {
    if (u.contains(nearest_kernel_point(kernel, seq.member(k)))) early.insert(k);
  }
  return unite(out, IndexSet::finite(early));
}

}  // namespace detail

/// Scattered points of X attached to U: each point goes with its nearest
/// kernel point, and members of a sequence converging to an isolated point
/// go with that point. U is a subset of X inside the kernel.
inline SymbolicSet kernel_route(const SymbolicSet& u) {
  const SpacePtr& space = u.space();
  SymbolicSet out = SymbolicSet::empty(space);
  auto report = cb_kernel(space);
  const SpaceDescription& kernel = *report.kernel;
  if (kernel.intervals().empty()) return out;
  std::vector<char> points(space->points().size(), 0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    points[p] = u.contains(detail::nearest_kernel_point(kernel, space->points()[p].at));
  }
  std::vector<IndexSet> tails;
  for (std::size_t s = 0; s < space->sequences().size(); ++s) {
    const auto& home = space->limit_location(s);
    if (home && home->kind == Location::Kind::point) {
      tails.push_back(points[home->primitive] ? IndexSet::all() : IndexSet::none());
    } else {
      tails.push_back(detail::routed_members(kernel, space->sequences()[s], u));
    }
  }
  std::vector<IntervalTrace> traces;
  for (const auto& iv : space->intervals()) traces.push_back(IntervalTrace::empty(iv.lo, iv.hi));
  return SymbolicSet::from_parts(space, std::move(traces), std::move(points), std::move(tails));
}

/// Given U regular open in X^♯ and W open in X with cl U ⊆ W, returns a
/// half-clopen V (regular open, bd V ⊆ X^♯) with V ∩ X^♯ = U and V ⊆ W.
///
/// U is passed as a subset of X. The set is (U ∪ H0) ∖ H1: H0 attaches to U
/// the scattered points routed to it by kernel_route, and H1 removes the
/// part of H0 outside W together with the sequences converging to any
/// removed isolated point.
inline SymbolicSet half_clopen_extension(const SymbolicSet& u, const SymbolicSet& w) {
  if (!u.same_ambient(w)) throw ambient_mismatch();
  const SpacePtr& space = u.space();
  SymbolicSet kernel = kernel_set(space);
  if (!is_subset(u, kernel)) throw precondition_error("U = " + u.str() + " is not inside the kernel");
  if (!regular_ops(kernel, u).is_regular_open) {
    throw precondition_error("U = " + u.str() + " is not regular open in the kernel");
  }
  if (!is_open(w)) throw precondition_error("W = " + w.str() + " is not open");
  SymbolicSet cl_u = closure_in(kernel, u);
  if (!is_subset(cl_u, w)) throw precondition_error("cl U = " + cl_u.str() + " is not inside W");

  SymbolicSet h0 = kernel_route(u);
  SymbolicSet scattered = kernel.complement();
  SymbolicSet rest = subtract(scattered, h0);
  if (!(intersect(h0.closure(), scattered) == h0) || !(intersect(rest.closure(), scattered) == rest)) {
    throw validation_error("half_clopen_extension", "H0 = " + h0.str() + " is not clopen in X ∖ X^♯");
  }

  SymbolicSet h1 = subtract(h0, w);
  for (std::size_t p = 0; p < space->points().size(); ++p) {
    if (!h1.points()[p]) continue;
    for (auto s : space->sequences_converging_to_point(p)) {
      h1 = unite(h1, SymbolicSet::sequence_members(space, s, IndexSet::all()));
    }
  }
  if (!is_clopen(h1) || !are_disjoint(h1, kernel)) {
    throw validation_error("half_clopen_extension", "no clopen H1 around " + h1.str());
  }

  SymbolicSet v = subtract(unite(u, h0), h1);
  if (auto bad = half_clopen_failure(u, w, v)) throw validation_error("half_clopen_extension", *bad);
  return v;
}

// ---------------------------------------------------------------------------
// Seeds

struct Seed {
  SymbolicSet u0;       // over the kernel space
  SymbolicSet u1;       // over the kernel space
  SymbolicSet u1_star;  // over X, with u1_star ∩ X^♯ = u1
};

struct SeedFamily {
  std::vector<Seed> entries;
};

namespace detail {

inline SymbolicSet component_window(const SpacePtr& kernel, std::size_t component, const Piece& window) {
  auto s = SymbolicSet::from_piece(kernel, window);
  auto traces = s.traces();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (i != component) traces[i] = IntervalTrace::empty(traces[i].lo(), traces[i].hi());
  }
  return SymbolicSet::from_parts(kernel, std::move(traces), {}, {});
}

}  // namespace detail

/// Dyadic bisection seeds: at scale j = 1, 2, ... every kernel component of
/// length L is cut into 2^j pieces; each piece widened by L·2^-(j+3) gives
/// U_{n,0}, widened by twice that gives U_{n,1}, and U*_{n,1} adds the
/// scattered points routed to U_{n,1} by kernel_route.
inline SeedFamily auto_seeds(const SpacePtr& space, const SpacePtr& kernel, std::size_t levels) {
  detail::require_kernel_of(*kernel, *space);
  SeedFamily family;
  if (kernel->intervals().empty()) return family;
  for (std::uint32_t scale = 1; family.entries.size() < levels; ++scale) {
    Rational parts = Rational(1) / Rational::inverse_power_of_two(scale);
    for (std::size_t c = 0; c < kernel->intervals().size() && family.entries.size() < levels; ++c) {
      const auto& iv = kernel->intervals()[c];
      Rational len = iv.hi - iv.lo;
      Rational step = len / parts;
      Rational margin = len * Rational::inverse_power_of_two(scale + 3);
      for (std::uint64_t i = 0; Rational(static_cast<long long>(i)) < parts && family.entries.size() < levels; ++i) {
        Rational lo = iv.lo + step * Rational(static_cast<long long>(i));
        Rational hi = lo + step;
        Seed seed;
        seed.u0 = detail::component_window(kernel, c, Piece::open(lo - margin, hi + margin));
        seed.u1 = detail::component_window(kernel, c, Piece::open(lo - 2 * margin, hi + 2 * margin));
        auto lifted = embed_kernel_set(seed.u1, space);
        seed.u1_star = unite(lifted, kernel_route(lifted));
        family.entries.push_back(std::move(seed));
      }
    }
  }
  return family;
}

/// Checks the seed invariants; returns the first violation.
inline std::optional<std::string> seed_failure(const Seed& seed, const SpacePtr& space) {
  for (const auto* u : {&seed.u0, &seed.u1}) {
    if (u->is_empty()) return "seed set is empty";
    if (!is_regular_open(*u)) return "seed set " + u->str() + " is not regular open in the kernel";
  }
  if (!is_subset(seed.u0.closure(), seed.u1)) return "cl U0 = " + seed.u0.closure().str() + " is not inside U1";
  if (!is_open(seed.u1_star)) return "U1* = " + seed.u1_star.str() + " is not open in X";
  if (!(restrict_to_kernel(seed.u1_star, seed.u1.space()) == seed.u1)) return "U1* ∩ X^♯ differs from U1";
  (void)space;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Level-by-level construction

struct StepTrace {
  std::size_t level = 0;
  SymbolicSet u0, u1, u1_star;
  SymbolicSet v;
  std::optional<SymbolicSet> v_star;
  std::vector<TernaryWord> a_words;
  std::vector<TernaryWord> b_words;
  std::map<std::string, SymbolicSet> g;
  std::map<std::string, SymbolicSet> g_star;
  ExteriorPair pair;
  std::optional<ExteriorPair> lifted;
  std::vector<std::string> validated;  // condition labels checked at this level
};

struct IndependentBuild {
  DyadicSubbase subbase;
  std::vector<StepTrace> traces;
};

namespace detail {

/// Members of a set that is a finite union of points.
inline std::vector<Rational> finite_members(const SymbolicSet& s) {
  std::vector<Rational> out;
  for (const auto& t : s.traces()) {
    for (const auto& p : t.pieces()) {
      if (!p.is_point()) throw precondition_error("set " + s.str() + " is not finite");
      out.push_back(p.lo);
    }
  }
  for (std::size_t i = 0; i < s.points().size(); ++i) {
    if (s.points()[i]) out.push_back(s.space()->points()[i].at);
  }
  for (std::size_t i = 0; i < s.tails().size(); ++i) {
    if (s.tails()[i].is_infinite()) throw precondition_error("set " + s.str() + " is not finite");
    for (auto k : s.tails()[i].members_below_threshold()) out.push_back(s.space()->sequences()[i].member(k));
  }
  return out;
}

inline SymbolicSet cell(const DyadicSubbase& subbase, const TernaryWord& word) {
  return sigma_sets(subbase, word).open;
}

/// Smallest base set among the first `count` pairs containing x.
inline SymbolicSet smallest_cell(const DyadicSubbase& subbase, std::size_t count, const Rational& x) {
  return decode_word(subbase, encode_point(subbase, x, count).word);
}

/// A regular open V of the kernel with cl U0 ⊆ V ⊆ cl V ⊆ U1 whose boundary
/// avoids `avoid`. Each boundary point p of cl U0 gets a ball of radius
/// t·d(p, K ∖ U1), t from the Farey-like list 1/2, 1/3, 2/3, 1/4, ..., the
/// first whose endpoints miss `avoid`; V is the regularization of the union.
inline SymbolicSet choose_v(const SymbolicSet& u0, const SymbolicSet& u1, const std::set<Rational>& avoid) {
  const SpacePtr& kernel = u0.space();
  SymbolicSet cl = u0.closure();
  SymbolicSet outside = u1.complement();
  SymbolicSet grown = cl;
  for (const auto& p : finite_members(boundary(cl))) {
    Rational reach;
    if (auto d = distance(p, outside)) {
      reach = *d;
    } else {
      auto loc = kernel->locate(p);
      const auto& iv = kernel->intervals()[loc->primitive];
      reach = iv.hi - iv.lo;
    }
    std::optional<Rational> radius;
    for (long long den = 2; !radius && den < 1000; ++den) {
      for (long long num = 1; num < den && !radius; ++num) {
        Rational r = reach * Rational(num, den);
        if (!avoid.count(p - r) && !avoid.count(p + r)) radius = r;
      }
    }
    if (!radius) throw validation_error("V", "no admissible radius around " + p.str());
    grown = unite(grown, SymbolicSet::ball(kernel, p, *radius));
  }
  return interior(grown.closure());
}

inline SymbolicSet middle_third(const SymbolicSet& cell) {
  for (const auto& t : cell.traces()) {
    for (const auto& p : t.pieces()) {
      if (p.is_point()) continue;
      Rational third = (p.hi - p.lo) / Rational(3);
      return SymbolicSet::from_piece(cell.space(), Piece::open(p.lo + third, p.hi - third));
    }
  }
  throw validation_error("G", "cell " + cell.str() + " has no interval component");
}

inline std::vector<Rational> level_probes(const DyadicSubbase& subbase, std::size_t count, const Seed& seed) {
  std::vector<const SymbolicSet*> sets{&seed.u0, &seed.u1};
  for (std::size_t k = 0; k < count; ++k) sets.push_back(&subbase[k].zero);
  std::vector<Rational> out;
  for (const auto& x : witness_points(seed.u0.space(), sets)) {
    if (seed.u0.contains(x)) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// Level checks for a kernel subbase: exterior pair, properness and nonemptiness over all binary words of length n+1, and the
/// seed refinement property on probes of U_{n,0}. Throws validation_error.
inline void validate_kernel_level(const DyadicSubbase& subbase, std::size_t n, const Seed& seed) {
  const auto& pair = subbase[n];
  if (!(pair.one == exterior(pair.zero))) {
    throw validation_error("exterior", "S_{n,1} differs from the exterior of S_{n,0} at level " + std::to_string(n));
  }
  for (std::size_t bits = 0; bits < (std::size_t{1} << (n + 1)); ++bits) {
    auto word = TernaryWord::binary(n + 1, bits);
    auto sets = sigma_sets(subbase, word);
    if (!(sets.open.closure() == sets.closed)) {
      throw validation_error("proper", "closure mismatch for word " + word.render(n + 1));
    }
    if (sets.open.is_empty()) throw validation_error("nonempty", "empty cell for word " + word.render(n + 1));
  }
  for (const auto& x : detail::level_probes(subbase, n + 1, seed)) {
    if (!is_subset(detail::smallest_cell(subbase, n + 1, x), seed.u1)) {
      throw validation_error("refines", "no base set around " + x.str() + " inside U_{n,1} at level " + std::to_string(n));
    }
  }
}

/// Builds an independent subbase of a perfect kernel level by level.
inline IndependentBuild build_independent_subbase(const SpacePtr& kernel, std::size_t levels,
                                                  const SeedFamily& seeds,
                                                  DegreeMode mode = DegreeMode::match_dim) {
  if (kernel->is_empty()) throw precondition_error("kernel is empty");
  if (!(*derivative(*kernel) == *kernel)) throw precondition_error("kernel is not perfect");
  if (levels > kLevelLimit) throw precondition_error("levels above " + std::to_string(kLevelLimit));
  if (seeds.entries.size() < levels) throw precondition_error("not enough seeds for the requested levels");

  IndependentBuild out{DyadicSubbase(kernel), {}};
  SymbolicSet whole = SymbolicSet::full(kernel);
  std::set<Rational> used;  // every boundary point of earlier levels

  for (std::size_t n = 0; n < levels; ++n) {
    const Seed& seed = seeds.entries[n];
    StepTrace trace;
    trace.level = n;
    trace.u0 = seed.u0;
    trace.u1 = seed.u1;
    trace.u1_star = seed.u1_star;
    // The first level takes U_{0,0} itself.
    trace.v = n == 0 ? seed.u0 : detail::choose_v(seed.u0, seed.u1, used);
    SymbolicSet cl_v = trace.v.closure();

    SymbolicSet zero = subtract(trace.v, SymbolicSet::empty(kernel));
    SymbolicSet one = subtract(whole, cl_v);
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
      auto word = TernaryWord::binary(n, bits);
      SymbolicSet c = detail::cell(out.subbase, word);
      bool in_a = is_subset(c, trace.v);
      bool in_b = are_disjoint(c, cl_v);
      if (!in_a && !in_b) continue;
      SymbolicSet g = detail::middle_third(c);
      trace.g.emplace(word.render(n), g);
      if (in_a) {
        trace.a_words.push_back(word);
        zero = subtract(zero, g.closure());
        one = unite(one, g);
      } else {
        trace.b_words.push_back(word);
        zero = unite(zero, g);
        one = subtract(one, g.closure());
      }
    }
    trace.pair = {zero, one};
    out.subbase.push_unchecked(trace.pair);
    validate_kernel_level(out.subbase, n, seed);
    trace.validated = {"exterior", "proper", "nonempty", "refines"};

    auto fresh = detail::finite_members(gap_set(trace.pair));
    if (mode == DegreeMode::match_dim) {
      for (const auto& p : fresh) {
        if (used.count(p)) throw validation_error("degree", "boundary point " + p.str() + " reused at level " + std::to_string(n));
      }
      trace.validated.push_back("degree");
    }
    used.insert(fresh.begin(), fresh.end());
    out.traces.push_back(std::move(trace));
  }
  return out;
}

/// Clopen subsets of X covering the scattered part: singletons of isolated
/// points and of the first `tail_depth` members of every sequence, plus tail
/// sets {members k >= j} (with their limit, when that limit is an isolated
/// point of X) for j <= tail_depth where the limit is not in the kernel.
/// Empty sets, X itself and repeats are skipped.
inline std::vector<SymbolicSet> scattered_clopen_base(const SpacePtr& space, std::size_t tail_depth) {
  std::vector<SymbolicSet> out;
  SymbolicSet kernel = kernel_set(space);
  SymbolicSet whole = SymbolicSet::full(space);
  auto emit = [&](SymbolicSet h) {
    if (h.is_empty() || h == whole) return;
    if (std::find(out.begin(), out.end(), h) != out.end()) return;
    if (!is_clopen(h) || !are_disjoint(h, kernel)) {
      throw validation_error("H", "scattered base set " + h.str() + " is not clopen off the kernel");
    }
    out.push_back(std::move(h));
  };
  auto depth = static_cast<IndexSet::index_type>(tail_depth);
  for (std::size_t p = 0; p < space->points().size(); ++p) {
    const Rational& at = space->points()[p].at;
    auto converging = space->sequences_converging_to_point(p);
    if (converging.empty()) {
      emit(SymbolicSet::singleton(space, at));
      continue;
    }
    for (IndexSet::index_type j = 1; j <= depth; ++j) {
      SymbolicSet h = SymbolicSet::singleton(space, at);
      for (auto s : converging) h = unite(h, SymbolicSet::sequence_members(space, s, IndexSet::from(j)));
      emit(h);
    }
  }
  for (std::size_t s = 0; s < space->sequences().size(); ++s) {
    for (IndexSet::index_type k = 1; k <= depth; ++k) {
      emit(SymbolicSet::sequence_members(space, s, IndexSet::finite({k})));
    }
    if (!space->limit_location(s)) {
      for (IndexSet::index_type j = 1; j <= depth; ++j) {
        emit(SymbolicSet::sequence_members(space, s, IndexSet::from(j)));
      }
    }
  }
  return out;
}

/// Level checks for a lifted pair: exterior pair, trace on the kernel, the
/// refinement property inside U*_{n,1}, and half-clopen members. Throws
/// validation_error.
inline void validate_lift_level(const DyadicSubbase& lifted, std::size_t n, const ExteriorPair& kernel_pair,
                                const Seed& seed) {
  const auto& pair = lifted[n];
  const SpacePtr& kernel_space = kernel_pair.zero.space();
  SymbolicSet kernel = kernel_set(lifted.space());
  if (!(pair.one == exterior(pair.zero))) {
    throw validation_error("lift-exterior", "S*_{n,1} differs from the exterior of S*_{n,0} at level " + std::to_string(n));
  }
  for (unsigned d = 0; d < 2; ++d) {
    if (!(restrict_to_kernel(pair.side(d), kernel_space) == kernel_pair.side(d))) {
      throw validation_error("lift-trace", "S*_{n,i} ∩ X^♯ differs from S_{n,i} at level " + std::to_string(n));
    }
    if (!is_half_clopen(pair.side(d), kernel)) {
      throw validation_error("half-clopen", "S*_{n,i} = " + pair.side(d).str() + " is not half-clopen");
    }
  }
  for (const auto& x : witness_points(kernel_space, {&seed.u0, &seed.u1, &kernel_pair.zero})) {
    if (!seed.u0.contains(x)) continue;
    if (!is_subset(detail::smallest_cell(lifted, n + 1, x), seed.u1_star)) {
      throw validation_error("lift-refines", "no lifted base set around " + x.str() + " inside U*_{n,1}");
    }
  }
}

/// Lifts a kernel subbase built by build_independent_subbase to half-clopen
/// pairs of X and appends the clopen pairs (H, X ∖ H) of the scattered part.
/// Fills the starred fields of `traces`.
inline DyadicSubbase extend_to_proper(const SpacePtr& space, const DyadicSubbase& kernel_subbase,
                                      std::vector<StepTrace>& traces, const SeedFamily& seeds,
                                      std::size_t tail_depth) {
  const SpacePtr& kernel_space = kernel_subbase.space();
  if (kernel_space->is_empty()) throw precondition_error("kernel is empty; use the scattered construction");
  detail::require_kernel_of(*kernel_space, *space);
  if (traces.size() != kernel_subbase.size() || seeds.entries.size() < traces.size()) {
    throw precondition_error("traces and seeds must cover every kernel level");
  }

  DyadicSubbase lifted(space);
  SymbolicSet whole = SymbolicSet::full(space);
  for (std::size_t n = 0; n < traces.size(); ++n) {
    StepTrace& trace = traces[n];
    const Seed& seed = seeds.entries[n];
    SymbolicSet v_star = half_clopen_extension(embed_kernel_set(trace.v, space), seed.u1_star);
    SymbolicSet cl_v_star = v_star.closure();
    trace.v_star = v_star;

    SymbolicSet zero = v_star;
    SymbolicSet one = subtract(whole, cl_v_star);
    auto lift_g = [&](const TernaryWord& word, bool in_a) {
      auto key = word.render(n);
      SymbolicSet cell = detail::cell(lifted, word);
      SymbolicSet room = in_a ? intersect(v_star, cell) : subtract(cell, cl_v_star);
      SymbolicSet g_star = half_clopen_extension(embed_kernel_set(trace.g.at(key), space), room);
      trace.g_star.emplace(key, g_star);
      if (in_a) {
        zero = subtract(zero, g_star.closure());
        one = unite(one, g_star);
      } else {
        zero = unite(zero, g_star);
        one = subtract(one, g_star.closure());
      }
    };
    for (const auto& w : trace.a_words) lift_g(w, true);
    for (const auto& w : trace.b_words) lift_g(w, false);

    trace.lifted = ExteriorPair{zero, one};
    lifted.push_unchecked(*trace.lifted);
    validate_lift_level(lifted, n, kernel_subbase[n], seed);
    for (const char* c : {"lift-exterior", "lift-trace", "lift-refines", "half-clopen"}) trace.validated.push_back(c);
  }
  for (auto& h : scattered_clopen_base(space, tail_depth)) lifted.push(h);
  return lifted;
}

/// The pairs (S ∩ X^♯) of the first `count` members, over the kernel space.
inline DyadicSubbase restrict_subbase(const DyadicSubbase& subbase, const SpacePtr& kernel, std::size_t count) {
  DyadicSubbase out(kernel);
  for (std::size_t n = 0; n < count && n < subbase.size(); ++n) {
    out.push_unchecked({restrict_to_kernel(subbase[n].zero, kernel), restrict_to_kernel(subbase[n].one, kernel)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orchestration

/// Seeded sample of points of X: rationals with denominator `grain` in every
/// interval, every isolated point, and a few early sequence members.
inline std::vector<Rational> sample_points(const SpacePtr& space, std::size_t count, std::uint64_t seed,
                                           long long grain = 1024) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> out;
  std::size_t kinds = space->intervals().size() + space->points().size() + space->sequences().size();
  if (kinds == 0) return out;
  std::uniform_int_distribution<std::size_t> pick(0, kinds - 1);
  std::uniform_int_distribution<long long> frac(0, grain);
  std::uniform_int_distribution<unsigned> member(1, 12);
  while (out.size() < count) {
    std::size_t k = pick(rng);
    if (k < space->intervals().size()) {
      const auto& iv = space->intervals()[k];
      out.push_back(iv.lo + (iv.hi - iv.lo) * Rational(frac(rng), grain));
    } else if ((k -= space->intervals().size()) < space->points().size()) {
      out.push_back(space->points()[k].at);
    } else {
      k -= space->points().size();
      out.push_back(space->sequences()[k].member(member(rng)));
    }
  }
  return out;
}

struct BuildOptions {
  std::size_t levels = 4;
  DegreeMode mode = DegreeMode::unconstrained;
  std::size_t check_depth = 6;
  Rational epsilon = Rational(1);
  std::uint64_t seed = 1;
  std::size_t probe_count = 32;
  std::optional<std::size_t> tail_depth;  // defaults to levels + 2
};

struct ReportBundle {
  CheckReport dyadic{Property::dyadic};
  CheckReport proper{Property::proper};
  std::optional<CheckReport> independent;  // on the kernel restriction
  CheckReport degree{Property::degree};
  CheckReport resolution{Property::resolution};

  bool passed() const {
    return dyadic.passed && proper.passed && (!independent || independent->passed) && degree.passed &&
           resolution.passed;
  }
};

struct BuildResult {
  DyadicSubbase subbase;
  KernelReport kernel;
  std::size_t kernel_levels = 0;  // leading pairs lifted from the kernel
  std::size_t dimension = 0;      // covering dimension of X (0 or 1 here)
  std::optional<DyadicSubbase> kernel_subbase;
  std::vector<StepTrace> traces;
  SeedFamily seeds;
  ReportBundle reports;
};

inline ReportBundle check_bundle(const DyadicSubbase& subbase, const KernelReport& kernel, std::size_t kernel_levels,
                                 std::size_t depth, std::optional<std::size_t> expected_degree,
                                 const Rational& epsilon, const std::vector<Rational>& probes,
                                 std::uint64_t seed) {
  ReportBundle b;
  b.dyadic = check_dyadic(subbase);
  b.proper = check_proper(subbase, depth);
  if (!kernel.kernel->is_empty()) {
    b.independent = check_independent(restrict_subbase(subbase, kernel.kernel, kernel_levels),
                                      std::min(depth, kernel_levels));
  }
  b.degree = degree_report(subbase, subbase.size(), probes, expected_degree);
  b.degree.seed = seed;
  b.resolution = resolution_check(subbase, epsilon, probes);
  b.resolution.seed = seed;
  return b;
}

/// Builds a proper dyadic subbase of X made of half-clopen and clopen sets,
/// whose leading pairs restrict to an independent subbase of X^♯, and runs
/// the full check bundle. In match_dim mode the degree must equal dim X.
inline BuildResult build_proper_subbase(const SpacePtr& space, const BuildOptions& options = {}) {
  if (options.levels > kLevelLimit) throw precondition_error("levels above " + std::to_string(kLevelLimit));
  BuildResult r;
  r.kernel = cb_kernel(space);
  std::size_t tail_depth = options.tail_depth.value_or(options.levels + 2);
  if (r.kernel.kernel->is_empty()) {
    r.subbase = DyadicSubbase(space);
    for (auto& h : scattered_clopen_base(space, tail_depth)) r.subbase.push(h);
    r.dimension = 0;
  } else {
    r.dimension = 1;
    r.seeds = auto_seeds(space, r.kernel.kernel, options.levels);
    for (std::size_t n = 0; n < r.seeds.entries.size(); ++n) {
      if (auto bad = seed_failure(r.seeds.entries[n], space)) throw validation_error("seeds", *bad);
    }
    auto built = build_independent_subbase(r.kernel.kernel, options.levels, r.seeds, options.mode);
    r.traces = std::move(built.traces);
    r.subbase = extend_to_proper(space, built.subbase, r.traces, r.seeds, tail_depth);
    r.kernel_subbase = std::move(built.subbase);
    r.kernel_levels = options.levels;
  }
  std::optional<std::size_t> expected;
  if (options.mode == DegreeMode::match_dim) expected = r.dimension;
  auto probes = sample_points(space, options.probe_count, options.seed);
  r.reports = check_bundle(r.subbase, r.kernel, r.kernel_levels, options.check_depth, expected, options.epsilon,
                           probes, options.seed);
  if (options.mode == DegreeMode::match_dim && !r.reports.degree.passed) {
    throw validation_error("degree", "deg = " + std::to_string(*r.reports.degree.degree_sup) +
                                         " but dim X = " + std::to_string(r.dimension));
  }
  return r;
}

}  // namespace dyadic

#endif  // DYADIC_CONSTRUCTION_HPP
