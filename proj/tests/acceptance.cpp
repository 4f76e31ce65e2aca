// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace dyadic;
using namespace testing_support;

namespace {

constexpr std::size_t kLevels = 4;
constexpr std::size_t kProperDepth = 6;
constexpr std::size_t kIndependentDepth = 4;
constexpr double kMaxSecondsPerSpace = 10.0;
constexpr int kExtensionInstances = 200;
constexpr std::size_t kCodingProbes = 100;
constexpr int kAlgebraSets = 1000;
constexpr std::uint64_t kSeed = 20240601;

struct Tally {
  std::size_t checks = 0;
  std::size_t failed_checks = 0;
  bool failed = false;
  std::vector<std::string> failures;  // the first few

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    failed = true;
    ++failed_checks;
    if (failures.size() < 8) failures.push_back(what);
  }
};

void report(int id, const std::string& title, const Tally& t, const std::string& summary) {
  std::cout << "criterion " << id << " [" << title << "]: " << (t.failed ? "FAIL" : "PASS") << " (" << t.checks
            << " checks, " << t.failed_checks << " failed; " << summary << ")\n";
  for (const auto& f : t.failures) std::cout << "    " << f << "\n";
}

void run_guarded(Tally& t, const std::string& label, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    t.expect(false, label + ": " + e.what());
  }
}

BuildOptions options(DegreeMode mode) {
  BuildOptions o;
  o.levels = kLevels;
  o.mode = mode;
  o.check_depth = kProperDepth;
  return o;
}

// All words over indices {0..length-1}, including partial ones.
std::vector<TernaryWord> all_words(std::size_t length) {
  std::vector<TernaryWord> out{TernaryWord{}};
  for (std::size_t n = 0; n < length; ++n) {
    std::vector<TernaryWord> next;
    for (const auto& w : out) {
      next.push_back(w);
      for (unsigned d = 0; d < 2; ++d) {
        auto v = w;
        v.set(n, d);
        next.push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

// Cut points of the given sets and the midpoints between consecutive ones.
std::vector<Rational> endpoint_probes(const std::vector<const SymbolicSet*>& sets) {
  std::vector<Rational> cuts;
  for (const auto* s : sets) {
    for (const auto& t : s->traces()) cuts.insert(cuts.end(), t.cuts().begin(), t.cuts().end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rational> out = cuts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back(midpoint(cuts[i], cuts[i + 1]));
  return out;
}

// x ∈ S(σ) ⊆ target for some word over the first `length` indices.
bool some_base_set_fits(const DyadicSubbase& sub, std::size_t length, const Rational& x, const SymbolicSet& target) {
  for (const auto& w : all_words(length)) {
    auto s = sigma_sets(sub, w).open;
    if (s.contains(x) && is_subset(s, target)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

bool criterion_pipeline() {
  Tally t;
  double slowest = 0;
  std::ostringstream words;
  for (const auto& [name, space] : corpus()) {
    run_guarded(t, name, [&] {
      auto start = std::chrono::steady_clock::now();
      auto r = build_proper_subbase(space, options(DegreeMode::unconstrained));
      auto kernel = kernel_set(space);
      for (const auto& p : r.subbase.pairs()) {
        for (unsigned d = 0; d < 2; ++d) {
          const auto& s = p.side(d);
          if (is_clopen(s)) continue;
          t.expect(is_regular_open(s) && is_subset(boundary(s), kernel), name + ": " + s.str() + " is not half-clopen");
        }
      }
      if (!r.kernel.kernel->is_empty()) {
        auto restricted = restrict_subbase(r.subbase, r.kernel.kernel, r.kernel_levels);
        t.expect(r.kernel_subbase && restricted.size() == r.kernel_subbase->size(), name + ": restriction size");
        for (std::size_t n = 0; r.kernel_subbase && n < restricted.size(); ++n) {
          t.expect(restricted[n] == (*r.kernel_subbase)[n], name + ": restriction differs at " + std::to_string(n));
        }
        auto ind = check_independent(restricted, kIndependentDepth);
        t.expect(ind.passed && ind.depth == kIndependentDepth, name + ": independent@4 on the kernel");
      }
      auto proper = check_proper(r.subbase, kProperDepth);
      t.expect(proper.passed, name + ": proper@" + std::to_string(proper.depth));
      words << name << " " << proper.words_checked << "w/" << r.subbase.size() << "p ";
      double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      slowest = std::max(slowest, seconds);
      t.expect(seconds < kMaxSecondsPerSpace, name + ": took " + std::to_string(seconds) + " s");
    });
  }
  words << "slowest " << slowest << " s";
  report(1, "pipeline", t, words.str());
  return !t.failed;
}

bool criterion_degree() {
  Tally t;
  std::ostringstream sups;
  for (const auto& [name, space] : corpus()) {
    run_guarded(t, name, [&] {
      auto r = build_proper_subbase(space, options(DegreeMode::match_dim));
      std::size_t expected = r.kernel.kernel->is_empty() ? 0 : 1;
      auto d = degree_report(r.subbase, r.subbase.size(), sample_points(space, 64, kSeed), expected);
      t.expect(d.passed && d.degree_sup == expected, name + ": sup " + std::to_string(d.degree_sup.value_or(99)));
      t.expect(d.boundaries_disjoint.value_or(false), name + ": boundaries overlap");
      sups << name << "=" << d.degree_sup.value_or(99) << " ";
    });
  }
  report(2, "degree", t, sups.str());
  return !t.failed;
}

bool criterion_conditions() {
  Tally t;
  std::size_t levels_checked = 0;
  for (const auto& [name, space] : corpus()) {
    run_guarded(t, name, [&] {
      auto r = build_proper_subbase(space, options(DegreeMode::match_dim));
      if (!r.kernel_subbase) return;
      const auto& ks = *r.kernel_subbase;
      auto kspace = ks.space();
      for (std::size_t n = 0; n < r.traces.size(); ++n) {
        const auto& trace = r.traces[n];
        const auto& seed = r.seeds.entries[n];
        std::string at = name + " level " + std::to_string(n);
        t.expect(ks[n].one == exterior(ks[n].zero), at + ": exterior");
        for (std::size_t bits = 0; bits < (std::size_t{1} << (n + 1)); ++bits) {
          auto w = TernaryWord::binary(n + 1, bits);
          auto s = sigma_sets(ks, w);
          t.expect(s.open.closure() == s.closed, at + ": proper at " + w.render());
          t.expect(!s.open.is_empty(), at + ": nonempty at " + w.render());
        }
        std::vector<const SymbolicSet*> sets{&seed.u0, &seed.u1};
        for (std::size_t k = 0; k <= n; ++k) sets.push_back(&ks[k].zero);
        for (const auto& x : endpoint_probes(sets)) {
          if (!seed.u0.contains(x)) continue;
          t.expect(some_base_set_fits(ks, n + 1, x, seed.u1), at + ": refines at " + x.str());
          t.expect(some_base_set_fits(r.subbase, n + 1, x, seed.u1_star), at + ": lifted refines at " + x.str());
        }
        const auto& lifted = r.subbase[n];
        t.expect(lifted.one == exterior(lifted.zero), at + ": lifted exterior");
        for (unsigned d = 0; d < 2; ++d) {
          t.expect(restrict_to_kernel(lifted.side(d), kspace) == ks[n].side(d), at + ": lifted trace");
        }
        t.expect(trace.lifted.has_value() && *trace.lifted == lifted, at + ": trace");
        ++levels_checked;
      }
    });
  }
  report(3, "level conditions", t, std::to_string(levels_checked) + " levels");
  return !t.failed;
}

bool criterion_negative_controls() {
  Tally t;
  run_guarded(t, "fixture", [&] {
    auto loaded = load_subbase(std::string(DATA_DIR) + "/subbases/bad_x1.json");
    auto expected = TernaryWord::parse("00");
    for (auto r : {check_proper(loaded.subbase, 2), check_independent(loaded.subbase, 2)}) {
      t.expect(!r.passed, std::string(property_name(r.property)) + " accepted the bad fixture");
      t.expect(!r.counterexamples.empty() && r.counterexamples.front().word == expected,
               std::string(property_name(r.property)) + ": first counterexample is not 00");
    }
  });
  run_guarded(t, "make_pair", [&] {
    auto s = x1();
    try {
      make_pair(iv(s, "(0,1/2)"));
      t.expect(false, "make_pair accepted (0,1/2)");
    } catch (const not_regular_open& e) {
      t.expect(e.hint() == iv(s, "[0,1/2)"), "hint " + e.hint().str());
    }
  });
  report(4, "negative controls", t, "bad fixture and make_pair hint");
  return !t.failed;
}

bool criterion_extensions() {
  Tally t;
  SetGen gen(kSeed);
  auto spaces = corpus();
  int separations = 0;
  int extensions = 0;
  for (int i = 0; separations < kExtensionInstances; ++i) {
    const auto& [name, space] = spaces[static_cast<std::size_t>(i) % spaces.size()];
    auto y = gen.set(space).closure();
    auto u0 = interior_in(y, intersect(gen.set(space), y));
    auto u1 = interior_in(y, subtract(intersect(gen.set(space), y), closure_in(y, u0)));
    run_guarded(t, name + " separate", [&] {
      auto v = separate_open_pair(y, u0, u1);
      Oracle o(space, {&y, &u0, &u1, &v.first, &v.second});
      auto in0 = Oracle::member(v.first);
      auto in1 = Oracle::member(v.second);
      for (const auto& x : o.points()) {
        bool ok = v.first.contains(x) == o.interior(in0, x) && v.second.contains(x) == o.interior(in1, x);
        if (y.contains(x)) {
          ok = ok && v.first.contains(x) == u0.contains(x) && v.second.contains(x) == u1.contains(x);
        } else {
          ok = ok && !(o.closure(in0, x) && o.closure(in1, x));
        }
        t.expect(ok, name + " separate at " + x.str());
      }
    });
    ++separations;
  }
  for (int i = 0; extensions < kExtensionInstances; ++i) {
    const auto& [name, space] = spaces[static_cast<std::size_t>(i) % spaces.size()];
    auto kspace = cb_kernel(space).kernel;
    auto kernel = kernel_set(space);
    auto u = embed_kernel_set(regular_ops(restrict_to_kernel(gen.set(space), kspace)).regularization, space);
    auto w = gen.coin() ? SymbolicSet::full(space) : gen.set(space).closure().complement();
    if (!is_subset(closure_in(kernel, u), w)) continue;
    run_guarded(t, name + " extend", [&] {
      auto v = half_clopen_extension(u, w);
      Oracle o(space, {&u, &w, &v, &kernel});
      auto in_v = Oracle::member(v);
      Oracle::Pred closed = [&](const Rational& x) { return o.closure(in_v, x, true); };
      for (const auto& x : o.points()) {
        bool ok = v.contains(x) == o.interior(closed, x);
        if (o.closure(in_v, x) && !o.interior(in_v, x)) ok = ok && kernel.contains(x);
        if (kernel.contains(x)) ok = ok && v.contains(x) == u.contains(x);
        if (v.contains(x)) ok = ok && w.contains(x);
        t.expect(ok, name + " extend at " + x.str());
      }
    });
    ++extensions;
  }
  report(5, "extension oracles", t,
         std::to_string(separations) + " separations, " + std::to_string(extensions) + " extensions");
  return !t.failed;
}

bool criterion_coding() {
  Tally t;
  for (const auto& [name, space] : corpus()) {
    run_guarded(t, name, [&] {
      auto r = build_proper_subbase(space, options(DegreeMode::match_dim));
      auto probes = sample_points(space, kCodingProbes, kSeed);
      std::size_t top = std::min(kLevels, r.subbase.size());
      for (std::size_t len = 1; len <= top; ++len) {
        auto degrees = degree_report(r.subbase, len, probes);
        for (std::size_t i = 0; i < probes.size(); ++i) {
          auto c = encode_point(r.subbase, probes[i], len);
          t.expect(decode_word(r.subbase, c.word).contains(probes[i]), name + ": decode misses " + probes[i].str());
          t.expect(c.bottom_count() == degrees.probe_degrees[i].degree, name + ": ⊥-count at " + probes[i].str());
        }
      }
    });
  }
  report(6, "coding roundtrip", t, std::to_string(kCodingProbes) + " probes per space");
  return !t.failed;
}

bool criterion_algebra() {
  Tally t;
  SetGen gen(kSeed + 1);
  auto spaces = corpus();
  for (int i = 0; i < kAlgebraSets; ++i) {
    const auto& [name, space] = spaces[static_cast<std::size_t>(i) % spaces.size()];
    auto a = gen.set(space);
    run_guarded(t, name, [&] {
      auto parts = regular_ops(a);
      auto cl = a.closure();
      Oracle o(space, {&a, &cl, &parts.interior, &parts.regularization, &parts.boundary});
      auto in_a = Oracle::member(a);
      Oracle::Pred closed = [&](const Rational& x) { return o.closure(in_a, x, true); };
      for (const auto& x : o.points()) {
        bool c = o.closure(in_a, x);
        bool in = o.interior(in_a, x);
        bool ok = cl.contains(x) == c && parts.interior.contains(x) == in &&
                  parts.regularization.contains(x) == o.interior(closed, x) && parts.boundary.contains(x) == (c && !in);
        t.expect(ok, name + " " + a.str() + " at " + x.str());
      }
    });
  }
  report(7, "algebra oracle", t, std::to_string(kAlgebraSets) + " sets");
  return !t.failed;
}

}  // namespace

int main() {
  bool ok = true;
  ok = criterion_pipeline() && ok;
  ok = criterion_degree() && ok;
  ok = criterion_conditions() && ok;
  ok = criterion_negative_controls() && ok;
  ok = criterion_extensions() && ok;
  ok = criterion_coding() && ok;
  ok = criterion_algebra() && ok;
  std::cout << (ok ? "all criteria PASS" : "some criteria FAIL") << "\n";
  return ok ? 0 : 1;
}
