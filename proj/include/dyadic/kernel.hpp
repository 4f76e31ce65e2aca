#ifndef DYADIC_KERNEL_HPP
#define DYADIC_KERNEL_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "dyadic/space.hpp"
#include "dyadic/symbolic_set.hpp"

namespace dyadic {

/// One derivative step: removes every point isolated in the space.
///
/// Sequence members are always isolated. An isolated point survives only
/// while some sequence still converges to it. Intervals never lose points.
inline SpacePtr derivative(const SpaceDescription& space) {
  std::vector<Primitive> kept;
  for (const auto& iv : space.intervals()) kept.emplace_back(iv);
  for (std::size_t i = 0; i < space.points().size(); ++i) {
    if (!space.sequences_converging_to_point(i).empty()) kept.emplace_back(space.points()[i]);
  }
  return SpaceDescription::make(kept);
}

struct ScatteredEntry {
  Primitive primitive;
  int step;  // derivative step at which it vanished
};

struct KernelReport {
  SpacePtr kernel;
  std::vector<ScatteredEntry> scattered;
  int rank = 0;

  std::string str() const {
    std::string out = "kernel: ";
    if (kernel->is_empty()) {
      out += "∅";
    } else {
      for (std::size_t i = 0; i < kernel->intervals().size(); ++i) {
        if (i) out += " ∪ ";
        out += primitive_str(kernel->intervals()[i]);
      }
    }
    out += "; scattered: ";
    if (scattered.empty()) out += "none";
    for (std::size_t i = 0; i < scattered.size(); ++i) {
      if (i) out += ", ";
      out += primitive_str(scattered[i].primitive) + "@" + std::to_string(scattered[i].step);
    }
    out += "; rank " + std::to_string(rank);
    return out;
  }
};

/// Iterates the Cantor-Bendixson derivative to its fixed point. On this
/// family the perfect kernel is the union of the interval primitives and the
/// fixed point is reached after at most two steps.
inline KernelReport cb_kernel(const SpacePtr& space) {
  KernelReport report;
  SpacePtr current = space;
  int step = 0;
  while (true) {
    SpacePtr next = derivative(*current);
    if (*next == *current) break;
    ++step;
    auto survivors = next->primitives();
    for (const auto& p : current->primitives()) {
      if (std::find(survivors.begin(), survivors.end(), p) == survivors.end()) {
        report.scattered.push_back({p, step});
      }
    }
    current = next;
  }
  report.kernel = current;
  report.rank = step;
  return report;
}

/// X^♯ as a subset of X.
inline SymbolicSet kernel_set(const SpacePtr& space) {
  SymbolicSet full = SymbolicSet::full(space);
  std::vector<IntervalTrace> traces = full.traces();
  return SymbolicSet::from_parts(space, std::move(traces), std::vector<char>(space->points().size(), 0),
                                 std::vector<IndexSet>(space->sequences().size(), IndexSet::none()));
}

namespace detail {
inline void require_kernel_of(const SpaceDescription& kernel, const SpaceDescription& space) {
  if (kernel.intervals() != space.intervals() || !kernel.points().empty() || !kernel.sequences().empty()) {
    throw ambient_mismatch();
  }
}
}  // namespace detail

/// A subset of the kernel space, viewed as a subset of X.
inline SymbolicSet embed_kernel_set(const SymbolicSet& a, const SpacePtr& space) {
  detail::require_kernel_of(*a.space(), *space);
  return SymbolicSet::from_parts(space, a.traces(), std::vector<char>(space->points().size(), 0),
                                 std::vector<IndexSet>(space->sequences().size(), IndexSet::none()));
}

/// A ∩ X^♯, expressed over the kernel space.
inline SymbolicSet restrict_to_kernel(const SymbolicSet& a, const SpacePtr& kernel) {
  detail::require_kernel_of(*kernel, *a.space());
  return SymbolicSet::from_parts(kernel, a.traces(), {}, {});
}

}  // namespace dyadic

#endif  // DYADIC_KERNEL_HPP
