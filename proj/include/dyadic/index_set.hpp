#ifndef DYADIC_INDEX_SET_HPP
#define DYADIC_INDEX_SET_HPP

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <set>
#include <vector>

namespace dyadic {

/// A finite or cofinite subset of the positive integers {1, 2, 3, ...}.
///
/// Used to select members of a geometric sequence. When finite, `listed_`
/// holds the members; when cofinite it holds the missing indices. This form
/// is closed under every boolean operation and is canonical.
class IndexSet {
 public:
  using index_type = std::uint32_t;

  IndexSet() = default;

  static IndexSet none() { return {}; }
  static IndexSet all() { return IndexSet(true, {}); }
  /// {k : k >= first}.
  static IndexSet from(index_type first) {
    std::set<index_type> missing;
    for (index_type k = 1; k < first; ++k) missing.insert(k);
    return IndexSet(true, std::move(missing));
  }
  static IndexSet finite(std::set<index_type> members) {
    members.erase(0);
    return IndexSet(false, std::move(members));
  }
  /// {k : first <= k <= last}.
  static IndexSet range(index_type first, index_type last) {
    std::set<index_type> members;
    for (index_type k = std::max<index_type>(first, 1); k <= last; ++k) members.insert(k);
    return IndexSet(false, std::move(members));
  }

  bool contains(index_type k) const {
    if (k == 0) return false;
    return cofinite_ != (listed_.count(k) > 0);
  }
  bool is_empty() const { return !cofinite_ && listed_.empty(); }
  bool is_infinite() const { return cofinite_; }
  bool is_all() const { return cofinite_ && listed_.empty(); }

  /// Smallest K such that membership is constant for all k >= K.
  index_type threshold() const { return listed_.empty() ? 1 : *listed_.rbegin() + 1; }

  /// Members strictly below `threshold()`.
  std::vector<index_type> members_below_threshold() const {
    std::vector<index_type> out;
    for (index_type k = 1; k < threshold(); ++k) {
      if (contains(k)) out.push_back(k);
    }
    return out;
  }

  IndexSet complement() const { return IndexSet(!cofinite_, listed_); }

  friend IndexSet unite(const IndexSet& a, const IndexSet& b) {
    if (!a.cofinite_ && !b.cofinite_) return IndexSet(false, set_union(a.listed_, b.listed_));
    if (a.cofinite_ && b.cofinite_) return IndexSet(true, set_intersection(a.listed_, b.listed_));
    const IndexSet& co = a.cofinite_ ? a : b;
    const IndexSet& fin = a.cofinite_ ? b : a;
    return IndexSet(true, set_difference(co.listed_, fin.listed_));
  }
  friend IndexSet intersect(const IndexSet& a, const IndexSet& b) {
    return unite(a.complement(), b.complement()).complement();
  }
  friend IndexSet subtract(const IndexSet& a, const IndexSet& b) {
    return intersect(a, b.complement());
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  IndexSet(bool cofinite, std::set<index_type> listed)
      : cofinite_(cofinite), listed_(std::move(listed)) {}

  static std::set<index_type> set_union(const std::set<index_type>& a, const std::set<index_type>& b) {
    std::set<index_type> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }
  static std::set<index_type> set_intersection(const std::set<index_type>& a,
                                               const std::set<index_type>& b) {
    std::set<index_type> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }
  static std::set<index_type> set_difference(const std::set<index_type>& a,
                                             const std::set<index_type>& b) {
    std::set<index_type> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }

  bool cofinite_ = false;
  std::set<index_type> listed_;
};

}  // namespace dyadic

#endif  // DYADIC_INDEX_SET_HPP
