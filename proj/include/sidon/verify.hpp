#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sidon/errors.hpp"
#include "sidon/pattern.hpp"
#include "sidon/sequence.hpp"

namespace sidon {

// ---------------------------------------------------------------------------
// Non-incremental verification
// ---------------------------------------------------------------------------

namespace detail {

inline void check_sum_range(const Sequence& seq, int h) {
  if (!seq.empty() && seq.max() > UINT64_MAX / static_cast<value_t>(h))
    throw std::overflow_error("h-fold sums overflow 64 bits");
}

/// Calls visit(sum, indices) for every multiset of `size` elements drawn from
/// `elems` (indices non-decreasing).
template <class Visit>
void for_each_multiset(const std::vector<value_t>& elems, int size, Visit&& visit) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(size), 0);
  if (size == 0) {
    visit(value_t{0}, idx);
    return;
  }
  if (elems.empty()) return;
  std::function<void(int, std::size_t, value_t)> rec = [&](int depth, std::size_t from, value_t acc) {
    if (depth == size) {
      visit(acc, idx);
      return;
    }
    for (std::size_t i = from; i < elems.size(); ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(depth + 1, i, acc + elems[i]);
    }
  };
  rec(0, 0, 0);
}

}  // namespace detail

/// A concrete witness that a sequence breaks its pattern: two or more
/// multisets with the same total (Sidon, B_h[g]) or x + y = z (sum-free).
struct Violation {
  std::vector<std::vector<value_t>> representations;
  value_t total = 0;

  /// Renders e.g. "1+3 = 2+2".
  std::string describe() const {
    auto reps = representations;
    std::sort(reps.begin(), reps.end());
    std::string s;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (r) s += " = ";
      for (std::size_t i = 0; i < reps[r].size(); ++i) {
        if (i) s += "+";
        s += std::to_string(reps[r][i]);
      }
    }
    if (reps.size() == 1) s += " = " + std::to_string(total);
    return s;
  }
};

/// First violation in a deterministic scan order, or nullopt if `seq` satisfies `pattern`.
inline std::optional<Violation> find_violation(const Sequence& seq, const Pattern& pattern) {
  const auto& e = seq.elements();
  switch (pattern.kind) {
    case Pattern::Kind::sidon: {
      detail::check_sum_range(seq, 2);
      std::unordered_map<value_t, std::pair<value_t, value_t>> seen;
      seen.reserve(e.size() * (e.size() + 1) / 2);
      for (std::size_t j = 0; j < e.size(); ++j)
        for (std::size_t i = 0; i <= j; ++i) {
          auto [it, fresh] = seen.try_emplace(e[i] + e[j], e[i], e[j]);
          if (!fresh)
            return Violation{{{it->second.first, it->second.second}, {e[i], e[j]}}, e[i] + e[j]};
        }
      return std::nullopt;
    }
    case Pattern::Kind::bhg: {
      detail::check_sum_range(seq, pattern.h);
      std::unordered_map<value_t, std::vector<std::vector<value_t>>> reps;
      std::optional<Violation> bad;
      detail::for_each_multiset(e, pattern.h, [&](value_t sum, const std::vector<std::size_t>& idx) {
        if (bad) return;
        auto& list = reps[sum];
        std::vector<value_t> ms;
        for (auto i : idx) ms.push_back(e[i]);
        list.push_back(std::move(ms));
        if (static_cast<int>(list.size()) > pattern.g) bad = Violation{list, sum};
      });
      return bad;
    }
    case Pattern::Kind::sum_free: {
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i; j < e.size(); ++j) {
          if (e[j] > UINT64_MAX - e[i]) break;
          if (seq.contains(e[i] + e[j])) return Violation{{{e[i], e[j]}}, e[i] + e[j]};
        }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// True iff `seq` satisfies `pattern`. Sidon checks distinct pair sums,
/// B_h[g] counts multiset representations, sum-free forbids x + y = z (x = y allowed).
inline bool verify(const Sequence& seq, const Pattern& pattern) {
  return !find_violation(seq, pattern).has_value();
}

/// Sidon test through the equivalent characterization: all positive
/// differences s_j - s_i are distinct.
inline bool sidon_by_differences(const Sequence& seq) {
  std::vector<value_t> d;
  const auto& e = seq.elements();
  d.reserve(e.size() * e.size() / 2);
  for (std::size_t j = 0; j < e.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) d.push_back(e[j] - e[i]);
  std::sort(d.begin(), d.end());
  return std::adjacent_find(d.begin(), d.end()) == d.end();
}

// ---------------------------------------------------------------------------
// Representation counts
// ---------------------------------------------------------------------------

/// counts[n] = number of multisets {x_1 <= ... <= x_h} from the sequence with sum n.
struct RepCountProfile {
  std::vector<std::uint64_t> counts;
  std::size_t n_max = 0;
  int h = 2;

  std::uint64_t max_count() const {
    return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  }
};

/// Exact multiset representation counts through degree n_max, by a
/// bounded-multiplicity knapsack over (parts used, total).
inline RepCountProfile representation_counts(const Sequence& seq, std::size_t n_max, int h) {
  if (h < 2) throw std::invalid_argument("representation_counts requires h >= 2");
  const auto H = static_cast<std::size_t>(h);
  std::vector<std::vector<std::uint64_t>> ways(H + 1, std::vector<std::uint64_t>(n_max + 1, 0));
  ways[0][0] = 1;
  for (value_t v : seq) {
    if (v > n_max) break;
    const auto step = static_cast<std::size_t>(v);
    // ascending parts reuse the already-updated row, allowing repeats of v
    for (std::size_t j = 1; j <= H; ++j)
      for (std::size_t n = step; n <= n_max; ++n) ways[j][n] += ways[j - 1][n - step];
  }
  return RepCountProfile{std::move(ways[H]), n_max, h};
}

// ---------------------------------------------------------------------------
// Incremental state
// ---------------------------------------------------------------------------

namespace detail {

/// Growable dense bitset that refuses to exceed a bit budget.
class BudgetedBits {
 public:
  explicit BudgetedBits(std::size_t budget) : budget_(budget) {}

  bool test(value_t i) const noexcept { return i < bits_.size() && bits_[static_cast<std::size_t>(i)]; }
  void set(value_t i) {
    ensure(i);
    bits_[static_cast<std::size_t>(i)] = true;
  }
  void reset(value_t i) noexcept {
    if (i < bits_.size()) bits_[static_cast<std::size_t>(i)] = false;
  }

 private:
  void ensure(value_t i) {
    if (i < bits_.size()) return;
    if (i >= budget_)
      throw resource_error("index " + std::to_string(i) + " exceeds bit budget " + std::to_string(budget_));
    std::size_t want = std::max<std::size_t>(static_cast<std::size_t>(i) + 1, bits_.size() * 2);
    bits_.resize(std::min<std::size_t>(want, budget_), false);
  }

  std::size_t budget_;
  std::vector<bool> bits_;
};

}  // namespace detail

/// Incremental verifier: maintains the current set together with an index
/// (difference bitset for Sidon, membership for sum-free, representation
/// counts for B_h[g]) so that `can_extend` only touches work involving the
/// candidate. Single owner; copy to branch.
class PatternState {
 public:
  static constexpr std::size_t default_bit_budget = std::size_t{1} << 33;

  explicit PatternState(Pattern pattern, std::size_t bit_budget = default_bit_budget)
      : pattern_(pattern), present_(bit_budget), diffs_(bit_budget) {
    if (pattern_.kind == Pattern::Kind::bhg && (pattern_.h < 2 || pattern_.g < 1))
      throw std::invalid_argument("invalid B_h[g] parameters");
  }

  /// Throws pattern_violation if the seed does not satisfy the pattern.
  PatternState(Pattern pattern, const Sequence& seed, std::size_t bit_budget = default_bit_budget)
      : PatternState(pattern, bit_budget) {
    for (value_t v : seed) {
      if (!can_extend(v))
        throw pattern_violation("seed violates " + to_string(pattern_) + " at element " + std::to_string(v));
      insert_unchecked(v);
    }
  }

  const Pattern& pattern() const noexcept { return pattern_; }
  std::size_t size() const noexcept { return elems_.size(); }
  value_t max() const noexcept { return elems_.empty() ? 0 : elems_.back(); }
  bool contains(value_t v) const noexcept { return present_.test(v); }
  const std::vector<value_t>& elements() const noexcept { return elems_; }
  Sequence sequence() const { return Sequence(elems_); }

  /// Would the set still satisfy the pattern with `x` added?
  bool can_extend(value_t x) const {
    if (x == 0) throw std::invalid_argument("candidate must be >= 1");
    if (contains(x)) throw std::invalid_argument("candidate " + std::to_string(x) + " already in set");
    switch (pattern_.kind) {
      case Pattern::Kind::sidon: return sidon_ok(x);
      case Pattern::Kind::sum_free: return sum_free_ok(x);
      case Pattern::Kind::bhg: return bhg_ok(x);
    }
    return false;
  }

  /// Inserts `x`; throws pattern_violation when inadmissible.
  void insert(value_t x) {
    if (!can_extend(x))
      throw pattern_violation(std::to_string(x) + " breaks " + to_string(pattern_));
    insert_unchecked(x);
  }

  /// Inserts `x` if admissible; returns whether it did.
  bool try_insert(value_t x) {
    if (!can_extend(x)) return false;
    insert_unchecked(x);
    return true;
  }

  void erase(value_t x) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
    if (it == elems_.end() || *it != x) throw std::invalid_argument("value not in set");
    elems_.erase(it);
    present_.reset(x);
    switch (pattern_.kind) {
      case Pattern::Kind::sidon:
        // each difference occurs once in a Sidon set, so clearing is exact
        for (value_t s : elems_) diffs_.reset(x > s ? x - s : s - x);
        break;
      case Pattern::Kind::sum_free: break;
      case Pattern::Kind::bhg:
        for_each_new_sum(x, [&](value_t sum) {
          auto c = counts_.find(sum);
          if (--c->second == 0) counts_.erase(c);
        });
        break;
    }
  }

 private:
  bool sidon_ok(value_t x) const {
    const value_t top = max();
    // large elements give the small, densely occupied differences first
    for (auto it = elems_.rbegin(); it != elems_.rend(); ++it) {
      value_t s = *it;
      if (diffs_.test(x > s ? x - s : s - x)) return false;
    }
    if (x < top) {
      // new differences collide with each other iff x is a midpoint
      for (value_t s : elems_) {
        if (s >= x) break;
        value_t mirror = 2 * x - s;
        if (mirror <= top && present_.test(mirror)) return false;
      }
    }
    return true;
  }

  bool sum_free_ok(value_t x) const {
    if (x <= UINT64_MAX / 2 && present_.test(2 * x)) return false;
    for (value_t s : elems_) {
      if (s < x && present_.test(x - s)) return false;
      if (x <= UINT64_MAX - s && present_.test(x + s)) return false;
    }
    return true;
  }

  template <class F>
  void for_each_new_sum(value_t x, F&& f) const {
    // multisets that contain x at least once = x + any (h-1)-multiset of S u {x}
    std::vector<value_t> pool = elems_;
    if (!std::binary_search(pool.begin(), pool.end(), x)) pool.insert(std::lower_bound(pool.begin(), pool.end(), x), x);
    detail::for_each_multiset(pool, pattern_.h - 1,
                              [&](value_t sum, const std::vector<std::size_t>&) { f(sum + x); });
  }

  bool bhg_ok(value_t x) const {
    if (x > UINT64_MAX / static_cast<value_t>(pattern_.h)) throw std::overflow_error("h-fold sums overflow 64 bits");
    std::unordered_map<value_t, std::uint32_t> fresh;
    for_each_new_sum(x, [&](value_t sum) { ++fresh[sum]; });
    for (const auto& [sum, add] : fresh) {
      auto it = counts_.find(sum);
      std::uint64_t have = it == counts_.end() ? 0 : it->second;
      if (have + add > static_cast<std::uint64_t>(pattern_.g)) return false;
    }
    return true;
  }

  void insert_unchecked(value_t x) {
    switch (pattern_.kind) {
      case Pattern::Kind::sidon:
        for (value_t s : elems_) diffs_.set(x > s ? x - s : s - x);
        break;
      case Pattern::Kind::sum_free: break;
      case Pattern::Kind::bhg:
        for_each_new_sum(x, [&](value_t sum) { ++counts_[sum]; });
        break;
    }
    present_.set(x);
    elems_.insert(std::lower_bound(elems_.begin(), elems_.end(), x), x);
  }

  Pattern pattern_;
  std::vector<value_t> elems_;
  detail::BudgetedBits present_;
  detail::BudgetedBits diffs_;
  std::unordered_map<value_t, std::uint32_t> counts_;
};

/// Convenience wrapper; builds a state (O(|seq|^2)) and queries it once.
/// Use PatternState directly for repeated queries.
inline bool can_extend(const Sequence& seq, value_t candidate, const Pattern& pattern) {
  if (seq.contains(candidate)) throw std::invalid_argument("candidate already in sequence");
  PatternState state(pattern);
  for (value_t v : seq) {
    if (!state.can_extend(v)) return false;  // seq itself already violates
    state.insert(v);
  }
  return state.can_extend(candidate);
}

/// Integers m in [1, m_max] with m not in S, m not in S+S-S and 2m not in
/// S+S: exactly the values that could still be added keeping S Sidon.
/// Empty result certifies inclusion-maximality through m_max.
inline std::vector<value_t> sumset_cover(const Sequence& seq, value_t m_max,
                                         std::size_t bit_budget = PatternState::default_bit_budget) {
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  detail::BudgetedBits diffs(bit_budget);
  const auto& e = seq.elements();
  for (std::size_t j = 0; j < e.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) diffs.set(e[j] - e[i]);

  std::vector<value_t> open;
  for (value_t m = 1; m <= m_max; ++m) {
    if (seq.contains(m)) continue;
    bool blocked = false;
    for (value_t a : e) {
      // m = a + (b - c)
      if (diffs.test(m > a ? m - a : a - m)) {
        blocked = true;
        break;
      }
      // 2m = a + b with a < m < b
      if (a < m && seq.contains(2 * m - a)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) open.push_back(m);
  }
  return open;
}

}  // namespace sidon
