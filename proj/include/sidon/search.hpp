#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "sidon/enclosure.hpp"
#include "sidon/errors.hpp"
#include "sidon/pattern.hpp"
#include "sidon/sequence.hpp"
#include "sidon/tail.hpp"
#include "sidon/verify.hpp"

namespace sidon {

enum class SearchStatus { exact_optimum, lower_bound_only };

inline const char* to_string(SearchStatus s) {
  return s == SearchStatus::exact_optimum ? "exact-optimum" : "lower-bound-only";
}

struct SearchBudget {
  std::uint64_t max_nodes = 200'000'000;
  std::optional<std::chrono::milliseconds> time_limit;
};

struct SearchResult {
  Sequence optimum_set;
  Enclosure objective;
  SearchStatus status = SearchStatus::lower_bound_only;
  std::uint64_t nodes_explored = 0;
  /// best_k_prefix only: certified upper bound on the k-element optimum with
  /// no value cap (covers completions that leave [1, value_cap]).
  std::optional<Enclosure> unrestricted_bound;
};

inline constexpr value_t oracle_limit = 32;

namespace detail {

/// Objective sum s^-alpha: fast doubles for steering, exact (integer alpha)
/// or enclosure values whenever two doubles are too close to call.
class Objective {
 public:
  Objective(rational alpha, unsigned bits) : alpha_(std::move(alpha)), bits_(bits) {
    if (alpha_ <= 0) throw std::invalid_argument("alpha must be > 0");
    a_ = alpha_.get_d();
  }

  double weight(value_t v) const {
    if (v < cache_.size()) return cache_[static_cast<std::size_t>(v)];
    return std::pow(static_cast<double>(v), -a_);
  }
  void precompute(value_t up_to) {
    cache_.resize(static_cast<std::size_t>(up_to) + 1);
    for (value_t v = 1; v <= up_to; ++v) cache_[static_cast<std::size_t>(v)] = std::pow(static_cast<double>(v), -a_);
  }

  Enclosure value(const std::vector<value_t>& sorted) const {
    return partial_power_sum(Sequence(sorted), alpha_, sorted.size(), bits_);
  }

  double margin(double ref) const { return 1e-11 * std::max(1.0, std::abs(ref)); }

 private:
  rational alpha_;
  unsigned bits_;
  double a_ = 1;
  std::vector<double> cache_{0.0};
};

class Clock {
 public:
  explicit Clock(const SearchBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  /// Counts a node; false once the node or time budget is exhausted.
  bool tick(std::uint64_t& nodes) {
    if (++nodes > budget_.max_nodes) return false;
    if (budget_.time_limit && (nodes & 4095) == 0 &&
        std::chrono::steady_clock::now() - start_ > *budget_.time_limit)
      return false;
    return true;
  }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
};

/// Incumbent with the lexicographic tie-break: candidates arrive in
/// lexicographic order, so on exact ties the earlier one is kept.
class Incumbent {
 public:
  explicit Incumbent(const Objective& obj) : obj_(obj) {}

  bool empty() const noexcept { return !set_; }
  double value() const noexcept { return value_; }
  const std::vector<value_t>& set() const { return *set_; }
  bool ambiguous() const noexcept { return ambiguous_; }

  const Enclosure& exact() {
    if (!exact_) exact_ = obj_.value(*set_);
    return *exact_;
  }

  void offer(const std::vector<value_t>& cand, double v) {
    if (!set_) return take(cand, v);
    const double m = obj_.margin(value_);
    if (v > value_ + m) return take(cand, v);
    if (v < value_ - m) return;
    Enclosure c = obj_.value(cand);
    const Enclosure& inc = exact();
    if (c.lo() > inc.hi()) return take(cand, v, std::move(c));
    if (c.hi() < inc.lo()) return;
    if (!(c.is_exact() && inc.is_exact())) ambiguous_ = true;
  }

  /// True when `upper` (a value set) certainly cannot beat the incumbent;
  /// equality also prunes because any tying set would come later in lex order.
  /// `make_set` lists the values behind `upper_d`; only called on near ties.
  template <class MakeSet>
  bool dominates(double upper_d, MakeSet&& make_set) {
    if (!set_) return false;
    const double m = obj_.margin(value_);
    if (upper_d <= value_ - m) return true;
    if (upper_d > value_ + m) return false;
    Enclosure u = obj_.value(make_set());
    return u.hi() <= exact().lo();
  }

 private:
  void take(const std::vector<value_t>& cand, double v, std::optional<Enclosure> exact = std::nullopt) {
    set_ = cand;
    value_ = v;
    exact_ = std::move(exact);
  }

  const Objective& obj_;
  std::optional<std::vector<value_t>> set_;
  double value_ = 0;
  std::optional<Enclosure> exact_;
  bool ambiguous_ = false;
};

inline std::vector<value_t> concat(const std::vector<value_t>& a, const std::vector<value_t>& b) {
  std::vector<value_t> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

/// Maximizes sum s^-alpha over pattern-satisfying subsets of [1, n_cap].
///
/// Depth-first branch-and-bound in lexicographic order: each node is a set,
/// its children add one admissible value above the current maximum in
/// increasing order. A child is pruned when the current sum plus the weights
/// of every value admissible-now above it cannot beat the incumbent; the
/// bound only shrinks along the child list, so the first prune ends the list.
inline SearchResult max_reciprocal_subset(value_t n_cap, const Pattern& pattern, const rational& alpha,
                                          const SearchBudget& budget = {},
                                          unsigned bits = default_precision_bits()) {
  if (n_cap < 1) throw std::invalid_argument("n_cap must be >= 1");
  detail::Objective obj(alpha, bits);
  obj.precompute(n_cap);
  detail::Incumbent inc(obj);
  detail::Clock clock(budget);
  PatternState state(pattern);
  std::uint64_t nodes = 0;
  bool exhausted = false;

  auto visit = [&](auto&& self, value_t from, double cur) -> void {
    if (exhausted) return;
    if (!clock.tick(nodes)) {
      exhausted = true;
      return;
    }
    inc.offer(state.elements(), cur);
    std::vector<value_t> cand;
    for (value_t j = from; j <= n_cap; ++j)
      if (state.can_extend(j)) cand.push_back(j);
    std::vector<double> suffix(cand.size() + 1, 0.0);
    for (std::size_t i = cand.size(); i-- > 0;) suffix[i] = suffix[i + 1] + obj.weight(cand[i]);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      auto bound_set = [&] {
        return detail::concat(state.elements(),
                              std::vector<value_t>(cand.begin() + static_cast<std::ptrdiff_t>(i), cand.end()));
      };
      if (inc.dominates(cur + suffix[i], bound_set)) break;
      state.insert(cand[i]);
      self(self, cand[i] + 1, cur + obj.weight(cand[i]));
      state.erase(cand[i]);
      if (exhausted) return;
    }
  };
  visit(visit, 1, 0.0);

  SearchResult r;
  r.optimum_set = Sequence(inc.set());
  r.objective = inc.exact();
  r.nodes_explored = std::min(nodes, budget.max_nodes);
  r.status = (exhausted || inc.ambiguous()) ? SearchStatus::lower_bound_only : SearchStatus::exact_optimum;
  return r;
}

/// Exhaustive reference: walks every pattern-satisfying subset of [1, n_cap]
/// (patterns are closed under taking subsets, so each valid set is reached
/// through its valid prefixes) using the standalone verify(), no bounding.
inline SearchResult brute_force_oracle(value_t n_cap, const Pattern& pattern, const rational& alpha,
                                       unsigned bits = default_precision_bits()) {
  if (n_cap < 1) throw std::invalid_argument("n_cap must be >= 1");
  if (n_cap > oracle_limit)
    throw std::invalid_argument("brute_force_oracle is limited to n_cap <= " + std::to_string(oracle_limit));
  if (alpha <= 0) throw std::invalid_argument("alpha must be > 0");
  const double a = alpha.get_d();
  std::vector<value_t> best, cur;
  double best_d = 0;
  std::optional<Enclosure> best_exact;
  std::uint64_t visited = 0;
  auto exact = [&](const std::vector<value_t>& s) { return partial_power_sum(Sequence(s), alpha, s.size(), bits); };

  auto consider = [&](double v) {
    const double m = 1e-9;
    if (v < best_d - m) return;
    if (v > best_d + m) {
      best = cur;
      best_d = v;
      best_exact.reset();
      return;
    }
    if (!best_exact) best_exact = exact(best);
    Enclosure e = exact(cur);
    if (e.lo() > best_exact->hi() || (e.is_exact() && best_exact->is_exact() && e.lo() == best_exact->lo() &&
                                      Sequence(cur) < Sequence(best))) {
      best = cur;
      best_d = v;
      best_exact = e;
    }
  };
  auto rec = [&](auto&& self, value_t from, double sum) -> void {
    ++visited;
    consider(sum);
    for (value_t j = from; j <= n_cap; ++j) {
      cur.push_back(j);
      if (verify(Sequence(cur), pattern)) self(self, j + 1, sum + std::pow(static_cast<double>(j), -a));
      cur.pop_back();
    }
  };
  rec(rec, 1, 0.0);

  SearchResult r;
  r.optimum_set = Sequence(best);
  r.objective = exact(best);
  r.status = SearchStatus::exact_optimum;
  r.nodes_explored = visited;
  return r;
}

/// Maximizes sum s^-alpha over exactly-k-element pattern sets inside
/// [1, value_cap]. Child bounds pad missing completions with the weights of
/// cap+1, cap+2, ..., so they also cover sets that leave the cap; nodes whose
/// "next value beyond the cap" completion could still win are collected into
/// `unrestricted_bound`.
inline SearchResult best_k_prefix(std::size_t k, const Pattern& pattern, const rational& alpha, value_t value_cap,
                                  const SearchBudget& budget = {}, unsigned bits = default_precision_bits()) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (value_cap < k) throw infeasible_error("no " + std::to_string(k) + "-element set fits below " +
                                            std::to_string(value_cap));
  detail::Objective obj(alpha, bits);
  obj.precompute(value_cap + k + 1);
  detail::Incumbent inc(obj);
  detail::Clock clock(budget);
  PatternState state(pattern);
  std::uint64_t nodes = 0;
  bool exhausted = false;

  std::vector<double> beyond(k + 1, 0.0);  // beyond[q] = sum_{i<q} w(cap+1+i)
  std::vector<value_t> beyond_vals;
  for (std::size_t q = 1; q <= k; ++q) {
    beyond_vals.push_back(value_cap + q);
    beyond[q] = beyond[q - 1] + obj.weight(value_cap + q);
  }
  auto beyond_prefix = [&](std::size_t q) {
    return std::vector<value_t>(beyond_vals.begin(), beyond_vals.begin() + static_cast<std::ptrdiff_t>(q));
  };
  std::optional<Enclosure> outside;  // max over beyond-cap completion bounds that the incumbent did not dominate

  auto visit = [&](auto&& self, value_t from, double cur) -> void {
    if (exhausted) return;
    if (!clock.tick(nodes)) {
      exhausted = true;
      return;
    }
    const std::size_t j = state.size();
    if (j == k) {
      inc.offer(state.elements(), cur);
      return;
    }
    const std::size_t need = k - j;
    {
      // completions whose next element exceeds the cap
      auto vals = [&] { return detail::concat(state.elements(), beyond_prefix(need)); };
      if (!inc.dominates(cur + beyond[need], vals)) {
        Enclosure b = obj.value(vals());
        outside = outside ? hull(*outside, b) : b;
      }
    }
    std::vector<value_t> cand;
    for (value_t c = from; c <= value_cap; ++c)
      if (state.can_extend(c)) cand.push_back(c);
    std::vector<double> prefix(cand.size() + 1, 0.0);
    for (std::size_t i = 0; i < cand.size(); ++i) prefix[i + 1] = prefix[i] + obj.weight(cand[i]);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const std::size_t take = std::min(need, cand.size() - i);
      const std::size_t pad = need - take;
      double bound = cur + prefix[i + take] - prefix[i] + beyond[pad];
      auto vals = [&] {
        auto v = state.elements();
        v.insert(v.end(), cand.begin() + static_cast<std::ptrdiff_t>(i),
                 cand.begin() + static_cast<std::ptrdiff_t>(i + take));
        auto pv = beyond_prefix(pad);
        v.insert(v.end(), pv.begin(), pv.end());
        return v;
      };
      if (inc.dominates(bound, vals)) break;
      state.insert(cand[i]);
      self(self, cand[i] + 1, cur + obj.weight(cand[i]));
      state.erase(cand[i]);
      if (exhausted) return;
    }
  };
  visit(visit, 1, 0.0);

  if (inc.empty()) {
    if (exhausted) throw resource_error("budget exhausted before any " + std::to_string(k) + "-element set was found");
    throw infeasible_error("no " + std::to_string(k) + "-element " + to_string(pattern) + " set below " +
                           std::to_string(value_cap));
  }
  SearchResult r;
  r.optimum_set = Sequence(inc.set());
  r.objective = inc.exact();
  r.nodes_explored = std::min(nodes, budget.max_nodes);
  r.status = (exhausted || inc.ambiguous()) ? SearchStatus::lower_bound_only : SearchStatus::exact_optimum;
  if (r.status == SearchStatus::exact_optimum) {
    rational hi = r.objective.hi();
    if (outside && outside->hi() > hi) hi = outside->hi();
    r.unrestricted_bound = Enclosure(r.objective.lo(), hi);
  }
  return r;
}

/// max_reciprocal_subset for every n_cap in [from, to]. Instances are
/// independent and each runs sequentially, so results do not depend on
/// `workers`.
inline std::vector<SearchResult> sweep_max_reciprocal(value_t from, value_t to, const Pattern& pattern,
                                                      const rational& alpha, const SearchBudget& budget = {},
                                                      unsigned workers = 1,
                                                      unsigned bits = default_precision_bits()) {
  if (from < 1 || to < from) throw std::invalid_argument("invalid n_cap range");
  const std::size_t n = static_cast<std::size_t>(to - from + 1);
  std::vector<std::optional<SearchResult>> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = max_reciprocal_subset(from + i, pattern, alpha, budget, bits);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max(1u, workers);
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<SearchResult> res;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    res.push_back(std::move(*out[i]));
  }
  return res;
}

}  // namespace sidon
