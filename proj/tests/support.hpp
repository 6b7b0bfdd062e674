#pragma once

// Independent reference implementations and generators for the test suites.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sidon/pattern.hpp"
#include "sidon/sequence.hpp"

namespace testing {

using sidon::Pattern;
using sidon::Sequence;
using sidon::value_t;

/// Multiset representation counts r(n) of h-fold sums, by plain recursion.
inline std::map<value_t, int> naive_rep_counts(const std::vector<value_t>& s, int h) {
  std::map<value_t, int> r;
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t from, int left, value_t acc) -> void {
    if (left == 0) {
      ++r[acc];
      return;
    }
    for (std::size_t i = from; i < s.size(); ++i) self(self, i, left - 1, acc + s[i]);
  };
  rec(rec, 0, h, 0);
  return r;
}

inline bool naive_sum_free(const std::vector<value_t>& s) {
  std::set<value_t> in(s.begin(), s.end());
  for (value_t x : s)
    for (value_t y : s)
      if (in.count(x + y)) return false;
  return true;
}

inline bool naive_holds(const std::vector<value_t>& s, const Pattern& p) {
  if (p.kind == Pattern::Kind::sum_free) return naive_sum_free(s);
  for (const auto& [sum, c] : naive_rep_counts(s, p.h))
    if (c > p.g) return false;
  return true;
}

/// Sidon check by pairwise differences, written independently of the library.
inline bool naive_sidon_differences(const std::vector<value_t>& s) {
  std::set<value_t> d;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!d.insert(s[j] - s[i]).second) return false;
  return true;
}

/// Greedy by re-verifying the whole candidate set each step.
inline std::vector<value_t> naive_greedy(std::size_t count, const Pattern& p, std::vector<value_t> seed = {}) {
  std::vector<value_t> s = std::move(seed);
  for (value_t v = 1; s.size() < count; ++v) {
    if (std::find(s.begin(), s.end(), v) != s.end()) continue;
    auto t = s;
    t.push_back(v);
    std::sort(t.begin(), t.end());
    if (naive_holds(t, p)) s = t;
  }
  return s;
}

/// Random strictly increasing set of `size` values from [1, range].
inline std::vector<value_t> random_set(std::mt19937_64& rng, std::size_t size, value_t range) {
  std::set<value_t> s;
  std::uniform_int_distribution<value_t> d(1, range);
  while (s.size() < size) s.insert(d(rng));
  return {s.begin(), s.end()};
}

/// Random Sidon set grown by rejection from random candidates.
inline std::vector<value_t> random_sidon(std::mt19937_64& rng, std::size_t size, value_t range) {
  std::vector<value_t> s;
  std::uniform_int_distribution<value_t> d(1, range);
  for (int tries = 0; s.size() < size && tries < 100000; ++tries) {
    value_t v = d(rng);
    if (std::find(s.begin(), s.end(), v) != s.end()) continue;
    auto t = s;
    t.push_back(v);
    std::sort(t.begin(), t.end());
    if (naive_sidon_differences(t)) s = t;
  }
  return s;
}

inline std::vector<Pattern> all_patterns() {
  return {Pattern::sidon(), Pattern::sum_free(), Pattern::bhg(2, 2), Pattern::bhg(3, 1), Pattern::bhg(3, 2)};
}

/// Minimal largest element of an n-element Sidon set (optimal Golomb ruler length + 1), n = 1..14.
inline const std::vector<value_t>& minimal_sidon_max() {
  static const std::vector<value_t> v{1, 2, 4, 7, 12, 18, 26, 35, 45, 56, 73, 86, 107, 128};
  return v;
}

}  // namespace testing
