#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sidon/errors.hpp"

namespace sidon {

using value_t = std::uint64_t;

/// Finite strictly increasing sequence of positive integers.
///
/// Immutable once built; every pattern, constructor and bound in the
/// library speaks in terms of this type.
class Sequence {
 public:
  Sequence() = default;

  /// Throws std::invalid_argument unless `elems` is strictly increasing and positive.
  explicit Sequence(std::vector<value_t> elems) : elems_(std::move(elems)) {
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (elems_[i] == 0) throw std::invalid_argument("sequence elements must be >= 1");
      if (i > 0 && elems_[i] <= elems_[i - 1])
        throw std::invalid_argument("sequence must be strictly increasing at index " +
                                    std::to_string(i));
    }
  }
  Sequence(std::initializer_list<value_t> elems) : Sequence(std::vector<value_t>(elems)) {}

  /// Sorts and deduplicates arbitrary positive values.
  static Sequence from_unordered(std::vector<value_t> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return Sequence(std::move(elems));
  }

  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  /// Largest element, 0 for the empty sequence.
  value_t max() const noexcept { return elems_.empty() ? 0 : elems_.back(); }
  value_t operator[](std::size_t i) const { return elems_[i]; }

  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  std::span<const value_t> view() const noexcept { return elems_; }
  const std::vector<value_t>& elements() const noexcept { return elems_; }

  bool contains(value_t v) const { return std::binary_search(elems_.begin(), elems_.end(), v); }

  /// First `k` elements (k clamped to size()).
  Sequence prefix(std::size_t k) const {
    k = std::min(k, elems_.size());
    return Sequence(std::vector<value_t>(elems_.begin(), elems_.begin() + k), unchecked{});
  }

  /// Copy with `v` inserted; throws if already present or zero.
  Sequence with(value_t v) const {
    if (v == 0) throw std::invalid_argument("sequence elements must be >= 1");
    auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
    if (it != elems_.end() && *it == v) throw std::invalid_argument("value already in sequence");
    std::vector<value_t> out;
    out.reserve(elems_.size() + 1);
    out.insert(out.end(), elems_.begin(), it);
    out.push_back(v);
    out.insert(out.end(), it, elems_.end());
    return Sequence(std::move(out), unchecked{});
  }

  /// Elements not exceeding `cap`.
  Sequence up_to(value_t cap) const {
    auto it = std::upper_bound(elems_.begin(), elems_.end(), cap);
    return Sequence(std::vector<value_t>(elems_.begin(), it), unchecked{});
  }

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend auto operator<=>(const Sequence& a, const Sequence& b) { return a.elems_ <=> b.elems_; }

 private:
  struct unchecked {};
  Sequence(std::vector<value_t> elems, unchecked) : elems_(std::move(elems)) {}

  std::vector<value_t> elems_;
};

/// Reads the shared text format: one base-10 integer per line, strictly
/// increasing, no blank lines. A trailing newline is allowed; CR is rejected.
inline Sequence read_sequence(std::istream& in) {
  std::vector<value_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) throw parse_error("blank line", lineno);
    value_t v = 0;
    for (char c : line) {
      if (c < '0' || c > '9') throw parse_error("not a base-10 integer: '" + line + "'", lineno);
      value_t d = static_cast<value_t>(c - '0');
      if (v > (UINT64_MAX - d) / 10) throw parse_error("integer overflow", lineno);
      v = v * 10 + d;
    }
    if (v == 0) throw parse_error("elements must be >= 1", lineno);
    if (!out.empty() && v <= out.back()) throw parse_error("sequence not strictly increasing", lineno);
    out.push_back(v);
  }
  return Sequence(std::move(out));
}

inline void write_sequence(std::ostream& out, const Sequence& seq) {
  for (value_t v : seq) out << v << '\n';
}

inline std::string to_string(const Sequence& seq, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(seq[i]);
  }
  return s;
}

}  // namespace sidon
