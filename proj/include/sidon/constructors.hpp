#pragma once

#include <string>
#include <variant>

#include "sidon/enclosure.hpp"
#include "sidon/pattern.hpp"
#include "sidon/sequence.hpp"
#include "sidon/verify.hpp"

namespace sidon {

struct CountStop {
  std::size_t count = 0;
};
struct ValueCapStop {
  value_t cap = 0;
};

/// Greedy extension request: keep adding the smallest admissible positive
/// integer outside `forbidden` until the stop condition holds.
struct GreedySpec {
  Pattern pattern = Pattern::sidon();
  Sequence seed;
  std::variant<CountStop, ValueCapStop> stop = CountStop{};
  Sequence forbidden;
  std::size_t bit_budget = PatternState::default_bit_budget;
};

/// Deterministic greedy builder. Throws pattern_violation for a bad seed and
/// resource_error if the index would outgrow `bit_budget`.
inline Sequence greedy(const GreedySpec& spec) {
  PatternState state(spec.pattern, spec.seed, spec.bit_budget);
  const auto* count = std::get_if<CountStop>(&spec.stop);
  const auto* cap = std::get_if<ValueCapStop>(&spec.stop);
  if (count && count->count < spec.seed.size()) throw std::invalid_argument("count below seed size");
  if (cap && cap->cap < spec.seed.max()) throw std::invalid_argument("value cap below seed maximum");

  // Inadmissibility survives insertion, so the scan pointer never moves back.
  value_t next = 1;
  auto admissible = [&](value_t v) { return !state.contains(v) && !spec.forbidden.contains(v) && state.can_extend(v); };
  while (true) {
    if (count && state.size() >= count->count) break;
    while (!admissible(next)) {
      if (cap && next >= cap->cap) return state.sequence();
      ++next;
    }
    if (cap && next > cap->cap) break;
    state.insert(next);
    ++next;
  }
  return state.sequence();
}

/// Greedy Sidon sequence 1, 2, 4, 8, 13, 21, 31, ... (first `count` terms).
inline Sequence mian_chowla(std::size_t count) {
  return greedy({Pattern::sidon(), {}, CountStop{count}, {}});
}

inline constexpr std::size_t zhang_forced_position = 15;
inline constexpr value_t zhang_forced_value = 229;

/// Greedy for 14 terms, 229 as the 15th, greedy thereafter.
inline Sequence zhang(std::size_t count) {
  if (count < zhang_forced_position) return mian_chowla(count);
  Sequence seed = mian_chowla(zhang_forced_position - 1).with(zhang_forced_value);
  return greedy({Pattern::sidon(), seed, CountStop{count}, {}});
}

/// Named presets used by the CLI.
inline Sequence preset(const std::string& name, std::size_t count) {
  if (name == "mian-chowla") return mian_chowla(count);
  if (name == "zhang") return zhang(count);
  throw std::invalid_argument("unknown preset '" + name + "'");
}

/// Adds minimal admissible values <= cap until none is left and returns the
/// added values only. prefix u result is saturated below cap.
inline Sequence saturate(const Sequence& prefix, value_t cap, const Pattern& pattern) {
  PatternState state(pattern, prefix);
  std::vector<value_t> added;
  // min A, recomputed after every insertion; values below the last minimum
  // were inadmissible then and stay so, hence the scan resumes there
  for (value_t v = 1; v <= cap; ++v) {
    if (state.contains(v)) continue;
    if (state.can_extend(v)) {
      state.insert(v);
      added.push_back(v);
    }
  }
  return Sequence(std::move(added));
}

/// Exponent 3/4 and constant 2^(3/4) / (3 pi)^(3/2) of the density argument.
inline const rational& saturation_exponent() {
  static const rational a(3, 4);
  return a;
}

/// ceil(c * n^(3/4)) with c = 2^(3/4) / (3 pi)^(3/2). When the certified
/// enclosure straddles an integer, the larger candidate is used.
inline value_t default_saturation_cap(value_t n, unsigned bits = default_precision_bits()) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Enclosure two_q = pow(Enclosure::integer(2), saturation_exponent(), bits);
  Enclosure three_pi = pi_enclosure(bits) * rational(3);
  Enclosure c = two_q / pow(three_pi, rational(3, 2), bits);
  Enclosure v = c * pow(Enclosure(rational(mpz_class(std::to_string(n)))), saturation_exponent(), bits);
  mpz_class up;
  mpz_cdiv_q(up.get_mpz_t(), v.hi().get_num_mpz_t(), v.hi().get_den_mpz_t());
  return static_cast<value_t>(std::max<unsigned long>(up.get_ui(), 1));
}

/// saturate() with cap = default_saturation_cap(n); n defaults to max(prefix).
inline Sequence saturate_default(const Sequence& prefix, const Pattern& pattern, value_t n = 0) {
  if (n == 0) n = std::max<value_t>(prefix.max(), 1);
  return saturate(prefix, default_saturation_cap(n), pattern);
}

}  // namespace sidon
