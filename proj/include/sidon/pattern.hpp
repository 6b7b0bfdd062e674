#pragma once

#include <stdexcept>
#include <string>

namespace sidon {

/// Constraint family: Sidon (= B_2[1]), B_h[g], or sum-free (x = y allowed).
struct Pattern {
  enum class Kind { sidon, bhg, sum_free };

  Kind kind = Kind::sidon;
  int h = 2;
  int g = 1;

  static constexpr Pattern sidon() noexcept { return {Kind::sidon, 2, 1}; }
  static constexpr Pattern sum_free() noexcept { return {Kind::sum_free, 2, 1}; }
  static Pattern bhg(int h, int g) {
    if (h < 2) throw std::invalid_argument("B_h[g] requires h >= 2");
    if (g < 1) throw std::invalid_argument("B_h[g] requires g >= 1");
    return {Kind::bhg, h, g};
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

inline std::string to_string(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::sidon: return "sidon";
    case Pattern::Kind::sum_free: return "sum-free";
    case Pattern::Kind::bhg: return "B" + std::to_string(p.h) + "[" + std::to_string(p.g) + "]";
  }
  return "?";
}

/// Accepts "sidon", "sum-free" / "sumfree", "bhg" (with h, g supplied).
inline Pattern parse_pattern(const std::string& name, int h = 2, int g = 1) {
  if (name == "sidon") return Pattern::sidon();
  if (name == "sum-free" || name == "sumfree") return Pattern::sum_free();
  if (name == "bhg") return Pattern::bhg(h, g);
  throw std::invalid_argument("unknown pattern '" + name + "'");
}

}  // namespace sidon
