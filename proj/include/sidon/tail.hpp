#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "sidon/enclosure.hpp"
#include "sidon/sequence.hpp"
#include "sidon/verify.hpp"

namespace sidon {

/// Proven upper bounds on reciprocal tails of Sidon sequences (1-based indices).
///
///   levine                  sum of all 1/s_n, from s_n >= 1 + n(n+1)/2 (0-based n)
///   offset_quadratic(n)     sum of 1/s over elements s >= n, pi / sqrt(2n)
///   lindstrom_weak(N)       sum_{n>=N} 1/s_n < 2 / (N - sqrt N)
///   lindstrom_sharp(N)      2 ln(1 - 1/sqrt N) + 2 / (sqrt N - 1), the integral of
///                           1/(x - sqrt x)^2 over [N, inf)
///   lindstrom_sharp_strict  the same integral plus the leading term 1/(N - sqrt N)^2;
///                           needed because the summand decreases, so the sum from N
///                           exceeds the integral from N
struct TailRule {
  enum class Kind { levine, offset_quadratic, lindstrom_weak, lindstrom_sharp, lindstrom_sharp_strict };

  Kind kind = Kind::levine;
  value_t param = 0;

  static TailRule levine() { return {Kind::levine, 0}; }
  static TailRule offset_quadratic(value_t n) { return checked({Kind::offset_quadratic, n}); }
  static TailRule lindstrom_weak(value_t n) { return checked({Kind::lindstrom_weak, n}); }
  static TailRule lindstrom_sharp(value_t n) { return checked({Kind::lindstrom_sharp, n}); }
  static TailRule lindstrom_sharp_strict(value_t n) { return checked({Kind::lindstrom_sharp_strict, n}); }

  bool is_lindstrom() const {
    return kind == Kind::lindstrom_weak || kind == Kind::lindstrom_sharp || kind == Kind::lindstrom_sharp_strict;
  }

  void validate() const {
    if (kind == Kind::offset_quadratic && param < 1) throw std::invalid_argument("offset-quadratic requires n >= 1");
    if (is_lindstrom() && param < 2) throw std::invalid_argument("Lindstrom tails require N >= 2 (sqrt N > 1)");
  }

  friend bool operator==(const TailRule&, const TailRule&) = default;

 private:
  static TailRule checked(TailRule r) {
    r.validate();
    return r;
  }
};

inline std::string to_string(const TailRule& r) {
  switch (r.kind) {
    case TailRule::Kind::levine: return "levine";
    case TailRule::Kind::offset_quadratic: return "offset-quadratic(" + std::to_string(r.param) + ")";
    case TailRule::Kind::lindstrom_weak: return "lindstrom-weak(" + std::to_string(r.param) + ")";
    case TailRule::Kind::lindstrom_sharp: return "lindstrom-sharp(" + std::to_string(r.param) + ")";
    case TailRule::Kind::lindstrom_sharp_strict: return "lindstrom-sharp-strict(" + std::to_string(r.param) + ")";
  }
  return "?";
}

inline std::string formula(const TailRule& r) {
  switch (r.kind) {
    case TailRule::Kind::levine: return "sum_{n>=0} 1/(1+n(n+1)/2) = 2 pi/sqrt 7 * tanh(sqrt 7 pi/2)";
    case TailRule::Kind::offset_quadratic: return "sum_{s>=n} 1/s <= pi/sqrt(2n)";
    case TailRule::Kind::lindstrom_weak: return "sum_{n>=N} 1/s_n < 2/(N - sqrt N)";
    case TailRule::Kind::lindstrom_sharp: return "sum_{n>=N} 1/s_n < 2 ln(1 - 1/sqrt N) + 2/(sqrt N - 1)";
    case TailRule::Kind::lindstrom_sharp_strict:
      return "sum_{n>=N} 1/s_n <= 1/(N - sqrt N)^2 + 2 ln(1 - 1/sqrt N) + 2/(sqrt N - 1)";
  }
  return "?";
}

inline TailRule parse_tail_rule(const std::string& name, value_t n) {
  if (name == "levine") return TailRule::levine();
  if (name == "offset-quadratic") return TailRule::offset_quadratic(n);
  if (name == "lindstrom-weak") return TailRule::lindstrom_weak(n);
  if (name == "lindstrom-sharp") return TailRule::lindstrom_sharp(n);
  if (name == "lindstrom-sharp-strict") return TailRule::lindstrom_sharp_strict(n);
  throw std::invalid_argument("unknown tail rule '" + name + "'");
}

/// 2 pi / sqrt 7 * tanh(sqrt 7 * pi / 2).
inline Enclosure levine_constant(unsigned bits = default_precision_bits()) {
  Enclosure pi = pi_enclosure(bits);
  Enclosure r7 = sqrt(Enclosure::integer(7), bits);
  Enclosure th = tanh(r7 * pi / rational(2), bits);
  return pi * rational(2) / r7 * th;
}

/// Upper bound on the tail the rule speaks about, returned as [0, hi].
inline Enclosure tail_upper(const TailRule& rule, unsigned bits = default_precision_bits()) {
  rule.validate();
  Enclosure value;
  switch (rule.kind) {
    case TailRule::Kind::levine: value = levine_constant(bits); break;
    case TailRule::Kind::offset_quadratic: {
      Enclosure two_n = Enclosure(rational(mpz_class(std::to_string(rule.param)) * 2));
      value = pi_enclosure(bits) / sqrt(two_n, bits);
      break;
    }
    case TailRule::Kind::lindstrom_weak: {
      Enclosure n(rational(mpz_class(std::to_string(rule.param))));
      value = Enclosure::integer(2) / (n - sqrt(n, bits));
      break;
    }
    case TailRule::Kind::lindstrom_sharp:
    case TailRule::Kind::lindstrom_sharp_strict: {
      Enclosure n(rational(mpz_class(std::to_string(rule.param))));
      Enclosure r = sqrt(n, bits);
      Enclosure one = Enclosure::integer(1);
      value = log(one - one / r, bits) * rational(2) + Enclosure::integer(2) / (r - one);
      if (rule.kind == TailRule::Kind::lindstrom_sharp_strict) {
        Enclosure d = n - r;
        value += one / (d * d);
      }
      break;
    }
  }
  return Enclosure(0, value.hi());
}

/// Enclosure of sum_{i<k} seq[i]^-alpha. Exact when alpha is a positive
/// integer; otherwise width <= 2^-bits or precision_error.
inline Enclosure partial_power_sum(const Sequence& seq, const rational& alpha, std::size_t k,
                                   unsigned bits = default_precision_bits()) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be > 0");
  if (k > seq.size()) throw std::invalid_argument("k exceeds sequence length");
  if (alpha.get_den() == 1) {
    if (!mpz_fits_ulong_p(alpha.get_num_mpz_t())) throw std::invalid_argument("alpha too large");
    const unsigned long a = alpha.get_num().get_ui();
    // common-denominator accumulation keeps gcd work off the inner loop
    mpz_class num = 0, den = 1, p;
    for (std::size_t i = 0; i < k; ++i) {
      mpz_class s(std::to_string(seq[i]));
      mpz_pow_ui(p.get_mpz_t(), s.get_mpz_t(), a);
      num = num * p + den;
      den *= p;
      if ((i & 63) == 63) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        num /= g;
        den /= g;
      }
    }
    rational q(num, den);
    q.canonicalize();
    return Enclosure(q);
  }
  const unsigned guard = 16 + 2 * static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(k) + 2)));
  const unsigned work = bits + guard;
  Enclosure sum;
  for (std::size_t i = 0; i < k; ++i)
    sum += pow(Enclosure(rational(mpz_class(std::to_string(seq[i])))), -alpha, work);
  rational limit(1);
  mpz_mul_2exp(limit.get_den_mpz_t(), limit.get_den_mpz_t(), bits);
  sum = sum.rounded(bits + guard / 2);
  if (sum.width() > limit)
    throw precision_error("power sum width exceeds 2^-" + std::to_string(bits) + " at working precision " +
                          std::to_string(work));
  return sum;
}

/// Enclosure of the full series of any Sidon set extending `prefix`: the
/// lower end is the prefix sum, the upper end adds the tail rule's bound.
/// The rule must start where the prefix ends (Lindstrom: N = |prefix| + 1;
/// offset-quadratic: n <= max(prefix) + 1; Levine: empty prefix).
inline Enclosure series_enclosure(const Sequence& prefix, const rational& alpha, const std::optional<TailRule>& rule,
                                  unsigned bits = default_precision_bits()) {
  if (!verify(prefix, Pattern::sidon())) throw pattern_violation("series_enclosure requires a Sidon prefix");
  Enclosure partial = partial_power_sum(prefix, alpha, prefix.size(), bits);
  if (!rule) return partial;
  if (alpha != 1) throw std::invalid_argument("tail rules are stated for alpha = 1");
  switch (rule->kind) {
    case TailRule::Kind::levine:
      if (!prefix.empty()) throw std::invalid_argument("the Levine bound covers the whole series; prefix must be empty");
      break;
    case TailRule::Kind::offset_quadratic:
      if (rule->param > prefix.max() + 1)
        throw std::invalid_argument("offset-quadratic threshold must not exceed max(prefix) + 1");
      break;
    default:
      if (rule->param != prefix.size() + 1)
        throw std::invalid_argument("Lindstrom tail must start at index |prefix| + 1");
  }
  Enclosure tail = tail_upper(*rule, bits);
  return Enclosure(partial.lo(), partial.hi() + tail.hi());
}

/// Exact test of s > (n - sqrt n)^2 for the 1-based index n.
inline bool exceeds_lindstrom_floor(value_t s, std::size_t n) {
  if (n == 0) throw std::invalid_argument("index is 1-based");
  mpz_class N(std::to_string(n)), S(std::to_string(s));
  mpz_class rhs = N * N + N - S;  // s > n^2 + n - 2n sqrt n  <=>  2n sqrt n > rhs
  if (rhs < 0) return true;
  return 4 * N * N * N > rhs * rhs;
}

/// 1 + n(n+1)/2 for the 0-based index n: the smallest value a Sidon sequence
/// can take at that position.
inline value_t levine_floor(std::size_t n) { return 1 + static_cast<value_t>(n) * (n + 1) / 2; }

/// Smallest value s_N can take under s_N > (N - sqrt N)^2, i.e.
/// floor((N - sqrt N)^2) + 1; the offset-quadratic threshold matching index N.
inline value_t lindstrom_value_floor(std::size_t n) {
  value_t lo = 1, hi = static_cast<value_t>(n) * n + 1;
  while (lo < hi) {
    value_t mid = lo + (hi - lo) / 2;
    if (exceeds_lindstrom_floor(mid, n))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace sidon
