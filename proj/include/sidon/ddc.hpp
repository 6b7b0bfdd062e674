#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sidon/enclosure.hpp"
#include "sidon/search.hpp"
#include "sidon/sequence.hpp"
#include "sidon/tail.hpp"
#include "sidon/verify.hpp"

namespace sidon {

/// Externally sourced block value; indices [first_index, last_index] (empty when first > last).
struct ExternalBlock {
  Enclosure value;
  std::string provenance;
  std::size_t first_index = 1;
  std::size_t last_index = 0;
};

/// Block 1 from an exact search over k-element Sidon sets (indices 1..k).
struct SearchBlock {
  std::size_t k = 12;
  value_t value_cap = 600;
  SearchBudget budget{};
};

/// Indices [first, last] bounded term-wise through s_n > (n - sqrt n)^2.
struct IndexRangeBlock {
  std::size_t first = 13;
  std::size_t last = 1099;
};

/// Three-block decomposition of sum 1/s_n: small indices, middle indices, tail.
struct BlockPlan {
  std::variant<SearchBlock, ExternalBlock> block1 = SearchBlock{};
  std::variant<ExternalBlock, IndexRangeBlock> block2 = IndexRangeBlock{};
  TailRule tail = TailRule::lindstrom_sharp(1100);
};

struct BlockReport {
  std::string name;
  std::string formula;
  std::string provenance;
  std::size_t first_index = 0;
  std::size_t last_index = 0;  ///< 0 with first_index set means unbounded (tail)
  Enclosure value;
  bool external = false;
};

struct DdcReport {
  Enclosure bound;  ///< [lower witness, certified upper bound]
  std::vector<BlockReport> blocks;
  std::optional<SearchResult> block1_search;
  std::string lower_source;
};

/// Salvia's lower bound 2.16027651 on the constant.
inline rational salvia_lower_bound() { return rational(mpz_class(216027651), mpz_class(100000000)); }
/// Taylor's upper bound 2.24732646 (blocks 1-3 with his tail bound).
inline rational taylor_upper_bound() { return rational(mpz_class(112366323), mpz_class(50000000)); }
/// Target of the differential reproduction, 2.247307.
inline rational improved_upper_bound() { return rational(mpz_class(2247307), mpz_class(1000000)); }
inline constexpr std::size_t taylor_tail_index = 1100;

/// sum_{n=K+1}^{N-1} 1/(n - sqrt n)^2, an upper bound for the reciprocals of
/// the Sidon elements with those indices. Zero when the range is empty.
inline Enclosure middle_block_bound(std::size_t K, std::size_t N, unsigned bits = default_precision_bits()) {
  if (K + 1 > N - 1 || N == 0) return Enclosure();
  if (K + 1 < 2) throw std::invalid_argument("middle block must start at index >= 2");
  const unsigned work = bits + 24;
  Enclosure sum;
  for (std::size_t n = K + 1; n <= N - 1; ++n) {
    Enclosure nn(rational(mpz_class(std::to_string(n))));
    Enclosure d = nn - sqrt(nn, work);
    sum += (Enclosure::integer(1) / (d * d)).rounded(work);
  }
  return sum.rounded(bits + 8);
}

/// Certified sum of 1/(1 + n(n+1)/2) for n < k: any Sidon set has
/// s_{n+1} >= 1 + n(n+1)/2, so this bounds every k-element prefix.
inline Enclosure levine_prefix_relaxation(std::size_t k) {
  rational s = 0;
  for (std::size_t n = 0; n < k; ++n) s += rational(1, static_cast<unsigned long>(levine_floor(n)));
  return Enclosure(s);
}

namespace detail {

inline void check_tail_index(const TailRule& tail, std::size_t N) {
  switch (tail.kind) {
    case TailRule::Kind::levine:
      if (N != 1) throw std::invalid_argument("Levine tail covers the whole series; earlier blocks must be empty");
      break;
    case TailRule::Kind::offset_quadratic:
      if (tail.param > lindstrom_value_floor(N))
        throw std::invalid_argument("offset-quadratic threshold exceeds the smallest possible s_" + std::to_string(N));
      break;
    default:
      if (tail.param != N)
        throw std::invalid_argument("tail index " + std::to_string(tail.param) + " does not continue at " +
                                    std::to_string(N));
  }
}

}  // namespace detail

/// hi = block1.hi + block2.hi + tail.hi (exact rational additions of
/// outward-rounded parts); lo = the witness sum when given, else Salvia's bound.
inline DdcReport ddc_upper_bound(const BlockPlan& plan, const std::optional<Sequence>& witness = std::nullopt,
                                 unsigned bits = default_precision_bits()) {
  DdcReport rep;
  std::size_t next = 1;

  BlockReport b1;
  b1.name = "block1";
  if (const auto* s = std::get_if<SearchBlock>(&plan.block1)) {
    b1.first_index = 1;
    b1.last_index = s->k;
    std::optional<SearchResult> r;
    std::string incomplete;
    try {
      r = best_k_prefix(s->k, Pattern::sidon(), rational(1), s->value_cap, s->budget, bits);
      if (r->status != SearchStatus::exact_optimum || !r->unrestricted_bound) incomplete = to_string(r->status);
    } catch (const resource_error& e) {
      incomplete = e.what();
    }
    if (incomplete.empty()) {
      b1.value = Enclosure(0, r->unrestricted_bound->hi());
      b1.formula = "max over " + std::to_string(s->k) + "-element Sidon sets of sum 1/s";
      b1.provenance = "exact branch-and-bound, value cap " + std::to_string(s->value_cap) +
                      ", optimum " + to_string(r->optimum_set, ",");
    } else {
      b1.value = Enclosure(0, levine_prefix_relaxation(s->k).hi());
      b1.formula = "sum_{n<k} 1/(1+n(n+1)/2)";
      b1.provenance = "relaxation (search incomplete: " + incomplete + ")";
    }
    rep.block1_search = std::move(r);
  } else {
    const auto& e = std::get<ExternalBlock>(plan.block1);
    if (e.first_index != 1) throw std::invalid_argument("block 1 must start at index 1");
    b1.first_index = e.first_index;
    b1.last_index = e.last_index;
    b1.value = e.value;
    b1.formula = "external constant";
    b1.provenance = e.provenance;
    b1.external = true;
  }
  next = b1.last_index + 1;

  BlockReport b2;
  b2.name = "block2";
  if (const auto* r = std::get_if<IndexRangeBlock>(&plan.block2)) {
    if (r->first != next) throw std::invalid_argument("block 2 must start right after block 1");
    b2.first_index = r->first;
    b2.last_index = r->last;
    b2.value = Enclosure(0, middle_block_bound(r->first - 1, r->last + 1, bits).hi());
    b2.formula = "sum_{n=" + std::to_string(r->first) + "}^{" + std::to_string(r->last) + "} 1/(n - sqrt n)^2";
    b2.provenance = "Lindstrom: s_n > (n - sqrt n)^2";
  } else {
    const auto& e = std::get<ExternalBlock>(plan.block2);
    if (e.first_index != next) throw std::invalid_argument("block 2 must start right after block 1");
    b2.first_index = e.first_index;
    b2.last_index = e.last_index;
    b2.value = e.value;
    b2.formula = "external constant";
    b2.provenance = e.provenance;
    b2.external = true;
  }
  if (b2.last_index + 1 < b2.first_index) throw std::invalid_argument("block 2 has a negative range");
  next = b2.last_index + 1;

  detail::check_tail_index(plan.tail, next);
  BlockReport b3;
  b3.name = "tail";
  b3.first_index = next;
  b3.value = tail_upper(plan.tail, bits);
  b3.formula = formula(plan.tail);
  b3.provenance = to_string(plan.tail);

  rational hi = b1.value.hi() + b2.value.hi() + b3.value.hi();
  rational lo = salvia_lower_bound();
  rep.lower_source = "Salvia: 2.16027651";
  if (witness) {
    if (!verify(*witness, Pattern::sidon())) throw pattern_violation("lower-bound witness is not a Sidon set");
    lo = partial_power_sum(*witness, rational(1), witness->size(), bits).lo();
    rep.lower_source = "witness of " + std::to_string(witness->size()) + " terms";
  }
  if (lo > hi) throw std::logic_error("lower witness exceeds the certified upper bound");
  rep.bound = Enclosure(lo, hi);
  rep.blocks = {std::move(b1), std::move(b2), std::move(b3)};
  return rep;
}

/// Taylor's blocks 1 + 2 recovered by difference: 2.24732646 - (2/c)/1099.
inline Enclosure taylor_old_tail(const rational& c) {
  if (c <= 0) throw std::invalid_argument("c must be > 0");
  return Enclosure(rational(2) / c / (taylor_tail_index - 1));
}

/// Plan that swaps Taylor's tail for a new tail rule at index 1100. Blocks 1
/// and 2 enter as one externally sourced constant.
inline BlockPlan differential_plan(const rational& c, TailRule tail = TailRule::lindstrom_sharp(taylor_tail_index)) {
  BlockPlan plan;
  Enclosure head = Enclosure(taylor_upper_bound()) - taylor_old_tail(c);
  plan.block1 = ExternalBlock{head,
                              "externally sourced (differential reproduction): Taylor's bound 2.24732646 minus his "
                              "tail (2/c)/1099 with c = " +
                                  (c.get_den() < 1000000 ? c.get_str() : to_decimal(c, 8, Rounding::down) + "...") +
                                  "; blocks 1 and 2 combined, not reproducible here",
                              1, taylor_tail_index - 1};
  plan.block2 = ExternalBlock{Enclosure(), "externally sourced: folded into block 1", taylor_tail_index,
                              taylor_tail_index - 1};
  plan.tail = tail;
  return plan;
}

/// Sensitivity of the differential reproduction to Taylor's constant c.
struct DifferentialAnalysis {
  rational c_max;         ///< hi <= 2.247307 exactly when c <= c_max
  Enclosure tail;         ///< new tail bound used
  rational hi_at_c_max;   ///< equals 2.247307
  rational hi_at_c_bound; ///< hi at the stated bound c = 1.9
};

inline DifferentialAnalysis analyze_differential(TailRule tail = TailRule::lindstrom_sharp(taylor_tail_index),
                                                 unsigned bits = default_precision_bits()) {
  DifferentialAnalysis a;
  a.tail = tail_upper(tail, bits);
  rational delta = taylor_upper_bound() + a.tail.hi() - improved_upper_bound();  // old tail needed
  if (delta <= 0) throw std::logic_error("new tail alone already reaches the target");
  a.c_max = rational(2) / (rational(taylor_tail_index - 1) * delta);
  auto hi_at = [&](const rational& c) -> rational { return taylor_upper_bound() - taylor_old_tail(c).hi() + a.tail.hi(); };
  a.hi_at_c_max = hi_at(a.c_max);
  a.hi_at_c_bound = hi_at(rational(19, 10));
  return a;
}

/// Default self-contained plan: exact k-prefix, middle block via (n - sqrt n)^2, tail at N.
inline BlockPlan self_contained_plan(std::size_t k = 12, std::size_t N = 1100, value_t value_cap = 600,
                                     std::optional<TailRule> tail = std::nullopt) {
  BlockPlan plan;
  plan.block1 = SearchBlock{k, value_cap, {}};
  plan.block2 = IndexRangeBlock{k + 1, N - 1};
  plan.tail = tail ? *tail : TailRule::lindstrom_sharp(N);
  return plan;
}

/// Degenerate plan: nothing but the Levine bound.
inline BlockPlan levine_plan() {
  BlockPlan plan;
  plan.block1 = ExternalBlock{Enclosure(), "empty", 1, 0};
  plan.block2 = IndexRangeBlock{1, 0};
  plan.tail = TailRule::levine();
  return plan;
}

}  // namespace sidon
