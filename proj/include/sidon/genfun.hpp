#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <optional>
#include <vector>

#include "sidon/enclosure.hpp"
#include "sidon/errors.hpp"
#include "sidon/sequence.hpp"
#include "sidon/tail.hpp"
#include "sidon/verify.hpp"

namespace sidon {

// ---------------------------------------------------------------------------
// f_S(t) = sum_{s in S} t^s
// ---------------------------------------------------------------------------

enum class Extension {
  none,          ///< the finite sum itself
  all_ones_tail  ///< any 0/1 continuation past max(S): adds up to t^(M+1)/(1-t)
};

/// Enclosure of f_seq(t) for rational t in (0,1). Terms and partial sums are
/// accumulated in MPFR with separate downward and upward accumulators.
inline Enclosure eval_genfun(const Sequence& seq, const rational& t, Extension ext = Extension::none,
                             unsigned bits = default_precision_bits()) {
  if (t <= 0 || t >= 1) throw std::domain_error("generating function evaluated outside (0,1)");
  const unsigned work = bits + 32;
  detail::Mpfr t_lo(t, work, MPFR_RNDD), t_hi(t, work, MPFR_RNDU);
  detail::Mpfr lo(work), hi(work), term(work);
  mpfr_set_ui(lo.get(), 0, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 0, MPFR_RNDN);
  for (value_t s : seq) {
    mpfr_pow_ui(term.get(), t_lo.get(), s, MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
    mpfr_pow_ui(term.get(), t_hi.get(), s, MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
  }
  if (ext == Extension::all_ones_tail) {
    detail::Mpfr one_minus(work);
    mpfr_ui_sub(one_minus.get(), 1, t_hi.get(), MPFR_RNDD);
    mpfr_pow_ui(term.get(), t_hi.get(), seq.max() + 1, MPFR_RNDU);
    mpfr_div(term.get(), term.get(), one_minus.get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
  }
  return Enclosure(lo.to_rational(), hi.to_rational());
}

// ---------------------------------------------------------------------------
// Envelope f_S(t) <= sqrt(2g t / (1 - t))
// ---------------------------------------------------------------------------

/// Sample points strictly inside (0,1).
struct GridSpec {
  std::vector<rational> points;
  value_t truncation_degree = 0;

  void validate() const {
    for (const auto& p : points)
      if (p <= 0 || p >= 1) throw std::invalid_argument("grid points must lie in (0,1)");
  }
};

/// n points t_i = sin(pi/2 * (i + 1/2) / n): Chebyshev-type spacing that
/// crowds toward t -> 1, where the envelope and f_S both blow up.
inline GridSpec chebyshev_grid(std::size_t n = 200) {
  GridSpec g;
  const double half_pi = std::acos(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double t = std::sin(half_pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n));
    g.points.emplace_back(t);
  }
  return g;
}

inline GridSpec uniform_grid(std::size_t n) {
  GridSpec g;
  for (std::size_t i = 1; i <= n; ++i) g.points.emplace_back(rational(static_cast<long>(i), static_cast<long>(n + 1)));
  return g;
}

struct EnvelopeRow {
  rational t;
  Enclosure f;
  Enclosure envelope;
  Enclosure slack;  ///< envelope - f
};

struct EnvelopeReport {
  std::vector<EnvelopeRow> rows;
  rational min_slack_lo;            ///< certified lower bound on the smallest slack
  std::optional<rational> violation;  ///< a t where f(t) > envelope(t) for certain
  bool passed = false;              ///< every slack certified > 0 (grid evidence, not a proof)
};

/// Checks the finite f_S against sqrt(2g t/(1-t)) on the grid. The finite sum
/// under-approximates any extension, so a certified violation is a genuine
/// counterexample. g = 1 is the Sidon envelope.
inline EnvelopeReport envelope_check(const Sequence& seq, const GridSpec& grid, int g = 1,
                                     unsigned bits = default_precision_bits()) {
  grid.validate();
  const Pattern p = g == 1 ? Pattern::sidon() : Pattern::bhg(2, g);
  if (!verify(seq, p)) throw pattern_violation("envelope_check requires a " + to_string(p) + " sequence");
  EnvelopeReport rep;
  bool first = true;
  rep.passed = true;
  for (const auto& t : grid.points) {
    Enclosure f = eval_genfun(seq, t, Extension::none, bits);
    Enclosure arg = Enclosure(t * (2 * g)) / Enclosure(1 - t);
    Enclosure env = sqrt(arg, bits);
    Enclosure slack = env - f;
    if (first || slack.lo() < rep.min_slack_lo) rep.min_slack_lo = slack.lo();
    first = false;
    if (slack.hi() < 0 && !rep.violation) rep.violation = t;
    if (slack.lo() <= 0) rep.passed = false;
    rep.rows.push_back({t, f, env, slack});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Mellin / Gamma identity: sum s^-a = 1/Gamma(a) * int_0^1 f_S(u) (-ln u)^(a-1) / u du
// ---------------------------------------------------------------------------

struct QuadratureSpec {
  double tolerance = 1e-12;        ///< relative tolerance handed to the integrator
  double max_error = 1e-9;         ///< absolute error estimate above which the run fails
};

struct MellinReport {
  double integral = 0;
  double error_estimate = 0;
  std::size_t levels = 0;
  double direct = 0;
  Enclosure direct_enclosure;
  double discrepancy = 0;
};

/// Evaluates the integral side after u = e^-x, i.e.
/// 1/Gamma(a) * int_0^inf sum_s e^(-s x) x^(a-1) dx, with exp-sinh quadrature
/// (double-exponential clustering handles the x^(a-1) singularity at 0).
inline MellinReport mellin_crosscheck(const Sequence& seq, const rational& alpha, const QuadratureSpec& quad = {},
                                      unsigned bits = default_precision_bits()) {
  if (alpha <= rational(1, 2)) throw std::invalid_argument("the Mellin identity is used for alpha > 1/2");
  if (seq.empty()) throw std::invalid_argument("mellin_crosscheck needs a non-empty sequence");
  const double a = alpha.get_d();
  const double inv_gamma = 1.0 / std::tgamma(a);
  std::vector<double> s(seq.begin(), seq.end());
  auto integrand = [&](double x) {
    double acc = 0;
    for (double v : s) {
      double e = std::exp(-v * x);
      if (e == 0) break;  // later terms are smaller still
      acc += e;
    }
    return acc * std::pow(x, a - 1) * inv_gamma;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  MellinReport rep;
  double l1 = 0;
  rep.integral = integrator.integrate(integrand, quad.tolerance, &rep.error_estimate, &l1, &rep.levels);
  if (!(rep.error_estimate <= quad.max_error))
    throw quadrature_error("Mellin quadrature did not converge", rep.error_estimate);
  rep.direct_enclosure = partial_power_sum(seq, alpha, seq.size(), bits);
  rep.direct = rational((rep.direct_enclosure.lo() + rep.direct_enclosure.hi()) / 2).get_d();
  rep.discrepancy = std::abs(rep.integral - rep.direct);
  return rep;
}

// ---------------------------------------------------------------------------
// L^alpha probe and Wallis moment
// ---------------------------------------------------------------------------

struct LAlphaReport {
  double value = 0;
  double error_estimate = 0;
  std::optional<rational> ceiling;  ///< 2 / (1 - alpha/2) when alpha < 2
};

/// Quadrature estimate of int_0^1 f_S(t)^alpha dt for the finite sequence.
/// For alpha < 2 the pointwise bound f^alpha <= 2 (1-t)^(-alpha/2) gives the
/// ceiling 2/(1 - alpha/2); at alpha >= 2 no ceiling is reported.
inline LAlphaReport lalpha_probe(const Sequence& seq, const rational& alpha, const QuadratureSpec& quad = {}) {
  if (alpha <= 0) throw std::invalid_argument("alpha must be > 0");
  if (!verify(seq, Pattern::sidon())) throw pattern_violation("lalpha_probe requires a Sidon sequence");
  const double a = alpha.get_d();
  std::vector<double> s(seq.begin(), seq.end());
  auto f = [&](double t, double tc) {
    // tc = 1 - t to full precision near the right endpoint
    double acc = 0;
    double log_t = t > 0.5 ? std::log1p(-tc) : std::log(t);
    for (double v : s) acc += std::exp(v * log_t);
    return std::pow(acc, a);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  LAlphaReport rep;
  double l1 = 0;
  std::size_t levels = 0;
  rep.value = integrator.integrate(f, 0.0, 1.0, quad.tolerance, &rep.error_estimate, &l1, &levels);
  if (!(rep.error_estimate <= std::max(quad.max_error, 1e-9 * std::abs(rep.value))))
    throw quadrature_error("L^alpha quadrature did not converge", rep.error_estimate);
  if (alpha < 2) rep.ceiling = rational(2) / (1 - alpha / 2);
  return rep;
}

/// int_0^1 t^s / sqrt(1 - t) dt by tanh-sinh quadrature (singular at t = 1).
/// Equals 2 * int_0^{pi/2} sin^(2s+1) x dx ~ sqrt(pi) / sqrt(s).
inline double sqrt_weight_moment(double s) {
  auto f = [s](double t, double tc) {
    double log_t = t > 0.5 ? std::log1p(-tc) : std::log(t);
    double one_minus = t > 0.5 ? tc : 1 - t;
    return std::exp(s * log_t) / std::sqrt(one_minus);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Coefficient identities
// ---------------------------------------------------------------------------

/// Coefficients of (f_S(z)^2 + f_S(z^2)) / 2 through degree n_max, by direct
/// polynomial convolution of the 0/1 indicator series.
inline std::vector<std::uint64_t> pair_map_coefficients(const Sequence& seq, std::size_t n_max) {
  std::vector<std::uint64_t> ind(n_max + 1, 0), out(n_max + 1, 0);
  for (value_t v : seq)
    if (v <= n_max) ind[static_cast<std::size_t>(v)] = 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::uint64_t square = 0;
    for (std::size_t k = 0; k <= n; ++k) square += ind[k] * ind[n - k];
    std::uint64_t dilated = (n % 2 == 0) ? ind[n / 2] : 0;
    out[n] = (square + dilated) / 2;
  }
  return out;
}

/// c_n = sum_k 1_F(k) 1_F(n-k) + (n+1) 1_F(n), coefficients of f^2 + (z f)'.
inline std::vector<std::uint64_t> sum_free_coefficients(const Sequence& seq, std::size_t n_max) {
  std::vector<std::uint64_t> ind(n_max + 1, 0), out(n_max + 1, 0);
  for (value_t v : seq)
    if (v <= n_max) ind[static_cast<std::size_t>(v)] = 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::uint64_t square = 0;
    for (std::size_t k = 0; k <= n; ++k) square += ind[k] * ind[n - k];
    out[n] = square + (n + 1) * ind[n];
  }
  return out;
}

/// Sum-free iff c_n <= n + 1 for every n (n up to 2 max(F) suffices).
inline bool sum_free_by_coefficients(const Sequence& seq) {
  const std::size_t n_max = static_cast<std::size_t>(2 * seq.max());
  auto c = sum_free_coefficients(seq, n_max);
  for (std::size_t n = 0; n <= n_max; ++n)
    if (c[n] > n + 1) return false;
  return true;
}

}  // namespace sidon
