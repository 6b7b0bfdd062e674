#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sidon {

using rational = mpq_class;

/// Working precision (MPFR significand bits) used when none is given.
/// Overridable at run time through SIDON_BITS.
inline unsigned default_precision_bits() {
  if (const char* env = std::getenv("SIDON_BITS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 32 && v <= 1u << 16) return static_cast<unsigned>(v);
  }
  return 128;
}

/// Closed interval [lo, hi] of exact rationals that contains a real value.
/// Arithmetic is exact on the endpoints, so containment is preserved by
/// construction; transcendental inputs come from the outward-rounded
/// routines further down.
class Enclosure {
 public:
  Enclosure() : lo_(0), hi_(0) {}
  explicit Enclosure(const rational& exact) : lo_(exact), hi_(exact) {}
  Enclosure(rational lo, rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    lo_.canonicalize();
    hi_.canonicalize();
    if (lo_ > hi_) throw std::invalid_argument("enclosure requires lo <= hi");
  }
  static Enclosure integer(long v) { return Enclosure(rational(v)); }

  const rational& lo() const noexcept { return lo_; }
  const rational& hi() const noexcept { return hi_; }
  rational width() const { return hi_ - lo_; }
  bool is_exact() const { return lo_ == hi_; }
  bool contains(const rational& q) const { return lo_ <= q && q <= hi_; }
  bool intersects(const Enclosure& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool positive() const { return lo_ > 0; }

  /// Outward rounding of both endpoints to multiples of 2^-frac_bits.
  Enclosure rounded(unsigned frac_bits) const {
    mpz_class scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), frac_bits);
    mpz_class lo_num = lo_.get_num() * scale, hi_num = hi_.get_num() * scale;
    mpz_class lo_q, hi_q;
    mpz_fdiv_q(lo_q.get_mpz_t(), lo_num.get_mpz_t(), lo_.get_den_mpz_t());
    mpz_cdiv_q(hi_q.get_mpz_t(), hi_num.get_mpz_t(), hi_.get_den_mpz_t());
    return Enclosure(rational(lo_q, scale), rational(hi_q, scale));
  }

  Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
  Enclosure& operator+=(const Enclosure& o) {
    lo_ += o.lo_;
    hi_ += o.hi_;
    return *this;
  }
  Enclosure& operator-=(const Enclosure& o) {
    rational lo = lo_ - o.hi_;
    hi_ -= o.lo_;
    lo_ = std::move(lo);
    return *this;
  }
  friend Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
  friend Enclosure operator-(Enclosure a, const Enclosure& b) { return a -= b; }
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return Enclosure(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.lo_ <= 0 && b.hi_ >= 0) throw std::domain_error("division by an enclosure containing 0");
    return a * Enclosure(1 / b.hi_, 1 / b.lo_);
  }
  friend Enclosure operator*(const Enclosure& a, const rational& q) { return a * Enclosure(q); }
  friend Enclosure operator/(const Enclosure& a, const rational& q) { return a / Enclosure(q); }

  /// Smallest enclosure containing both.
  friend Enclosure hull(const Enclosure& a, const Enclosure& b) {
    return Enclosure(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  }

 private:
  rational lo_, hi_;
};

// ---------------------------------------------------------------------------
// Outward-rounded elementary functions (MPFR, correctly rounded)
// ---------------------------------------------------------------------------

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  Mpfr(const rational& q, unsigned bits, mpfr_rnd_t rnd) : Mpfr(bits) { mpfr_set_q(v_, q.get_mpq_t(), rnd); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  rational to_rational() const {
    if (!mpfr_number_p(v_)) throw std::domain_error("non-finite MPFR result");
    rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

using UnaryMpfr = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

inline Enclosure increasing(const Enclosure& x, UnaryMpfr fn, unsigned bits) {
  Mpfr a(x.lo(), bits, MPFR_RNDD), b(x.hi(), bits, MPFR_RNDU);
  Mpfr lo(bits), hi(bits);
  fn(lo.get(), a.get(), MPFR_RNDD);
  fn(hi.get(), b.get(), MPFR_RNDU);
  return Enclosure(lo.to_rational(), hi.to_rational());
}

}  // namespace detail

inline Enclosure pi_enclosure(unsigned bits = default_precision_bits()) {
  detail::Mpfr lo(bits), hi(bits);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return Enclosure(lo.to_rational(), hi.to_rational());
}

inline Enclosure sqrt(const Enclosure& x, unsigned bits = default_precision_bits()) {
  if (x.lo() < 0) throw std::domain_error("sqrt of an enclosure reaching below 0");
  return detail::increasing(x, mpfr_sqrt, bits);
}

inline Enclosure log(const Enclosure& x, unsigned bits = default_precision_bits()) {
  if (x.lo() <= 0) throw std::domain_error("log of an enclosure reaching 0");
  return detail::increasing(x, mpfr_log, bits);
}

inline Enclosure exp(const Enclosure& x, unsigned bits = default_precision_bits()) {
  return detail::increasing(x, mpfr_exp, bits);
}

inline Enclosure tanh(const Enclosure& x, unsigned bits = default_precision_bits()) {
  return detail::increasing(x, mpfr_tanh, bits);
}

/// base^exponent for base > 0. Monotone in each argument separately, so the
/// extremes sit on the corners of the (base, exponent) box.
inline Enclosure pow(const Enclosure& base, const rational& exponent, unsigned bits = default_precision_bits()) {
  if (base.lo() <= 0) throw std::domain_error("pow requires a positive base");
  if (exponent.get_den() == 1 && mpz_fits_slong_p(exponent.get_num_mpz_t())) {
    // exact integer powers
    long e = exponent.get_num().get_si();
    auto ipow = [&](const rational& b) {
      rational r = 1;
      mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(std::labs(e)));
      mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(std::labs(e)));
      r.canonicalize();
      return e < 0 ? rational(1 / r) : r;
    };
    rational a = ipow(base.lo()), b = ipow(base.hi());
    return Enclosure(std::min(a, b), std::max(a, b));
  }
  detail::Mpfr e_lo(exponent, bits, MPFR_RNDD), e_hi(exponent, bits, MPFR_RNDU);
  detail::Mpfr b_lo(base.lo(), bits, MPFR_RNDD), b_hi(base.hi(), bits, MPFR_RNDU);
  rational lo, hi;
  bool first = true;
  for (mpfr_srcptr b : {b_lo.get(), b_hi.get()})
    for (mpfr_srcptr e : {e_lo.get(), e_hi.get()}) {
      detail::Mpfr d(bits), u(bits);
      mpfr_pow(d.get(), b, e, MPFR_RNDD);
      mpfr_pow(u.get(), b, e, MPFR_RNDU);
      rational dq = d.to_rational(), uq = u.to_rational();
      if (first || dq < lo) lo = dq;
      if (first || uq > hi) hi = uq;
      first = false;
    }
  return Enclosure(lo, hi);
}

// ---------------------------------------------------------------------------
// Rendering and parsing
// ---------------------------------------------------------------------------

enum class Rounding { down, up };

/// Decimal string with exactly `digits` fractional digits, rounded in the given direction.
inline std::string to_decimal(const rational& q, int digits, Rounding dir) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0)));
  mpz_class num = q.get_num() * scale, r;
  if (dir == Rounding::down)
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  else
    mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  bool neg = r < 0;
  if (neg) r = -r;
  std::string s = r.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) - s.size() + 1, '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return neg ? "-" + s : s;
}

/// "lo ≤ x ≤ hi" with lo floored and hi ceiled; a single value when exact at that resolution.
inline std::string render(const Enclosure& e, int digits) {
  std::string lo = to_decimal(e.lo(), digits, Rounding::down);
  std::string hi = to_decimal(e.hi(), digits, Rounding::up);
  if (e.is_exact() && lo == hi) return lo;
  return lo + " ≤ x ≤ " + hi;
}

inline double to_double(const rational& q) { return q.get_d(); }

/// Parses "3", "3/4", "0.75", "-1.5".
inline rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      rational q(mpz_class(text.substr(0, slash), 10), mpz_class(text.substr(slash + 1), 10));
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      q.canonicalize();
      return q;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return rational(mpz_class(text, 10));
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (frac.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("bad digits");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    rational q(mpz_class(whole + frac, 10), den);
    q.canonicalize();
    return neg ? rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

inline std::string to_string(const rational& q) { return q.get_str(); }

}  // namespace sidon
