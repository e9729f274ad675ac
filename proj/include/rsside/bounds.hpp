#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace rsside {

using i128 = __int128;

// Exact nonnegative rational, kept reduced.
struct Rational {
  i128 num = 0;
  i128 den = 1;

  static Rational make(i128 num, i128 den);
  std::string str() const;  // "6" or "9/2"
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::string to_string(i128 v);

struct LowerBoundReport {
  std::uint64_t q = 0, ell = 0, s = 0, n = 0, k = 0, r = 0;
  Rational T_thresh;       // ((r-1)(q^{ell-s}-1) + n-1) / q^{ell-s}
  double b_ave = 0;        // log_q((n-1)/T_thresh), display only
  bool b_ave_integral = false;
  std::uint64_t b_floor = 0;
  std::uint64_t b_ceil = 0;
  std::uint64_t t = 0;
  std::uint64_t bound = 0;
};

// Minimum bandwidth of any linear repair scheme for one erasure with s side
// traces. Integrality and t are decided in exact integer arithmetic.
LowerBoundReport lower_bound(std::uint64_t q, std::uint64_t ell, std::uint64_t s, std::uint64_t n, std::uint64_t k);

// (q^ell - 1)(ell - s) - (q^{ell-s} - 1)(q^m - 1)/(q - 1) for full-length codes
// with n - k = q^m; cross-checked against lower_bound.
std::uint64_t closed_form_bound(std::uint64_t q, std::uint64_t ell, std::uint64_t s, std::uint64_t m);

struct ReductionReport {
  std::uint64_t bw_with_side = 0;
  std::uint64_t bw_without_side = 0;  // (q^ell - 1)(ell - m), the s = 0 optimum for n - k = q^m
  std::uint64_t saving = 0;
  // Set when ell - s divides ell and m divides ell with ell/m >= 2.
  std::optional<std::string> regime;  // "case1" (s = ell - 1) or "case2"
  std::optional<std::uint64_t> c, d;
};

ReductionReport reduction_report(std::uint64_t q, std::uint64_t ell, std::uint64_t s, std::uint64_t m);

// CSV with header q,ell,s,n,k,T_thresh,b_ave,t,bound and one row per s = 0..ell.
std::string bound_sweep_csv(std::uint64_t q, std::uint64_t ell, std::uint64_t n, std::uint64_t k);
std::string bound_csv_header();
std::string bound_csv_row(const LowerBoundReport& r);

}  // namespace rsside
