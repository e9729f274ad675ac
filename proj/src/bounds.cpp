#include "rsside/bounds.hpp"

#include <cmath>
#include <cstdio>

#include "rsside/errors.hpp"
#include "rsside/field_tower.hpp"

namespace rsside {

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

i128 pow128(i128 b, std::uint64_t e) {
  i128 r = 1;
  while (e--) r *= b;
  return r;
}

void check_q(std::uint64_t q, std::uint64_t ell) {
  require(prime_power(q).has_value(), "q = " + std::to_string(q) + " is not a prime power");
  require(ell >= 1, "ell must be >= 1");
  require(static_cast<double>(ell) * std::log2(static_cast<double>(q)) <= 40, "q^ell exceeds 2^40");
}

}  // namespace

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return neg ? "-" + s : s;
}

Rational Rational::make(i128 num, i128 den) {
  require(den != 0, "zero denominator");
  if (den < 0) num = -num, den = -den;
  const i128 g = gcd128(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::str() const { return den == 1 ? to_string(num) : to_string(num) + "/" + to_string(den); }

LowerBoundReport lower_bound(std::uint64_t q, std::uint64_t ell, std::uint64_t s, std::uint64_t n, std::uint64_t k) {
  check_q(q, ell);
  const i128 Q = pow128(q, ell);
  require(k >= 1 && k < n && static_cast<i128>(n) <= Q,
          "need 1 <= k < n <= q^ell (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  require(s <= ell, "need 0 <= s <= ell (got s=" + std::to_string(s) + ", ell=" + std::to_string(ell) + ")");
  LowerBoundReport rep{q, ell, s, n, k, n - k, {}, 0, false, 0, 0, 0, 0};
  const i128 Qs = pow128(q, ell - s);
  const i128 D = static_cast<i128>(rep.r - 1) * (Qs - 1) + static_cast<i128>(n - 1);
  const i128 N = static_cast<i128>(n - 1) * Qs;  // (n-1)/T = N/D >= 1
  rep.T_thresh = Rational::make(D, Qs);
  rep.b_ave = std::log(static_cast<double>(N) / static_cast<double>(D)) / std::log(static_cast<double>(q));

  std::uint64_t f = 0;
  i128 qf = 1;
  while (qf * q * D <= N) qf *= q, ++f;
  rep.b_floor = f;
  rep.b_ave_integral = (qf * D == N);
  if (rep.b_ave_integral) {
    rep.b_ceil = f;
    rep.t = n - 1;
  } else {
    rep.b_ceil = f + 1;
    // t = floor((T - (n-1) q^{-c}) / (q^{-f} - q^{-c})), denominators cleared.
    const i128 num = D * qf * q - N;
    const i128 den = Qs * (q - 1);
    rep.t = static_cast<std::uint64_t>(num / den);
  }
  ensure(rep.t <= n - 1, "t out of range");
  rep.bound = rep.t * rep.b_floor + (n - 1 - rep.t) * rep.b_ceil;
  return rep;
}

std::uint64_t closed_form_bound(std::uint64_t q, std::uint64_t ell, std::uint64_t s, std::uint64_t m) {
  check_q(q, ell);
  require(s < ell, "need s < ell");
  require(m >= 1 && m < ell, "need 1 <= m < ell");
  require(ell % (ell - s) == 0, "divisibility condition (ell - s) | ell fails");
  require(ell >= m * (ell - s), "inequality ell >= m (ell - s) fails: " + std::to_string(ell) + " < " +
                                    std::to_string(m * (ell - s)));
  const i128 Q = pow128(q, ell);
  const i128 v = (Q - 1) * static_cast<i128>(ell - s) - (pow128(q, ell - s) - 1) * (pow128(q, m) - 1) / (q - 1);
  const auto lb = lower_bound(q, ell, s, static_cast<std::uint64_t>(Q), static_cast<std::uint64_t>(Q - pow128(q, m)));
  ensure(static_cast<i128>(lb.bound) == v, "closed form " + to_string(v) + " disagrees with the general bound " +
                                               std::to_string(lb.bound));
  return static_cast<std::uint64_t>(v);
}

ReductionReport reduction_report(std::uint64_t q, std::uint64_t ell, std::uint64_t s, std::uint64_t m) {
  ReductionReport rep;
  rep.bw_with_side = closed_form_bound(q, ell, s, m);
  const i128 Q = pow128(q, ell);
  const auto base = lower_bound(q, ell, 0, static_cast<std::uint64_t>(Q), static_cast<std::uint64_t>(Q - pow128(q, m)));
  rep.bw_without_side = base.bound;
  ensure(static_cast<i128>(rep.bw_without_side) == (Q - 1) * static_cast<i128>(ell - m),
         "s = 0 baseline differs from (q^ell - 1)(ell - m)");
  ensure(rep.bw_without_side >= rep.bw_with_side, "side information increased the bound");
  rep.saving = rep.bw_without_side - rep.bw_with_side;
  const i128 decomposed = (Q - 1) * (static_cast<i128>(s) - static_cast<i128>(m)) +
                          (pow128(q, ell - s) - 1) * (pow128(q, m) - 1) / (q - 1);
  ensure(decomposed == static_cast<i128>(rep.saving), "saving decomposition mismatch");

  if (ell % m == 0 && ell / m >= 2) {
    const std::uint64_t d = ell / m;
    const std::uint64_t c = ell / (ell - s);
    rep.c = c;
    rep.d = d;
    if (s == ell - 1) {
      rep.regime = "case1";
      ensure(static_cast<i128>(rep.bw_with_side) == (Q - 1) - (pow128(q, ell / d) - 1), "case 1 bw_SI mismatch");
      ensure(static_cast<i128>(rep.bw_without_side) * static_cast<i128>(d) == (Q - 1) * static_cast<i128>((d - 1) * ell),
             "case 1 baseline mismatch");
    } else if (c >= 2) {
      rep.regime = "case2";
      ensure(static_cast<i128>(rep.bw_with_side) * static_cast<i128>(c) * (q - 1) ==
                 (Q - 1) * static_cast<i128>(ell) * (q - 1) -
                     static_cast<i128>(c) * (pow128(q, ell / c) - 1) * (pow128(q, ell / d) - 1),
             "case 2 bw_SI mismatch");
    }
  }
  return rep;
}

std::string bound_csv_header() { return "q,ell,s,n,k,T_thresh,b_ave,t,bound\n"; }

std::string bound_csv_row(const LowerBoundReport& r) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6f", r.b_ave);
  return std::to_string(r.q) + "," + std::to_string(r.ell) + "," + std::to_string(r.s) + "," + std::to_string(r.n) +
         "," + std::to_string(r.k) + "," + r.T_thresh.str() + "," + b + "," + std::to_string(r.t) + "," +
         std::to_string(r.bound) + "\n";
}

std::string bound_sweep_csv(std::uint64_t q, std::uint64_t ell, std::uint64_t n, std::uint64_t k) {
  std::string out = bound_csv_header();
  for (std::uint64_t s = 0; s <= ell; ++s) out += bound_csv_row(lower_bound(q, ell, s, n, k));
  return out;
}

}  // namespace rsside
