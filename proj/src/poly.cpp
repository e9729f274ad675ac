#include "rsside/poly.hpp"

#include <algorithm>

namespace rsside {

int degree(std::span<const Element> p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (!p[i].is_zero()) return static_cast<int>(i);
  return -1;
}

void trim(Poly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }

Element eval_poly(const FieldTower& t, std::span<const Element> p, Element x) {
  Element acc = t.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = t.add(t.mul(acc, x), p[i]);
  return acc;
}

Poly poly_add(const FieldTower& t, std::span<const Element> a, std::span<const Element> b) {
  Poly r(std::max(a.size(), b.size()), t.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = t.add(r[i], b[i]);
  return r;
}

Poly poly_mul(const FieldTower& t, std::span<const Element> a, std::span<const Element> b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, t.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = t.add(r[i + j], t.mul(a[i], b[j]));
  }
  return r;
}

Poly poly_scale(const FieldTower& t, Element c, std::span<const Element> p) {
  Poly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = t.mul(c, p[i]);
  return r;
}

Poly poly_shift(const FieldTower& t, std::span<const Element> p, Element a) {
  // acc <- acc * (x - a) + p_i, from the top coefficient down.
  const Poly linear{t.neg(a), t.one()};
  Poly acc;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = poly_mul(t, acc, linear);
    if (acc.empty()) acc.push_back(t.zero());
    acc[0] = t.add(acc[0], p[i]);
  }
  return acc;
}

}  // namespace rsside
