#pragma once

#include <span>
#include <vector>

#include "rsside/field_tower.hpp"

namespace rsside {

// Polynomial over F_{q^ell}, coefficients low-degree first. Trailing zeros are
// allowed; degree() ignores them.
using Poly = std::vector<Element>;

// -1 for the zero polynomial.
int degree(std::span<const Element> p);
void trim(Poly& p);

Element eval_poly(const FieldTower& t, std::span<const Element> p, Element x);
Poly poly_add(const FieldTower& t, std::span<const Element> a, std::span<const Element> b);
Poly poly_mul(const FieldTower& t, std::span<const Element> a, std::span<const Element> b);
Poly poly_scale(const FieldTower& t, Element c, std::span<const Element> p);
// p(x - a), by Horner's scheme over the shifted variable.
Poly poly_shift(const FieldTower& t, std::span<const Element> p, Element a);

}  // namespace rsside
