#include "rsside/field_tower.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "rsside/errors.hpp"

namespace rsside {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  for (std::uint64_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) return std::nullopt;
    unsigned e = 0;
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    if (q != 1) return std::nullopt;
    return std::make_pair(static_cast<unsigned>(p), e);
  }
  return std::nullopt;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Minimal field interface over packed values in [0, size).
struct PrimeOps {
  std::uint32_t p;
  std::uint32_t size() const { return p; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
  }
};

struct BaseOps {
  const FieldTower* t;
  std::uint32_t size() const { return t->q(); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return t->base_add(a, b); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return t->base_sub(a, b); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return t->base_mul(a, b); }
};

// f mod g for monic g; coefficients low-degree first.
template <class Ops>
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> f, const std::vector<std::uint32_t>& g,
                                    const Ops& ops) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t d = f.size(); d-- > dg;) {
    const std::uint32_t c = f[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) f[d - dg + i] = ops.sub(f[d - dg + i], ops.mul(c, g[i]));
  }
  f.resize(std::min(f.size(), dg));
  return f;
}

// Trial division by every monic polynomial of degree 1..deg/2.
template <class Ops>
bool poly_irreducible(const std::vector<std::uint32_t>& f, const Ops& ops) {
  const std::size_t deg = f.size() - 1;
  const std::uint32_t fs = ops.size();
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(fs, static_cast<unsigned>(d));
    std::vector<std::uint32_t> g(d + 1);
    g[d] = 1;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t v = t;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % fs);
        v /= fs;
      }
      const auto r = poly_mod(f, g, ops);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; })) return false;
    }
  }
  return true;
}

template <class Ops>
std::vector<std::uint32_t> smallest_irreducible(unsigned degree, const Ops& ops) {
  const std::uint32_t fs = ops.size();
  const std::uint64_t count = ipow(fs, degree);
  std::vector<std::uint32_t> f(degree + 1);
  f[degree] = 1;
  for (std::uint64_t t = 0; t < count; ++t) {
    std::uint64_t v = t;
    for (unsigned i = 0; i < degree; ++i) {
      f[i] = static_cast<std::uint32_t>(v % fs);
      v /= fs;
    }
    if (f[0] == 0) continue;
    if (poly_irreducible(f, ops)) return f;
  }
  throw InvariantError("no irreducible polynomial found");
}

std::uint32_t add_digits(std::uint32_t a, std::uint32_t b, std::uint32_t p, std::size_t ndigits,
                         bool subtract) {
  if (p == 2) return a ^ b;
  std::uint32_t r = 0;
  std::uint32_t place = 1;
  for (std::size_t i = 0; i < ndigits; ++i) {
    const std::uint32_t da = a % p;
    const std::uint32_t db = b % p;
    a /= p;
    b /= p;
    const std::uint32_t d = subtract ? (da + p - db) % p : (da + db) % p;
    r += d * place;
    place *= p;
  }
  return r;
}

void check_modulus(const std::vector<std::uint32_t>& m, std::size_t degree, std::uint32_t field_size,
                   const char* which) {
  require(m.size() == degree + 1, std::string(which) + " modulus must have degree " + std::to_string(degree));
  require(m.back() == 1, std::string(which) + " modulus must be monic");
  for (auto c : m) require(c < field_size, std::string(which) + " modulus coefficient out of range");
}

}  // namespace

TowerPtr make_tower(unsigned p, unsigned e, unsigned ell, std::optional<Moduli> moduli) {
  require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
  require(e >= 1, "base extension degree e must be >= 1");
  require(ell >= 1, "top extension degree ell must be >= 1");
  const std::uint64_t q = ipow(p, e);
  const std::uint64_t size = ipow(q, ell);
  require(size <= kTowerSizeBudget,
          "field size q^ell = " + std::to_string(p) + "^" + std::to_string(e * ell) + " exceeds 2^20");

  std::shared_ptr<FieldTower> t(new FieldTower());
  t->params_.p = p;
  t->params_.e = e;
  t->params_.ell = ell;
  t->q_ = static_cast<std::uint32_t>(q);
  t->size_ = static_cast<std::uint32_t>(size);
  t->order_ = t->size_ - 1;
  t->qpow_.resize(ell + 1);
  for (unsigned i = 0; i <= ell; ++i) t->qpow_[i] = static_cast<std::uint32_t>(ipow(q, i));
  t->ppow_.resize(e * ell + 1);
  for (unsigned i = 0; i <= e * ell; ++i) t->ppow_[i] = static_cast<std::uint32_t>(ipow(p, i));

  const PrimeOps fp{p};
  if (moduli) {
    check_modulus(moduli->base, e, p, "base");
    require(poly_irreducible(moduli->base, fp), "base modulus is reducible over F_p");
    t->params_.base_modulus = moduli->base;
  } else {
    t->params_.base_modulus = smallest_irreducible(e, fp);
  }

  // Base-field tables: needed before the top modulus can be checked over F_q.
  {
    const std::uint32_t bq = t->q_;
    t->base_exp_.assign(bq - 1, 0);
    t->base_log_.assign(bq, 0);
    const auto factors = prime_factors(bq - 1);
    std::uint32_t gen = 1;
    for (std::uint32_t c = 1; c < bq; ++c) {
      bool primitive = true;
      for (auto f : factors) {
        std::uint32_t acc = 1;
        for (std::uint64_t k = 0; k < (bq - 1) / f; ++k) acc = t->base_mul_reference(acc, c);
        if (acc == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = c;
        break;
      }
    }
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i + 1 < bq; ++i) {
      t->base_exp_[i] = x;
      t->base_log_[x] = i;
      x = t->base_mul_reference(x, gen);
    }
    ensure(bq == 2 || x == 1, "base generator order mismatch");
  }

  const BaseOps fq{t.get()};
  if (moduli) {
    check_modulus(moduli->top, ell, t->q_, "top");
    require(poly_irreducible(moduli->top, fq), "top modulus is reducible over F_q");
    t->params_.top_modulus = moduli->top;
  } else {
    t->params_.top_modulus = smallest_irreducible(ell, fq);
  }

  t->build_tables();
  return t;
}

void FieldTower::build_tables() {
  exp_.assign(order_, 0);
  log_.assign(size_, std::numeric_limits<std::uint32_t>::max());
  const auto factors = prime_factors(order_);
  primitive_ = one();
  for (std::uint32_t c = 1; c < size_; ++c) {
    bool ok = true;
    for (auto f : factors) {
      if (pow_reference(Element{c}, order_ / f) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      primitive_ = Element{c};
      break;
    }
  }
  Element x = one();
  for (std::uint32_t i = 0; i < order_; ++i) {
    ensure(log_[x.index] == std::numeric_limits<std::uint32_t>::max(), "primitive element has short order");
    exp_[i] = x.index;
    log_[x.index] = i;
    x = mul_reference(x, primitive_);
  }
}

Element FieldTower::element(std::uint32_t index) const {
  require(index < size_, "element index out of range");
  return Element{index};
}

Element FieldTower::embed(SubSymbol c) const {
  require(c < q_, "F_q value out of range");
  return Element{c};
}

Element FieldTower::add(Element a, Element b) const {
  return Element{add_digits(a.index, b.index, params_.p, params_.e * params_.ell, false)};
}

Element FieldTower::sub(Element a, Element b) const {
  return Element{add_digits(a.index, b.index, params_.p, params_.e * params_.ell, true)};
}

Element FieldTower::neg(Element a) const { return sub(zero(), a); }

Element FieldTower::mul(Element a, Element b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  std::uint32_t s = log_[a.index] + log_[b.index];
  if (s >= order_) s -= order_;
  return Element{exp_[s]};
}

Element FieldTower::inv(Element a) const {
  if (a.is_zero()) throw PreconditionError("inverse of zero");
  const std::uint32_t l = log_[a.index];
  return Element{exp_[l == 0 ? 0 : order_ - l]};
}

Element FieldTower::pow(Element a, std::uint64_t exponent) const {
  if (exponent == 0) return one();
  if (a.is_zero()) return zero();
  const std::uint64_t l = (std::uint64_t{log_[a.index]} * (exponent % order_)) % order_;
  return Element{exp_[l]};
}

Element FieldTower::frobenius(Element a) const { return pow(a, q_); }

Element FieldTower::scale(SubSymbol c, Element a) const { return mul(embed(c), a); }

std::uint32_t FieldTower::log(Element a) const {
  require(!a.is_zero(), "log of zero");
  return log_[a.index];
}

SubSymbol FieldTower::trace(Element a) const {
  if (a.is_zero()) return 0;
  Element sum = zero();
  std::uint64_t l = log_[a.index];
  for (unsigned i = 0; i < params_.ell; ++i) {
    sum = add(sum, Element{exp_[l]});
    l = (l * q_) % order_;
  }
  ensure(sum.index < q_, "trace left the base field");
  return sum.index;
}

std::vector<SubSymbol> FieldTower::coords(Element a) const {
  std::vector<SubSymbol> c(params_.ell);
  for (unsigned i = 0; i < params_.ell; ++i) c[i] = coord(a, i);
  return c;
}

Element FieldTower::from_coords(std::span<const SubSymbol> c) const {
  require(c.size() == params_.ell, "coordinate vector must have length ell");
  std::uint32_t v = 0;
  for (unsigned i = 0; i < params_.ell; ++i) {
    require(c[i] < q_, "coordinate out of range");
    v += c[i] * qpow_[i];
  }
  return Element{v};
}

SubSymbol FieldTower::base_add(SubSymbol a, SubSymbol b) const {
  return add_digits(a, b, params_.p, params_.e, false);
}

SubSymbol FieldTower::base_sub(SubSymbol a, SubSymbol b) const {
  return add_digits(a, b, params_.p, params_.e, true);
}

SubSymbol FieldTower::base_neg(SubSymbol a) const { return base_sub(0, a); }

SubSymbol FieldTower::base_mul(SubSymbol a, SubSymbol b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t s = base_log_[a] + base_log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return base_exp_[s];
}

SubSymbol FieldTower::base_inv(SubSymbol a) const {
  if (a == 0) throw PreconditionError("inverse of zero in F_q");
  const std::uint32_t l = base_log_[a];
  return base_exp_[l == 0 ? 0 : q_ - 1 - l];
}

SubSymbol FieldTower::base_mul_reference(SubSymbol a, SubSymbol b) const {
  const unsigned e = params_.e;
  const std::uint32_t p = params_.p;
  std::vector<std::uint32_t> da(e), db(e), prod(2 * e - 1, 0);
  for (unsigned i = 0; i < e; ++i) {
    da[i] = a % p;
    a /= p;
    db[i] = b % p;
    b /= p;
  }
  for (unsigned i = 0; i < e; ++i)
    for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  const auto r = poly_mod(prod, params_.base_modulus, PrimeOps{p});
  std::uint32_t v = 0;
  for (unsigned i = r.size(); i-- > 0;) v = v * p + r[i];
  return v;
}

Element FieldTower::mul_reference(Element a, Element b) const {
  const unsigned ell = params_.ell;
  const auto ca = coords(a);
  const auto cb = coords(b);
  std::vector<std::uint32_t> prod(2 * ell - 1, 0);
  for (unsigned i = 0; i < ell; ++i)
    for (unsigned j = 0; j < ell; ++j)
      prod[i + j] = base_add(prod[i + j], base_mul_reference(ca[i], cb[j]));
  // Reduction uses the reference base multiplication as well.
  const auto& m = params_.top_modulus;
  for (std::size_t d = prod.size(); d-- > ell;) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= ell; ++i)
      prod[d - ell + i] = base_sub(prod[d - ell + i], base_mul_reference(c, m[i]));
  }
  prod.resize(ell);
  return from_coords(prod);
}

Element FieldTower::pow_reference(Element a, std::uint64_t exponent) const {
  Element result = one();
  Element base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = mul_reference(result, base);
    base = mul_reference(base, base);
    exponent >>= 1U;
  }
  return result;
}

std::vector<Element> FieldTower::dual_basis(std::span<const Element> basis) const {
  const unsigned n = params_.ell;
  require(basis.size() == n, "dual_basis needs exactly ell elements");
  // Gauss-Jordan on [G | I] over F_q.
  std::vector<std::vector<SubSymbol>> m(n, std::vector<SubSymbol>(2 * n, 0));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) m[i][j] = trace(mul(basis[i], basis[j]));
    m[i][n + i] = 1;
  }
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    require(piv < n, "elements do not form an F_q-basis (singular Gram matrix)");
    std::swap(m[piv], m[col]);
    const SubSymbol inv_p = base_inv(m[col][col]);
    for (auto& v : m[col]) v = base_mul(v, inv_p);
    for (unsigned r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const SubSymbol f = m[r][col];
      for (unsigned c = 0; c < 2 * n; ++c) m[r][c] = base_sub(m[r][c], base_mul(f, m[col][c]));
    }
  }
  std::vector<Element> dual(n, zero());
  for (unsigned j = 0; j < n; ++j)
    for (unsigned k = 0; k < n; ++k) dual[j] = add(dual[j], scale(m[j][n + k], basis[k]));
  return dual;
}

std::vector<Element> FieldTower::subfield_elements(unsigned a) const {
  require(a >= 1 && params_.ell % a == 0,
          "subfield degree " + std::to_string(a) + " does not divide ell = " + std::to_string(params_.ell));
  const std::uint32_t sub_order = qpow_[a] - 1;
  const std::uint32_t step = order_ / sub_order;
  std::vector<Element> out;
  out.reserve(qpow_[a]);
  out.push_back(zero());
  for (std::uint32_t i = 0; i < sub_order; ++i) out.push_back(Element{exp_[std::uint64_t{i} * step % order_]});
  return out;
}

std::string FieldTower::coeff_text(Element a) const {
  std::ostringstream os;
  os << '[';
  for (unsigned i = 0; i < params_.ell; ++i) {
    if (i) os << ',';
    SubSymbol c = coord(a, i);
    os << '[';
    for (unsigned j = 0; j < params_.e; ++j) {
      if (j) os << ',';
      os << c % params_.p;
      c /= params_.p;
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string FieldTower::to_text(Element a) const {
  return "q=" + std::to_string(q_) + ",ell=" + std::to_string(params_.ell) + ":" + coeff_text(a);
}

Element FieldTower::parse(std::string_view text) const {
  const std::string prefix = "q=" + std::to_string(q_) + ",ell=" + std::to_string(params_.ell) + ":";
  require(text.substr(0, prefix.size()) == prefix,
          "element text '" + std::string(text) + "' does not belong to field " + prefix);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.substr(prefix.size()));
  } catch (const nlohmann::json::exception& ex) {
    throw PreconditionError("malformed element text: " + std::string(ex.what()));
  }
  require(j.is_array() && j.size() == params_.ell, "element text must list ell coefficients");
  std::vector<SubSymbol> c(params_.ell);
  for (unsigned i = 0; i < params_.ell; ++i) {
    const auto& digits = j[i];
    require(digits.is_array() && digits.size() == params_.e, "each coefficient must list e base-p digits");
    SubSymbol v = 0;
    for (unsigned d = params_.e; d-- > 0;) {
      require(digits[d].is_number_unsigned() && digits[d].get<std::uint32_t>() < params_.p,
              "base-p digit out of range");
      v = v * params_.p + digits[d].get<std::uint32_t>();
    }
    c[i] = v;
  }
  return from_coords(c);
}

bool FieldTower::same_field(const FieldTower& other) const {
  return params_.p == other.params_.p && params_.e == other.params_.e && params_.ell == other.params_.ell &&
         params_.base_modulus == other.params_.base_modulus && params_.top_modulus == other.params_.top_modulus;
}

}  // namespace rsside
