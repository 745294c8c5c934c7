#include "cdlevel/field.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "cdlevel/errors.hpp"
#include "internal.hpp"

namespace cdlevel {

namespace {

constexpr std::int64_t kMaxPrime = (std::int64_t{1} << 31) - 1;

bool is_odd_prime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t mod_norm(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return (a * b) % p;  // p < 2^31 keeps the product inside int64
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  a = mod_norm(a, p);
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::int64_t invmod(std::int64_t a, std::int64_t p) {
  return powmod(a, p - 2, p);
}

// Square root modulo an odd prime; requires a to satisfy the Euler test.
std::int64_t sqrt_mod(std::int64_t a, std::int64_t p) {
  if (a == 0) return 0;
  std::int64_t r;
  if (p % 4 == 3) {
    r = powmod(a, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks.
    std::int64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    std::int64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    std::int64_t m = s;
    std::int64_t c = powmod(z, q, p);
    std::int64_t t = powmod(a, q, p);
    r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
      std::int64_t i = 0;
      std::int64_t tt = t;
      while (tt != 1) {
        tt = mulmod(tt, tt, p);
        ++i;
      }
      std::int64_t b = c;
      for (std::int64_t k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
      m = i;
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      r = mulmod(r, b, p);
    }
  }
  return std::min(r, p - r);
}

Element rat_elem(BigRat v) { return Element{std::move(v)}; }
Element res_elem(std::int64_t v) { return Element{v}; }
Element rf_elem(RatFunc v) { return Element{std::move(v)}; }

const BigRat& as_rat(const Element& e) { return std::get<BigRat>(e.v); }
std::int64_t as_res(const Element& e) { return std::get<std::int64_t>(e.v); }
const RatFunc& as_rf(const Element& e) { return std::get<RatFunc>(e.v); }

void check_kind(const Field& f, const Element& e) {
  std::size_t want = 0;
  switch (f.kind()) {
    case Field::Kind::Rationals: want = 0; break;
    case Field::Kind::Prime: want = 1; break;
    case Field::Kind::RatFunc: want = 2; break;
  }
  if (e.v.index() != want) {
    fail(Errc::Internal, "element does not belong to field " + f.descriptor());
  }
}

// ---------------------------------------------------------------------------
// Polynomial layer. Coefficients live in `base`; the zero polynomial is the
// empty coefficient sequence and all results are stripped.

int poly_deg(const Polynomial& a) { return static_cast<int>(a.coeffs.size()) - 1; }

bool poly_is_zero(const Polynomial& a) { return a.coeffs.empty(); }

void poly_strip(const Field& base, Polynomial& a) {
  while (!a.coeffs.empty() && base.is_zero(a.coeffs.back())) a.coeffs.pop_back();
}

Polynomial poly_const(const Field& base, Element c) {
  Polynomial r;
  if (!base.is_zero(c)) r.coeffs.push_back(std::move(c));
  return r;
}

Polynomial poly_one(const Field& base) { return poly_const(base, base.one()); }

const Element& poly_lc(const Polynomial& a) { return a.coeffs.back(); }

Polynomial poly_add(const Field& base, const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), base.zero());
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    const Element& x = i < a.coeffs.size() ? a.coeffs[i] : base.zero();
    const Element& y = i < b.coeffs.size() ? b.coeffs[i] : base.zero();
    r.coeffs[i] = base.add(x, y);
  }
  poly_strip(base, r);
  return r;
}

Polynomial poly_neg(const Field& base, const Polynomial& a) {
  Polynomial r = a;
  for (auto& c : r.coeffs) c = base.neg(c);
  return r;
}

Polynomial poly_mul(const Field& base, const Polynomial& a, const Polynomial& b) {
  if (poly_is_zero(a) || poly_is_zero(b)) return {};
  Polynomial r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, base.zero());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (base.is_zero(a.coeffs[i])) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      r.coeffs[i + j] =
          base.add(r.coeffs[i + j], base.mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  poly_strip(base, r);
  return r;
}

Polynomial poly_scale(const Field& base, const Element& c, const Polynomial& a) {
  if (base.is_zero(c)) return {};
  Polynomial r = a;
  for (auto& x : r.coeffs) x = base.mul(c, x);
  return r;
}

// Division with remainder; the divisor must be nonzero.
void poly_divmod(const Field& base, const Polynomial& a, const Polynomial& b,
                 Polynomial& q, Polynomial& r) {
  q = {};
  r = a;
  const int db = poly_deg(b);
  const Element lb_inv = base.inverse(poly_lc(b));
  if (poly_deg(r) >= db) q.coeffs.assign(poly_deg(r) - db + 1, base.zero());
  while (poly_deg(r) >= db) {
    const int dr = poly_deg(r);
    Element f = base.mul(poly_lc(r), lb_inv);
    q.coeffs[dr - db] = f;
    for (int i = 0; i <= db; ++i) {
      r.coeffs[dr - db + i] =
          base.sub(r.coeffs[dr - db + i], base.mul(f, b.coeffs[i]));
    }
    poly_strip(base, r);
  }
  poly_strip(base, q);
}

Polynomial poly_monic(const Field& base, const Polynomial& a) {
  if (poly_is_zero(a)) return {};
  if (base.is_one(poly_lc(a))) return a;
  return poly_scale(base, base.inverse(poly_lc(a)), a);
}

Polynomial poly_gcd(const Field& base, Polynomial a, Polynomial b) {
  a = poly_monic(base, a);
  b = poly_monic(base, b);
  while (!poly_is_zero(b)) {
    Polynomial q, r;
    poly_divmod(base, a, b, q, r);
    a = std::move(b);
    b = poly_monic(base, r);
  }
  return a;
}

Polynomial poly_div_exact(const Field& base, const Polynomial& a,
                          const Polynomial& b) {
  Polynomial q, r;
  poly_divmod(base, a, b, q, r);
  if (!poly_is_zero(r)) fail(Errc::Internal, "inexact polynomial division");
  return q;
}

std::size_t poly_low_order(const Field& base, const Polynomial& a) {
  std::size_t i = 0;
  while (i < a.coeffs.size() && base.is_zero(a.coeffs[i])) ++i;
  return i;
}

// Monic square root of a monic polynomial, if one exists.
std::optional<Polynomial> poly_monic_sqrt(const Field& base, const Polynomial& p) {
  const int d = poly_deg(p);
  if (d < 0 || d % 2 != 0) return std::nullopt;
  const int m = d / 2;
  Polynomial q;
  q.coeffs.assign(m + 1, base.zero());
  q.coeffs[m] = base.one();
  const Element two_inv = base.inverse(base.integer(2));
  for (int k = m - 1; k >= 0; --k) {
    Element known = base.zero();
    for (int i = k + 1; i <= m - 1; ++i) {
      const int j = m + k - i;
      if (j >= k + 1 && j <= m - 1) {
        known = base.add(known, base.mul(q.coeffs[i], q.coeffs[j]));
      }
    }
    q.coeffs[k] = base.mul(base.sub(p.coeffs[m + k], known), two_inv);
  }
  if (poly_mul(base, q, q) == p) return q;
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field construction.

FieldPtr Field::rationals() {
  static const FieldPtr q = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Rationals;
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr Field::prime(std::int64_t p) {
  if (p > kMaxPrime) fail(Errc::TooLarge, "prime modulus exceeds 2^31 - 1");
  if (!is_odd_prime(p)) {
    fail(Errc::CharTwoOrNotPrime,
         "prime field modulus must be an odd prime, got " + std::to_string(p));
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Prime;
  f->p_ = p;
  return f;
}

namespace {
bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}
}  // namespace

FieldPtr Field::rational_functions(FieldPtr base, const std::string& var) {
  if (!base) fail(Errc::BadTower, "null base field");
  if (!valid_identifier(var)) fail(Errc::BadTower, "invalid variable name '" + var + "'");
  for (const Field* f = base.get(); f->is_ratfunc(); f = f->base().get()) {
    if (f->variable() == var) {
      fail(Errc::BadTower, "duplicate tower variable '" + var + "'");
    }
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::RatFunc;
  f->base_ = std::move(base);
  f->var_ = var;
  return f;
}

FieldPtr Field::rational_functions(FieldPtr base,
                                   const std::vector<std::string>& vars) {
  if (vars.empty()) fail(Errc::BadTower, "tower needs at least one variable");
  FieldPtr f = std::move(base);
  for (const auto& v : vars) f = rational_functions(f, v);
  return f;
}

std::int64_t Field::prime_modulus() const {
  if (!is_prime()) fail(Errc::Internal, "not a prime field");
  return p_;
}

const FieldPtr& Field::base() const {
  if (!is_ratfunc()) fail(Errc::Internal, "not a rational-function field");
  return base_;
}

const std::string& Field::variable() const {
  if (!is_ratfunc()) fail(Errc::Internal, "not a rational-function field");
  return var_;
}

const Field& Field::ground() const {
  const Field* f = this;
  while (f->is_ratfunc()) f = f->base_.get();
  return *f;
}

int Field::tower_height() const {
  int h = 0;
  for (const Field* f = this; f->is_ratfunc(); f = f->base_.get()) ++h;
  return h;
}

std::vector<std::string> Field::variables() const {
  std::vector<std::string> vars;
  for (const Field* f = this; f->is_ratfunc(); f = f->base_.get()) {
    vars.push_back(f->var_);
  }
  std::reverse(vars.begin(), vars.end());
  return vars;
}

std::string Field::descriptor() const {
  switch (kind_) {
    case Kind::Rationals: return "q";
    case Kind::Prime: return "fp:" + std::to_string(p_);
    case Kind::RatFunc: {
      std::string out = "ratfunc(" + ground().descriptor() + ";";
      const auto vars = variables();
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ",";
        out += vars[i];
      }
      return out + ")";
    }
  }
  return {};
}

bool Field::same(const Field& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Rationals: return true;
    case Kind::Prime: return p_ == other.p_;
    case Kind::RatFunc:
      return var_ == other.var_ && base_->same(*other.base_);
  }
  return false;
}

FieldPtr Field::parse_descriptor(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s == "q") return rationals();
  if (s.rfind("fp:", 0) == 0) {
    std::string digits(trim(s.substr(3)));
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      fail(Errc::SyntaxError, "bad prime field descriptor '" + std::string(s) + "'");
    }
    if (digits.size() > 18) fail(Errc::TooLarge, "prime modulus too large");
    return prime(std::stoll(digits));
  }
  if (s.rfind("ratfunc(", 0) == 0 && s.back() == ')') {
    std::string_view inner = s.substr(8, s.size() - 9);
    int depth = 0;
    std::size_t semi = std::string_view::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      else if (inner[i] == ')') --depth;
      else if (inner[i] == ';' && depth == 0) { semi = i; break; }
    }
    if (semi == std::string_view::npos) {
      fail(Errc::SyntaxError, "ratfunc descriptor needs '<base>;<vars>'");
    }
    FieldPtr base = parse_descriptor(inner.substr(0, semi));
    std::string_view varpart = inner.substr(semi + 1);
    std::vector<std::string> vars;
    while (!varpart.empty()) {
      std::size_t comma = varpart.find(',');
      std::string_view v = trim(varpart.substr(0, comma));
      if (v.empty()) fail(Errc::SyntaxError, "empty variable name in descriptor");
      vars.emplace_back(v);
      if (comma == std::string_view::npos) break;
      varpart.remove_prefix(comma + 1);
    }
    return rational_functions(base, vars);
  }
  fail(Errc::SyntaxError, "bad field descriptor '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Constants and embeddings.

Element Field::zero() const {
  switch (kind_) {
    case Kind::Rationals: return rat_elem(BigRat(0));
    case Kind::Prime: return res_elem(0);
    case Kind::RatFunc: return rf_elem(RatFunc{{}, poly_one(*base_)});
  }
  return {};
}

Element Field::one() const { return integer(1); }

Element Field::integer(std::int64_t n) const {
  switch (kind_) {
    case Kind::Rationals: return rat_elem(BigRat(n));
    case Kind::Prime: return res_elem(mod_norm(n, p_));
    case Kind::RatFunc: return embed(base_->integer(n));
  }
  return {};
}

Element Field::from_bigint(const BigInt& n) const {
  switch (kind_) {
    case Kind::Rationals: return rat_elem(BigRat(n));
    case Kind::Prime: {
      BigInt r = n % p_;
      if (r < 0) r += p_;
      return res_elem(r.convert_to<std::int64_t>());
    }
    case Kind::RatFunc: return embed(base_->from_bigint(n));
  }
  return {};
}

Element Field::embed(const Element& base_elem) const {
  if (!is_ratfunc()) fail(Errc::Internal, "embed requires a rational-function field");
  check_kind(*base_, base_elem);
  return rf_elem(RatFunc{poly_const(*base_, base_elem), poly_one(*base_)});
}

Element Field::variable_element(const std::string& name) const {
  if (!is_ratfunc()) {
    fail(Errc::UnknownVariable, "unknown variable '" + name + "'");
  }
  if (var_ == name) {
    Polynomial x;
    x.coeffs = {base_->zero(), base_->one()};
    return rf_elem(RatFunc{std::move(x), poly_one(*base_)});
  }
  return embed(base_->variable_element(name));
}

// ---------------------------------------------------------------------------
// Arithmetic.

namespace {

// Canonicalizes num/den into the reduced monic-denominator form.
Element make_ratfunc(const Field& base, Polynomial num, Polynomial den) {
  poly_strip(base, num);
  poly_strip(base, den);
  if (poly_is_zero(den)) fail(Errc::DivisionByZero, "zero denominator");
  if (poly_is_zero(num)) return rf_elem(RatFunc{{}, poly_one(base)});
  if (poly_deg(den) == 0) {
    if (!base.is_one(den.coeffs[0])) {
      num = poly_scale(base, base.inverse(den.coeffs[0]), num);
    }
    return rf_elem(RatFunc{std::move(num), poly_one(base)});
  }
  Polynomial g = poly_gcd(base, num, den);
  if (poly_deg(g) > 0) {
    num = poly_div_exact(base, num, g);
    den = poly_div_exact(base, den, g);
  }
  const Element& lc = poly_lc(den);
  if (!base.is_one(lc)) {
    Element inv = base.inverse(lc);
    num = poly_scale(base, inv, num);
    den = poly_scale(base, inv, den);
  }
  return rf_elem(RatFunc{std::move(num), std::move(den)});
}

}  // namespace

Element Field::add(const Element& a, const Element& b) const {
  check_kind(*this, a);
  check_kind(*this, b);
  switch (kind_) {
    case Kind::Rationals: return rat_elem(as_rat(a) + as_rat(b));
    case Kind::Prime: return res_elem((as_res(a) + as_res(b)) % p_);
    case Kind::RatFunc: {
      const RatFunc& x = as_rf(a);
      const RatFunc& y = as_rf(b);
      Polynomial num = poly_add(*base_, poly_mul(*base_, x.num, y.den),
                                poly_mul(*base_, y.num, x.den));
      return make_ratfunc(*base_, std::move(num), poly_mul(*base_, x.den, y.den));
    }
  }
  return {};
}

Element Field::neg(const Element& a) const {
  check_kind(*this, a);
  switch (kind_) {
    case Kind::Rationals: return rat_elem(-as_rat(a));
    case Kind::Prime: return res_elem(as_res(a) == 0 ? 0 : p_ - as_res(a));
    case Kind::RatFunc: {
      const RatFunc& x = as_rf(a);
      return rf_elem(RatFunc{poly_neg(*base_, x.num), x.den});
    }
  }
  return {};
}

Element Field::sub(const Element& a, const Element& b) const {
  return add(a, neg(b));
}

Element Field::mul(const Element& a, const Element& b) const {
  check_kind(*this, a);
  check_kind(*this, b);
  switch (kind_) {
    case Kind::Rationals: return rat_elem(as_rat(a) * as_rat(b));
    case Kind::Prime: return res_elem(mulmod(as_res(a), as_res(b), p_));
    case Kind::RatFunc: {
      const RatFunc& x = as_rf(a);
      const RatFunc& y = as_rf(b);
      return make_ratfunc(*base_, poly_mul(*base_, x.num, y.num),
                          poly_mul(*base_, x.den, y.den));
    }
  }
  return {};
}

Element Field::div(const Element& a, const Element& b) const {
  if (is_zero(b)) fail(Errc::DivisionByZero, "division by zero");
  switch (kind_) {
    case Kind::Rationals: return rat_elem(as_rat(a) / as_rat(b));
    case Kind::Prime: return res_elem(mulmod(as_res(a), invmod(as_res(b), p_), p_));
    case Kind::RatFunc: {
      const RatFunc& x = as_rf(a);
      const RatFunc& y = as_rf(b);
      return make_ratfunc(*base_, poly_mul(*base_, x.num, y.den),
                          poly_mul(*base_, x.den, y.num));
    }
  }
  return {};
}

Element Field::inverse(const Element& a) const { return div(one(), a); }

Element Field::pow(const Element& a, std::int64_t e) const {
  if (e < 0) return inverse(pow(a, -e));
  Element r = one();
  Element b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

bool Field::is_zero(const Element& a) const {
  check_kind(*this, a);
  switch (kind_) {
    case Kind::Rationals: return as_rat(a) == 0;
    case Kind::Prime: return as_res(a) == 0;
    case Kind::RatFunc: return poly_is_zero(as_rf(a).num);
  }
  return false;
}

bool Field::is_one(const Element& a) const { return a == one(); }

// ---------------------------------------------------------------------------
// Squares, ordering and valuations.

std::optional<Element> Field::sqrt(const Element& a) const {
  check_kind(*this, a);
  switch (kind_) {
    case Kind::Rationals: {
      const BigRat& r = as_rat(a);
      if (r < 0) return std::nullopt;
      const BigInt num = numerator(r);
      const BigInt den = denominator(r);
      const BigInt rn = boost::multiprecision::sqrt(num);
      const BigInt rd = boost::multiprecision::sqrt(den);
      if (rn * rn != num || rd * rd != den) return std::nullopt;
      return rat_elem(BigRat(rn, rd));
    }
    case Kind::Prime: {
      const std::int64_t r = as_res(a);
      if (r == 0) return res_elem(0);
      if (powmod(r, (p_ - 1) / 2, p_) != 1) return std::nullopt;
      return res_elem(sqrt_mod(r, p_));
    }
    case Kind::RatFunc: {
      if (is_zero(a)) return zero();
      const RatFunc& rf = as_rf(a);
      const Element& lc = poly_lc(rf.num);
      auto lc_root = base_->sqrt(lc);
      if (!lc_root) return std::nullopt;
      Polynomial n1 = poly_monic(*base_, rf.num);
      auto n_root = poly_monic_sqrt(*base_, n1);
      if (!n_root) return std::nullopt;
      auto d_root = poly_monic_sqrt(*base_, rf.den);
      if (!d_root) return std::nullopt;
      return make_ratfunc(*base_, poly_scale(*base_, *lc_root, *n_root),
                          std::move(*d_root));
    }
  }
  return std::nullopt;
}

bool Field::formally_real() const {
  return ground().kind() == Kind::Rationals;
}

Field::Valuation Field::valuation(const Element& a) const {
  if (!is_ratfunc()) fail(Errc::Internal, "valuation requires a rational-function field");
  if (is_zero(a)) fail(Errc::ZeroElement, "valuation of zero");
  const RatFunc& rf = as_rf(a);
  const std::size_t on = poly_low_order(*base_, rf.num);
  const std::size_t od = poly_low_order(*base_, rf.den);
  return Valuation{static_cast<std::int64_t>(on) - static_cast<std::int64_t>(od),
                   base_->div(rf.num.coeffs[on], rf.den.coeffs[od])};
}

Element Field::parse(std::string_view text) const {
  return detail::parse_expression(*this, text);
}

std::string Field::str(const Element& a) const {
  check_kind(*this, a);
  return detail::element_to_string(*this, a);
}

}  // namespace cdlevel
