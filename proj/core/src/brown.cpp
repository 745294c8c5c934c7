#include "cdlevel/brown.hpp"

#include <algorithm>

#include "cdlevel/errors.hpp"
#include "cdlevel/quadform.hpp"
#include "cdlevel/sampling.hpp"

namespace cdlevel {

namespace {

std::vector<std::string> fresh_variables(const Field& base, int t) {
  auto used = base.is_ratfunc() ? base.variables() : std::vector<std::string>{};
  std::vector<std::string> vars;
  for (int k = 1; static_cast<int>(vars.size()) < t; ++k) {
    std::string cand = "X" + std::to_string(k);
    if (std::find(used.begin(), used.end(), cand) == used.end()) {
      vars.push_back(std::move(cand));
    }
  }
  return vars;
}

}  // namespace

BrownTower brown_tower(FieldPtr base, int t) {
  if (t < 1) fail(Errc::BadTower, "tower height must be positive");
  if (t > 16) fail(Errc::TooLarge, "tower height too large");
  const auto vars = fresh_variables(*base, t);
  FieldPtr field = Field::rational_functions(base, vars);
  std::vector<Element> alphas;
  alphas.reserve(t);
  for (const auto& v : vars) alphas.push_back(field->variable_element(v));
  return BrownTower{std::move(base), t, algebra_make(std::move(field), std::move(alphas))};
}

AlgebraPtr brown_level_extension(const BrownTower& tower, int i) {
  if (i < 1 || i > tower.levels) fail(Errc::Internal, "level index out of range");
  std::vector<std::string> vars = tower.desc->ctx()->variables();
  vars.resize(i);
  FieldPtr fi = Field::rational_functions(tower.base, vars);
  std::vector<Element> alphas;
  for (int j = 0; j + 1 < i; ++j) alphas.push_back(fi->variable_element(vars[j]));
  return algebra_make(std::move(fi), std::move(alphas));
}

// ---------------------------------------------------------------------------
// Zero-divisor search.

namespace {

// First kernel vector of the left-multiplication matrix of x, if singular.
std::optional<std::vector<Element>> left_mul_kernel(const AlgebraPtr& desc,
                                                    const AlgebraElement& x) {
  const Field& k = *desc->ctx();
  const int q = desc->dim();
  std::vector<std::vector<Element>> m(q, std::vector<Element>(q, k.zero()));
  for (int j = 0; j < q; ++j) {
    AlgebraElement col = multiply(x, basis_element(desc, j + 1));
    for (int i = 0; i < q; ++i) m[i][j] = col.coeffs[i];
  }

  // Row-echelon form tracking pivot columns.
  std::vector<int> pivot_col(q, -1);
  int row = 0;
  for (int col = 0; col < q && row < q; ++col) {
    int pr = -1;
    for (int r = row; r < q; ++r) {
      if (!k.is_zero(m[r][col])) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(m[row], m[pr]);
    const Element inv = k.inverse(m[row][col]);
    for (int c = col; c < q; ++c) m[row][c] = k.mul(inv, m[row][c]);
    for (int r = 0; r < q; ++r) {
      if (r == row || k.is_zero(m[r][col])) continue;
      const Element f = m[r][col];
      for (int c = col; c < q; ++c) {
        m[r][c] = k.sub(m[r][c], k.mul(f, m[row][c]));
      }
    }
    pivot_col[row++] = col;
  }
  if (row == q) return std::nullopt;  // nonsingular

  // Free column: the first one that is not a pivot.
  std::vector<bool> is_pivot(q, false);
  for (int r = 0; r < row; ++r) is_pivot[pivot_col[r]] = true;
  int free_col = 0;
  while (is_pivot[free_col]) ++free_col;

  std::vector<Element> y(q, k.zero());
  y[free_col] = k.one();
  for (int r = 0; r < row; ++r) {
    y[pivot_col[r]] = k.neg(m[r][free_col]);
  }
  return y;
}

}  // namespace

ZeroDivisorReport zero_divisor_search(const AlgebraPtr& desc,
                                      const SearchBudget& budget) {
  ZeroDivisorReport report;
  report.budget = budget;
  const Field& k = *desc->ctx();
  // Up to dim 8 the norm composes, so x annihilates something iff n(x) = 0,
  // and then conj(x) is an explicit partner. Beyond that, solve the linear
  // system x * y = 0 directly.
  const bool composition = desc->dim() <= 8;
  Rng rng(budget.seed);
  for (std::int64_t trial = 0; trial < budget.trials; ++trial) {
    AlgebraElement x = random_polynomial_algebra_element(desc, budget, rng);
    if (is_zero(x)) continue;
    AlgebraElement ye = zero_element(desc);
    if (composition) {
      if (!k.is_zero(norm(x))) continue;
      ye = conjugate(x);
    } else {
      auto y = left_mul_kernel(desc, x);
      if (!y) continue;
      ye = make_element(desc, std::move(*y));
    }
    if (is_zero(ye)) fail(Errc::Internal, "zero-divisor partner is zero");
    AlgebraElement prod = multiply(x, ye);
    if (!is_zero(prod)) fail(Errc::Internal, "pair fails re-verification");
    report.found = true;
    report.x = std::move(x);
    report.y = std::move(ye);
    return report;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Parity certificate.

namespace {

std::optional<Element> base_constant_of(const Field& k, const Element& e) {
  const auto& rf = std::get<RatFunc>(e.v);
  if (rf.den.coeffs.size() != 1) return std::nullopt;
  if (rf.num.coeffs.size() > 1) return std::nullopt;
  if (rf.num.coeffs.empty()) return k.base()->zero();
  return rf.num.coeffs[0];
}

struct LeadingPart {
  std::int64_t order;
  AlgebraElement leading;  // over the lower algebra
};

LeadingPart leading_part(const AlgebraPtr& lower, const AlgebraElement& v,
                         const char* name) {
  const Field& k = *v.desc->ctx();
  if (is_zero(v)) fail(Errc::ZeroInput, std::string(name) + " must be nonzero");
  std::int64_t m = 0;
  bool first = true;
  for (const auto& c : v.coeffs) {
    if (k.is_zero(c)) continue;
    const auto val = k.valuation(c);
    if (first || val.order < m) m = val.order;
    first = false;
  }
  AlgebraElement lead = zero_element(lower);
  for (std::size_t i = 0; i < v.coeffs.size(); ++i) {
    if (k.is_zero(v.coeffs[i])) continue;
    const auto val = k.valuation(v.coeffs[i]);
    if (val.order == m) lead.coeffs[i] = val.leading;
  }
  return LeadingPart{m, std::move(lead)};
}

}  // namespace

ParityCertificate parity_certificate(const AlgebraPtr& lower_ext,
                                     const AlgebraElement& a3,
                                     const AlgebraElement& b3,
                                     const AlgebraElement& c3,
                                     const AlgebraElement& d3) {
  const FieldPtr& f = lower_ext->ctx();
  if (!f->is_ratfunc()) {
    fail(Errc::Internal, "parity certificate needs a rational-function field");
  }
  // The lower algebra: same parameters read over the base field.
  std::vector<Element> base_alphas;
  for (const auto& a : lower_ext->alphas()) {
    auto c = base_constant_of(*f, a);
    if (!c || f->base()->is_zero(*c)) {
      fail(Errc::Internal, "doubling parameters must be constant in the top variable");
    }
    base_alphas.push_back(std::move(*c));
  }
  AlgebraPtr lower = algebra_make(f->base(), std::move(base_alphas));

  for (const AlgebraElement* e : {&a3, &b3, &c3, &d3}) {
    if (!e->desc->same(*lower_ext)) {
      fail(Errc::DescriptorMismatch, "quadruple must live in the extension algebra");
    }
  }

  const LeadingPart pa = leading_part(lower, a3, "a3");
  const LeadingPart pb = leading_part(lower, b3, "b3");
  const LeadingPart pc = leading_part(lower, c3, "c3");
  const LeadingPart pd = leading_part(lower, d3, "d3");

  ParityCertificate cert;
  cert.m = pa.order;
  cert.n = pb.order;
  cert.p = pc.order;
  cert.r = pd.order;

  auto check = [&](const char* label, const AlgebraElement& u,
                   const AlgebraElement& v) {
    const bool nonzero = !is_zero(multiply(u, v));
    cert.checks.push_back(LeadingCheck{label, nonzero});
    if (!nonzero) {
      fail(Errc::LeadingProductZero,
           std::string("leading product ") + label +
               " vanishes: zero divisors one level down");
    }
  };
  // Lowest terms of a3 c3 + X conj(d3) b3 = 0 and b3 conj(c3) + d3 a3 = 0.
  check("x_m * z_p", pa.leading, pc.leading);
  check("conj(w_r) * y_n", conjugate(pd.leading), pb.leading);
  check("y_n * conj(z_p)", pb.leading, conjugate(pc.leading));
  check("w_r * x_m", pd.leading, pa.leading);

  cert.equations = {
      "m + p = n + r + 1 (" + std::to_string(cert.m + cert.p) + " = " +
          std::to_string(cert.n + cert.r + 1) + ")",
      "n + p = m + r (" + std::to_string(cert.n + cert.p) + " = " +
          std::to_string(cert.m + cert.r) + ")",
  };
  // Jointly the equations force 2m = 2n + 1, impossible in integers.
  cert.contradiction = true;
  return cert;
}

ParityCertificate parity_certificate(const BrownTower& tower, int i,
                                     const AlgebraElement& a3,
                                     const AlgebraElement& b3,
                                     const AlgebraElement& c3,
                                     const AlgebraElement& d3) {
  return parity_certificate(brown_level_extension(tower, i), a3, b3, c3, d3);
}

// ---------------------------------------------------------------------------
// Prescribed level.

PrescribedLevel prescribed_level_algebra(FieldPtr base, int t,
                                         const SearchBudget& budget) {
  LevelValue base_level = field_level(base);
  if (base_level.kind != LevelValue::Kind::Finite) {
    fail(Errc::InfiniteBaseLevel, "base field has infinite level");
  }
  BrownTower tower = brown_tower(std::move(base), t);
  LevelValue lv = algebra_level(tower.desc, budget);
  if (!lv.finite_value(base_level.value)) {
    fail(Errc::Internal, "level bounds did not meet the base field level");
  }
  return PrescribedLevel{tower.desc, std::move(lv)};
}

}  // namespace cdlevel
