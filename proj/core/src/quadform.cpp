#include "cdlevel/quadform.hpp"

#include <algorithm>

#include "cdlevel/errors.hpp"

namespace cdlevel {

namespace {

void check_ctx(const DiagonalForm& f, const DiagonalForm& g) {
  if (f.ctx != g.ctx && !f.ctx->same(*g.ctx)) {
    fail(Errc::Internal, "forms over different fields");
  }
}

}  // namespace

DiagonalForm form_make(FieldPtr ctx, std::vector<Element> coeffs) {
  if (coeffs.empty()) fail(Errc::ZeroCoefficient, "a form needs at least one coefficient");
  for (const auto& c : coeffs) {
    if (ctx->is_zero(c)) fail(Errc::ZeroCoefficient, "diagonal coefficients must be nonzero");
  }
  return DiagonalForm{std::move(ctx), std::move(coeffs)};
}

DiagonalForm orth_sum(const DiagonalForm& f, const DiagonalForm& g) {
  check_ctx(f, g);
  DiagonalForm r = f;
  r.coeffs.insert(r.coeffs.end(), g.coeffs.begin(), g.coeffs.end());
  return r;
}

DiagonalForm n_times(int n, const DiagonalForm& f) {
  if (n < 1) fail(Errc::Internal, "n_times needs a positive count");
  DiagonalForm r{f.ctx, {}};
  r.coeffs.reserve(static_cast<std::size_t>(n) * f.coeffs.size());
  for (int i = 0; i < n; ++i) {
    r.coeffs.insert(r.coeffs.end(), f.coeffs.begin(), f.coeffs.end());
  }
  return r;
}

DiagonalForm scale(const Element& x, const DiagonalForm& f) {
  if (f.ctx->is_zero(x)) fail(Errc::ZeroScalar, "scaling by zero");
  DiagonalForm r = f;
  for (auto& c : r.coeffs) c = f.ctx->mul(x, c);
  return r;
}

DiagonalForm tensor(const DiagonalForm& f, const DiagonalForm& g) {
  check_ctx(f, g);
  DiagonalForm r{f.ctx, {}};
  r.coeffs.reserve(f.coeffs.size() * g.coeffs.size());
  for (const auto& a : f.coeffs) {
    for (const auto& b : g.coeffs) {
      r.coeffs.push_back(f.ctx->mul(a, b));
    }
  }
  return r;
}

DiagonalForm pfister_expand(FieldPtr ctx, const std::vector<Element>& gens) {
  for (const auto& a : gens) {
    if (ctx->is_zero(a)) fail(Errc::ZeroGenerator, "Pfister generators must be nonzero");
  }
  if (gens.size() > 24) fail(Errc::TooLarge, "too many Pfister generators");
  const std::size_t n = std::size_t{1} << gens.size();
  DiagonalForm r{ctx, {}};
  r.coeffs.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    Element c = ctx->one();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (s & (std::size_t{1} << i)) c = ctx->mul(c, gens[i]);
    }
    r.coeffs.push_back(std::move(c));
  }
  return r;
}

DiagonalForm pure_subform(const DiagonalForm& f) {
  if (f.rank() < 2 || !f.ctx->is_one(f.coeffs[0])) {
    fail(Errc::NotUnital, "pure subform needs a leading <1> and rank >= 2");
  }
  DiagonalForm r{f.ctx, {f.coeffs.begin() + 1, f.coeffs.end()}};
  return r;
}

DiagonalForm trace_form(const AlgebraPtr& desc) {
  DiagonalForm r{desc->ctx(), {}};
  r.coeffs.reserve(desc->dim());
  r.coeffs.push_back(desc->ctx()->one());
  for (int i = 2; i <= desc->dim(); ++i) {
    r.coeffs.push_back(desc->basis_product(i, i).coeff);
  }
  return r;
}

DiagonalForm pure_trace_form(const AlgebraPtr& desc) {
  if (desc->dim() < 2) fail(Errc::DimensionOne, "pure trace form needs dim >= 2");
  return pure_subform(trace_form(desc));
}

DiagonalForm norm_form(const AlgebraPtr& desc) {
  DiagonalForm r{desc->ctx(), {desc->ctx()->one()}};
  if (desc->dim() >= 2) {
    for (const auto& c : pure_trace_form(desc).coeffs) {
      r.coeffs.push_back(desc->ctx()->neg(c));
    }
  }
  return r;
}

Element evaluate(const DiagonalForm& f, std::span<const Element> v) {
  if (static_cast<int>(v.size()) != f.rank()) {
    fail(Errc::RankMismatch, "coordinate count does not match form rank");
  }
  Element acc = f.ctx->zero();
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc = f.ctx->add(acc, f.ctx->mul(f.coeffs[i], f.ctx->mul(v[i], v[i])));
  }
  return acc;
}

Element bilinear(const DiagonalForm& f, std::span<const Element> u,
                 std::span<const Element> v) {
  if (static_cast<int>(u.size()) != f.rank() ||
      static_cast<int>(v.size()) != f.rank()) {
    fail(Errc::RankMismatch, "coordinate count does not match form rank");
  }
  Element acc = f.ctx->zero();
  for (std::size_t i = 0; i < u.size(); ++i) {
    acc = f.ctx->add(acc, f.ctx->mul(f.coeffs[i], f.ctx->mul(u[i], v[i])));
  }
  return acc;
}

DiagonalForm diagonalize(const GramMatrix& gm) {
  const Field& f = *gm.ctx;
  const std::size_t n = gm.entries.size();
  if (n == 0) fail(Errc::Internal, "empty matrix");
  auto m = gm.entries;
  for (const auto& row : m) {
    if (row.size() != n) fail(Errc::NotSymmetric, "matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m[i][j] != m[j][i]) fail(Errc::NotSymmetric, "matrix is not symmetric");
    }
  }

  std::vector<Element> diag;
  diag.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (f.is_zero(m[k][k])) {
      std::size_t swap_with = n;
      for (std::size_t l = k + 1; l < n; ++l) {
        if (!f.is_zero(m[l][l])) {
          swap_with = l;
          break;
        }
      }
      if (swap_with < n) {
        std::swap(m[k], m[swap_with]);
        for (std::size_t r = 0; r < n; ++r) std::swap(m[r][k], m[r][swap_with]);
      } else {
        // All remaining diagonal entries vanish; repair with a hyperbolic
        // pivot: add row/column l into k, giving 2 m[k][l] on the diagonal.
        std::size_t l = n;
        for (std::size_t c = k + 1; c < n; ++c) {
          if (!f.is_zero(m[k][c])) {
            l = c;
            break;
          }
        }
        if (l == n) fail(Errc::Singular, "matrix is singular");
        for (std::size_t c = 0; c < n; ++c) m[k][c] = f.add(m[k][c], m[l][c]);
        for (std::size_t r = 0; r < n; ++r) m[r][k] = f.add(m[r][k], m[r][l]);
      }
    }
    const Element pivot = m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (f.is_zero(m[i][k])) continue;
      const Element factor = f.div(m[i][k], pivot);
      for (std::size_t c = 0; c < n; ++c) {
        m[i][c] = f.sub(m[i][c], f.mul(factor, m[k][c]));
      }
      for (std::size_t r = 0; r < n; ++r) {
        m[r][i] = f.sub(m[r][i], f.mul(factor, m[r][k]));
      }
    }
    diag.push_back(m[k][k]);
  }
  for (const auto& d : diag) {
    if (f.is_zero(d)) fail(Errc::Singular, "matrix is singular");
  }
  return DiagonalForm{gm.ctx, std::move(diag)};
}

bool same_square_class(const Field& f, const Element& a, const Element& b) {
  if (f.is_zero(a) || f.is_zero(b)) return false;
  return f.is_square(f.div(a, b));
}

namespace {

bool match_coeffs(const Field& f, const std::vector<Element>& sub,
                  std::size_t i, const std::vector<Element>& super,
                  std::vector<bool>& used) {
  if (i == sub.size()) return true;
  for (std::size_t j = 0; j < super.size(); ++j) {
    if (used[j] || !same_square_class(f, sub[i], super[j])) continue;
    used[j] = true;
    if (match_coeffs(f, sub, i + 1, super, used)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

Ternary is_subform_semi(const DiagonalForm& f, const DiagonalForm& g) {
  check_ctx(f, g);
  if (f.rank() > g.rank()) return Ternary::Unknown;
  std::vector<bool> used(g.coeffs.size(), false);
  if (match_coeffs(*f.ctx, f.coeffs, 0, g.coeffs, used)) return Ternary::Yes;
  return Ternary::Unknown;
}

Ternary is_hyperbolic(const DiagonalForm& f) {
  if (f.rank() % 2 != 0) return Ternary::No;
  const Field& k = *f.ctx;
  if (k.is_prime()) {
    // Forms over a finite field of odd characteristic are classified by rank
    // and discriminant: hyperbolic iff the discriminant lies in the square
    // class of (-1)^(rank/2). Greedy coefficient pairing is not decisive
    // here (<1,1,1,1> over F_3 is hyperbolic but pairs never match).
    Element disc = k.one();
    for (const auto& c : f.coeffs) disc = k.mul(disc, c);
    const Element target =
        (f.rank() / 2) % 2 == 0 ? k.one() : k.integer(-1);
    return same_square_class(k, disc, target) ? Ternary::Yes : Ternary::No;
  }
  std::vector<Element> rest = f.coeffs;
  while (!rest.empty()) {
    Element a = rest.front();
    rest.erase(rest.begin());
    std::size_t partner = rest.size();
    for (std::size_t j = 0; j < rest.size(); ++j) {
      // <a, b> is hyperbolic iff -ab is a square.
      if (k.is_square(k.neg(k.mul(a, rest[j])))) {
        partner = j;
        break;
      }
    }
    if (partner == rest.size()) return Ternary::Unknown;
    rest.erase(rest.begin() + partner);
  }
  return Ternary::Yes;
}

}  // namespace cdlevel
