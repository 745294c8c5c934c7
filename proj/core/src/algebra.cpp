#include "cdlevel/algebra.hpp"

#include <span>

#include "cdlevel/errors.hpp"
#include "cdlevel/sampling.hpp"

namespace cdlevel {

namespace {

// (a1, a2)(b1, b2) = (a1 b1 + alpha conj(b2) a2, a2 conj(b1) + b2 a1),
// where conj negates everything but the first coordinate at every level.
void cd_conj(const Field& f, std::span<const Element> x, std::span<Element> out) {
  out[0] = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = f.neg(x[i]);
}

void cd_mul(const Field& f, std::span<const Element> alphas,
            std::span<const Element> x, std::span<const Element> y,
            std::span<Element> out) {
  const std::size_t n = x.size();
  if (n == 1) {
    out[0] = f.mul(x[0], y[0]);
    return;
  }
  const std::size_t h = n / 2;
  const Element& alpha = alphas[alphas.size() - 1];
  auto lower = alphas.first(alphas.size() - 1);
  auto a1 = x.first(h), a2 = x.subspan(h);
  auto b1 = y.first(h), b2 = y.subspan(h);

  std::vector<Element> t1(h), t2(h), cj(h);

  // first half: a1 b1 + alpha conj(b2) a2
  cd_mul(f, lower, a1, b1, t1);
  cd_conj(f, b2, cj);
  cd_mul(f, lower, cj, a2, t2);
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = f.add(t1[i], f.mul(alpha, t2[i]));
  }

  // second half: a2 conj(b1) + b2 a1
  cd_conj(f, b1, cj);
  cd_mul(f, lower, a2, cj, t1);
  cd_mul(f, lower, b2, a1, t2);
  for (std::size_t i = 0; i < h; ++i) {
    out[h + i] = f.add(t1[i], t2[i]);
  }
}

void check_same(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.desc == y.desc) return;
  if (!x.desc || !y.desc || !x.desc->same(*y.desc)) {
    fail(Errc::DescriptorMismatch, "elements of different algebras");
  }
}

}  // namespace

AlgebraPtr algebra_make(FieldPtr ctx, std::vector<Element> alphas) {
  if (!ctx) fail(Errc::Internal, "null field context");
  for (const auto& a : alphas) {
    if (ctx->is_zero(a)) fail(Errc::ZeroAlpha, "doubling parameter must be nonzero");
  }
  if (alphas.size() > 24) fail(Errc::TooLarge, "too many doubling steps");
  auto desc = std::shared_ptr<AlgebraDescriptor>(new AlgebraDescriptor());
  desc->ctx_ = std::move(ctx);
  desc->alphas_ = std::move(alphas);
  return desc;
}

const BasisProduct& AlgebraDescriptor::basis_product(int i, int j) const {
  const int q = dim();
  if (i < 1 || j < 1 || i > q || j > q) fail(Errc::Internal, "basis index out of range");
  std::call_once(table_once_, [this, q] {
    const Field& f = *ctx_;
    std::vector<BasisProduct> table;
    table.reserve(static_cast<std::size_t>(q) * q);
    std::vector<Element> x(q, f.zero()), y(q, f.zero()), z(q, f.zero());
    for (int a = 1; a <= q; ++a) {
      x.assign(q, f.zero());
      x[a - 1] = f.one();
      for (int b = 1; b <= q; ++b) {
        y.assign(q, f.zero());
        y[b - 1] = f.one();
        cd_mul(f, alphas_, x, y, z);
        int k = 0;
        for (int c = 0; c < q; ++c) {
          if (!f.is_zero(z[c])) {
            if (k != 0) fail(Errc::Internal, "basis product not a monomial");
            k = c + 1;
          }
        }
        if (k == 0) fail(Errc::Internal, "basis product vanished");
        table.push_back(BasisProduct{k, z[k - 1]});
      }
    }
    table_ = std::move(table);
  });
  return table_[static_cast<std::size_t>(i - 1) * q + (j - 1)];
}

bool AlgebraDescriptor::same(const AlgebraDescriptor& other) const {
  if (this == &other) return true;
  if (!ctx_->same(*other.ctx_)) return false;
  return alphas_ == other.alphas_;
}

AlgebraElement make_element(AlgebraPtr desc, std::vector<Element> coeffs) {
  if (static_cast<int>(coeffs.size()) != desc->dim()) {
    fail(Errc::RankMismatch, "coefficient count does not match algebra dimension");
  }
  return AlgebraElement{std::move(desc), std::move(coeffs)};
}

AlgebraElement zero_element(const AlgebraPtr& desc) {
  return AlgebraElement{desc, std::vector<Element>(desc->dim(), desc->ctx()->zero())};
}

AlgebraElement one_element(const AlgebraPtr& desc) {
  return scalar_element(desc, desc->ctx()->one());
}

AlgebraElement scalar_element(const AlgebraPtr& desc, const Element& c) {
  AlgebraElement x = zero_element(desc);
  x.coeffs[0] = c;
  return x;
}

AlgebraElement basis_element(const AlgebraPtr& desc, int k) {
  if (k < 1 || k > desc->dim()) fail(Errc::Internal, "basis index out of range");
  AlgebraElement x = zero_element(desc);
  x.coeffs[k - 1] = desc->ctx()->one();
  return x;
}

bool is_zero(const AlgebraElement& x) {
  const Field& f = *x.desc->ctx();
  for (const auto& c : x.coeffs) {
    if (!f.is_zero(c)) return false;
  }
  return true;
}

bool equal(const AlgebraElement& x, const AlgebraElement& y) {
  check_same(x, y);
  return x.coeffs == y.coeffs;
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  check_same(x, y);
  const Field& f = *x.desc->ctx();
  AlgebraElement r = x;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = f.add(r.coeffs[i], y.coeffs[i]);
  return r;
}

AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
  return add(x, neg(y));
}

AlgebraElement neg(const AlgebraElement& x) {
  const Field& f = *x.desc->ctx();
  AlgebraElement r = x;
  for (auto& c : r.coeffs) c = f.neg(c);
  return r;
}

AlgebraElement scalar_mul(const Element& c, const AlgebraElement& x) {
  const Field& f = *x.desc->ctx();
  AlgebraElement r = x;
  for (auto& v : r.coeffs) v = f.mul(c, v);
  return r;
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
  check_same(x, y);
  const Field& f = *x.desc->ctx();
  AlgebraElement r = zero_element(x.desc);
  cd_mul(f, x.desc->alphas(), x.coeffs, y.coeffs, r.coeffs);
  return r;
}

AlgebraElement conjugate(const AlgebraElement& x) {
  const Field& f = *x.desc->ctx();
  AlgebraElement r = x;
  for (std::size_t i = 1; i < r.coeffs.size(); ++i) r.coeffs[i] = f.neg(r.coeffs[i]);
  return r;
}

Element trace(const AlgebraElement& x) {
  const Field& f = *x.desc->ctx();
  return f.mul(f.integer(2), x.coeffs[0]);
}

Element norm(const AlgebraElement& x) {
  const Field& f = *x.desc->ctx();
  AlgebraElement p = multiply(x, conjugate(x));
  for (std::size_t i = 1; i < p.coeffs.size(); ++i) {
    if (!f.is_zero(p.coeffs[i])) {
      fail(Errc::Internal, "x * conj(x) has a nonzero pure part");
    }
  }
  return p.coeffs[0];
}

Element scalar_part(const AlgebraElement& x) { return x.coeffs[0]; }

AlgebraElement pure_part(const AlgebraElement& x) {
  AlgebraElement r = x;
  r.coeffs[0] = x.desc->ctx()->zero();
  return r;
}

std::vector<std::vector<BasisProduct>> full_table(const AlgebraPtr& desc) {
  const int q = desc->dim();
  std::vector<std::vector<BasisProduct>> t(q);
  for (int i = 1; i <= q; ++i) {
    t[i - 1].reserve(q);
    for (int j = 1; j <= q; ++j) {
      t[i - 1].push_back(desc->basis_product(i, j));
    }
  }
  return t;
}

std::string str(const AlgebraElement& x) {
  const Field& f = *x.desc->ctx();
  std::string out;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (f.is_zero(x.coeffs[i])) continue;
    std::string cs = f.str(x.coeffs[i]);
    const bool compound = cs.find(" + ") != std::string::npos ||
                          cs.find(" - ") != std::string::npos ||
                          cs.find('/') != std::string::npos;
    if (compound) cs = "(" + cs + ")";
    std::string term;
    if (i == 0) {
      term = cs;
    } else if (cs == "1") {
      term = "f" + std::to_string(i + 1);
    } else if (cs == "-1") {
      term = "-f" + std::to_string(i + 1);
    } else {
      term = cs + "*f" + std::to_string(i + 1);
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

AlgebraElement random_algebra_element(const AlgebraPtr& desc,
                                      const SearchBudget& budget, Rng& rng) {
  AlgebraElement x = zero_element(desc);
  for (auto& c : x.coeffs) c = random_element(*desc->ctx(), budget, rng);
  return x;
}

AlgebraElement random_polynomial_algebra_element(const AlgebraPtr& desc,
                                                 const SearchBudget& budget,
                                                 Rng& rng) {
  AlgebraElement x = zero_element(desc);
  for (auto& c : x.coeffs) c = random_polynomial_element(*desc->ctx(), budget, rng);
  return x;
}

}  // namespace cdlevel
