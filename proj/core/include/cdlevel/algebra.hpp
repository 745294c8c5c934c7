#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cdlevel/budget.hpp"
#include "cdlevel/field.hpp"

namespace cdlevel {

class AlgebraDescriptor;
using AlgebraPtr = std::shared_ptr<const AlgebraDescriptor>;

/// f_i * f_j = coeff * f_index, with exactly one nonzero coefficient.
/// Indices are 1-based; index 1 is the unit.
struct BasisProduct {
  int index;
  Element coeff;
};

/// Immutable description of an algebra built by repeated doubling of the
/// scalar field: the coefficient field and the parameter of each doubling
/// step. dim = 2^t where t = alphas().size(); t = 0 is the field itself.
///
/// Basis order is the doubling order: if f_1..f_h is the basis of the
/// previous level and u the new unit, then f_{k+h} = f_k * u.
class AlgebraDescriptor : public std::enable_shared_from_this<AlgebraDescriptor> {
public:
  const FieldPtr& ctx() const { return ctx_; }
  const std::vector<Element>& alphas() const { return alphas_; }
  int doublings() const { return static_cast<int>(alphas_.size()); }
  int dim() const { return 1 << doublings(); }

  /// Structure constant for f_i * f_j (1-based). Computed lazily once per
  /// descriptor, reads are safe concurrently.
  const BasisProduct& basis_product(int i, int j) const;

  bool same(const AlgebraDescriptor& other) const;

private:
  friend AlgebraPtr algebra_make(FieldPtr ctx, std::vector<Element> alphas);
  AlgebraDescriptor() = default;

  FieldPtr ctx_;
  std::vector<Element> alphas_;
  mutable std::once_flag table_once_;
  mutable std::vector<BasisProduct> table_;
};

AlgebraPtr algebra_make(FieldPtr ctx, std::vector<Element> alphas);

struct AlgebraElement {
  AlgebraPtr desc;
  std::vector<Element> coeffs;
};

AlgebraElement make_element(AlgebraPtr desc, std::vector<Element> coeffs);
AlgebraElement zero_element(const AlgebraPtr& desc);
AlgebraElement one_element(const AlgebraPtr& desc);
/// Scalar c embedded as c * 1.
AlgebraElement scalar_element(const AlgebraPtr& desc, const Element& c);
/// The k-th basis element (1-based).
AlgebraElement basis_element(const AlgebraPtr& desc, int k);

bool is_zero(const AlgebraElement& x);
bool equal(const AlgebraElement& x, const AlgebraElement& y);

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement neg(const AlgebraElement& x);
AlgebraElement scalar_mul(const Element& c, const AlgebraElement& x);

/// Doubling product, recursing on halves down to field multiplication.
AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);

AlgebraElement conjugate(const AlgebraElement& x);
Element trace(const AlgebraElement& x);
/// Scalar part of x * conjugate(x); the pure part of that product is
/// checked to vanish.
Element norm(const AlgebraElement& x);
Element scalar_part(const AlgebraElement& x);
AlgebraElement pure_part(const AlgebraElement& x);

/// Full dim x dim structure-constant table, row i column j = f_i * f_j.
std::vector<std::vector<BasisProduct>> full_table(const AlgebraPtr& desc);

std::string str(const AlgebraElement& x);

AlgebraElement random_algebra_element(const AlgebraPtr& desc,
                                      const SearchBudget& budget, Rng& rng);
/// Coefficients are denominator-free polynomials (zero-divisor search shape).
AlgebraElement random_polynomial_algebra_element(const AlgebraPtr& desc,
                                                 const SearchBudget& budget,
                                                 Rng& rng);

}  // namespace cdlevel
