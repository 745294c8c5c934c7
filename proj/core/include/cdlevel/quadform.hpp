#pragma once

#include <span>
#include <vector>

#include "cdlevel/algebra.hpp"
#include "cdlevel/field.hpp"

namespace cdlevel {

/// Regular diagonal quadratic form <a_1,...,a_m>: every coefficient nonzero.
struct DiagonalForm {
  FieldPtr ctx;
  std::vector<Element> coeffs;

  int rank() const { return static_cast<int>(coeffs.size()); }
};

DiagonalForm form_make(FieldPtr ctx, std::vector<Element> coeffs);

DiagonalForm orth_sum(const DiagonalForm& f, const DiagonalForm& g);
DiagonalForm n_times(int n, const DiagonalForm& f);
DiagonalForm scale(const Element& x, const DiagonalForm& f);
/// Coefficients a_i b_j in row-major order (i outer, j inner).
DiagonalForm tensor(const DiagonalForm& f, const DiagonalForm& g);

/// <1,a_1> x ... x <1,a_n> expanded by subsets in binary-index order: the
/// coefficient at index s is the product of a_i over the set bits of s. This
/// matches the algebra basis doubling order.
DiagonalForm pfister_expand(FieldPtr ctx, const std::vector<Element>& gens);

/// Drops the leading <1>.
DiagonalForm pure_subform(const DiagonalForm& f);

/// Trace form <1, b_2, ..., b_q> with b_i the scalar of f_i^2.
DiagonalForm trace_form(const AlgebraPtr& desc);
DiagonalForm pure_trace_form(const AlgebraPtr& desc);
/// <1> orth -T_P.
DiagonalForm norm_form(const AlgebraPtr& desc);

Element evaluate(const DiagonalForm& f, std::span<const Element> v);
/// Polar form b(u, v) = sum a_i u_i v_i.
Element bilinear(const DiagonalForm& f, std::span<const Element> u,
                 std::span<const Element> v);

struct GramMatrix {
  FieldPtr ctx;
  std::vector<std::vector<Element>> entries;
};

/// Symmetric congruence elimination; zero pivots are repaired by adding a row
/// and column with a nonzero off-diagonal entry (char != 2).
DiagonalForm diagonalize(const GramMatrix& m);

enum class Ternary { Yes, No, Unknown };

/// True if a is b times a nonzero square.
bool same_square_class(const Field& f, const Element& a, const Element& b);

/// Sufficient syntactic criterion: coefficients of f embed injectively into
/// g's up to square classes. Never answers No.
Ternary is_subform_semi(const DiagonalForm& f, const DiagonalForm& g);

/// Greedy pairing of coefficients a, b with -ab a square. Decisive over prime
/// fields, otherwise a failed pairing yields Unknown.
Ternary is_hyperbolic(const DiagonalForm& f);

}  // namespace cdlevel
