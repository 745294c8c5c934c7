#pragma once

#include "cdlevel/budget.hpp"
#include "cdlevel/field.hpp"

namespace cdlevel {

/// Budget-bounded random field element. Rationals draw numerators in
/// [-height, height] and denominators in [1, height]; prime fields draw
/// uniform residues; rational-function fields draw fractions of polynomials
/// of degree <= budget.degree in each tower variable.
Element random_element(const Field& f, const SearchBudget& budget, Rng& rng);

Element random_nonzero_element(const Field& f, const SearchBudget& budget, Rng& rng);

/// Like random_element but denominator-free in every tower layer.
Element random_polynomial_element(const Field& f, const SearchBudget& budget, Rng& rng);

}  // namespace cdlevel
