#pragma once

#include <string>
#include <vector>

#include "cdlevel/algebra.hpp"
#include "cdlevel/budget.hpp"
#include "cdlevel/level.hpp"

namespace cdlevel {

/// The doubling tower over base(X_1)...(X_t) with the j-th parameter equal
/// to the j-th fresh variable.
struct BrownTower {
  FieldPtr base;
  int levels = 0;
  AlgebraPtr desc;
};

BrownTower brown_tower(FieldPtr base, int t);

/// The level-(i-1) algebra scalar-extended to F_i = base(X_1,...,X_i):
/// parameters X_1..X_{i-1}, coefficients in F_i.
AlgebraPtr brown_level_extension(const BrownTower& tower, int i);

struct ZeroDivisorReport {
  bool found = false;
  AlgebraElement x;
  AlgebraElement y;
  SearchBudget budget;
};

/// Randomized search: each trial samples x with polynomial coefficients and
/// solves x * y = 0 for y exactly (left multiplication is linear in y).
/// Any find is re-verified by an exact product.
ZeroDivisorReport zero_divisor_search(const AlgebraPtr& desc,
                                      const SearchBudget& budget = {});

struct LeadingCheck {
  std::string label;
  bool nonzero = false;
};

/// Bookkeeping for the degree-parity argument. If the quadruple satisfied
/// both zero-divisor equations, the lowest degrees in the top variable would
/// obey m+p = n+r+1 and n+p = m+r, forcing 2m = 2n+1. The leading-product
/// checks performed against the lower-level algebra are recorded.
struct ParityCertificate {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t r = 0;
  std::vector<LeadingCheck> checks;
  std::vector<std::string> equations;
  bool contradiction = false;
};

/// The descriptor must live over a rational-function field whose top
/// variable is the doubling parameter; its own parameters must not involve
/// that variable. A vanishing leading product aborts with LeadingProductZero
/// (it exhibits a genuine zero divisor one level down).
ParityCertificate parity_certificate(const AlgebraPtr& lower_ext,
                                     const AlgebraElement& a3,
                                     const AlgebraElement& b3,
                                     const AlgebraElement& c3,
                                     const AlgebraElement& d3);

ParityCertificate parity_certificate(const BrownTower& tower, int i,
                                     const AlgebraElement& a3,
                                     const AlgebraElement& b3,
                                     const AlgebraElement& c3,
                                     const AlgebraElement& d3);

struct PrescribedLevel {
  AlgebraPtr desc;
  LevelValue level;
};

/// Brown tower of height t over a base of finite level, with the level
/// certified by matching bounds: constants give the upper bound s(K), the
/// trace-form split recursion the lower one.
PrescribedLevel prescribed_level_algebra(FieldPtr base, int t,
                                         const SearchBudget& budget = {});

}  // namespace cdlevel
