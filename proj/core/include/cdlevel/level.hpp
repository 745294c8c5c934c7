#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdlevel/algebra.hpp"
#include "cdlevel/budget.hpp"
#include "cdlevel/quadform.hpp"

namespace cdlevel {

/// Verdict of an isotropy query. Witnesses are validated on construction:
/// nonzero and evaluating to exactly zero. Anisotropic verdicts are only ever
/// issued by decision procedures; an exhausted search yields Unknown.
struct IsotropyResult {
  enum class Verdict { Isotropic, Anisotropic, Unknown };
  enum class Certificate {
    None,
    Exhaustive,
    Definiteness,
    SplitRecursion,
    RankLe2SquareTest,
  };

  Verdict verdict = Verdict::Unknown;
  std::vector<Element> witness;
  Certificate certificate = Certificate::None;
  SearchBudget budget;

  bool isotropic() const { return verdict == Verdict::Isotropic; }
  bool anisotropic() const { return verdict == Verdict::Anisotropic; }
  bool unknown() const { return verdict == Verdict::Unknown; }

  static IsotropyResult make_isotropic(const DiagonalForm& f,
                                       std::vector<Element> w);
  static IsotropyResult make_anisotropic(Certificate c);
  static IsotropyResult make_unknown(const SearchBudget& b);
};

const char* certificate_name(IsotropyResult::Certificate c);
const char* verdict_name(IsotropyResult::Verdict v);

/// Exact over prime fields and rank <= 2; over the rationals decisions come
/// from definiteness or a found witness; over rational-function towers the
/// one-variable splitting rule applies recursively to forms whose
/// coefficients are constants times squarefree monomials, with a bounded
/// witness search as fallback.
IsotropyResult isotropy(const DiagonalForm& f, const SearchBudget& budget = {});

/// A witness vector v with f(v) = a, when one is found. a = 0 delegates to
/// the isotropy test. An isotropy witness upgrades to a representation via
/// the universality construction.
std::optional<std::vector<Element>> represents(const DiagonalForm& f,
                                               const Element& a,
                                               const SearchBudget& budget = {});

/// Exhaustive check that every nonzero residue is represented (prime fields
/// only).
bool is_universal(const DiagonalForm& f);

/// A level or sublevel: exact with witness, infinite, or a bound interval.
/// hi < 0 in a Range means no finite upper bound was established.
struct LevelValue {
  enum class Kind { Finite, Infinite, Range };

  Kind kind = Kind::Infinite;
  int value = 0;
  int lo = 0;
  int hi = 0;
  std::vector<AlgebraElement> witness;

  bool finite_value(int n) const { return kind == Kind::Finite && value == n; }

  static LevelValue finite(int n, std::vector<AlgebraElement> w);
  static LevelValue infinite();
  static LevelValue range(int lo, int hi, std::vector<AlgebraElement> w);
};

/// Level of the field itself: 1 or 2 for odd prime fields (with explicit
/// witnesses), inherited from the ground field by rational-function towers,
/// infinite for formally real fields.
LevelValue field_level(const FieldPtr& ctx);

struct OracleLevels {
  LevelValue level;
  LevelValue sublevel;
};

/// Exact level and sublevel of a finite algebra by sumset reachability over
/// the set of squares. Requires a prime ground field and |A| <= 10^7.
OracleLevels brute_level_oracle(const AlgebraPtr& desc);

/// Decision cascade: -1 a square, trace-form isotropy, bounds from the
/// <1> + n x T_P tests, constants from the field level, brute-force oracle
/// fallback.
LevelValue algebra_level(const AlgebraPtr& desc, const SearchBudget& budget = {});
LevelValue algebra_sublevel(const AlgebraPtr& desc, const SearchBudget& budget = {});

/// Constructive two/four/eight-square composition: c1 = sum a_i b_i and
/// (sum a_i^2)(sum b_i^2) = c1^2 + sum rest_j^2, built from conj(x) * y in
/// the doubling algebra with all parameters -1. n in {1, 2, 4, 8}.
std::pair<Element, std::vector<Element>> compose_squares(
    const FieldPtr& ctx, std::span<const Element> a, std::span<const Element> b);

/// f0 orth X f1 is isotropic over K(X) iff f0 or f1 is isotropic over K.
/// Both base decisions must be exact.
bool split_ratfunc_isotropy(const DiagonalForm& f0, const DiagonalForm& f1,
                            const SearchBudget& budget = {});

struct PropositionCheck {
  std::string proposition;
  std::int64_t p = 0;
  int t = 0;
  std::vector<std::int64_t> alphas;
  std::string expected;
  std::string observed;
  std::string status;  // "ok" | "violation" | "vacuous"
};

struct PropositionReport {
  std::vector<PropositionCheck> checks;
  int violations = 0;
};

/// Sweeps every square-class-distinct alpha tuple over the given primes and
/// t <= t_max, computing oracle levels and checking each statement literally.
PropositionReport verify_propositions(const std::vector<std::int64_t>& primes,
                                      int t_max, const SearchBudget& budget = {},
                                      int jobs = 1);

}  // namespace cdlevel
