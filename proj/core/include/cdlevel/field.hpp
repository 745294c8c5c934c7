#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cdlevel {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

struct Element;

/// Dense univariate polynomial in the top variable of a rational-function
/// field. Coefficients live in the base field, trailing zeros are stripped,
/// and the zero polynomial is the empty sequence.
struct Polynomial {
  std::vector<Element> coeffs;

  bool operator==(const Polynomial&) const = default;
};

/// Reduced fraction of tower polynomials: gcd(num, den) = 1 and den monic in
/// the top variable. Zero is num = 0, den = 1.
struct RatFunc {
  Polynomial num;
  Polynomial den;

  bool operator==(const RatFunc&) const = default;
};

/// One exact field value. The active alternative matches the owning field:
/// a reduced fraction for the rationals, a residue in [0, p) for a prime
/// field, a canonical RatFunc for a rational-function field. Canonical
/// representations make structural equality coincide with field equality.
struct Element {
  std::variant<BigRat, std::int64_t, RatFunc> v;

  bool operator==(const Element&) const = default;
};

/// An exact field: the rationals, an odd prime field, or a tower of
/// rational-function extensions built one variable at a time. Immutable and
/// shared; all element operations are pure.
class Field : public std::enable_shared_from_this<Field> {
public:
  enum class Kind { Rationals, Prime, RatFunc };

  static FieldPtr rationals();
  static FieldPtr prime(std::int64_t p);
  static FieldPtr rational_functions(FieldPtr base, const std::string& var);
  static FieldPtr rational_functions(FieldPtr base,
                                     const std::vector<std::string>& vars);

  /// Parses a descriptor string: `q`, `fp:<p>`, or
  /// `ratfunc(<base>;<v1>,<v2>,...)`.
  static FieldPtr parse_descriptor(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == Kind::Rationals; }
  bool is_prime() const { return kind_ == Kind::Prime; }
  bool is_ratfunc() const { return kind_ == Kind::RatFunc; }

  /// Prime fields only.
  std::int64_t prime_modulus() const;
  /// Rational-function fields only.
  const FieldPtr& base() const;
  const std::string& variable() const;

  /// Innermost non-ratfunc field of the tower (the field itself when not a
  /// tower).
  const Field& ground() const;
  /// Number of rational-function extensions above the ground field.
  int tower_height() const;
  /// Tower variables, innermost first.
  std::vector<std::string> variables() const;

  std::string descriptor() const;
  bool same(const Field& other) const;

  // Constants and embeddings.
  Element zero() const;
  Element one() const;
  Element integer(std::int64_t n) const;
  Element from_bigint(const BigInt& n) const;
  /// Lifts an element of base() to a constant of this field.
  Element embed(const Element& base_elem) const;
  /// Any tower variable, embedded up to this field.
  Element variable_element(const std::string& name) const;

  // Arithmetic. Operands must belong to this field.
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element div(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element inverse(const Element& a) const;
  Element pow(const Element& a, std::int64_t e) const;

  bool is_zero(const Element& a) const;
  bool is_one(const Element& a) const;
  bool equal(const Element& a, const Element& b) const { return a == b; }

  /// Exact square root when the element is a square in this field.
  std::optional<Element> sqrt(const Element& a) const;
  bool is_square(const Element& a) const { return sqrt(a).has_value(); }

  /// True iff -1 is not a sum of squares. Rule-based: holds exactly when the
  /// ground field is the rationals.
  bool formally_real() const;

  /// Order and leading coefficient of a nonzero element with respect to the
  /// top tower variable. The leading coefficient lives in base().
  struct Valuation {
    std::int64_t order;
    Element leading;
  };
  Valuation valuation(const Element& a) const;

  /// Expression text: integers, fractions, tower variables, + - * / ^.
  Element parse(std::string_view text) const;
  std::string str(const Element& a) const;

private:
  Field() = default;

  Kind kind_ = Kind::Rationals;
  std::int64_t p_ = 0;
  FieldPtr base_;
  std::string var_;
};

}  // namespace cdlevel
