#include <doctest.h>

#include <functional>

#include <cdlevel/brown.hpp>
#include <cdlevel/errors.hpp>
#include <cdlevel/quadform.hpp>
#include <cdlevel/sampling.hpp>

using namespace cdlevel;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.code();
  }
  return Errc::Internal;
}

AlgebraElement nonzero_sample(const AlgebraPtr& desc, const SearchBudget& b, Rng& rng) {
  for (int i = 0; i < 256; ++i) {
    AlgebraElement x = random_polynomial_algebra_element(desc, b, rng);
    if (!is_zero(x)) return x;
  }
  throw std::runtime_error("sampling failed");
}

}  // namespace

TEST_SUITE_BEGIN("brown");

TEST_CASE("brown_tower construction") {
  auto t1 = brown_tower(Field::prime(7), 1);
  CHECK(t1.desc->dim() == 2);
  CHECK(t1.desc->ctx()->descriptor() == "ratfunc(fp:7;X1)");
  CHECK(t1.desc->alphas()[0] == t1.desc->ctx()->parse("X1"));

  auto t2 = brown_tower(Field::rationals(), 2);
  CHECK(t2.desc->dim() == 4);
  CHECK(t2.desc->ctx()->descriptor() == "ratfunc(q;X1,X2)");

  CHECK(code_of([] { brown_tower(Field::prime(7), 0); }) == Errc::BadTower);

  // Fresh variables skip names already used by the base tower.
  auto shifted = brown_tower(Field::parse_descriptor("ratfunc(q;X1)"), 1);
  CHECK(shifted.desc->ctx()->descriptor() == "ratfunc(q;X1,X2)");
  CHECK(shifted.desc->alphas()[0] == shifted.desc->ctx()->parse("X2"));
}

TEST_CASE("brown_level_extension") {
  auto tower = brown_tower(Field::prime(7), 2);
  auto e1 = brown_level_extension(tower, 1);
  CHECK(e1->dim() == 1);
  CHECK(e1->ctx()->descriptor() == "ratfunc(fp:7;X1)");
  auto e2 = brown_level_extension(tower, 2);
  CHECK(e2->dim() == 2);
  CHECK(e2->ctx()->descriptor() == "ratfunc(fp:7;X1,X2)");
  CHECK(e2->alphas()[0] == e2->ctx()->parse("X1"));
}

TEST_CASE("zero divisor search finds the split pair over alphas [4]") {
  auto f7 = Field::prime(7);
  auto desc = algebra_make(f7, {f7->integer(4)});
  auto report = zero_divisor_search(desc);
  REQUIRE(report.found);
  CHECK_FALSE(is_zero(report.x));
  CHECK_FALSE(is_zero(report.y));
  CHECK(is_zero(multiply(report.x, report.y)));
}

TEST_CASE("zero divisor search is empty on the Brown tower at t = 1") {
  auto tower = brown_tower(Field::prime(7), 1);
  SearchBudget b;
  b.degree = 2;
  b.trials = 5000;
  b.seed = 0;
  auto report = zero_divisor_search(tower.desc, b);
  CHECK_FALSE(report.found);
}

TEST_CASE("zero divisor search succeeds on a dim-16 split algebra") {
  auto f7 = Field::prime(7);
  auto desc = algebra_make(
      f7, {f7->one(), f7->one(), f7->one(), f7->one()});
  SearchBudget b;
  b.trials = 10000;
  b.seed = 0;
  auto report = zero_divisor_search(desc, b);
  REQUIRE(report.found);
  CHECK(is_zero(multiply(report.x, report.y)));
}

TEST_CASE("parity certificate: constant quadruple") {
  auto tower = brown_tower(Field::prime(7), 1);
  auto ext = brown_level_extension(tower, 1);
  const auto& f = *ext->ctx();
  auto cert = parity_certificate(ext, scalar_element(ext, f.integer(3)),
                                 scalar_element(ext, f.integer(5)),
                                 scalar_element(ext, f.integer(2)),
                                 scalar_element(ext, f.integer(6)));
  CHECK(cert.m == 0);
  CHECK(cert.n == 0);
  CHECK(cert.p == 0);
  CHECK(cert.r == 0);
  CHECK(cert.contradiction);
  REQUIRE(cert.checks.size() == 4);
  for (const auto& c : cert.checks) CHECK(c.nonzero);
}

TEST_CASE("parity certificate holds on random nonzero quadruples, t = 1, 2") {
  SearchBudget b;
  b.degree = 2;
  for (int t : {1, 2}) {
    auto tower = brown_tower(Field::prime(7), t);
    auto ext = brown_level_extension(tower, t);
    Rng rng(500 + t);
    for (int i = 0; i < 100; ++i) {
      auto a3 = nonzero_sample(ext, b, rng);
      auto b3 = nonzero_sample(ext, b, rng);
      auto c3 = nonzero_sample(ext, b, rng);
      auto d3 = nonzero_sample(ext, b, rng);
      auto cert = parity_certificate(ext, a3, b3, c3, d3);
      CHECK(cert.contradiction);
      for (const auto& c : cert.checks) CHECK(c.nonzero);
    }
  }
}

TEST_CASE("parity certificate rejects zero inputs and non-division lower levels") {
  auto tower = brown_tower(Field::prime(7), 1);
  auto ext = brown_level_extension(tower, 1);
  const auto& f = *ext->ctx();
  CHECK(code_of([&] {
          parity_certificate(ext, zero_element(ext),
                             scalar_element(ext, f.one()),
                             scalar_element(ext, f.one()),
                             scalar_element(ext, f.one()));
        }) == Errc::ZeroInput);

  // Lower level with alphas [4] over F_7 has the zero divisors
  // (f2 - 2)(f2 + 2) = 0; a quadruple whose leading parts hit them aborts.
  auto f7x = Field::parse_descriptor("ratfunc(fp:7;X1)");
  auto bad_ext = algebra_make(f7x, {f7x->integer(4)});
  AlgebraElement a3 = make_element(bad_ext, {f7x->integer(-2), f7x->one()});
  AlgebraElement c3 = make_element(bad_ext, {f7x->integer(2), f7x->one()});
  AlgebraElement one = one_element(bad_ext);
  CHECK(code_of([&] { parity_certificate(bad_ext, a3, one, c3, one); }) ==
        Errc::LeadingProductZero);
}

TEST_CASE("norm forms of Brown towers are anisotropic by the split recursion") {
  for (int t : {1, 2}) {
    for (const auto& base : {Field::prime(7), Field::rationals()}) {
      auto tower = brown_tower(base, t);
      auto r = isotropy(norm_form(tower.desc));
      REQUIRE(r.anisotropic());
      if (tower.desc->dim() > 2) {
        CHECK(r.certificate == IsotropyResult::Certificate::SplitRecursion);
      }
    }
  }
}

TEST_CASE("prescribed level algebras") {
  auto p13 = prescribed_level_algebra(Field::prime(13), 1);
  CHECK(p13.level.finite_value(1));
  CHECK(p13.desc->dim() == 2);

  auto p7t1 = prescribed_level_algebra(Field::prime(7), 1);
  CHECK(p7t1.level.finite_value(2));

  auto p7t2 = prescribed_level_algebra(Field::prime(7), 2);
  CHECK(p7t2.level.finite_value(2));
  CHECK(p7t2.desc->dim() == 4);

  // Level witnesses square-sum to -1 in the tower algebra.
  const auto& f = *p7t2.desc->ctx();
  Element acc = f.zero();
  for (const auto& w : p7t2.level.witness) {
    acc = f.add(acc, scalar_part(multiply(w, w)));
  }
  CHECK(acc == f.integer(-1));

  CHECK(code_of([] { prescribed_level_algebra(Field::rationals(), 1); }) ==
        Errc::InfiniteBaseLevel);
}

TEST_SUITE_END();
