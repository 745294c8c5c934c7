#include "cdlevel/sampling.hpp"

#include "cdlevel/errors.hpp"

namespace cdlevel {

namespace {

std::int64_t draw(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Element random_impl(const Field& f, const SearchBudget& b, Rng& rng, bool poly_only) {
  switch (f.kind()) {
    case Field::Kind::Rationals: {
      const std::int64_t num = draw(rng, -b.height, b.height);
      const std::int64_t den = poly_only ? 1 : draw(rng, 1, b.height);
      return f.div(f.integer(num), f.integer(den));
    }
    case Field::Kind::Prime:
      return f.integer(draw(rng, 0, f.prime_modulus() - 1));
    case Field::Kind::RatFunc: {
      const Field& base = *f.base();
      Element x = f.variable_element(f.variable());
      auto poly = [&] {
        const int deg = static_cast<int>(rng() % static_cast<std::uint64_t>(b.degree + 1));
        Element acc = f.zero();
        Element xk = f.one();
        for (int k = 0; k <= deg; ++k) {
          acc = f.add(acc, f.mul(f.embed(random_impl(base, b, rng, poly_only)), xk));
          xk = f.mul(xk, x);
        }
        return acc;
      };
      if (poly_only) return poly();
      Element den = f.zero();
      for (int tries = 0; f.is_zero(den) && tries < 64; ++tries) den = poly();
      if (f.is_zero(den)) den = f.one();
      return f.div(poly(), den);
    }
  }
  return f.zero();
}

}  // namespace

Element random_element(const Field& f, const SearchBudget& budget, Rng& rng) {
  return random_impl(f, budget, rng, false);
}

Element random_nonzero_element(const Field& f, const SearchBudget& budget, Rng& rng) {
  for (int tries = 0; tries < 1024; ++tries) {
    Element e = random_impl(f, budget, rng, false);
    if (!f.is_zero(e)) return e;
  }
  fail(Errc::Internal, "failed to sample a nonzero element");
}

Element random_polynomial_element(const Field& f, const SearchBudget& budget, Rng& rng) {
  return random_impl(f, budget, rng, true);
}

}  // namespace cdlevel
