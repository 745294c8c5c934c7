#include <array>
#include <cstdint>

#include "cdlevel/errors.hpp"
#include "cdlevel/level.hpp"

namespace cdlevel {

namespace {

// Elements of a finite doubling algebra packed as base-p integers, with the
// structure-constant table reduced to residues.
struct PackedAlgebra {
  std::int64_t p = 0;
  int q = 0;
  std::int64_t size = 0;
  std::vector<int> tk;          // q*q, 0-based target index
  std::vector<std::int64_t> tb; // q*q, beta residue
  std::vector<std::int64_t> pw; // powers of p

  void decode(std::int64_t e, std::array<std::int64_t, 16>& c) const {
    for (int i = 0; i < q; ++i) {
      c[i] = e % p;
      e /= p;
    }
  }

  std::int64_t add(std::int64_t u, std::int64_t v) const {
    std::int64_t r = 0;
    for (int i = 0; i < q; ++i) {
      std::int64_t a = u % p + v % p;
      if (a >= p) a -= p;
      r += a * pw[i];
      u /= p;
      v /= p;
    }
    return r;
  }

  std::int64_t negate(std::int64_t u) const {
    std::int64_t r = 0;
    for (int i = 0; i < q; ++i) {
      std::int64_t a = u % p;
      r += (a == 0 ? 0 : p - a) * pw[i];
      u /= p;
    }
    return r;
  }

  std::int64_t square(std::int64_t e) const {
    std::array<std::int64_t, 16> c{};
    std::array<std::int64_t, 16> out{};
    decode(e, c);
    for (int i = 0; i < q; ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; j < q; ++j) {
        if (c[j] == 0) continue;
        const int cell = i * q + j;
        out[tk[cell]] = (out[tk[cell]] + c[i] * c[j] % p * tb[cell]) % p;
      }
    }
    std::int64_t r = 0;
    for (int i = 0; i < q; ++i) r += out[i] * pw[i];
    return r;
  }
};

PackedAlgebra pack(const AlgebraPtr& desc) {
  const Field& k = *desc->ctx();
  if (!k.is_prime()) fail(Errc::WrongField, "oracle needs a prime ground field");
  PackedAlgebra a;
  a.p = k.prime_modulus();
  a.q = desc->dim();
  a.size = 1;
  for (int i = 0; i < a.q; ++i) {
    if (a.size > 10000000 / a.p) fail(Errc::TooLarge, "|A| exceeds 10^7");
    a.size *= a.p;
  }
  a.pw.resize(a.q);
  a.pw[0] = 1;
  for (int i = 1; i < a.q; ++i) a.pw[i] = a.pw[i - 1] * a.p;
  a.tk.resize(static_cast<std::size_t>(a.q) * a.q);
  a.tb.resize(static_cast<std::size_t>(a.q) * a.q);
  for (int i = 1; i <= a.q; ++i) {
    for (int j = 1; j <= a.q; ++j) {
      const BasisProduct& bp = desc->basis_product(i, j);
      a.tk[(i - 1) * a.q + (j - 1)] = bp.index - 1;
      a.tb[(i - 1) * a.q + (j - 1)] = std::get<std::int64_t>(bp.coeff.v);
    }
  }
  return a;
}

AlgebraElement unpack_element(const AlgebraPtr& desc, const PackedAlgebra& a,
                              std::int64_t e) {
  AlgebraElement x = zero_element(desc);
  for (int i = 0; i < a.q; ++i) {
    x.coeffs[i] = desc->ctx()->integer(e % a.p);
    e /= a.p;
  }
  return x;
}

constexpr int kLayerCap = 24;

}  // namespace

OracleLevels brute_level_oracle(const AlgebraPtr& desc) {
  const PackedAlgebra a = pack(desc);
  const Field& k = *desc->ctx();

  std::vector<std::uint8_t> is_sq(a.size, 0);
  std::vector<std::int32_t> root(a.size, -1);
  for (std::int64_t e = 0; e < a.size; ++e) {
    const std::int64_t s = a.square(e);
    if (!is_sq[s]) {
      is_sq[s] = 1;
      root[s] = static_cast<std::int32_t>(e);
    }
  }
  std::vector<std::int64_t> squares;
  std::vector<std::int64_t> squares_nz;
  for (std::int64_t s = 0; s < a.size; ++s) {
    if (is_sq[s]) {
      squares.push_back(s);
      if (s != 0) squares_nz.push_back(s);
    }
  }

  const std::int64_t minus_one = (a.p - 1) * a.pw[0];

  auto elem = [&](std::int64_t e) { return unpack_element(desc, a, e); };

  // -------------------------------------------------------------- level
  LevelValue level;
  {
    std::vector<std::vector<std::uint8_t>> layers;  // layers[m] = sums of m+1 squares
    layers.push_back(is_sq);
    bool done = false;
    for (int n = 1; n <= kLayerCap && !done; ++n) {
      if (n == 1) {
        if (is_sq[minus_one]) {
          level = LevelValue::finite(1, {elem(root[minus_one])});
          done = true;
        }
        continue;
      }
      // -1 in layers[n-2] + Q?
      std::int64_t found = -1;
      for (std::int64_t s : squares) {
        if (layers[n - 2][a.add(minus_one, a.negate(s))]) {
          found = s;
          break;
        }
      }
      if (found >= 0) {
        std::vector<AlgebraElement> ws{elem(root[found])};
        std::int64_t cur = a.add(minus_one, a.negate(found));
        for (int m = n - 1; m >= 2; --m) {
          for (std::int64_t s : squares) {
            if (layers[m - 2][a.add(cur, a.negate(s))]) {
              ws.push_back(elem(root[s]));
              cur = a.add(cur, a.negate(s));
              break;
            }
          }
        }
        ws.push_back(elem(root[cur]));
        level = LevelValue::finite(n, std::move(ws));
        done = true;
        continue;
      }
      // Build the next layer: sums of n squares.
      std::vector<std::uint8_t> next(a.size, 0);
      for (std::int64_t u = 0; u < a.size; ++u) {
        if (!layers.back()[u]) continue;
        for (std::int64_t s : squares_nz) next[a.add(u, s)] = 1;
        next[u] = 1;
      }
      layers.push_back(std::move(next));
    }
    if (!done) fail(Errc::Internal, "level exceeded the oracle layer cap");
  }

  // ----------------------------------------------------------- sublevel
  LevelValue sublevel;
  {
    bool done = false;
    for (std::int64_t s : squares_nz) {
      const std::int64_t t = a.negate(s);
      if (t != 0 && is_sq[t]) {
        sublevel = LevelValue::finite(1, {elem(root[s]), elem(root[t])});
        done = true;
        break;
      }
    }
    if (!done) {
      // n = 2 with an early exit; the pair sums feed the n >= 3 layers.
      std::vector<std::uint8_t> pair_sums(a.size, 0);
      for (std::int64_t s1 : squares_nz) {
        for (std::int64_t s2 : squares_nz) {
          const std::int64_t u = a.add(s1, s2);
          pair_sums[u] = 1;
          const std::int64_t t = a.negate(u);
          if (t != 0 && is_sq[t]) {
            sublevel = LevelValue::finite(
                2, {elem(root[s1]), elem(root[s2]), elem(root[t])});
            done = true;
            break;
          }
        }
        if (done) break;
      }
      if (!done) {
        std::vector<std::vector<std::uint8_t>> layers;  // layers[m]: m+1 terms
        std::vector<std::uint8_t> star(a.size, 0);
        for (std::int64_t s : squares_nz) star[s] = 1;
        layers.push_back(std::move(star));
        layers.push_back(std::move(pair_sums));
        for (int n = 3; n <= kLayerCap && !done; ++n) {
          // Need layers[n-1] = sums of n nonzero squares.
          std::vector<std::uint8_t> next(a.size, 0);
          for (std::int64_t u = 0; u < a.size; ++u) {
            if (!layers.back()[u]) continue;
            for (std::int64_t s : squares_nz) next[a.add(u, s)] = 1;
          }
          layers.push_back(std::move(next));
          std::int64_t found = -1;
          for (std::int64_t s : squares_nz) {
            if (layers[n - 1][a.negate(s)]) {
              found = s;
              break;
            }
          }
          if (found < 0) continue;
          std::vector<AlgebraElement> ws{elem(root[found])};
          std::int64_t cur = a.negate(found);
          for (int m = n - 1; m >= 1; --m) {
            for (std::int64_t s : squares_nz) {
              if (m == 1 ? (a.add(cur, a.negate(s)) != 0 &&
                            layers[0][a.add(cur, a.negate(s))])
                         : layers[m - 1][a.add(cur, a.negate(s))] != 0) {
                ws.push_back(elem(root[s]));
                cur = a.add(cur, a.negate(s));
                break;
              }
            }
          }
          ws.push_back(elem(root[cur]));
          sublevel = LevelValue::finite(n, std::move(ws));
          done = true;
        }
        if (!done) fail(Errc::Internal, "sublevel exceeded the oracle layer cap");
      }
    }
  }

  // Exact self-checks of both witnesses.
  {
    Element acc = k.zero();
    for (const auto& w : level.witness) acc = k.add(acc, scalar_part(multiply(w, w)));
    if (acc != k.integer(-1)) fail(Errc::Internal, "oracle level witness invalid");
    acc = k.zero();
    for (const auto& w : sublevel.witness) {
      const Element sq = scalar_part(multiply(w, w));
      if (k.is_zero(sq) || !is_zero(pure_part(multiply(w, w)))) {
        fail(Errc::Internal, "oracle sublevel witness has a zero or non-scalar square");
      }
      acc = k.add(acc, sq);
    }
    if (!k.is_zero(acc)) fail(Errc::Internal, "oracle sublevel witness invalid");
    if (static_cast<int>(sublevel.witness.size()) != sublevel.value + 1) {
      fail(Errc::Internal, "oracle sublevel witness count mismatch");
    }
  }

  return OracleLevels{std::move(level), std::move(sublevel)};
}

}  // namespace cdlevel
