#include "cliffdeg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "cliffdeg/errors.hpp"
#include "cliffdeg/linalg.hpp"
#include "cliffdeg/parallel.hpp"

namespace cliffdeg {

namespace {

std::uint64_t element_order(const FiniteGroup& g, int x) {
  std::uint64_t k = 1;
  for (int y = x; y != g.identity(); y = g.mul(y, x)) ++k;
  return k;
}

using FL = PrimeField;
using LVec = Vec<FL>;
using LDense = Dense<FL>;

// Subspace spanned by rows, kept in reduced echelon form.
struct Subspace {
  LDense rows;
  std::vector<int> pivots;
};

Subspace make_subspace(const FL& f, LDense rows) {
  Subspace s;
  s.pivots = rref(f, rows);
  rows.resize(s.pivots.size());
  s.rows = std::move(rows);
  return s;
}

// Matrix of M restricted to the invariant subspace, in the basis s.rows.
LDense restrict(const FL& f, const LDense& m, const Subspace& s) {
  const std::size_t d = s.rows.size(), r = m.size();
  LDense out(d, LVec(d, 0));
  for (std::size_t col = 0; col < d; ++col) {
    LVec image(r, 0);
    const LVec& v = s.rows[col];
    for (std::size_t i = 0; i < r; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < r; ++k)
        if (v[k]) acc = (acc + m[i][k] * v[k]) % f.l;
      image[i] = acc;
    }
    for (std::size_t t = 0; t < d; ++t) out[t][col] = image[s.pivots[t]];
  }
  return out;
}

// Roots of a polynomial over F_l by exhaustive search, with multiplicity ignored.
std::vector<std::uint64_t> roots(const FL& f, const LVec& poly) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < f.l; ++x)
    if (poly_eval(f, poly, x) == 0) out.push_back(x);
  return out;
}

// One split attempt of s by the restricted matrix; empty result means no split.
std::vector<Subspace> split(const FL& f, const LDense& m, const Subspace& s, bool& bad_prime) {
  LDense res = restrict(f, m, s);
  LVec cp = char_poly(f, res);
  auto rts = roots(f, cp);
  if (rts.size() <= 1) return {};
  std::vector<Subspace> parts;
  std::size_t total = 0;
  const std::size_t d = s.rows.size();
  for (std::uint64_t lambda : rts) {
    LDense shifted = res;
    for (std::size_t i = 0; i < d; ++i) shifted[i][i] = f.sub(shifted[i][i], lambda);
    LDense vecs;
    for (const auto& c : nullspace(f, shifted, static_cast<int>(d))) {
      LVec v(s.rows[0].size(), 0);
      for (std::size_t t = 0; t < d; ++t)
        if (c[t])
          for (std::size_t k = 0; k < v.size(); ++k) v[k] = (v[k] + c[t] * s.rows[t][k]) % f.l;
      vecs.push_back(std::move(v));
    }
    total += vecs.size();
    parts.push_back(make_subspace(f, std::move(vecs)));
  }
  // The class algebra is split semisimple for a good prime, so eigenspaces fill s.
  if (total != d) bad_prime = true;
  return parts;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

// Attempts Dixon-Schneider with one prime; returns false if the prime is unusable.
bool degrees_mod(const ClassAlgebra& a, std::uint64_t l, std::uint64_t seed, std::vector<std::uint64_t>& out) {
  const FL f(l);
  const std::size_t r = a.rank();
  std::mt19937_64 rng(seed);
  std::vector<LDense> mats(r, LDense(r, LVec(r, 0)));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k) mats[j][i][k] = a.coefficient(i, j, k) % l;

  std::vector<Subspace> done, todo{make_subspace(f, dense_identity(f, static_cast<int>(r)))};
  int stalls = 0;
  while (!todo.empty()) {
    Subspace s = std::move(todo.back());
    todo.pop_back();
    if (s.rows.size() == 1) {
      done.push_back(std::move(s));
      continue;
    }
    // A random combination of class matrices separates the common eigenspaces
    // with high probability; a stall just draws another one.
    LDense comb(r, LVec(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      std::uint64_t c = rng() % l;
      if (!c) continue;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) comb[i][k] = (comb[i][k] + c * mats[j][i][k]) % l;
    }
    bool bad = false;
    auto parts = split(f, comb, s, bad);
    if (bad) return false;
    if (parts.empty()) {
      if (++stalls > 8) return false;
      todo.push_back(std::move(s));
      continue;
    }
    for (auto& p : parts) todo.push_back(std::move(p));
    stalls = 0;
  }
  if (done.size() != r) return false;

  std::vector<std::uint64_t> inv_size(r);
  for (std::size_t k = 0; k < r; ++k) inv_size[k] = f.inv(a.classes.sizes[k] % l);
  const std::uint64_t order_mod = a.order % l;
  const std::uint64_t bound = isqrt(a.order);
  out.clear();
  for (const Subspace& s : done) {
    LVec w = s.rows[0];
    const std::uint64_t norm = w[a.identity_class];
    if (!norm) return false;
    const std::uint64_t scale = f.inv(norm);
    for (auto& x : w) x = f.mul(x, scale);
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < r; ++k) sum = f.add(sum, f.mul(f.mul(w[k], w[a.inverse_class[k]]), inv_size[k]));
    if (!sum) return false;
    const std::uint64_t d2 = f.mul(order_mod, f.inv(sum));
    std::uint64_t found = 0;
    for (std::uint64_t d = 1; d <= bound; ++d)
      if (a.order % d == 0 && d * d % l == d2) {
        found = d;
        break;
      }
    if (!found) return false;
    out.push_back(found);
  }
  std::sort(out.begin(), out.end());
  std::uint64_t squares = 0;
  for (auto d : out) squares += d * d;
  return squares == a.order;
}

}  // namespace

ClassAlgebra class_algebra(const FiniteGroup& g, const Budgets& budgets, int threads) {
  require_budget(g.order(), budgets.oracle, "character-degree oracle (group order)");
  ClassAlgebra a;
  a.order = g.order();
  a.classes = conjugacy_classes(g);
  const std::size_t r = a.rank();
  require_budget(r, budgets.oracle_classes, "character-degree oracle (class count)");
  a.identity_class = a.classes.class_of[g.identity()];
  a.inverse_class.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    a.inverse_class[k] = a.classes.class_of[g.inv(a.classes.reps[k])];
    a.exponent = std::lcm(a.exponent, element_order(g, a.classes.reps[k]));
  }
  a.coeffs.assign(r * r * r, 0);
  // For each target class k: x in C_i, y = x^-1 g_k in C_j. Distinct k write disjoint cells.
  parallel_for(r, threads, [&](std::size_t k) {
    const int gk = a.classes.reps[k];
    for (std::size_t x = 0; x < g.order(); ++x) {
      int y = g.mul(g.inv(static_cast<int>(x)), gk);
      const std::size_t i = a.classes.class_of[x], j = a.classes.class_of[y];
      ++a.coeffs[(i * r + j) * r + k];
    }
  });
  return a;
}

DegreeResult character_degrees(const ClassAlgebra& algebra, std::uint64_t seed) {
  DegreeResult result;
  result.class_count = algebra.rank();
  const std::uint64_t floor = 2 * isqrt(algebra.order) + 2;
  std::uint64_t l = algebra.exponent + 1;
  while (l <= floor) l += algebra.exponent;
  for (int attempt = 0; attempt < 12; ++attempt) {
    while (!is_prime_u64(l)) l += algebra.exponent;
    if (degrees_mod(algebra, l, seed + static_cast<std::uint64_t>(attempt), result.degrees)) {
      result.prime = l;
      return result;
    }
    l += algebra.exponent;
  }
  throw InternalError("character-degree oracle: no usable prime found");
}

DegreeResult character_degrees(const FiniteGroup& g, const Budgets& budgets, int threads) {
  return character_degrees(class_algebra(g, budgets, threads));
}

}  // namespace cliffdeg
