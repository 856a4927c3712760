#include <random>
#include <vector>

#include "doctest.h"

#include "cliffdeg/errors.hpp"
#include "cliffdeg/jordan.hpp"
#include "cliffdeg/lie.hpp"
#include "cliffdeg/linalg.hpp"
#include "cliffdeg/matrix.hpp"

using namespace cliffdeg;

namespace {

Rings rings(RingKind kind, int p, int m = 1, bool ext = false) {
  RingSpec spec;
  spec.kind = kind;
  spec.p = p;
  spec.m = m;
  spec.ext = ext;
  return make_rings(spec);
}

Mat from_rows(const Ring& r, std::initializer_list<std::initializer_list<int>> rows) {
  Mat m(static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int v : row) m(i, j++) = r.from_int(v);
    ++i;
  }
  return m;
}

// Leibniz expansion, for cross-checking the elimination determinant.
Elem leibniz_det(const Ring& r, const Mat& a) {
  std::vector<int> perm(a.n);
  for (int i = 0; i < a.n; ++i) perm[i] = i;
  Elem total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < a.n; ++i)
      for (int j = i + 1; j < a.n; ++j) inversions += perm[i] > perm[j];
    Elem term = 1;
    for (int i = 0; i < a.n; ++i) term = r.mul(term, a(i, perm[i]));
    total = inversions % 2 ? r.sub(total, term) : r.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

int rank_of(const Ring& residue, const Mat& a) {
  FieldOps f(residue.field());
  Dense<FieldOps> d(a.n, Vec<FieldOps>(a.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) d[i][j] = a(i, j);
  return rank(f, d);
}

// Number of Jordan blocks of size >= k at lambda, from ranks of powers of A - lambda.
int blocks_at_least(const Ring& residue, const Mat& a, Elem lambda, int k) {
  Mat nil = mat_sub(residue, a, scalar(residue, a.n, lambda));
  Mat pw = identity(a.n);
  for (int i = 0; i < k - 1; ++i) pw = mat_mul(residue, pw, nil);
  int before = rank_of(residue, pw);
  return before - rank_of(residue, mat_mul(residue, pw, nil));
}

}  // namespace

TEST_CASE("mat_det examples and multiplicativity") {
  Rings u = rings(RingKind::Unramified, 3);
  const Ring& R = u.ring;
  CHECK(mat_det(R, identity(3)) == 1);
  Mat d = identity(3);
  d(0, 0) = R.pi();
  CHECK(mat_det(R, d) == R.pi());
  CHECK(R.to_integer(mat_det(R, from_rows(R, {{2, 1}, {1, 2}}))) == 3);

  for (auto kind : {RingKind::Unramified, RingKind::Ramified}) {
    Rings rs = rings(kind, 3);
    std::mt19937 rng(7);
    for (int n = 1; n <= 4; ++n)
      for (int t = 0; t < 300; ++t) {
        Mat a = random_mat(n, rs.ring.size(), rng), b = random_mat(n, rs.ring.size(), rng);
        // Bias towards non-units in the first column to exercise the cofactor fallback.
        if (t % 3 == 0)
          for (int i = 0; i < n; ++i) a(i, 0) = rs.ring.mul(rs.ring.pi(), a(i, 0));
        CHECK(mat_det(rs.ring, a) == leibniz_det(rs.ring, a));
        CHECK(mat_det(rs.ring, mat_mul(rs.ring, a, b)) ==
              rs.ring.mul(mat_det(rs.ring, a), mat_det(rs.ring, b)));
        if (is_invertible(rs.ring, a)) {
          CHECK(mat_mul(rs.ring, a, mat_inv(rs.ring, a)) == identity(n));
        } else {
          CHECK_THROWS_AS(mat_inv(rs.ring, a), InvalidConfig);
        }
      }
  }
}

TEST_CASE("matrix keys are injective and order preserving") {
  Rings u = rings(RingKind::Unramified, 3);
  std::mt19937 rng(3);
  for (int t = 0; t < 500; ++t) {
    Mat a = random_mat(3, 9, rng), b = random_mat(3, 9, rng);
    CHECK(mat_from_key(mat_key(a, 9), 3, 9) == a);
    bool lex_less = std::lexicographical_compare(a.e.begin(), a.e.begin() + 9, b.e.begin(), b.e.begin() + 9);
    CHECK(lex_less == (mat_key(a, 9) < mat_key(b, 9)));
  }
}

TEST_CASE("trace_form") {
  Rings u = rings(RingKind::Unramified, 3);
  const Ring& F = u.residue;
  Mat e12(3), e21(3);
  e12(0, 1) = 1;
  e21(1, 0) = 1;
  CHECK(trace_form(F, e12, e21) == 1);
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    Mat a = random_mat(3, 3, rng), b = random_mat(3, 3, rng);
    CHECK(trace_form(F, a, identity(3)) == trace(F, a));
    CHECK(trace_form(F, a, b) == trace_form(F, b, a));
  }
  // For A skew and B = Y - Y^t: tr(AB) = 2 tr(AY).
  for (int n = 2; n <= 3; ++n) {
    LieSpace mo = lie_space(Family::O, n, F);
    for (const Mat& a : mo.elements(F))
      for (int t = 0; t < 20; ++t) {
        Mat y = random_mat(n, 3, rng);
        Mat b = mat_sub(F, y, transpose(y));
        CHECK(trace_form(F, a, b) == F.mul(F.from_int(2), trace_form(F, a, y)));
      }
  }
}

TEST_CASE("trace form is non-degenerate on all matrices") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}})
    for (int n = 1; n <= 3; ++n) {
      Rings rs = rings(RingKind::Unramified, p, m);
      const GaloisField& f = *rs.field;
      LieSpace full;
      full.family = Family::SL;
      full.n = n;
      full.size = n;
      full.p = p;
      for (int e = 0; e < n * n; ++e)
        for (int d = 0; d < m; ++d) {
          Mat x(n);
          std::vector<int> digits(m, 0);
          digits[d] = 1;
          x.e[e] = f.from_digits(digits);
          full.basis.push_back(x);
        }
      CHECK(radical(full, rs.residue).dim() == 0);
    }
}

TEST_CASE("lie_space dimensions and membership") {
  Rings r3 = rings(RingKind::Unramified, 3);
  const Ring& F = r3.residue;
  for (int n = 1; n <= 3; ++n) {
    CHECK(lie_space(Family::O, n, F).dim() == n * (n - 1) / 2);
    CHECK(lie_space(Family::SL, n, F).dim() == n * n - 1);
  }
  CHECK(lie_space(Family::O, 2, F).cardinality() == 3);
  for (int n = 1; n <= 2; ++n) CHECK(lie_space(Family::Sp, n, F).dim() == n * (2 * n + 1));

  LieSpace sp1 = lie_space(Family::Sp, 1, F);
  for (const Mat& b : {from_rows(F, {{1, 0}, {0, -1}}), from_rows(F, {{0, 1}, {0, 0}}), from_rows(F, {{0, 0}, {1, 0}})})
    CHECK(in_lie_space(Family::Sp, F, b));

  Rings u = rings(RingKind::Unramified, 3, 1, true);
  for (int n = 1; n <= 2; ++n) CHECK(lie_space(Family::U, n, u.residue).dim() == n * n);
  CHECK_THROWS_AS(lie_space(Family::U, 2, F), InvalidConfig);

  for (Family fam : {Family::SL, Family::O, Family::Sp}) {
    LieSpace space = lie_space(fam, 2, F);
    for (const Mat& x : space.elements(F)) CHECK(in_lie_space(fam, F, x));
  }
}

TEST_CASE("X -> I + pi X is additive on M_C") {
  for (auto kind : {RingKind::Unramified, RingKind::Ramified}) {
    Rings rs = rings(kind, 3);
    for (auto [fam, n] : std::vector<std::pair<Family, int>>{{Family::SL, 2}, {Family::O, 3}, {Family::Sp, 1}}) {
      LieSpace space = lie_space(fam, n, rs.residue);
      auto elems = space.elements(rs.residue);
      for (const Mat& x : elems)
        for (const Mat& y : elems) {
          Mat prod = mat_mul(rs.ring, one_plus_pi(rs.ring, x), one_plus_pi(rs.ring, y));
          CHECK(prod == one_plus_pi(rs.ring, mat_add(rs.residue, x, y)));
          CHECK(kernel_coordinates(rs.ring, prod) == mat_add(rs.residue, x, y));
        }
    }
  }
}

TEST_CASE("radicals") {
  for (int p : {3, 5}) {
    Rings rs = rings(RingKind::Unramified, p);
    const Ring& F = rs.residue;
    for (int n = 1; n <= 3; ++n) CHECK(radical(lie_space(Family::O, n, F), F).dim() == 0);
    for (int n = 1; n <= 2; ++n) CHECK(radical(lie_space(Family::Sp, n, F), F).dim() == 0);
    Rings ext = rings(RingKind::Unramified, p, 1, true);
    for (int n = 1; n <= 2; ++n) CHECK(radical(lie_space(Family::U, n, ext.residue), ext.residue).dim() == 0);
    CHECK(radical(lie_space(Family::SL, 2, F), F).dim() == 0);
  }
  // SL: the radical is the scalar line exactly when p | n.
  for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {3, 4}, {5, 3}, {5, 5}}) {
    Rings rs = rings(RingKind::Unramified, p);
    LieSpace rad = radical(lie_space(Family::SL, n, rs.residue), rs.residue);
    if (n % p == 0) {
      REQUIRE(rad.dim() == 1);
      CHECK(is_scalar(rad.basis[0]));
    } else {
      CHECK(rad.dim() == 0);
    }
  }
}

TEST_CASE("scalar class representatives") {
  Rings rs = rings(RingKind::Unramified, 3);
  const Ring& F = rs.residue;
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    Mat a = random_mat(3, 3, rng);
    Mat rep = scalar_class_rep(F, a);
    CHECK(rep(2, 2) == 0);
    CHECK(is_scalar(mat_sub(F, a, rep)));
    for (int x = 0; x < 3; ++x)
      CHECK(scalar_class_rep(F, mat_add(F, a, scalar(F, 3, static_cast<Elem>(x)))) == rep);
  }
}

TEST_CASE("jordan_form examples") {
  Rings rs = rings(RingKind::Unramified, 3);
  const Ring& F = rs.residue;
  auto zero = jordan_form(F, Mat(3));
  REQUIRE(std::holds_alternative<JordanForm>(zero));
  CHECK(std::get<JordanForm>(zero).eigenvalues() == std::vector<Elem>{0});

  auto nil = jordan_form(F, from_rows(F, {{0, 1}, {0, 0}}));
  REQUIRE(std::holds_alternative<JordanForm>(nil));
  const JordanForm& jf = std::get<JordanForm>(nil);
  CHECK(jf.blocks.size() == 1);
  CHECK(jf.blocks[0].size == 2);
  CHECK(jf.jordan == from_rows(F, {{0, 1}, {0, 0}}));

  // Companion matrix of t^2 + 1, which has no root in F_3.
  auto comp = jordan_form(F, from_rows(F, {{0, -1}, {1, 0}}));
  REQUIRE(std::holds_alternative<SplitFailure>(comp));
  const SplitFailure& sf = std::get<SplitFailure>(comp);
  CHECK(sf.char_poly == std::vector<Elem>{1, 0, 1});
  CHECK(sf.factors.size() == 1);
  for (int x = 0; x < 3; ++x) CHECK(poly_eval(FieldOps(*rs.field), sf.char_poly, static_cast<Elem>(x)) != 0);
}

TEST_CASE("jordan_form on random matrices") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}}) {
    Rings rs = rings(RingKind::Unramified, p, m);
    const Ring& F = rs.residue;
    std::mt19937 rng(static_cast<unsigned>(p * 10 + m));
    int split = 0;
    for (int t = 0; t < 300; ++t) {
      const int n = 1 + t % 5;
      Mat a = random_mat(n, F.size(), rng);
      // Sparse nilpotent-heavy inputs give nontrivial block structure.
      if (t % 2) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j <= i; ++j) a(i, j) = (i == j && t % 4 == 1) ? a(0, 0) : 0;
        Mat g = random_mat(n, F.size(), rng);
        if (!is_invertible(F, g)) continue;
        a = mat_mul(F, mat_mul(F, g, a), mat_inv(F, g));
      }
      auto res = jordan_form(F, a);
      if (!std::holds_alternative<JordanForm>(res)) {
        const auto& sf = std::get<SplitFailure>(res);
        int root_count = 0;
        for (int x = 0; x < F.size(); ++x)
          root_count += poly_eval(FieldOps(*rs.field), sf.char_poly, static_cast<Elem>(x)) == 0;
        CHECK(root_count < n);
        continue;
      }
      ++split;
      const JordanForm& jf = std::get<JordanForm>(res);
      CHECK(mat_mul(F, jf.basis, jf.basis_inv) == identity(n));
      CHECK(mat_mul(F, mat_mul(F, jf.basis_inv, a), jf.basis) == jf.jordan);
      for (Elem lambda : jf.eigenvalues()) {
        auto part = jf.partition(lambda);
        CHECK(std::is_sorted(part.rbegin(), part.rend()));
        for (int k = 1; k <= n; ++k) {
          int expected = static_cast<int>(std::count_if(part.begin(), part.end(), [k](int s) { return s >= k; }));
          CHECK(blocks_at_least(F, a, lambda, k) == expected);
        }
      }
    }
    CHECK(split > 50);
  }
}

TEST_CASE("arrange_cycles") {
  Rings rs = rings(RingKind::Unramified, 3);
  const Ring& F = rs.residue;
  auto arrange = [&](const Mat& a, Elem x) { return arrange_cycles(F, std::get<JordanForm>(jordan_form(F, a)), x); };

  JordanArrangement d3 = arrange(from_rows(F, {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}}), 1);
  CHECK(d3.r == 1);
  CHECK(d3.p == 3);
  CHECK(d3.grid == std::vector<std::vector<Elem>>{{0, 1, 2}});
  CHECK(d3.sizes == std::vector<std::vector<int>>{{1, 1, 1}});

  // J2 at each of 0, 1, 2.
  Mat b(6);
  for (int ev = 0; ev < 3; ++ev) {
    b(2 * ev, 2 * ev) = b(2 * ev + 1, 2 * ev + 1) = static_cast<Elem>(ev);
  }
  b(0, 1) = 1;
  b(2, 3) = 1;
  b(4, 5) = 1;
  JordanArrangement two = arrange(b, 1);
  CHECK(two.r == 1);
  CHECK(two.strands == 1);
  CHECK(two.sizes == std::vector<std::vector<int>>{{2, 2, 2}});

  // A + I is conjugate to A: the block-count profile is shifted, checked by ranks.
  Mat shifted = mat_add(F, b, identity(6));
  for (int ev = 0; ev < 3; ++ev)
    for (int k = 1; k <= 3; ++k)
      CHECK(blocks_at_least(F, b, static_cast<Elem>(ev), k) ==
            blocks_at_least(F, shifted, F.field().add(static_cast<Elem>(ev), 1), k));

  // diag(0,1,2,0,1,2): a single eigenvalue cycle carrying two strands of blocks.
  JordanArrangement semisimple = arrange(from_rows(F, {{0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 2, 0, 0, 0},
                                                       {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 2}}),
                                         1);
  CHECK(semisimple.r == 1);
  CHECK(semisimple.strands == 2);

  CHECK_THROWS_AS(arrange(from_rows(F, {{0, 0}, {0, 1}}), 1), ArrangementError);
  Mat bad = b;
  bad(2, 3) = 0;  // J2 at 0 but J1+J1 at 1
  CHECK_THROWS_AS(arrange(bad, 1), ArrangementError);
}
