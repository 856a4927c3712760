#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "cliffdeg/errors.hpp"
#include "cliffdeg/group.hpp"

using namespace cliffdeg;

namespace {

GroupSpec spec_of(Family f, int n, RingKind kind = RingKind::Unramified, int p = 3) {
  RingSpec r;
  r.kind = kind;
  r.p = p;
  return make_group_spec(f, n, r);
}

// Integer-matrix oracle over Z/mod: count 2x2 matrices satisfying a predicate.
template <class Pred>
int count_2x2(int mod, Pred pred) {
  int count = 0;
  for (int a = 0; a < mod; ++a)
    for (int b = 0; b < mod; ++b)
      for (int c = 0; c < mod; ++c)
        for (int d = 0; d < mod; ++d) count += pred(a, b, c, d);
  return count;
}

// Conjugacy classes by conjugating with every element.
std::multiset<std::size_t> brute_class_sizes(const FiniteGroup& g) {
  std::vector<char> done(g.order(), 0);
  std::multiset<std::size_t> sizes;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::set<int> cls;
    for (std::size_t h = 0; h < g.order(); ++h) cls.insert(g.conj(static_cast<int>(h), static_cast<int>(x)));
    for (int y : cls) done[y] = 1;
    sizes.insert(cls.size());
  }
  return sizes;
}

}  // namespace

TEST_CASE("residue group orders") {
  GroupSpec sl2 = spec_of(Family::SL, 2);
  MatrixGroup g = enumerate_residue_group(sl2);
  CHECK(g.order() == 24);
  CHECK(count_2x2(3, [](int a, int b, int c, int d) { return ((a * d - b * c) % 3 + 3) % 3 == 1; }) == 24);

  GroupSpec o2 = spec_of(Family::O, 2);
  CHECK(enumerate_residue_group(o2).order() == 8);
  CHECK(count_2x2(3, [](int a, int b, int c, int d) {
          return (a * a + c * c) % 3 == 1 && (b * b + d * d) % 3 == 1 && (a * b + c * d) % 3 == 0;
        }) == 8);

  // Sp_1 and SL_2 have the same elements.
  MatrixGroup sp1 = enumerate_residue_group(spec_of(Family::Sp, 1));
  CHECK(sp1.elements() == g.elements());

  CHECK(enumerate_residue_group(spec_of(Family::O, 3)).order() == 48);
  CHECK(enumerate_residue_group(spec_of(Family::U, 2)).order() == 96);
  CHECK(enumerate_residue_group(spec_of(Family::U, 1)).order() == 4);
  CHECK(enumerate_residue_group(spec_of(Family::SL, 3)).order() == 5616);
  CHECK(enumerate_residue_group(spec_of(Family::SL, 2, RingKind::Unramified, 5)).order() == 120);
  CHECK(enumerate_residue_group(spec_of(Family::Sp, 2)).order() == 51840);

  for (const Mat& x : g.elements()) CHECK(is_member(sl2, sl2.residue(), x));
}

TEST_CASE("lift_element") {
  for (auto kind : {RingKind::Unramified, RingKind::Ramified})
    for (auto [fam, n] : std::vector<std::pair<Family, int>>{
             {Family::SL, 2}, {Family::O, 2}, {Family::O, 3}, {Family::U, 2}, {Family::Sp, 1}, {Family::SL, 3}}) {
      GroupSpec spec = spec_of(fam, n, kind);
      MatrixGroup res = enumerate_residue_group(spec);
      CHECK(lift_element(spec, identity(spec.size)) == identity(spec.size));
      for (const Mat& gbar : res.elements()) {
        Mat g = lift_element(spec, gbar);
        CHECK(reduce(spec.ring(), g) == gbar);
        CHECK(is_member(spec, spec.ring(), g));
      }
    }
  // Determinant of every lift in SL_2(Z/9) is 1 as an integer mod 9.
  GroupSpec sl2 = spec_of(Family::SL, 2);
  MatrixGroup sl2_res = enumerate_residue_group(sl2);
  for (const Mat& gbar : sl2_res.elements()) {
    Mat g = lift_element(sl2, gbar);
    const Ring& r = sl2.ring();
    int det = r.to_integer(g(0, 0)) * r.to_integer(g(1, 1)) - r.to_integer(g(0, 1)) * r.to_integer(g(1, 0));
    CHECK(((det % 9) + 9) % 9 == 1);
  }
}

TEST_CASE("groups over O_2") {
  for (auto kind : {RingKind::Unramified, RingKind::Ramified}) {
    CHECK(enumerate_group(spec_of(Family::SL, 2, kind)).order() == 648);
    CHECK(enumerate_group(spec_of(Family::O, 2, kind)).order() == 24);
    CHECK(enumerate_group(spec_of(Family::O, 3, kind)).order() == 1296);
    CHECK(enumerate_group(spec_of(Family::U, 2, kind)).order() == 7776);
    CHECK(enumerate_group(spec_of(Family::Sp, 1, kind)).elements() ==
          enumerate_group(spec_of(Family::SL, 2, kind)).elements());
  }
  // Integer oracle over Z/9.
  CHECK(count_2x2(9, [](int a, int b, int c, int d) { return ((a * d - b * c) % 9 + 9) % 9 == 1; }) == 648);
  CHECK(count_2x2(9, [](int a, int b, int c, int d) {
          return (a * a + c * c) % 9 == 1 && (b * b + d * d) % 9 == 1 && (a * b + c * d) % 9 == 0;
        }) == 24);

  Budgets tight;
  tight.enumeration = 500;
  CHECK_THROWS_AS(enumerate_group(spec_of(Family::SL, 2), tight), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_group(spec_of(Family::SL, 3)), BudgetExceeded);
}

TEST_CASE("reduction is a surjective homomorphism with kernel I + pi M_C") {
  for (auto kind : {RingKind::Unramified, RingKind::Ramified})
    for (auto [fam, n] : std::vector<std::pair<Family, int>>{{Family::SL, 2}, {Family::O, 3}, {Family::U, 2}}) {
      GroupSpec spec = spec_of(fam, n, kind);
      MatrixGroup res = enumerate_residue_group(spec);
      MatrixGroup big = enumerate_group(spec);
      LieSpace lie = lie_space(fam, n, spec.residue());
      std::vector<std::size_t> fibre(res.order(), 0);
      std::size_t kernel = 0;
      for (const Mat& g : big.elements()) {
        Mat gb = reduce(spec.ring(), g);
        int idx = res.index_of(gb);
        REQUIRE(idx >= 0);
        ++fibre[idx];
        if (gb == identity(spec.size)) {
          ++kernel;
          CHECK(in_lie_space(fam, spec.residue(), kernel_coordinates(spec.ring(), g)));
        }
      }
      CHECK(kernel == lie.cardinality());
      CHECK(std::all_of(fibre.begin(), fibre.end(), [&](std::size_t c) { return c == lie.cardinality(); }));
      std::mt19937 rng(1);
      for (int t = 0; t < 2000; ++t) {
        int a = static_cast<int>(rng() % big.order()), b = static_cast<int>(rng() % big.order());
        Mat lhs = reduce(spec.ring(), big.element(big.mul(a, b)));
        Mat rhs = mat_mul(spec.residue(), reduce(spec.ring(), big.element(a)), reduce(spec.ring(), big.element(b)));
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("conjugacy classes") {
  TableGroup c5 = TableGroup::cyclic(5);
  auto cc5 = conjugacy_classes(c5);
  CHECK(cc5.count() == 5);

  TableGroup s3 = TableGroup::symmetric(3);
  auto ccs = conjugacy_classes(s3);
  std::multiset<std::size_t> s3_sizes(ccs.sizes.begin(), ccs.sizes.end());
  CHECK(s3_sizes == std::multiset<std::size_t>{1, 2, 3});

  MatrixGroup sl2 = enumerate_residue_group(spec_of(Family::SL, 2));
  auto cc = conjugacy_classes(sl2);
  std::multiset<std::size_t> sizes(cc.sizes.begin(), cc.sizes.end());
  CHECK(cc.count() == 7);
  CHECK(sizes == std::multiset<std::size_t>{1, 1, 4, 4, 4, 4, 6});
  CHECK(sizes == brute_class_sizes(sl2));
  for (std::size_t i = 0; i < cc.count(); ++i) {
    // Representative is the least element of its class; orbit-stabilizer.
    for (std::size_t x = 0; x < sl2.order(); ++x)
      if (cc.class_of[x] == static_cast<int>(i)) CHECK(static_cast<int>(x) >= cc.reps[i]);
    std::size_t stab = 0;
    for (std::size_t g = 0; g < sl2.order(); ++g) stab += sl2.conj(static_cast<int>(g), cc.reps[i]) == cc.reps[i];
    CHECK(stab * cc.sizes[i] == sl2.order());
  }

  MatrixGroup a = enumerate_group(spec_of(Family::SL, 2, RingKind::Unramified));
  MatrixGroup b = enumerate_group(spec_of(Family::SL, 2, RingKind::Ramified));
  auto ca = conjugacy_classes(a);
  auto cb = conjugacy_classes(b);
  CHECK(ca.count() == cb.count());
  std::multiset<std::size_t> sa(ca.sizes.begin(), ca.sizes.end()), sb(cb.sizes.begin(), cb.sizes.end());
  CHECK(sa == brute_class_sizes(a));
  CHECK(sa == sb);
}

TEST_CASE("generators generate") {
  MatrixGroup o3 = enumerate_residue_group(spec_of(Family::O, 3));
  auto gens = generators(o3, 42);
  CHECK(closure(o3, gens).size() == o3.order());
  CHECK(generators(o3, 42) == gens);
}

TEST_CASE("centralizers") {
  GroupSpec sl2 = spec_of(Family::SL, 2);
  const Ring& f = sl2.residue();
  MatrixGroup g = enumerate_residue_group(sl2);
  CHECK(centralizer(g, f, Mat(2), CentralizerMode::Exact).order() == g.order());
  Mat d(2);
  d(0, 0) = 1;
  d(1, 1) = f.neg(1);
  MatrixGroup z = centralizer(g, f, d, CentralizerMode::Exact);
  CHECK(z.order() == 2);
  for (const Mat& x : z.elements()) CHECK((x(0, 1) == 0 && x(1, 0) == 0));

  // Scalar-class mode contains exact mode; for n = 3, q = 3 some diagonal A
  // has a strictly larger scalar-class centralizer.
  GroupSpec sl3 = spec_of(Family::SL, 3);
  MatrixGroup g3 = enumerate_residue_group(sl3);
  bool witness = false;
  for (int code = 0; code < 27 && !witness; ++code) {
    Mat a(3);
    a(0, 0) = static_cast<Elem>(code % 3);
    a(1, 1) = static_cast<Elem>(code / 3 % 3);
    a(2, 2) = static_cast<Elem>(code / 9);
    auto exact = centralizer_indices(g3, sl3.residue(), a, CentralizerMode::Exact, 2);
    auto scalar_cls = centralizer_indices(g3, sl3.residue(), a, CentralizerMode::ScalarClass, 2);
    CHECK(std::includes(scalar_cls.begin(), scalar_cls.end(), exact.begin(), exact.end()));
    if (scalar_cls.size() > exact.size()) witness = true;
  }
  CHECK(witness);
}

TEST_CASE("order formulas agree with enumeration") {
  for (Family f : {Family::SL, Family::Sp, Family::O, Family::U})
    for (int n = 1; n <= 4; ++n)
      for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}}) {
        RingSpec r;
        r.p = p;
        r.m = m;
        if ((f == Family::Sp ? 2 * n : n) > 4) continue;
        GroupSpec spec = make_group_spec(f, n, r);
        const std::size_t formula = residue_group_order(spec);
        if (formula > 60000) continue;
        INFO(spec.describe());
        CHECK(enumerate_residue_group(spec).order() == formula);
      }
}
