#include <numeric>
#include <vector>

#include "doctest.h"

#include "cliffdeg/errors.hpp"
#include "cliffdeg/oracle.hpp"

using namespace cliffdeg;

namespace {

GroupSpec spec_of(Family f, int n, RingKind kind = RingKind::Unramified, int p = 3) {
  RingSpec r;
  r.kind = kind;
  r.p = p;
  return make_group_spec(f, n, r);
}

void check_self_consistent(const FiniteGroup& g, const DegreeResult& d) {
  std::uint64_t squares = 0;
  for (auto x : d.degrees) {
    squares += x * x;
    CHECK(g.order() % x == 0);
  }
  CHECK(squares == g.order());
  CHECK(d.degrees.size() == d.class_count);
}

}  // namespace

TEST_CASE("class algebra of C3") {
  TableGroup c3 = TableGroup::cyclic(3);
  ClassAlgebra a = class_algebra(c3);
  REQUIRE(a.rank() == 3);
  CHECK(a.exponent == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(a.coefficient(a.classes.class_of[i], a.classes.class_of[j], a.classes.class_of[k]) ==
              ((i + j) % 3 == k ? 1u : 0u));
  auto d = character_degrees(a);
  CHECK(d.degrees == std::vector<std::uint64_t>{1, 1, 1});
}

TEST_CASE("class algebra identities") {
  for (const TableGroup& g : {TableGroup::symmetric(3), TableGroup::symmetric(4), TableGroup::cyclic(6)}) {
    ClassAlgebra a = class_algebra(g);
    const std::size_t r = a.rank();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        std::uint64_t sum = 0;
        for (std::size_t k = 0; k < r; ++k) {
          sum += static_cast<std::uint64_t>(a.coefficient(i, j, k)) * a.classes.sizes[k];
          CHECK(a.coefficient(i, j, k) == a.coefficient(j, i, k));
        }
        CHECK(sum == a.classes.sizes[i] * a.classes.sizes[j]);
      }
  }
}

TEST_CASE("S3 and S4") {
  TableGroup s3 = TableGroup::symmetric(3);
  ClassAlgebra a = class_algebra(s3);
  std::vector<std::size_t> sizes = a.classes.sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
  auto d3 = character_degrees(a);
  CHECK(d3.degrees == std::vector<std::uint64_t>{1, 1, 2});
  check_self_consistent(s3, d3);

  TableGroup s4 = TableGroup::symmetric(4);
  auto d4 = character_degrees(s4);
  CHECK(d4.degrees == std::vector<std::uint64_t>{1, 1, 2, 3, 3});
  check_self_consistent(s4, d4);
}

TEST_CASE("abelian groups have linear characters only") {
  for (int k : {1, 2, 5, 12}) {
    TableGroup c = TableGroup::cyclic(k);
    auto d = character_degrees(c);
    CHECK(d.degrees == std::vector<std::uint64_t>(k, 1));
  }
}

TEST_CASE("SL2(F3)") {
  MatrixGroup g = enumerate_residue_group(spec_of(Family::SL, 2));
  ClassAlgebra a = class_algebra(g);
  CHECK(a.rank() == 7);
  std::size_t total = std::accumulate(a.classes.sizes.begin(), a.classes.sizes.end(), std::size_t{0});
  CHECK(total == 24);
  auto d = character_degrees(a);
  CHECK(d.degrees == std::vector<std::uint64_t>{1, 1, 1, 2, 2, 2, 3});
  check_self_consistent(g, d);
}

TEST_CASE("SL2 over both length-two rings") {
  MatrixGroup a = enumerate_group(spec_of(Family::SL, 2, RingKind::Unramified));
  MatrixGroup b = enumerate_group(spec_of(Family::SL, 2, RingKind::Ramified));
  auto da = character_degrees(a, {}, 2);
  auto db = character_degrees(b, {}, 2);
  check_self_consistent(a, da);
  check_self_consistent(b, db);
  CHECK(da.class_count == conjugacy_classes(a).count());
  CHECK(da.degrees == db.degrees);
}

TEST_CASE("oracle budgets") {
  Budgets tight;
  tight.oracle = 10;
  CHECK_THROWS_AS(class_algebra(TableGroup::symmetric(4), tight), BudgetExceeded);
  tight.oracle = 100;
  tight.oracle_classes = 3;
  CHECK_THROWS_AS(class_algebra(TableGroup::symmetric(4), tight), BudgetExceeded);
}
