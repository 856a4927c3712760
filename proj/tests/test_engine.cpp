#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "cliffdeg/engine.hpp"
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

EngineConfig threaded(int threads = 4) {
  EngineConfig c;
  c.threads = threads;
  return c;
}

void require_checks(const IrrResult& r) {
  for (const auto& [name, check] : r.checks) {
    INFO(name << ": " << check.detail);
    CHECK(check.ok);
  }
}

void require_checks(const ExtensionReport& r) {
  INFO("rep " << to_string(r.rep) << " method " << r.method);
  for (const auto& [name, check] : r.checks) {
    INFO(name << ": " << check.detail);
    CHECK(check.ok);
  }
  for (const auto& [name, check] : r.s.checks) {
    INFO(name << ": " << check.detail);
    CHECK(check.ok);
  }
}

std::size_t linear_characters(const Classical& c, const Mat& a, CentralizerMode mode) {
  MatrixGroup z = centralizer(c.residue_group, c.residue(), a, mode);
  auto d = character_degrees(z).degrees;
  return static_cast<std::size_t>(std::count(d.begin(), d.end(), 1u));
}

}  // namespace

TEST_CASE("orbits of SL2 over F3") {
  Classical c = make_classical(spec_of(Family::SL, 2));
  CHECK_FALSE(c.scalar_mode);
  auto orbits = adjoint_orbits(c);
  std::size_t total = 0;
  for (const auto& o : orbits) {
    total += o.size;
    CHECK(o.size * o.stab_order() == 24);
  }
  CHECK(total == 27);
  REQUIRE(orbits.front().rep == Mat(2));
  CHECK(orbits.front().size == 1);
  CHECK(orbits.front().stab_order() == 24);
  // Representatives are least in key order within their orbit.
  const Ring& f = c.residue();
  for (const auto& o : orbits)
    for (const Mat& g : c.residue_group.elements()) {
      Mat b = mat_mul(f, mat_mul(f, g, o.rep), mat_inv(f, g));
      CHECK(mat_key(o.rep, f.size()) <= mat_key(b, f.size()));
    }
}

TEST_CASE("kernel characters") {
  Classical sl3 = make_classical(spec_of(Family::SL, 3));
  REQUIRE(sl3.scalar_mode);
  const Ring& f = sl3.residue();
  auto kernel = sl3.lie.elements(f);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    Mat a = random_mat(3, f.size(), rng);
    KernelCharacter base = kernel_character(sl3, a);
    for (Elem x = 1; x < f.size(); ++x) {
      KernelCharacter shifted = kernel_character(sl3, mat_add(f, a, scalar(f, 3, x)));
      CHECK(shifted.a == base.a);
      // Independent of the representative even before canonicalization.
      for (const Mat& k : kernel)
        CHECK(pairing_exponent(f, mat_add(f, a, scalar(f, 3, x)), k) == pairing_exponent(f, a, k));
    }
  }
  // Homomorphism on L(C).
  Classical o3 = make_classical(spec_of(Family::O, 3));
  auto elems = o3.lie.elements(o3.residue());
  KernelCharacter phi = kernel_character(o3, elems[5]);
  for (const Mat& x : elems)
    for (const Mat& y : elems)
      CHECK(phi.exponent(mat_add(o3.residue(), x, y)) == (phi.exponent(x) + phi.exponent(y)) % 3);

  // Injectivity on M_O for n = 2.
  Classical o2 = make_classical(spec_of(Family::O, 2));
  auto mo = o2.lie.elements(o2.residue());
  REQUIRE(mo.size() == 3);
  std::set<std::vector<int>> tables;
  for (const Mat& a : mo) {
    std::vector<int> t;
    for (const Mat& x : mo) t.push_back(kernel_character(o2, a).exponent(x));
    tables.insert(t);
  }
  CHECK(tables.size() == 3);

  Mat bad(2);
  bad(0, 0) = 1;
  CHECK_THROWS_AS(kernel_character(o2, bad), InvalidConfig);
}

TEST_CASE("irr of SL2 agrees with the oracle on both rings") {
  for (auto kind : {RingKind::Unramified, RingKind::Ramified}) {
    Classical c = make_classical(spec_of(Family::SL, 2, kind));
    IrrResult r = irr_dimensions(c, threaded());
    require_checks(r);
    CHECK(r.group_order == 648);
    // Orbit A = 0 carries Irr(SL2(F3)) with index 1.
    CHECK(r.orbits.front().degrees == std::vector<std::uint64_t>{1, 1, 1, 2, 2, 2, 3});
    OracleComparison cmp = compare_with_oracle(c, r, threaded());
    CHECK(cmp.class_count.ok);
    CHECK(cmp.degrees.ok);
  }
}

TEST_CASE("irr agrees with the oracle for O2, O3, U2") {
  for (auto [fam, n] : std::vector<std::pair<Family, int>>{{Family::O, 2}, {Family::O, 3}, {Family::U, 2}}) {
    Classical c = make_classical(spec_of(fam, n));
    IrrResult r = irr_dimensions(c, threaded());
    require_checks(r);
    OracleComparison cmp = compare_with_oracle(c, r, threaded());
    INFO(family_name(fam) << n << " " << cmp.class_count.detail);
    CHECK(cmp.class_count.ok);
    CHECK(cmp.degrees.ok);
  }
}

TEST_CASE("SL3 over F3 uses scalar classes") {
  Classical c = make_classical(spec_of(Family::SL, 3));
  IrrResult r = irr_dimensions(c, threaded());
  require_checks(r);
  std::size_t total = 0;
  for (const auto& o : r.orbits) total += o.size;
  CHECK(total == 6561);
  CHECK(r.group_order == 5616u * 6561u);
}

TEST_CASE("ring comparison") {
  for (auto [fam, n] : std::vector<std::pair<Family, int>>{{Family::SL, 2}, {Family::O, 3}, {Family::U, 2}}) {
    CompareResult r = compare_rings(fam, n, 3, 1, threaded());
    CHECK(r.equal);
    CHECK(r.aligned);
    CHECK(r.diff.empty());
  }
}

TEST_CASE("deterministic across thread counts") {
  Classical c = make_classical(spec_of(Family::O, 3));
  IrrResult a = irr_dimensions(c, threaded(1));
  IrrResult b = irr_dimensions(c, threaded(6));
  CHECK(a.irr == b.irr);
  REQUIRE(a.orbits.size() == b.orbits.size());
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    CHECK(a.orbits[i].rep == b.orbits[i].rep);
    CHECK(a.orbits[i].stabilizer == b.orbits[i].stabilizer);
    CHECK(a.orbits[i].degrees == b.orbits[i].degrees);
  }
}

TEST_CASE("canonical extension, SL2 diag(1,-1)") {
  Classical c = make_classical(spec_of(Family::SL, 2));
  const Ring& f = c.residue();
  Mat a(2);
  a(0, 0) = 1;
  a(1, 1) = f.neg(1);
  EngineConfig cfg;
  ExtensionReport r = verify_extension(c, a, cfg);
  CHECK(r.method == "canonical");
  require_checks(r);
  CHECK(r.checks.at("multiplicative").detail.rfind("exhaustive", 0) == 0);
  CHECK(r.checks.count("canonical_among_extensions"));

  // Extensions of phi form a coset of the linear characters of T/L.
  KernelCharacter phi = kernel_character(c, a);
  Stabilizer t = build_stabilizer(c, a, CentralizerMode::Exact);
  SearchResult s = extension_by_search(c, phi, t);
  CHECK(s.extension_count == linear_characters(c, a, CentralizerMode::Exact));

  ExtensionReport zero = verify_extension(c, Mat(2), cfg);
  require_checks(zero);
  auto chi = canonical_extension_split(c, Mat(2));
  REQUIRE(chi);
  for (const Mat& g : c.residue_group.elements()) CHECK(chi->value(lift_element(c.spec, g)) == 0);
}

TEST_CASE("every orbit of O2 has an extension") {
  for (auto kind : {RingKind::Unramified, RingKind::Ramified}) {
    Classical c = make_classical(spec_of(Family::O, 2, kind));
    auto orbits = adjoint_orbits(c);
    bool any_search = false;
    for (const auto& rep : verify_extensions(c, orbits)) {
      require_checks(rep);
      any_search = any_search || rep.method == "search";
    }
    // -1 is not a square mod 3, so nonzero A in M_O is not split.
    CHECK(any_search);
  }
}

TEST_CASE("extension counts match linear characters of the stabilizer") {
  for (auto [fam, n] : std::vector<std::pair<Family, int>>{{Family::O, 3}, {Family::U, 2}, {Family::Sp, 1}}) {
    Classical c = make_classical(spec_of(fam, n));
    for (const auto& o : adjoint_orbits(c)) {
      if (o.rep == Mat(o.rep.n)) continue;
      KernelCharacter phi = kernel_character(c, o.rep);
      SearchResult s = extension_by_search(c, phi, build_stabilizer(c, o.rep, CentralizerMode::Exact));
      CHECK(s.extension_count == linear_characters(c, o.rep, CentralizerMode::Exact));
    }
  }
}

TEST_CASE("extensions on every orbit, q = 3") {
  for (auto kind : {RingKind::Unramified, RingKind::Ramified})
    for (auto [fam, n] :
         std::vector<std::pair<Family, int>>{{Family::SL, 2}, {Family::O, 3}, {Family::U, 2}, {Family::Sp, 1}}) {
      Classical c = make_classical(spec_of(fam, n, kind));
      for (const auto& rep : verify_extensions(c, adjoint_orbits(c))) require_checks(rep);
    }
}

TEST_CASE("SL3 cycle orbit runs the permutation complement") {
  Classical c = make_classical(spec_of(Family::SL, 3));
  const Ring& f = c.residue();
  Mat a(3);
  a(0, 0) = 0;
  a(1, 1) = 1;
  a(2, 2) = 2;
  ExtensionReport r = verify_extension(c, a, threaded());
  CHECK(r.s.applicable);
  CHECK(r.s.complement_method == "permutation");
  CHECK(r.s.complement_order == 3);
  CHECK(r.method == "canonical-permutation");
  require_checks(r);
  (void)f;

  // A regular nilpotent has Z([A]) = Z(A): nothing to complement.
  Mat nil(3);
  nil(0, 1) = 1;
  nil(1, 2) = 1;
  ExtensionReport plain = verify_extension(c, nil, threaded());
  CHECK_FALSE(plain.s.applicable);
  require_checks(plain);
}
