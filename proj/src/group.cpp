#include "cliffdeg/group.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

#include "cliffdeg/errors.hpp"
#include "cliffdeg/parallel.hpp"

namespace cliffdeg {

std::string GroupSpec::describe() const {
  std::string name;
  switch (family) {
    case Family::SL: name = "SL"; break;
    case Family::Sp: name = "Sp"; break;
    case Family::O: name = "O"; break;
    case Family::U: name = "U"; break;
  }
  return name + "_" + std::to_string(n) + "(" + ring().describe() + ")";
}

GroupSpec make_group_spec(Family family, int n, RingSpec ring) {
  GroupSpec spec;
  spec.family = family;
  spec.n = n;
  spec.size = matrix_size(family, n);
  if (family == Family::U) {
    ring.ext = true;
  } else if (ring.ext) {
    throw InvalidConfig("the quadratic extension is only used by the unitary family");
  }
  spec.rings = make_rings(ring);
  return spec;
}

namespace {

// g^# M g with # = transpose (O, Sp) or conjugate transpose (U), M = I or J.
Mat gram(const GroupSpec& spec, const Ring& r, const Mat& g) {
  switch (spec.family) {
    case Family::O: return mat_mul(r, transpose(g), g);
    case Family::U: return mat_mul(r, star(r, g), g);
    case Family::Sp: return mat_mul(r, mat_mul(r, transpose(g), symplectic_form(r, spec.n)), g);
    case Family::SL: break;
  }
  throw InternalError("gram matrix requested for SL");
}

Mat form_target(const GroupSpec& spec, const Ring& r) {
  return spec.family == Family::Sp ? symplectic_form(r, spec.n) : identity(spec.size);
}

}  // namespace

bool is_member(const GroupSpec& spec, const Ring& r, const Mat& g) {
  if (g.n != spec.size) return false;
  switch (spec.family) {
    case Family::SL: return mat_det(r, g) == Ring::one();
    case Family::O: return mat_mul(r, transpose(g), g) == identity(g.n);
    case Family::U: return mat_mul(r, g, star(r, g)) == identity(g.n);
    case Family::Sp: return gram(spec, r, g) == symplectic_form(r, spec.n);
  }
  return false;
}

// ---------------------------------------------------------------------------

MatrixGroup::MatrixGroup(const Ring& ring, std::vector<Mat> elements) : ring_(ring) {
  const int rs = ring.size();
  std::vector<std::pair<MatKey, std::size_t>> keyed(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) keyed[i] = {mat_key(elements[i], rs), i};
  std::sort(keyed.begin(), keyed.end());
  elements_.reserve(elements.size());
  index_.reserve(elements.size() * 2);
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i && keyed[i].first == keyed[i - 1].first) throw InternalError("duplicate group element");
    elements_.push_back(elements[keyed[i].second]);
    index_.emplace(keyed[i].first, static_cast<int>(i));
  }
  if (elements_.empty()) throw InternalError("empty group");
  identity_ = index_of(cliffdeg::identity(elements_[0].n));
  if (identity_ < 0) throw InternalError("group does not contain the identity");
  inverse_.resize(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    int j = index_of(mat_inv(ring_, elements_[i]));
    if (j < 0) throw InternalError("group is not closed under inverses");
    inverse_[i] = j;
  }
}

int MatrixGroup::index_of(const Mat& m) const {
  auto it = index_.find(mat_key(m, ring_.size()));
  return it == index_.end() ? -1 : it->second;
}

int MatrixGroup::mul(int a, int b) const {
  int c = index_of(mat_mul(ring_, elements_[a], elements_[b]));
  if (c < 0) throw InternalError("group is not closed under multiplication");
  return c;
}

TableGroup::TableGroup(std::vector<std::vector<int>> table) : table_(std::move(table)) {
  const int n = static_cast<int>(table_.size());
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw InvalidConfig("Cayley table has no identity");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;
  if (std::count(inverse_.begin(), inverse_.end(), -1)) throw InvalidConfig("Cayley table lacks inverses");
}

TableGroup TableGroup::cyclic(int k) {
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a][b] = (a + b) % k;
  return TableGroup(std::move(t));
}

TableGroup TableGroup::symmetric(int k) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(k);
      for (int i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), c) - perms.begin());
    }
  return TableGroup(std::move(t));
}

TableGroup TableGroup::from(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = g.mul(a, b);
  return TableGroup(std::move(t));
}

// ---------------------------------------------------------------------------

MatrixGroup enumerate_residue_group(const GroupSpec& spec, const Budgets& budgets) {
  const Ring& r = spec.residue();
  const int n = spec.size;
  const int q = r.size();
  std::vector<Mat> found;

  if (spec.family == Family::SL) {
    std::size_t total = 1;
    for (int i = 0; i < n * n; ++i) {
      total *= static_cast<std::size_t>(q);
      require_budget(total, budgets.enumeration, "scan of " + std::to_string(n) + "x" + std::to_string(n) + " matrices");
    }
    for (std::size_t k = 0; k < total; ++k) {
      Mat m = mat_from_key(static_cast<MatKey>(k), n, q);
      if (mat_det(r, m) == Ring::one()) found.push_back(m);
    }
    return MatrixGroup(r, std::move(found));
  }

  // Columns c_0..c_{n-1} with c_i^# M c_j = T_ij.
  const Mat target = form_target(spec, r);
  const Mat m = spec.family == Family::Sp ? symplectic_form(r, spec.n) : identity(n);
  const bool hermitian = spec.family == Family::U;
  std::size_t vec_count = 1;
  for (int i = 0; i < n; ++i) vec_count *= static_cast<std::size_t>(q);
  require_budget(vec_count, budgets.enumeration, "column candidates");
  std::vector<std::vector<Elem>> vecs(vec_count, std::vector<Elem>(n));
  for (std::size_t k = 0; k < vec_count; ++k) {
    std::size_t c = k;
    for (int i = n - 1; i >= 0; --i) {
      vecs[k][i] = static_cast<Elem>(c % static_cast<std::size_t>(q));
      c /= static_cast<std::size_t>(q);
    }
  }
  auto form = [&](const std::vector<Elem>& u, const std::vector<Elem>& v) {
    Elem acc = 0;
    for (int a = 0; a < n; ++a) {
      Elem ua = hermitian ? r.sigma(u[a]) : u[a];
      if (ua == 0) continue;
      for (int b = 0; b < n; ++b)
        if (m(a, b) != 0) acc = r.add(acc, r.mul(ua, r.mul(m(a, b), v[b])));
    }
    return acc;
  };
  std::vector<std::vector<std::size_t>> self_ok(n);
  for (int c = 0; c < n; ++c)
    for (std::size_t k = 0; k < vec_count; ++k)
      if (form(vecs[k], vecs[k]) == target(c, c)) self_ok[c].push_back(k);

  std::vector<std::size_t> chosen(n);
  auto dfs = [&](auto&& self, int col) -> void {
    if (col == n) {
      Mat g(n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = vecs[chosen[j]][i];
      found.push_back(g);
      require_budget(found.size(), budgets.enumeration, "residue group enumeration");
      return;
    }
    for (std::size_t k : self_ok[col]) {
      bool ok = true;
      for (int prev = 0; prev < col && ok; ++prev)
        ok = form(vecs[chosen[prev]], vecs[k]) == target(prev, col) &&
             form(vecs[k], vecs[chosen[prev]]) == target(col, prev);
      if (!ok) continue;
      chosen[col] = k;
      self(self, col + 1);
    }
  };
  dfs(dfs, 0);
  return MatrixGroup(r, std::move(found));
}

Mat lift_element(const GroupSpec& spec, const Mat& gbar) {
  const Ring& f = spec.residue();
  const Ring& o = spec.ring();
  const Mat g0 = section(o, gbar);
  const Elem neg_half = f.neg(f.inv(f.from_int(2)));
  Mat g;
  switch (spec.family) {
    case Family::SL: {
      Elem d = mat_det(o, g0);
      if (o.reduce(d) != 1) throw InternalError("lift_element: determinant does not reduce to 1");
      Mat fix = identity(spec.size);
      fix(0, 0) = o.sub(Ring::one(), o.pi_times(o.tail(d)));
      g = mat_mul(o, fix, g0);
      break;
    }
    case Family::O: {
      Mat e = kernel_coordinates(o, mat_mul(o, transpose(g0), g0));
      g = mat_mul(o, g0, one_plus_pi(o, mat_scale(f, neg_half, e)));
      break;
    }
    case Family::U: {
      Mat e = kernel_coordinates(o, mat_mul(o, g0, star(o, g0)));
      g = mat_mul(o, one_plus_pi(o, mat_scale(f, neg_half, e)), g0);
      break;
    }
    case Family::Sp: {
      const Mat j = symplectic_form(o, spec.n);
      Mat defect = mat_sub(o, gram(spec, o, g0), j);
      Mat e(spec.size);
      for (int k = 0; k < spec.size * spec.size; ++k) {
        if (o.head(defect.e[k]) != 0) throw InternalError("lift_element: residue matrix is not symplectic");
        e.e[k] = o.tail(defect.e[k]);
      }
      const Mat jbar = symplectic_form(f, spec.n);
      Mat half_je = mat_scale(f, f.neg(neg_half), mat_mul(f, jbar, e));
      g = mat_mul(o, g0, one_plus_pi(o, half_je));
      break;
    }
  }
  if (reduce(o, g) != gbar || !is_member(spec, o, g)) throw InternalError("lift_element: correction failed");
  return g;
}

std::size_t residue_group_order(const GroupSpec& spec) {
  using U = unsigned __int128;
  const U q = static_cast<U>(spec.rings.spec.q());
  auto pw = [](U b, int e) {
    U r = 1;
    while (e-- > 0) r *= b;
    return r;
  };
  const int n = spec.n;
  U order = 1;
  switch (spec.family) {
    case Family::SL:
      for (int i = 0; i < n; ++i) order *= pw(q, n) - pw(q, i);
      order /= q - 1;
      break;
    case Family::Sp:
      order = pw(q, n * n);
      for (int i = 1; i <= n; ++i) order *= pw(q, 2 * i) - 1;
      break;
    case Family::O: {
      const int k = n / 2;
      if (n % 2) {
        order = 2 * pw(q, k * k);
        for (int i = 1; i <= k; ++i) order *= pw(q, 2 * i) - 1;
      } else {
        // The identity form in dimension 2k is split iff (-1)^k is a square.
        const bool split = k % 2 == 0 || q % 4 == 1;
        order = 2 * pw(q, k * (k - 1)) * (split ? pw(q, k) - 1 : pw(q, k) + 1);
        for (int i = 1; i < k; ++i) order *= pw(q, 2 * i) - 1;
      }
      break;
    }
    case Family::U:
      order = pw(q, n * (n - 1) / 2);
      for (int i = 1; i <= n; ++i) order *= i % 2 ? pw(q, i) + 1 : pw(q, i) - 1;
      break;
  }
  const U cap = static_cast<U>(std::numeric_limits<std::size_t>::max());
  return static_cast<std::size_t>(order > cap ? cap : order);
}

std::size_t expected_order(std::size_t residue_order, const LieSpace& lie) { return residue_order * lie.cardinality(); }

MatrixGroup enumerate_group(const GroupSpec& spec, const MatrixGroup& residue_group, const LieSpace& lie,
                            const Budgets& budgets) {
  const std::size_t total = expected_order(residue_group.order(), lie);
  require_budget(total, budgets.enumeration, "enumeration of " + spec.describe());
  const Ring& o = spec.ring();
  std::vector<Mat> kernel;
  for (const Mat& x : lie.elements(spec.residue())) kernel.push_back(one_plus_pi(o, x));
  std::vector<Mat> elems;
  elems.reserve(total);
  for (const Mat& gbar : residue_group.elements()) {
    Mat lift = lift_element(spec, gbar);
    for (const Mat& k : kernel) elems.push_back(mat_mul(o, lift, k));
  }
  for (const Mat& g : elems)
    if (!is_member(spec, o, g)) throw InternalError("enumerated element is not in the group");
  return MatrixGroup(o, std::move(elems));
}

MatrixGroup enumerate_group(const GroupSpec& spec, const Budgets& budgets) {
  LieSpace lie = lie_space(spec.family, spec.n, spec.residue());
  MatrixGroup residue_group = enumerate_residue_group(spec, budgets);
  return enumerate_group(spec, residue_group, lie, budgets);
}

// ---------------------------------------------------------------------------

std::vector<int> closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> out{g.identity()};
  seen[g.identity()] = 1;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (int s : gens) {
      int y = g.mul(out[head], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> generators(const FiniteGroup& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> gens;
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  std::size_t have = 1;
  while (have < g.order()) {
    int x;
    do x = static_cast<int>(rng() % g.order());
    while (in[x]);
    gens.push_back(x);
    auto h = closure(g, gens);
    have = h.size();
    std::fill(in.begin(), in.end(), 0);
    for (int y : h) in[y] = 1;
  }
  return gens;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g, const std::vector<int>& gens) {
  ConjugacyClasses cc;
  const std::size_t n = g.order();
  cc.class_of.assign(n, -1);
  std::vector<int> inv_gens;
  for (int s : gens) inv_gens.push_back(g.inv(s));
  for (std::size_t x = 0; x < n; ++x) {
    if (cc.class_of[x] >= 0) continue;
    const int id = static_cast<int>(cc.reps.size());
    std::vector<int> orbit{static_cast<int>(x)};
    cc.class_of[x] = id;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        int y = g.mul(g.mul(gens[k], orbit[head]), inv_gens[k]);
        if (cc.class_of[y] < 0) {
          cc.class_of[y] = id;
          orbit.push_back(y);
        }
      }
    cc.reps.push_back(static_cast<int>(x));
    cc.sizes.push_back(orbit.size());
  }
  return cc;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) { return conjugacy_classes(g, generators(g)); }

std::vector<int> centralizer_indices(const MatrixGroup& g, const Ring& residue, const Mat& a, CentralizerMode mode,
                                     int threads) {
  const std::size_t n = g.order();
  std::vector<char> keep(n, 0);
  parallel_for(n, threads, [&](std::size_t i) {
    const Mat& x = g.element(static_cast<int>(i));
    Mat xa = mat_mul(residue, x, a);
    Mat ax = mat_mul(residue, a, x);
    if (mode == CentralizerMode::Exact) {
      keep[i] = xa == ax;
    } else {
      // x A x^-1 = A + cI  <=>  x A - A x = c x
      Mat diff = mat_sub(residue, xa, ax);
      Mat conj = mat_mul(residue, diff, g.element(g.inv(static_cast<int>(i))));
      keep[i] = is_scalar(conj);
    }
  });
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(static_cast<int>(i));
  return out;
}

MatrixGroup centralizer(const MatrixGroup& g, const Ring& residue, const Mat& a, CentralizerMode mode, int threads) {
  std::vector<Mat> elems;
  for (int i : centralizer_indices(g, residue, a, mode, threads)) elems.push_back(g.element(i));
  return MatrixGroup(g.ring(), std::move(elems));
}

}  // namespace cliffdeg
