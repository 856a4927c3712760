#include "cliffdeg/engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cliffdeg/errors.hpp"
#include "cliffdeg/oracle.hpp"
#include "cliffdeg/parallel.hpp"

namespace cliffdeg {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Parameters in index order: M_C, or matrices with last diagonal entry zero.
std::vector<Mat> parameters(const Classical& c) {
  if (!c.scalar_mode) return c.lie.elements(c.residue());
  const int n = c.spec.size, q = c.residue().size();
  const std::size_t count = c.parameter_count();
  std::vector<Mat> out(count, Mat(n));
  const int last = n * n - 1;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t k = i;
    for (int pos = 0; pos < last; ++pos) {
      out[i].e[pos] = static_cast<Elem>(k % static_cast<std::size_t>(q));
      k /= static_cast<std::size_t>(q);
    }
  }
  return out;
}

}  // namespace

std::size_t Classical::parameter_count() const {
  if (!scalar_mode) return lie.cardinality();
  return ipow(static_cast<std::size_t>(residue().size()), spec.size * spec.size - 1);
}

Mat Classical::canonical(const Mat& a) const { return scalar_mode ? scalar_class_rep(residue(), a) : a; }

Classical make_classical(const GroupSpec& spec, const EngineConfig& config) {
  Classical c;
  c.spec = spec;
  c.lie = lie_space(spec.family, spec.n, spec.residue());
  c.scalar_mode = spec.family == Family::SL && spec.size % spec.residue().field().p() == 0;
  require_budget(c.parameter_count(), config.budgets.enumeration, "parameter space of L(C)-characters");
  require_budget(residue_group_order(spec), config.budgets.orbit_action, "orbit computation (|C(O_1)|)");
  c.residue_group = enumerate_residue_group(spec, config.budgets);
  require_budget(c.residue_group.order(), config.budgets.orbit_action, "orbit computation (|C(O_1)|)");
  c.gens = generators(c.residue_group, config.seed);
  return c;
}

int KernelCharacter::exponent(const Mat& x) const { return pairing_exponent(*residue, a, x); }

KernelCharacter kernel_character(const Classical& c, const Mat& a) {
  if (a.n != c.spec.size) throw InvalidConfig("parameter has the wrong matrix size");
  if (!c.scalar_mode && !in_lie_space(c.spec.family, c.residue(), a))
    throw InvalidConfig("parameter " + to_string(a) + " is not in M_C");
  KernelCharacter k;
  k.a = c.canonical(a);
  k.scalar_class = c.scalar_mode;
  k.residue = &c.spec.rings.residue;
  return k;
}

std::vector<OrbitRecord> adjoint_orbits(const Classical& c, const EngineConfig& config) {
  const Ring& f = c.residue();
  const int qsize = f.size();
  std::vector<Mat> params = parameters(c);
  std::unordered_map<MatKey, int, MatKeyHash> index;
  index.reserve(params.size() * 2);
  for (std::size_t i = 0; i < params.size(); ++i) index.emplace(mat_key(params[i], qsize), static_cast<int>(i));

  std::vector<std::pair<Mat, Mat>> gens;
  for (int g : c.gens)
    gens.emplace_back(c.residue_group.element(g), c.residue_group.element(c.residue_group.inv(g)));

  std::vector<char> seen(params.size(), 0);
  std::vector<OrbitRecord> orbits;
  for (std::size_t start = 0; start < params.size(); ++start) {
    if (seen[start]) continue;
    OrbitRecord rec;
    MatKey best = mat_key(params[start], qsize);
    rec.rep = params[start];
    std::deque<int> todo{static_cast<int>(start)};
    seen[start] = 1;
    while (!todo.empty()) {
      const Mat& a = params[todo.front()];
      todo.pop_front();
      ++rec.size;
      for (const auto& [g, gi] : gens) {
        Mat b = c.canonical(mat_mul(f, mat_mul(f, g, a), gi));
        auto it = index.find(mat_key(b, qsize));
        if (it == index.end()) throw InternalError("adjoint action left the parameter space: " + to_string(b));
        if (seen[it->second]) continue;
        seen[it->second] = 1;
        todo.push_back(it->second);
        MatKey k = it->first;
        if (k < best) {
          best = k;
          rec.rep = b;
        }
      }
    }
    orbits.push_back(std::move(rec));
  }
  std::sort(orbits.begin(), orbits.end(),
            [&](const OrbitRecord& x, const OrbitRecord& y) { return mat_key(x.rep, qsize) < mat_key(y.rep, qsize); });

  const auto mode = c.scalar_mode ? CentralizerMode::ScalarClass : CentralizerMode::Exact;
  parallel_for(orbits.size(), config.threads, [&](std::size_t i) {
    orbits[i].stabilizer = centralizer_indices(c.residue_group, f, orbits[i].rep, mode, 1);
  });
  return orbits;
}

void stabilizer_degrees(const Classical& c, std::vector<OrbitRecord>& orbits, const EngineConfig& config) {
  parallel_for(orbits.size(), config.threads, [&](std::size_t i) {
    std::vector<Mat> elems;
    elems.reserve(orbits[i].stabilizer.size());
    for (int g : orbits[i].stabilizer) elems.push_back(c.residue_group.element(g));
    MatrixGroup q(c.residue(), std::move(elems));
    // Abelian quotients (one class per element) need no eigenvector split.
    ConjugacyClasses cc = conjugacy_classes(q);
    if (cc.count() == q.order()) {
      orbits[i].degrees.assign(q.order(), 1);
      return;
    }
    orbits[i].degrees = character_degrees(q, config.budgets, 1).degrees;
  });
}

KernelAction::KernelAction(const Classical& c, int threads) {
  const Ring& o = c.ring();
  basis_ = c.lie.basis;
  dim_ = basis_.size();
  const std::size_t order = order_ = c.residue_order();
  conjugated_.assign(order * dim_, Mat());
  std::vector<Mat> kernel_basis;
  for (const Mat& x : basis_) kernel_basis.push_back(one_plus_pi(o, x));
  parallel_for(order, threads, [&](std::size_t g) {
    Mat lift = lift_element(c.spec, c.residue_group.element(static_cast<int>(g)));
    Mat lift_inv = mat_inv(o, lift);
    for (std::size_t b = 0; b < dim_; ++b)
      conjugated_[g * dim_ + b] = kernel_coordinates(o, mat_mul(o, mat_mul(o, lift, kernel_basis[b]), lift_inv));
  });
}

std::size_t KernelAction::stabilizer_order(const KernelCharacter& phi) const {
  std::vector<int> base(dim_);
  for (std::size_t b = 0; b < dim_; ++b) base[b] = phi.exponent(basis_[b]);
  std::size_t count = 0;
  for (std::size_t g = 0; g < order_; ++g) {
    bool fixed = true;
    for (std::size_t b = 0; b < dim_ && fixed; ++b) fixed = phi.exponent(conjugated_[g * dim_ + b]) == base[b];
    count += fixed;
  }
  return count;
}

std::uint64_t IrrResult::descriptor_count() const {
  std::uint64_t n = 0;
  for (const auto& [d, k] : irr) n += k;
  return n;
}

bool IrrResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second.ok; });
}

IrrResult irr_dimensions(const Classical& c, const EngineConfig& config, bool structural) {
  IrrResult r;
  r.residue_order = c.residue_order();
  r.group_order = c.group_order();
  r.orbits = adjoint_orbits(c, config);
  stabilizer_degrees(c, r.orbits, config);

  unsigned __int128 squares = 0;
  for (const OrbitRecord& o : r.orbits)
    for (std::uint64_t d : o.degrees) {
      const std::uint64_t dim = o.size * d;
      ++r.irr[dim];
      squares += static_cast<unsigned __int128>(dim) * dim;
    }
  {
    Check& ch = r.checks["sum_squares"];
    ch.ok = squares == r.group_order;
    std::ostringstream os;
    os << "sum count*dim^2 = " << static_cast<std::uint64_t>(squares) << ", |C(O_1)|*q^dim M_C = " << r.group_order;
    ch.detail = os.str();
  }
  if (!structural) return r;

  std::size_t total = 0;
  bool orbit_stab = true;
  for (const OrbitRecord& o : r.orbits) {
    total += o.size;
    orbit_stab = orbit_stab && o.size * o.stab_order() == r.residue_order;
  }
  r.checks["partition"] = {total == c.parameter_count(),
                           "sum of orbit sizes " + std::to_string(total) + " vs " + std::to_string(c.parameter_count())};
  r.checks["orbit_stabilizer"] = {orbit_stab, "orbit size * stabilizer order = |C(O_1)|"};

  KernelAction action(c, config.threads);
  std::vector<std::size_t> stab(r.orbits.size());
  parallel_for(r.orbits.size(), config.threads,
               [&](std::size_t i) { stab[i] = action.stabilizer_order(kernel_character(c, r.orbits[i].rep)); });
  bool stab_ok = true, index_ok = true;
  std::string first_bad;
  for (std::size_t i = 0; i < r.orbits.size(); ++i) {
    const OrbitRecord& o = r.orbits[i];
    if (stab[i] != o.stab_order()) {
      stab_ok = false;
      if (first_bad.empty())
        first_bad = to_string(o.rep) + ": |T/L| = " + std::to_string(stab[i]) + ", centralizer " +
                    std::to_string(o.stab_order());
    }
    // [C(O_2) : T_C(phi)] with |T| = |T/L| |L|, against the orbit size.
    const std::size_t t = stab[i] * c.kernel_order();
    index_ok = index_ok && t && r.group_order % t == 0 && r.group_order / t == o.size;
  }
  r.checks["stabilizer_identity"] = {stab_ok, stab_ok ? "|T_C(phi)/L(C)| = centralizer order on every orbit" : first_bad};
  r.checks["index_identity"] = {index_ok, "[C(O_2) : T_C(phi)] = orbit size on every orbit"};
  return r;
}

OracleComparison compare_with_oracle(const Classical& c, const IrrResult& result, const EngineConfig& config) {
  OracleComparison out;
  MatrixGroup big = enumerate_group(c.spec, c.residue_group, c.lie, config.budgets);
  ClassAlgebra algebra = class_algebra(big, config.budgets, config.threads);
  out.classes = algebra.rank();
  out.class_count.ok = out.classes == result.descriptor_count();
  out.class_count.detail =
      "descriptors " + std::to_string(result.descriptor_count()) + ", classes " + std::to_string(out.classes);
  DegreeResult d = character_degrees(algebra, config.seed);
  std::map<std::uint64_t, std::uint64_t> oracle;
  for (auto x : d.degrees) ++oracle[x];
  out.degrees.ok = oracle == result.irr;
  out.degrees.detail = out.degrees.ok ? "engine multiset equals oracle multiset" : "engine and oracle multisets differ";
  return out;
}

namespace {

struct Invariant {
  std::size_t size, stab;
  std::vector<std::uint64_t> degrees;
  auto operator<=>(const Invariant&) const = default;
};

Invariant invariant_of(const OrbitRecord& o) { return {o.size, o.stab_order(), o.degrees}; }

std::string describe_irr(const std::map<std::uint64_t, std::uint64_t>& m, std::uint64_t dim) {
  auto it = m.find(dim);
  return std::to_string(it == m.end() ? 0 : it->second);
}

}  // namespace

CompareResult compare_rings(Family family, int n, int p, int m, const EngineConfig& config) {
  CompareResult out;
  RingSpec rs;
  rs.p = p;
  rs.m = m;
  rs.kind = RingKind::Unramified;
  Classical a = make_classical(make_group_spec(family, n, rs), config);
  rs.kind = RingKind::Ramified;
  Classical b = make_classical(make_group_spec(family, n, rs), config);
  out.unramified = irr_dimensions(a, config);
  out.ramified = irr_dimensions(b, config);
  out.equal = out.unramified.irr == out.ramified.irr;
  std::set<std::uint64_t> dims;
  for (const auto& [d, k] : out.unramified.irr) dims.insert(d);
  for (const auto& [d, k] : out.ramified.irr) dims.insert(d);
  for (auto d : dims) {
    auto lhs = describe_irr(out.unramified.irr, d), rhs = describe_irr(out.ramified.irr, d);
    if (lhs != rhs) out.diff.push_back("dim " + std::to_string(d) + ": unramified " + lhs + ", ramified " + rhs);
  }

  // Invariant matching: orbits grouped by invariant, paired in representative order.
  std::map<Invariant, std::vector<std::size_t>> ga, gb;
  for (std::size_t i = 0; i < out.unramified.orbits.size(); ++i) ga[invariant_of(out.unramified.orbits[i])].push_back(i);
  for (std::size_t i = 0; i < out.ramified.orbits.size(); ++i) gb[invariant_of(out.ramified.orbits[i])].push_back(i);
  out.aligned = ga.size() == gb.size();
  for (const auto& [inv, xs] : ga) {
    auto it = gb.find(inv);
    if (it == gb.end() || it->second.size() != xs.size()) {
      out.aligned = false;
      continue;
    }
    if (xs.size() > 1) ++out.ties;
    for (std::size_t k = 0; k < xs.size(); ++k) out.alignment.emplace_back(xs[k], it->second[k]);
  }
  return out;
}

}  // namespace cliffdeg
