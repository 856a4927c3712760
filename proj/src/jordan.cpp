#include "cliffdeg/jordan.hpp"

#include <algorithm>
#include <map>

#include "cliffdeg/errors.hpp"
#include "cliffdeg/linalg.hpp"

namespace cliffdeg {

namespace {

using FDense = Dense<FieldOps>;
using FVec = Vec<FieldOps>;

FDense to_dense(const Mat& a) {
  FDense d(a.n, FVec(a.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) d[i][j] = a(i, j);
  return d;
}

FVec apply(const FieldOps& f, const FDense& m, const FVec& v) {
  FVec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = f.add(out[i], f.mul(m[i][j], v[j]));
  return out;
}

int span_rank(const FieldOps& f, const std::vector<FVec>& vs) {
  if (vs.empty()) return 0;
  FDense m(vs.begin(), vs.end());
  return rank(f, m);
}

// Polynomial division over F, coefficients low to high. Returns (quotient, remainder).
std::pair<std::vector<Elem>, std::vector<Elem>> poly_divmod(const GaloisField& f, std::vector<Elem> num,
                                                            const std::vector<Elem>& den) {
  const int dd = static_cast<int>(den.size()) - 1;
  std::vector<Elem> quo;
  if (static_cast<int>(num.size()) - 1 < dd) return {quo, num};
  quo.assign(num.size() - dd, 0);
  Elem lead_inv = f.inv(den.back());
  for (int k = static_cast<int>(num.size()) - 1; k >= dd; --k) {
    Elem c = f.mul(num[k], lead_inv);
    quo[k - dd] = c;
    if (c == 0) continue;
    for (int i = 0; i <= dd; ++i) num[k - dd + i] = f.sub(num[k - dd + i], f.mul(c, den[i]));
  }
  num.resize(dd > 0 ? dd : 1);
  while (num.size() > 1 && num.back() == 0) num.pop_back();
  return {quo, num};
}

bool is_zero_poly(const std::vector<Elem>& p) {
  return std::all_of(p.begin(), p.end(), [](Elem c) { return c == 0; });
}

}  // namespace

std::vector<Elem> JordanForm::eigenvalues() const {
  std::vector<Elem> ev;
  for (const auto& b : blocks)
    if (ev.empty() || ev.back() != b.eigenvalue) ev.push_back(b.eigenvalue);
  return ev;
}

std::vector<int> JordanForm::partition(Elem eigenvalue) const {
  std::vector<int> sizes;
  for (const auto& b : blocks)
    if (b.eigenvalue == eigenvalue) sizes.push_back(b.size);
  return sizes;
}

std::pair<int, int> JordanForm::eigenspace_range(Elem eigenvalue) const {
  int begin = -1, end = -1;
  for (const auto& b : blocks)
    if (b.eigenvalue == eigenvalue) {
      if (begin < 0) begin = b.offset;
      end = b.offset + b.size;
    }
  return {begin, end};
}

std::vector<Elem> characteristic_polynomial(const Ring& residue, const Mat& a) {
  FieldOps f(residue.field());
  return char_poly(f, to_dense(a));
}

std::vector<std::vector<Elem>> factor_polynomial(const GaloisField& f, std::vector<Elem> poly) {
  std::vector<std::vector<Elem>> factors;
  // Linear factors first, in root order.
  for (int root = 0; root < f.size() && poly.size() > 1; ++root) {
    std::vector<Elem> lin{f.neg(static_cast<Elem>(root)), 1};
    for (;;) {
      auto [quo, rem] = poly_divmod(f, poly, lin);
      if (!is_zero_poly(rem) || poly.size() <= 1) break;
      factors.push_back(lin);
      poly = quo;
    }
  }
  // Remaining factors by trial division with monic candidates of increasing degree;
  // the first divisor found in each degree is irreducible.
  for (int d = 2; static_cast<int>(poly.size()) - 1 >= d;) {
    if (static_cast<int>(poly.size()) - 1 < 2 * d) {
      factors.push_back(poly);
      poly = {1};
      break;
    }
    bool found = false;
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= f.size();
    for (long long code = 0; code < count && !found; ++code) {
      std::vector<Elem> cand(d + 1, 0);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        cand[i] = static_cast<Elem>(c % f.size());
        c /= f.size();
      }
      cand[d] = 1;
      auto [quo, rem] = poly_divmod(f, poly, cand);
      if (is_zero_poly(rem)) {
        factors.push_back(cand);
        poly = quo;
        found = true;
      }
    }
    if (!found) ++d;
  }
  if (poly.size() > 1) factors.push_back(poly);
  std::stable_sort(factors.begin(), factors.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  return factors;
}

JordanResult jordan_form(const Ring& residue, const Mat& a) {
  if (!residue.is_field()) throw InvalidConfig("jordan_form expects a residue-field matrix");
  const GaloisField& gf = residue.field();
  FieldOps f(gf);
  const int n = a.n;
  std::vector<Elem> cp = characteristic_polynomial(residue, a);
  auto factors = factor_polynomial(gf, cp);
  std::map<Elem, int> roots;
  int linear_total = 0;
  for (const auto& fac : factors)
    if (fac.size() == 2) {
      ++roots[f.neg(fac[0])];
      ++linear_total;
    }
  if (linear_total < n) return SplitFailure{cp, factors};

  JordanForm out;
  out.basis = Mat(n);
  std::vector<FVec> columns;
  const FDense dense_a = to_dense(a);
  for (const auto& [lambda, mult] : roots) {
    FDense nil = dense_a;
    for (int i = 0; i < n; ++i) nil[i][i] = f.sub(nil[i][i], lambda);
    // kernels[i] = basis of ker N^i
    std::vector<std::vector<FVec>> kernels{{}};
    FDense power = dense_identity(f, n);
    while (static_cast<int>(kernels.back().size()) < mult) {
      power = dense_mul(f, power, nil);
      kernels.push_back(nullspace(f, power, n));
      if (kernels.size() > static_cast<std::size_t>(n + 1)) throw InternalError("nilpotent index overflow");
    }
    const int top = static_cast<int>(kernels.size()) - 1;
    struct Chain {
      FVec gen;
      int length;
    };
    std::vector<Chain> chains;
    for (int level = top; level >= 1; --level) {
      std::vector<FVec> span = kernels[level - 1];
      for (const auto& ch : chains) {
        FVec v = ch.gen;
        for (int s = 0; s < ch.length - level; ++s) v = apply(f, nil, v);
        span.push_back(v);
      }
      int r = span_rank(f, span);
      for (const auto& w : kernels[level]) {
        span.push_back(w);
        int r2 = span_rank(f, span);
        if (r2 > r) {
          chains.push_back({w, level});
          r = r2;
        } else {
          span.pop_back();
        }
      }
    }
    std::stable_sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) { return x.length > y.length; });
    for (const auto& ch : chains) {
      std::vector<FVec> vecs(ch.length);
      FVec v = ch.gen;
      for (int k = ch.length - 1; k >= 0; --k) {
        vecs[k] = v;
        v = apply(f, nil, v);
      }
      out.blocks.push_back({lambda, ch.length, static_cast<int>(columns.size())});
      for (auto& col : vecs) columns.push_back(col);
    }
  }
  if (static_cast<int>(columns.size()) != n) throw InternalError("Jordan basis has the wrong size");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out.basis(i, j) = columns[j][i];
  out.basis_inv = mat_inv(residue, out.basis);
  out.jordan = Mat(n);
  for (const auto& b : out.blocks)
    for (int k = 0; k < b.size; ++k) {
      out.jordan(b.offset + k, b.offset + k) = b.eigenvalue;
      if (k + 1 < b.size) out.jordan(b.offset + k, b.offset + k + 1) = 1;
    }
  if (mat_mul(residue, mat_mul(residue, out.basis_inv, a), out.basis) != out.jordan)
    throw InternalError("Jordan basis does not conjugate A to its Jordan form");
  return out;
}

JordanArrangement arrange_cycles(const Ring& residue, const JordanForm& form, Elem step) {
  const GaloisField& f = residue.field();
  if (step == 0) throw InvalidConfig("arrange_cycles needs a nonzero step");
  JordanArrangement arr;
  arr.form = form;
  arr.step = step;
  arr.p = f.p();
  std::vector<Elem> ev = form.eigenvalues();  // sorted by code
  std::map<Elem, bool> assigned;
  for (Elem a : ev) assigned[a] = false;
  for (Elem a : ev) {
    if (assigned[a]) continue;
    std::vector<Elem> cycle;
    std::vector<int> sizes;
    const std::vector<int> shape = form.partition(a);
    Elem cur = a;
    for (int j = 0; j < arr.p; ++j) {
      auto it = assigned.find(cur);
      if (it == assigned.end())
        throw ArrangementError("eigenvalues are not closed under translation by the step");
      if (form.partition(cur) != shape)
        throw ArrangementError("Jordan structure differs along an eigenvalue cycle");
      it->second = true;
      cycle.push_back(cur);
      auto [b, e] = form.eigenspace_range(cur);
      sizes.push_back(e - b);
      cur = f.add(cur, step);
    }
    if (cur != a) throw InternalError("eigenvalue cycle did not close");
    arr.grid.push_back(cycle);
    arr.sizes.push_back(sizes);
    arr.strands += static_cast<int>(shape.size());
  }
  arr.r = static_cast<int>(arr.grid.size());
  return arr;
}

}  // namespace cliffdeg
