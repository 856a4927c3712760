#include "cliffdeg/matrix.hpp"

#include <sstream>
#include <utility>

#include "cliffdeg/errors.hpp"

namespace cliffdeg {

MatKey mat_key(const Mat& a, int ring_size) {
  MatKey k = 0;
  for (int i = 0; i < a.n * a.n; ++i) k = k * static_cast<unsigned>(ring_size) + a.e[i];
  return k;
}

Mat mat_from_key(MatKey key, int n, int ring_size) {
  Mat m(n);
  for (int i = n * n - 1; i >= 0; --i) {
    m.e[i] = static_cast<Elem>(key % static_cast<unsigned>(ring_size));
    key /= static_cast<unsigned>(ring_size);
  }
  return m;
}

Mat identity(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = Ring::one();
  return m;
}

Mat scalar(const Ring&, int n, Elem x) {
  Mat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = x;
  return m;
}

Mat mat_add(const Ring& r, const Mat& a, const Mat& b) {
  Mat c(a.n);
  for (int k = 0; k < a.n * a.n; ++k) c.e[k] = r.add(a.e[k], b.e[k]);
  return c;
}

Mat mat_sub(const Ring& r, const Mat& a, const Mat& b) {
  Mat c(a.n);
  for (int k = 0; k < a.n * a.n; ++k) c.e[k] = r.sub(a.e[k], b.e[k]);
  return c;
}

Mat mat_neg(const Ring& r, const Mat& a) {
  Mat c(a.n);
  for (int k = 0; k < a.n * a.n; ++k) c.e[k] = r.neg(a.e[k]);
  return c;
}

Mat mat_mul(const Ring& r, const Mat& a, const Mat& b) {
  const int n = a.n;
  Mat c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Elem x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < n; ++j) c(i, j) = r.add(c(i, j), r.mul(x, b(k, j)));
    }
  return c;
}

Mat mat_scale(const Ring& r, Elem x, const Mat& a) {
  Mat c(a.n);
  for (int k = 0; k < a.n * a.n; ++k) c.e[k] = r.mul(x, a.e[k]);
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) t(j, i) = a(i, j);
  return t;
}

Mat star(const Ring& r, const Mat& a) {
  Mat t(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) t(j, i) = r.sigma(a(i, j));
  return t;
}

Elem trace(const Ring& r, const Mat& a) {
  Elem t = 0;
  for (int i = 0; i < a.n; ++i) t = r.add(t, a(i, i));
  return t;
}

Elem trace_product(const Ring& r, const Mat& a, const Mat& b) {
  Elem t = 0;
  for (int i = 0; i < a.n; ++i)
    for (int k = 0; k < a.n; ++k) t = r.add(t, r.mul(a(i, k), b(k, i)));
  return t;
}

namespace {

Elem det_cofactor(const Ring& r, const Mat& a) {
  const int n = a.n;
  if (n == 0) return Ring::one();
  if (n == 1) return a(0, 0);
  Elem total = 0;
  for (int j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    Mat minor(n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, cc++) = a(i, k);
      }
    }
    Elem term = r.mul(a(0, j), det_cofactor(r, minor));
    total = (j % 2 == 0) ? r.add(total, term) : r.sub(total, term);
  }
  return total;
}

}  // namespace

Elem mat_det(const Ring& r, const Mat& a) {
  const int n = a.n;
  Mat m = a;
  Elem det = Ring::one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (r.is_unit(m(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // Remaining block has a column in the maximal ideal.
      Mat rest(n - col);
      for (int i = col; i < n; ++i)
        for (int j = col; j < n; ++j) rest(i - col, j - col) = m(i, j);
      return r.mul(det, det_cofactor(r, rest));
    }
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = r.neg(det);
    }
    Elem pv = m(col, col);
    det = r.mul(det, pv);
    Elem pinv = r.inv(pv);
    for (int i = col + 1; i < n; ++i) {
      Elem f = r.mul(m(i, col), pinv);
      if (f == 0) continue;
      for (int j = col; j < n; ++j) m(i, j) = r.sub(m(i, j), r.mul(f, m(col, j)));
    }
  }
  return det;
}

bool is_invertible(const Ring& r, const Mat& a) { return r.is_unit(mat_det(r, a)); }

Mat mat_inv(const Ring& r, const Mat& a) {
  const int n = a.n;
  Mat m = a;
  Mat inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (r.is_unit(m(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) throw InvalidConfig("matrix is not invertible");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Elem pinv = r.inv(m(col, col));
    for (int j = 0; j < n; ++j) {
      m(col, j) = r.mul(pinv, m(col, j));
      inv(col, j) = r.mul(pinv, inv(col, j));
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      Elem f = m(i, col);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        m(i, j) = r.sub(m(i, j), r.mul(f, m(col, j)));
        inv(i, j) = r.sub(inv(i, j), r.mul(f, inv(col, j)));
      }
    }
  }
  return inv;
}

Mat reduce(const Ring& r, const Mat& a) {
  Mat m(a.n);
  for (int k = 0; k < a.n * a.n; ++k) m.e[k] = r.reduce(a.e[k]);
  return m;
}

Mat section(const Ring& r, const Mat& a) {
  Mat m(a.n);
  for (int k = 0; k < a.n * a.n; ++k) m.e[k] = r.section(a.e[k]);
  return m;
}

Mat pi_times(const Ring& r, const Mat& x) {
  Mat m(x.n);
  for (int k = 0; k < x.n * x.n; ++k) m.e[k] = r.pi_times(x.e[k]);
  return m;
}

Mat one_plus_pi(const Ring& r, const Mat& x) { return mat_add(r, identity(x.n), pi_times(r, x)); }

Mat kernel_coordinates(const Ring& r, const Mat& g) {
  Mat x(g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      Elem v = g(i, j);
      if (r.head(v) != (i == j ? 1 : 0)) throw InternalError("matrix is not in the congruence kernel");
      x(i, j) = r.tail(v);
    }
  return x;
}

bool is_scalar(const Mat& a) {
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      if (i != j && a(i, j) != 0) return false;
      if (a(i, i) != a(0, 0)) return false;
    }
  return true;
}

std::string to_string(const Mat& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < a.n; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < a.n; ++j) os << (j ? "," : "") << a(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Mat symplectic_form(const Ring& r, int h) {
  Mat j(2 * h);
  for (int i = 0; i < h; ++i) {
    j(i, h + i) = Ring::one();
    j(h + i, i) = r.neg(Ring::one());
  }
  return j;
}

}  // namespace cliffdeg
