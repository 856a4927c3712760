#include "cliffdeg/lie.hpp"

#include "cliffdeg/errors.hpp"
#include "cliffdeg/linalg.hpp"

namespace cliffdeg {

std::string family_name(Family f) {
  switch (f) {
    case Family::SL: return "sl";
    case Family::Sp: return "sp";
    case Family::O: return "o";
    case Family::U: return "u";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "sl" || name == "SL") return Family::SL;
  if (name == "sp" || name == "Sp") return Family::Sp;
  if (name == "o" || name == "O") return Family::O;
  if (name == "u" || name == "U") return Family::U;
  throw InvalidConfig("unknown family '" + name + "' (expected sl|sp|o|u)");
}

int matrix_size(Family f, int n) {
  if (n < 1) throw InvalidConfig("n must be >= 1");
  const int size = f == Family::Sp ? 2 * n : n;
  if (size > kMaxDim) throw InvalidConfig("matrix size exceeds the supported maximum");
  return size;
}

std::size_t LieSpace::cardinality() const {
  std::size_t c = 1;
  for (int i = 0; i < dim(); ++i) c *= static_cast<std::size_t>(p);
  return c;
}

Mat LieSpace::element(const Ring& residue, std::size_t index) const {
  Mat x(size);
  for (const Mat& b : basis) {
    int c = static_cast<int>(index % static_cast<std::size_t>(p));
    index /= static_cast<std::size_t>(p);
    if (c) x = mat_add(residue, x, mat_scale(residue, residue.from_int(c), b));
  }
  return x;
}

std::vector<Mat> LieSpace::elements(const Ring& residue) const {
  std::vector<Mat> out;
  const std::size_t count = cardinality();
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(element(residue, i));
  return out;
}

namespace {

// Image of the defining condition, flattened to residue-field entries.
std::vector<Elem> condition(Family family, const Ring& r, const Mat& x) {
  std::vector<Elem> out;
  switch (family) {
    case Family::SL:
      out.push_back(trace(r, x));
      break;
    case Family::O: {
      Mat s = mat_add(r, x, transpose(x));
      out.assign(s.e.begin(), s.e.begin() + s.n * s.n);
      break;
    }
    case Family::U: {
      Mat s = mat_add(r, x, star(r, x));
      out.assign(s.e.begin(), s.e.begin() + s.n * s.n);
      break;
    }
    case Family::Sp: {
      Mat j = symplectic_form(r, x.n / 2);
      Mat s = mat_add(r, mat_mul(r, transpose(x), j), mat_mul(r, j, x));
      out.assign(s.e.begin(), s.e.begin() + s.n * s.n);
      break;
    }
  }
  return out;
}

}  // namespace

bool in_lie_space(Family family, const Ring& residue, const Mat& x) {
  for (Elem e : condition(family, residue, x))
    if (e != 0) return false;
  return true;
}

LieSpace lie_space(Family family, int n, const Ring& residue) {
  if (!residue.is_field()) throw InvalidConfig("lie_space expects the residue field");
  if (family == Family::U && !residue.has_sigma())
    throw InvalidConfig("unitary family needs the quadratic extension");
  const GaloisField& f = residue.field();
  const int size = matrix_size(family, n);
  const int deg = f.degree();
  const int p = f.p();
  const int in_dim = size * size * deg;

  // Columns: F_p-coordinates of the input; rows: F_p-coordinates of the output.
  std::vector<std::vector<Elem>> images;
  for (int k = 0; k < in_dim; ++k) {
    Mat x(size);
    int entry = k / deg, digit = k % deg;
    std::vector<int> d(deg, 0);
    d[digit] = 1;
    x.e[entry] = f.from_digits(d);
    images.push_back(condition(family, residue, x));
  }
  const int out_entries = static_cast<int>(images[0].size());
  PrimeField fp(static_cast<std::uint64_t>(p));
  Dense<PrimeField> m(out_entries * deg, Vec<PrimeField>(in_dim, 0));
  for (int k = 0; k < in_dim; ++k)
    for (int e = 0; e < out_entries; ++e)
      for (int t = 0; t < deg; ++t) m[e * deg + t][k] = static_cast<std::uint64_t>(f.digit(images[k][e], t));

  LieSpace space;
  space.family = family;
  space.n = n;
  space.size = size;
  space.p = p;
  for (const auto& v : nullspace(fp, m, in_dim)) {
    Mat x(size);
    for (int entry = 0; entry < size * size; ++entry) {
      std::vector<int> d(deg);
      for (int t = 0; t < deg; ++t) d[t] = static_cast<int>(v[entry * deg + t]);
      x.e[entry] = f.from_digits(d);
    }
    space.basis.push_back(x);
  }
  return space;
}

Elem trace_form(const Ring& residue, const Mat& a, const Mat& b) { return trace_product(residue, a, b); }

int pairing_exponent(const Ring& residue, const Mat& a, const Mat& b) {
  return residue.field().trace(trace_product(residue, a, b));
}

LieSpace radical(const LieSpace& space, const Ring& residue) {
  const int d = space.dim();
  PrimeField fp(static_cast<std::uint64_t>(space.p));
  Dense<PrimeField> gram(d, Vec<PrimeField>(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      gram[i][j] = static_cast<std::uint64_t>(pairing_exponent(residue, space.basis[i], space.basis[j]));
  LieSpace rad = space;
  rad.basis.clear();
  for (const auto& v : nullspace(fp, gram, d)) {
    Mat x(space.size);
    for (int i = 0; i < d; ++i)
      if (v[i]) x = mat_add(residue, x, mat_scale(residue, residue.from_int(static_cast<long long>(v[i])), space.basis[i]));
    rad.basis.push_back(x);
  }
  return rad;
}

Mat scalar_class_rep(const Ring& residue, const Mat& a) {
  const Elem last = a(a.n - 1, a.n - 1);
  if (last == 0) return a;
  return mat_sub(residue, a, scalar(residue, a.n, last));
}

}  // namespace cliffdeg
