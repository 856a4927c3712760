#include "cliffdeg/ring.hpp"

#include <sstream>

#include "cliffdeg/errors.hpp"

namespace cliffdeg {

namespace {

int ipow(int base, int e) {
  int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Polynomials over Z/modulus reduced by a monic polynomial f of degree d
// (f given by its low coefficients c_0..c_{d-1}).
struct PolyRing {
  int modulus;
  int d;
  std::vector<int> low;  // c_0..c_{d-1}

  std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<long long> prod(2 * d, 0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) prod[i + j] += static_cast<long long>(a[i]) * b[j];
    for (int k = 2 * d - 2; k >= d; --k) {
      long long c = prod[k] % modulus;
      prod[k] = 0;
      // x^k = x^(k-d) * x^d, x^d = -sum c_i x^i
      for (int i = 0; i < d; ++i) prod[k - d + i] -= c * low[i];
    }
    std::vector<int> out(d);
    for (int i = 0; i < d; ++i) out[i] = static_cast<int>(((prod[i] % modulus) + modulus) % modulus);
    return out;
  }

  std::vector<int> pow(std::vector<int> a, long long e) const {
    std::vector<int> r(d, 0);
    r[0] = 1 % modulus;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

std::vector<int> code_digits(int code, int p, int d) {
  std::vector<int> v(d);
  for (int i = 0; i < d; ++i) {
    v[i] = code % p;
    code /= p;
  }
  return v;
}

int digits_code(const std::vector<int>& v, int p) {
  int code = 0;
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) code = code * p + v[i];
  return code;
}

// Order of x modulo f over F_p, or 0 if x^k never returns to 1 within q-1 steps.
bool is_primitive(const PolyRing& pr, int q) {
  std::vector<int> x(pr.d, 0);
  if (pr.d == 1) {
    // F_p: the polynomial x + c_0 has root -c_0; primitive if that root generates.
    int root = (pr.modulus - pr.low[0]) % pr.modulus;
    if (root == 0) return false;
    int v = root;
    for (int k = 1; k < q - 1; ++k) {
      if (v == 1) return false;
      v = v * root % pr.modulus;
    }
    return v == 1;
  }
  x[1] = 1;
  std::vector<int> v = x;
  std::vector<int> unit(pr.d, 0);
  unit[0] = 1;
  for (int k = 1; k < q - 1; ++k) {
    if (v == unit) return false;
    v = pr.mul(v, x);
  }
  return v == unit;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

GaloisField::GaloisField(int p, int degree) : p_(p), degree_(degree) {
  if (!is_prime(p)) throw InvalidConfig("field characteristic must be prime");
  if (degree < 1) throw InvalidConfig("field degree must be >= 1");
  size_ = ipow(p, degree);
  if (size_ > 4096) throw InvalidConfig("field too large for table arithmetic");

  // Least primitive monic polynomial in the order of its low-coefficient code.
  PolyRing pr{p, degree, {}};
  bool found = false;
  for (int code = 0; code < size_ && !found; ++code) {
    pr.low = code_digits(code, p, degree);
    if (is_primitive(pr, size_)) found = true;
  }
  if (!found) throw InternalError("no primitive polynomial found");
  modulus_ = pr.low;
  modulus_.push_back(1);

  const int q = size_;
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  frob_.resize(q);
  trace_.resize(q);
  std::vector<std::vector<int>> digits(q);
  for (int a = 0; a < q; ++a) digits[a] = code_digits(a, p, degree);
  for (int a = 0; a < q; ++a) {
    std::vector<int> n(degree);
    for (int i = 0; i < degree; ++i) n[i] = (p - digits[a][i]) % p;
    neg_[a] = static_cast<Elem>(digits_code(n, p));
    for (int b = 0; b < q; ++b) {
      std::vector<int> s(degree);
      for (int i = 0; i < degree; ++i) s[i] = (digits[a][i] + digits[b][i]) % p;
      add_[a * q + b] = static_cast<Elem>(digits_code(s, p));
      if (degree == 1) {
        mul_[a * q + b] = static_cast<Elem>(a * b % p);
      } else {
        mul_[a * q + b] = static_cast<Elem>(digits_code(pr.mul(digits[a], digits[b]), p));
      }
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }
  for (int a = 0; a < q; ++a) {
    Elem f = 1;
    for (int i = 0; i < p; ++i) f = mul_[f * q + a];
    frob_[a] = f;
  }
  for (int a = 0; a < q; ++a) {
    // Tr(a) = a + a^p + ... + a^(p^(d-1)), which lies in F_p (codes 0..p-1).
    Elem t = 0, c = static_cast<Elem>(a);
    for (int i = 0; i < degree; ++i) {
      t = add_[t * q + c];
      c = frob_[c];
    }
    if (t >= p) throw InternalError("trace left the prime field");
    trace_[a] = t;
  }
}

Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw InvalidConfig("inverse of zero in a field");
  return inv_[a];
}

Elem GaloisField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem GaloisField::frobenius(Elem a, int times) const {
  for (int i = 0; i < times; ++i) a = frob_[a];
  return a;
}

Elem GaloisField::from_int(long long k) const {
  return static_cast<Elem>(((k % p_) + p_) % p_);
}

int GaloisField::digit(Elem a, int i) const {
  int c = a;
  for (int k = 0; k < i; ++k) c /= p_;
  return c % p_;
}

Elem GaloisField::from_digits(const std::vector<int>& digits) const {
  std::vector<int> v(degree_, 0);
  for (std::size_t i = 0; i < digits.size() && i < v.size(); ++i) v[i] = ((digits[i] % p_) + p_) % p_;
  return static_cast<Elem>(digits_code(v, p_));
}

std::string GaloisField::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree_; i >= 0; --i) {
    int c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Ring Ring::residue(std::shared_ptr<const GaloisField> field, int sigma_degree) {
  auto impl = std::make_shared<Impl>();
  impl->kind = RingKind::Field;
  impl->size = field->size();
  impl->sigma_degree = sigma_degree;
  impl->tabled = true;
  const int q = field->size();
  impl->add.resize(q * q);
  impl->mul.resize(q * q);
  impl->neg.resize(q);
  for (int a = 0; a < q; ++a) {
    impl->neg[a] = field->neg(static_cast<Elem>(a));
    for (int b = 0; b < q; ++b) {
      impl->add[a * q + b] = field->add(static_cast<Elem>(a), static_cast<Elem>(b));
      impl->mul[a * q + b] = field->mul(static_cast<Elem>(a), static_cast<Elem>(b));
    }
  }
  impl->field = std::move(field);
  Ring r;
  r.impl_ = std::move(impl);
  return r;
}

Ring Ring::length_two(RingKind kind, std::shared_ptr<const GaloisField> field, int sigma_degree) {
  if (kind == RingKind::Field) throw InvalidConfig("length_two requires a ring kind");
  auto impl = std::make_shared<Impl>();
  impl->kind = kind;
  impl->sigma_degree = sigma_degree;
  const int q = field->size();
  const int p = field->p();
  const int d = field->degree();
  impl->size = q * q;

  if (kind == RingKind::Unramified) {
    // Explicit model (Z/p^2)[x]/(F) with F the integer lift of the field modulus.
    PolyRing gr{p * p, d, {}};
    for (int i = 0; i < d; ++i) gr.low.push_back(field->modulus()[i]);
    std::vector<std::vector<int>> teich(q);
    for (int a = 0; a < q; ++a) teich[a] = gr.pow(code_digits(a, p, d), q);
    impl->carry.resize(q * q);
    for (int a = 0; a < q; ++a)
      for (int c = 0; c < q; ++c) {
        Elem ac = field->add(static_cast<Elem>(a), static_cast<Elem>(c));
        std::vector<int> e(d);
        for (int i = 0; i < d; ++i) {
          int v = ((teich[a][i] + teich[c][i] - teich[ac][i]) % (p * p) + p * p) % (p * p);
          if (v % p != 0) throw InternalError("Teichmueller carry not divisible by p");
          e[i] = v / p;
        }
        impl->carry[a * q + c] = static_cast<Elem>(digits_code(e, p));
      }
  }
  impl->field = field;

  Ring r;
  r.impl_ = impl;
  impl->neg.resize(impl->size);
  for (int x = 0; x < impl->size; ++x) {
    Elem a = static_cast<Elem>(x % q), b = static_cast<Elem>(x / q);
    Elem na = field->neg(a);
    // (a,b) + (na,y) = (0, b + y + e(a,na)) = 0
    Elem y = field->neg(field->add(b, r.carry(a, na)));
    impl->neg[x] = static_cast<Elem>(na + q * y);
  }
  if (impl->size <= 1024) {
    const int n = impl->size;
    impl->add.resize(n * n);
    impl->mul.resize(n * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        impl->add[x * n + y] = r.add_slow(static_cast<Elem>(x), static_cast<Elem>(y));
        impl->mul[x * n + y] = r.mul_slow(static_cast<Elem>(x), static_cast<Elem>(y));
      }
    impl->tabled = true;
  }
  return r;
}

Elem Ring::add_slow(Elem x, Elem y) const {
  const GaloisField& f = field();
  if (is_field()) return f.add(x, y);
  Elem a = head(x), b = tail(x), c = head(y), d = tail(y);
  Elem hi = f.add(f.add(b, d), carry(a, c));
  return static_cast<Elem>(f.add(a, c) + q() * hi);
}

Elem Ring::mul_slow(Elem x, Elem y) const {
  const GaloisField& f = field();
  if (is_field()) return f.mul(x, y);
  Elem a = head(x), b = tail(x), c = head(y), d = tail(y);
  Elem hi = f.add(f.mul(a, d), f.mul(b, c));
  return static_cast<Elem>(f.mul(a, c) + q() * hi);
}

Elem Ring::make(Elem a, Elem b) const {
  if (is_field()) {
    if (b != 0) throw InvalidConfig("a field element has no pi-coordinate");
    return a;
  }
  return static_cast<Elem>(a + q() * b);
}

Elem Ring::inv(Elem x) const {
  if (!is_unit(x)) throw InvalidConfig("inverse of a non-unit");
  const GaloisField& f = field();
  if (is_field()) return f.inv(x);
  // (a,b)^{-1} = (a^{-1}, -b a^{-2})
  Elem a = head(x), b = tail(x);
  Elem ai = f.inv(a);
  return make(ai, f.neg(f.mul(b, f.mul(ai, ai))));
}

Elem Ring::from_int(long long k) const {
  Elem result = 0, base = one();
  bool negative = k < 0;
  unsigned long long u = negative ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  while (u > 0) {
    if (u & 1) result = add(result, base);
    base = add(base, base);
    u >>= 1;
  }
  return negative ? neg(result) : result;
}

UnitParts Ring::unit_decompose(Elem u) const {
  if (!is_unit(u)) throw InvalidConfig("unit_decompose of a non-unit");
  const GaloisField& f = field();
  Elem a = head(u), b = tail(u);
  // (a, b) = (a, 0) * (1, b/a)
  if (is_field()) return {u, one()};
  return {make(a, 0), make(1, f.div(b, a))};
}

Elem Ring::sigma(Elem x) const {
  if (!has_sigma()) throw InvalidConfig("ring has no involution");
  const GaloisField& f = field();
  if (is_field()) return f.frobenius(x, sigma_degree());
  return make(f.frobenius(head(x), sigma_degree()), f.frobenius(tail(x), sigma_degree()));
}

int Ring::to_integer(Elem x) const {
  if (kind() != RingKind::Unramified || field().degree() != 1)
    throw InvalidConfig("integer view requires Z/p^2");
  const int n = size();
  for (int v = 0; v < n; ++v)
    if (from_int(v) == x) return v;
  throw InternalError("element not in the prime ring");
}

std::string Ring::describe() const {
  std::ostringstream os;
  const GaloisField& f = field();
  switch (kind()) {
    case RingKind::Field:
      os << "F_" << f.size();
      break;
    case RingKind::Unramified:
      if (f.degree() == 1)
        os << "Z/" << f.p() * f.p();
      else
        os << "GR(" << f.p() * f.p() << "," << f.degree() << ")";
      break;
    case RingKind::Ramified:
      os << "F_" << f.size() << "[t]/t^2";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

int RingSpec::q() const { return ipow(p, m); }
int RingSpec::entry_q() const { return ext ? q() * q() : q(); }
std::string RingSpec::kind_name() const { return ring_kind_name(kind); }

RingKind parse_ring_kind(const std::string& name) {
  if (name == "unramified") return RingKind::Unramified;
  if (name == "ramified") return RingKind::Ramified;
  throw InvalidConfig("unknown ring kind '" + name + "' (expected unramified|ramified)");
}

std::string ring_kind_name(RingKind kind) {
  switch (kind) {
    case RingKind::Unramified: return "unramified";
    case RingKind::Ramified: return "ramified";
    case RingKind::Field: return "field";
  }
  return "?";
}

Rings make_rings(const RingSpec& spec, int max_q) {
  if (spec.p == 2 || !is_prime(spec.p)) throw InvalidConfig("p must be an odd prime");
  if (spec.m < 1) throw InvalidConfig("m must be >= 1");
  if (spec.kind == RingKind::Field) throw InvalidConfig("ring kind must be unramified or ramified");
  if (spec.q() > max_q)
    throw InvalidConfig("q = " + std::to_string(spec.q()) + " exceeds the configured cap " +
                        std::to_string(max_q));
  Rings r;
  r.spec = spec;
  const int degree = spec.ext ? 2 * spec.m : spec.m;
  const int sigma = spec.ext ? spec.m : 0;
  r.field = std::make_shared<const GaloisField>(spec.p, degree);
  r.residue = Ring::residue(r.field, sigma);
  r.ring = Ring::length_two(spec.kind, r.field, sigma);
  return r;
}

}  // namespace cliffdeg
