#pragma once

/**
 * @file ring.hpp
 * @brief Finite fields F_q and the length-two local rings with residue field F_q.
 *
 * Two families of rings are supported:
 *   - unramified: the Galois ring GR(p^2, m) of characteristic p^2 (Z/p^2 when m = 1)
 *   - ramified:   F_q[t]/(t^2)
 *
 * Every element is stored in coordinates (a, b) with a, b in F_q, standing for
 * s(a) + pi*s(b) where s is the Teichmueller (multiplicative) section and pi is
 * the uniformizer (p, resp. t). In these coordinates multiplication is the same
 * in both families, (a, b)(c, d) = (ac, ad + bc); only addition differs, by a
 * Witt carry term that vanishes in the ramified case.
 *
 * Elements are small integer codes (Elem). Field codes are sum c_i p^i for the
 * polynomial-basis coordinates c_i; ring codes are a + q*b.
 */

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cliffdeg {

using Elem = std::uint16_t;

/// F_{p^degree}, built from the least primitive polynomial of that degree.
class GaloisField {
 public:
  GaloisField(int p, int degree);

  int p() const { return p_; }
  int degree() const { return degree_; }
  int size() const { return size_; }

  Elem add(Elem a, Elem b) const { return add_[a * size_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * size_ + neg_[b]]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * size_ + b]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// x -> x^(p^times).
  Elem frobenius(Elem a, int times = 1) const;
  /// Absolute trace to F_p, returned as an integer in [0, p).
  int trace(Elem a) const { return trace_[a]; }
  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long k) const;
  /// Polynomial-basis coordinate i of a.
  int digit(Elem a, int i) const;
  Elem from_digits(const std::vector<int>& digits) const;

  /// Coefficients c_0..c_degree of the defining monic polynomial.
  const std::vector<int>& modulus() const { return modulus_; }
  std::string modulus_string() const;

 private:
  int p_;
  int degree_;
  int size_;
  std::vector<int> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_, frob_;
  std::vector<int> trace_;
};

enum class RingKind { Field, Unramified, Ramified };

/// (teichmueller part, principal-unit part), both ring elements.
struct UnitParts {
  Elem teichmuller;
  Elem principal;
};

/**
 * A residue field or a length-two local ring, with optional involution sigma
 * (x -> x^(p^sigma_degree) on coordinates) used for unitary groups.
 */
class Ring {
 public:
  Ring() = default;

  static Ring residue(std::shared_ptr<const GaloisField> field, int sigma_degree = 0);
  static Ring length_two(RingKind kind, std::shared_ptr<const GaloisField> field,
                         int sigma_degree = 0);

  RingKind kind() const { return impl_->kind; }
  bool is_field() const { return impl_->kind == RingKind::Field; }
  int size() const { return impl_->size; }
  const GaloisField& field() const { return *impl_->field; }
  const std::shared_ptr<const GaloisField>& field_ptr() const { return impl_->field; }
  int q() const { return impl_->field->size(); }

  static constexpr Elem zero() { return 0; }
  static constexpr Elem one() { return 1; }

  Elem add(Elem x, Elem y) const {
    return impl_->tabled ? impl_->add[x * impl_->size + y] : add_slow(x, y);
  }
  Elem mul(Elem x, Elem y) const {
    return impl_->tabled ? impl_->mul[x * impl_->size + y] : mul_slow(x, y);
  }
  Elem neg(Elem x) const { return impl_->neg[x]; }
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  bool is_unit(Elem x) const { return head(x) != 0; }
  /// Multiplicative inverse; throws InvalidConfig on non-units.
  Elem inv(Elem x) const;
  Elem from_int(long long k) const;

  // Coordinates. For a field, head(x) = x and tail(x) = 0.
  Elem make(Elem a, Elem b) const;
  Elem head(Elem x) const { return is_field() ? x : static_cast<Elem>(x % q()); }
  Elem tail(Elem x) const { return is_field() ? 0 : static_cast<Elem>(x / q()); }

  /// Reduction to the residue field.
  Elem reduce(Elem x) const { return head(x); }
  /// The multiplicative section s, with s(0) = 0. In Teichmueller coordinates
  /// s(a) = (a, 0), which has the same code as a.
  Elem section(Elem a) const { return a; }
  /// The uniformizer (zero in a field).
  Elem pi() const { return is_field() ? 0 : make(0, 1); }
  /// pi * s(b).
  Elem pi_times(Elem b) const { return make(0, b); }

  /// u = teichmuller * principal with teichmuller = s(a), principal in 1 + pi*O.
  UnitParts unit_decompose(Elem u) const;

  bool has_sigma() const { return impl_->sigma_degree > 0; }
  int sigma_degree() const { return impl_->sigma_degree; }
  Elem sigma(Elem x) const;

  /// Z/p^2 view (unramified, m = 1): integer in [0, p^2).
  int to_integer(Elem x) const;
  Elem from_integer(long long v) const { return from_int(v); }

  std::string describe() const;

 private:
  struct Impl {
    RingKind kind = RingKind::Field;
    std::shared_ptr<const GaloisField> field;
    int size = 0;
    int sigma_degree = 0;
    bool tabled = false;
    std::vector<Elem> carry;  // q*q, Witt carry e(a, c); empty for ramified
    std::vector<Elem> add, mul, neg;
  };

  Elem add_slow(Elem x, Elem y) const;
  Elem mul_slow(Elem x, Elem y) const;
  Elem carry(Elem a, Elem c) const {
    return impl_->carry.empty() ? 0 : impl_->carry[a * q() + c];
  }

  std::shared_ptr<const Impl> impl_;
};

/// Configuration of a length-two ring.
struct RingSpec {
  RingKind kind = RingKind::Unramified;
  int p = 3;
  int m = 1;
  bool ext = false;  // quadratic unramified extension (unitary groups)

  int q() const;          // p^m
  int entry_q() const;    // size of the residue field matrices live over
  std::string kind_name() const;
};

/// The residue field O_1 and the ring O_2 (over the extension when ext is set).
struct Rings {
  RingSpec spec;
  std::shared_ptr<const GaloisField> field;
  Ring residue;
  Ring ring;
};

/// Validates p odd prime, m >= 1 and q = p^m <= max_q.
Rings make_rings(const RingSpec& spec, int max_q = 9);

bool is_prime(long long n);
RingKind parse_ring_kind(const std::string& name);
std::string ring_kind_name(RingKind kind);

/// The fixed character psi of F_q, as an exponent in Z/p: a -> Tr(a).
struct AdditiveCharacter {
  const GaloisField* field = nullptr;
  int p() const { return field->p(); }
  int exponent(Elem a) const { return field->trace(a); }
};

}  // namespace cliffdeg
