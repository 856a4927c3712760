#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cliffdeg/ring.hpp"

namespace cliffdeg {

inline constexpr int kMaxDim = 6;

/// Square matrix of ring codes, row-major. The ring is supplied by the caller.
struct Mat {
  int n = 0;
  std::array<Elem, kMaxDim * kMaxDim> e{};

  Mat() = default;
  explicit Mat(int size) : n(size) {}

  Elem& operator()(int i, int j) { return e[i * n + j]; }
  Elem operator()(int i, int j) const { return e[i * n + j]; }

  friend bool operator==(const Mat& a, const Mat& b) {
    if (a.n != b.n) return false;
    for (int k = 0; k < a.n * a.n; ++k)
      if (a.e[k] != b.e[k]) return false;
    return true;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }
};

/// Injective, order-preserving (row-major lexicographic) code of a matrix over a
/// ring of the given size. Requires size^(n*n) < 2^128.
using MatKey = unsigned __int128;

MatKey mat_key(const Mat& a, int ring_size);
Mat mat_from_key(MatKey key, int n, int ring_size);

struct MatKeyHash {
  std::size_t operator()(MatKey k) const noexcept {
    auto lo = static_cast<std::uint64_t>(k);
    auto hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6) + (lo >> 2));
    h ^= h >> 31;
    h *= 0xBF58476D1CE4E5B9ULL;
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
  }
};

Mat identity(int n);
Mat scalar(const Ring& r, int n, Elem x);
Mat mat_add(const Ring& r, const Mat& a, const Mat& b);
Mat mat_sub(const Ring& r, const Mat& a, const Mat& b);
Mat mat_neg(const Ring& r, const Mat& a);
Mat mat_mul(const Ring& r, const Mat& a, const Mat& b);
Mat mat_scale(const Ring& r, Elem x, const Mat& a);
Mat transpose(const Mat& a);
/// Entrywise sigma then transpose.
Mat star(const Ring& r, const Mat& a);
Elem trace(const Ring& r, const Mat& a);
/// tr(AB) without forming AB.
Elem trace_product(const Ring& r, const Mat& a, const Mat& b);

/// Determinant. Over a field or a local ring, elimination with unit pivots; a
/// column without a unit pivot falls back to cofactor expansion.
Elem mat_det(const Ring& r, const Mat& a);
/// Inverse; throws InvalidConfig when the matrix is not invertible.
Mat mat_inv(const Ring& r, const Mat& a);
bool is_invertible(const Ring& r, const Mat& a);

/// Entrywise reduction O_2 -> O_1 (codes of the residue field).
Mat reduce(const Ring& r, const Mat& a);
/// Entrywise Teichmueller section O_1 -> O_2.
Mat section(const Ring& r, const Mat& a);
/// I + pi*X for X over the residue field.
Mat one_plus_pi(const Ring& r, const Mat& x);
/// For g = I + pi*X, returns X; throws InternalError when g does not reduce to I.
Mat kernel_coordinates(const Ring& r, const Mat& g);
/// Lifts a residue-field matrix to pi * s(X).
Mat pi_times(const Ring& r, const Mat& x);

bool is_scalar(const Mat& a);

/// Uniform random entries; the caller owns the generator.
template <class Rng>
Mat random_mat(int n, int ring_size, Rng& rng) {
  Mat m(n);
  for (int k = 0; k < n * n; ++k) m.e[k] = static_cast<Elem>(rng() % static_cast<unsigned>(ring_size));
  return m;
}

std::string to_string(const Mat& a);

/// J = [[0, I_h], [-I_h, 0]] of size 2h.
Mat symplectic_form(const Ring& r, int h);

}  // namespace cliffdeg
