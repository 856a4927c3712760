#pragma once

/**
 * @file lie.hpp
 * @brief The spaces M_C of the classical groups and the trace pairing on them.
 *
 * M_C is the subgroup of n x n matrices over the residue field for which
 * X -> I + pi*X identifies M_C with the congruence kernel L(C) of C(O_2):
 *
 *   SL: tr X = 0        O: X + X^t = 0
 *   Sp: X^t J + J X = 0 U: X + X^* = 0
 *
 * All spaces are handled as F_p-vector spaces, which covers the unitary case
 * where M_U is F_q-linear inside matrices over F_{q^2}.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "cliffdeg/matrix.hpp"
#include "cliffdeg/ring.hpp"

namespace cliffdeg {

enum class Family { SL, Sp, O, U };

std::string family_name(Family f);
Family parse_family(const std::string& name);
/// Matrix size for the family parameter n (Sp_n uses 2n x 2n matrices).
int matrix_size(Family f, int n);

struct LieSpace {
  Family family = Family::SL;
  int n = 0;     // family parameter
  int size = 0;  // matrix size
  int p = 0;
  std::vector<Mat> basis;  // F_p-basis of residue-field matrices

  int dim() const { return static_cast<int>(basis.size()); }
  std::size_t cardinality() const;
  /// Element with base-p digit expansion of index as coordinates.
  Mat element(const Ring& residue, std::size_t index) const;
  std::vector<Mat> elements(const Ring& residue) const;
};

/// The family's defining linear condition on a residue-field matrix.
bool in_lie_space(Family family, const Ring& residue, const Mat& x);

/// Basis of M_C as the F_p-kernel of the defining condition.
LieSpace lie_space(Family family, int n, const Ring& residue);

/// tr(AB) over the residue field.
Elem trace_form(const Ring& residue, const Mat& a, const Mat& b);
/// Tr_{F/F_p}(tr(AB)): the exponent of psi(tr(AB)).
int pairing_exponent(const Ring& residue, const Mat& a, const Mat& b);

/// {A in L : Tr tr(AX) = 0 for all X in L}, by exact nullspace over F_p.
LieSpace radical(const LieSpace& space, const Ring& residue);

/// Scalar-class representative: A - A_{nn} I (last diagonal entry zero).
Mat scalar_class_rep(const Ring& residue, const Mat& a);

}  // namespace cliffdeg
