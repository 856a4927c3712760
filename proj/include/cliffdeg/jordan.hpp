#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "cliffdeg/matrix.hpp"
#include "cliffdeg/ring.hpp"

namespace cliffdeg {

struct JordanBlock {
  Elem eigenvalue;
  int size;
  int offset;  // first index in the Jordan basis
};

/**
 * basis_inv * A * basis == jordan. Blocks are ordered by eigenvalue code, then
 * by decreasing size; each block is upper triangular with ones above the
 * diagonal.
 */
struct JordanForm {
  Mat jordan;
  Mat basis;
  Mat basis_inv;
  std::vector<JordanBlock> blocks;

  std::vector<Elem> eigenvalues() const;
  /// Block sizes at one eigenvalue, decreasing.
  std::vector<int> partition(Elem eigenvalue) const;
  /// Index range [begin, end) of the generalized eigenspace of an eigenvalue.
  std::pair<int, int> eigenspace_range(Elem eigenvalue) const;
};

/// The characteristic polynomial does not split; carries its factorization.
struct SplitFailure {
  std::vector<Elem> char_poly;                // low to high, monic
  std::vector<std::vector<Elem>> factors;     // monic irreducible, with repetition
};

using JordanResult = std::variant<JordanForm, SplitFailure>;

std::vector<Elem> characteristic_polynomial(const Ring& residue, const Mat& a);
/// Monic irreducible factors (repeated by multiplicity), ordered by degree then code.
std::vector<std::vector<Elem>> factor_polynomial(const GaloisField& f, std::vector<Elem> poly);

JordanResult jordan_form(const Ring& residue, const Mat& a);

class ArrangementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Eigenvalues grouped into r cycles a_{i1}, ..., a_{ip} with a_{ij} = a_{i,j-1} + x
 * and a_{ip} + x = a_{i1}. Cycles are ordered by their least eigenvalue and
 * start at it. Block sizes m_{ij} are the generalized eigenspace dimensions.
 */
struct JordanArrangement {
  JordanForm form;
  Elem step = 0;
  int p = 0;
  int r = 0;
  std::vector<std::vector<Elem>> grid;
  std::vector<std::vector<int>> sizes;
  /// Cycles counted per Jordan block rather than per eigenvalue.
  int strands = 0;
};

/// Throws ArrangementError when A is visibly not conjugate to A + xI (spectrum
/// not closed under +x, or differing Jordan structure along a cycle).
JordanArrangement arrange_cycles(const Ring& residue, const JordanForm& form, Elem step);

}  // namespace cliffdeg
