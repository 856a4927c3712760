#pragma once

/**
 * @file oracle.hpp
 * @brief Character degrees of an explicitly enumerated finite group.
 *
 * Dixon-Schneider: the central characters omega_chi(C_k) = |C_k| chi(g_k)/chi(1)
 * are the common eigenvectors of the class matrices (M_j)_{ik} = a_{ijk}, found
 * over F_l with l = 1 mod exp(G). Degrees follow from
 *
 *   sum_k omega(C_k) omega(C_k^-1) / |C_k| = |G| / chi(1)^2.
 *
 * Independent of the Clifford engine: it only sees the multiplication table.
 */

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cliffdeg/budget.hpp"
#include "cliffdeg/group.hpp"

namespace cliffdeg {

struct ClassAlgebra {
  std::size_t order = 0;
  ConjugacyClasses classes;
  std::vector<int> inverse_class;
  int identity_class = 0;
  std::uint64_t exponent = 1;
  /// a_{ijk} = #{(x, y) in C_i x C_j : x y = g_k}, stored at (i * r + j) * r + k.
  std::vector<std::uint32_t> coeffs;

  std::size_t rank() const { return classes.count(); }
  std::uint32_t coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t r = rank();
    return coeffs[(i * r + j) * r + k];
  }
};

ClassAlgebra class_algebra(const FiniteGroup& g, const Budgets& budgets = {}, int threads = 1);

struct DegreeResult {
  std::vector<std::uint64_t> degrees;  // sorted ascending
  std::uint64_t prime = 0;             // the l that succeeded
  std::size_t class_count = 0;
};

/// Throws InternalError if no prime among the first few candidates works.
DegreeResult character_degrees(const ClassAlgebra& algebra, std::uint64_t seed = 1);
DegreeResult character_degrees(const FiniteGroup& g, const Budgets& budgets = {}, int threads = 1);

}  // namespace cliffdeg
