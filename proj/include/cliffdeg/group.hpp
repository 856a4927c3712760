#pragma once

/**
 * @file group.hpp
 * @brief The classical groups C(O_1), C(O_2) as explicit finite groups.
 *
 *   SL: det g = 1        Sp: g^t J g = J
 *   O:  g^t g = I        U:  g g^* = I  (entries in the quadratic extension)
 *
 * Elements are indexed 0..order-1 in increasing MatKey order, so index order is
 * the matrix encoding order used for canonical representatives.
 */

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cliffdeg/budget.hpp"
#include "cliffdeg/lie.hpp"
#include "cliffdeg/matrix.hpp"
#include "cliffdeg/ring.hpp"

namespace cliffdeg {

struct GroupSpec {
  Family family = Family::SL;
  int n = 0;     // family parameter (Sp_n uses 2n x 2n matrices)
  int size = 0;  // matrix size
  Rings rings;

  const Ring& residue() const { return rings.residue; }
  const Ring& ring() const { return rings.ring; }
  std::string describe() const;
};

/// Validates the family/ring combination; unitary groups switch on the extension.
GroupSpec make_group_spec(Family family, int n, RingSpec ring);

/// Membership in C(R) for R either the residue field or O_2 of the spec.
bool is_member(const GroupSpec& spec, const Ring& r, const Mat& g);

class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;
  virtual std::size_t order() const = 0;
  virtual int identity() const = 0;
  virtual int mul(int a, int b) const = 0;
  virtual int inv(int a) const = 0;

  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
};

class MatrixGroup : public FiniteGroup {
 public:
  MatrixGroup() = default;
  /// Elements are sorted by key; duplicates are an error.
  MatrixGroup(const Ring& ring, std::vector<Mat> elements);

  std::size_t order() const override { return elements_.size(); }
  int identity() const override { return identity_; }
  int mul(int a, int b) const override;
  int inv(int a) const override { return inverse_[a]; }

  const Mat& element(int i) const { return elements_[i]; }
  const std::vector<Mat>& elements() const { return elements_; }
  /// -1 when the matrix is not in the group.
  int index_of(const Mat& m) const;
  const Ring& ring() const { return ring_; }
  int matrix_size() const { return elements_.empty() ? 0 : elements_[0].n; }

 private:
  Ring ring_;
  std::vector<Mat> elements_;
  std::unordered_map<MatKey, int, MatKeyHash> index_;
  std::vector<int> inverse_;
  int identity_ = -1;
};

/// A group given by its Cayley table (rows: left factor).
class TableGroup : public FiniteGroup {
 public:
  explicit TableGroup(std::vector<std::vector<int>> table);

  std::size_t order() const override { return table_.size(); }
  int identity() const override { return identity_; }
  int mul(int a, int b) const override { return table_[a][b]; }
  int inv(int a) const override { return inverse_[a]; }

  static TableGroup cyclic(int k);
  static TableGroup symmetric(int k);
  /// Cayley table of an enumerated group.
  static TableGroup from(const FiniteGroup& g);

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

/// C(O_1): SL by scanning all matrices, O/U/Sp by extending columns that
/// satisfy the form against the previous ones.
MatrixGroup enumerate_residue_group(const GroupSpec& spec, const Budgets& budgets = {});

/// Deterministic lift of an element of C(O_1) to C(O_2).
Mat lift_element(const GroupSpec& spec, const Mat& gbar);

/// C(O_2) = { lift(gbar) (I + pi X) : gbar in C(O_1), X in M_C }.
MatrixGroup enumerate_group(const GroupSpec& spec, const MatrixGroup& residue_group, const LieSpace& lie,
                            const Budgets& budgets = {});
MatrixGroup enumerate_group(const GroupSpec& spec, const Budgets& budgets = {});

/// |C(O_1)| from the classical order formulas, without enumerating.
std::size_t residue_group_order(const GroupSpec& spec);

/// Order of C(O_1) times |M_C|, without enumerating C(O_2).
std::size_t expected_order(std::size_t residue_order, const LieSpace& lie);

/// A generating set found by seeded random choice, each new generator outside
/// the subgroup generated so far.
std::vector<int> generators(const FiniteGroup& g, std::uint64_t seed = 1);
/// Elements of the subgroup generated by gens, sorted.
std::vector<int> closure(const FiniteGroup& g, const std::vector<int>& gens);

struct ConjugacyClasses {
  std::vector<int> reps;           // least element index of each class
  std::vector<std::size_t> sizes;
  std::vector<int> class_of;       // element index -> class number

  std::size_t count() const { return reps.size(); }
};

/// Classes ordered by representative index.
ConjugacyClasses conjugacy_classes(const FiniteGroup& g, const std::vector<int>& gens);
ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

enum class CentralizerMode { Exact, ScalarClass };

/// {g in G : g A = A g}, or {g : g A g^-1 - A scalar} for ScalarClass.
std::vector<int> centralizer_indices(const MatrixGroup& g, const Ring& residue, const Mat& a, CentralizerMode mode,
                                     int threads = 1);
MatrixGroup centralizer(const MatrixGroup& g, const Ring& residue, const Mat& a, CentralizerMode mode,
                        int threads = 1);

}  // namespace cliffdeg
