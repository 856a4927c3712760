#pragma once

/**
 * @file engine.hpp
 * @brief Irreducible-representation dimensions of C(O_2) through the kernel L(C).
 *
 * Characters of L(C) = {I + pi X : X in M_C} are psi_A(I + pi X) = psi(tr AX),
 * parameterized by A in M_C, or by the scalar class [A] when C = SL and p | n.
 * For each C(O_1)-orbit of parameters with stabilizer quotient Q, every degree
 * d of Irr(Q) contributes one representation of dimension |orbit| * d.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cliffdeg/budget.hpp"
#include "cliffdeg/group.hpp"
#include "cliffdeg/lie.hpp"

namespace cliffdeg {

struct EngineConfig {
  Budgets budgets;
  int threads = 1;
  std::uint64_t seed = 1;
  /// Extension multiplicativity is checked on all of T when |gens(T)| * |T| is
  /// at most this, otherwise on seeded samples.
  std::size_t exhaustive_limit = 3'000'000;
  std::size_t samples = 4000;
};

/// One classical group with its residue group, Lie space and parameter space.
struct Classical {
  GroupSpec spec;
  LieSpace lie;
  MatrixGroup residue_group;
  std::vector<int> gens;
  bool scalar_mode = false;  // SL with p | n: parameters are scalar classes

  const Ring& residue() const { return spec.residue(); }
  const Ring& ring() const { return spec.ring(); }
  std::size_t residue_order() const { return residue_group.order(); }
  std::size_t kernel_order() const { return lie.cardinality(); }
  std::size_t group_order() const { return residue_order() * kernel_order(); }
  /// |M_C|, or q^{n^2 - 1} in scalar mode.
  std::size_t parameter_count() const;
  /// Canonical parameter: A itself, or the scalar-class representative.
  Mat canonical(const Mat& a) const;
};

Classical make_classical(const GroupSpec& spec, const EngineConfig& config = {});

/// psi_A or psi_[A] on L(C).
struct KernelCharacter {
  Mat a;
  bool scalar_class = false;
  const Ring* residue = nullptr;

  /// Exponent of psi(tr AX) in Z/p for X in M_C.
  int exponent(const Mat& x) const;
  /// Same for k = I + pi X given over O_2.
  int exponent_of(const Ring& ring, const Mat& k) const { return exponent(kernel_coordinates(ring, k)); }
};

/// Throws InvalidConfig when A is not a valid parameter (A not in M_C).
KernelCharacter kernel_character(const Classical& c, const Mat& a);

struct OrbitRecord {
  Mat rep;                          // least parameter in the orbit (MatKey order)
  std::size_t size = 0;             // orbit size = index of T_C(phi)
  std::vector<int> stabilizer;      // indices into residue_group
  std::vector<std::uint64_t> degrees;  // Irr of the stabilizer quotient

  std::size_t stab_order() const { return stabilizer.size(); }
};

std::vector<OrbitRecord> adjoint_orbits(const Classical& c, const EngineConfig& config = {});

/// Degrees of each orbit's stabilizer quotient, filled in place.
void stabilizer_degrees(const Classical& c, std::vector<OrbitRecord>& orbits, const EngineConfig& config = {});

/// The conjugation action of lifts of C(O_1) on the basis of L(C), computed
/// over O_2. Gives |T_C(phi)/L(C)| from the character condition alone,
/// independent of the centralizer scan.
class KernelAction {
 public:
  KernelAction(const Classical& c, int threads = 1);
  /// Number of gbar in C(O_1) with phi(g k g^-1) = phi(k) for all k in L(C).
  std::size_t stabilizer_order(const KernelCharacter& phi) const;

 private:
  std::size_t dim_ = 0;
  std::size_t order_ = 0;
  std::vector<Mat> basis_;
  std::vector<Mat> conjugated_;  // [g * dim + b] = kernel coordinates of g (I + pi X_b) g^-1
};

struct Check {
  bool ok = true;
  std::string detail;
};

struct IrrResult {
  std::vector<OrbitRecord> orbits;
  std::map<std::uint64_t, std::uint64_t> irr;  // dimension -> count
  std::size_t residue_order = 0;
  std::size_t group_order = 0;
  std::map<std::string, Check> checks;

  std::uint64_t descriptor_count() const;
  bool ok() const;
};

/// structural adds the partition, stabilizer and index identities.
IrrResult irr_dimensions(const Classical& c, const EngineConfig& config = {}, bool structural = true);

/// Enumerates C(O_2) and compares against the character-degree oracle: the
/// descriptor count against the class count, and the full multiset.
struct OracleComparison {
  Check class_count;
  Check degrees;
  std::size_t classes = 0;
};
OracleComparison compare_with_oracle(const Classical& c, const IrrResult& result, const EngineConfig& config = {});

struct CompareResult {
  IrrResult unramified, ramified;
  bool equal = false;
  std::vector<std::string> diff;
  /// Orbits matched by (size, stabilizer order, degrees); groups with more than
  /// one orbit per invariant are ties and are reported, not resolved.
  std::vector<std::pair<std::size_t, std::size_t>> alignment;
  std::size_t ties = 0;
  bool aligned = false;
};

CompareResult compare_rings(Family family, int n, int p, int m, const EngineConfig& config = {});

// --- character extensions -------------------------------------------------

/// A linear character of T_C(phi) with values exp(2 pi i v / modulus).
struct ExtensionCharacter {
  std::uint64_t modulus = 1;
  std::string method;
  std::function<std::uint64_t(const Mat&)> value;  // g in T_C(phi), over O_2
};

/// T_C(phi) as lifts of the stabilizer quotient times L(C).
struct Stabilizer {
  MatrixGroup quotient;            // over the residue field
  std::vector<Mat> lifts;          // lift_element of each quotient element
  std::vector<int> quotient_gens;
  std::vector<Mat> kernel;         // I + pi X for X in M_C, over O_2
  std::vector<Mat> kernel_basis;

  std::size_t order() const { return quotient.order() * kernel.size(); }
  /// Generators of T: lifts of quotient generators and the kernel basis.
  std::vector<Mat> generators() const;
  /// t_q * k_j for t = quotient index q and kernel index j.
  Mat element(const Ring& ring, std::size_t q, std::size_t j) const;
};

Stabilizer build_stabilizer(const Classical& c, const Mat& a, CentralizerMode mode, const EngineConfig& config = {});

/// Extension for split A (Jordan-basis transport of the block-determinant
/// character). Returns nothing when the characteristic polynomial of A does
/// not split over the residue field.
std::optional<ExtensionCharacter> canonical_extension_split(const Classical& c, const Mat& a);

struct SearchOptions {
  /// Elements on which the extension must vanish (the permutation complement).
  std::vector<Mat> trivial_on;
};

struct SearchResult {
  ExtensionCharacter chosen;
  std::size_t extension_count = 0;  // number of extensions of phi
  /// Exponent vector (mod modulus) of each extension on the generators of
  /// T/ker(phi); the chosen one is the lexicographically least.
  std::vector<std::vector<std::uint64_t>> all;
  std::function<bool(const ExtensionCharacter&)> contains;
};

/// Some extension of phi to T, from the abelianization of T/ker(phi).
SearchResult extension_by_search(const Classical& c, const KernelCharacter& phi, const Stabilizer& t,
                                 const SearchOptions& options = {});

/// Checks on the p | n construction (branch ii and its preconditions).
struct SInvarianceReport {
  bool applicable = false;       // Z([A]) != Z(A)
  std::string complement_method; // "permutation" or "search"
  std::size_t complement_order = 1;
  std::map<std::string, Check> checks;
  bool ok() const;
};

struct ExtensionReport {
  Mat rep;
  std::string method;
  std::map<std::string, Check> checks;
  SInvarianceReport s;

  bool ok() const;
};

/// Canonical extension (or the search fallback) for one orbit representative,
/// with the restriction, multiplicativity and p | n checks.
ExtensionReport verify_extension(const Classical& c, const Mat& a, const EngineConfig& config = {});
std::vector<ExtensionReport> verify_extensions(const Classical& c, const std::vector<OrbitRecord>& orbits,
                                               const EngineConfig& config = {});

}  // namespace cliffdeg
