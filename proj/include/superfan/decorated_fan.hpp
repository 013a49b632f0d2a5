#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "superfan/semigroup.hpp"
#include "superfan/supertorus.hpp"

namespace superfan {

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
  std::string str() const;
};

// plain fan in a lattice, used for underlying/orbit-closure output
struct Fan {
  Index rank = 0;
  std::vector<Cone> cones;
};

ValidationReport validate_fan(Index rank, const std::vector<Cone>& cones);

// (N, c, Sigma, B): fan with a c-admissible decoration on every cone.
// Canonical cone order; per-cone semigroups precomputed.
class DecoratedFan {
 public:
  // strict constructor: throws ValidationError when anything fails
  static DecoratedFan make(SupertorusDatum torus, std::vector<Cone> cones,
                           std::vector<MatZ> decorations);
  // non-throwing: returns the fan only if valid, plus the full report
  static std::pair<std::optional<DecoratedFan>, ValidationReport> build(
      SupertorusDatum torus, std::vector<Cone> cones, std::vector<MatZ> decorations);
  // decorations given on maximal cones only; faces filled by localization
  // (and given decorations canonicalized)
  static DecoratedFan from_maximal(SupertorusDatum torus, const std::vector<Cone>& maximal,
                                   const std::vector<MatZ>& maximal_decorations);

  const SupertorusDatum& torus() const { return torus_; }
  Index rank() const { return torus_.rank; }
  Index size() const { return static_cast<Index>(cones_.size()); }
  const std::vector<Cone>& cones() const { return cones_; }
  const Cone& cone(Index i) const { return cones_[static_cast<size_t>(i)]; }
  const MatZ& decoration(Index i) const { return decorations_[static_cast<size_t>(i)]; }
  const AffineSemigroup& semigroup(Index i) const { return semigroups_[static_cast<size_t>(i)]; }
  Index index_of(const Cone& c) const;  // -1 when absent
  bool is_face_pair(Index tau, Index sigma) const;  // cones_[tau] face of cones_[sigma]
  std::vector<Index> maximal_cones() const;

  bool operator==(const DecoratedFan& o) const;

 private:
  DecoratedFan() = default;
  SupertorusDatum torus_;
  std::vector<Cone> cones_;
  std::vector<MatZ> decorations_;
  std::vector<AffineSemigroup> semigroups_;
  std::vector<std::vector<bool>> face_table_;  // face_table_[tau][sigma]
};

ValidationReport validate_decorations(const DecoratedFan& x);

// B_sigma pushed into the face chart: minimalize(B_sigma, S_tau). On a valid
// fan this reproduces B_tau.
MatZ localize_decoration(const DecoratedFan& x, Index sigma, Index tau);

bool is_split(const DecoratedFan& x);
bool is_smooth(const DecoratedFan& x);

struct DSInvariant {
  MatZ semigroup_generators;       // Hilbert basis of S_sigma
  MatZ ideal_generators;           // minimal generators of J^sigma
  std::optional<bool> finite;      // nullopt: inconclusive at k_max
  std::vector<VecZ> quotient_basis;  // monomial basis when finite
};

DSInvariant ds_invariant(const DecoratedFan& x, Index sigma, int k_max = 64);

// Images of B_sigma in M/(sigma-perp cap M), the character lattice of the
// even stabilizer.
std::vector<VecZ> fiber_of_J(const DecoratedFan& x, Index sigma);

enum class OrbitBranch { even_stabilizer_super_orbit, super_stabilizer_even_orbit };

struct OrbitReport {
  OrbitBranch branch;
  MatZ stabilizer_basis;             // rows: basis of N_sigma inside N
  SupertorusDatum stabilizer;        // over N_sigma; c present iff super branch
  MatZ orbit_projection;             // N -> N(sigma)
  SupertorusDatum orbit;             // over N(sigma); c present iff even-stabilizer branch
};

OrbitReport orbit_stabilizer(const DecoratedFan& x, Index sigma);

// Star fan in N(sigma); decorated in the super-orbit branch, plain otherwise.
std::variant<Fan, DecoratedFan> orbit_closure(const DecoratedFan& x, Index sigma);

// {c0 : condition (i) holds at every cone}, assembled from Hilbert basis
// elements outside the decoration ideals.
Subspace admissible_c_space(Index rank, const std::vector<Cone>& cones,
                            const std::vector<MatZ>& decorations);
Subspace admissible_c_space(const DecoratedFan& x);

// All c-admissible split (singleton) decorations on the fan; c must be
// nonzero so the candidate sets are finite.
std::vector<DecoratedFan> enumerate_split_decorations(const SupertorusDatum& torus,
                                                      const std::vector<Cone>& cones);

// Degree of the fermionic sheaf on a complete rank-1 split fan, reported as
// the twist d in O(d).
std::optional<Int> fermionic_degree(const DecoratedFan& x);

}  // namespace superfan
