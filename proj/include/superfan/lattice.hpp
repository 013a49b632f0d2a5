#pragma once

#include <optional>

#include "superfan/arith.hpp"

namespace superfan {

// Row-style Hermite normal form: U*A = [H; 0] with U unimodular, H the
// canonical basis of the row lattice (positive pivots, entries above a pivot
// reduced into [0, pivot)).
struct HermiteForm {
  MatZ H;  // rank x cols
  MatZ U;  // rows x rows
  Index rank = 0;
};

HermiteForm hermite_normal_form(const Eigen::Ref<const MatZ>& A);

// Canonical HNF basis of the lattice spanned by the rows of A.
MatZ hnf_basis(const Eigen::Ref<const MatZ>& A);

// U*A*V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dr > 0.
struct SmithForm {
  MatZ U, D, V;
  Index rank = 0;
  std::vector<Int> divisors() const;
};

SmithForm smith_normal_form(const Eigen::Ref<const MatZ>& A);

Index rank_of(const Eigen::Ref<const MatZ>& A);

// Inverse of a unimodular integer matrix.
MatZ inverse_unimodular(const Eigen::Ref<const MatZ>& A);

// Canonical basis (HNF rows) of {x : A x = 0}. The kernel of an integer
// matrix is automatically saturated.
MatZ kernel_saturated(const Eigen::Ref<const MatZ>& A);

// Canonical basis of Sat(rowspan(V)), the smallest saturated sublattice
// containing the rows of V.
MatZ saturate(const Eigen::Ref<const MatZ>& V);

struct QuotientLattice {
  Index rank = 0;     // rank of the quotient
  MatZ projection;    // rank x ambient, surjective, kills the sublattice
};

// Quotient of Z^ambient by the saturated sublattice spanned by the given
// basis rows. Throws std::invalid_argument when the input has torsion
// (non-saturated) or is not a basis.
QuotientLattice quotient_lattice(Index ambient, const Eigen::Ref<const MatZ>& basis_rows);

// Integer solution of A x = b, if one exists.
std::optional<VecZ> solve_integer(const Eigen::Ref<const MatZ>& A, const Eigen::Ref<const VecZ>& b);

// Reduced row echelon form over Q; pivot columns appended to `pivots`.
MatQ rref(MatQ m, std::vector<Index>* pivots = nullptr);

std::optional<VecQ> solve_rational(const MatQ& A, const VecQ& b);

// Canonical basis rows of {x in Q^n : A x = 0}.
MatQ kernel_rational(const MatQ& A);

// A rational subspace in canonical (RREF) form; equal subspaces compare equal.
class Subspace {
 public:
  Subspace(Index ambient, MatQ spanning_rows);
  static Subspace zero(Index ambient) { return Subspace(ambient, MatQ(0, ambient)); }
  static Subspace full(Index ambient);

  Index ambient_rank() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  const MatQ& basis() const { return basis_; }
  // Basis rows cleared to primitive integer vectors (for display).
  MatZ integer_basis() const;
  bool contains(const VecQ& v) const;
  bool operator==(const Subspace& o) const;

 private:
  Index ambient_;
  MatQ basis_;  // RREF rows, no zero rows
};

}  // namespace superfan
