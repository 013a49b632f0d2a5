#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "superfan/cone.hpp"
#include "superfan/cparam.hpp"

namespace superfan {

// S_sigma = (dual of sigma) intersected with M, for sigma a cone in N.
// Elements are lattice points of M paired against the rays of sigma.
class AffineSemigroup {
 public:
  explicit AffineSemigroup(Cone sigma);

  const Cone& sigma() const { return sigma_; }
  Index rank() const { return sigma_.ambient_rank(); }

  // Minimal generating set (up to units when the unit lattice is nontrivial),
  // computed once and cached.
  const MatZ& hilbert_basis() const;
  // HNF basis of the unit lattice sigma-perp intersect M.
  const MatZ& units() const { return units_; }

  bool contains(const Eigen::Ref<const VecZ>& m) const;
  bool is_unit(const Eigen::Ref<const VecZ>& m) const;
  // Canonical coset representative modulo the unit lattice.
  VecZ canonical_rep(VecZ m) const;

  // a <=_S b, i.e. b - a in S. Throws when an operand is outside S.
  bool divides(const Eigen::Ref<const VecZ>& a, const Eigen::Ref<const VecZ>& b) const;

  bool operator==(const AffineSemigroup& o) const { return sigma_ == o.sigma_; }

 private:
  Cone sigma_;
  MatZ units_;
  struct Cache {
    std::once_flag once;
    MatZ hilbert;
  };
  std::shared_ptr<Cache> cache_;
};

MatZ hilbert_basis(const AffineSemigroup& s);

// Monomial S-ideal given by a finite generator list; empty = the zero ideal.
struct SIdeal {
  AffineSemigroup semigroup;
  MatZ gens;
  bool is_zero() const { return gens.rows() == 0; }
  bool contains(const Eigen::Ref<const VecZ>& m) const;
  bool operator==(const SIdeal& o) const {
    return semigroup == o.semigroup && exact_eq(gens, o.gens);
  }
};

// Unique minimal generator set of the ideal generated by `gens`: divisible
// generators removed, survivors replaced by canonical unit-coset
// representatives, lex-sorted.
SIdeal minimalize(const Eigen::Ref<const MatZ>& gens, const AffineSemigroup& s);

// J_c = (m in S : <m,c> != 0), as a minimal generator set.
SIdeal jc_generators(const AffineSemigroup& s, const CParam& c);

// Condition (i) of c-admissibility; optionally also reports minimality
// (condition about <=_S antichains).
bool is_admissible(const Eigen::Ref<const MatZ>& B, const AffineSemigroup& s, const CParam& c,
                   bool* minimal = nullptr);

// Is S minus J finite? Exact both ways: a Hilbert generator h has some
// multiple in J iff its tight rays are covered by some generator's, and the
// witness multiples bound the complement. Throws InconclusiveError when a
// witness search passes the ray test but exceeds k_max.
bool complement_is_finite(const SIdeal& j, int k_max = 64);

// Witness multiples k_h per Hilbert generator (only meaningful when the
// complement is finite); sum of (k_h - 1) bounds the complement's coefficient
// sums.
std::vector<int> finiteness_witnesses(const SIdeal& j, int k_max = 64);

// All m in S minus J expressible with Hilbert coefficient sum <= bound.
std::vector<VecZ> enumerate_complement(const SIdeal& j, int bound);

// All monomial ideals J with J_c contained in J contained in S, via
// downward-closed subsets of the finite complement of J_c.
std::vector<SIdeal> enumerate_intermediate_ideals(const AffineSemigroup& s, const CParam& c,
                                                  int k_max = 64);

}  // namespace superfan
