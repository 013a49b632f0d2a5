#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superfan/arith.hpp"

namespace superfan {

// The odd-square parameter c, written over a formal Q-linearly-independent
// transcendental basis: c = sum_t c^(t) * lambda_t with c^(t) rational
// vectors. This makes <m, c> = 0 exactly decidable.
class CParam {
 public:
  static CParam zero(Index rank) { return CParam(rank); }
  CParam(Index rank, std::vector<std::string> symbols, MatQ components);

  Index rank() const { return rank_; }
  Index terms() const { return components_.rows(); }
  bool is_zero_param() const { return components_.rows() == 0; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const MatQ& components() const { return components_; }  // terms x rank
  VecQ component_for(const std::string& symbol) const;    // zero vector if absent

  bool operator==(const CParam& o) const;

 private:
  explicit CParam(Index rank) : rank_(rank), components_(0, rank) {}
  Index rank_;
  std::vector<std::string> symbols_;  // sorted, unique, aligned with rows
  MatQ components_;
};

// <m, c> componentwise, one rational per transcendental term.
VecQ pair(const Eigen::Ref<const VecZ>& m, const CParam& c);

bool pairs_to_zero(const Eigen::Ref<const VecZ>& m, const CParam& c);

// c with every component mapped through an integer matrix (rank change).
CParam apply_map(const MatZ& phi, const CParam& c);

// c with components transformed by v -> solve(basis^T x = v); throws
// std::invalid_argument when some component is outside the span.
CParam restrict_to_sublattice(const MatZ& basis_rows, const CParam& c);

CParam scale(const Rat& s, const CParam& c);

}  // namespace superfan
