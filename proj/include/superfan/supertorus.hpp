#pragma once

#include "superfan/cparam.hpp"
#include "superfan/lattice.hpp"

namespace superfan {

// (N, c): a lattice of cocharacters together with the odd-square parameter.
struct SupertorusDatum {
  Index rank = 0;
  CParam c = CParam::zero(0);

  static SupertorusDatum even(Index rank) { return {rank, CParam::zero(rank)}; }
  bool operator==(const SupertorusDatum& o) const { return rank == o.rank && c == o.c; }
};

// (phi_bar, a) with phi_bar(c) = a^2 c' on every transcendental component.
struct SupertorusMorphism {
  SupertorusDatum src, dst;
  MatZ phi;
  Rat a;
};

SupertorusMorphism validate_supertorus_morphism(const SupertorusDatum& src,
                                                const SupertorusDatum& dst, const MatZ& phi,
                                                const Rat& a);

SupertorusMorphism compose(const SupertorusMorphism& g, const SupertorusMorphism& f);

// g in GL(n,Z) with the last n-r coordinate rows of g*c zero, where r is the
// Q-rank of the component matrix; witnesses T = T' x (C^*)^{n-r}.
struct TorusDecomposition {
  MatZ g;
  Index r = 0;
};

TorusDecomposition decompose(const SupertorusDatum& t);

bool is_indecomposable(const SupertorusDatum& t);

}  // namespace superfan
