#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superfan/cparam.hpp"
#include "superfan/lattice.hpp"
#include "superfan/semigroup.hpp"

namespace superfan {

// The sets A (even monomial exponents in M') and B = A' | B'' (odd ones),
// where A' collects the members of A pairing nonzero against c and every
// B''-element carries an N-combination witness over A''.
struct MonomialData {
  Index mrank = 0;
  CParam c = CParam::zero(0);
  MatZ A;                        // r x mrank
  MatZ B;                        // s x mrank
  std::vector<Index> a_prime;    // indices into A with <m, c> != 0
  std::vector<Index> a_second;   // the complement
  // witness_{j,i}: coefficient of A.row(i) in B.row(j); supported on a_prime
  // only for the A'-block rows
  MatZ witnesses;                // s x r

  Index r() const { return A.rows(); }
  Index s() const { return B.rows(); }
};

// Partition A by whether <m, c> vanishes; returns (A' indices, A'' indices).
std::pair<std::vector<Index>, std::vector<Index>> split_by_c(const MatZ& A, const CParam& c);

// B = A' followed by the given extra elements of N A''; witnesses found by
// bounded coefficient search (throws WitnessError past the cap).
MonomialData make_monomial_data(Index mrank, const CParam& c, const MatZ& A, const MatZ& b_second,
                                int witness_cap = 32);
// Convenience for B = A: members of A'' witness themselves.
MonomialData make_monomial_data_same(Index mrank, const CParam& c, const MatZ& A);

// Z^{r+s} -> M' + Z: e_i -> (m_i | 0), e'_j -> (n_j | 1).
MatZ phi_lattice_map(const MonomialData& data);

// Saturated kernel L of the lattice map; odd coordinates always sum to zero.
MatZ kernel_L(const MonomialData& data);

struct SuperBinomial {
  enum class Kind { binomial, odd_pair };
  Kind kind = Kind::binomial;
  VecZ plus_even, minus_even;           // exponents over x_1..x_r
  std::optional<Index> plus_odd, minus_odd;  // at most one xi per side
  Index odd_i = 0, odd_j = 0;           // for the xi_i xi_j marker
  std::string str() const;
};

struct BinomialSample {
  std::vector<SuperBinomial> binomials;
  bool includes_odd_pair_relations = true;  // the (xi_i xi_j) block always applies
};

// Binomials from kernel vectors with sup-norm <= box and at most one odd
// index per side; vectors with wider odd support lie in (xi_i xi_j) and are
// skipped.
BinomialSample binomials_in_box(const MonomialData& data, int box);

// Exponent bookkeeping for x_i -> t^{m_i}, xi_j -> t^{n_j} xi.
bool verify_vanishing(const MonomialData& data, const SuperBinomial& b);

// A = Hilbert basis of S, B = A' | (ker-c members of B_sigma witnessed over
// A''); generates the same ideal as B_sigma.
MonomialData presentation_from_semigroup(const AffineSemigroup& s, const MatZ& b_sigma,
                                         const CParam& c, int witness_cap = 32);

}  // namespace superfan
