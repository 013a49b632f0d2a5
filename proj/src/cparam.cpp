#include "superfan/cparam.hpp"

#include <algorithm>
#include <stdexcept>

#include "superfan/lattice.hpp"

namespace superfan {

CParam::CParam(Index rank, std::vector<std::string> symbols, MatQ components) : rank_(rank) {
  if (components.rows() != static_cast<Index>(symbols.size()))
    throw std::invalid_argument("CParam: one symbol per component row required");
  if (components.rows() > 0 && components.cols() != rank)
    throw std::invalid_argument("CParam: component length must equal rank");
  std::vector<Index> order(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) order[i] = static_cast<Index>(i);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return symbols[static_cast<size_t>(a)] < symbols[static_cast<size_t>(b)];
  });
  for (size_t i = 1; i < order.size(); ++i)
    if (symbols[static_cast<size_t>(order[i - 1])] == symbols[static_cast<size_t>(order[i])])
      throw std::invalid_argument("CParam: duplicate transcendental symbol");
  // sorted, zero rows dropped so that c = 0 has a unique representation
  for (Index idx : order) {
    bool zero = true;
    for (Index j = 0; j < rank; ++j)
      if (components(idx, j) != 0) zero = false;
    if (zero) continue;
    symbols_.push_back(symbols[static_cast<size_t>(idx)]);
  }
  components_ = MatQ(static_cast<Index>(symbols_.size()), rank);
  Index r = 0;
  for (Index idx : order) {
    bool zero = true;
    for (Index j = 0; j < rank; ++j)
      if (components(idx, j) != 0) zero = false;
    if (zero) continue;
    components_.row(r++) = components.row(idx);
  }
}

VecQ CParam::component_for(const std::string& symbol) const {
  for (size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == symbol) return components_.row(static_cast<Index>(i)).transpose();
  return VecQ::Zero(rank_);
}

bool CParam::operator==(const CParam& o) const {
  if (rank_ != o.rank_ || symbols_ != o.symbols_) return false;
  for (Index i = 0; i < components_.rows(); ++i)
    for (Index j = 0; j < rank_; ++j)
      if (components_(i, j) != o.components_(i, j)) return false;
  return true;
}

VecQ pair(const Eigen::Ref<const VecZ>& m, const CParam& c) {
  if (m.size() != c.rank()) throw std::invalid_argument("pair: rank mismatch");
  VecQ out(c.terms());
  for (Index t = 0; t < c.terms(); ++t) {
    Rat acc = 0;
    for (Index j = 0; j < c.rank(); ++j) acc += c.components()(t, j) * Rat(m(j));
    out(t) = acc;
  }
  return out;
}

bool pairs_to_zero(const Eigen::Ref<const VecZ>& m, const CParam& c) {
  VecQ p = pair(m, c);
  for (Index t = 0; t < p.size(); ++t)
    if (p(t) != 0) return false;
  return true;
}

CParam apply_map(const MatZ& phi, const CParam& c) {
  if (phi.cols() != c.rank()) throw std::invalid_argument("apply_map: rank mismatch");
  MatQ comps(c.terms(), phi.rows());
  MatQ phiq = to_rational(phi);
  for (Index t = 0; t < c.terms(); ++t)
    comps.row(t) = (phiq * c.components().row(t).transpose()).transpose();
  return CParam(phi.rows(), c.symbols(), std::move(comps));
}

CParam restrict_to_sublattice(const MatZ& basis_rows, const CParam& c) {
  if (basis_rows.cols() != c.rank())
    throw std::invalid_argument("restrict_to_sublattice: rank mismatch");
  const Index d = basis_rows.rows();
  MatQ bt = to_rational(basis_rows.transpose());
  MatQ comps(c.terms(), d);
  for (Index t = 0; t < c.terms(); ++t) {
    auto x = solve_rational(bt, c.components().row(t).transpose());
    if (!x) throw std::invalid_argument("restrict_to_sublattice: component outside span");
    comps.row(t) = x->transpose();
  }
  return CParam(d, c.symbols(), std::move(comps));
}

CParam scale(const Rat& s, const CParam& c) {
  MatQ comps = c.components();
  for (Index i = 0; i < comps.rows(); ++i) comps.row(i) *= s;
  return CParam(c.rank(), c.symbols(), std::move(comps));
}

}  // namespace superfan
