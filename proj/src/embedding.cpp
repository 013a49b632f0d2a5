#include "superfan/embedding.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "superfan/errors.hpp"

namespace superfan {

std::pair<std::vector<Index>, std::vector<Index>> split_by_c(const MatZ& A, const CParam& c) {
  std::vector<Index> prime, second;
  for (Index i = 0; i < A.rows(); ++i) {
    if (pairs_to_zero(VecZ(A.row(i).transpose()), c))
      second.push_back(i);
    else
      prime.push_back(i);
  }
  return {prime, second};
}

namespace {

// N-combination of the selected rows summing to target, coefficient sum
// capped.
std::optional<VecZ> witness_search(const MatZ& A, const std::vector<Index>& allowed,
                                   const VecZ& target, int cap) {
  std::optional<VecZ> found;
  VecZ coeff = VecZ::Zero(A.rows());
  std::set<std::pair<size_t, std::string>> failed;
  std::function<bool(VecZ, size_t, int)> go = [&](VecZ rest, size_t idx, int budget) -> bool {
    bool zero = true;
    for (Index i = 0; i < rest.size(); ++i)
      if (rest(i) != 0) zero = false;
    if (zero) {
      found = coeff;
      return true;
    }
    if (idx == allowed.size()) return false;
    auto key = std::make_pair(idx, to_string(rest));
    if (failed.count(key)) return false;
    Index row = allowed[idx];
    VecZ step = rest;
    for (int t = 0; t <= budget; ++t) {
      coeff(row) = t;
      if (go(step, idx + 1, budget - t)) return true;
      step -= A.row(row).transpose();
    }
    coeff(row) = 0;
    failed.insert(std::move(key));
    return false;
  };
  go(target, 0, cap);
  return found;
}

}  // namespace

MonomialData make_monomial_data(Index mrank, const CParam& c, const MatZ& A, const MatZ& b_second,
                                int witness_cap) {
  MonomialData d;
  d.mrank = mrank;
  d.c = c;
  d.A = A;
  auto [prime, second] = split_by_c(A, c);
  d.a_prime = prime;
  d.a_second = second;
  const Index s = static_cast<Index>(prime.size()) + b_second.rows();
  if (s == 0) throw std::invalid_argument("make_monomial_data: B must be nonempty");
  d.B = MatZ(s, mrank);
  d.witnesses = MatZ::Zero(s, A.rows());
  Index row = 0;
  for (Index i : prime) {
    d.B.row(row) = A.row(i);
    d.witnesses(row, i) = 1;
    ++row;
  }
  for (Index j = 0; j < b_second.rows(); ++j) {
    VecZ target = b_second.row(j).transpose();
    if (!pairs_to_zero(target, c))
      throw std::invalid_argument("make_monomial_data: extra element pairs nonzero against c");
    auto w = witness_search(A, second, target, witness_cap);
    if (!w)
      throw WitnessError("make_monomial_data: no decomposition of " + to_string(target) +
                         " over A'' within the cap");
    d.B.row(row) = b_second.row(j);
    d.witnesses.row(row) = w->transpose();
    ++row;
  }
  return d;
}

MonomialData make_monomial_data_same(Index mrank, const CParam& c, const MatZ& A) {
  auto [prime, second] = split_by_c(A, c);
  MatZ extra(static_cast<Index>(second.size()), mrank);
  for (size_t k = 0; k < second.size(); ++k) extra.row(static_cast<Index>(k)) = A.row(second[k]);
  return make_monomial_data(mrank, c, A, extra);
}

MatZ phi_lattice_map(const MonomialData& data) {
  const Index r = data.r(), s = data.s();
  MatZ phi = MatZ::Zero(data.mrank + 1, r + s);
  for (Index i = 0; i < r; ++i) phi.block(0, i, data.mrank, 1) = data.A.row(i).transpose();
  for (Index j = 0; j < s; ++j) {
    phi.block(0, r + j, data.mrank, 1) = data.B.row(j).transpose();
    phi(data.mrank, r + j) = 1;
  }
  return phi;
}

MatZ kernel_L(const MonomialData& data) {
  return kernel_saturated(phi_lattice_map(data));
}

std::string SuperBinomial::str() const {
  if (kind == Kind::odd_pair) {
    std::ostringstream os;
    os << "xi" << (odd_i + 1) << " xi" << (odd_j + 1);
    return os.str();
  }
  auto side = [&](const VecZ& even, const std::optional<Index>& odd) {
    std::ostringstream os;
    bool first = true;
    for (Index i = 0; i < even.size(); ++i) {
      if (even(i) == 0) continue;
      if (!first) os << " ";
      os << "x" << (i + 1);
      if (even(i) > 1) os << "^" << even(i);
      first = false;
    }
    if (odd) {
      if (!first) os << " ";
      os << "xi" << (*odd + 1);
      first = false;
    }
    if (first) os << "1";
    return os.str();
  };
  return side(plus_even, plus_odd) + " - " + side(minus_even, minus_odd);
}

BinomialSample binomials_in_box(const MonomialData& data, int box) {
  if (box < 1) throw std::invalid_argument("binomials_in_box: box bound must be >= 1");
  const Index r = data.r(), s = data.s();
  MatZ L = kernel_L(data);
  BinomialSample out;
  if (L.rows() == 0) return out;
  // coefficient bounds covering every kernel vector in the sup-norm box:
  // x = (B B^T)^{-1} B v for v = B^T x, so |x_i| <= box * ||row_i||_1
  MatQ bq = to_rational(L);
  MatQ gram = bq * bq.transpose();
  MatQ ginv(L.rows(), L.rows());
  {
    MatQ id = MatQ::Zero(L.rows(), L.rows());
    for (Index i = 0; i < L.rows(); ++i) id(i, i) = 1;
    for (Index i = 0; i < L.rows(); ++i) {
      auto col = solve_rational(gram, id.col(i));
      if (!col) throw std::logic_error("binomials_in_box: singular Gram matrix");
      ginv.col(i) = *col;
    }
  }
  MatQ coeff_map = ginv * bq;  // rows x (r+s)
  std::vector<long> bounds;
  for (Index i = 0; i < coeff_map.rows(); ++i) {
    Rat norm1 = 0;
    for (Index j = 0; j < coeff_map.cols(); ++j) norm1 += abs(coeff_map(i, j));
    Rat b = norm1 * box;
    bounds.push_back(static_cast<long>(rat_floor(b).get_si()));
  }
  std::set<VecZ, LexLess> seen;
  VecZ x(L.rows());
  for (Index i = 0; i < L.rows(); ++i) x(i) = -bounds[static_cast<size_t>(i)];
  for (;;) {
    VecZ v = L.transpose() * x;
    bool in_box = true, zero = true;
    for (Index i = 0; i < v.size(); ++i) {
      if (abs(v(i)) > box) in_box = false;
      if (v(i) != 0) zero = false;
    }
    if (in_box && !zero) {
      // canonical sign: first nonzero entry positive
      VecZ cv = v;
      for (Index i = 0; i < cv.size(); ++i) {
        if (cv(i) == 0) continue;
        if (cv(i) < 0) cv = -cv;
        break;
      }
      if (!seen.count(cv)) {
        seen.insert(cv);
        // odd support: at most one positive and one negative index
        std::vector<Index> op, on;
        bool odd_ok = true;
        for (Index j = 0; j < s; ++j) {
          const Int& e = cv(r + j);
          if (e == 1) op.push_back(j);
          else if (e == -1) on.push_back(j);
          else if (e != 0) odd_ok = false;
        }
        if (odd_ok && op.size() <= 1 && on.size() <= 1) {
          SuperBinomial b;
          b.plus_even = VecZ::Zero(r);
          b.minus_even = VecZ::Zero(r);
          for (Index i = 0; i < r; ++i) {
            if (cv(i) > 0) b.plus_even(i) = cv(i);
            if (cv(i) < 0) b.minus_even(i) = -cv(i);
          }
          if (!op.empty()) b.plus_odd = op[0];
          if (!on.empty()) b.minus_odd = on[0];
          out.binomials.push_back(std::move(b));
        }
      }
    }
    Index i = 0;
    while (i < L.rows()) {
      x(i) += 1;
      if (x(i) <= bounds[static_cast<size_t>(i)]) break;
      x(i) = -bounds[static_cast<size_t>(i)];
      ++i;
    }
    if (i == L.rows()) break;
  }
  std::sort(out.binomials.begin(), out.binomials.end(),
            [](const SuperBinomial& a, const SuperBinomial& b) { return a.str() < b.str(); });
  return out;
}

bool verify_vanishing(const MonomialData& data, const SuperBinomial& b) {
  if (b.kind == SuperBinomial::Kind::odd_pair) return true;  // xi^2 = 0
  if (b.plus_odd.has_value() != b.minus_odd.has_value()) return false;
  VecZ plus = VecZ::Zero(data.mrank);
  VecZ minus = VecZ::Zero(data.mrank);
  for (Index i = 0; i < data.r(); ++i) {
    plus += b.plus_even(i) * data.A.row(i).transpose();
    minus += b.minus_even(i) * data.A.row(i).transpose();
  }
  if (b.plus_odd) plus += data.B.row(*b.plus_odd).transpose();
  if (b.minus_odd) minus += data.B.row(*b.minus_odd).transpose();
  return exact_eq(plus, minus);
}

MonomialData presentation_from_semigroup(const AffineSemigroup& s, const MatZ& b_sigma,
                                         const CParam& c, int witness_cap) {
  bool minimal = false;
  if (!is_admissible(b_sigma, s, c, &minimal))
    throw std::invalid_argument("presentation_from_semigroup: decoration is not c-admissible");
  const MatZ& hb = s.hilbert_basis();
  std::vector<VecZ> extra;
  for (Index i = 0; i < b_sigma.rows(); ++i) {
    VecZ b = b_sigma.row(i).transpose();
    if (pairs_to_zero(b, c)) extra.push_back(b);
  }
  return make_monomial_data(s.rank(), c, hb, from_rows(extra, s.rank()), witness_cap);
}

}  // namespace superfan
