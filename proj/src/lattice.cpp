#include "superfan/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace superfan {

MatZ sorted_unique_rows(const MatZ& m) {
  std::vector<VecZ> rows = to_rows(m);
  std::sort(rows.begin(), rows.end(), LexLess{});
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const VecZ& a, const VecZ& b) { return exact_eq(a, b); }),
             rows.end());
  return from_rows(rows, m.cols());
}

std::string to_string(const VecZ& v) {
  std::ostringstream os;
  os << "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v(i);
  }
  os << "]";
  return os.str();
}

std::string to_string(const MatZ& m) {
  std::ostringstream os;
  os << "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) os << ",";
    os << to_string(VecZ(m.row(i).transpose()));
  }
  os << "]";
  return os.str();
}

std::string to_string(const Rat& r) {
  std::ostringstream os;
  os << r.get_num() << "/" << r.get_den();
  return os.str();
}

MatZ scale_rows_to_integer(const MatQ& m) {
  MatZ out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (Index j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
    VecZ row(m.cols());
    for (Index j = 0; j < m.cols(); ++j) {
      Rat s = m(i, j) * Rat(l);
      row(j) = s.get_num();
    }
    out.row(i) = primitive(row).transpose();
  }
  return out;
}

VecZ scale_to_integer(const VecQ& v) {
  MatQ m(1, v.size());
  m.row(0) = v.transpose();
  return scale_rows_to_integer(m).row(0).transpose();
}

namespace {

// Unimodular row operation turning (A(r,c), A(i,c)) into (g, 0).
void eliminate_rows(MatZ& A, MatZ& U, Index r, Index i, Index c) {
  const Int a = A(r, c), b = A(i, c);
  if (b == 0) return;
  if (a != 0 && b % a == 0) {
    // plain elimination keeps the pivot row fixed; the general Bezout pair
    // may rotate the rows and cycle when a | b
    const Int q = b / a;
    A.row(i) -= q * A.row(r);
    U.row(i) -= q * U.row(r);
    return;
  }
  Int g, s, t;
  xgcd(a, b, g, s, t);
  const Int ag = a / g;
  const Int nbg = Int(-(b / g));
  RowZ ar = s * A.row(r) + t * A.row(i);
  RowZ ai = nbg * A.row(r) + ag * A.row(i);
  A.row(r) = ar;
  A.row(i) = ai;
  RowZ ur = s * U.row(r) + t * U.row(i);
  RowZ ui = nbg * U.row(r) + ag * U.row(i);
  U.row(r) = ur;
  U.row(i) = ui;
}

void eliminate_cols(MatZ& A, MatZ& V, Index r, Index j, Index c) {
  const Int a = A(c, r), b = A(c, j);
  if (b == 0) return;
  if (a != 0 && b % a == 0) {
    const Int q = b / a;
    A.col(j) -= q * A.col(r);
    V.col(j) -= q * V.col(r);
    return;
  }
  Int g, s, t;
  xgcd(a, b, g, s, t);
  const Int ag = a / g;
  const Int nbg = Int(-(b / g));
  VecZ ar = s * A.col(r) + t * A.col(j);
  VecZ aj = nbg * A.col(r) + ag * A.col(j);
  A.col(r) = ar;
  A.col(j) = aj;
  VecZ vr = s * V.col(r) + t * V.col(j);
  VecZ vj = nbg * V.col(r) + ag * V.col(j);
  V.col(r) = vr;
  V.col(j) = vj;
}

}  // namespace

HermiteForm hermite_normal_form(const Eigen::Ref<const MatZ>& A) {
  const Index m = A.rows(), n = A.cols();
  HermiteForm out;
  MatZ H = A;
  MatZ U = MatZ::Identity(m, m);
  Index row = 0;
  for (Index col = 0; col < n && row < m; ++col) {
    Index p = row;
    while (p < m && H(p, col) == 0) ++p;
    if (p == m) continue;
    if (p != row) {
      H.row(p).swap(H.row(row));
      U.row(p).swap(U.row(row));
    }
    for (Index i = row + 1; i < m; ++i) eliminate_rows(H, U, row, i, col);
    if (H(row, col) < 0) {
      H.row(row) = -H.row(row);
      U.row(row) = -U.row(row);
    }
    for (Index i = 0; i < row; ++i) {
      Int q = floor_div(H(i, col), H(row, col));
      if (q != 0) {
        H.row(i) -= q * H.row(row);
        U.row(i) -= q * U.row(row);
      }
    }
    ++row;
  }
  out.rank = row;
  out.H = H.topRows(row);
  out.U = std::move(U);
  return out;
}

MatZ hnf_basis(const Eigen::Ref<const MatZ>& A) {
  return hermite_normal_form(A).H;
}

std::vector<Int> SmithForm::divisors() const {
  std::vector<Int> d;
  for (Index i = 0; i < rank; ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const Eigen::Ref<const MatZ>& A) {
  const Index m = A.rows(), n = A.cols();
  SmithForm out;
  MatZ D = A;
  MatZ U = MatZ::Identity(m, m);
  MatZ V = MatZ::Identity(n, n);
  Index t = 0;
  const Index lim = std::min(m, n);
  while (t < lim) {
    // pivot: smallest nonzero |entry| in the trailing block
    Index pi = -1, pj = -1;
    for (Index i = t; i < m; ++i)
      for (Index j = t; j < n; ++j)
        if (D(i, j) != 0 &&
            (pi < 0 || cmp(abs(D(i, j)), abs(D(pi, pj))) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) {
      D.row(pi).swap(D.row(t));
      U.row(pi).swap(U.row(t));
    }
    if (pj != t) {
      D.col(pj).swap(D.col(t));
      V.col(pj).swap(V.col(t));
    }
    for (;;) {
      for (Index i = t + 1; i < m; ++i) eliminate_rows(D, U, t, i, t);
      bool row_clean = true;
      for (Index j = t + 1; j < n; ++j)
        if (D(t, j) != 0) row_clean = false;
      if (!row_clean) {
        for (Index j = t + 1; j < n; ++j) eliminate_cols(D, V, t, j, t);
        continue;
      }
      bool col_clean = true;
      for (Index i = t + 1; i < m; ++i)
        if (D(i, t) != 0) col_clean = false;
      if (!col_clean) continue;
      // divisibility of the remaining block by the pivot
      Index bi = -1, bj = -1;
      for (Index i = t + 1; i < m && bi < 0; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;
      D.row(t) += D.row(bi);
      U.row(t) += U.row(bi);
    }
    if (D(t, t) < 0) {
      D.row(t) = -D.row(t);
      U.row(t) = -U.row(t);
    }
    ++t;
  }
  out.rank = t;
  out.U = std::move(U);
  out.D = std::move(D);
  out.V = std::move(V);
  return out;
}

Index rank_of(const Eigen::Ref<const MatZ>& A) {
  return hermite_normal_form(A).rank;
}

MatZ inverse_unimodular(const Eigen::Ref<const MatZ>& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("inverse_unimodular: not square");
  HermiteForm hf = hermite_normal_form(A);
  if (hf.rank != A.rows() || !exact_eq(hf.H, MatZ(MatZ::Identity(A.rows(), A.cols()))))
    throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
  return hf.U;
}

MatZ kernel_saturated(const Eigen::Ref<const MatZ>& A) {
  const Index n = A.cols();
  SmithForm sf = smith_normal_form(A);
  const Index k = n - sf.rank;
  MatZ basis(k, n);
  for (Index i = 0; i < k; ++i) basis.row(i) = sf.V.col(sf.rank + i).transpose();
  return hnf_basis(basis);
}

MatZ saturate(const Eigen::Ref<const MatZ>& V) {
  SmithForm sf = smith_normal_form(V);
  MatZ vinv = inverse_unimodular(sf.V);
  return hnf_basis(vinv.topRows(sf.rank));
}

QuotientLattice quotient_lattice(Index ambient, const Eigen::Ref<const MatZ>& basis_rows) {
  const Index k = basis_rows.rows();
  if (basis_rows.cols() != ambient)
    throw std::invalid_argument("quotient_lattice: ambient rank mismatch");
  QuotientLattice out;
  if (k == 0) {
    out.rank = ambient;
    out.projection = MatZ::Identity(ambient, ambient);
    return out;
  }
  MatZ At = basis_rows.transpose();  // ambient x k
  SmithForm sf = smith_normal_form(At);
  if (sf.rank != k)
    throw std::invalid_argument("quotient_lattice: rows are not a basis");
  for (Index i = 0; i < k; ++i)
    if (sf.D(i, i) != 1)
      throw std::invalid_argument("quotient_lattice: sublattice is not saturated (torsion)");
  out.rank = ambient - k;
  out.projection = sf.U.bottomRows(ambient - k);
  return out;
}

std::optional<VecZ> solve_integer(const Eigen::Ref<const MatZ>& A, const Eigen::Ref<const VecZ>& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("solve_integer: dimension mismatch");
  SmithForm sf = smith_normal_form(A);
  VecZ ub = sf.U * b;
  VecZ y = VecZ::Zero(A.cols());
  for (Index i = 0; i < sf.rank; ++i) {
    if (ub(i) % sf.D(i, i) != 0) return std::nullopt;
    y(i) = ub(i) / sf.D(i, i);
  }
  for (Index i = sf.rank; i < ub.size(); ++i)
    if (ub(i) != 0) return std::nullopt;
  return VecZ(sf.V * y);
}

MatQ rref(MatQ m, std::vector<Index>* pivots) {
  const Index rows = m.rows(), cols = m.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index p = row;
    while (p < rows && m(p, col) == 0) ++p;
    if (p == rows) continue;
    if (p != row) m.row(p).swap(m.row(row));
    Rat inv = 1 / m(row, col);
    m.row(row) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      m.row(i) -= m(i, col) * m.row(row);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return m.topRows(row);
}

std::optional<VecQ> solve_rational(const MatQ& A, const VecQ& b) {
  const Index m = A.rows(), n = A.cols();
  MatQ aug(m, n + 1);
  aug.leftCols(n) = A;
  aug.col(n) = b;
  std::vector<Index> pivots;
  MatQ r = rref(std::move(aug), &pivots);
  VecQ x = VecQ::Zero(n);
  for (Index i = 0; i < r.rows(); ++i) {
    if (pivots[static_cast<size_t>(i)] == n) return std::nullopt;  // inconsistent
    x(pivots[static_cast<size_t>(i)]) = r(i, n);
  }
  return x;
}

MatQ kernel_rational(const MatQ& A) {
  const Index n = A.cols();
  std::vector<Index> pivots;
  MatQ r = rref(A, &pivots);
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  MatQ basis(n - r.rows(), n);
  Index k = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    VecQ v = VecQ::Zero(n);
    v(f) = 1;
    for (Index i = 0; i < r.rows(); ++i) v(pivots[static_cast<size_t>(i)]) = -r(i, f);
    basis.row(k++) = v.transpose();
  }
  return basis;
}

Subspace::Subspace(Index ambient, MatQ spanning_rows) : ambient_(ambient) {
  if (spanning_rows.cols() != ambient && spanning_rows.rows() != 0)
    throw std::invalid_argument("Subspace: ambient mismatch");
  if (spanning_rows.rows() == 0)
    basis_ = MatQ(0, ambient);
  else
    basis_ = rref(std::move(spanning_rows));
}

Subspace Subspace::full(Index ambient) {
  MatQ id(ambient, ambient);
  id.setZero();
  for (Index i = 0; i < ambient; ++i) id(i, i) = 1;
  return Subspace(ambient, id);
}

MatZ Subspace::integer_basis() const {
  return scale_rows_to_integer(basis_);
}

bool Subspace::contains(const VecQ& v) const {
  VecQ r = v;
  for (Index i = 0; i < basis_.rows(); ++i) {
    // pivot column of row i is its first nonzero entry
    Index p = 0;
    while (p < ambient_ && basis_(i, p) == 0) ++p;
    if (p == ambient_) continue;
    if (r(p) != 0) r -= r(p) * basis_.row(i).transpose();
  }
  for (Index j = 0; j < ambient_; ++j)
    if (r(j) != 0) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  if (ambient_ != o.ambient_ || basis_.rows() != o.basis_.rows()) return false;
  for (Index i = 0; i < basis_.rows(); ++i)
    for (Index j = 0; j < ambient_; ++j)
      if (basis_(i, j) != o.basis_(i, j)) return false;
  return true;
}

}  // namespace superfan
