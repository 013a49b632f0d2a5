#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <string>
#include <vector>

namespace superfan {

using Int = mpz_class;
using Rat = mpq_class;

}  // namespace superfan

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Literal = mpz_class;
  using Nested = mpz_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50,
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Literal = mpq_class;
  using Nested = mpq_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 60,
    MulCost = 100,
  };
};

}  // namespace Eigen

namespace superfan {

using MatZ = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using VecZ = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RowZ = Eigen::Matrix<Int, 1, Eigen::Dynamic>;
using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rat& r) {
  return floor_div(r.get_num(), r.get_den());
}

// g = s*a + t*b, g >= 0
inline void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

template <typename Derived>
Int content(const Eigen::MatrixBase<Derived>& v) {
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

// v / gcd(v); the zero vector is returned unchanged.
template <typename Derived>
VecZ primitive(const Eigen::MatrixBase<Derived>& v) {
  VecZ out = v;
  Int g = content(out);
  if (g > 1)
    for (Index i = 0; i < out.size(); ++i) out(i) /= g;
  return out;
}

// <row, col>-style pairing without Eigen's 1x1-product wrapper in the way.
template <typename A, typename B>
Int dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  Int acc = 0;
  for (Index i = 0; i < a.size(); ++i) acc += a(i) * b(i);
  return acc;
}

template <typename A, typename B>
bool exact_eq(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename A, typename B>
int lex_cmp(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (Index i = 0; i < a.size(); ++i) {
    int c = cmp(a(i), b(i));
    if (c != 0) return c;
  }
  return 0;
}

struct LexLess {
  bool operator()(const VecZ& a, const VecZ& b) const { return lex_cmp(a, b) < 0; }
};

inline std::vector<VecZ> to_rows(const MatZ& m) {
  std::vector<VecZ> out;
  out.reserve(static_cast<size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
  return out;
}

inline MatZ from_rows(const std::vector<VecZ>& rows, Index cols) {
  MatZ m(static_cast<Index>(rows.size()), cols);
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = rows[static_cast<size_t>(i)].transpose();
  return m;
}

MatZ sorted_unique_rows(const MatZ& m);

std::string to_string(const VecZ& v);
std::string to_string(const MatZ& m);
std::string to_string(const Rat& r);

inline MatQ to_rational(const MatZ& m) {
  return m.cast<Rat>();
}

// Scales each row by the lcm of denominators and divides by the content.
MatZ scale_rows_to_integer(const MatQ& m);
VecZ scale_to_integer(const VecQ& v);

}  // namespace superfan
