#include "superfan/semigroup.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "superfan/errors.hpp"

namespace superfan {

namespace {

// Lattice points of the half-open parallelepiped spanned by the rows of
// `gens` (linearly independent) inside Z^q, via coset representatives of the
// sublattice they span inside its saturation.
std::vector<VecZ> parallelepiped_points(const MatZ& gens) {
  const Index d = gens.rows();
  std::vector<VecZ> out;
  MatZ B = saturate(gens);  // basis of span_Q(gens) cap Z^q, d rows
  MatQ bt = to_rational(B.transpose());
  MatZ G(d, d);
  for (Index i = 0; i < d; ++i) {
    auto x = solve_rational(bt, gens.row(i).transpose().cast<Rat>());
    if (!x) throw std::logic_error("parallelepiped_points: generator outside saturation");
    for (Index j = 0; j < d; ++j) {
      if ((*x)(j).get_den() != 1)
        throw std::logic_error("parallelepiped_points: non-integer coordinate");
      G(i, j) = (*x)(j).get_num();
    }
  }
  // cosets of Gt Z^d in Z^d, where the columns of Gt are the generators in
  // B-coordinates
  MatZ Gt = G.transpose();
  SmithForm sf = smith_normal_form(Gt);
  if (sf.rank != d) throw std::logic_error("parallelepiped_points: dependent generators");
  MatZ uinv = inverse_unimodular(sf.U);
  MatQ gq = to_rational(Gt);
  VecZ y = VecZ::Zero(d);
  for (;;) {
    VecZ z = uinv * y;
    // shift the representative into the parallelepiped: z -> Gt * frac(lambda)
    auto lam = solve_rational(gq, z.cast<Rat>());
    if (!lam) throw std::logic_error("parallelepiped_points: solve failed");
    VecZ fl(d);
    for (Index i = 0; i < d; ++i) fl(i) = rat_floor((*lam)(i));
    VecZ zp = z - Gt * fl;
    VecZ point = B.transpose() * zp;
    bool zero = true;
    for (Index i = 0; i < point.size(); ++i)
      if (point(i) != 0) zero = false;
    if (!zero) out.push_back(point);
    Index i = 0;
    while (i < d) {
      y(i) += 1;
      if (y(i) < sf.D(i, i)) break;
      y(i) = 0;
      ++i;
    }
    if (i == d) break;
  }
  return out;
}

// Pulling triangulation of a pointed cone into simplicial ray subsets.
void triangulate(const Cone& c, std::vector<MatZ>& out) {
  const Index d = c.dim();
  const MatZ& rays = c.rays();
  if (rays.rows() == d) {
    if (d > 0) out.push_back(rays);
    return;
  }
  VecZ r0 = rays.row(0).transpose();
  for (const FaceDescriptor& fd : c.faces()) {
    if (fd.face->dim() != d - 1) continue;
    if (fd.face->contains(r0)) continue;
    std::vector<MatZ> sub;
    triangulate(*fd.face, sub);
    for (const MatZ& simplex : sub) {
      MatZ ext(simplex.rows() + 1, simplex.cols());
      ext.topRows(simplex.rows()) = simplex;
      ext.row(simplex.rows()) = r0.transpose();
      out.push_back(ext);
    }
  }
}

// Hilbert basis of a pointed cone's lattice points: triangulate, collect
// parallelepiped points and extreme rays, drop reducible candidates.
std::vector<VecZ> pointed_hilbert_basis(const Cone& c) {
  std::set<VecZ, LexLess> cands;
  for (Index i = 0; i < c.rays().rows(); ++i) cands.insert(c.rays().row(i).transpose());
  std::vector<MatZ> simplices;
  triangulate(c, simplices);
  for (const MatZ& s : simplices)
    for (const VecZ& p : parallelepiped_points(s)) cands.insert(p);
  std::vector<VecZ> out;
  for (const VecZ& h : cands) {
    bool reducible = false;
    for (const VecZ& g : cands) {
      if (exact_eq(g, h)) continue;
      VecZ r = h - g;
      bool zero = true;
      for (Index i = 0; i < r.size(); ++i)
        if (r(i) != 0) zero = false;
      if (!zero && c.contains(r)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(h);
  }
  return out;
}

}  // namespace

AffineSemigroup::AffineSemigroup(Cone sigma)
    : sigma_(std::move(sigma)), cache_(std::make_shared<Cache>()) {
  units_ = kernel_saturated(sigma_.rays());
}

bool AffineSemigroup::contains(const Eigen::Ref<const VecZ>& m) const {
  if (m.size() != rank()) throw std::invalid_argument("AffineSemigroup: rank mismatch");
  VecZ p = sigma_.rays() * m;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) < 0) return false;
  return true;
}

bool AffineSemigroup::is_unit(const Eigen::Ref<const VecZ>& m) const {
  VecZ p = sigma_.rays() * m;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) != 0) return false;
  return true;
}

VecZ AffineSemigroup::canonical_rep(VecZ m) const {
  for (Index i = 0; i < units_.rows(); ++i) {
    Index p = 0;
    while (p < units_.cols() && units_(i, p) == 0) ++p;
    if (p == units_.cols()) continue;
    Int q = floor_div(m(p), units_(i, p));
    if (q != 0) m -= q * units_.row(i).transpose();
  }
  return m;
}

bool AffineSemigroup::divides(const Eigen::Ref<const VecZ>& a,
                              const Eigen::Ref<const VecZ>& b) const {
  if (!contains(a) || !contains(b))
    throw std::invalid_argument("divides: operand outside the semigroup");
  return contains(VecZ(b - a));
}

const MatZ& AffineSemigroup::hilbert_basis() const {
  std::call_once(cache_->once, [&] {
    const Index n = rank();
    std::vector<VecZ> gens;
    const Index u = units_.rows();
    if (u < n) {
      // pointed part: image of the dual cone modulo the unit lattice
      QuotientLattice ql = quotient_lattice(n, units_);
      const MatZ& dual_gens = sigma_.facets();
      MatZ img(dual_gens.rows(), ql.rank);
      for (Index i = 0; i < dual_gens.rows(); ++i)
        img.row(i) = (ql.projection * dual_gens.row(i).transpose()).transpose();
      Cone cbar = Cone::from_rays(ql.rank, img);
      for (const VecZ& h : pointed_hilbert_basis(cbar)) {
        auto lift = solve_integer(ql.projection, h);
        if (!lift) throw std::logic_error("hilbert_basis: no integer lift");
        gens.push_back(canonical_rep(*lift));
      }
    }
    for (Index i = 0; i < u; ++i) {
      gens.push_back(units_.row(i).transpose());
      gens.push_back(VecZ(-units_.row(i).transpose()));
    }
    std::sort(gens.begin(), gens.end(), LexLess{});
    gens.erase(std::unique(gens.begin(), gens.end(),
                           [](const VecZ& a, const VecZ& b) { return exact_eq(a, b); }),
               gens.end());
    cache_->hilbert = from_rows(gens, n);
  });
  return cache_->hilbert;
}

MatZ hilbert_basis(const AffineSemigroup& s) { return s.hilbert_basis(); }

bool SIdeal::contains(const Eigen::Ref<const VecZ>& m) const {
  if (!semigroup.contains(m)) return false;
  for (Index i = 0; i < gens.rows(); ++i)
    if (semigroup.contains(VecZ(m - gens.row(i).transpose()))) return true;
  return false;
}

SIdeal minimalize(const Eigen::Ref<const MatZ>& gens, const AffineSemigroup& s) {
  std::vector<VecZ> reps;
  for (Index i = 0; i < gens.rows(); ++i) {
    VecZ g = gens.row(i).transpose();
    if (!s.contains(g)) throw std::invalid_argument("minimalize: generator outside the semigroup");
    reps.push_back(s.canonical_rep(std::move(g)));
  }
  std::sort(reps.begin(), reps.end(), LexLess{});
  reps.erase(std::unique(reps.begin(), reps.end(),
                         [](const VecZ& a, const VecZ& b) { return exact_eq(a, b); }),
             reps.end());
  std::vector<VecZ> kept;
  for (size_t i = 0; i < reps.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < reps.size() && !dominated; ++j)
      if (i != j && s.divides(reps[j], reps[i])) dominated = true;
    if (!dominated) kept.push_back(reps[i]);
  }
  return SIdeal{s, from_rows(kept, s.rank())};
}

SIdeal jc_generators(const AffineSemigroup& s, const CParam& c) {
  const MatZ& hb = s.hilbert_basis();
  std::vector<VecZ> gens;
  for (Index i = 0; i < hb.rows(); ++i) {
    VecZ h = hb.row(i).transpose();
    if (!pairs_to_zero(h, c)) gens.push_back(h);
  }
  if (gens.empty()) return SIdeal{s, MatZ(0, s.rank())};
  return minimalize(from_rows(gens, s.rank()), s);
}

bool is_admissible(const Eigen::Ref<const MatZ>& B, const AffineSemigroup& s, const CParam& c,
                   bool* minimal) {
  if (B.rows() == 0) throw std::invalid_argument("is_admissible: empty decoration");
  for (Index i = 0; i < B.rows(); ++i)
    if (!s.contains(VecZ(B.row(i).transpose())))
      throw std::invalid_argument("is_admissible: element outside the semigroup");
  if (minimal) {
    *minimal = true;
    for (Index i = 0; i < B.rows() && *minimal; ++i)
      for (Index j = 0; j < B.rows(); ++j) {
        if (i == j) continue;
        if (exact_eq(B.row(i), B.row(j))) continue;
        if (s.divides(VecZ(B.row(i).transpose()), VecZ(B.row(j).transpose()))) {
          *minimal = false;
          break;
        }
      }
  }
  SIdeal jc = jc_generators(s, c);
  for (Index g = 0; g < jc.gens.rows(); ++g) {
    bool divisible = false;
    for (Index i = 0; i < B.rows() && !divisible; ++i)
      if (s.divides(VecZ(B.row(i).transpose()), VecZ(jc.gens.row(g).transpose())))
        divisible = true;
    if (!divisible) return false;
  }
  return true;
}

namespace {

// h has some multiple in J iff some generator's tight-ray set contains h's.
bool ray_test(const SIdeal& j, const VecZ& h) {
  const MatZ& rays = j.semigroup.sigma().rays();
  VecZ hp = rays * h;
  for (Index g = 0; g < j.gens.rows(); ++g) {
    VecZ gp = rays * j.gens.row(g).transpose();
    bool ok = true;
    for (Index r = 0; r < rays.rows(); ++r)
      if (hp(r) == 0 && gp(r) != 0) ok = false;
    if (ok) return true;
  }
  return false;
}

int witness_for(const SIdeal& j, const VecZ& h, int k_max) {
  VecZ acc = VecZ::Zero(h.size());
  for (int k = 1; k <= k_max; ++k) {
    acc += h;
    if (j.contains(acc)) return k;
  }
  throw InconclusiveError("complement_is_finite: inconclusive at k_max");
}

}  // namespace

std::vector<int> finiteness_witnesses(const SIdeal& j, int k_max) {
  if (j.is_zero()) throw std::invalid_argument("finiteness: zero ideal");
  const MatZ& hb = j.semigroup.hilbert_basis();
  std::vector<int> ks;
  for (Index i = 0; i < hb.rows(); ++i) {
    VecZ h = hb.row(i).transpose();
    if (!ray_test(j, h)) return {};
    ks.push_back(witness_for(j, h, k_max));
  }
  return ks;
}

bool complement_is_finite(const SIdeal& j, int k_max) {
  if (j.is_zero()) throw std::invalid_argument("complement_is_finite: zero ideal");
  const MatZ& hb = j.semigroup.hilbert_basis();
  for (Index i = 0; i < hb.rows(); ++i) {
    VecZ h = hb.row(i).transpose();
    if (!ray_test(j, h)) return false;
    witness_for(j, h, k_max);
  }
  return true;
}

std::vector<VecZ> enumerate_complement(const SIdeal& j, int bound) {
  if (j.is_zero()) throw std::invalid_argument("enumerate_complement: zero ideal");
  const MatZ& hb = j.semigroup.hilbert_basis();
  std::set<VecZ, LexLess> out;
  std::function<void(VecZ, Index, int)> go = [&](VecZ cur, Index idx, int budget) {
    if (idx == hb.rows()) {
      if (!j.contains(cur)) out.insert(cur);
      return;
    }
    VecZ step = cur;
    for (int t = 0; t <= budget; ++t) {
      go(step, idx + 1, budget - t);
      if (t < budget) step += hb.row(idx).transpose();
    }
  };
  go(VecZ::Zero(j.semigroup.rank()), 0, bound);
  return std::vector<VecZ>(out.begin(), out.end());
}

std::vector<SIdeal> enumerate_intermediate_ideals(const AffineSemigroup& s, const CParam& c,
                                                  int k_max) {
  SIdeal jc = jc_generators(s, c);
  if (jc.is_zero())
    throw InfiniteComplementError("enumerate_intermediate_ideals: J_c is the zero ideal");
  std::vector<int> ks = finiteness_witnesses(jc, k_max);
  if (ks.empty())
    throw InfiniteComplementError("enumerate_intermediate_ideals: complement of J_c is infinite");
  int bound = 0;
  for (int k : ks) bound += k - 1;
  std::vector<VecZ> comp = enumerate_complement(jc, bound);
  if (comp.size() > 24)
    throw std::runtime_error("enumerate_intermediate_ideals: complement too large");
  const Index n = static_cast<Index>(comp.size());
  auto strictly_below = [&](Index a, Index b) {
    return s.divides(comp[static_cast<size_t>(a)], comp[static_cast<size_t>(b)]) &&
           !s.divides(comp[static_cast<size_t>(b)], comp[static_cast<size_t>(a)]);
  };
  // topological order: smaller elements first
  std::vector<Index> order;
  std::vector<bool> placed(static_cast<size_t>(n), false);
  for (Index round = 0; round < n; ++round) {
    for (Index i = 0; i < n; ++i) {
      if (placed[static_cast<size_t>(i)]) continue;
      bool ready = true;
      for (Index k = 0; k < n; ++k)
        if (k != i && !placed[static_cast<size_t>(k)] && strictly_below(k, i)) ready = false;
      if (ready) {
        order.push_back(i);
        placed[static_cast<size_t>(i)] = true;
        break;
      }
    }
  }
  std::vector<SIdeal> out;
  std::vector<bool> in_d(static_cast<size_t>(n), false);
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == order.size()) {
      std::vector<VecZ> gens = to_rows(jc.gens);
      for (Index i = 0; i < n; ++i)
        if (!in_d[static_cast<size_t>(i)]) gens.push_back(comp[static_cast<size_t>(i)]);
      out.push_back(minimalize(from_rows(gens, s.rank()), s));
      return;
    }
    Index i = order[pos];
    rec(pos + 1);
    bool can_include = true;
    for (Index k = 0; k < n; ++k)
      if (k != i && strictly_below(k, i) && !in_d[static_cast<size_t>(k)]) can_include = false;
    if (can_include) {
      in_d[static_cast<size_t>(i)] = true;
      rec(pos + 1);
      in_d[static_cast<size_t>(i)] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const SIdeal& a, const SIdeal& b) {
    if (a.gens.rows() != b.gens.rows()) return a.gens.rows() < b.gens.rows();
    for (Index i = 0; i < a.gens.rows(); ++i) {
      int c2 = lex_cmp(a.gens.row(i), b.gens.row(i));
      if (c2 != 0) return c2 < 0;
    }
    return false;
  });
  return out;
}

}  // namespace superfan
