#include "superfan/cone.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace superfan {

namespace {

// Extreme rays of a pointed cone {y : A y >= 0} in Z^q. A ray is extreme iff
// the inequalities tight on it have rank q-1, so scanning kernel vectors of
// (q-1)-subsets finds them all.
std::vector<VecZ> extreme_rays_pointed(const MatZ& A, Index q) {
  std::vector<VecZ> out;
  if (q == 0) return out;
  const Index m = A.rows();
  std::set<VecZ, LexLess> seen;
  auto consider = [&](const MatZ& sub) {
    MatZ k = kernel_saturated(sub);
    if (k.rows() != 1) return;
    VecZ v = primitive(k.row(0).transpose());
    for (int sign = 0; sign < 2; ++sign) {
      VecZ cand = sign ? VecZ(-v) : v;
      bool inside = true;
      VecZ pr = A * cand;
      for (Index i = 0; i < m; ++i)
        if (pr(i) < 0) inside = false;
      if (inside) {
        if (!seen.count(cand)) {
          seen.insert(cand);
          out.push_back(cand);
        }
        break;
      }
    }
  };
  if (q == 1) {
    consider(MatZ(0, 1));
    return out;
  }
  if (m < q - 1) return out;
  std::vector<Index> comb(static_cast<size_t>(q - 1));
  for (Index i = 0; i < q - 1; ++i) comb[static_cast<size_t>(i)] = i;
  for (;;) {
    MatZ sub(q - 1, q);
    for (Index i = 0; i < q - 1; ++i) sub.row(i) = A.row(comb[static_cast<size_t>(i)]);
    if (rank_of(sub) == q - 1) consider(sub);
    Index i = q - 2;
    while (i >= 0 && comb[static_cast<size_t>(i)] == m - (q - 1) + i) --i;
    if (i < 0) break;
    ++comb[static_cast<size_t>(i)];
    for (Index j = i + 1; j < q - 1; ++j)
      comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

// Reduce v modulo the row lattice L (HNF rows): coordinates at pivot columns
// brought into [0, pivot).
VecZ reduce_mod_lattice(VecZ v, const MatZ& L) {
  for (Index i = 0; i < L.rows(); ++i) {
    Index p = 0;
    while (p < L.cols() && L(i, p) == 0) ++p;
    if (p == L.cols()) continue;
    Int q = floor_div(v(p), L(i, p));
    if (q != 0) v -= q * L.row(i).transpose();
  }
  return v;
}

}  // namespace

MatZ cone_generators(Index ambient, const Eigen::Ref<const MatZ>& ineq_rows) {
  const Index n = ambient;
  if (n == 0) return MatZ(0, 0);
  MatZ in(ineq_rows.rows(), n);
  for (Index i = 0; i < ineq_rows.rows(); ++i) in.row(i) = ineq_rows.row(i);
  MatZ L = kernel_saturated(in);  // lineality basis (HNF rows)
  const Index l = L.rows();
  std::vector<VecZ> gens;
  MatZ P;
  MatZ Abar;
  Index q = n;
  if (l > 0) {
    QuotientLattice ql = quotient_lattice(n, L);
    P = ql.projection;
    q = ql.rank;
    // descend the inequalities: each row a satisfies a = abar * P since a
    // vanishes on the lineality
    MatQ pt = to_rational(P.transpose());
    MatQ abar_q(in.rows(), q);
    for (Index i = 0; i < in.rows(); ++i) {
      auto x = solve_rational(pt, in.row(i).transpose().cast<Rat>());
      if (!x) throw std::logic_error("cone_generators: inequality outside quotient span");
      abar_q.row(i) = x->transpose();
    }
    Abar = scale_rows_to_integer(abar_q);
  } else {
    P = MatZ::Identity(n, n);
    Abar = in;
  }
  for (const VecZ& r : extreme_rays_pointed(Abar, q)) {
    VecZ lift;
    if (l > 0) {
      auto u = solve_integer(P, r);
      if (!u) throw std::logic_error("cone_generators: no integer lift");
      lift = reduce_mod_lattice(*u, L);
    } else {
      lift = r;
    }
    gens.push_back(lift);
  }
  for (Index i = 0; i < l; ++i) {
    gens.push_back(L.row(i).transpose());
    gens.push_back(VecZ(-L.row(i).transpose()));
  }
  std::sort(gens.begin(), gens.end(), LexLess{});
  gens.erase(std::unique(gens.begin(), gens.end(),
                         [](const VecZ& a, const VecZ& b) { return exact_eq(a, b); }),
             gens.end());
  return from_rows(gens, n);
}

Cone Cone::from_rays(Index ambient, const Eigen::Ref<const MatZ>& ray_rows) {
  if (ray_rows.cols() != ambient && ray_rows.rows() != 0)
    throw std::invalid_argument("Cone::from_rays: ambient mismatch");
  // two conversion passes canonicalize both descriptions
  MatZ in(ray_rows.rows(), ambient);
  for (Index i = 0; i < ray_rows.rows(); ++i) in.row(i) = ray_rows.row(i);
  MatZ facets = cone_generators(ambient, in);
  MatZ rays = cone_generators(ambient, facets);
  Cone c(ambient, std::move(rays));
  std::call_once(c.cache_->facets_once, [&] { c.cache_->facets = std::move(facets); });
  return c;
}

Cone Cone::from_inequalities(Index ambient, const Eigen::Ref<const MatZ>& ineq_rows) {
  MatZ rays = cone_generators(ambient, ineq_rows);
  return Cone(ambient, std::move(rays));
}

const MatZ& Cone::facets() const {
  std::call_once(cache_->facets_once,
                 [&] { cache_->facets = cone_generators(ambient_, rays_); });
  return cache_->facets;
}

Index Cone::dim() const { return rank_of(rays_); }

bool Cone::is_strongly_convex() const {
  // lineality = kernel of the facet system
  return kernel_saturated(facets()).rows() == 0;
}

bool Cone::is_smooth() const {
  if (!is_strongly_convex()) throw std::invalid_argument("is_smooth: cone is not strongly convex");
  const Index k = rays_.rows();
  if (k == 0) return true;
  if (rank_of(rays_) != k) return false;
  SmithForm sf = smith_normal_form(rays_);
  for (const Int& d : sf.divisors())
    if (d != 1) return false;
  return true;
}

bool Cone::contains(const Eigen::Ref<const VecQ>& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Cone::contains: rank mismatch");
  const MatZ& f = facets();
  for (Index i = 0; i < f.rows(); ++i) {
    Rat acc = 0;
    for (Index j = 0; j < ambient_; ++j) acc += Rat(f(i, j)) * v(j);
    if (acc < 0) return false;
  }
  return true;
}

bool Cone::contains(const Eigen::Ref<const VecZ>& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Cone::contains: rank mismatch");
  const MatZ& f = facets();
  VecZ p = f * v;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) < 0) return false;
  return true;
}

bool Cone::contains_in_relative_interior(const Eigen::Ref<const VecZ>& v) const {
  if (!contains(v)) return false;
  const MatZ& f = facets();
  for (Index i = 0; i < f.rows(); ++i) {
    VecZ p = rays_ * f.row(i).transpose();
    bool vanishes_on_cone = true;
    for (Index j = 0; j < p.size(); ++j)
      if (p(j) != 0) vanishes_on_cone = false;
    if (vanishes_on_cone) continue;
    Int pr = dot(f.row(i), v);
    if (pr == 0) return false;
  }
  return true;
}

Cone Cone::dual() const {
  Cone d(ambient_, facets());
  std::call_once(d.cache_->facets_once, [&] { d.cache_->facets = rays_; });
  return d;
}

const std::vector<FaceDescriptor>& Cone::faces() const {
  std::call_once(cache_->faces_once, [&] {
    if (!is_strongly_convex())
      throw std::invalid_argument("faces: cone is not strongly convex");
    const MatZ& f = facets();
    const Index nf = f.rows();
    if (nf > 20) throw std::runtime_error("faces: too many facets");
    std::vector<FaceDescriptor> out;
    std::vector<MatZ> seen_ray_sets;
    for (unsigned long mask = 0; mask < (1ul << nf); ++mask) {
      // rays annihilated by every selected facet
      std::vector<VecZ> sel;
      for (Index r = 0; r < rays_.rows(); ++r) {
        bool keep = true;
        for (Index i = 0; i < nf; ++i) {
          if (!(mask & (1ul << i))) continue;
          if (dot(f.row(i), rays_.row(r)) != 0) keep = false;
        }
        if (keep) sel.push_back(rays_.row(r).transpose());
      }
      MatZ rm = from_rows(sel, ambient_);
      bool dup = false;
      for (const MatZ& s : seen_ray_sets)
        if (exact_eq(s, rm)) dup = true;
      if (dup) continue;
      seen_ray_sets.push_back(rm);
      FaceDescriptor fd;
      fd.face = std::make_shared<Cone>(Cone::from_rays(ambient_, rm));
      out.push_back(std::move(fd));
    }
    std::sort(out.begin(), out.end(), [](const FaceDescriptor& a, const FaceDescriptor& b) {
      return lex_less_cone(*a.face, *b.face);
    });
    for (FaceDescriptor& fd : out) fd.cut = face_cut(*fd.face);
    cache_->faces = std::move(out);
  });
  return cache_->faces;
}

bool Cone::has_face(const Cone& tau) const {
  for (const FaceDescriptor& fd : faces())
    if (*fd.face == tau) return true;
  return false;
}

VecZ Cone::face_cut(const Cone& tau) const {
  auto vanishes_on_tau = [&](const VecZ& m) {
    VecZ p = tau.rays() * m;
    for (Index j = 0; j < p.size(); ++j)
      if (p(j) != 0) return false;
    return true;
  };
  auto valid = [&](const VecZ& cut) {
    if (!vanishes_on_tau(cut)) return false;
    for (Index r = 0; r < rays_.rows(); ++r) {
      Int pr = dot(rays_.row(r), cut);
      bool in_tau = tau.contains(VecZ(rays_.row(r).transpose()));
      if (in_tau && pr != 0) return false;
      if (!in_tau && pr <= 0) return false;
    }
    return true;
  };
  const MatZ& f = facets();
  VecZ cut = VecZ::Zero(ambient_);
  for (Index i = 0; i < f.rows(); ++i) {
    VecZ row = f.row(i).transpose();
    if (vanishes_on_tau(row)) cut += row;
  }
  if (valid(cut)) return cut;
  // exact fallback: sum of the generators of (dual of sigma) intersected
  // with tau-perp
  MatZ ineq(rays_.rows() + 2 * tau.rays().rows(), ambient_);
  ineq.topRows(rays_.rows()) = rays_;
  for (Index i = 0; i < tau.rays().rows(); ++i) {
    ineq.row(rays_.rows() + 2 * i) = tau.rays().row(i);
    ineq.row(rays_.rows() + 2 * i + 1) = -tau.rays().row(i);
  }
  MatZ gens = cone_generators(ambient_, ineq);
  VecZ cut2 = VecZ::Zero(ambient_);
  for (Index i = 0; i < gens.rows(); ++i) cut2 += gens.row(i).transpose();
  if (valid(cut2)) return cut2;
  throw std::logic_error("face_cut: no valid cut vector (tau is not a face?)");
}

Cone dual_cone(const Cone& c) { return c.dual(); }

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("intersect: ambient rank mismatch");
  MatZ ineq(a.facets().rows() + b.facets().rows(), a.ambient_rank());
  ineq.topRows(a.facets().rows()) = a.facets();
  ineq.bottomRows(b.facets().rows()) = b.facets();
  return Cone::from_inequalities(a.ambient_rank(), ineq);
}

bool is_strongly_convex(const Cone& c) { return c.is_strongly_convex(); }
bool is_smooth_cone(const Cone& c) { return c.is_smooth(); }

bool lex_less_cone(const Cone& a, const Cone& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.rays().rows() != b.rays().rows()) return a.rays().rows() < b.rays().rows();
  for (Index i = 0; i < a.rays().rows(); ++i) {
    int c = lex_cmp(a.rays().row(i), b.rays().row(i));
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace superfan
