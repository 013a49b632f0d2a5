#include "superfan/decorated_fan.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "superfan/errors.hpp"

namespace superfan {

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const std::string& p : problems) os << p << "\n";
  return os.str();
}

ValidationReport validate_fan(Index rank, const std::vector<Cone>& cones) {
  ValidationReport rep;
  auto idx_of = [&](const Cone& c) -> Index {
    for (size_t i = 0; i < cones.size(); ++i)
      if (cones[i] == c) return static_cast<Index>(i);
    return -1;
  };
  for (size_t i = 0; i < cones.size(); ++i) {
    if (cones[i].ambient_rank() != rank) {
      rep.problems.push_back("cone " + std::to_string(i) + ": ambient rank mismatch");
      return rep;
    }
    if (!cones[i].is_strongly_convex())
      rep.problems.push_back("cone " + std::to_string(i) + ": not strongly convex");
    for (size_t j = i + 1; j < cones.size(); ++j)
      if (cones[i] == cones[j])
        rep.problems.push_back("cone " + std::to_string(j) + ": duplicate of cone " +
                               std::to_string(i));
  }
  if (!rep.ok()) return rep;
  for (size_t i = 0; i < cones.size(); ++i)
    for (const FaceDescriptor& fd : cones[i].faces())
      if (idx_of(*fd.face) < 0)
        rep.problems.push_back("cone " + std::to_string(i) + ": face " +
                               to_string(fd.face->rays()) + " missing from the fan");
  for (size_t i = 0; i < cones.size(); ++i)
    for (size_t j = i + 1; j < cones.size(); ++j) {
      Cone meet = intersect(cones[i], cones[j]);
      if (!cones[i].has_face(meet) || !cones[j].has_face(meet))
        rep.problems.push_back("cones " + std::to_string(i) + "," + std::to_string(j) +
                               ": intersection is not a common face");
    }
  return rep;
}

std::pair<std::optional<DecoratedFan>, ValidationReport> DecoratedFan::build(
    SupertorusDatum torus, std::vector<Cone> cones, std::vector<MatZ> decorations) {
  ValidationReport rep;
  if (torus.c.rank() != torus.rank) {
    rep.problems.push_back("parameter rank differs from lattice rank");
    return {std::nullopt, rep};
  }
  if (cones.size() != decorations.size()) {
    rep.problems.push_back("decoration count differs from cone count");
    return {std::nullopt, rep};
  }
  rep = validate_fan(torus.rank, cones);
  if (!rep.ok()) return {std::nullopt, rep};
  // canonical order, decorations carried along
  std::vector<size_t> order(cones.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return lex_less_cone(cones[a], cones[b]); });
  DecoratedFan x;
  x.torus_ = std::move(torus);
  for (size_t i : order) {
    x.cones_.push_back(cones[i]);
    x.decorations_.push_back(decorations[i]);
    x.semigroups_.emplace_back(cones[i]);
  }
  const size_t n = x.cones_.size();
  x.face_table_.assign(n, std::vector<bool>(n, false));
  for (size_t s = 0; s < n; ++s)
    for (const FaceDescriptor& fd : x.cones_[s].faces()) {
      Index t = x.index_of(*fd.face);
      x.face_table_[static_cast<size_t>(t)][s] = true;
    }
  ValidationReport drep = validate_decorations(x);
  if (!drep.ok()) return {std::nullopt, drep};
  return {std::move(x), ValidationReport{}};
}

DecoratedFan DecoratedFan::make(SupertorusDatum torus, std::vector<Cone> cones,
                                std::vector<MatZ> decorations) {
  auto [x, rep] = build(std::move(torus), std::move(cones), std::move(decorations));
  if (!x) throw ValidationError(rep.str());
  return std::move(*x);
}

DecoratedFan DecoratedFan::from_maximal(SupertorusDatum torus, const std::vector<Cone>& maximal,
                                        const std::vector<MatZ>& maximal_decorations) {
  if (maximal.size() != maximal_decorations.size())
    throw std::invalid_argument("from_maximal: decoration count mismatch");
  std::vector<Cone> cones;
  std::vector<MatZ> decos;
  auto find = [&](const Cone& c) -> Index {
    for (size_t i = 0; i < cones.size(); ++i)
      if (cones[i] == c) return static_cast<Index>(i);
    return -1;
  };
  for (size_t i = 0; i < maximal.size(); ++i) {
    for (const FaceDescriptor& fd : maximal[i].faces()) {
      if (find(*fd.face) >= 0) continue;
      AffineSemigroup s(*fd.face);
      SIdeal local = minimalize(maximal_decorations[i], s);
      cones.push_back(*fd.face);
      decos.push_back(local.gens);
    }
  }
  return make(std::move(torus), std::move(cones), std::move(decos));
}

Index DecoratedFan::index_of(const Cone& c) const {
  for (size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i] == c) return static_cast<Index>(i);
  return -1;
}

bool DecoratedFan::is_face_pair(Index tau, Index sigma) const {
  return face_table_[static_cast<size_t>(tau)][static_cast<size_t>(sigma)];
}

std::vector<Index> DecoratedFan::maximal_cones() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i) {
    bool maximal = true;
    for (Index j = 0; j < size(); ++j)
      if (i != j && is_face_pair(i, j)) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

bool DecoratedFan::operator==(const DecoratedFan& o) const {
  if (!(torus_ == o.torus_) || cones_.size() != o.cones_.size()) return false;
  for (size_t i = 0; i < cones_.size(); ++i) {
    if (!(cones_[i] == o.cones_[i])) return false;
    if (!exact_eq(decorations_[i], o.decorations_[i])) return false;
  }
  return true;
}

ValidationReport validate_decorations(const DecoratedFan& x) {
  ValidationReport rep;
  for (Index i = 0; i < x.size(); ++i) {
    const MatZ& b = x.decoration(i);
    const AffineSemigroup& s = x.semigroup(i);
    if (b.rows() == 0) {
      rep.problems.push_back("cone " + std::to_string(i) + ": empty decoration");
      continue;
    }
    bool inside = true;
    for (Index r = 0; r < b.rows(); ++r)
      if (!s.contains(VecZ(b.row(r).transpose()))) inside = false;
    if (!inside) {
      rep.problems.push_back("cone " + std::to_string(i) +
                             ": decoration element outside S_sigma");
      continue;
    }
    bool minimal = false;
    if (!is_admissible(b, s, x.torus().c, &minimal))
      rep.problems.push_back("cone " + std::to_string(i) +
                             ": condition (i) fails, some J_c generator is not divisible");
    if (!minimal)
      rep.problems.push_back("cone " + std::to_string(i) +
                             ": condition (iii) fails, decoration is not an antichain");
  }
  if (!rep.ok()) return rep;
  // condition (ii'): both directions along every proper face pair
  for (Index sigma = 0; sigma < x.size(); ++sigma)
    for (Index tau = 0; tau < x.size(); ++tau) {
      if (tau == sigma || !x.is_face_pair(tau, sigma)) continue;
      // both inclusions of J^sigma localized against J^tau, tested on
      // generators with <=_tau divisibility
      const AffineSemigroup& st = x.semigroup(tau);
      const MatZ& bs = x.decoration(sigma);
      const MatZ& bt = x.decoration(tau);
      for (Index r = 0; r < bs.rows(); ++r) {
        bool found = false;
        for (Index q = 0; q < bt.rows() && !found; ++q)
          if (st.divides(VecZ(bt.row(q).transpose()), VecZ(bs.row(r).transpose()))) found = true;
        if (!found)
          rep.problems.push_back("face pair (" + std::to_string(tau) + " <= " +
                                 std::to_string(sigma) +
                                 "): condition (ii') fails, B_sigma element " +
                                 to_string(VecZ(bs.row(r).transpose())) +
                                 " is divisible by no face element");
      }
      for (Index q = 0; q < bt.rows(); ++q) {
        bool found = false;
        for (Index r = 0; r < bs.rows() && !found; ++r)
          if (st.divides(VecZ(bs.row(r).transpose()), VecZ(bt.row(q).transpose()))) found = true;
        if (!found)
          rep.problems.push_back("face pair (" + std::to_string(tau) + " <= " +
                                 std::to_string(sigma) +
                                 "): condition (ii') fails, face element " +
                                 to_string(VecZ(bt.row(q).transpose())) +
                                 " is divisible by no B_sigma element");
      }
    }
  return rep;
}

MatZ localize_decoration(const DecoratedFan& x, Index sigma, Index tau) {
  if (!x.is_face_pair(tau, sigma))
    throw std::invalid_argument("localize_decoration: tau is not a face of sigma");
  return minimalize(x.decoration(sigma), x.semigroup(tau)).gens;
}

bool is_split(const DecoratedFan& x) {
  for (Index i = 0; i < x.size(); ++i)
    if (x.decoration(i).rows() != 1) return false;
  return true;
}

bool is_smooth(const DecoratedFan& x) {
  if (!is_split(x)) return false;
  for (Index i = 0; i < x.size(); ++i)
    if (!x.cone(i).is_smooth()) return false;
  return true;
}

DSInvariant ds_invariant(const DecoratedFan& x, Index sigma, int k_max) {
  DSInvariant out;
  const AffineSemigroup& s = x.semigroup(sigma);
  out.semigroup_generators = s.hilbert_basis();
  SIdeal j = minimalize(x.decoration(sigma), s);
  out.ideal_generators = j.gens;
  try {
    std::vector<int> ks = finiteness_witnesses(j, k_max);
    if (ks.empty()) {
      out.finite = false;
    } else {
      out.finite = true;
      int bound = 0;
      for (int k : ks) bound += k - 1;
      out.quotient_basis = enumerate_complement(j, bound);
    }
  } catch (const InconclusiveError&) {
    out.finite = std::nullopt;
  }
  return out;
}

std::vector<VecZ> fiber_of_J(const DecoratedFan& x, Index sigma) {
  const AffineSemigroup& s = x.semigroup(sigma);
  QuotientLattice ql = quotient_lattice(x.rank(), s.units());
  std::vector<VecZ> out;
  const MatZ& b = x.decoration(sigma);
  for (Index i = 0; i < b.rows(); ++i) out.push_back(ql.projection * b.row(i).transpose());
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

namespace {

// N_sigma: saturated span of the cone's rays.
MatZ stabilizer_sublattice(const Cone& sigma) {
  return saturate(sigma.rays());
}

bool in_sigma_perp(const Cone& sigma, const VecZ& m) {
  VecZ p = sigma.rays() * m;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) != 0) return false;
  return true;
}

}  // namespace

OrbitReport orbit_stabilizer(const DecoratedFan& x, Index sigma) {
  const Cone& cone = x.cone(sigma);
  const MatZ& b = x.decoration(sigma);
  bool meets_perp = false;
  for (Index i = 0; i < b.rows(); ++i)
    if (in_sigma_perp(cone, VecZ(b.row(i).transpose()))) meets_perp = true;
  OrbitReport out;
  out.stabilizer_basis = stabilizer_sublattice(cone);
  QuotientLattice ql = quotient_lattice(x.rank(), out.stabilizer_basis);
  out.orbit_projection = ql.projection;
  const Index d = out.stabilizer_basis.rows();
  if (meets_perp) {
    // x^b invertible at the distinguished point for some generator: the
    // stabilizer is purely even, the orbit keeps the projected parameter
    out.branch = OrbitBranch::even_stabilizer_super_orbit;
    out.stabilizer = SupertorusDatum::even(d);
    out.orbit = SupertorusDatum{ql.rank, apply_map(ql.projection, x.torus().c)};
  } else {
    out.branch = OrbitBranch::super_stabilizer_even_orbit;
    // c is guaranteed to lie in the span of N_sigma here
    out.stabilizer = SupertorusDatum{d, restrict_to_sublattice(out.stabilizer_basis, x.torus().c)};
    out.orbit = SupertorusDatum::even(ql.rank);
  }
  return out;
}

std::variant<Fan, DecoratedFan> orbit_closure(const DecoratedFan& x, Index sigma) {
  OrbitReport rep = orbit_stabilizer(x, sigma);
  const MatZ& P = rep.orbit_projection;
  const Index q = P.rows();
  std::vector<Cone> star;
  std::vector<Index> star_src;
  for (Index tau = 0; tau < x.size(); ++tau) {
    if (!(tau == sigma || x.is_face_pair(sigma, tau))) continue;
    MatZ img(x.cone(tau).rays().rows(), q);
    for (Index i = 0; i < img.rows(); ++i)
      img.row(i) = (P * x.cone(tau).rays().row(i).transpose()).transpose();
    Cone c = Cone::from_rays(q, img);
    bool dup = false;
    for (const Cone& s : star)
      if (s == c) dup = true;
    if (!dup) {
      star.push_back(c);
      star_src.push_back(tau);
    }
  }
  if (rep.branch == OrbitBranch::super_stabilizer_even_orbit) {
    return Fan{q, std::move(star)};
  }
  // decorated case: B_tau intersect sigma-perp, rewritten in the coordinates
  // of M(sigma) = sigma-perp cap M via the transpose of the projection
  MatZ pt = P.transpose();
  std::vector<MatZ> decos;
  for (size_t k = 0; k < star.size(); ++k) {
    Index tau = star_src[k];
    std::vector<VecZ> rows;
    const MatZ& b = x.decoration(tau);
    for (Index i = 0; i < b.rows(); ++i) {
      VecZ m = b.row(i).transpose();
      if (!in_sigma_perp(x.cone(sigma), m)) continue;
      auto y = solve_integer(pt, m);
      if (!y) throw std::logic_error("orbit_closure: decoration outside sigma-perp lattice");
      rows.push_back(*y);
    }
    if (rows.empty())
      throw ValidationError("orbit_closure: decoration meets sigma-perp nowhere at cone " +
                            std::to_string(tau));
    decos.push_back(from_rows(rows, q));
  }
  SupertorusDatum t{q, rep.orbit.c};
  return DecoratedFan::make(std::move(t), std::move(star), std::move(decos));
}

Subspace admissible_c_space(Index rank, const std::vector<Cone>& cones,
                            const std::vector<MatZ>& decorations) {
  std::vector<VecZ> constraints;
  for (size_t i = 0; i < cones.size(); ++i) {
    AffineSemigroup s(cones[i]);
    const MatZ& hb = s.hilbert_basis();
    for (Index h = 0; h < hb.rows(); ++h) {
      VecZ v = hb.row(h).transpose();
      bool in_ideal = false;
      for (Index g = 0; g < decorations[i].rows() && !in_ideal; ++g)
        if (s.divides(VecZ(decorations[i].row(g).transpose()), v)) in_ideal = true;
      if (!in_ideal) constraints.push_back(v);
    }
  }
  MatQ rows = to_rational(from_rows(constraints, rank));
  return Subspace(rank, kernel_rational(rows));
}

Subspace admissible_c_space(const DecoratedFan& x) {
  std::vector<MatZ> decos;
  for (Index i = 0; i < x.size(); ++i) decos.push_back(x.decoration(i));
  return admissible_c_space(x.rank(), x.cones(), decos);
}

namespace {

// Divisors of g0 modulo units, enumerated upward from 0 through the pointed
// quotient.
std::vector<VecZ> divisor_candidates(const AffineSemigroup& s, const SIdeal& jc) {
  QuotientLattice ql = quotient_lattice(s.rank(), s.units());
  MatZ img(s.sigma().facets().rows(), ql.rank);
  for (Index i = 0; i < img.rows(); ++i)
    img.row(i) = (ql.projection * s.sigma().facets().row(i).transpose()).transpose();
  Cone cbar = Cone::from_rays(ql.rank, img);
  AffineSemigroup sbar(dual_cone(cbar));  // S(cbar-dual) has cbar as its dual cone
  VecZ g0 = ql.projection * jc.gens.row(0).transpose();
  std::set<VecZ, LexLess> divisors;
  std::vector<VecZ> frontier{VecZ::Zero(ql.rank)};
  divisors.insert(frontier[0]);
  const MatZ hb = sbar.hilbert_basis();
  while (!frontier.empty()) {
    std::vector<VecZ> next;
    for (const VecZ& d : frontier)
      for (Index i = 0; i < hb.rows(); ++i) {
        VecZ cand = d + hb.row(i).transpose();
        if (divisors.count(cand)) continue;
        if (!cbar.contains(VecZ(g0 - cand))) continue;
        divisors.insert(cand);
        next.push_back(cand);
      }
    frontier = std::move(next);
  }
  // keep divisors of every J_c generator, lifted back to M
  std::vector<VecZ> out;
  for (const VecZ& d : divisors) {
    bool all = true;
    for (Index g = 0; g < jc.gens.rows() && all; ++g) {
      VecZ gg = ql.projection * jc.gens.row(g).transpose();
      if (!cbar.contains(VecZ(gg - d))) all = false;
    }
    if (!all) continue;
    auto lift = solve_integer(ql.projection, d);
    if (!lift) throw std::logic_error("divisor_candidates: no lift");
    out.push_back(s.canonical_rep(*lift));
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

}  // namespace

std::vector<DecoratedFan> enumerate_split_decorations(const SupertorusDatum& torus,
                                                      const std::vector<Cone>& cones) {
  if (torus.c.is_zero_param())
    throw std::invalid_argument("enumerate_split_decorations: c = 0 admits arbitrarily deep "
                                "principal decorations");
  ValidationReport rep = validate_fan(torus.rank, cones);
  if (!rep.ok()) throw ValidationError(rep.str());
  // maximal cones of the input collection
  std::vector<size_t> maximal;
  for (size_t i = 0; i < cones.size(); ++i) {
    bool is_max = true;
    for (size_t j = 0; j < cones.size() && is_max; ++j)
      if (i != j && cones[j].has_face(cones[i])) is_max = false;
    if (is_max) maximal.push_back(i);
  }
  std::vector<std::vector<VecZ>> candidates;
  for (size_t i : maximal) {
    AffineSemigroup s(cones[i]);
    SIdeal jc = jc_generators(s, torus.c);
    if (jc.is_zero()) throw std::logic_error("enumerate_split_decorations: empty J_c");
    candidates.push_back(divisor_candidates(s, jc));
  }
  std::vector<DecoratedFan> out;
  std::vector<size_t> pick(maximal.size(), 0);
  for (;;) {
    std::vector<Cone> max_cones;
    std::vector<MatZ> max_decos;
    for (size_t k = 0; k < maximal.size(); ++k) {
      max_cones.push_back(cones[maximal[k]]);
      MatZ d(1, torus.rank);
      d.row(0) = candidates[k][pick[k]].transpose();
      max_decos.push_back(d);
    }
    try {
      out.push_back(DecoratedFan::from_maximal(torus, max_cones, max_decos));
    } catch (const ValidationError&) {
      // incompatible across shared faces; skip
    }
    size_t k = 0;
    while (k < pick.size()) {
      if (++pick[k] < candidates[k].size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == pick.size()) break;
  }
  return out;
}

std::optional<Int> fermionic_degree(const DecoratedFan& x) {
  if (x.rank() != 1 || !is_split(x)) return std::nullopt;
  Index pos = -1, neg = -1;
  for (Index i = 0; i < x.size(); ++i) {
    if (x.cone(i).rays().rows() != 1) continue;
    if (x.cone(i).rays()(0, 0) == 1) pos = i;
    if (x.cone(i).rays()(0, 0) == -1) neg = i;
  }
  if (pos < 0 || neg < 0) return std::nullopt;  // not complete
  // coefficient of the decoration against the chart generator on each side
  Int m = x.decoration(pos)(0, 0);
  Int n = -x.decoration(neg)(0, 0);
  return Int(-(m + n));
}

}  // namespace superfan
