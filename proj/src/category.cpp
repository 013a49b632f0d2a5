#include "superfan/category.hpp"

#include <algorithm>
#include <set>

#include "superfan/errors.hpp"

namespace superfan {

namespace {

// The unique minimal cone of `fan` containing the image of sigma under phi,
// or -1 when none contains it.
Index minimal_target_cone(const DecoratedFan& fan, const MatZ& phi, const Cone& sigma) {
  std::vector<Index> candidates;
  for (Index i = 0; i < fan.size(); ++i) {
    bool contains_image = true;
    for (Index r = 0; r < sigma.rays().rows(); ++r) {
      VecZ img = phi * sigma.rays().row(r).transpose();
      if (!fan.cone(i).contains(img)) contains_image = false;
    }
    if (contains_image) candidates.push_back(i);
  }
  if (candidates.empty()) return -1;
  Index best = candidates[0];
  for (Index c : candidates)
    if (c != best && fan.is_face_pair(c, best)) best = c;
  // sanity: best must be a face of every candidate
  for (Index c : candidates)
    if (c != best && !fan.is_face_pair(best, c)) return -1;
  return best;
}

}  // namespace

DecoratedFanMorphism validate_morphism(const DecoratedFan& src, const DecoratedFan& dst,
                                       const MatZ& phi, const Rat& a) {
  validate_supertorus_morphism(src.torus(), dst.torus(), phi, a);
  std::vector<Index> targets(static_cast<size_t>(src.size()), -1);
  for (Index i = 0; i < src.size(); ++i) {
    targets[static_cast<size_t>(i)] = minimal_target_cone(dst, phi, src.cone(i));
    if (targets[static_cast<size_t>(i)] < 0)
      throw MorphismError(MorphismErrorKind::fan_compatibility,
                          "morphism: image of cone " + std::to_string(i) +
                              " lies in no target cone");
  }
  if (a != 0) {
    MatZ phit = phi.transpose();
    for (Index i = 0; i < src.size(); ++i) {
      const AffineSemigroup& s = src.semigroup(i);
      const MatZ& b_src = src.decoration(i);
      const MatZ& b_dst = dst.decoration(targets[static_cast<size_t>(i)]);
      for (Index q = 0; q < b_dst.rows(); ++q) {
        VecZ pulled = phit * b_dst.row(q).transpose();
        bool divisible = false;
        for (Index r = 0; r < b_src.rows() && !divisible; ++r)
          if (s.divides(VecZ(b_src.row(r).transpose()), pulled)) divisible = true;
        if (!divisible)
          throw MorphismError(MorphismErrorKind::decoration_compatibility,
                              "morphism: pullback of decoration element " +
                                  to_string(VecZ(b_dst.row(q).transpose())) + " at cone " +
                                  std::to_string(i) + " has no divisor in B_sigma");
      }
    }
  }
  return DecoratedFanMorphism{src, dst, phi, a};
}

DecoratedFanMorphism compose(const DecoratedFanMorphism& g, const DecoratedFanMorphism& f) {
  if (!(f.dst == g.src))
    throw MorphismError(MorphismErrorKind::chain_mismatch,
                        "compose: inner object mismatch");
  return validate_morphism(f.src, g.dst, MatZ(g.phi * f.phi), f.a * g.a);
}

bool is_isomorphism(const DecoratedFanMorphism& f) {
  if (f.a == 0) return false;
  if (f.phi.rows() != f.phi.cols()) return false;
  HermiteForm hf = hermite_normal_form(f.phi);
  if (hf.rank != f.phi.rows() ||
      !exact_eq(hf.H, MatZ(MatZ::Identity(f.phi.rows(), f.phi.cols()))))
    return false;
  MatZ inv = inverse_unimodular(f.phi);
  try {
    validate_morphism(f.dst, f.src, inv, Rat(1) / f.a);
  } catch (const MorphismError&) {
    return false;
  }
  return true;
}

bool affine_extension_check(const SupertorusMorphism& t, const AffineSemigroup& s, const SIdeal& j,
                            const AffineSemigroup& s_prime, const SIdeal& j_prime) {
  MatZ phit = t.phi.transpose();
  const MatZ& hb = s_prime.hilbert_basis();
  for (Index i = 0; i < hb.rows(); ++i) {
    VecZ pulled = phit * hb.row(i).transpose();
    if (!s.contains(pulled)) return false;
  }
  if (t.a == 0) return true;
  for (Index q = 0; q < j_prime.gens.rows(); ++q) {
    VecZ pulled = phit * j_prime.gens.row(q).transpose();
    if (!j.contains(pulled)) return false;
  }
  return true;
}

FiberProductResult fiber_product(const DecoratedFanMorphism& f1, const DecoratedFanMorphism& f2) {
  if (!(f1.dst == f2.dst))
    throw MorphismError(MorphismErrorKind::chain_mismatch,
                        "fiber_product: the morphisms have different targets");
  const Rat a1 = f1.a, a2 = f2.a;
  if (a1 == 0 && a2 == 0)
    throw FiberProductError("fiber product does not exist when both scalars vanish");
  const DecoratedFan& x1 = f1.src;
  const DecoratedFan& x2 = f2.src;
  const Index n1 = x1.rank(), n2 = x2.rank();
  // N = ker(phi1 - phi2) inside N' x N''
  MatZ stacked(f1.dst.rank(), n1 + n2);
  stacked.leftCols(n1) = f1.phi;
  stacked.rightCols(n2) = -f2.phi;
  MatZ K = kernel_saturated(stacked);  // k x (n1+n2)
  const Index k = K.rows();
  MatZ embed = K.transpose();          // (n1+n2) x k
  MatZ psi1 = embed.topRows(n1);       // N -> N'
  MatZ psi2 = embed.bottomRows(n2);    // N -> N''
  // c = ((a'')^2 c', (a')^2 c'') expressed in the kernel coordinates
  CParam c1s = scale(a2 * a2, x1.torus().c);
  CParam c2s = scale(a1 * a1, x2.torus().c);
  std::set<std::string> symbols(c1s.symbols().begin(), c1s.symbols().end());
  symbols.insert(c2s.symbols().begin(), c2s.symbols().end());
  std::vector<std::string> syms(symbols.begin(), symbols.end());
  MatQ comps(static_cast<Index>(syms.size()), k);
  MatQ embed_q = to_rational(embed);
  for (size_t t = 0; t < syms.size(); ++t) {
    VecQ cat(n1 + n2);
    cat.topRows(n1) = c1s.component_for(syms[t]);
    cat.bottomRows(n2) = c2s.component_for(syms[t]);
    auto x = solve_rational(embed_q, cat);
    if (!x) throw std::logic_error("fiber_product: parameter outside the kernel span");
    comps.row(static_cast<Index>(t)) = x->transpose();
  }
  SupertorusDatum torus{k, CParam(k, syms, comps)};
  // cones: preimages of pairs that map into a common target cone
  struct Entry {
    Cone cone;
    Index i1, i2;
  };
  std::vector<Entry> entries;
  for (Index i = 0; i < x1.size(); ++i)
    for (Index j = 0; j < x2.size(); ++j) {
      bool common = false;
      for (Index l = 0; l < f1.dst.size() && !common; ++l) {
        bool ok = true;
        for (Index r = 0; r < x1.cone(i).rays().rows() && ok; ++r)
          if (!f1.dst.cone(l).contains(VecZ(f1.phi * x1.cone(i).rays().row(r).transpose())))
            ok = false;
        for (Index r = 0; r < x2.cone(j).rays().rows() && ok; ++r)
          if (!f1.dst.cone(l).contains(VecZ(f2.phi * x2.cone(j).rays().row(r).transpose())))
            ok = false;
        common = ok;
      }
      if (!common) continue;
      // {v : psi1 v in sigma', psi2 v in sigma''}
      MatZ ineq(x1.cone(i).facets().rows() + x2.cone(j).facets().rows(), k);
      ineq.topRows(x1.cone(i).facets().rows()) = x1.cone(i).facets() * psi1;
      ineq.bottomRows(x2.cone(j).facets().rows()) = x2.cone(j).facets() * psi2;
      entries.push_back(Entry{Cone::from_inequalities(k, ineq), i, j});
    }
  // group by the resulting cone; the componentwise intersection of a group's
  // pairs is again in the group and is its minimum, so decorations are read
  // off from it
  std::vector<Cone> cones;
  std::vector<std::pair<Index, Index>> chart;
  for (const Entry& e : entries) {
    Index at = -1;
    for (size_t c = 0; c < cones.size(); ++c)
      if (cones[c] == e.cone) at = static_cast<Index>(c);
    if (at < 0) {
      cones.push_back(e.cone);
      chart.push_back({e.i1, e.i2});
    } else {
      auto& [i1, i2] = chart[static_cast<size_t>(at)];
      Index m1 = x1.index_of(intersect(x1.cone(i1), x1.cone(e.i1)));
      Index m2 = x2.index_of(intersect(x2.cone(i2), x2.cone(e.i2)));
      if (m1 < 0 || m2 < 0) throw std::logic_error("fiber_product: intersection left the fan");
      i1 = m1;
      i2 = m2;
    }
  }
  // decorations: J_c plus the projected source decorations, per the scalar
  // cases (the B' image rides along unless a'' = 0, the B'' image unless
  // a' = 0)
  MatZ psi1t = psi1.transpose();
  MatZ psi2t = psi2.transpose();
  std::vector<MatZ> decorations;
  for (size_t c = 0; c < cones.size(); ++c) {
    AffineSemigroup s(cones[c]);
    SIdeal jc = jc_generators(s, torus.c);
    std::vector<VecZ> gens = to_rows(jc.gens);
    auto [i1, i2] = chart[c];
    if (a2 != 0) {
      const MatZ& b1 = x1.decoration(i1);
      for (Index r = 0; r < b1.rows(); ++r) gens.push_back(psi1t * b1.row(r).transpose());
    }
    if (a1 != 0) {
      const MatZ& b2 = x2.decoration(i2);
      for (Index r = 0; r < b2.rows(); ++r) gens.push_back(psi2t * b2.row(r).transpose());
    }
    decorations.push_back(minimalize(from_rows(gens, k), s).gens);
  }
  DecoratedFan product = DecoratedFan::make(torus, std::move(cones), std::move(decorations));
  DecoratedFanMorphism p1 = validate_morphism(product, x1, psi1, a2);
  DecoratedFanMorphism p2 = validate_morphism(product, x2, psi2, a1);
  return FiberProductResult{std::move(product), std::move(p1), std::move(p2)};
}

DecoratedFanMorphism mediating_morphism(const FiberProductResult& fp,
                                        const DecoratedFanMorphism& g1,
                                        const DecoratedFanMorphism& g2) {
  if (!(g1.src == g2.src))
    throw MorphismError(MorphismErrorKind::chain_mismatch,
                        "mediating_morphism: the cospan legs have different sources");
  const DecoratedFan& z = g1.src;
  const Index k = fp.product.rank();
  // phi is determined column by column: embed * phi = (g1.phi | g2.phi)
  const Index n1 = g1.phi.rows(), n2 = g2.phi.rows();
  MatZ embed(n1 + n2, k);
  embed.topRows(n1) = fp.proj1.phi;
  embed.bottomRows(n2) = fp.proj2.phi;
  MatZ phi(k, z.rank());
  for (Index col = 0; col < z.rank(); ++col) {
    VecZ target(n1 + n2);
    target.topRows(n1) = g1.phi.col(col);
    target.bottomRows(n2) = g2.phi.col(col);
    auto x = solve_integer(embed, target);
    if (!x)
      throw MorphismError(MorphismErrorKind::fan_compatibility,
                          "mediating_morphism: cospan does not factor through the product");
    phi.col(col) = *x;
  }
  // the projections carry a'' and a', so commutativity forces the scalar
  Rat a;
  if (fp.proj1.a != 0)
    a = g1.a / fp.proj1.a;
  else if (fp.proj2.a != 0)
    a = g2.a / fp.proj2.a;
  else
    throw FiberProductError("mediating_morphism: both projection scalars vanish");
  return validate_morphism(z, fp.product, phi, a);
}

}  // namespace superfan
