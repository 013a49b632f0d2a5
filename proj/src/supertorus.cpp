#include "superfan/supertorus.hpp"

#include <set>

#include "superfan/errors.hpp"

namespace superfan {

SupertorusMorphism validate_supertorus_morphism(const SupertorusDatum& src,
                                                const SupertorusDatum& dst, const MatZ& phi,
                                                const Rat& a) {
  if (phi.rows() != dst.rank || phi.cols() != src.rank)
    throw MorphismError(MorphismErrorKind::dimension_mismatch,
                        "supertorus morphism: matrix shape does not match ranks");
  // compare component-wise over the union of the transcendental bases
  std::set<std::string> symbols(src.c.symbols().begin(), src.c.symbols().end());
  symbols.insert(dst.c.symbols().begin(), dst.c.symbols().end());
  MatQ phiq = to_rational(phi);
  Rat a2 = a * a;
  for (const std::string& sym : symbols) {
    VecQ lhs = phiq * src.c.component_for(sym);
    VecQ rhs = a2 * dst.c.component_for(sym);
    for (Index i = 0; i < lhs.size(); ++i)
      if (lhs(i) != rhs(i))
        throw MorphismError(MorphismErrorKind::c_equation,
                            "supertorus morphism: phi(c) != a^2 c' at symbol " + sym);
  }
  return SupertorusMorphism{src, dst, phi, a};
}

SupertorusMorphism compose(const SupertorusMorphism& g, const SupertorusMorphism& f) {
  if (!(f.dst == g.src))
    throw MorphismError(MorphismErrorKind::chain_mismatch,
                        "compose: target of the first factor differs from source of the second");
  return validate_supertorus_morphism(f.src, g.dst, MatZ(g.phi * f.phi), f.a * g.a);
}

TorusDecomposition decompose(const SupertorusDatum& t) {
  const Index n = t.rank;
  TorusDecomposition out;
  if (t.c.is_zero_param()) {
    out.g = MatZ::Identity(n, n);
    out.r = 0;
    return out;
  }
  // rows of g that kill every component = integer kernel of the component
  // matrix; complete to a basis and put the killing rows last
  MatZ comps = scale_rows_to_integer(t.c.components());
  MatZ K = kernel_saturated(comps);  // (n - r) x n
  const Index r = n - K.rows();
  if (K.rows() == 0) {
    out.g = MatZ::Identity(n, n);
    out.r = n;
    return out;
  }
  SmithForm sf = smith_normal_form(K);
  MatZ W = inverse_unimodular(sf.V);  // first (n-r) rows span the same lattice as K
  MatZ g(n, n);
  g.topRows(r) = W.bottomRows(r);
  g.bottomRows(n - r) = W.topRows(n - r);
  out.g = std::move(g);
  out.r = r;
  return out;
}

bool is_indecomposable(const SupertorusDatum& t) {
  if (t.rank == 0) return false;
  return decompose(t).r == t.rank;
}

}  // namespace superfan
