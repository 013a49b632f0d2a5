// Acceptance suite: one line per criterion, exit 1 on any failure.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "superfan/category.hpp"
#include "superfan/embedding.hpp"
#include "superfan/errors.hpp"
#include "superfan/io.hpp"

using namespace superfan;

namespace {

int failures = 0;

void report(int number, const std::string& title, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << number << "  " << title;
  if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++failures;
}

void run(int number, const std::string& title, const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  try {
    body();
    report(number, title, true);
  } catch (const std::exception& e) {
    report(number, title, false, e.what());
  }
  if (std::getenv("ACCEPTANCE_TIMINGS")) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << "      (" << ms << " ms)\n";
  }
}

struct CheckFail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw CheckFail(what);
}

VecZ vec(std::initializer_list<long> entries) {
  VecZ v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (long e : entries) v(i++) = e;
  return v;
}

MatZ mat(std::initializer_list<std::initializer_list<long>> rows) {
  Index r = static_cast<Index>(rows.size());
  Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  MatZ m(r, c);
  Index i = 0;
  for (auto& row : rows) {
    Index j = 0;
    for (long e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

CParam c_single(Index rank, std::initializer_list<long> entries) {
  MatQ comp(1, rank);
  Index j = 0;
  for (long e : entries) comp(0, j++) = Rat(e);
  return CParam(rank, {"l"}, comp);
}

// sigma with S_sigma = <(1,1),(-1,1),(0,1)>
Cone wedge() { return Cone::from_rays(2, mat({{-1, 1}, {1, 1}})); }

DecoratedFan pn_fan(Index n) {
  MatQ comp(1, n);
  for (Index j = 0; j < n; ++j) comp(0, j) = 1;
  SupertorusDatum t{n, CParam(n, {"l"}, comp)};
  std::vector<VecZ> generators;
  for (Index i = 0; i < n; ++i) {
    VecZ e = VecZ::Zero(n);
    e(i) = 1;
    generators.push_back(e);
  }
  generators.push_back(VecZ::Constant(n, Int(-1)));
  std::vector<Cone> maximal;
  std::vector<MatZ> decos;
  for (Index skip = 0; skip < n + 1; ++skip) {
    std::vector<VecZ> rays;
    for (Index i = 0; i < n + 1; ++i)
      if (i != skip) rays.push_back(generators[static_cast<size_t>(i)]);
    maximal.push_back(Cone::from_rays(n, from_rows(rays, n)));
    MatZ d = MatZ::Zero(1, n);
    if (skip != n) d(0, skip) = -1;
    decos.push_back(d);
  }
  return DecoratedFan::from_maximal(t, maximal, decos);
}

DecoratedFan xn_fan(long n) {
  SupertorusDatum t{2, c_single(2, {1, 0})};
  std::vector<VecZ> rows;
  rows.push_back(vec({1, 0}));
  if (n >= 0) rows.push_back(vec({0, n}));
  return DecoratedFan::from_maximal(t, {Cone::from_rays(2, mat({{1, 0}, {0, 1}}))},
                                    {from_rows(rows, 2)});
}

DecoratedFan a1_fan(long m, long cval = 1) {
  SupertorusDatum t{1, c_single(1, {cval})};
  MatZ d(1, 1);
  d << m;
  return DecoratedFan::from_maximal(t, {Cone::from_rays(1, mat({{1}}))}, {d});
}

void criterion1() {
  for (Index n : {2, 3}) {
    DecoratedFan pn = pn_fan(n);
    Subspace space = admissible_c_space(pn);
    MatQ ones(1, n);
    for (Index j = 0; j < n; ++j) ones(0, j) = 1;
    require(space == Subspace(n, ones),
            "P^" + std::to_string(n) + " parameter space is not span{(1,...,1)}");
  }
}

void criterion2() {
  AffineSemigroup s(wedge());
  std::vector<SIdeal> ideals = enumerate_intermediate_ideals(s, c_single(2, {1, 0}));
  require(ideals.size() == 3, "expected exactly 3 intermediate ideals, got " +
                                  std::to_string(ideals.size()));
  require(exact_eq(ideals[0].gens, mat({{0, 0}})), "unit ideal generators wrong");
  require(exact_eq(ideals[1].gens, sorted_unique_rows(mat({{1, 1}, {-1, 1}}))),
          "J_c generators wrong");
  require(exact_eq(ideals[2].gens, sorted_unique_rows(mat({{1, 1}, {-1, 1}, {0, 1}}))),
          "maximal-ideal generators wrong");
}

void criterion3() {
  DecoratedFan x0 = xn_fan(0), x2 = xn_fan(2), xinf = xn_fan(-1);
  Cone orthant = Cone::from_rays(2, mat({{1, 0}, {0, 1}}));
  Cone ray1 = Cone::from_rays(2, mat({{1, 0}}));
  Cone ray2 = Cone::from_rays(2, mat({{0, 1}}));
  Cone zero = Cone::zero(2);
  CParam c = c_single(2, {1, 0});
  CParam c1 = c_single(1, {1});
  auto stab = [&](const DecoratedFan& x, const Cone& cone) {
    return orbit_stabilizer(x, x.index_of(cone));
  };
  // row a = b = 0
  require(stab(x0, orthant).stabilizer == SupertorusDatum::even(2), "X^0 at origin");
  require(stab(x2, orthant).stabilizer == SupertorusDatum{2, c}, "X^2 at origin");
  require(stab(xinf, orthant).stabilizer == SupertorusDatum{2, c}, "X^infty at origin");
  // row a = 0, b != 0
  require(stab(x0, ray1).stabilizer == SupertorusDatum::even(1), "X^0 at ray e1");
  require(exact_eq(stab(x0, ray1).stabilizer_basis, mat({{1, 0}})), "X^0 ray e1 sublattice");
  require(stab(x2, ray1).stabilizer == SupertorusDatum::even(1), "X^2 at ray e1");
  OrbitReport ri = stab(xinf, ray1);
  require(ri.stabilizer == SupertorusDatum{1, c1}, "X^infty at ray e1 is not T_{Zx0,1}");
  require(exact_eq(ri.stabilizer_basis, mat({{1, 0}})), "X^infty ray e1 sublattice");
  // row a != 0, b = 0
  for (DecoratedFan* x : {&x0, &x2, &xinf}) {
    OrbitReport r = stab(*x, ray2);
    require(r.stabilizer == SupertorusDatum::even(1), "row 3 stabilizer");
    require(exact_eq(r.stabilizer_basis, mat({{0, 1}})), "row 3 sublattice");
  }
  // row a, b != 0
  for (DecoratedFan* x : {&x0, &x2, &xinf})
    require(stab(*x, zero).stabilizer == SupertorusDatum::even(0), "row 4 stabilizer");
  require(stab(x0, zero).orbit == SupertorusDatum{2, c}, "dense orbit keeps the supertorus");
}

void criterion4() {
  SupertorusDatum t{1, c_single(1, {1})};
  std::vector<Cone> cones = {Cone::zero(1), Cone::from_rays(1, mat({{1}})),
                             Cone::from_rays(1, mat({{-1}}))};
  std::vector<DecoratedFan> fans = enumerate_split_decorations(t, cones);
  require(fans.size() == 4, "expected 4 decorated fans, got " + std::to_string(fans.size()));
  std::multiset<long> degrees;
  for (const DecoratedFan& f : fans) {
    require(is_smooth(f), "a (1|1)-dimensional decorated fan failed the smoothness check");
    auto d = fermionic_degree(f);
    require(d.has_value(), "degree not applicable on a complete rank-1 fan");
    degrees.insert(static_cast<long>(d->get_si()));
  }
  require(degrees == std::multiset<long>({-2, -1, -1, 0}), "degree multiset is not {0,-1,-1,-2}");
}

void criterion5() {
  SupertorusDatum t{2, c_single(2, {1, 0})};
  AffineSemigroup s(wedge());
  SIdeal jc = jc_generators(s, t.c);
  DecoratedFan x = DecoratedFan::from_maximal(t, {wedge()}, {jc.gens});
  DSInvariant inv = ds_invariant(x, x.index_of(wedge()));
  require(inv.finite.has_value() && *inv.finite, "quotient not reported finite");
  require(inv.quotient_basis.size() == 2, "quotient dimension is not 2");
  require(exact_eq(inv.quotient_basis[0], vec({0, 0})), "basis misses (0,0)");
  require(exact_eq(inv.quotient_basis[1], vec({0, 1})), "basis misses (0,1)");
}

void criterion6() {
  CParam c(2, {"l"}, to_rational(mat({{1, 1}})));
  MonomialData data = make_monomial_data_same(2, c, mat({{1, 0}, {1, 1}, {1, 2}}));
  for (Index i = 0; i < data.A.rows(); ++i)
    require(!pairs_to_zero(VecZ(data.A.row(i).transpose()), c), "a pairing vanishes");
  BinomialSample sample = binomials_in_box(data, 2);
  bool quad = false, linear = false;
  for (const SuperBinomial& b : sample.binomials) {
    require(verify_vanishing(data, b), "emitted binomial fails verification: " + b.str());
    if (b.str() == "x1 x3 - x2^2") quad = true;
    if (b.str() == "x1 xi2 - x2 xi1") linear = true;
  }
  require(quad, "missing x1 x3 - x2^2");
  require(linear, "missing x1 xi2 - x2 xi1");
}

void criterion7() {
  std::mt19937_64 rng(0x5eedf00d);
  std::uniform_int_distribution<long> entry(-3, 3);
  std::uniform_int_distribution<int> nrays(1, 4);
  std::uniform_int_distribution<Index> rank_pick(1, 3);
  int fans_checked = 0, pairs = 0;
  while (fans_checked < 200) {
    Index rank = rank_pick(rng);
    MatZ rays(nrays(rng), rank);
    for (Index i = 0; i < rays.rows(); ++i)
      for (Index j = 0; j < rank; ++j) rays(i, j) = entry(rng);
    Cone c = Cone::from_rays(rank, rays);
    if (!c.is_strongly_convex() || c.dim() == 0) continue;
    MatQ comp(1, rank);
    bool allzero = true;
    for (Index j = 0; j < rank; ++j) {
      comp(0, j) = Rat(entry(rng));
      if (comp(0, j) != 0) allzero = false;
    }
    if (allzero) continue;
    SupertorusDatum t{rank, CParam(rank, {"l"}, comp)};
    AffineSemigroup s(c);
    SIdeal jc = jc_generators(s, t.c);
    std::vector<MatZ> decorations;
    bool finite = false;
    try {
      finite = complement_is_finite(jc);
    } catch (const InconclusiveError&) {
      finite = false;
    }
    if (finite) {
      for (const SIdeal& j : enumerate_intermediate_ideals(s, t.c))
        decorations.push_back(j.gens);
    } else {
      decorations.push_back(jc.gens);
    }
    for (const MatZ& deco : decorations) {
      if (fans_checked >= 220) break;
      DecoratedFan x = DecoratedFan::from_maximal(t, {c}, {deco});
      ++fans_checked;
      for (Index sigma = 0; sigma < x.size(); ++sigma)
        for (Index tau = 0; tau < x.size(); ++tau) {
          if (tau == sigma || !x.is_face_pair(tau, sigma)) continue;
          ++pairs;
          require(exact_eq(localize_decoration(x, sigma, tau), x.decoration(tau)),
                  "localization mismatch");
        }
    }
  }
  require(fans_checked >= 200, "not enough fans generated");
  require(pairs > 0, "no face pairs exercised");
}

void criterion8() {
  std::mt19937_64 rng(0xfeedbeef);
  std::uniform_int_distribution<long> entry(-3, 3);
  std::uniform_int_distribution<int> nrays(1, 4);
  std::uniform_int_distribution<Index> rank_pick(1, 3);
  int cones_checked = 0;
  while (cones_checked < 200) {
    Index rank = rank_pick(rng);
    MatZ rays(nrays(rng), rank);
    for (Index i = 0; i < rays.rows(); ++i)
      for (Index j = 0; j < rank; ++j) rays(i, j) = entry(rng);
    Cone c = Cone::from_rays(rank, rays);
    if (!c.is_strongly_convex() || c.dim() == 0) continue;
    ++cones_checked;
    require(dual_cone(dual_cone(c)) == c, "biduality failed");
    // Hilbert basis vs box-6 enumeration
    AffineSemigroup s(c);
    std::vector<VecZ> gens = to_rows(s.hilbert_basis());
    long box = 6;
    std::function<bool(const VecZ&)> member = [&](const VecZ& v) { return s.contains(v); };
    // odometer over the box
    VecZ v = VecZ::Constant(rank, Int(-box));
    for (;;) {
      if (s.contains(v)) {
        // membership decomposes over the basis
        std::set<VecZ, LexLess> seen;
        std::function<bool(const VecZ&)> decompose = [&](const VecZ& t) -> bool {
          bool zero = true;
          for (Index i = 0; i < t.size(); ++i)
            if (t(i) != 0) zero = false;
          if (zero) return true;
          for (Index i = 0; i < t.size(); ++i)
            if (abs(t(i)) > 4 * box + 16) return false;
          if (seen.count(t)) return false;
          seen.insert(t);
          for (const VecZ& g : gens) {
            VecZ r = t - g;
            if (s.contains(r) && decompose(r)) return true;
          }
          return false;
        };
        require(decompose(v), "box point is not an N-combination of the Hilbert basis");
      }
      Index i = 0;
      while (i < rank) {
        v(i) += 1;
        if (v(i) <= box) break;
        v(i) = -box;
        ++i;
      }
      if (i == rank) break;
    }
  }
}

void criterion9() {
  // diagonal example
  DecoratedFan xp = a1_fan(1);
  DecoratedFan xq = a1_fan(0);
  DecoratedFan y = a1_fan(1);
  MatZ id = MatZ::Identity(1, 1);
  DecoratedFanMorphism f1 = validate_morphism(xp, y, id, 1);
  DecoratedFanMorphism f2 = validate_morphism(xq, y, id, 1);
  FiberProductResult fp = fiber_product(f1, f2);
  require(fp.product.rank() == 1, "fiber lattice is not Z");
  require(fp.product.torus().c == c_single(1, {1}), "fiber parameter is not 1");
  Index chart = fp.product.index_of(Cone::from_rays(1, mat({{1}})));
  require(chart >= 0, "affine chart missing");
  require(exact_eq(fp.product.decoration(chart), MatZ(MatZ::Zero(1, 1))),
          "fiber decoration is not {0}");
  // commuting square
  DecoratedFanMorphism left = compose(f1, fp.proj1);
  DecoratedFanMorphism right = compose(f2, fp.proj2);
  require(exact_eq(left.phi, right.phi) && left.a == right.a, "square does not commute");
  // mediating morphisms over a small library of cospans
  {
    DecoratedFanMorphism med = mediating_morphism(fp, fp.proj1, fp.proj2);
    require(exact_eq(med.phi, id) && med.a == 1, "identity cospan does not mediate to id");
  }
  {
    DecoratedFan z = a1_fan(0, 4);
    DecoratedFanMorphism g1 = validate_morphism(z, xp, id, 2);
    DecoratedFanMorphism g2 = validate_morphism(z, xq, id, 2);
    DecoratedFanMorphism med = mediating_morphism(fp, g1, g2);
    require(med.a == 2, "mediating scalar wrong");
    require(exact_eq(compose(fp.proj1, med).phi, g1.phi) && compose(fp.proj1, med).a == g1.a,
            "first triangle broken");
    require(exact_eq(compose(fp.proj2, med).phi, g2.phi) && compose(fp.proj2, med).a == g2.a,
            "second triangle broken");
    for (long alt : {-2, 1, 3}) {
      bool commutes = false;
      try {
        DecoratedFanMorphism cand = validate_morphism(med.src, med.dst, med.phi, Rat(alt));
        commutes = compose(fp.proj1, cand).a == g1.a && compose(fp.proj2, cand).a == g2.a;
      } catch (const MorphismError&) {
      }
      require(!commutes, "mediating scalar is not unique");
    }
  }
  {
    // second library entry: both factors tight, mediated from a tight source
    DecoratedFan xp2 = a1_fan(1);
    DecoratedFanMorphism h1 = validate_morphism(xp, y, id, 1);
    DecoratedFanMorphism h2 = validate_morphism(xp2, y, id, 1);
    FiberProductResult fp2 = fiber_product(h1, h2);
    Index ch = fp2.product.index_of(Cone::from_rays(1, mat({{1}})));
    require(ch >= 0 && fp2.product.decoration(ch)(0, 0) == 1,
            "tight-by-tight fiber decoration is not {1}");
    DecoratedFan zt = a1_fan(1, 4);
    DecoratedFanMorphism g1 = validate_morphism(zt, xp, id, 2);
    DecoratedFanMorphism g2 = validate_morphism(zt, xp2, id, 2);
    DecoratedFanMorphism med = mediating_morphism(fp2, g1, g2);
    require(med.a == 2 && exact_eq(med.phi, id), "second cospan mediates wrongly");
    require(exact_eq(compose(fp2.proj1, med).phi, g1.phi) && compose(fp2.proj1, med).a == g1.a,
            "second cospan first triangle broken");
  }
  // a' = a'' = 0 is the unsupported case
  SupertorusDatum pt{0, CParam::zero(0)};
  DecoratedFan point = DecoratedFan::make(pt, {Cone::zero(0)}, {MatZ::Zero(1, 0)});
  DecoratedFanMorphism z1 = validate_morphism(xp, point, MatZ(0, 1), 0);
  DecoratedFanMorphism z2 = validate_morphism(xp, point, MatZ(0, 1), 0);
  bool threw = false;
  try {
    fiber_product(z1, z2);
  } catch (const FiberProductError&) {
    threw = true;
  }
  require(threw, "a' = a'' = 0 did not raise the dedicated error");
}

void criterion10() {
  DecoratedFan free = a1_fan(0);   // (N, 1, {0})
  DecoratedFan tight = a1_fan(1);  // (N, 1, {1})
  MatZ id = MatZ::Identity(1, 1);
  DecoratedFanMorphism f = validate_morphism(free, tight, id, 1);
  bool rejected = false;
  try {
    validate_morphism(tight, free, id, 1);
  } catch (const MorphismError& e) {
    rejected = e.kind == MorphismErrorKind::decoration_compatibility;
  }
  require(rejected, "reverse direction was not rejected");
  require(!is_isomorphism(f), "the accepted map is wrongly an isomorphism");
}

}  // namespace

int main() {
  run(1, "projective-superspace parameter constraint (n = 2, 3)", criterion1);
  run(2, "three intermediate ideals of the rank-2 module", criterion2);
  run(3, "stabilizer table for X^0, X^2, X^infty", criterion3);
  run(4, "the four Q(1) structures on the projective line", criterion4);
  run(5, "DS invariant of the rank-2 module", criterion5);
  run(6, "super toric ideal of the twisted-cubic data", criterion6);
  run(7, "localization property on 200 random decorated fans", criterion7);
  run(8, "duality and Hilbert-basis oracles on 200 random cones", criterion8);
  run(9, "fiber product: diagonal, universal property, unsupported case", criterion9);
  run(10, "non-isomorphism witness between the two affine-line structures", criterion10);
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 criteria passed\n";
  return 0;
}
