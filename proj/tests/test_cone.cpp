#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "oracles.hpp"
#include "superfan/cone.hpp"

using namespace superfan;
using oracle::mat;
using oracle::vec;

static Cone random_strongly_convex_cone(std::mt19937_64& rng, Index rank, long lim,
                                        int max_rays = 4) {
  std::uniform_int_distribution<long> d(-lim, lim);
  std::uniform_int_distribution<int> nr(1, max_rays);
  for (;;) {
    int k = nr(rng);
    MatZ rays(k, rank);
    for (int i = 0; i < k; ++i)
      for (Index j = 0; j < rank; ++j) rays(i, j) = d(rng);
    Cone c = Cone::from_rays(rank, rays);
    if (c.is_strongly_convex() && c.dim() > 0) return c;
  }
}

TEST_CASE("dual cone: self-dual orthant") {
  Cone orthant = Cone::from_rays(2, mat({{1, 0}, {0, 1}}));
  Cone d = dual_cone(orthant);
  CHECK(d == orthant);
}

TEST_CASE("dual cone: derived example checked against a box oracle") {
  Cone c = Cone::from_rays(2, mat({{1, 0}, {1, 2}}));
  Cone d = dual_cone(c);
  MatZ expect = mat({{0, 1}, {2, -1}});
  CHECK(exact_eq(d.rays(), sorted_unique_rows(expect)));
  // oracle: every vector in a box that pairs >= 0 with both rays must be a
  // nonnegative rational combination of the two dual rays
  for (const VecZ& m : oracle::box_vectors(2, 4)) {
    bool in_dual = m(0) >= 0 && m(0) + 2 * m(1) >= 0;
    if (!in_dual) continue;
    // m = a*(0,1) + b*(2,-1) with a,b >= 0
    Rat b = make_rat(m(0), 2);
    Rat a = Rat(m(1)) + b;
    CHECK(a >= 0);
    CHECK(b >= 0);
    CHECK(d.contains(m));
  }
}

TEST_CASE("dual cone: zero cone dualizes to the whole space") {
  Cone z = Cone::zero(2);
  CHECK(z.rays().rows() == 0);
  Cone d = dual_cone(z);
  CHECK(exact_eq(d.rays(), sorted_unique_rows(mat({{-1, 0}, {0, -1}, {0, 1}, {1, 0}}))));
  CHECK_FALSE(d.is_strongly_convex());
}

TEST_CASE("biduality on random cones") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 60; ++iter) {
    Cone c = random_strongly_convex_cone(rng, 3, 3);
    CHECK(dual_cone(dual_cone(c)) == c);
  }
}

TEST_CASE("faces of the orthant") {
  Cone orthant = Cone::from_rays(2, mat({{1, 0}, {0, 1}}));
  const auto& fs = orthant.faces();
  REQUIRE(fs.size() == 4);
  CHECK(fs[0].face->dim() == 0);
  CHECK(fs[3].face->dim() == 2);
  // cut vector for ray(e1) is e2*
  for (const auto& fd : fs) {
    if (fd.face->dim() == 1 && exact_eq(fd.face->rays(), mat({{1, 0}}))) {
      CHECK(exact_eq(fd.cut, vec({0, 1})));
    }
  }
}

TEST_CASE("faces of a single ray include a positive cut for the origin") {
  Cone r = Cone::from_rays(2, mat({{1, 1}}));
  const auto& fs = r.faces();
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].face->dim() == 0);
  Int p = dot(fs[0].cut, vec({1, 1}));
  CHECK(p > 0);
  CHECK(fs[1].face->dim() == 1);
}

TEST_CASE("zero cone has a single face") {
  Cone z = Cone::zero(2);
  CHECK(z.faces().size() == 1);
}

TEST_CASE("face cut separates exactly the face") {
  std::mt19937_64 rng(808);
  for (int iter = 0; iter < 40; ++iter) {
    Cone c = random_strongly_convex_cone(rng, 3, 3);
    for (const auto& fd : c.faces()) {
      for (Index r = 0; r < c.rays().rows(); ++r) {
        Int p = dot(c.rays().row(r), fd.cut);
        bool in_face = fd.face->contains(VecZ(c.rays().row(r).transpose()));
        CHECK(p >= 0);
        CHECK((in_face ? p == 0 : p > 0));
      }
    }
  }
}

TEST_CASE("face lattice closed under intersection") {
  std::mt19937_64 rng(909);
  for (int iter = 0; iter < 25; ++iter) {
    Cone c = random_strongly_convex_cone(rng, 3, 2);
    const auto& fs = c.faces();
    for (const auto& a : fs)
      for (const auto& b : fs) {
        Cone i = intersect(*a.face, *b.face);
        CHECK(c.has_face(i));
      }
  }
}

TEST_CASE("intersect: idempotent, common face, derived example") {
  Cone orthant = Cone::from_rays(2, mat({{1, 0}, {0, 1}}));
  CHECK(intersect(orthant, orthant) == orthant);

  Cone left = Cone::from_rays(2, mat({{0, 1}, {-1, 0}}));
  Cone ray_e2 = Cone::from_rays(2, mat({{0, 1}}));
  CHECK(intersect(orthant, left) == ray_e2);

  Cone a = Cone::from_rays(2, mat({{1, 0}, {1, 2}}));
  Cone b = Cone::from_rays(2, mat({{0, 1}, {2, 1}}));
  Cone expect = Cone::from_rays(2, mat({{1, 2}, {2, 1}}));
  Cone got = intersect(a, b);
  CHECK(got == expect);
  // membership oracle on a lattice sample
  for (const VecZ& v : oracle::box_vectors(2, 3)) {
    bool both = a.contains(v) && b.contains(v);
    CHECK(both == got.contains(v));
  }
}

TEST_CASE("intersect commutative and associative on random cones") {
  std::mt19937_64 rng(16180);
  for (int iter = 0; iter < 25; ++iter) {
    Cone a = random_strongly_convex_cone(rng, 3, 2);
    Cone b = random_strongly_convex_cone(rng, 3, 2);
    Cone c = random_strongly_convex_cone(rng, 3, 2);
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    CHECK(intersect(a, a) == a);
  }
}

TEST_CASE("is_strongly_convex") {
  CHECK(is_strongly_convex(Cone::from_rays(2, mat({{1, 0}, {0, 1}}))));
  CHECK_FALSE(is_strongly_convex(Cone::from_rays(2, mat({{1, 0}, {-1, 0}}))));
  CHECK_FALSE(is_strongly_convex(Cone::from_rays(2, mat({{1, 0}, {-1, 1}, {0, -1}}))));
}

TEST_CASE("is_smooth_cone") {
  CHECK(is_smooth_cone(Cone::from_rays(2, mat({{1, 0}, {0, 1}}))));
  Cone c = Cone::from_rays(2, mat({{1, 0}, {1, 2}}));
  // SNF oracle: elementary divisors of the ray matrix are (1, 2)
  SmithForm sf = smith_normal_form(c.rays());
  REQUIRE(sf.rank == 2);
  CHECK(sf.D(0, 0) == 1);
  CHECK(sf.D(1, 1) == 2);
  CHECK_FALSE(is_smooth_cone(c));
  CHECK(is_smooth_cone(Cone::from_rays(2, mat({{1, 1}}))));
}

TEST_CASE("contains") {
  Cone orthant = Cone::from_rays(2, mat({{1, 0}, {0, 1}}));
  CHECK(orthant.contains(vec({1, 1})));
  CHECK_FALSE(orthant.contains(vec({-1, 0})));
  Cone c = Cone::from_rays(2, mat({{1, 0}, {1, 2}}));
  CHECK(c.contains(vec({1, 1})));
  CHECK_THROWS_AS(orthant.contains(vec({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("facet enumeration agrees with a primitive-normal box scan") {
  std::mt19937_64 rng(271828);
  for (int iter = 0; iter < 15; ++iter) {
    Cone c = random_strongly_convex_cone(rng, 2, 3);
    if (c.dim() < 2) continue;
    std::set<VecZ, LexLess> expect;
    for (const VecZ& m : oracle::box_vectors(2, 6)) {
      if (content(m) == 0 || !exact_eq(m, primitive(m))) continue;
      VecZ p = c.rays() * m;
      bool valid = true, tight = false;
      for (Index i = 0; i < p.size(); ++i) {
        if (p(i) < 0) valid = false;
        if (p(i) == 0) tight = true;
      }
      if (valid && tight) expect.insert(m);
    }
    const MatZ& f = c.facets();
    for (Index i = 0; i < f.rows(); ++i) CHECK(expect.count(VecZ(f.row(i).transpose())));
  }
}
