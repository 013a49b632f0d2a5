#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "superfan/lattice.hpp"

namespace superfan {

class Cone;

// tau = {u in sigma : <cut, u> = 0}, with cut in the dual cone.
struct FaceDescriptor {
  Cone* owner = nullptr;  // set by Cone::faces
  std::shared_ptr<const Cone> face;
  VecZ cut;
};

// Rational polyhedral cone with canonical V- and H-descriptions. Generators
// ("rays") are rows of an integer matrix: primitive extreme rays of the
// pointed part plus +/- a basis of the lineality space, lex-sorted, so equal
// cones compare equal. The H-description (rows pairing nonnegatively against
// the cone) is the canonical generator list of the dual cone, computed lazily
// and cached once.
class Cone {
 public:
  static Cone from_rays(Index ambient, const Eigen::Ref<const MatZ>& ray_rows);
  static Cone from_inequalities(Index ambient, const Eigen::Ref<const MatZ>& ineq_rows);
  static Cone zero(Index ambient) { return from_rays(ambient, MatZ(0, ambient)); }

  Index ambient_rank() const { return ambient_; }
  const MatZ& rays() const { return rays_; }
  const MatZ& facets() const;

  Index dim() const;
  bool is_strongly_convex() const;
  // rays extend to a Z-basis; requires strong convexity
  bool is_smooth() const;
  bool contains(const Eigen::Ref<const VecQ>& v) const;
  bool contains(const Eigen::Ref<const VecZ>& v) const;
  bool contains_in_relative_interior(const Eigen::Ref<const VecZ>& v) const;

  Cone dual() const;

  // All faces, including {0} and the cone itself; requires strong convexity.
  const std::vector<FaceDescriptor>& faces() const;
  bool has_face(const Cone& tau) const;
  // m_{sigma,tau}: zero on tau, positive on sigma minus tau.
  VecZ face_cut(const Cone& tau) const;

  bool operator==(const Cone& o) const {
    return ambient_ == o.ambient_ && exact_eq(rays_, o.rays_);
  }
  bool operator!=(const Cone& o) const { return !(*this == o); }

 private:
  Cone(Index ambient, MatZ rays) : ambient_(ambient), rays_(std::move(rays)), cache_(std::make_shared<Cache>()) {}

  Index ambient_;
  MatZ rays_;
  struct Cache {
    std::once_flag facets_once;
    MatZ facets;
    std::once_flag faces_once;
    std::vector<FaceDescriptor> faces;
  };
  std::shared_ptr<Cache> cache_;
};

// Canonical generator rows of {u : ineq * u >= 0}: extreme rays of the
// pointed part plus +/- the HNF basis of the lineality space.
MatZ cone_generators(Index ambient, const Eigen::Ref<const MatZ>& ineq_rows);

Cone dual_cone(const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
bool is_strongly_convex(const Cone& c);
bool is_smooth_cone(const Cone& c);

bool lex_less_cone(const Cone& a, const Cone& b);

}  // namespace superfan
