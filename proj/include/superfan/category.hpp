#pragma once

#include "superfan/decorated_fan.hpp"

namespace superfan {

struct DecoratedFanMorphism {
  DecoratedFan src, dst;
  MatZ phi;
  Rat a;
};

// Checks, in order: the supertorus c-equation, fan compatibility (every cone
// maps into some target cone), and, when a != 0, decoration compatibility
// against the minimal target cone. Throws MorphismError with the failing
// clause's kind.
DecoratedFanMorphism validate_morphism(const DecoratedFan& src, const DecoratedFan& dst,
                                       const MatZ& phi, const Rat& a);

DecoratedFanMorphism compose(const DecoratedFanMorphism& g, const DecoratedFanMorphism& f);

// phi unimodular, a != 0, and the inverse data validates backwards.
bool is_isomorphism(const DecoratedFanMorphism& f);

// phi*(S') inside S on Hilbert generators, and a = 0 or phi*(J') inside J.
bool affine_extension_check(const SupertorusMorphism& t, const AffineSemigroup& s, const SIdeal& j,
                            const AffineSemigroup& s_prime, const SIdeal& j_prime);

struct FiberProductResult {
  DecoratedFan product;
  DecoratedFanMorphism proj1;  // product -> f1.src, scalar a''
  DecoratedFanMorphism proj2;  // product -> f2.src, scalar a'
};

// Pullback of f1: X' -> Y against f2: X'' -> Y. Throws FiberProductError when
// a' = a'' = 0, where the construction is not defined.
FiberProductResult fiber_product(const DecoratedFanMorphism& f1, const DecoratedFanMorphism& f2);

// The mediating morphism Z -> product for a commuting cospan g1: Z -> X',
// g2: Z -> X''.
DecoratedFanMorphism mediating_morphism(const FiberProductResult& fp,
                                        const DecoratedFanMorphism& g1,
                                        const DecoratedFanMorphism& g2);

}  // namespace superfan
