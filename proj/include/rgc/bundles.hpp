#pragma once

// Real S-principal bundles over the objects of a finite Real groupoid with
// a commuting groupoid action, kept in trivialized form X x S and driven by
// a Real 1-cocycle c: g . (src g, t) = (tgt g, c(g) + t).

#include "rgc/cochain.hpp"

#include <memory>

namespace rgc {

class BundleSpace {
public:
    BundleSpace(FiniteRealGroupoid base, RealCoefficientGroup s);

    const FiniteRealGroupoid& base() const noexcept { return complex_.groupoid(); }
    const RealCoefficientGroup& coefficients() const noexcept { return complex_.coefficients(); }
    const RealCochainComplex& complex() const noexcept { return complex_; }
    const CohomologyGroup& cohomology() const noexcept { return h1_; }

private:
    RealCochainComplex complex_;
    CohomologyGroup h1_;
};

std::shared_ptr<const BundleSpace> make_bundle_space(const FiniteRealGroupoid& base, const RealCoefficientGroup& s);

struct RealPrincipalBundle {
    std::shared_ptr<const BundleSpace> space;
    RealCochain cocycle;
};

// Throws Error(not_a_cocycle) with a witness pair when dc != 0.
RealPrincipalBundle bundle_from_cocycle(std::shared_ptr<const BundleSpace> space, RealCochain c);
RealPrincipalBundle trivial_bundle(std::shared_ptr<const BundleSpace> space);

// Points z = x * |S| + t (S finite).
struct MaterializedBundle {
    std::size_t fiber_size = 0;
    std::vector<Index> anchor;      // z -> x
    std::vector<Index> involution;  // z -> tau(z)
    std::vector<Index> s_action;    // s_action[t * points + z] = t . z
    std::vector<Index> g_action;    // g_action[g * fiber_size + k] = g . (k-th point over src g)

    std::size_t points() const noexcept { return anchor.size(); }
    // g . z for z over src g.
    Index act(Index g, Index z) const { return g_action[g * fiber_size + z % fiber_size]; }
};

MaterializedBundle materialize(const RealPrincipalBundle& b);

// Left Real action axioms: tau(g z) = rho(g) tau(z), anchor(tau z) =
// rho(anchor z), anchor(g z) = tgt g, (gh) z = g (h z), units act
// trivially; plus a free, fiberwise transitive S-action commuting with G
// and intertwined with tau by the coefficient involution.
ValidationReport verify_bundle(const BundleSpace& space, const MaterializedBundle& m);

// Cocycle of a materialized bundle relative to a Real section of the
// anchor; throws Error(obstruction) if a fixed object has no fixed point.
RealCochain extract_bundle_cocycle(const BundleSpace& space, const MaterializedBundle& m);

RealPrincipalBundle bundle_sum(const RealPrincipalBundle& a, const RealPrincipalBundle& b);
RealPrincipalBundle bundle_inverse(const RealPrincipalBundle& a);

struct BundleIsomorphism {
    bool isomorphic = false;
    std::vector<Index> map;  // point of the first bundle -> point of the second (finite S)
    std::optional<RealCochain> primitive;
};

// c1 - c2 = db; the witness is (x, t) -> (x, t + b(x)).
BundleIsomorphism bundles_isomorphic(const RealPrincipalBundle& a, const RealPrincipalBundle& b);
// Backtracking over fiberwise bijections of the materialized bundles.
BundleIsomorphism bundles_isomorphic_search(const RealPrincipalBundle& a, const RealPrincipalBundle& b);
// Checks that a point map is an isomorphism of Real S-principal G-bundles.
bool is_bundle_isomorphism(const BundleSpace& space, const MaterializedBundle& a, const MaterializedBundle& b,
                           const std::vector<Index>& map);

// One bundle per class of HR^1(G, S); S finite.
std::vector<RealPrincipalBundle> classify_bundles(std::shared_ptr<const BundleSpace> space);
// Coordinates of the class of a bundle in HR^1.
IntVector bundle_class(const RealPrincipalBundle& b);

}  // namespace rgc
