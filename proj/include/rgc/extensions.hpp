#pragma once

// Real graded S-twists over a finite Real groupoid, stored as a pair
// (omega, delta): a normalized Real 2-cocycle with values in S and a Real
// 1-cocycle with values in Z/2 (trivial involution).
//
// Sign convention: a section s of an extension determines omega through
//   s(g1) s(g2) = omega(g1, g2) . s(g1 g2),
// which matches the product law (t1, g1)(t2, g2) = (t1 + t2 + omega(g1, g2), g1 g2),
// so extracting the canonical section of a built extension returns omega.

#include "rgc/cochain.hpp"

#include <memory>

namespace rgc {

// The complexes and cohomology groups shared by all twists over a fixed
// base and coefficient group.
class TwistSpace {
public:
    TwistSpace(FiniteRealGroupoid base, RealCoefficientGroup s);

    const FiniteRealGroupoid& base() const noexcept { return omega_complex_.groupoid(); }
    const RealCoefficientGroup& coefficients() const noexcept { return omega_complex_.coefficients(); }
    const RealCochainComplex& omega_complex() const noexcept { return omega_complex_; }
    const RealCochainComplex& grading_complex() const noexcept { return grading_complex_; }
    const CohomologyGroup& omega_cohomology() const noexcept { return h2_; }
    const CohomologyGroup& grading_cohomology() const noexcept { return h1_; }

    // omega at the composable pair (g1, g2) and delta at an arrow.
    IntVector omega_at(const RealCochain& omega, Index g1, Index g2) const;
    int delta_at(const RealCochain& delta, Index g) const;

    // Real 2-cochain with the given value on every composable pair; the
    // callback must respect the reality constraint.
    template <class F>
    RealCochain omega_from(F&& f) const
    {
        const auto& level = omega_complex_.nerve().level(2);
        const auto& b = omega_complex_.basis(2);
        RealCochain c = omega_complex_.zero(2);
        for (std::size_t o = 0; o < b.reps.size(); ++o) {
            auto t = level.tuple(b.reps[o]);
            c.values[o] = coefficients().reduce(f(t[0], t[1]));
        }
        return c;
    }
    RealCochain delta_from(const std::vector<int>& per_arrow) const;

private:
    RealCochainComplex omega_complex_;
    RealCochainComplex grading_complex_;
    CohomologyGroup h2_;
    CohomologyGroup h1_;
};

struct GradedTwist {
    std::shared_ptr<const TwistSpace> space;
    RealCochain omega;
    RealCochain delta;
};

std::shared_ptr<const TwistSpace> make_twist_space(const FiniteRealGroupoid& base, const RealCoefficientGroup& s);

GradedTwist trivial_twist(std::shared_ptr<const TwistSpace> space);
// Validates (dω = 0, dδ = 0, reality) and normalizes omega.
GradedTwist make_twist(std::shared_ptr<const TwistSpace> space, RealCochain omega, RealCochain delta);

// Checks without throwing; the axiom names are "omega not a cocycle",
// "delta not a cocycle", "omega not Real", "omega not normalized".
ValidationReport validate_twist(const GradedTwist& t);

// omega - db with b(unit x) = omega(unit x, unit x): vanishes on unit arguments.
RealCochain normalize_cocycle(const TwistSpace& space, const RealCochain& omega);

// Coordinates of the (delta, omega) classes in the two cohomology groups.
struct DDClass {
    IntVector grading;
    IntVector cocycle;

    friend bool operator==(const DDClass&, const DDClass&) = default;
};

DDClass dd_class(const GradedTwist& t);
IntVector grading_class(const GradedTwist& t);
IntVector cocycle_class(const TwistSpace& space, const RealCochain& omega);
bool same_class(const GradedTwist& a, const GradedTwist& b);

// omega1 + omega2 + kappa delta2(g1) delta1(g2), delta1 + delta2.
GradedTwist baer_sum(const GradedTwist& a, const GradedTwist& b);
// -omega + kappa delta(g1) delta(g2).
GradedTwist opposite(const GradedTwist& t);

// kappa delta(g1) delta'(g2).
RealCochain cup_cochain(const TwistSpace& space, const RealCochain& delta, const RealCochain& delta_prime);
IntVector cup(const TwistSpace& space, const RealCochain& delta, const RealCochain& delta_prime);

// (a + b, x + y + a ⌣ b) on classes, computed through representatives.
DDClass semidirect_sum(const TwistSpace& space, const GradedTwist& a, const GradedTwist& b);

// ---- materialized extensions ----

// A groupoid E over the base (same objects) with a projection and a free,
// fiberwise transitive S-action; arrows of built extensions are indexed
// g * |S| + t.
struct ExtensionGroupoid {
    FiniteRealGroupoid total;
    std::vector<Index> projection;   // arrow of E -> arrow of the base
    std::vector<Index> action;       // action[t * |E| + e] = t . e
    std::size_t fiber_size = 0;
};

// Throws Error(not_a_cocycle) naming a triple where dω does not vanish.
ExtensionGroupoid build_extension(const TwistSpace& space, const RealCochain& omega);
// The unvalidated groupoid data of the product law, for any Real 2-cochain.
GroupoidData extension_data(const TwistSpace& space, const RealCochain& omega);

// Axioms: projection a strict Real morphism that is the identity on
// objects, the action free and transitive on fibers, central, and Real.
ValidationReport validate_extension(const TwistSpace& space, const ExtensionGroupoid& e);

// A globally Real section, searching each rho-fixed arrow's fiber for a
// fixed point; throws Error(obstruction) when a fiber has none.
std::vector<Index> real_section(const TwistSpace& space, const ExtensionGroupoid& e);

// Cocycle of the extension relative to a Real section (the canonical one
// when none is given).
RealCochain extract_cocycle(const TwistSpace& space, const ExtensionGroupoid& e,
                            const std::vector<Index>* section = nullptr);

struct TrivialityResult {
    bool trivial = false;
    // Real strict homomorphism base -> build_extension(omega), per base arrow.
    std::vector<Index> section;
    std::string reason;
};

TrivialityResult is_strictly_trivial(const GradedTwist& t);

// Base with trivial involution and S = mu(m)_conj, m even.
struct TrivialInvolutionCount {
    GroupInvariants grading;    // HR^1(base, Z/2)
    GroupInvariants cocycles;   // HR^2(base, mu(m)_conj)
    GroupInvariants reference;  // H^2(base, Z/2)
    Integer classes;            // |grading| * |cocycles|
    bool consistent = false;    // cocycles == reference
};

TrivialInvolutionCount ext_triv_involution_count(const FiniteRealGroupoid& base, unsigned long m);

}  // namespace rgc
