#pragma once

// Maps induced on HR^n by coefficient morphisms, the connecting map of a
// short exact sequence of Real coefficient groups, and exactness of the
// resulting long sequence.

#include "rgc/cochain.hpp"

#include <string>

namespace rgc {

// 0 -> sub -inclusion-> total -projection-> quotient -> 0
struct RealShortExactSequence {
    RealCoefficientGroup sub;
    RealCoefficientGroup total;
    RealCoefficientGroup quotient;
    CoefficientMorphism inclusion;
    CoefficientMorphism projection;
};

ValidationReport check_sequence(const RealShortExactSequence& seq);

// Homomorphism between computed cohomology groups: images[j] holds the
// target coordinates of the j-th source generator.
struct CohomologyHom {
    std::vector<IntVector> images;
};

// Pointwise f_* on cochains.
RealCochain push_forward(const RealCochainComplex& from, const RealCochainComplex& to, const CoefficientMorphism& f,
                         const RealCochain& c);

CohomologyHom induced_map(const RealCochainComplex& from, const CohomologyGroup& h_from, const RealCochainComplex& to,
                          const CohomologyGroup& h_to, const CoefficientMorphism& f);

// Image of a homomorphism as a subgroup of the target coordinates (with the
// target's relations), and kernel as a subgroup of the source coordinates.
Lattice image_lattice(const CohomologyHom& h, const CohomologyGroup& target);
Lattice kernel_lattice(const CohomologyHom& h, const CohomologyGroup& source, const CohomologyGroup& target);
Lattice zero_lattice(const CohomologyGroup& g);

class LongExactSequence {
public:
    // HR^n of the three groups for n <= top_degree, plus HR^{top+1}(sub) as
    // the target of the last connecting map.
    LongExactSequence(FiniteRealGroupoid g, RealShortExactSequence seq, std::size_t top_degree);

    std::size_t top_degree() const noexcept { return top_; }
    const RealShortExactSequence& sequence() const noexcept { return seq_; }
    const RealCochainComplex& sub_complex() const noexcept { return a_; }
    const RealCochainComplex& total_complex() const noexcept { return b_; }
    const RealCochainComplex& quotient_complex() const noexcept { return c_; }

    const CohomologyGroup& sub_group(std::size_t n) const { return ha_.at(n); }
    const CohomologyGroup& total_group(std::size_t n) const { return hb_.at(n); }
    const CohomologyGroup& quotient_group(std::size_t n) const { return hc_.at(n); }

    const CohomologyHom& inclusion_map(std::size_t n) const { return i_.at(n); }
    const CohomologyHom& projection_map(std::size_t n) const { return p_.at(n); }
    // HR^n(quotient) -> HR^{n+1}(sub).
    const CohomologyHom& connecting_map(std::size_t n) const { return delta_.at(n); }

    // A Real lift of a quotient-valued cochain to total-valued values;
    // fixed tuples are lifted inside fixed(total). Throws Error(obstruction)
    // when a fixed value has no fixed preimage.
    RealCochain lift(const RealCochain& z) const;
    // The sub-valued cochain x with inclusion(x) = d(y) for a lift y of a cocycle.
    RealCochain connecting_cochain(const RealCochain& z, const RealCochain& y) const;

    struct Slot {
        std::string label;  // e.g. "HR^1(total)"
        bool exact = false;
    };
    // Exactness at HR^n(sub), HR^n(total), HR^n(quotient) for n <= top_degree.
    std::vector<Slot> exactness() const;

private:
    std::size_t top_;
    RealShortExactSequence seq_;
    RealCochainComplex a_, b_, c_;
    std::vector<CohomologyGroup> ha_, hb_, hc_;
    std::vector<CohomologyHom> i_, p_, delta_;
};

}  // namespace rgc
