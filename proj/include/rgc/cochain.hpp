#pragma once

// Real cochain complexes of finite Real groupoids and their cohomology.
//
// A degree-n cochain stores one coefficient vector per involution orbit of
// nerve tuples (at the smaller tuple index); its value at the partner tuple
// is tau of the stored value. Cochains are flattened to "ambient" vectors of
// length orbits * dim(S), and every linear-algebra computation happens in
// these ambient coordinates, with the torsion relations of S as per
// coordinate moduli and the condition "value at a fixed tuple is fixed by
// tau" as extra constraint rows.

#include "rgc/coefficients.hpp"
#include "rgc/groupoid.hpp"
#include "rgc/linalg.hpp"

#include <memory>
#include <optional>

namespace rgc {

struct CochainBasis {
    std::size_t degree = 0;
    std::vector<std::size_t> reps;      // tuple index of each orbit representative
    std::vector<char> fixed;            // per orbit: tuple fixed by rho
    std::vector<std::size_t> orbit_of;  // per tuple: its orbit
};

CochainBasis cochain_basis(const NerveLevel& level);

// One level of a complex in ambient coordinates.
struct IntegralLevel {
    std::size_t dim = 0;
    std::vector<Integer> moduli;
    SparseIntMatrix constraints;  // rows must vanish modulo constraint_moduli
    std::vector<Integer> constraint_moduli;
};

struct RationalLevel {
    std::size_t dim = 0;
    SparseRatMatrix constraints;  // rows must vanish
};

// Generators of the cochain group of a level (relations included).
std::vector<IntVector> level_generators(const IntegralLevel& level);
std::vector<RatVector> level_basis(const RationalLevel& level);

class CohomologyGroup {
public:
    CohomologyGroup() = default;

    std::size_t degree() const noexcept { return degree_; }
    bool is_rational() const noexcept { return is_rational_; }
    // For rational groups free_rank is the dimension.
    const GroupInvariants& invariants() const noexcept { return invariants_; }
    bool is_zero() const noexcept { return invariants_.is_trivial(); }

    // Representative cocycles, torsion generators first.
    const std::vector<IntVector>& generators() const noexcept { return presentation_.generators(); }
    const std::vector<Integer>& orders() const noexcept { return presentation_.orders(); }
    const std::vector<RatVector>& rational_generators() const noexcept { return quotient_.generators(); }

    // Coordinates of the class of a Real cochain; nullopt if it is not a cocycle.
    std::optional<IntVector> classify(const IntVector& ambient) const { return presentation_.classify(ambient); }
    std::optional<RatVector> classify(const RatVector& ambient) const { return quotient_.classify(ambient); }
    IntVector lift(const IntVector& coordinates) const { return presentation_.lift(coordinates); }

    // Rational diagnostics: dimension of the cocycle space and of the coboundaries.
    std::size_t kernel_rank() const noexcept { return kernel_rank_; }
    std::size_t image_rank() const noexcept { return image_rank_; }

    static CohomologyGroup integral(std::size_t degree, const IntegralLevel* prev, const SparseIntMatrix* d_prev,
                                    const IntegralLevel& cur, const SparseIntMatrix& d_cur,
                                    const IntegralLevel& next);
    static CohomologyGroup rational(std::size_t degree, const RationalLevel* prev, const SparseRatMatrix* d_prev,
                                    const RationalLevel& cur, const SparseRatMatrix& d_cur);

private:
    std::size_t degree_ = 0;
    bool is_rational_ = false;
    GroupInvariants invariants_;
    AbelianGroupPresentation presentation_;
    VectorSpaceQuotient quotient_;
    std::size_t kernel_rank_ = 0;
    std::size_t image_rank_ = 0;
};

struct RealCochain {
    std::size_t degree = 0;
    std::vector<IntVector> values;  // one per orbit, in basis order
};

class RealCochainComplex {
public:
    // Nerve levels 0..max_degree; cohomology is available below max_degree.
    RealCochainComplex(FiniteRealGroupoid g, RealCoefficientGroup s, std::size_t max_degree);

    const FiniteRealGroupoid& groupoid() const noexcept { return *g_; }
    const RealCoefficientGroup& coefficients() const noexcept { return s_; }
    const Nerve& nerve() const noexcept { return *nerve_; }
    std::size_t max_degree() const noexcept { return nerve_->max_degree(); }
    const CochainBasis& basis(std::size_t n) const { return bases_.at(n); }

    // S^(#free orbits) + fixed(S)^(#fixed tuples), as canonical invariants.
    GroupInvariants cochain_group(std::size_t n) const;

    std::size_t ambient_dim(std::size_t n) const { return basis(n).reps.size() * s_.dim(); }
    IntegralLevel integral_level(std::size_t n) const;
    RationalLevel rational_level(std::size_t n) const;
    // Matrix of d : C^n -> C^(n+1) in ambient coordinates.
    SparseIntMatrix differential(std::size_t n) const;
    SparseRatMatrix rational_differential(std::size_t n) const;

    RealCochain zero(std::size_t n) const;
    IntVector flatten(const RealCochain& c) const;
    RealCochain unflatten(std::size_t n, const IntVector& v) const;
    // Value at any tuple of the level (tau applied for non-representatives).
    IntVector value_at(const RealCochain& c, std::size_t tuple) const;
    // Values at fixed tuples lie in the fixed subgroup.
    bool is_real(const RealCochain& c) const;
    // Pointwise alternating sum of face pullbacks.
    RealCochain apply_differential(const RealCochain& c) const;

    bool is_cocycle(const RealCochain& c) const;
    // A primitive b with db = c, if any.
    std::optional<RealCochain> coboundary_witness(const RealCochain& c) const;
    bool is_coboundary(const RealCochain& c) const { return coboundary_witness(c).has_value(); }

    CohomologyGroup cohomology(std::size_t n) const;

private:
    void check_cochain(const RealCochain& c) const;

    std::shared_ptr<const FiniteRealGroupoid> g_;
    RealCoefficientGroup s_;
    std::shared_ptr<const Nerve> nerve_;
    std::vector<CochainBasis> bases_;
};

CohomologyGroup cohomology(const FiniteRealGroupoid& g, const RealCoefficientGroup& s, std::size_t n);

// Sections s: X -> S with s(rho x) = tau s(x), constant along arrows,
// computed from connected components (independent of the cochain engine).
GroupInvariants invariant_sections(const FiniteRealGroupoid& g, const RealCoefficientGroup& s);

}  // namespace rgc
