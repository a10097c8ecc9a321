#pragma once

// Coefficient groups with an involution: Z^r + Z/d_1 + ... + Z/d_t with an
// integer matrix tau acting on the ambient coordinates, or Q^n with a
// rational involution. Also Real representations of finite groupoids.

#include "rgc/groupoid.hpp"
#include "rgc/linalg.hpp"

#include <optional>
#include <string>

namespace rgc {

enum class CoefficientMode { integral, rational };

class RealCoefficientGroup {
public:
    RealCoefficientGroup() = default;

    // Ambient coordinates: free_rank free ones followed by one per torsion
    // factor. torsion must be a divisibility chain of integers >= 2. kappa
    // is the designated element of order <= 2 used for grading signs.
    static RealCoefficientGroup integral(std::size_t free_rank, std::vector<Integer> torsion, IntMatrix tau,
                                         std::optional<IntVector> kappa = std::nullopt);
    static RealCoefficientGroup rational(RatMatrix tau);

    CoefficientMode mode() const noexcept { return mode_; }
    bool is_rational() const noexcept { return mode_ == CoefficientMode::rational; }
    std::size_t free_rank() const noexcept { return free_rank_; }
    const std::vector<Integer>& torsion() const noexcept { return torsion_; }
    std::size_t dim() const noexcept { return free_rank_ + torsion_.size(); }
    // Per ambient coordinate: 0 for free coordinates, d_i for torsion ones.
    const std::vector<Integer>& moduli() const noexcept { return moduli_; }
    const IntMatrix& tau() const noexcept { return tau_; }
    const RatMatrix& tau_rational() const noexcept { return tau_q_; }
    const std::optional<IntVector>& kappa() const noexcept { return kappa_; }

    GroupInvariants invariants() const;
    bool involution_trivial() const;

    // Finite groups only: elements enumerated in mixed radix, first
    // coordinate fastest.
    bool is_finite() const noexcept { return !is_rational() && free_rank_ == 0; }
    Integer element_count() const;
    IntVector element(std::size_t index) const;
    std::size_t element_index(const IntVector& v) const;

    // Arithmetic on reduced ambient vectors (integral mode).
    IntVector reduce(IntVector v) const;
    IntVector add(const IntVector& a, const IntVector& b) const;
    IntVector negate(const IntVector& a) const;
    IntVector scale(const Integer& k, const IntVector& a) const;
    IntVector apply_tau(const IntVector& a) const;
    bool equal(const IntVector& a, const IntVector& b) const;
    bool is_fixed(const IntVector& a) const;

    // Lattices in ambient coordinates (relations included).
    Lattice relation_lattice() const;
    Lattice fixed_lattice() const;
    Lattice imaginary_lattice() const;

    friend bool operator==(const RealCoefficientGroup& a, const RealCoefficientGroup& b);

private:
    CoefficientMode mode_ = CoefficientMode::integral;
    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
    std::vector<Integer> moduli_;
    IntMatrix tau_;
    RatMatrix tau_q_;
    std::optional<IntVector> kappa_;
};

// Named instances: Z2_trivial, Z_trivial, Z_sign, mu(m)_conj, mu(m)_trivial
// (also spelled mu4_conj), Q(p,q).
RealCoefficientGroup make_standard(const std::string& name);

// A subgroup given as a group with trivial involution and the matrix of its
// inclusion into the ambient coordinates of S (one column per generator).
struct Subgroup {
    RealCoefficientGroup group;
    IntMatrix inclusion;  // integral mode
    RatMatrix inclusion_rational;  // rational mode
};

// {s : tau(s) = s} and {s : tau(s) = -s}.
Subgroup fixed_subgroup(const RealCoefficientGroup& s);
Subgroup imaginary_subgroup(const RealCoefficientGroup& s);

// Element of S ⊗ Z[1/2]: free coordinates are numerator / 2^exponent,
// torsion coordinates are taken modulo the odd part of their order.
struct LocalizedElement {
    IntVector numerator;
    unsigned exponent = 0;
};

struct HalfLocalization {
    GroupInvariants whole;      // S ⊗ Z[1/2]; invariant factors are odd
    GroupInvariants real;       // fixed part ⊗ Z[1/2]
    GroupInvariants imaginary;  // imaginary part ⊗ Z[1/2]
    bool splits = false;        // whole == real + imaginary
};

// Invariants of G ⊗ Z[1/2] for G with the given invariants: the free rank
// is kept (as a Z[1/2]-rank) and torsion loses its 2-primary part.
GroupInvariants localize_at_two(const GroupInvariants& g);

HalfLocalization half_localized_decomposition(const RealCoefficientGroup& s);

// s = (s + tau s)/2 + (s - tau s)/2 in S ⊗ Z[1/2]; returns the two parts.
std::pair<LocalizedElement, LocalizedElement> split_element(const RealCoefficientGroup& s, const IntVector& v);
// Image of an ambient vector in S ⊗ Z[1/2], normalized.
LocalizedElement localize(const RealCoefficientGroup& s, const IntVector& v);
LocalizedElement localized_tau(const RealCoefficientGroup& s, const LocalizedElement& e);
LocalizedElement localized_add(const RealCoefficientGroup& s, const LocalizedElement& a, const LocalizedElement& b);
bool localized_equal(const RealCoefficientGroup& s, const LocalizedElement& a, const LocalizedElement& b);

// Homomorphism of coefficient groups given on ambient coordinates.
struct CoefficientMorphism {
    IntMatrix matrix;  // target.dim() x source.dim()
};

// Well defined (relations to relations) and tau-equivariant.
ValidationReport check_morphism(const RealCoefficientGroup& from, const RealCoefficientGroup& to,
                                const CoefficientMorphism& f);

// 0 -> A -i-> B -p-> C -> 0 is exact and both maps are Real morphisms.
ValidationReport check_short_exact(const RealCoefficientGroup& a, const RealCoefficientGroup& b,
                                   const RealCoefficientGroup& c, const CoefficientMorphism& i,
                                   const CoefficientMorphism& p);

// ---- Real representations ----

struct RealRepresentation {
    FiniteRealGroupoid base;
    std::size_t p = 0;
    std::size_t q = 0;
    std::vector<RatMatrix> action;  // A_g : E_src(g) -> E_tgt(g), per arrow
    std::vector<RatMatrix> nu;      // nu_x : E_x -> E_rho(x), per object

    std::size_t rank() const noexcept { return p + q; }
};

// Identity action and nu = diag(1_p, -1_q) on every fiber.
RealRepresentation trivial_representation(const FiniteRealGroupoid& base, std::size_t p, std::size_t q);

ValidationReport validate_representation(const RealRepresentation& e);

}  // namespace rgc
