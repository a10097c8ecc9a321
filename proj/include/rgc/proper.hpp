#pragma once

// Finite groupoids are proper: counting-measure cutoff functions, the
// contraction homotopy on cochains with values in a Real representation,
// and the resulting vanishing of HR^n for n >= 1.

#include "rgc/coefficients.hpp"

#include <memory>

namespace rgc {

struct CutoffFunction {
    std::vector<Rational> values;  // per object
};

// c(x) = 1 / |G^x|.
CutoffFunction canonical_cutoff(const FiniteRealGroupoid& g);
// c(rho x) = c(x), c > 0, and sum over G^x of c(src g) = 1.
ValidationReport verify_cutoff(const FiniteRealGroupoid& g, const CutoffFunction& c);

// One value per nerve tuple; the value at (g_1, ..., g_n) lies in
// E_src(g_n), at an object x in E_x.
struct RepresentationCochain {
    std::size_t degree = 0;
    std::vector<RatVector> values;
};

// Cochains C^n(G, E) for n <= max_degree. The differential is
//   (df)(g_1..g_{n+1}) = sum_{i<=n} (-1)^i f(face_i) + (-1)^{n+1} A_{g_{n+1}}^{-1} f(g_1..g_n),
// so every value stays in the fiber over the source of the last arrow,
// and it reduces to the constant-coefficient differential for trivial A.
class RepresentationComplex {
public:
    RepresentationComplex(RealRepresentation e, std::size_t max_degree);

    const RealRepresentation& representation() const noexcept { return *e_; }
    const FiniteRealGroupoid& groupoid() const noexcept { return e_->base; }
    const Nerve& nerve() const noexcept { return *nerve_; }
    std::size_t max_degree() const noexcept { return nerve_->max_degree(); }
    // Dimension of C^n over Q.
    std::size_t dim(std::size_t n) const { return nerve_->level(n).size() * e_->rank(); }

    RepresentationCochain zero(std::size_t n) const;
    RatVector flatten(const RepresentationCochain& f) const;
    RepresentationCochain unflatten(std::size_t n, const RatVector& v) const;

    // f(rho g) = nu f(g) on every tuple.
    bool is_real(const RepresentationCochain& f) const;

    RepresentationCochain differential(const RepresentationCochain& f) const;
    // (h f)(g_1..g_m) = (-1)^{m+1} sum_{gamma in G^src(g_m)} c(src gamma) A_gamma f(g_1..g_m, gamma),
    // mapping degree m+1 to degree m (G^x for m = 0).
    RepresentationCochain contraction(const RepresentationCochain& f, const CutoffFunction& c) const;

    // dim(n+1) x dim(n).
    SparseRatMatrix differential_matrix(std::size_t n) const;
    // dim(n-1) x dim(n), n >= 1.
    SparseRatMatrix contraction_matrix(std::size_t n, const CutoffFunction& c) const;
    // Columns spanning the Real cochains of degree n.
    std::vector<RatVector> real_basis(std::size_t n) const;

private:
    std::shared_ptr<const RealRepresentation> e_;
    std::shared_ptr<const Nerve> nerve_;
};

// h d + d h = identity on C^n, compared as matrices.
bool homotopy_identity_holds(const RepresentationComplex& cx, std::size_t n, const CutoffFunction& c);

struct VanishingDegree {
    std::size_t degree = 0;
    std::size_t cochain_dim = 0;   // Real cochains of this degree
    std::size_t image_rank = 0;    // rank of d^{n-1}
    std::size_t kernel_dim = 0;    // dim ker d^n
    std::size_t cohomology_dim = 0;
};

struct VanishingReport {
    std::vector<VanishingDegree> degrees;  // n = 1..n_max
    bool all_zero = true;
};

// Ranks of the Real complex, HR^n(G, E) for 1 <= n <= n_max.
VanishingReport vanishing_check(const RealRepresentation& e, std::size_t n_max);
// Same ranks for the complex without reality constraint, i.e. H^n(G, E).
VanishingReport plain_vanishing_check(const RealRepresentation& e, std::size_t n_max);

// Trivial action and nu = tau on every fiber, for a rational S.
RealRepresentation constant_representation(const FiniteRealGroupoid& base, const RealCoefficientGroup& s);

// F = E + E with nu(e1, e2) = (e1, -e2) over a base with trivial rho, for a
// representation given only by its action matrices. The Real cochains of F
// are exactly the ordinary cochains of E.
RealRepresentation doubled_representation(const FiniteRealGroupoid& base, const std::vector<RatMatrix>& action);

}  // namespace rgc
