#include "rgc/cochain.hpp"

#include <numeric>

namespace rgc {

namespace {

Lattice relations_of(const std::vector<Integer>& moduli)
{
    std::vector<IntVector> rel;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] > 0) {
            IntVector v(moduli.size());
            v[i] = moduli[i];
            rel.push_back(std::move(v));
        }
    return Lattice::span(std::move(rel), moduli.size());
}

std::vector<Integer> concat(std::vector<Integer> a, const std::vector<Integer>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

CochainBasis cochain_basis(const NerveLevel& level)
{
    CochainBasis b;
    b.degree = level.degree;
    b.orbit_of.assign(level.size(), 0);
    for (std::size_t t = 0; t < level.size(); ++t) {
        if (level.rho[t] < t) {
            b.orbit_of[t] = b.orbit_of[level.rho[t]];
            continue;
        }
        b.orbit_of[t] = b.reps.size();
        b.reps.push_back(t);
        b.fixed.push_back(level.rho[t] == t ? 1 : 0);
    }
    return b;
}

std::vector<IntVector> level_generators(const IntegralLevel& level)
{
    Lattice rel = relations_of(level.moduli);
    return kernel_mod(level.constraints, level.constraint_moduli, &rel);
}

std::vector<RatVector> level_basis(const RationalLevel& level) { return nullspace(level.constraints); }

CohomologyGroup CohomologyGroup::integral(std::size_t degree, const IntegralLevel* prev, const SparseIntMatrix* d_prev,
                                          const IntegralLevel& cur, const SparseIntMatrix& d_cur,
                                          const IntegralLevel& next)
{
    CohomologyGroup h;
    h.degree_ = degree;
    std::vector<IntVector> boundaries;
    if (prev && d_prev)
        for (const auto& b : level_generators(*prev))
            boundaries.push_back(d_prev->apply(b));
    Lattice rel = relations_of(cur.moduli);
    auto cocycles = kernel_mod(vstack(d_cur, cur.constraints), concat(next.moduli, cur.constraint_moduli), &rel);
    h.presentation_ = AbelianGroupPresentation(cocycles, boundaries, cur.dim, cur.moduli);
    h.invariants_ = h.presentation_.invariants();
    return h;
}

CohomologyGroup CohomologyGroup::rational(std::size_t degree, const RationalLevel* prev, const SparseRatMatrix* d_prev,
                                          const RationalLevel& cur, const SparseRatMatrix& d_cur)
{
    CohomologyGroup h;
    h.degree_ = degree;
    h.is_rational_ = true;
    std::vector<RatVector> boundaries;
    if (prev && d_prev)
        for (const auto& b : level_basis(*prev))
            boundaries.push_back(d_prev->apply(b));
    auto cocycles = nullspace(vstack(d_cur, cur.constraints));
    h.quotient_ = VectorSpaceQuotient(cocycles, boundaries, cur.dim);
    h.kernel_rank_ = cocycles.size();
    h.image_rank_ = Subspace::span(boundaries, cur.dim).rank();
    h.invariants_.free_rank = h.quotient_.dimension();
    return h;
}

// ---- the complex ----

RealCochainComplex::RealCochainComplex(FiniteRealGroupoid g, RealCoefficientGroup s, std::size_t max_degree)
    : g_(std::make_shared<const FiniteRealGroupoid>(std::move(g))), s_(std::move(s))
{
    nerve_ = std::make_shared<const Nerve>(*g_, max_degree);
    for (std::size_t n = 0; n <= max_degree; ++n)
        bases_.push_back(cochain_basis(nerve_->level(n)));
}

GroupInvariants RealCochainComplex::cochain_group(std::size_t n) const
{
    const auto& b = basis(n);
    std::size_t fixed = std::count(b.fixed.begin(), b.fixed.end(), 1);
    std::size_t free = b.reps.size() - fixed;
    GroupInvariants whole = s_.is_rational() ? GroupInvariants{s_.dim(), {}} : s_.invariants();
    GroupInvariants fix = fixed_subgroup(s_).group.invariants();
    if (s_.is_rational())
        fix = GroupInvariants{fixed_subgroup(s_).group.dim(), {}};
    GroupInvariants total;
    for (std::size_t i = 0; i < free; ++i)
        total = direct_sum(total, whole);
    for (std::size_t i = 0; i < fixed; ++i)
        total = direct_sum(total, fix);
    return total;
}

IntegralLevel RealCochainComplex::integral_level(std::size_t n) const
{
    require(!s_.is_rational(), ErrorKind::invalid_argument, "integral level of a rational complex");
    const auto& b = basis(n);
    const std::size_t d = s_.dim();
    IntegralLevel l;
    l.dim = b.reps.size() * d;
    for (std::size_t o = 0; o < b.reps.size(); ++o)
        l.moduli.insert(l.moduli.end(), s_.moduli().begin(), s_.moduli().end());
    std::size_t fixed = std::count(b.fixed.begin(), b.fixed.end(), 1);
    l.constraints = SparseIntMatrix(fixed * d, l.dim);
    std::size_t row = 0;
    for (std::size_t o = 0; o < b.reps.size(); ++o) {
        if (!b.fixed[o])
            continue;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                Integer v = s_.tau()(i, j) - (i == j ? 1 : 0);
                if (v != 0)
                    l.constraints.add(row + i, o * d + j, v);
            }
        }
        l.constraint_moduli.insert(l.constraint_moduli.end(), s_.moduli().begin(), s_.moduli().end());
        row += d;
    }
    return l;
}

RationalLevel RealCochainComplex::rational_level(std::size_t n) const
{
    require(s_.is_rational(), ErrorKind::invalid_argument, "rational level of an integral complex");
    const auto& b = basis(n);
    const std::size_t d = s_.dim();
    RationalLevel l;
    l.dim = b.reps.size() * d;
    std::size_t fixed = std::count(b.fixed.begin(), b.fixed.end(), 1);
    l.constraints = SparseRatMatrix(fixed * d, l.dim);
    std::size_t row = 0;
    for (std::size_t o = 0; o < b.reps.size(); ++o) {
        if (!b.fixed[o])
            continue;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Rational v = s_.tau_rational()(i, j) - (i == j ? 1 : 0);
                if (v != 0)
                    l.constraints.add(row + i, o * d + j, v);
            }
        row += d;
    }
    return l;
}

namespace {

// Shared assembly of d: entry blocks are identity or tau with sign (-1)^k.
template <class T, class TauAt>
SparseMatrix<T> assemble_differential(const Nerve& nerve, const CochainBasis& from, const CochainBasis& to,
                                      std::size_t n, std::size_t d, TauAt tau_at)
{
    SparseMatrix<T> m(to.reps.size() * d, from.reps.size() * d);
    for (std::size_t o2 = 0; o2 < to.reps.size(); ++o2) {
        const std::size_t t = to.reps[o2];
        for (std::size_t k = 0; k <= n + 1; ++k) {
            const std::size_t f = nerve.face_index(n + 1, k, t);
            const std::size_t o = from.orbit_of[f];
            const int sign = (k % 2 == 0) ? 1 : -1;
            if (from.reps[o] == f) {
                for (std::size_t i = 0; i < d; ++i)
                    m.add(o2 * d + i, o * d + i, T(sign));
            } else {
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) {
                        T v = tau_at(i, j);
                        if (v != 0)
                            m.add(o2 * d + i, o * d + j, sign > 0 ? v : T(-v));
                    }
            }
        }
    }
    m.compress();
    return m;
}

}  // namespace

SparseIntMatrix RealCochainComplex::differential(std::size_t n) const
{
    require(n + 1 <= max_degree(), ErrorKind::invalid_argument, "differential beyond the computed nerve");
    require(!s_.is_rational(), ErrorKind::invalid_argument, "integral differential of a rational complex");
    return assemble_differential<Integer>(*nerve_, basis(n), basis(n + 1), n, s_.dim(),
                                          [&](std::size_t i, std::size_t j) { return s_.tau()(i, j); });
}

SparseRatMatrix RealCochainComplex::rational_differential(std::size_t n) const
{
    require(n + 1 <= max_degree(), ErrorKind::invalid_argument, "differential beyond the computed nerve");
    require(s_.is_rational(), ErrorKind::invalid_argument, "rational differential of an integral complex");
    return assemble_differential<Rational>(*nerve_, basis(n), basis(n + 1), n, s_.dim(),
                                           [&](std::size_t i, std::size_t j) { return s_.tau_rational()(i, j); });
}

RealCochain RealCochainComplex::zero(std::size_t n) const
{
    return RealCochain{n, std::vector<IntVector>(basis(n).reps.size(), IntVector(s_.dim()))};
}

void RealCochainComplex::check_cochain(const RealCochain& c) const
{
    require(!s_.is_rational(), ErrorKind::invalid_argument, "cochain operations need integral coefficients");
    require(c.degree <= max_degree(), ErrorKind::invalid_argument, "cochain degree beyond the computed nerve");
    require(c.values.size() == basis(c.degree).reps.size(), ErrorKind::invalid_argument,
            "cochain has " + std::to_string(c.values.size()) + " values, expected " +
                std::to_string(basis(c.degree).reps.size()));
    for (const auto& v : c.values)
        require(v.size() == s_.dim(), ErrorKind::invalid_argument, "cochain value has the wrong dimension");
}

IntVector RealCochainComplex::flatten(const RealCochain& c) const
{
    check_cochain(c);
    IntVector out;
    out.reserve(c.values.size() * s_.dim());
    for (const auto& v : c.values)
        for (const auto& x : s_.reduce(v))
            out.push_back(x);
    return out;
}

RealCochain RealCochainComplex::unflatten(std::size_t n, const IntVector& v) const
{
    const std::size_t d = s_.dim();
    require(v.size() == ambient_dim(n), ErrorKind::invalid_argument, "ambient vector has the wrong length");
    RealCochain c{n, {}};
    for (std::size_t o = 0; o < basis(n).reps.size(); ++o)
        c.values.push_back(s_.reduce(IntVector(v.begin() + o * d, v.begin() + (o + 1) * d)));
    return c;
}

IntVector RealCochainComplex::value_at(const RealCochain& c, std::size_t tuple) const
{
    const auto& b = basis(c.degree);
    const std::size_t o = b.orbit_of.at(tuple);
    if (b.reps[o] == tuple)
        return s_.reduce(c.values[o]);
    return s_.apply_tau(c.values[o]);
}

bool RealCochainComplex::is_real(const RealCochain& c) const
{
    check_cochain(c);
    const auto& b = basis(c.degree);
    for (std::size_t o = 0; o < b.reps.size(); ++o)
        if (b.fixed[o] && !s_.is_fixed(c.values[o]))
            return false;
    return true;
}

RealCochain RealCochainComplex::apply_differential(const RealCochain& c) const
{
    check_cochain(c);
    const std::size_t n = c.degree;
    require(n + 1 <= max_degree(), ErrorKind::invalid_argument, "differential beyond the computed nerve");
    RealCochain out = zero(n + 1);
    const auto& b = basis(n + 1);
    for (std::size_t o = 0; o < b.reps.size(); ++o) {
        IntVector acc(s_.dim());
        for (std::size_t k = 0; k <= n + 1; ++k) {
            IntVector v = value_at(c, nerve_->face_index(n + 1, k, b.reps[o]));
            acc = (k % 2 == 0) ? s_.add(acc, v) : s_.add(acc, s_.negate(v));
        }
        out.values[o] = acc;
    }
    return out;
}

bool RealCochainComplex::is_cocycle(const RealCochain& c) const
{
    RealCochain dc = apply_differential(c);
    for (const auto& v : dc.values)
        if (v != IntVector(s_.dim()))
            return false;
    return true;
}

std::optional<RealCochain> RealCochainComplex::coboundary_witness(const RealCochain& c) const
{
    IntVector target = flatten(c);
    const std::size_t n = c.degree;
    if (n == 0) {
        if (target == IntVector(target.size()))
            return RealCochain{0, {}};
        return std::nullopt;
    }
    IntegralLevel prev = integral_level(n - 1);
    IntegralLevel cur = integral_level(n);
    SparseIntMatrix a = vstack(differential(n - 1), prev.constraints);
    IntVector b = target;
    b.resize(a.rows());
    Lattice rel = relations_of(prev.moduli);
    auto x = solve_mod(a, b, concat(cur.moduli, prev.constraint_moduli), &rel);
    if (!x)
        return std::nullopt;
    return unflatten(n - 1, *x);
}

CohomologyGroup RealCochainComplex::cohomology(std::size_t n) const
{
    require(n + 1 <= max_degree(), ErrorKind::invalid_argument, "cohomology degree needs the next nerve level");
    if (s_.is_rational()) {
        RationalLevel cur = rational_level(n);
        SparseRatMatrix d_cur = rational_differential(n);
        if (n == 0)
            return CohomologyGroup::rational(0, nullptr, nullptr, cur, d_cur);
        RationalLevel prev = rational_level(n - 1);
        SparseRatMatrix d_prev = rational_differential(n - 1);
        return CohomologyGroup::rational(n, &prev, &d_prev, cur, d_cur);
    }
    IntegralLevel cur = integral_level(n), next = integral_level(n + 1);
    SparseIntMatrix d_cur = differential(n);
    if (n == 0)
        return CohomologyGroup::integral(0, nullptr, nullptr, cur, d_cur, next);
    IntegralLevel prev = integral_level(n - 1);
    SparseIntMatrix d_prev = differential(n - 1);
    return CohomologyGroup::integral(n, &prev, &d_prev, cur, d_cur, next);
}

CohomologyGroup cohomology(const FiniteRealGroupoid& g, const RealCoefficientGroup& s, std::size_t n)
{
    return RealCochainComplex(g, s, n + 1).cohomology(n);
}

GroupInvariants invariant_sections(const FiniteRealGroupoid& g, const RealCoefficientGroup& s)
{
    std::vector<Index> parent(g.num_objects());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Index x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Index a = 0; a < g.num_arrows(); ++a) {
        Index u = find(g.src(a)), v = find(g.tgt(a));
        if (u != v)
            parent[std::max(u, v)] = std::min(u, v);
    }
    GroupInvariants whole, fix;
    if (s.is_rational()) {
        whole.free_rank = s.dim();
        fix.free_rank = fixed_subgroup(s).group.dim();
    } else {
        whole = s.invariants();
        fix = fixed_subgroup(s).group.invariants();
    }
    GroupInvariants total;
    for (Index x = 0; x < g.num_objects(); ++x) {
        if (find(x) != x)
            continue;
        Index partner = find(g.rho_obj(x));
        if (partner == x)
            total = direct_sum(total, fix);
        else if (partner > x)
            total = direct_sum(total, whole);
    }
    return total;
}

}  // namespace rgc
