#include "rgc/coefficients.hpp"

#include <regex>

namespace rgc {

namespace {

Integer odd_part(Integer d)
{
    while (d != 0 && mpz_even_p(d.get_mpz_t()))
        d /= 2;
    return d;
}

SparseIntMatrix sparse_of(const IntMatrix& m) { return SparseIntMatrix::from_dense(m); }

IntMatrix tau_shift(const IntMatrix& tau, int sign)
{
    IntMatrix m = tau;
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, i) += sign;
    return m;
}

std::vector<IntVector> relation_vectors(const std::vector<Integer>& moduli)
{
    std::vector<IntVector> rel;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] > 0) {
            IntVector v(moduli.size());
            v[i] = moduli[i];
            rel.push_back(std::move(v));
        }
    return rel;
}

Integer inverse_of_two(const Integer& m)
{
    if (m <= 1)
        return 0;
    Integer inv;
    Integer two = 2;
    mpz_invert(inv.get_mpz_t(), two.get_mpz_t(), m.get_mpz_t());
    return inv;
}

Subgroup subgroup_from_lattice(const RealCoefficientGroup& s, const Lattice& sub, int involution_sign)
{
    Lattice rel = s.relation_lattice();
    AbelianGroupPresentation pres(sub.basis(), rel.basis(), s.dim(), s.moduli());
    std::vector<Integer> torsion;
    std::vector<IntVector> free_cols, tors_cols;
    for (std::size_t i = 0; i < pres.generators().size(); ++i) {
        if (pres.orders()[i] == 0) {
            free_cols.push_back(pres.generators()[i]);
        } else {
            torsion.push_back(pres.orders()[i]);
            tors_cols.push_back(pres.generators()[i]);
        }
    }
    const std::size_t free = free_cols.size();
    std::vector<IntVector> cols = free_cols;
    cols.insert(cols.end(), tors_cols.begin(), tors_cols.end());
    const std::size_t d = cols.size();
    IntMatrix tau = IntMatrix::identity(d);
    if (involution_sign < 0)
        for (std::size_t i = 0; i < d; ++i)
            tau(i, i) = -1;
    std::optional<IntVector> kappa;
    if (s.kappa() && sub.contains(*s.kappa())) {
        auto c = pres.classify(*s.kappa());
        if (c) {
            // presentation order is torsion first, subgroup order is free first
            IntVector k(d);
            const std::size_t nt = tors_cols.size();
            for (std::size_t i = 0; i < nt; ++i)
                k[free + i] = (*c)[i];
            for (std::size_t i = 0; i < free; ++i)
                k[i] = (*c)[nt + i];
            kappa = k;
        }
    }
    Subgroup out;
    out.group = RealCoefficientGroup::integral(free, torsion, tau, kappa);
    out.inclusion = IntMatrix::from_columns(cols, s.dim());
    return out;
}

Subgroup rational_subgroup(const RealCoefficientGroup& s, int sign)
{
    const RatMatrix& t = s.tau_rational();
    SparseRatMatrix m(t.rows(), t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j)
            m.add(i, j, t(i, j) - (i == j ? Rational(sign) : Rational(0)));
    auto basis = nullspace(m);
    Subgroup out;
    RatMatrix tau(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        tau(i, i) = sign;
    out.group = RealCoefficientGroup::rational(tau);
    out.inclusion_rational = RatMatrix::from_columns(basis, s.dim());
    return out;
}

}  // namespace

RealCoefficientGroup RealCoefficientGroup::integral(std::size_t free_rank, std::vector<Integer> torsion, IntMatrix tau,
                                                    std::optional<IntVector> kappa)
{
    RealCoefficientGroup s;
    s.mode_ = CoefficientMode::integral;
    s.free_rank_ = free_rank;
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        require(torsion[i] >= 2, ErrorKind::invalid_argument, "torsion orders must be at least 2");
        if (i + 1 < torsion.size())
            require(mpz_divisible_p(torsion[i + 1].get_mpz_t(), torsion[i].get_mpz_t()) != 0,
                    ErrorKind::invalid_argument, "torsion orders must form a divisibility chain");
    }
    s.torsion_ = std::move(torsion);
    const std::size_t d = s.dim();
    s.moduli_.assign(d, 0);
    for (std::size_t i = 0; i < s.torsion_.size(); ++i)
        s.moduli_[free_rank + i] = s.torsion_[i];
    require(tau.rows() == d && tau.cols() == d, ErrorKind::invalid_argument,
            "tau must be a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (s.moduli_[i] > 0)
                tau(i, j) = floor_mod(tau(i, j), s.moduli_[i]);
    // relations must map to relations
    for (std::size_t j = free_rank; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) {
            Integer v = s.moduli_[j] * tau(i, j);
            bool ok = s.moduli_[i] == 0 ? v == 0 : mpz_divisible_p(v.get_mpz_t(), s.moduli_[i].get_mpz_t()) != 0;
            require(ok, ErrorKind::invalid_argument, "tau is not well defined on the torsion relations");
        }
    s.tau_ = std::move(tau);
    IntMatrix sq = s.tau_ * s.tau_;
    for (std::size_t j = 0; j < d; ++j) {
        IntVector col = sq.column(j);
        col[j] -= 1;
        require(s.reduce(col) == IntVector(d), ErrorKind::invalid_argument, "tau is not an involution");
    }
    if (kappa) {
        require(kappa->size() == d, ErrorKind::invalid_argument, "kappa has the wrong dimension");
        IntVector k = s.reduce(*kappa);
        require(s.reduce(s.scale(2, k)) == IntVector(d), ErrorKind::invalid_argument, "kappa must have order <= 2");
        require(s.is_fixed(k), ErrorKind::invalid_argument, "kappa must be fixed by tau");
        s.kappa_ = k;
    }
    return s;
}

RealCoefficientGroup RealCoefficientGroup::rational(RatMatrix tau)
{
    require(tau.rows() == tau.cols(), ErrorKind::invalid_argument, "tau must be square");
    require(tau * tau == RatMatrix::identity(tau.rows()), ErrorKind::invalid_argument, "tau is not an involution");
    RealCoefficientGroup s;
    s.mode_ = CoefficientMode::rational;
    s.free_rank_ = tau.rows();
    s.moduli_.assign(tau.rows(), 0);
    s.tau_q_ = std::move(tau);
    return s;
}

GroupInvariants RealCoefficientGroup::invariants() const
{
    GroupInvariants g;
    g.free_rank = free_rank_;
    g.torsion = torsion_;
    return g;
}

bool RealCoefficientGroup::involution_trivial() const
{
    if (is_rational())
        return tau_q_ == RatMatrix::identity(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        IntVector c = tau_.column(j);
        c[j] -= 1;
        if (reduce(c) != IntVector(dim()))
            return false;
    }
    return true;
}

Integer RealCoefficientGroup::element_count() const
{
    require(is_finite(), ErrorKind::invalid_argument, "element count of an infinite group");
    Integer n = 1;
    for (const auto& d : torsion_)
        n *= d;
    return n;
}

IntVector RealCoefficientGroup::element(std::size_t index) const
{
    require(is_finite(), ErrorKind::invalid_argument, "element enumeration of an infinite group");
    IntVector v(dim());
    Integer rest = static_cast<unsigned long>(index);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        v[i] = floor_mod(rest, torsion_[i]);
        rest /= torsion_[i];
    }
    require(rest == 0, ErrorKind::invalid_argument, "element index out of range");
    return v;
}

std::size_t RealCoefficientGroup::element_index(const IntVector& v) const
{
    require(is_finite(), ErrorKind::invalid_argument, "element index in an infinite group");
    IntVector r = reduce(v);
    Integer idx = 0, base = 1;
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        idx += r[i] * base;
        base *= torsion_[i];
    }
    return idx.get_ui();
}

IntVector RealCoefficientGroup::reduce(IntVector v) const
{
    require(v.size() == dim(), ErrorKind::invalid_argument, "coefficient vector has the wrong dimension");
    reduce_mod(v, moduli_);
    return v;
}

IntVector RealCoefficientGroup::add(const IntVector& a, const IntVector& b) const
{
    IntVector v(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        v[i] = a[i] + b[i];
    return reduce(std::move(v));
}

IntVector RealCoefficientGroup::negate(const IntVector& a) const
{
    IntVector v(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        v[i] = -a[i];
    return reduce(std::move(v));
}

IntVector RealCoefficientGroup::scale(const Integer& k, const IntVector& a) const
{
    IntVector v(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        v[i] = k * a[i];
    return reduce(std::move(v));
}

IntVector RealCoefficientGroup::apply_tau(const IntVector& a) const { return reduce(tau_.apply(a)); }

bool RealCoefficientGroup::equal(const IntVector& a, const IntVector& b) const { return reduce(a) == reduce(b); }

bool RealCoefficientGroup::is_fixed(const IntVector& a) const { return equal(apply_tau(a), a); }

Lattice RealCoefficientGroup::relation_lattice() const { return Lattice::span(relation_vectors(moduli_), dim()); }

Lattice RealCoefficientGroup::fixed_lattice() const
{
    Lattice rel = relation_lattice();
    return Lattice::span(kernel_mod(sparse_of(tau_shift(tau_, -1)), moduli_, &rel), dim(), moduli_);
}

Lattice RealCoefficientGroup::imaginary_lattice() const
{
    Lattice rel = relation_lattice();
    return Lattice::span(kernel_mod(sparse_of(tau_shift(tau_, 1)), moduli_, &rel), dim(), moduli_);
}

bool operator==(const RealCoefficientGroup& a, const RealCoefficientGroup& b)
{
    return a.mode_ == b.mode_ && a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_ && a.tau_ == b.tau_ &&
           a.tau_q_ == b.tau_q_ && a.kappa_ == b.kappa_;
}

RealCoefficientGroup make_standard(const std::string& name)
{
    std::smatch m;
    static const std::regex mu_re(R"(mu_?\(?(\d+)\)?_(conj|trivial))");
    static const std::regex q_re(R"(Q\((\d+),\s*(\d+)\))");
    if (name == "Z2_trivial" || name == "Z2")
        return RealCoefficientGroup::integral(0, {Integer(2)}, IntMatrix::identity(1), IntVector{Integer(1)});
    if (name == "Z_trivial" || name == "Z")
        return RealCoefficientGroup::integral(1, {}, IntMatrix::identity(1));
    if (name == "Z_sign") {
        IntMatrix t(1, 1);
        t(0, 0) = -1;
        return RealCoefficientGroup::integral(1, {}, t);
    }
    if (std::regex_match(name, m, mu_re)) {
        unsigned long order = std::stoul(m[1].str());
        require(order >= 1, ErrorKind::invalid_argument, "mu(m) needs m >= 1");
        if (order == 1)
            return RealCoefficientGroup::integral(0, {}, IntMatrix(0, 0));
        const bool conj = m[2].str() == "conj";
        IntMatrix t(1, 1);
        t(0, 0) = conj ? -1 : 1;
        std::optional<IntVector> kappa;
        if (order % 2 == 0)
            kappa = IntVector{Integer(static_cast<unsigned long>(order / 2))};
        return RealCoefficientGroup::integral(0, {Integer(static_cast<unsigned long>(order))}, t, kappa);
    }
    if (std::regex_match(name, m, q_re)) {
        std::size_t p = std::stoul(m[1].str()), q = std::stoul(m[2].str());
        RatMatrix t(p + q, p + q);
        for (std::size_t i = 0; i < p + q; ++i)
            t(i, i) = i < p ? 1 : -1;
        return RealCoefficientGroup::rational(t);
    }
    fail(ErrorKind::invalid_argument, "unknown coefficient preset '" + name + "'");
}

Subgroup fixed_subgroup(const RealCoefficientGroup& s)
{
    if (s.is_rational())
        return rational_subgroup(s, 1);
    return subgroup_from_lattice(s, s.fixed_lattice(), 1);
}

Subgroup imaginary_subgroup(const RealCoefficientGroup& s)
{
    if (s.is_rational())
        return rational_subgroup(s, -1);
    return subgroup_from_lattice(s, s.imaginary_lattice(), -1);
}

// ---- localization at 2 ----

GroupInvariants localize_at_two(const GroupInvariants& g)
{
    std::vector<Integer> odd;
    for (const auto& d : g.torsion)
        odd.push_back(odd_part(d));
    return canonical_invariants(g.free_rank, odd);
}

HalfLocalization half_localized_decomposition(const RealCoefficientGroup& s)
{
    HalfLocalization h;
    if (s.is_rational()) {
        h.whole.free_rank = s.dim();
        h.real.free_rank = fixed_subgroup(s).group.dim();
        h.imaginary.free_rank = imaginary_subgroup(s).group.dim();
    } else {
        h.whole = localize_at_two(s.invariants());
        h.real = localize_at_two(fixed_subgroup(s).group.invariants());
        h.imaginary = localize_at_two(imaginary_subgroup(s).group.invariants());
    }
    h.splits = h.whole == direct_sum(h.real, h.imaginary);
    return h;
}

namespace {

void normalize(const RealCoefficientGroup& s, LocalizedElement& e)
{
    const std::size_t r = s.free_rank();
    for (std::size_t i = 0; i < s.torsion().size(); ++i) {
        Integer m = odd_part(s.torsion()[i]);
        e.numerator[r + i] = m == 1 ? Integer(0) : floor_mod(e.numerator[r + i], m);
    }
    while (e.exponent > 0) {
        bool even = true;
        for (std::size_t i = 0; i < r && even; ++i)
            even = mpz_even_p(e.numerator[i].get_mpz_t()) != 0;
        if (!even)
            break;
        for (std::size_t i = 0; i < r; ++i)
            e.numerator[i] /= 2;
        --e.exponent;
    }
}

// Torsion coordinate value times 1/2^k modulo its odd part.
Integer torsion_div_pow2(const Integer& v, const Integer& m, unsigned k)
{
    if (m == 1)
        return 0;
    Integer inv = inverse_of_two(m), x = v;
    for (unsigned i = 0; i < k; ++i)
        x = floor_mod(x * inv, m);
    return floor_mod(x, m);
}

LocalizedElement halve(const RealCoefficientGroup& s, LocalizedElement e)
{
    const std::size_t r = s.free_rank();
    e.exponent += 1;
    for (std::size_t i = 0; i < s.torsion().size(); ++i)
        e.numerator[r + i] = torsion_div_pow2(e.numerator[r + i], odd_part(s.torsion()[i]), 1);
    normalize(s, e);
    return e;
}

LocalizedElement with_exponent(const RealCoefficientGroup& s, LocalizedElement e, unsigned exponent)
{
    for (std::size_t i = 0; i < s.free_rank(); ++i)
        e.numerator[i] <<= (exponent - e.exponent);
    e.exponent = exponent;
    return e;
}

}  // namespace

LocalizedElement localize(const RealCoefficientGroup& s, const IntVector& v)
{
    require(!s.is_rational() && v.size() == s.dim(), ErrorKind::invalid_argument, "localize: bad element");
    LocalizedElement e{v, 0};
    normalize(s, e);
    return e;
}

LocalizedElement localized_tau(const RealCoefficientGroup& s, const LocalizedElement& e)
{
    const std::size_t r = s.free_rank(), d = s.dim();
    LocalizedElement out{IntVector(d), e.exponent};
    const IntMatrix& t = s.tau();
    for (std::size_t i = 0; i < d; ++i) {
        if (i < r) {
            for (std::size_t j = 0; j < r; ++j)
                out.numerator[i] += t(i, j) * e.numerator[j];
            continue;
        }
        const Integer m = odd_part(s.torsion()[i - r]);
        Integer from_free = 0, from_tors = 0;
        for (std::size_t j = 0; j < r; ++j)
            from_free += t(i, j) * e.numerator[j];
        for (std::size_t j = r; j < d; ++j)
            from_tors += t(i, j) * e.numerator[j];
        out.numerator[i] = torsion_div_pow2(from_free, m, e.exponent) + from_tors;
    }
    normalize(s, out);
    return out;
}

LocalizedElement localized_add(const RealCoefficientGroup& s, const LocalizedElement& a, const LocalizedElement& b)
{
    unsigned k = std::max(a.exponent, b.exponent);
    LocalizedElement x = with_exponent(s, a, k), y = with_exponent(s, b, k);
    for (std::size_t i = 0; i < s.dim(); ++i)
        x.numerator[i] += y.numerator[i];
    normalize(s, x);
    return x;
}

bool localized_equal(const RealCoefficientGroup& s, const LocalizedElement& a, const LocalizedElement& b)
{
    unsigned k = std::max(a.exponent, b.exponent);
    LocalizedElement x = with_exponent(s, a, k), y = with_exponent(s, b, k);
    normalize(s, x);
    normalize(s, y);
    return x.exponent == y.exponent && x.numerator == y.numerator;
}

std::pair<LocalizedElement, LocalizedElement> split_element(const RealCoefficientGroup& s, const IntVector& v)
{
    LocalizedElement a = localize(s, v);
    LocalizedElement ta = localized_tau(s, a);
    LocalizedElement neg_ta = ta;
    for (auto& x : neg_ta.numerator)
        x = -x;
    normalize(s, neg_ta);
    return {halve(s, localized_add(s, a, ta)), halve(s, localized_add(s, a, neg_ta))};
}

// ---- morphisms ----

ValidationReport check_morphism(const RealCoefficientGroup& from, const RealCoefficientGroup& to,
                                const CoefficientMorphism& f)
{
    ValidationReport r;
    if (from.is_rational() || to.is_rational()) {
        r.add("morphism mode", "coefficient morphisms are integral");
        return r;
    }
    if (f.matrix.rows() != to.dim() || f.matrix.cols() != from.dim()) {
        r.add("morphism size", "matrix must be " + std::to_string(to.dim()) + "x" + std::to_string(from.dim()));
        return r;
    }
    for (std::size_t j = 0; j < from.dim(); ++j) {
        IntVector col = f.matrix.column(j);
        if (from.moduli()[j] > 0 && to.reduce(to.scale(from.moduli()[j], col)) != IntVector(to.dim())) {
            r.add("morphism not well defined", "generator " + std::to_string(j));
            return r;
        }
    }
    for (std::size_t j = 0; j < from.dim(); ++j) {
        IntVector e(from.dim());
        e[j] = 1;
        IntVector lhs = f.matrix.apply(from.tau().apply(e));
        IntVector rhs = to.tau().apply(f.matrix.apply(e));
        if (!to.equal(lhs, rhs)) {
            r.add("morphism does not commute with the involutions", "generator " + std::to_string(j));
            break;
        }
    }
    return r;
}

ValidationReport check_short_exact(const RealCoefficientGroup& a, const RealCoefficientGroup& b,
                                   const RealCoefficientGroup& c, const CoefficientMorphism& i,
                                   const CoefficientMorphism& p)
{
    ValidationReport r = check_morphism(a, b, i);
    ValidationReport rp = check_morphism(b, c, p);
    for (auto& v : rp.violations)
        r.add("projection: " + v.axiom, v.witness);
    if (!r.ok())
        return r;
    for (const auto& k : kernel_mod(SparseIntMatrix::from_dense(i.matrix), b.moduli()))
        if (a.reduce(k) != IntVector(a.dim())) {
            r.add("inclusion not injective", "kernel element found");
            break;
        }
    Lattice image_p = Lattice::span(p.matrix.columns(), c.dim(), c.moduli());
    for (std::size_t k = 0; k < c.dim(); ++k) {
        IntVector e(c.dim());
        e[k] = 1;
        if (!image_p.contains(e)) {
            r.add("projection not surjective", "generator " + std::to_string(k));
            break;
        }
    }
    Lattice image_i = Lattice::span(i.matrix.columns(), b.dim(), b.moduli());
    Lattice kernel_p = Lattice::span(kernel_mod(SparseIntMatrix::from_dense(p.matrix), c.moduli()), b.dim(), b.moduli());
    if (!(image_i == kernel_p))
        r.add("sequence not exact in the middle", "image of inclusion differs from kernel of projection");
    return r;
}

// ---- representations ----

RealRepresentation trivial_representation(const FiniteRealGroupoid& base, std::size_t p, std::size_t q)
{
    RealRepresentation e;
    e.base = base;
    e.p = p;
    e.q = q;
    RatMatrix nu(p + q, p + q);
    for (std::size_t i = 0; i < p + q; ++i)
        nu(i, i) = i < p ? 1 : -1;
    e.action.assign(base.num_arrows(), RatMatrix::identity(p + q));
    e.nu.assign(base.num_objects(), nu);
    return e;
}

ValidationReport validate_representation(const RealRepresentation& e)
{
    ValidationReport r;
    const auto& g = e.base;
    const std::size_t k = e.rank();
    if (e.action.size() != g.num_arrows() || e.nu.size() != g.num_objects()) {
        r.add("representation size", "need one action matrix per arrow and one nu per object");
        return r;
    }
    for (std::size_t x = 0; x < g.num_arrows(); ++x)
        if (e.action[x].rows() != k || e.action[x].cols() != k) {
            r.add("representation size", "action matrix of arrow " + std::to_string(x) + " is not " +
                                             std::to_string(k) + "x" + std::to_string(k));
            return r;
        }
    for (std::size_t x = 0; x < g.num_objects(); ++x)
        if (e.nu[x].rows() != k || e.nu[x].cols() != k) {
            r.add("representation size", "nu of object " + std::to_string(x) + " has the wrong size");
            return r;
        }
    const RatMatrix id = RatMatrix::identity(k);
    for (Index x = 0; x < g.num_objects(); ++x)
        if (!(e.action[g.unit(x)] == id)) {
            r.add("action not unital", "x=" + std::to_string(x));
            break;
        }
    for (Index a = 0; a < g.num_arrows() && !r.has("action not functorial"); ++a)
        for (Index b : g.arrows_into(g.src(a)))
            if (!(e.action[g.compose(a, b)] == e.action[a] * e.action[b])) {
                r.add("action not functorial", "(g,h)=(" + std::to_string(a) + "," + std::to_string(b) + ")");
                break;
            }
    for (Index a = 0; a < g.num_arrows(); ++a)
        if (!(e.nu[g.tgt(a)] * e.action[a] == e.action[g.rho_arr(a)] * e.nu[g.src(a)])) {
            r.add("action not Real", "g=" + std::to_string(a));
            break;
        }
    for (Index x = 0; x < g.num_objects(); ++x)
        if (!(e.nu[g.rho_obj(x)] * e.nu[x] == id)) {
            r.add("nu not an involution", "x=" + std::to_string(x));
            break;
        }
    for (Index x = 0; x < g.num_objects(); ++x) {
        if (g.rho_obj(x) != x)
            continue;
        RatMatrix minus = e.nu[x] - id, plus = e.nu[x] + id;
        if (rank(minus) != e.q || rank(plus) != e.p) {
            r.add("fiber type mismatch", "x=" + std::to_string(x));
            break;
        }
    }
    return r;
}

}  // namespace rgc
