#include "rgc/proper.hpp"

#include <map>

namespace rgc {

namespace {

// Object carrying the value of a tuple: the source of its last arrow.
Index base_point(const FiniteRealGroupoid& g, const NerveLevel& level, std::size_t t)
{
    auto tup = level.tuple(t);
    return level.degree == 0 ? tup[0] : g.src(tup[level.degree - 1]);
}

RatMatrix dense_columns(const std::vector<RatVector>& cols, std::size_t rows)
{
    return RatMatrix::from_columns(cols, rows);
}

SparseRatMatrix product(const SparseRatMatrix& a, const SparseRatMatrix& b)
{
    SparseRatMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (const auto& [k, x] : a.row(i))
            for (const auto& [j, y] : b.row(k))
                out.add(i, j, x * y);
    out.compress();
    return out;
}

VanishingReport ranks_report(const RepresentationComplex& cx, std::size_t n_max, bool real)
{
    std::vector<std::size_t> cochain_dim, d_rank;
    for (std::size_t n = 0; n <= n_max; ++n) {
        std::vector<RatVector> basis;
        if (real) {
            basis = cx.real_basis(n);
        } else {
            for (std::size_t i = 0; i < cx.dim(n); ++i) {
                RatVector e(cx.dim(n));
                e[i] = 1;
                basis.push_back(std::move(e));
            }
        }
        cochain_dim.push_back(basis.size());
        auto image = cx.differential_matrix(n).times_columns(basis);
        d_rank.push_back(image.empty() ? 0 : rank(dense_columns(image, cx.dim(n + 1))));
    }
    VanishingReport r;
    for (std::size_t n = 1; n <= n_max; ++n) {
        VanishingDegree v;
        v.degree = n;
        v.cochain_dim = cochain_dim[n];
        v.image_rank = d_rank[n - 1];
        v.kernel_dim = cochain_dim[n] - d_rank[n];
        v.cohomology_dim = v.kernel_dim - v.image_rank;
        r.all_zero = r.all_zero && v.cohomology_dim == 0;
        r.degrees.push_back(v);
    }
    return r;
}

}  // namespace

CutoffFunction canonical_cutoff(const FiniteRealGroupoid& g)
{
    CutoffFunction c;
    for (Index x = 0; x < g.num_objects(); ++x)
        c.values.emplace_back(1, g.arrows_into(x).size());
    for (auto& v : c.values)
        v.canonicalize();
    return c;
}

ValidationReport verify_cutoff(const FiniteRealGroupoid& g, const CutoffFunction& c)
{
    ValidationReport r;
    if (c.values.size() != g.num_objects()) {
        r.add("cutoff size", "need one value per object");
        return r;
    }
    for (Index x = 0; x < g.num_objects(); ++x) {
        if (c.values[x] <= 0)
            r.add("cutoff not positive", "x=" + std::to_string(x));
        if (c.values[g.rho_obj(x)] != c.values[x])
            r.add("cutoff not Real", "x=" + std::to_string(x));
        Rational sum = 0;
        for (Index a : g.arrows_into(x))
            sum += c.values[g.src(a)];
        if (sum != 1)
            r.add("cutoff does not sum to 1", "x=" + std::to_string(x) + ", sum=" + sum.get_str());
    }
    return r;
}

RepresentationComplex::RepresentationComplex(RealRepresentation e, std::size_t max_degree)
{
    auto report = validate_representation(e);
    if (!report.ok())
        fail(ErrorKind::validation_failed, "invalid representation: " + report.violations.front().axiom + " (" +
                                               report.violations.front().witness + ")");
    e_ = std::make_shared<const RealRepresentation>(std::move(e));
    nerve_ = std::make_shared<const Nerve>(e_->base, max_degree);
}

RepresentationCochain RepresentationComplex::zero(std::size_t n) const
{
    return RepresentationCochain{n, std::vector<RatVector>(nerve_->level(n).size(), RatVector(e_->rank()))};
}

RatVector RepresentationComplex::flatten(const RepresentationCochain& f) const
{
    require(f.values.size() == nerve_->level(f.degree).size(), ErrorKind::invalid_argument,
            "cochain size does not match the nerve");
    RatVector v;
    v.reserve(dim(f.degree));
    for (const auto& x : f.values) {
        require(x.size() == e_->rank(), ErrorKind::invalid_argument, "cochain value has the wrong rank");
        v.insert(v.end(), x.begin(), x.end());
    }
    return v;
}

RepresentationCochain RepresentationComplex::unflatten(std::size_t n, const RatVector& v) const
{
    require(v.size() == dim(n), ErrorKind::invalid_argument, "vector size does not match the cochain space");
    const std::size_t k = e_->rank();
    RepresentationCochain f = zero(n);
    for (std::size_t t = 0; t < f.values.size(); ++t)
        std::copy(v.begin() + t * k, v.begin() + (t + 1) * k, f.values[t].begin());
    return f;
}

bool RepresentationComplex::is_real(const RepresentationCochain& f) const
{
    const auto& level = nerve_->level(f.degree);
    for (std::size_t t = 0; t < level.size(); ++t) {
        Index x = base_point(groupoid(), level, t);
        if (e_->nu[x].apply(f.values[t]) != f.values[level.rho[t]])
            return false;
    }
    return true;
}

SparseRatMatrix RepresentationComplex::differential_matrix(std::size_t n) const
{
    require(n + 1 <= max_degree(), ErrorKind::invalid_argument, "differential beyond the computed nerve");
    const auto& g = groupoid();
    const auto& level = nerve_->level(n + 1);
    const std::size_t k = e_->rank();
    SparseRatMatrix d(dim(n + 1), dim(n));
    for (std::size_t t = 0; t < level.size(); ++t) {
        for (std::size_t i = 0; i <= n; ++i) {
            const std::size_t f = nerve_->face_index(n + 1, i, t);
            const Rational sign = i % 2 ? -1 : 1;
            for (std::size_t r = 0; r < k; ++r)
                d.add(t * k + r, f * k + r, sign);
        }
        const std::size_t f = nerve_->face_index(n + 1, n + 1, t);
        const RatMatrix& a_inv = e_->action[g.inv(level.tuple(t)[n])];
        const Rational sign = (n + 1) % 2 ? -1 : 1;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c)
                d.add(t * k + r, f * k + c, sign * a_inv(r, c));
    }
    d.compress();
    return d;
}

SparseRatMatrix RepresentationComplex::contraction_matrix(std::size_t n, const CutoffFunction& c) const
{
    require(n >= 1 && n <= max_degree(), ErrorKind::invalid_argument, "contraction needs 1 <= n <= max degree");
    require(c.values.size() == groupoid().num_objects(), ErrorKind::invalid_argument, "cutoff size mismatch");
    const auto& g = groupoid();
    const std::size_t m = n - 1;
    const auto& level = nerve_->level(m);
    const std::size_t k = e_->rank();
    const Rational sign = m % 2 ? 1 : -1;
    SparseRatMatrix h(dim(m), dim(n));
    std::vector<Index> ext(n);
    for (std::size_t t = 0; t < level.size(); ++t) {
        auto tup = level.tuple(t);
        if (m > 0)
            std::copy(tup.begin(), tup.end(), ext.begin());
        for (Index gamma : g.arrows_into(base_point(g, level, t))) {
            ext[n - 1] = gamma;
            const std::size_t u = nerve_->index_of(n, ext);
            const Rational w = sign * c.values[g.src(gamma)];
            const RatMatrix& a = e_->action[gamma];
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t col = 0; col < k; ++col)
                    h.add(t * k + r, u * k + col, w * a(r, col));
        }
    }
    h.compress();
    return h;
}

RepresentationCochain RepresentationComplex::differential(const RepresentationCochain& f) const
{
    return unflatten(f.degree + 1, differential_matrix(f.degree).apply(flatten(f)));
}

RepresentationCochain RepresentationComplex::contraction(const RepresentationCochain& f, const CutoffFunction& c) const
{
    return unflatten(f.degree - 1, contraction_matrix(f.degree, c).apply(flatten(f)));
}

std::vector<RatVector> RepresentationComplex::real_basis(std::size_t n) const
{
    // kernel of T - 1 with (T f)(t) = nu f(rho t), nu : E_rho(x) -> E_x
    const auto& level = nerve_->level(n);
    const std::size_t k = e_->rank();
    SparseRatMatrix m(dim(n), dim(n));
    for (std::size_t t = 0; t < level.size(); ++t) {
        const std::size_t rt = level.rho[t];
        const RatMatrix& nu = e_->nu[base_point(groupoid(), level, rt)];
        for (std::size_t r = 0; r < k; ++r) {
            m.add(t * k + r, t * k + r, -1);
            for (std::size_t c = 0; c < k; ++c)
                m.add(t * k + r, rt * k + c, nu(r, c));
        }
    }
    m.compress();
    return nullspace(m);
}

bool homotopy_identity_holds(const RepresentationComplex& cx, std::size_t n, const CutoffFunction& c)
{
    require(n >= 1 && n + 1 <= cx.max_degree(), ErrorKind::invalid_argument,
            "the homotopy identity needs 1 <= n < max degree");
    SparseRatMatrix hd = product(cx.contraction_matrix(n + 1, c), cx.differential_matrix(n));
    SparseRatMatrix dh = product(cx.differential_matrix(n - 1), cx.contraction_matrix(n, c));
    for (std::size_t i = 0; i < cx.dim(n); ++i) {
        std::map<std::size_t, Rational> row;
        for (const auto& [j, v] : hd.row(i))
            row[j] += v;
        for (const auto& [j, v] : dh.row(i))
            row[j] += v;
        for (const auto& [j, v] : row)
            if (v != (i == j ? 1 : 0))
                return false;
        if (!row.count(i))
            return false;
    }
    return true;
}

VanishingReport vanishing_check(const RealRepresentation& e, std::size_t n_max)
{
    return ranks_report(RepresentationComplex(e, n_max + 1), n_max, true);
}

VanishingReport plain_vanishing_check(const RealRepresentation& e, std::size_t n_max)
{
    return ranks_report(RepresentationComplex(e, n_max + 1), n_max, false);
}

RealRepresentation constant_representation(const FiniteRealGroupoid& base, const RealCoefficientGroup& s)
{
    require(s.is_rational(), ErrorKind::invalid_argument, "representation coefficients must be rational");
    const std::size_t k = s.dim();
    const RatMatrix& tau = s.tau_rational();
    RealRepresentation e;
    e.base = base;
    e.q = rank(tau - RatMatrix::identity(k));
    e.p = k - e.q;
    e.action.assign(base.num_arrows(), RatMatrix::identity(k));
    e.nu.assign(base.num_objects(), tau);
    return e;
}

RealRepresentation doubled_representation(const FiniteRealGroupoid& base, const std::vector<RatMatrix>& action)
{
    for (Index x = 0; x < base.num_objects(); ++x)
        require(base.rho_obj(x) == x, ErrorKind::invalid_argument, "doubling needs a trivial involution on the base");
    for (Index a = 0; a < base.num_arrows(); ++a)
        require(base.rho_arr(a) == a, ErrorKind::invalid_argument, "doubling needs a trivial involution on the base");
    require(action.size() == base.num_arrows(), ErrorKind::invalid_argument, "need one action matrix per arrow");
    const std::size_t k = action.empty() ? 0 : action.front().rows();
    RealRepresentation f;
    f.base = base;
    f.p = k;
    f.q = k;
    for (const auto& a : action) {
        require(a.rows() == k && a.cols() == k, ErrorKind::invalid_argument, "action matrices must be square");
        RatMatrix b(2 * k, 2 * k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) {
                b(r, c) = a(r, c);
                b(k + r, k + c) = a(r, c);
            }
        f.action.push_back(std::move(b));
    }
    RatMatrix nu(2 * k, 2 * k);
    for (std::size_t r = 0; r < k; ++r) {
        nu(r, r) = 1;
        nu(k + r, k + r) = -1;
    }
    f.nu.assign(base.num_objects(), nu);
    return f;
}

}  // namespace rgc
