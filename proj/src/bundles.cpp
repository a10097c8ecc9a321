#include "rgc/bundles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace rgc {

namespace {

std::size_t finite_order(const RealCoefficientGroup& s)
{
    require(s.is_finite(), ErrorKind::invalid_argument, "materializing a bundle needs a finite S");
    return s.element_count().get_ui();
}

void require_same_space(const RealPrincipalBundle& a, const RealPrincipalBundle& b)
{
    require(a.space && b.space, ErrorKind::invalid_argument, "bundle without a base");
    require(a.space == b.space ||
                (a.space->base() == b.space->base() && a.space->coefficients() == b.space->coefficients()),
            ErrorKind::invalid_argument, "bundles over different bases or coefficient groups");
}

struct ElementTables {
    std::vector<std::vector<std::size_t>> sum;
    std::vector<std::size_t> tau;

    explicit ElementTables(const RealCoefficientGroup& s)
    {
        const std::size_t n = s.element_count().get_ui();
        sum.assign(n, std::vector<std::size_t>(n));
        tau.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                sum[a][b] = s.element_index(s.add(s.element(a), s.element(b)));
            tau[a] = s.element_index(s.apply_tau(s.element(a)));
        }
    }
};

}  // namespace

BundleSpace::BundleSpace(FiniteRealGroupoid base, RealCoefficientGroup s) : complex_(std::move(base), std::move(s), 2)
{
    require(!complex_.coefficients().is_rational(), ErrorKind::invalid_argument, "bundles need integral coefficients");
    h1_ = complex_.cohomology(1);
}

std::shared_ptr<const BundleSpace> make_bundle_space(const FiniteRealGroupoid& base, const RealCoefficientGroup& s)
{
    return std::make_shared<const BundleSpace>(base, s);
}

RealPrincipalBundle bundle_from_cocycle(std::shared_ptr<const BundleSpace> space, RealCochain c)
{
    const auto& cx = space->complex();
    require(c.degree == 1, ErrorKind::invalid_argument, "a bundle is given by a 1-cochain");
    require(cx.is_real(c), ErrorKind::validation_failed, "cochain is not Real");
    RealCochain dc = cx.apply_differential(c);
    const auto& b = cx.basis(2);
    for (std::size_t o = 0; o < b.reps.size(); ++o)
        if (dc.values[o] != IntVector(cx.coefficients().dim())) {
            auto t = cx.nerve().level(2).tuple(b.reps[o]);
            fail(ErrorKind::not_a_cocycle, "not a cocycle: action not associative at (" + std::to_string(t[0]) + "," +
                                               std::to_string(t[1]) + ")");
        }
    return RealPrincipalBundle{std::move(space), std::move(c)};
}

RealPrincipalBundle trivial_bundle(std::shared_ptr<const BundleSpace> space)
{
    RealCochain z = space->complex().zero(1);
    return RealPrincipalBundle{std::move(space), std::move(z)};
}

MaterializedBundle materialize(const RealPrincipalBundle& b)
{
    const auto& sp = *b.space;
    const auto& g = sp.base();
    const auto& s = sp.coefficients();
    const std::size_t n = finite_order(s);
    ElementTables el(s);
    MaterializedBundle m;
    m.fiber_size = n;
    const std::size_t points = g.num_objects() * n;
    m.anchor.resize(points);
    m.involution.resize(points);
    m.s_action.resize(n * points);
    for (Index z = 0; z < points; ++z) {
        const Index x = z / n, t = z % n;
        m.anchor[z] = x;
        m.involution[z] = g.rho_obj(x) * n + el.tau[t];
        for (std::size_t u = 0; u < n; ++u)
            m.s_action[u * points + z] = x * n + el.sum[u][t];
    }
    m.g_action.resize(g.num_arrows() * n);
    for (Index a = 0; a < g.num_arrows(); ++a) {
        std::size_t c = s.element_index(sp.complex().value_at(b.cocycle, a));
        for (std::size_t t = 0; t < n; ++t)
            m.g_action[a * n + t] = g.tgt(a) * n + el.sum[c][t];
    }
    return m;
}

ValidationReport verify_bundle(const BundleSpace& space, const MaterializedBundle& m)
{
    ValidationReport r;
    const auto& g = space.base();
    const auto& s = space.coefficients();
    const std::size_t n = finite_order(s);
    const std::size_t points = m.points();
    if (m.fiber_size != n || points != g.num_objects() * n || m.involution.size() != points ||
        m.s_action.size() != n * points || m.g_action.size() != g.num_arrows() * n) {
        r.add("bundle shape", "tables must match the base and S");
        return r;
    }
    ElementTables el(s);
    auto wz = [](Index z) { return "z=" + std::to_string(z); };
    auto wg = [](Index a, Index z) { return "g=" + std::to_string(a) + ", z=" + std::to_string(z); };
    std::vector<std::vector<Index>> fiber(g.num_objects());
    for (Index z = 0; z < points; ++z) {
        if (m.anchor[z] >= g.num_objects() || m.involution[z] >= points) {
            r.add("index out of range", wz(z));
            return r;
        }
        fiber[m.anchor[z]].push_back(z);
    }
    for (Index z = 0; z < points; ++z) {
        if (m.anchor[m.involution[z]] != g.rho_obj(m.anchor[z]) || m.involution[m.involution[z]] != z) {
            r.add("anchor not Real", wz(z));
            break;
        }
    }
    for (Index a = 0; a < g.num_arrows() && r.ok(); ++a)
        for (Index z : fiber[g.src(a)]) {
            Index gz = m.act(a, z);
            if (gz >= points || m.anchor[gz] != g.tgt(a)) {
                r.add("action does not cover tgt", wg(a, z));
                return r;
            }
        }
    for (Index a = 0; a < g.num_arrows(); ++a)
        for (Index z : fiber[g.src(a)]) {
            if (m.involution[m.act(a, z)] != m.act(g.rho_arr(a), m.involution[z]))
                r.add("action not Real", wg(a, z));
            if (g.is_unit(a) && m.act(a, z) != z)
                r.add("units do not act trivially", wz(z));
            for (Index h : g.arrows_into(g.src(a)))
                for (Index y : fiber[g.src(h)])
                    if (m.act(g.compose(a, h), y) != m.act(a, m.act(h, y)))
                        r.add("action not associative", wg(a, y));
        }
    const std::size_t zero = s.element_index(IntVector(s.dim()));
    auto sact = [&](std::size_t t, Index z) { return m.s_action[t * points + z]; };
    for (Index z = 0; z < points; ++z) {
        std::vector<char> seen(points, 0);
        bool ok = sact(zero, z) == z;
        for (std::size_t t = 0; t < n && ok; ++t) {
            Index y = sact(t, z);
            ok = y < points && m.anchor[y] == m.anchor[z] && !seen[y];
            if (ok)
                seen[y] = 1;
            for (std::size_t u = 0; u < n && ok; ++u)
                ok = sact(el.sum[t][u], z) == sact(t, sact(u, z));
        }
        if (!ok) {
            r.add("S-action not free and transitive", wz(z));
            return r;
        }
        for (std::size_t t = 0; t < n; ++t)
            if (m.involution[sact(t, z)] != sact(el.tau[t], m.involution[z])) {
                r.add("S-action not Real", wz(z));
                break;
            }
    }
    for (Index a = 0; a < g.num_arrows(); ++a)
        for (Index z : fiber[g.src(a)])
            for (std::size_t t = 0; t < n; ++t)
                if (m.act(a, sact(t, z)) != sact(t, m.act(a, z))) {
                    r.add("S-action does not commute", wg(a, z));
                    return r;
                }
    return r;
}

RealCochain extract_bundle_cocycle(const BundleSpace& space, const MaterializedBundle& m)
{
    const auto& g = space.base();
    const auto& s = space.coefficients();
    const auto& cx = space.complex();
    const std::size_t n = finite_order(s);
    const std::size_t points = m.points();
    std::vector<Index> section(g.num_objects(), points);
    for (Index x = 0; x < g.num_objects(); ++x) {
        Index rx = g.rho_obj(x);
        if (rx < x)
            continue;
        for (Index z = 0; z < points; ++z) {
            if (m.anchor[z] != x)
                continue;
            if (rx != x) {
                section[x] = z;
                section[rx] = m.involution[z];
                break;
            }
            if (m.involution[z] == z) {
                section[x] = z;
                break;
            }
        }
        if (section[x] == points)
            fail(ErrorKind::obstruction, "no Real section: the fiber over the fixed object x=" + std::to_string(x) +
                                             " has no fixed point");
    }
    std::vector<std::size_t> coord(points, n);
    for (Index x = 0; x < g.num_objects(); ++x)
        for (std::size_t t = 0; t < n; ++t)
            coord[m.s_action[t * points + section[x]]] = t;
    RealCochain c = cx.zero(1);
    const auto& b = cx.basis(1);
    for (std::size_t o = 0; o < b.reps.size(); ++o) {
        Index a = b.reps[o];
        std::size_t t = coord[m.act(a, section[g.src(a)])];
        require(t < n, ErrorKind::invalid_argument, "S-action is not transitive on fibers");
        c.values[o] = s.element(t);
    }
    return c;
}

RealPrincipalBundle bundle_sum(const RealPrincipalBundle& a, const RealPrincipalBundle& b)
{
    require_same_space(a, b);
    RealPrincipalBundle out = a;
    for (std::size_t o = 0; o < out.cocycle.values.size(); ++o)
        out.cocycle.values[o] = a.space->coefficients().add(a.cocycle.values[o], b.cocycle.values[o]);
    return out;
}

RealPrincipalBundle bundle_inverse(const RealPrincipalBundle& a)
{
    RealPrincipalBundle out = a;
    for (auto& v : out.cocycle.values)
        v = a.space->coefficients().negate(v);
    return out;
}

BundleIsomorphism bundles_isomorphic(const RealPrincipalBundle& a, const RealPrincipalBundle& b)
{
    require_same_space(a, b);
    const auto& sp = *a.space;
    const auto& cx = sp.complex();
    const auto& s = sp.coefficients();
    RealCochain diff = a.cocycle;
    for (std::size_t o = 0; o < diff.values.size(); ++o)
        diff.values[o] = s.add(a.cocycle.values[o], s.negate(b.cocycle.values[o]));
    BundleIsomorphism out;
    out.primitive = cx.coboundary_witness(diff);
    out.isomorphic = out.primitive.has_value();
    if (!out.isomorphic || !s.is_finite())
        return out;
    const std::size_t n = s.element_count().get_ui();
    for (Index x = 0; x < sp.base().num_objects(); ++x) {
        IntVector bx = cx.value_at(*out.primitive, x);
        for (std::size_t t = 0; t < n; ++t)
            out.map.push_back(x * n + s.element_index(s.add(s.element(t), bx)));
    }
    return out;
}

bool is_bundle_isomorphism(const BundleSpace& space, const MaterializedBundle& a, const MaterializedBundle& b,
                           const std::vector<Index>& map)
{
    const auto& g = space.base();
    const std::size_t points = a.points();
    if (map.size() != points || b.points() != points || a.fiber_size != b.fiber_size)
        return false;
    std::vector<char> hit(points, 0);
    for (Index z = 0; z < points; ++z) {
        if (map[z] >= points || hit[map[z]] || b.anchor[map[z]] != a.anchor[z])
            return false;
        hit[map[z]] = 1;
        if (map[a.involution[z]] != b.involution[map[z]])
            return false;
        for (std::size_t t = 0; t < a.fiber_size; ++t)
            if (map[a.s_action[t * points + z]] != b.s_action[t * points + map[z]])
                return false;
    }
    for (Index h = 0; h < g.num_arrows(); ++h)
        for (Index z = 0; z < points; ++z)
            if (a.anchor[z] == g.src(h) && map[a.act(h, z)] != b.act(h, map[z]))
                return false;
    return true;
}

BundleIsomorphism bundles_isomorphic_search(const RealPrincipalBundle& a, const RealPrincipalBundle& b)
{
    require_same_space(a, b);
    const auto& sp = *a.space;
    const auto& g = sp.base();
    MaterializedBundle ma = materialize(a), mb = materialize(b);
    const std::size_t n = ma.fiber_size;
    require(n <= 8, ErrorKind::limit_exceeded, "exhaustive bundle search is limited to |S| <= 8");
    const std::size_t points = ma.points();
    std::vector<Index> map(points, points);
    std::vector<char> assigned(g.num_objects(), 0);

    // constraints that involve only assigned objects
    auto consistent = [&](Index x) {
        for (Index k = 0; k < n; ++k) {
            Index z = x * n + k;
            for (std::size_t t = 0; t < n; ++t)
                if (map[ma.s_action[t * points + z]] != mb.s_action[t * points + map[z]])
                    return false;
            Index tz = ma.involution[z];
            if (assigned[ma.anchor[tz]] && map[tz] != mb.involution[map[z]])
                return false;
        }
        for (Index h = 0; h < g.num_arrows(); ++h) {
            if (!assigned[g.src(h)] || !assigned[g.tgt(h)] || (g.src(h) != x && g.tgt(h) != x))
                continue;
            for (Index k = 0; k < n; ++k) {
                Index z = g.src(h) * n + k;
                if (map[ma.act(h, z)] != mb.act(h, map[z]))
                    return false;
            }
        }
        return true;
    };
    std::function<bool(Index)> search = [&](Index x) {
        if (x == g.num_objects())
            return true;
        std::vector<Index> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        assigned[x] = 1;
        do {
            for (Index k = 0; k < n; ++k)
                map[x * n + k] = x * n + perm[k];
            if (consistent(x) && search(x + 1))
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        assigned[x] = 0;
        for (Index k = 0; k < n; ++k)
            map[x * n + k] = points;
        return false;
    };
    BundleIsomorphism out;
    out.isomorphic = search(0);
    if (out.isomorphic)
        out.map = map;
    return out;
}

std::vector<RealPrincipalBundle> classify_bundles(std::shared_ptr<const BundleSpace> space)
{
    const auto& h = space->cohomology();
    require(h.invariants().is_finite(), ErrorKind::invalid_argument, "HR^1 is infinite; classes cannot be listed");
    const auto& orders = h.orders();
    std::vector<RealPrincipalBundle> out;
    IntVector coords(orders.size());
    while (true) {
        RealCochain c = space->complex().unflatten(1, h.lift(coords));
        out.push_back(RealPrincipalBundle{space, std::move(c)});
        std::size_t k = 0;
        for (; k < coords.size(); ++k) {
            if (++coords[k] < orders[k])
                break;
            coords[k] = 0;
        }
        if (k == coords.size())
            break;
    }
    return out;
}

IntVector bundle_class(const RealPrincipalBundle& b)
{
    auto c = b.space->cohomology().classify(b.space->complex().flatten(b.cocycle));
    require(c.has_value(), ErrorKind::not_a_cocycle, "bundle cochain is not a cocycle");
    return *c;
}

}  // namespace rgc
