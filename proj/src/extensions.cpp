#include "rgc/extensions.hpp"

namespace rgc {

namespace {

std::string tuple_string(std::span<const Index> t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

// First tuple of degree n+1 where dc does not vanish, if any.
std::optional<std::string> coboundary_defect(const RealCochainComplex& c, const RealCochain& x)
{
    RealCochain dx = c.apply_differential(x);
    const auto& b = c.basis(x.degree + 1);
    for (std::size_t o = 0; o < b.reps.size(); ++o)
        if (dx.values[o] != IntVector(c.coefficients().dim()))
            return tuple_string(c.nerve().level(x.degree + 1).tuple(b.reps[o]));
    return std::nullopt;
}

void require_space(const GradedTwist& a, const GradedTwist& b)
{
    require(a.space && b.space, ErrorKind::invalid_argument, "twist without a base");
    require(a.space == b.space ||
                (a.space->base() == b.space->base() && a.space->coefficients() == b.space->coefficients()),
            ErrorKind::invalid_argument, "twists over different bases or coefficient groups");
}

// kappa delta(g1) delta'(g2), or zero; throws when a nonzero correction is
// needed but S has no designated element of order two.
RealCochain sign_correction(const TwistSpace& sp, const RealCochain& delta, const RealCochain& delta_prime)
{
    const auto& s = sp.coefficients();
    bool needed = false;
    RealCochain out = sp.omega_from([&](Index g1, Index g2) {
        IntVector v(s.dim());
        if (sp.delta_at(delta, g1) && sp.delta_at(delta_prime, g2)) {
            needed = true;
            if (s.kappa())
                v = *s.kappa();
        }
        return v;
    });
    require(!needed || s.kappa().has_value(), ErrorKind::invalid_argument,
            "the grading sign needs a designated element of order 2 in S");
    return out;
}

RealCochain add_cochains(const RealCochainComplex& c, const RealCochain& a, const RealCochain& b)
{
    RealCochain out = a;
    for (std::size_t o = 0; o < out.values.size(); ++o)
        out.values[o] = c.coefficients().add(a.values[o], b.values[o]);
    return out;
}

RealCochain negate_cochain(const RealCochainComplex& c, const RealCochain& a)
{
    RealCochain out = a;
    for (auto& v : out.values)
        v = c.coefficients().negate(v);
    return out;
}

const RealCoefficientGroup& integral_only(const RealCoefficientGroup& s)
{
    require(!s.is_rational(), ErrorKind::invalid_argument, "twists need integral coefficients");
    return s;
}

std::size_t finite_order(const RealCoefficientGroup& s)
{
    require(s.is_finite(), ErrorKind::invalid_argument, "materializing an extension needs a finite S");
    return s.element_count().get_ui();
}

}  // namespace

TwistSpace::TwistSpace(FiniteRealGroupoid base, RealCoefficientGroup s)
    : omega_complex_(base, integral_only(s), 3),
      grading_complex_(base, make_standard("Z2_trivial"), 2)
{
    h2_ = omega_complex_.cohomology(2);
    h1_ = grading_complex_.cohomology(1);
}

IntVector TwistSpace::omega_at(const RealCochain& omega, Index g1, Index g2) const
{
    const std::array<Index, 2> t{g1, g2};
    return omega_complex_.value_at(omega, omega_complex_.nerve().index_of(2, t));
}

int TwistSpace::delta_at(const RealCochain& delta, Index g) const
{
    return grading_complex_.value_at(delta, g)[0] != 0 ? 1 : 0;
}

RealCochain TwistSpace::delta_from(const std::vector<int>& per_arrow) const
{
    const auto& g = base();
    require(per_arrow.size() == g.num_arrows(), ErrorKind::invalid_argument, "grading needs one value per arrow");
    RealCochain d = grading_complex_.zero(1);
    const auto& b = grading_complex_.basis(1);
    for (Index a = 0; a < g.num_arrows(); ++a)
        require(((per_arrow[a] - per_arrow[g.rho_arr(a)]) % 2) == 0, ErrorKind::validation_failed,
                "grading not invariant under rho at g=" + std::to_string(a));
    for (std::size_t o = 0; o < b.reps.size(); ++o)
        d.values[o] = IntVector{Integer(((per_arrow[b.reps[o]] % 2) + 2) % 2)};
    return d;
}

std::shared_ptr<const TwistSpace> make_twist_space(const FiniteRealGroupoid& base, const RealCoefficientGroup& s)
{
    return std::make_shared<const TwistSpace>(base, s);
}

GradedTwist trivial_twist(std::shared_ptr<const TwistSpace> space)
{
    GradedTwist t;
    t.omega = space->omega_complex().zero(2);
    t.delta = space->grading_complex().zero(1);
    t.space = std::move(space);
    return t;
}

ValidationReport validate_twist(const GradedTwist& t)
{
    ValidationReport r;
    const auto& sp = *t.space;
    const auto& oc = sp.omega_complex();
    const auto& gc = sp.grading_complex();
    if (t.omega.degree != 2 || t.omega.values.size() != oc.basis(2).reps.size()) {
        r.add("omega shape", "omega must be a 2-cochain with one value per orbit");
        return r;
    }
    if (t.delta.degree != 1 || t.delta.values.size() != gc.basis(1).reps.size()) {
        r.add("delta shape", "delta must be a 1-cochain with one value per orbit");
        return r;
    }
    if (!oc.is_real(t.omega)) {
        const auto& b = oc.basis(2);
        for (std::size_t o = 0; o < b.reps.size(); ++o)
            if (b.fixed[o] && !sp.coefficients().is_fixed(t.omega.values[o])) {
                r.add("omega not Real", "value at fixed pair " + tuple_string(oc.nerve().level(2).tuple(b.reps[o])) +
                                            " is not fixed by tau");
                break;
            }
    }
    if (auto w = coboundary_defect(oc, t.omega))
        r.add("omega not a cocycle", "d omega nonzero at " + *w);
    if (auto w = coboundary_defect(gc, t.delta))
        r.add("delta not a cocycle", "d delta nonzero at " + *w);
    const auto& g = sp.base();
    for (Index x = 0; x < g.num_objects() && r.ok(); ++x) {
        Index u = g.unit(x);
        for (Index h : g.arrows_into(x))
            if (sp.omega_at(t.omega, u, h) != IntVector(sp.coefficients().dim())) {
                r.add("omega not normalized", "omega(unit, g) nonzero at g=" + std::to_string(h));
                break;
            }
    }
    return r;
}

RealCochain normalize_cocycle(const TwistSpace& space, const RealCochain& omega)
{
    const auto& oc = space.omega_complex();
    const auto& g = space.base();
    RealCochain b = oc.zero(1);
    const auto& basis = oc.basis(1);
    for (std::size_t o = 0; o < basis.reps.size(); ++o) {
        Index a = basis.reps[o];
        if (g.is_unit(a))
            b.values[o] = space.omega_at(omega, a, a);
    }
    return add_cochains(oc, omega, negate_cochain(oc, oc.apply_differential(b)));
}

GradedTwist make_twist(std::shared_ptr<const TwistSpace> space, RealCochain omega, RealCochain delta)
{
    GradedTwist t{space, std::move(omega), std::move(delta)};
    ValidationReport r = validate_twist(t);
    bool only_normalization = true;
    for (const auto& v : r.violations)
        if (v.axiom != "omega not normalized")
            only_normalization = false;
    if (!only_normalization)
        fail(r.has("omega not a cocycle") || r.has("delta not a cocycle") ? ErrorKind::not_a_cocycle
                                                                           : ErrorKind::validation_failed,
             r.to_string());
    t.omega = normalize_cocycle(*space, t.omega);
    return t;
}

IntVector cocycle_class(const TwistSpace& space, const RealCochain& omega)
{
    auto c = space.omega_cohomology().classify(space.omega_complex().flatten(omega));
    require(c.has_value(), ErrorKind::not_a_cocycle, "omega is not a cocycle");
    return *c;
}

IntVector grading_class(const GradedTwist& t)
{
    auto c = t.space->grading_cohomology().classify(t.space->grading_complex().flatten(t.delta));
    require(c.has_value(), ErrorKind::not_a_cocycle, "delta is not a cocycle");
    return *c;
}

DDClass dd_class(const GradedTwist& t) { return DDClass{grading_class(t), cocycle_class(*t.space, t.omega)}; }

bool same_class(const GradedTwist& a, const GradedTwist& b)
{
    require_space(a, b);
    return dd_class(a) == dd_class(b);
}

GradedTwist baer_sum(const GradedTwist& a, const GradedTwist& b)
{
    require_space(a, b);
    const auto& sp = *a.space;
    const auto& oc = sp.omega_complex();
    GradedTwist out{a.space, add_cochains(oc, a.omega, b.omega),
                    add_cochains(sp.grading_complex(), a.delta, b.delta)};
    out.omega = add_cochains(oc, out.omega, sign_correction(sp, b.delta, a.delta));
    return out;
}

GradedTwist opposite(const GradedTwist& t)
{
    const auto& sp = *t.space;
    const auto& oc = sp.omega_complex();
    GradedTwist out{t.space, negate_cochain(oc, t.omega), t.delta};
    out.omega = add_cochains(oc, out.omega, sign_correction(sp, t.delta, t.delta));
    return out;
}

RealCochain cup_cochain(const TwistSpace& space, const RealCochain& delta, const RealCochain& delta_prime)
{
    const auto& gc = space.grading_complex();
    if (auto w = coboundary_defect(gc, delta))
        fail(ErrorKind::not_a_cocycle, "first grading is not a cocycle at " + *w);
    if (auto w = coboundary_defect(gc, delta_prime))
        fail(ErrorKind::not_a_cocycle, "second grading is not a cocycle at " + *w);
    return sign_correction(space, delta, delta_prime);
}

IntVector cup(const TwistSpace& space, const RealCochain& delta, const RealCochain& delta_prime)
{
    return cocycle_class(space, cup_cochain(space, delta, delta_prime));
}

DDClass semidirect_sum(const TwistSpace& space, const GradedTwist& a, const GradedTwist& b)
{
    require_space(a, b);
    const auto& oc = space.omega_complex();
    const auto& gc = space.grading_complex();
    RealCochain d = add_cochains(gc, a.delta, b.delta);
    RealCochain w = add_cochains(oc, add_cochains(oc, a.omega, b.omega), cup_cochain(space, a.delta, b.delta));
    auto dc = space.grading_cohomology().classify(gc.flatten(d));
    require(dc.has_value(), ErrorKind::not_a_cocycle, "delta is not a cocycle");
    return DDClass{*dc, cocycle_class(space, w)};
}

// ---- materialized extensions ----

GroupoidData extension_data(const TwistSpace& space, const RealCochain& omega)
{
    const auto& g = space.base();
    const auto& s = space.coefficients();
    const std::size_t n = finite_order(s);
    std::vector<std::vector<std::size_t>> sum(n, std::vector<std::size_t>(n));
    std::vector<std::size_t> tau(n), neg(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            sum[a][b] = s.element_index(s.add(s.element(a), s.element(b)));
        tau[a] = s.element_index(s.apply_tau(s.element(a)));
        neg[a] = s.element_index(s.negate(s.element(a)));
    }
    auto w = [&](Index g1, Index g2) { return s.element_index(space.omega_at(omega, g1, g2)); };

    GroupoidData d;
    d.objects = g.num_objects();
    const std::size_t m = g.num_arrows() * n;
    d.src.resize(m);
    d.tgt.resize(m);
    d.inv.resize(m);
    d.rho_arr.resize(m);
    for (Index x = 0; x < g.num_objects(); ++x)
        d.rho_obj.push_back(g.rho_obj(x));
    for (Index a = 0; a < g.num_arrows(); ++a) {
        Index ai = g.inv(a);
        Index u = g.unit(g.tgt(a));
        // the unit over u is (-omega(u,u), u)
        std::size_t unit_t = neg[w(u, u)];
        std::size_t base_t = sum[unit_t][neg[w(a, ai)]];
        for (std::size_t t = 0; t < n; ++t) {
            Index e = a * n + t;
            d.src[e] = g.src(a);
            d.tgt[e] = g.tgt(a);
            d.rho_arr[e] = g.rho_arr(a) * n + tau[t];
            d.inv[e] = ai * n + sum[base_t][neg[t]];
        }
        for (Index b : g.arrows_into(g.src(a))) {
            Index ab = g.compose(a, b);
            std::size_t wab = w(a, b);
            for (std::size_t t1 = 0; t1 < n; ++t1)
                for (std::size_t t2 = 0; t2 < n; ++t2)
                    d.comp.push_back({a * n + t1, b * n + t2, ab * n + sum[sum[t1][t2]][wab]});
        }
    }
    return d;
}

ExtensionGroupoid build_extension(const TwistSpace& space, const RealCochain& omega)
{
    const auto& oc = space.omega_complex();
    require(omega.degree == 2, ErrorKind::invalid_argument, "omega must have degree 2");
    require(oc.is_real(omega), ErrorKind::validation_failed, "omega is not Real");
    if (auto w = coboundary_defect(oc, omega))
        fail(ErrorKind::not_a_cocycle, "not a cocycle: associativity fails at " + *w);
    const std::size_t n = finite_order(space.coefficients());
    ExtensionGroupoid e;
    e.total = FiniteRealGroupoid::create(extension_data(space, omega));
    e.fiber_size = n;
    const std::size_t m = e.total.num_arrows();
    e.projection.resize(m);
    e.action.resize(n * m);
    const auto& s = space.coefficients();
    for (Index a = 0; a < m; ++a) {
        e.projection[a] = a / n;
        for (std::size_t t = 0; t < n; ++t)
            e.action[t * m + a] = (a / n) * n + s.element_index(s.add(s.element(t), s.element(a % n)));
    }
    return e;
}

ValidationReport validate_extension(const TwistSpace& space, const ExtensionGroupoid& e)
{
    ValidationReport r;
    const auto& g = space.base();
    const auto& s = space.coefficients();
    const auto& tot = e.total;
    const std::size_t m = tot.num_arrows();
    const std::size_t n = finite_order(s);
    auto w1 = [](Index a) { return "e=" + std::to_string(a); };
    if (tot.num_objects() != g.num_objects() || e.projection.size() != m || e.action.size() != n * m ||
        e.fiber_size != n) {
        r.add("extension shape", "objects, projection and action sizes must match the base and S");
        return r;
    }
    for (Index a = 0; a < m; ++a) {
        Index p = e.projection[a];
        if (p >= g.num_arrows() || g.src(p) != tot.src(a) || g.tgt(p) != tot.tgt(a)) {
            r.add("projection not a strict Real morphism", w1(a));
            return r;
        }
    }
    for (Index x = 0; x < g.num_objects(); ++x)
        if (tot.rho_obj(x) != g.rho_obj(x)) {
            r.add("projection not a strict Real morphism", "x=" + std::to_string(x));
            return r;
        }
    for (Index a = 0; a < m; ++a) {
        if (e.projection[tot.rho_arr(a)] != g.rho_arr(e.projection[a])) {
            r.add("projection not a strict Real morphism", w1(a));
            break;
        }
        for (Index b : tot.arrows_into(tot.src(a)))
            if (e.projection[tot.compose(a, b)] != g.compose(e.projection[a], e.projection[b])) {
                r.add("projection not a strict Real morphism", w1(a));
                return r;
            }
    }
    auto act = [&](std::size_t t, Index a) { return e.action[t * m + a]; };
    std::vector<std::size_t> fiber_count(g.num_arrows(), 0);
    for (Index a = 0; a < m; ++a)
        ++fiber_count[e.projection[a]];
    for (Index a = 0; a < m; ++a) {
        std::vector<char> seen(m, 0);
        bool ok = fiber_count[e.projection[a]] == n;
        for (std::size_t t = 0; t < n && ok; ++t) {
            Index b = act(t, a);
            ok = b < m && e.projection[b] == e.projection[a] && !seen[b];
            if (ok)
                seen[b] = 1;
        }
        if (!ok) {
            r.add("action not free and transitive on fibers", w1(a));
            return r;
        }
    }
    const std::size_t zero = s.element_index(IntVector(s.dim()));
    for (Index a = 0; a < m && r.ok(); ++a) {
        if (act(zero, a) != a)
            r.add("action not an action", w1(a));
        for (std::size_t t1 = 0; t1 < n && r.ok(); ++t1) {
            for (std::size_t t2 = 0; t2 < n; ++t2) {
                std::size_t t12 = s.element_index(s.add(s.element(t1), s.element(t2)));
                if (act(t12, a) != act(t1, act(t2, a))) {
                    r.add("action not an action", w1(a));
                    break;
                }
            }
            std::size_t tt = s.element_index(s.apply_tau(s.element(t1)));
            if (tot.rho_arr(act(t1, a)) != act(tt, tot.rho_arr(a)))
                r.add("action not Real", w1(a));
        }
    }
    for (Index a = 0; a < m && r.ok(); ++a)
        for (Index b : tot.arrows_into(tot.src(a))) {
            for (std::size_t t = 0; t < n; ++t) {
                Index ab = act(t, tot.compose(a, b));
                if (tot.compose(act(t, a), b) != ab || tot.compose(a, act(t, b)) != ab) {
                    r.add("action not central", "(" + std::to_string(a) + "," + std::to_string(b) + ")");
                    break;
                }
            }
            if (!r.ok())
                break;
        }
    return r;
}

std::vector<Index> real_section(const TwistSpace& space, const ExtensionGroupoid& e)
{
    const auto& g = space.base();
    const auto& tot = e.total;
    std::vector<std::vector<Index>> fiber(g.num_arrows());
    for (Index a = 0; a < tot.num_arrows(); ++a)
        fiber[e.projection[a]].push_back(a);
    std::vector<Index> sec(g.num_arrows());
    for (Index a = 0; a < g.num_arrows(); ++a) {
        Index ra = g.rho_arr(a);
        if (ra < a)
            continue;
        require(!fiber[a].empty(), ErrorKind::invalid_argument, "empty fiber over g=" + std::to_string(a));
        if (ra != a) {
            sec[a] = fiber[a].front();
            sec[ra] = tot.rho_arr(sec[a]);
            continue;
        }
        bool found = false;
        for (Index c : fiber[a])
            if (tot.rho_arr(c) == c) {
                sec[a] = c;
                found = true;
                break;
            }
        if (!found)
            fail(ErrorKind::obstruction,
                 "no Real section: the fiber over the fixed arrow g=" + std::to_string(a) + " has no fixed point");
    }
    return sec;
}

RealCochain extract_cocycle(const TwistSpace& space, const ExtensionGroupoid& e, const std::vector<Index>* section)
{
    const auto& g = space.base();
    const auto& s = space.coefficients();
    const auto& tot = e.total;
    const std::size_t m = tot.num_arrows();
    const std::size_t n = finite_order(s);
    std::vector<Index> sec = section ? *section : real_section(space, e);
    require(sec.size() == g.num_arrows(), ErrorKind::invalid_argument, "section needs one arrow per base arrow");
    for (Index a = 0; a < g.num_arrows(); ++a) {
        require(sec[a] < m && e.projection[sec[a]] == a, ErrorKind::invalid_argument,
                "section does not lie over g=" + std::to_string(a));
        require(tot.rho_arr(sec[a]) == sec[g.rho_arr(a)], ErrorKind::invalid_argument,
                "section is not Real at g=" + std::to_string(a));
    }
    // coord[c] = t with c = t . s(pi c)
    std::vector<std::size_t> coord(m, n);
    for (Index a = 0; a < g.num_arrows(); ++a)
        for (std::size_t t = 0; t < n; ++t)
            coord[e.action[t * m + sec[a]]] = t;
    for (Index c = 0; c < m; ++c)
        require(coord[c] < n, ErrorKind::invalid_argument, "action is not transitive on fibers");
    return space.omega_from([&](Index g1, Index g2) { return s.element(coord[tot.compose(sec[g1], sec[g2])]); });
}

TrivialityResult is_strictly_trivial(const GradedTwist& t)
{
    const auto& sp = *t.space;
    TrivialityResult r;
    for (const auto& v : t.delta.values)
        if (v[0] % 2 != 0) {
            r.reason = "the grading is nonzero";
            return r;
        }
    auto b = sp.omega_complex().coboundary_witness(t.omega);
    if (!b) {
        r.reason = "omega is not a coboundary";
        return r;
    }
    r.trivial = true;
    const auto& s = sp.coefficients();
    if (!s.is_finite())
        return r;
    const std::size_t n = s.element_count().get_ui();
    for (Index a = 0; a < sp.base().num_arrows(); ++a)
        r.section.push_back(a * n + s.element_index(s.negate(sp.omega_complex().value_at(*b, a))));
    return r;
}

TrivialInvolutionCount ext_triv_involution_count(const FiniteRealGroupoid& base, unsigned long m)
{
    require(base.involution_trivial(), ErrorKind::invalid_argument, "the base must carry the trivial involution");
    require(m >= 2 && m % 2 == 0, ErrorKind::invalid_argument, "mu(m)_conj has no element of order 2 for odd m");
    auto z2 = make_standard("Z2_trivial");
    auto s = make_standard("mu" + std::to_string(m) + "_conj");
    RealCochainComplex zc(base, z2, 3), sc(base, s, 3);
    TrivialInvolutionCount out;
    out.grading = zc.cohomology(1).invariants();
    out.reference = zc.cohomology(2).invariants();
    out.cocycles = sc.cohomology(2).invariants();
    out.classes = out.grading.order() * out.cocycles.order();
    out.consistent = out.cocycles == out.reference;
    return out;
}

}  // namespace rgc
