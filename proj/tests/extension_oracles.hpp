#pragma once

// Enumeration helpers and the materialized cup-product extension.

#include "rgc/extensions.hpp"

#include <functional>
#include <map>

namespace rgc::test {

// Every Real Z/2-valued 1-cocycle of the base, as per-arrow values.
inline std::vector<std::vector<int>> all_gradings(const TwistSpace& sp)
{
    const auto& g = sp.base();
    const std::size_t m = g.num_arrows();
    std::vector<std::vector<int>> out;
    for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
        std::vector<int> d(m);
        bool ok = true;
        for (Index a = 0; a < m; ++a)
            d[a] = (mask >> a) & 1;
        for (Index a = 0; a < m && ok; ++a) {
            ok = d[a] == d[g.rho_arr(a)];
            for (Index b : g.arrows_into(g.src(a)))
                if (ok)
                    ok = d[g.compose(a, b)] == (d[a] + d[b]) % 2;
        }
        if (ok)
            out.push_back(d);
    }
    return out;
}

// Every normalized Real 2-cocycle with values in a finite S.
inline std::vector<RealCochain> all_normalized_cocycles(const TwistSpace& sp)
{
    const auto& oc = sp.omega_complex();
    const auto& s = sp.coefficients();
    const auto& g = sp.base();
    const auto& b = oc.basis(2);
    const auto& level = oc.nerve().level(2);
    std::vector<std::size_t> free_orbits;
    for (std::size_t o = 0; o < b.reps.size(); ++o) {
        auto t = level.tuple(b.reps[o]);
        if (!g.is_unit(t[0]) && !g.is_unit(t[1]))
            free_orbits.push_back(o);
    }
    const std::size_t n = s.element_count().get_ui();
    std::vector<std::size_t> fixed_elems;
    for (std::size_t e = 0; e < n; ++e)
        if (s.is_fixed(s.element(e)))
            fixed_elems.push_back(e);
    std::vector<RealCochain> out;
    std::vector<std::size_t> digit(free_orbits.size(), 0);
    while (true) {
        RealCochain c = oc.zero(2);
        for (std::size_t k = 0; k < free_orbits.size(); ++k) {
            std::size_t o = free_orbits[k];
            c.values[o] = s.element(b.fixed[o] ? fixed_elems[digit[k]] : digit[k]);
        }
        if (oc.is_cocycle(c))
            out.push_back(c);
        std::size_t k = 0;
        for (; k < free_orbits.size(); ++k) {
            std::size_t radix = b.fixed[free_orbits[k]] ? fixed_elems.size() : n;
            if (++digit[k] < radix)
                break;
            digit[k] = 0;
        }
        if (k == free_orbits.size())
            break;
    }
    return out;
}

// The graded Baer sum of the trivial twists graded by delta_first and
// delta_second, materialized as a quotient: arrows ((t1, t2), g) with the
// graded product, divided by the antidiagonal copy of S. Its cocycle class
// is the cup product delta_second ⌣ delta_first.
inline ExtensionGroupoid cup_extension_oracle(const TwistSpace& sp, const std::vector<int>& delta_first,
                                              const std::vector<int>& delta_second)
{
    const auto& g = sp.base();
    const auto& s = sp.coefficients();
    const std::size_t n = s.element_count().get_ui();
    const std::size_t m = g.num_arrows();
    const IntVector kappa = s.kappa().value();
    auto el = [&](std::size_t i) { return s.element(i); };
    auto idx = [&](const IntVector& v) { return s.element_index(v); };

    // pair arrows p = (g * n + t1) * n + t2, grouped into antidiagonal classes
    const std::size_t pairs = m * n * n;
    std::vector<std::size_t> cls(pairs, pairs);
    std::vector<std::size_t> rep;
    for (std::size_t p = 0; p < pairs; ++p) {
        if (cls[p] != pairs)
            continue;
        const std::size_t a = p / (n * n), t1 = (p / n) % n, t2 = p % n;
        for (std::size_t u = 0; u < n; ++u) {
            std::size_t q = (a * n + idx(s.add(el(t1), el(u)))) * n + idx(s.add(el(t2), s.negate(el(u))));
            cls[q] = rep.size();
        }
        rep.push_back(p);
    }
    auto pair_of = [&](Index a, std::size_t t1, std::size_t t2) { return (a * n + t1) * n + t2; };
    auto product = [&](std::size_t p, std::size_t q) {
        const std::size_t a = p / (n * n), t1 = (p / n) % n, t2 = p % n;
        const std::size_t b = q / (n * n), u1 = (q / n) % n, u2 = q % n;
        IntVector first = s.add(el(t1), el(u1));
        if (delta_second[a] && delta_first[b])
            first = s.add(first, kappa);
        return pair_of(g.compose(a, b), idx(first), idx(s.add(el(t2), el(u2))));
    };

    GroupoidData d;
    d.objects = g.num_objects();
    for (Index x = 0; x < g.num_objects(); ++x)
        d.rho_obj.push_back(g.rho_obj(x));
    const std::size_t k = rep.size();
    for (std::size_t c = 0; c < k; ++c) {
        const Index a = rep[c] / (n * n);
        d.src.push_back(g.src(a));
        d.tgt.push_back(g.tgt(a));
        const std::size_t t1 = (rep[c] / n) % n, t2 = rep[c] % n;
        d.rho_arr.push_back(cls[pair_of(g.rho_arr(a), idx(s.apply_tau(el(t1))), idx(s.apply_tau(el(t2))))]);
    }
    d.inv.assign(k, 0);
    for (std::size_t c1 = 0; c1 < k; ++c1)
        for (std::size_t c2 = 0; c2 < k; ++c2) {
            Index a = rep[c1] / (n * n), b = rep[c2] / (n * n);
            if (g.src(a) != g.tgt(b))
                continue;
            // the product must not depend on the representatives
            std::size_t prod = cls[product(rep[c1], rep[c2])];
            for (std::size_t u = 0; u < n; ++u) {
                std::size_t p2 = pair_of(a, idx(s.add(el((rep[c1] / n) % n), el(u))),
                                         idx(s.add(el(rep[c1] % n), s.negate(el(u)))));
                if (cls[product(p2, rep[c2])] != prod)
                    fail(ErrorKind::internal, "graded product not well defined on the quotient");
            }
            d.comp.push_back({c1, c2, prod});
        }
    // inverses by search
    std::map<std::pair<Index, Index>, Index> comp;
    for (const auto& [x, y, z] : d.comp)
        comp[{x, y}] = z;
    std::vector<Index> unit_of(g.num_objects());
    for (std::size_t c = 0; c < k; ++c)
        if (g.is_unit(rep[c] / (n * n)) && comp.at({c, c}) == c)
            unit_of[d.src[c]] = c;
    for (std::size_t c1 = 0; c1 < k; ++c1)
        for (std::size_t c2 = 0; c2 < k; ++c2) {
            auto it = comp.find({c1, c2});
            if (it != comp.end() && it->second == unit_of[d.tgt[c1]])
                d.inv[c1] = c2;
        }

    ExtensionGroupoid e;
    e.total = FiniteRealGroupoid::create(d);
    e.fiber_size = n;
    e.projection.resize(k);
    e.action.resize(n * k);
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t a = rep[c] / (n * n), t1 = (rep[c] / n) % n, t2 = rep[c] % n;
        e.projection[c] = a;
        for (std::size_t u = 0; u < n; ++u)
            e.action[u * k + c] = cls[pair_of(a, idx(s.add(el(u), el(t1))), t2)];
    }
    return e;
}

}  // namespace rgc::test
