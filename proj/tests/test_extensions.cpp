#include "doctest.h"

#include "corpus.hpp"
#include "extension_oracles.hpp"
#include "oracles.hpp"
#include "rgc/extensions.hpp"

#include <random>

using namespace rgc;
using namespace rgc::test;

namespace {

// omega on Z/2 (arrows 0, 1) with omega(1,1) = v and zero elsewhere.
RealCochain z2_omega(const TwistSpace& sp, long v)
{
    return sp.omega_from([&](Index a, Index b) {
        IntVector w(1);
        if (a == 1 && b == 1)
            w[0] = v;
        return w;
    });
}

bool is_zero(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

RealCochain coboundary(const RealCochainComplex& c, const RealCochain& b) { return c.apply_differential(b); }

}  // namespace

TEST_CASE("building extensions")
{
    auto sp = make_twist_space(cyclic_group(2, false), make_standard("mu2_trivial"));
    auto triv = build_extension(*sp, sp->omega_complex().zero(2));
    CHECK(validate_extension(*sp, triv).ok());
    CHECK(find_isomorphism(triv.total, product_with_group(sp->base(), sp->coefficients())).has_value());
    CHECK(find_isomorphism(triv.total, klein_four()).has_value());

    auto z4 = build_extension(*sp, z2_omega(*sp, 1));
    CHECK(validate_extension(*sp, z4).ok());
    CHECK(find_isomorphism(z4.total, cyclic_group(4, false)).has_value());
    // the lift (0,1) squares to the central element (1,0)
    CHECK(z4.total.compose(1 * 2 + 0, 1 * 2 + 0) == 0 * 2 + 1);

    auto kl = make_twist_space(klein_four(), make_standard("mu2_trivial"));
    RealCochain bad = kl->omega_complex().zero(2);
    const auto& level = kl->omega_complex().nerve().level(2);
    for (std::size_t o = 0; o < bad.values.size(); ++o) {
        auto t = level.tuple(kl->omega_complex().basis(2).reps[o]);
        if (t[0] == 1 && t[1] == 2)
            bad.values[o] = {1};
    }
    CHECK_FALSE(kl->omega_complex().is_cocycle(bad));
    try {
        build_extension(*kl, bad);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::not_a_cocycle);
        CHECK(std::string(e.what()).find("(") != std::string::npos);
    }
    CHECK(validate(extension_data(*kl, bad)).has("associativity"));
}

TEST_CASE("associativity holds exactly for cocycles")
{
    for (auto g : {cyclic_group(2, false), klein_four(), cyclic_group(3, true)}) {
        auto sp = make_twist_space(g, make_standard(g.num_arrows() == 3 ? "mu3_conj" : "mu2_trivial"));
        BruteCochains all(g, sp->coefficients(), 2);
        std::size_t checked = 0;
        all.for_each([&](const std::vector<std::size_t>& values) {
            if (checked >= 600)
                return;
            RealCochain w = sp->omega_complex().zero(2);
            const auto& b = sp->omega_complex().basis(2);
            for (std::size_t o = 0; o < b.reps.size(); ++o)
                w.values[o] = sp->coefficients().element(values[b.reps[o]]);
            bool cocycle = sp->omega_complex().is_cocycle(w);
            CHECK(validate(extension_data(*sp, w)).has("associativity") == !cocycle);
            ++checked;
        });
        CHECK(checked > 0);
    }
}

TEST_CASE("extraction inverts building")
{
    for (auto g : {cyclic_group(2, false), klein_four()}) {
        auto sp = make_twist_space(g, make_standard("mu2_trivial"));
        auto cocycles = all_normalized_cocycles(*sp);
        CHECK(cocycles.size() == (g.num_arrows() == 2 ? 2u : 16u));
        for (const auto& w : cocycles) {
            auto e = build_extension(*sp, w);
            auto back = extract_cocycle(*sp, e);
            CHECK(sp->omega_complex().flatten(back) == sp->omega_complex().flatten(w));
        }
    }
    std::mt19937 rng(2);
    for (const auto& [name, g] : corpus()) {
        if (g.num_arrows() > 8)
            continue;
        CAPTURE(name);
        auto sp = make_twist_space(g, make_standard("mu4_conj"));
        const auto& oc = sp->omega_complex();
        for (const auto& gen : sp->omega_cohomology().generators()) {
            RealCochain w = normalize_cocycle(*sp, oc.unflatten(2, gen));
            auto e = build_extension(*sp, w);
            CHECK(validate_extension(*sp, e).ok());
            CHECK(oc.flatten(extract_cocycle(*sp, e)) == oc.flatten(w));
            // a different Real section changes omega by db
            RealCochain b = oc.zero(1);
            for (std::size_t o = 0; o < b.values.size(); ++o)
                b.values[o] = oc.basis(1).fixed[o] ? IntVector{Integer(2 * (rng() % 2))} : IntVector{Integer(rng() % 4)};
            std::vector<Index> sec(g.num_arrows());
            for (Index a = 0; a < g.num_arrows(); ++a)
                sec[a] = a * 4 + sp->coefficients().element_index(oc.value_at(b, a));
            RealCochain twisted = extract_cocycle(*sp, e, &sec);
            IntVector expected = oc.flatten(w);
            IntVector db = oc.flatten(coboundary(oc, b));
            for (std::size_t i = 0; i < expected.size(); ++i)
                expected[i] += db[i];
            reduce_mod(expected, oc.integral_level(2).moduli);
            CHECK(oc.flatten(twisted) == expected);
            CHECK(cocycle_class(*sp, twisted) == cocycle_class(*sp, w));
        }
    }
}

TEST_CASE("a fixed arrow without a fixed lift obstructs Real sections")
{
    auto sp = make_twist_space(cyclic_group(2, false), make_standard("mu4_conj"));
    // Z/8 with x -> -x over Z/2; the kernel 2Z/8 carries the conjugation
    ExtensionGroupoid e;
    e.total = cyclic_group(8, true);
    e.fiber_size = 4;
    for (Index x = 0; x < 8; ++x)
        e.projection.push_back(x % 2);
    e.action.resize(4 * 8);
    for (std::size_t t = 0; t < 4; ++t)
        for (Index x = 0; x < 8; ++x)
            e.action[t * 8 + x] = (x + 2 * t) % 8;
    CHECK(validate_extension(*sp, e).ok());
    try {
        real_section(*sp, e);
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::obstruction);
    }
    CHECK_THROWS_AS(extract_cocycle(*sp, e), Error);
}

TEST_CASE("normalization and twist validation")
{
    auto sp = make_twist_space(cyclic_group(3, false), make_standard("mu3_trivial"));
    const auto& oc = sp->omega_complex();
    RealCochain b = oc.zero(1);
    b.values = {{1}, {2}, {0}};
    RealCochain w = coboundary(oc, b);
    GradedTwist t{sp, w, sp->grading_complex().zero(1)};
    CHECK(validate_twist(t).has("omega not normalized"));
    GradedTwist n = make_twist(sp, w, sp->grading_complex().zero(1));
    CHECK(validate_twist(n).ok());
    CHECK(same_class(n, trivial_twist(sp)));

    RealCochain nc = oc.zero(2);
    nc.values[4] = {1};
    CHECK_THROWS_AS(make_twist(sp, nc, sp->grading_complex().zero(1)), Error);
    CHECK(validate_twist(GradedTwist{sp, nc, sp->grading_complex().zero(1)}).has("omega not a cocycle"));

    auto z2 = make_twist_space(cyclic_group(2, false), make_standard("mu2_trivial"));
    RealCochain bad_delta = z2->grading_complex().zero(1);
    bad_delta.values = {{1}, {0}};
    CHECK(validate_twist(GradedTwist{z2, z2->omega_complex().zero(2), bad_delta}).has("delta not a cocycle"));
}

TEST_CASE("Baer sums and opposites")
{
    for (const auto& sname : {"mu2_trivial", "mu4_conj", "mu4_trivial"}) {
        CAPTURE(sname);
        auto sp = make_twist_space(cyclic_group(2, false), make_standard(sname));
        auto zero = trivial_twist(sp);
        std::vector<GradedTwist> twists;
        for (const auto& d : all_gradings(*sp))
            for (const auto& w : all_normalized_cocycles(*sp))
                twists.push_back(make_twist(sp, w, sp->delta_from(d)));
        REQUIRE(!twists.empty());
        for (const auto& a : twists) {
            CHECK(same_class(baer_sum(a, zero), a));
            CHECK(same_class(baer_sum(zero, a), a));
            CHECK(dd_class(baer_sum(a, opposite(a))) == dd_class(zero));
            CHECK(same_class(opposite(opposite(a)), a));
            CHECK(validate_twist(baer_sum(a, opposite(a))).ok());
            for (const auto& b : twists) {
                CHECK(same_class(baer_sum(a, b), baer_sum(b, a)));
                for (const auto& c : twists)
                    CHECK(same_class(baer_sum(baer_sum(a, b), c), baer_sum(a, baer_sum(b, c))));
            }
        }
        CHECK(same_class(opposite(zero), zero));
    }
    // ungraded: classes add
    auto sp = make_twist_space(klein_four(), make_standard("mu2_trivial"));
    auto cocycles = all_normalized_cocycles(*sp);
    auto d0 = sp->grading_complex().zero(1);
    for (std::size_t i = 0; i < cocycles.size(); i += 7)
        for (std::size_t j = 0; j < cocycles.size(); j += 5) {
            auto s = baer_sum(make_twist(sp, cocycles[i], d0), make_twist(sp, cocycles[j], d0));
            IntVector expected = cocycle_class(*sp, cocycles[i]);
            IntVector y = cocycle_class(*sp, cocycles[j]);
            for (std::size_t k = 0; k < expected.size(); ++k)
                expected[k] = (expected[k] + y[k]) % sp->omega_cohomology().orders()[k];
            CHECK(dd_class(s).cocycle == expected);
            // the extension of the sum realizes the same class
            CHECK(cocycle_class(*sp, extract_cocycle(*sp, build_extension(*sp, s.omega))) == expected);
        }
}

TEST_CASE("strict triviality")
{
    auto sp = make_twist_space(cyclic_group(2, false), make_standard("mu2_trivial"));
    auto r = is_strictly_trivial(trivial_twist(sp));
    REQUIRE(r.trivial);
    auto e = build_extension(*sp, sp->omega_complex().zero(2));
    StrictMorphism sec{{0}, r.section};
    CHECK(check_strict_morphism(sp->base(), e.total, sec).ok());

    auto z4 = make_twist(sp, z2_omega(*sp, 1), sp->grading_complex().zero(1));
    CHECK_FALSE(is_strictly_trivial(z4).trivial);
    auto graded = make_twist(sp, sp->omega_complex().zero(2), sp->delta_from({0, 1}));
    auto rg = is_strictly_trivial(graded);
    CHECK_FALSE(rg.trivial);
    CHECK(rg.reason == "the grading is nonzero");

    // a nonzero coboundary is split by a section built from its primitive
    auto p = make_twist_space(pair_groupoid(2, {1, 0}), make_standard("mu4_trivial"));
    const auto& oc = p->omega_complex();
    RealCochain b = oc.zero(1);
    for (std::size_t o = 0; o < b.values.size(); ++o)
        if (!p->base().is_unit(oc.basis(1).reps[o]) && !oc.basis(1).fixed[o])
            b.values[o] = {1};
    auto t = make_twist(p, coboundary(oc, b), p->grading_complex().zero(1));
    CHECK_FALSE(is_zero(oc.flatten(t.omega)));
    auto rt = is_strictly_trivial(t);
    REQUIRE(rt.trivial);
    auto et = build_extension(*p, t.omega);
    CHECK(check_strict_morphism(p->base(), et.total, StrictMorphism{{0, 1}, rt.section}).ok());
}

TEST_CASE("gradings")
{
    auto sp = make_twist_space(cyclic_group(2, false), make_standard("mu2_trivial"));
    CHECK(is_zero(grading_class(trivial_twist(sp))));
    auto sign = make_twist(sp, sp->omega_complex().zero(2), sp->delta_from({0, 1}));
    CHECK(grading_class(sign) == IntVector{1});
    CHECK(sp->grading_cohomology().invariants().torsion == std::vector<Integer>{2});
    CHECK_THROWS_AS(make_twist_space(cyclic_group(4, true), make_standard("mu2_trivial"))->delta_from({0, 1, 0, 0}),
                    Error);
    for (const auto& [name, g] : corpus()) {
        if (g.num_arrows() > 8)
            continue;
        auto s = make_twist_space(g, make_standard("mu2_trivial"));
        for (const auto& d : all_gradings(*s)) {
            auto delta = s->delta_from(d);
            for (Index a = 0; a < g.num_arrows(); ++a)
                CHECK(s->delta_at(delta, g.rho_arr(a)) == s->delta_at(delta, a));
        }
        // every class of HR^1(Z/2) is realized by a grading
        std::set<IntVector> classes;
        for (const auto& d : all_gradings(*s))
            classes.insert(*s->grading_cohomology().classify(s->grading_complex().flatten(s->delta_from(d))));
        CHECK(classes.size() == s->grading_cohomology().invariants().order());
    }
}

TEST_CASE("cup products")
{
    auto sp = make_twist_space(cyclic_group(2, false), make_standard("mu4_conj"));
    auto zero = sp->grading_complex().zero(1);
    auto gen = sp->delta_from({0, 1});
    CHECK(is_zero(cup(*sp, zero, gen)));
    CHECK_FALSE(is_zero(cup(*sp, gen, gen)));
    auto bad = sp->grading_complex().zero(1);
    bad.values = {{1}, {0}};
    CHECK_THROWS_AS(cup(*sp, bad, gen), Error);
    CHECK_THROWS_AS(cup(*make_twist_space(cyclic_group(2, false), make_standard("mu3_conj")), gen, gen), Error);

    auto kl = make_twist_space(klein_four(), make_standard("mu2_trivial"));
    auto gradings = all_gradings(*kl);
    CHECK(gradings.size() == 4);
    for (const auto& a : gradings)
        for (const auto& b : gradings)
            for (const auto& c : gradings) {
                std::vector<int> ab(a.size());
                for (std::size_t i = 0; i < a.size(); ++i)
                    ab[i] = (a[i] + b[i]) % 2;
                IntVector lhs = cup(*kl, kl->delta_from(ab), kl->delta_from(c));
                IntVector x = cup(*kl, kl->delta_from(a), kl->delta_from(c));
                IntVector y = cup(*kl, kl->delta_from(b), kl->delta_from(c));
                for (std::size_t k = 0; k < x.size(); ++k)
                    x[k] = (x[k] + y[k]) % kl->omega_cohomology().orders()[k];
                CHECK(lhs == x);
            }
}

TEST_CASE("cup formula against the materialized extension")
{
    for (const auto& [name, g] : corpus()) {
        if (g.num_arrows() > 8)
            continue;
        for (const auto& sname : {"mu2_trivial", "mu4_conj"}) {
            CAPTURE(name);
            CAPTURE(sname);
            auto sp = make_twist_space(g, make_standard(sname));
            for (const auto& d1 : all_gradings(*sp))
                for (const auto& d2 : all_gradings(*sp)) {
                    auto e = cup_extension_oracle(*sp, d2, d1);
                    CHECK(validate_extension(*sp, e).ok());
                    auto w = extract_cocycle(*sp, e);
                    CHECK(cocycle_class(*sp, w) == cup(*sp, sp->delta_from(d1), sp->delta_from(d2)));
                }
        }
    }
}

TEST_CASE("Dixmier-Douady classes and the semidirect law")
{
    auto sp = make_twist_space(cyclic_group(2, false), make_standard("mu2_trivial"));
    CHECK(dd_class(trivial_twist(sp)) == DDClass{{0}, {0}});
    std::vector<GradedTwist> twists;
    std::set<std::pair<IntVector, IntVector>> classes;
    for (const auto& d : all_gradings(*sp))
        for (const auto& w : all_normalized_cocycles(*sp)) {
            twists.push_back(make_twist(sp, w, sp->delta_from(d)));
            auto c = dd_class(twists.back());
            classes.insert({c.grading, c.cocycle});
        }
    CHECK(classes.size() == 4);
    for (const auto& a : twists)
        for (const auto& b : twists)
            CHECK(dd_class(baer_sum(a, b)) == semidirect_sum(*sp, a, b));
    // the sign term matters: the graded generator added to itself
    GradedTwist g{sp, sp->omega_complex().zero(2), sp->delta_from({0, 1})};
    CHECK(dd_class(baer_sum(g, g)).cocycle == IntVector{1});
}

TEST_CASE("extensions of bases with trivial involution")
{
    auto z2 = ext_triv_involution_count(cyclic_group(2, false), 4);
    CHECK(z2.classes == 4);
    CHECK(z2.consistent);
    CHECK(ext_triv_involution_count(point_groupoid(), 4).classes == 1);
    auto z3 = ext_triv_involution_count(cyclic_group(3, false), 4);
    CHECK(z3.classes == 1);
    CHECK(z3.consistent);
    CHECK(ext_triv_involution_count(klein_four(), 6).consistent);
    CHECK_THROWS_AS(ext_triv_involution_count(cyclic_group(2, false), 3), Error);
    CHECK_THROWS_AS(ext_triv_involution_count(cyclic_group(4, true), 4), Error);
}
