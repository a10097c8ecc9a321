#include "doctest.h"

#include "corpus.hpp"
#include "random_helpers.hpp"
#include "rgc/coefficients.hpp"

using namespace rgc;
using namespace rgc::test;

namespace {

GroupInvariants inv(std::size_t r, std::vector<long> t)
{
    return GroupInvariants{r, std::vector<Integer>(t.begin(), t.end())};
}

// Number of elements of a finite group fixed (sign = 1) or negated (sign = -1) by tau.
std::size_t count_eigen(const RealCoefficientGroup& s, int sign)
{
    std::size_t c = 0;
    for (std::size_t e = 0; e < s.element_count().get_ui(); ++e) {
        IntVector v = s.element(e);
        if (s.equal(s.apply_tau(v), sign > 0 ? v : s.negate(v)))
            ++c;
    }
    return c;
}

// Order of the odd part of the subgroup of elements with tau v = sign v.
std::size_t odd_part(std::size_t n)
{
    while (n % 2 == 0)
        n /= 2;
    return n;
}

}  // namespace

TEST_CASE("standard instances")
{
    auto zs = make_standard("Z_sign");
    CHECK(zs.free_rank() == 1);
    CHECK(zs.tau()(0, 0) == -1);
    auto m4 = make_standard("mu4_conj");
    CHECK(m4.torsion() == std::vector<Integer>{4});
    CHECK(m4.apply_tau({1}) == IntVector{3});
    CHECK(m4.kappa() == std::optional<IntVector>(IntVector{2}));
    CHECK(make_standard("mu(4)_conj") == m4);
    CHECK(make_standard("mu_4_conj") == m4);
    auto q = make_standard("Q(1,1)");
    CHECK(q.is_rational());
    CHECK(q.dim() == 2);
    CHECK(q.tau_rational()(0, 0) == 1);
    CHECK(q.tau_rational()(1, 1) == -1);
    CHECK(make_standard("Z2_trivial").invariants() == inv(0, {2}));
    CHECK(make_standard("Z2_trivial").kappa() == std::optional<IntVector>(IntVector{1}));
    CHECK(make_standard("mu1_conj").invariants().is_trivial());
    CHECK(make_standard("mu6_trivial").involution_trivial());
    CHECK_THROWS_AS(make_standard("S1"), Error);
    CHECK_THROWS_AS(make_standard("mu0_conj"), Error);
}

TEST_CASE("construction is validated")
{
    // tau not an involution
    IntMatrix t(1, 1);
    t(0, 0) = 2;
    CHECK_THROWS_AS(RealCoefficientGroup::integral(0, {5}, t), Error);
    // not a divisibility chain
    CHECK_THROWS_AS(RealCoefficientGroup::integral(0, {4, 6}, IntMatrix::identity(2)), Error);
    CHECK_THROWS_AS(RealCoefficientGroup::integral(0, {1}, IntMatrix::identity(1)), Error);
    // free coordinates cannot map into torsion-free part from torsion
    IntMatrix u(2, 2);
    u(0, 0) = 1;
    u(0, 1) = 1;
    u(1, 1) = 1;
    CHECK_THROWS_AS(RealCoefficientGroup::integral(1, {2}, u), Error);
    // kappa must have order 2 and be fixed
    CHECK_THROWS_AS(RealCoefficientGroup::integral(0, {4}, IntMatrix::identity(1), IntVector{1}), Error);
    IntMatrix neg(1, 1);
    neg(0, 0) = -1;
    CHECK_THROWS_AS(RealCoefficientGroup::integral(1, {}, neg, IntVector{1}), Error);
}

TEST_CASE("fixed and imaginary subgroups")
{
    auto zs = make_standard("Z_sign");
    CHECK(fixed_subgroup(zs).group.invariants().is_trivial());
    CHECK(imaginary_subgroup(zs).group.invariants() == inv(1, {}));

    auto m4 = make_standard("mu4_conj");
    auto f = fixed_subgroup(m4);
    CHECK(f.group.invariants() == inv(0, {2}));
    CHECK(f.group.involution_trivial());
    REQUIRE(f.inclusion.cols() == 1);
    CHECK(m4.equal(f.inclusion.column(0), {2}));
    CHECK(imaginary_subgroup(m4).group.invariants() == inv(0, {4}));

    for (long m : {1L, 2L, 5L, 6L})
        CHECK(fixed_subgroup(make_standard("mu" + std::to_string(m) + "_trivial")).group.invariants() ==
              canonical_invariants(0, {Integer(m)}));

    auto q = fixed_subgroup(make_standard("Q(2,1)"));
    CHECK(q.group.is_rational());
    CHECK(q.group.dim() == 2);
    CHECK(imaginary_subgroup(make_standard("Q(2,1)")).group.dim() == 1);
}

TEST_CASE("subgroups against enumeration on random groups")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto s = random_tau_group(rng);
        auto f = fixed_subgroup(s);
        auto im = imaginary_subgroup(s);
        // inclusion columns land in the right eigenspace
        for (const auto& c : f.inclusion.columns())
            CHECK(s.is_fixed(c));
        for (const auto& c : im.inclusion.columns())
            CHECK(s.equal(s.apply_tau(c), s.negate(c)));
        if (!s.is_finite())
            continue;
        CAPTURE(s.invariants().to_string());
        CHECK(f.group.invariants().order() == count_eigen(s, 1));
        CHECK(im.group.invariants().order() == count_eigen(s, -1));
    }
}

TEST_CASE("localization at two")
{
    CHECK(localize_at_two(inv(2, {2, 6, 12})) == inv(2, {3, 3}));

    IntMatrix neg(1, 1);
    neg(0, 0) = -1;
    auto z3 = RealCoefficientGroup::integral(0, {3}, neg);
    auto h = half_localized_decomposition(z3);
    CHECK(h.real.is_trivial());
    CHECK(h.imaginary == inv(0, {3}));
    CHECK(h.splits);

    auto z6 = RealCoefficientGroup::integral(0, {6}, IntMatrix::identity(1));
    h = half_localized_decomposition(z6);
    CHECK(h.real == inv(0, {3}));
    CHECK(h.imaginary.is_trivial());
    CHECK(h.splits);

    h = half_localized_decomposition(make_standard("Z_sign"));
    CHECK(h.real.is_trivial());
    CHECK(h.imaginary == inv(1, {}));
    CHECK(h.splits);

    h = half_localized_decomposition(make_standard("Q(1,2)"));
    CHECK(h.real == inv(1, {}));
    CHECK(h.imaginary == inv(2, {}));
    CHECK(h.splits);
}

TEST_CASE("localized splitting of elements")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        auto s = random_tau_group(rng);
        auto h = half_localized_decomposition(s);
        CHECK(h.splits);
        CHECK(h.whole == localize_at_two(s.invariants()));
        if (s.is_finite())
            CHECK(h.whole.order() == odd_part(count_eigen(s, 1)) * odd_part(count_eigen(s, -1)));
        for (int k = 0; k < 5; ++k) {
            IntVector v = random_element(rng, s);
            auto [re, im] = split_element(s, v);
            CHECK(localized_equal(s, localized_add(s, re, im), localize(s, v)));
            CHECK(localized_equal(s, localized_tau(s, re), re));
            LocalizedElement neg_im = im;
            for (auto& x : neg_im.numerator)
                x = -x;
            CHECK(localized_equal(s, localized_tau(s, im), neg_im));
        }
    }
}

TEST_CASE("morphisms and short exact sequences")
{
    auto m2 = make_standard("mu2_trivial");
    auto m4 = make_standard("mu4_trivial");
    CoefficientMorphism i{IntMatrix::from_rows({{2}}, 1)};
    CoefficientMorphism p{IntMatrix::from_rows({{1}}, 1)};
    CHECK(check_morphism(m2, m4, i).ok());
    CHECK(check_morphism(m4, m2, p).ok());
    CHECK(check_short_exact(m2, m4, m2, i, p).ok());
    CHECK_FALSE(check_short_exact(m2, m4, m2, CoefficientMorphism{IntMatrix::from_rows({{0}}, 1)}, p).ok());
    // 1 : Z/2 -> Z/4 does not respect relations
    CHECK_FALSE(check_morphism(m2, m4, p).ok());
    // not equivariant: identity Z_sign -> Z_trivial
    CHECK_FALSE(check_morphism(make_standard("Z_sign"), make_standard("Z_trivial"),
                               CoefficientMorphism{IntMatrix::identity(1)})
                    .ok());
    auto c4 = make_standard("mu4_conj");
    auto c2 = make_standard("mu2_conj");
    CHECK(check_short_exact(c2, c4, c2, i, p).ok());
}

TEST_CASE("real representations")
{
    auto z3 = cyclic_group(3, false);
    CHECK(validate_representation(trivial_representation(z3, 1, 1)).ok());

    auto z2 = cyclic_group(2, false);
    RealRepresentation e = trivial_representation(z2, 1, 0);
    e.action[1](0, 0) = -1;
    CHECK(validate_representation(e).ok());

    RealRepresentation bad = trivial_representation(cyclic_group(3, false), 1, 0);
    bad.action[1](0, 0) = 2;
    bad.action[2](0, 0) = 3;
    CHECK(validate_representation(bad).has("action not functorial"));

    // Real compatibility fails when the involution conjugates a non-real action
    RealRepresentation r = trivial_representation(cyclic_group(4, true), 1, 0);
    r.action[1](0, 0) = -1;
    r.action[3](0, 0) = 1;
    CHECK_FALSE(validate_representation(r).ok());

    RealRepresentation n = trivial_representation(z2, 1, 1);
    n.nu[0](0, 0) = 2;
    CHECK_FALSE(validate_representation(n).ok());

    // pair groupoid with swapped objects; identity nu on a type (2,0) fiber
    auto p = pair_groupoid(2, {1, 0});
    CHECK(validate_representation(trivial_representation(p, 2, 0)).ok());
}
