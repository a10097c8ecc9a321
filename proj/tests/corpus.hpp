#pragma once

#include "rgc/groupoid.hpp"

#include <string>
#include <vector>

namespace rgc::test {

struct Named {
    std::string name;
    FiniteRealGroupoid g;
};

inline FiniteRealGroupoid sign_action_groupoid()
{
    // Z/2 acting on {+1, -1} by negation; rho negates objects
    std::vector<std::vector<Index>> table{{0, 1}, {1, 0}};
    std::vector<std::vector<Index>> act{{0, 1}, {1, 0}};
    return action_groupoid(table, {0, 1}, act, {1, 0});
}

inline std::vector<Named> corpus()
{
    return {
        {"Z2", cyclic_group(2, false)},
        {"Z3", cyclic_group(3, false)},
        {"Z3_inv", cyclic_group(3, true)},
        {"Z4", cyclic_group(4, false)},
        {"Z4_inv", cyclic_group(4, true)},
        {"pair2", pair_groupoid(2, {0, 1})},
        {"pair2_swap", pair_groupoid(2, {1, 0})},
        {"pair3", pair_groupoid(3, {0, 1, 2})},
        {"pair3_swap", pair_groupoid(3, {1, 0, 2})},
        {"Z2_plus_pair2_swap", disjoint_union(cyclic_group(2, false), pair_groupoid(2, {1, 0}))},
        {"Z2_sign_action", sign_action_groupoid()},
        {"Z2xZ2", klein_four()},
        {"point", point_groupoid()},
        {"two_points_swap", space_groupoid({1, 0})},
    };
}

}  // namespace rgc::test
