#pragma once

// Finite groupoids with a strict involution, their nerves, and the
// constructions used to compare Morita equivalent groupoids.

#include "rgc/error.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rgc {

using Index = std::size_t;

class RealCoefficientGroup;

// Unvalidated groupoid description, as read from input. comp lists the
// triples (g, h, g∘h) for composable pairs, i.e. src(g) = tgt(h).
struct GroupoidData {
    std::size_t objects = 0;
    std::vector<Index> src;
    std::vector<Index> tgt;
    std::vector<std::array<Index, 3>> comp;
    std::vector<Index> inv;
    std::vector<Index> rho_obj;
    std::vector<Index> rho_arr;

    std::size_t arrows() const noexcept { return src.size(); }
};

// Checks every groupoid and involution axiom; one entry per violated axiom.
ValidationReport validate(const GroupoidData& data);

// Upper bound on arrows accepted by FiniteRealGroupoid::create; read from
// RGC_MAX_ARROWS (default 65536).
std::size_t max_arrows();

class FiniteRealGroupoid {
public:
    FiniteRealGroupoid() = default;

    // Throws Error(validation_failed) carrying the report text on failure.
    static FiniteRealGroupoid create(const GroupoidData& data);

    std::size_t num_objects() const noexcept { return objects_; }
    std::size_t num_arrows() const noexcept { return src_.size(); }

    Index src(Index g) const { return src_[g]; }
    Index tgt(Index g) const { return tgt_[g]; }
    Index unit(Index x) const { return unit_[x]; }
    Index inv(Index g) const { return inv_[g]; }
    Index rho_obj(Index x) const { return rho_obj_[x]; }
    Index rho_arr(Index g) const { return rho_arr_[g]; }
    bool is_unit(Index g) const { return unit_[src_[g]] == g; }

    // g∘h; requires src(g) = tgt(h).
    Index compose(Index g, Index h) const;

    // Arrows with the given target (G^x), ascending.
    const std::vector<Index>& arrows_into(Index x) const { return into_[x]; }

    bool involution_trivial() const;

    GroupoidData data() const;

    friend bool operator==(const FiniteRealGroupoid& a, const FiniteRealGroupoid& b);

private:
    std::size_t objects_ = 0;
    std::vector<Index> src_, tgt_, unit_, inv_, rho_obj_, rho_arr_;
    std::vector<std::vector<Index>> into_;
    std::vector<std::uint32_t> pos_in_target_;  // position of h in into_[tgt h]
    std::vector<std::size_t> comp_offset_;
    std::vector<std::uint32_t> comp_;
};

// ---- nerve ----

// Composable n-tuples in lexicographic order of arrow indices. Level 0
// lists the objects (tuples of width 1).
struct NerveLevel {
    std::size_t degree = 0;
    std::size_t width = 1;
    std::vector<Index> entries;  // count * width, row-major
    std::vector<std::size_t> rho;

    std::size_t size() const noexcept { return rho.size(); }
    std::span<const Index> tuple(std::size_t i) const { return {entries.data() + i * width, width}; }
};

NerveLevel nerve(const FiniteRealGroupoid& g, std::size_t n);

// Face and degeneracy maps on tuples (a degree-0 tuple is {x}).
std::vector<Index> face(const FiniteRealGroupoid& g, std::size_t n, std::size_t i, std::span<const Index> tuple);
std::vector<Index> degeneracy(const FiniteRealGroupoid& g, std::size_t n, std::size_t i,
                              std::span<const Index> tuple);

// All nerve levels up to a degree, with index lookup of tuples.
class Nerve {
public:
    Nerve(const FiniteRealGroupoid& g, std::size_t max_degree);

    std::size_t max_degree() const noexcept { return levels_.size() - 1; }
    const NerveLevel& level(std::size_t n) const { return levels_.at(n); }
    const FiniteRealGroupoid& groupoid() const noexcept { return *g_; }

    // Position of a composable tuple in level n.
    std::size_t index_of(std::size_t n, std::span<const Index> tuple) const;

    std::size_t face_index(std::size_t n, std::size_t i, std::size_t t) const;
    std::size_t degeneracy_index(std::size_t n, std::size_t i, std::size_t t) const;

private:
    const FiniteRealGroupoid* g_;
    std::vector<NerveLevel> levels_;
    // cnt_[k][x]: composable k-tuples whose first arrow has target x
    std::vector<std::vector<std::size_t>> cnt_;
    // first_[k][g]: number of (k+1)-tuples starting with an arrow < g
    std::vector<std::vector<std::size_t>> first_;
    // before_[k][h]: sum of cnt_[k][src h'] over h' < h with tgt h' = tgt h
    std::vector<std::vector<std::size_t>> before_;
};

// Canonical orbit representatives of an involution on {0..n-1}: the
// smaller index of each orbit, ascending.
std::vector<std::size_t> orbit_representatives(const std::vector<std::size_t>& involution);

// ---- constructions ----

struct RealCover {
    std::vector<std::vector<Index>> blocks;
    std::vector<std::size_t> bar;  // index involution, U_bar(j) = rho(U_j)
};

// Checks coverage and Real invariance; fills `bar` when it is empty.
RealCover make_real_cover(const FiniteRealGroupoid& g, std::vector<std::vector<Index>> blocks,
                          std::vector<std::size_t> bar = {});

struct StrictMorphism {
    std::vector<Index> on_objects;
    std::vector<Index> on_arrows;
};

// Checks functoriality and ι∘ρ = ρ∘ι.
ValidationReport check_strict_morphism(const FiniteRealGroupoid& from, const FiniteRealGroupoid& to,
                                       const StrictMorphism& f);

struct CoverGroupoid {
    FiniteRealGroupoid groupoid;
    std::vector<std::array<Index, 2>> objects;  // (j, x)
    std::vector<std::array<Index, 3>> arrows;   // (j0, g, j1)
    StrictMorphism iota;
};

CoverGroupoid cover_groupoid(const FiniteRealGroupoid& g, const RealCover& cover);

// Pair groupoid Y x_X Y of a surjection pi: Y -> X; arrow (y1, y2) goes
// from y2 to y1.
FiniteRealGroupoid cech_groupoid(const std::vector<Index>& pi, std::size_t x_count, const std::vector<Index>& rho_y,
                                 const std::vector<Index>& rho_x);

// Arrows (z1, γ, z2) with φ(z1) = tgt γ and φ(z2) = src γ.
FiniteRealGroupoid pullback_groupoid(const FiniteRealGroupoid& g, const std::vector<Index>& phi,
                                     const std::vector<Index>& rho_z);

// G x S with componentwise structure; S must be finite.
FiniteRealGroupoid product_with_group(const FiniteRealGroupoid& g, const RealCoefficientGroup& s);

// ---- standard examples ----

FiniteRealGroupoid point_groupoid();
// Only identity arrows, over objects with the given involution.
FiniteRealGroupoid space_groupoid(const std::vector<Index>& rho);
// Z/n as a one-object groupoid; rho = identity or inversion.
FiniteRealGroupoid cyclic_group(std::size_t n, bool inversion);
// One-object groupoid from a multiplication table and an automorphism of order <= 2.
FiniteRealGroupoid group_groupoid(const std::vector<std::vector<Index>>& table, const std::vector<Index>& rho);
FiniteRealGroupoid klein_four();
// Pair groupoid on k objects; arrow (i, j) goes from j to i and has index i*k + j.
FiniteRealGroupoid pair_groupoid(std::size_t k, const std::vector<Index>& rho_obj);
FiniteRealGroupoid disjoint_union(const FiniteRealGroupoid& a, const FiniteRealGroupoid& b);
// Action groupoid of a group (table, automorphism rho_g) acting on a set:
// act[g][x]; arrow (g, x) with index g*|X| + x goes from x to g·x.
FiniteRealGroupoid action_groupoid(const std::vector<std::vector<Index>>& table, const std::vector<Index>& rho_g,
                                   const std::vector<std::vector<Index>>& act, const std::vector<Index>& rho_x);

}  // namespace rgc
