#include "rgc/groupoid.hpp"

#include "rgc/coefficients.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_map>

namespace rgc {

namespace {

constexpr std::size_t kMaxComposablePairs = std::size_t(1) << 28;
constexpr std::size_t kMaxNerveTuples = std::size_t(1) << 24;

std::string w1(const char* name, Index a) { return std::string(name) + "=" + std::to_string(a); }

std::string w2(Index a, Index b) { return "(g,h)=(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

std::string w3(Index a, Index b, Index c)
{
    return "(g,h,k)=(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

bool all_below(const std::vector<Index>& v, std::size_t bound, Index& bad)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] >= bound) {
            bad = i;
            return false;
        }
    return true;
}

std::vector<Index> group_inverses(const std::vector<std::vector<Index>>& table, Index e)
{
    std::vector<Index> inv(table.size(), table.size());
    for (Index g = 0; g < table.size(); ++g)
        for (Index h = 0; h < table.size(); ++h)
            if (table[g][h] == e)
                inv[g] = h;
    return inv;
}

Index group_identity(const std::vector<std::vector<Index>>& table)
{
    for (Index e = 0; e < table.size(); ++e) {
        bool ok = true;
        for (Index g = 0; g < table.size() && ok; ++g)
            ok = table[e][g] == g && table[g][e] == g;
        if (ok)
            return e;
    }
    fail(ErrorKind::invalid_argument, "group table has no identity");
}

}  // namespace

std::size_t max_arrows()
{
    if (const char* env = std::getenv("RGC_MAX_ARROWS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 65536;
}

ValidationReport validate(const GroupoidData& d)
{
    ValidationReport r;
    const std::size_t n = d.objects, a = d.arrows();
    if (d.tgt.size() != a || d.inv.size() != a || d.rho_arr.size() != a || d.rho_obj.size() != n) {
        r.add("array sizes", "src/tgt/inv/rho_arr need one entry per arrow, rho_obj one per object");
        return r;
    }
    Index bad = 0;
    if (!all_below(d.src, n, bad))
        r.add("index out of range", w1("src of g", bad));
    if (!all_below(d.tgt, n, bad))
        r.add("index out of range", w1("tgt of g", bad));
    if (!all_below(d.inv, a, bad))
        r.add("index out of range", w1("inv of g", bad));
    if (!all_below(d.rho_arr, a, bad))
        r.add("index out of range", w1("rho_arr of g", bad));
    if (!all_below(d.rho_obj, n, bad))
        r.add("index out of range", w1("rho_obj of x", bad));
    if (!r.ok())
        return r;

    // composition lookup
    std::unordered_map<std::uint64_t, Index> comp;
    comp.reserve(d.comp.size() * 2);
    bool comp_ok = true;
    for (const auto& [g, h, m] : d.comp) {
        if (g >= a || h >= a || m >= a) {
            r.add("composition index out of range", w2(g, h));
            comp_ok = false;
            continue;
        }
        if (d.src[g] != d.tgt[h]) {
            if (!r.has("composition defined on non-composable pair"))
                r.add("composition defined on non-composable pair", w2(g, h));
            comp_ok = false;
            continue;
        }
        auto [it, inserted] = comp.emplace(std::uint64_t(g) * a + h, m);
        if (!inserted && it->second != m) {
            if (!r.has("composition not a function"))
                r.add("composition not a function", w2(g, h));
            comp_ok = false;
        }
    }
    std::vector<std::vector<Index>> into(n);
    for (Index g = 0; g < a; ++g)
        into[d.tgt[g]].push_back(g);
    for (Index g = 0; g < a && comp_ok; ++g)
        for (Index h : into[d.src[g]])
            if (!comp.count(std::uint64_t(g) * a + h)) {
                r.add("composition undefined on composable pair", w2(g, h));
                comp_ok = false;
                break;
            }
    if (!comp_ok)
        return r;
    auto c = [&](Index g, Index h) { return comp.at(std::uint64_t(g) * a + h); };

    for (Index g = 0; g < a; ++g)
        for (Index h : into[d.src[g]]) {
            Index gh = c(g, h);
            if (d.tgt[gh] != d.tgt[g] || d.src[gh] != d.src[h]) {
                if (!r.has("composition incompatible with src/tgt"))
                    r.add("composition incompatible with src/tgt", w2(g, h));
            }
        }
    if (!r.ok())
        return r;

    // units: the idempotent loops
    std::vector<Index> unit(n, a);
    bool units_ok = true;
    for (Index g = 0; g < a; ++g) {
        if (d.src[g] != d.tgt[g] || c(g, g) != g)
            continue;
        if (unit[d.src[g]] != a) {
            r.add("unit not unique", w1("x", d.src[g]));
            units_ok = false;
        }
        unit[d.src[g]] = g;
    }
    for (Index x = 0; x < n; ++x)
        if (unit[x] == a) {
            r.add("missing unit", w1("x", x));
            units_ok = false;
            break;
        }
    if (units_ok)
        for (Index g = 0; g < a; ++g)
            if (c(unit[d.tgt[g]], g) != g || c(g, unit[d.src[g]]) != g) {
                r.add("unit law", w1("g", g));
                break;
            }

    for (Index g = 0; g < a && !r.has("associativity"); ++g)
        for (Index h : into[d.src[g]]) {
            for (Index k : into[d.src[h]])
                if (c(c(g, h), k) != c(g, c(h, k))) {
                    r.add("associativity", w3(g, h, k));
                    break;
                }
            if (r.has("associativity"))
                break;
        }

    if (units_ok)
        for (Index g = 0; g < a; ++g) {
            Index gi = d.inv[g];
            if (d.src[gi] != d.tgt[g] || d.tgt[gi] != d.src[g] || c(gi, g) != unit[d.src[g]] ||
                c(g, gi) != unit[d.tgt[g]]) {
                r.add("inverse law", w1("g", g));
                break;
            }
        }

    for (Index x = 0; x < n; ++x)
        if (d.rho_obj[d.rho_obj[x]] != x) {
            r.add("rho_obj not 2-periodic", w1("x", x));
            break;
        }
    for (Index g = 0; g < a; ++g)
        if (d.rho_arr[d.rho_arr[g]] != g) {
            r.add("rho not 2-periodic", w1("g", g));
            break;
        }
    bool rho_st = true;
    for (Index g = 0; g < a; ++g)
        if (d.src[d.rho_arr[g]] != d.rho_obj[d.src[g]] || d.tgt[d.rho_arr[g]] != d.rho_obj[d.tgt[g]]) {
            r.add("rho does not commute with src/tgt", w1("g", g));
            rho_st = false;
            break;
        }
    if (rho_st) {
        for (Index g = 0; g < a && !r.has("rho not a homomorphism"); ++g)
            for (Index h : into[d.src[g]])
                if (d.rho_arr[c(g, h)] != c(d.rho_arr[g], d.rho_arr[h])) {
                    r.add("rho not a homomorphism", w2(g, h));
                    break;
                }
        if (units_ok)
            for (Index x = 0; x < n; ++x)
                if (d.rho_arr[unit[x]] != unit[d.rho_obj[x]]) {
                    r.add("rho does not preserve units", w1("x", x));
                    break;
                }
    }
    for (Index g = 0; g < a; ++g)
        if (d.rho_arr[d.inv[g]] != d.inv[d.rho_arr[g]]) {
            r.add("rho does not commute with inv", w1("g", g));
            break;
        }
    return r;
}

FiniteRealGroupoid FiniteRealGroupoid::create(const GroupoidData& d)
{
    if (d.arrows() > max_arrows())
        fail(ErrorKind::limit_exceeded,
             "groupoid has " + std::to_string(d.arrows()) + " arrows, limit is " + std::to_string(max_arrows()));
    ValidationReport rep = validate(d);
    if (!rep.ok())
        fail(ErrorKind::validation_failed, "invalid groupoid:\n" + rep.to_string());

    FiniteRealGroupoid g;
    const std::size_t a = d.arrows();
    g.objects_ = d.objects;
    g.src_ = d.src;
    g.tgt_ = d.tgt;
    g.inv_ = d.inv;
    g.rho_obj_ = d.rho_obj;
    g.rho_arr_ = d.rho_arr;
    g.into_.assign(d.objects, {});
    g.pos_in_target_.assign(a, 0);
    for (Index h = 0; h < a; ++h) {
        g.pos_in_target_[h] = static_cast<std::uint32_t>(g.into_[d.tgt[h]].size());
        g.into_[d.tgt[h]].push_back(h);
    }
    g.comp_offset_.assign(a + 1, 0);
    for (Index x = 0; x < a; ++x)
        g.comp_offset_[x + 1] = g.comp_offset_[x] + g.into_[d.src[x]].size();
    if (g.comp_offset_[a] > kMaxComposablePairs)
        fail(ErrorKind::limit_exceeded, "too many composable pairs");
    g.comp_.assign(g.comp_offset_[a], 0);
    for (const auto& [x, y, m] : d.comp)
        g.comp_[g.comp_offset_[x] + g.pos_in_target_[y]] = static_cast<std::uint32_t>(m);
    g.unit_.assign(d.objects, 0);
    for (Index x = 0; x < a; ++x)
        if (d.src[x] == d.tgt[x] && g.compose(x, x) == x)
            g.unit_[d.src[x]] = x;
    return g;
}

Index FiniteRealGroupoid::compose(Index g, Index h) const
{
    require(g < num_arrows() && h < num_arrows() && src_[g] == tgt_[h], ErrorKind::invalid_argument,
            "compose: arrows " + std::to_string(g) + ", " + std::to_string(h) + " are not composable");
    return comp_[comp_offset_[g] + pos_in_target_[h]];
}

bool FiniteRealGroupoid::involution_trivial() const
{
    for (Index x = 0; x < objects_; ++x)
        if (rho_obj_[x] != x)
            return false;
    for (Index g = 0; g < num_arrows(); ++g)
        if (rho_arr_[g] != g)
            return false;
    return true;
}

GroupoidData FiniteRealGroupoid::data() const
{
    GroupoidData d;
    d.objects = objects_;
    d.src = src_;
    d.tgt = tgt_;
    d.inv = inv_;
    d.rho_obj = rho_obj_;
    d.rho_arr = rho_arr_;
    for (Index g = 0; g < num_arrows(); ++g)
        for (Index h : into_[src_[g]])
            d.comp.push_back({g, h, compose(g, h)});
    return d;
}

bool operator==(const FiniteRealGroupoid& a, const FiniteRealGroupoid& b)
{
    return a.objects_ == b.objects_ && a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.inv_ == b.inv_ &&
           a.rho_obj_ == b.rho_obj_ && a.rho_arr_ == b.rho_arr_ && a.comp_ == b.comp_;
}

// ---- nerve ----

std::vector<Index> face(const FiniteRealGroupoid& g, std::size_t n, std::size_t i, std::span<const Index> t)
{
    require(n >= 1 && i <= n, ErrorKind::invalid_argument, "face: index out of range");
    require(t.size() == n, ErrorKind::invalid_argument, "face: tuple length does not match degree");
    if (n == 1)
        return {i == 0 ? g.src(t[0]) : g.tgt(t[0])};
    std::vector<Index> out;
    out.reserve(n - 1);
    if (i == 0) {
        out.assign(t.begin() + 1, t.end());
    } else if (i == n) {
        out.assign(t.begin(), t.end() - 1);
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i - 1) {
                out.push_back(g.compose(t[k], t[k + 1]));
                ++k;
            } else {
                out.push_back(t[k]);
            }
        }
    }
    return out;
}

std::vector<Index> degeneracy(const FiniteRealGroupoid& g, std::size_t n, std::size_t i, std::span<const Index> t)
{
    require(i <= n, ErrorKind::invalid_argument, "degeneracy: index out of range");
    require(t.size() == std::max<std::size_t>(n, 1), ErrorKind::invalid_argument,
            "degeneracy: tuple length does not match degree");
    if (n == 0)
        return {g.unit(t[0])};
    std::vector<Index> out(t.begin(), t.end());
    if (i == 0)
        out.insert(out.begin(), g.unit(g.tgt(t[0])));
    else
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), g.unit(g.src(t[i - 1])));
    return out;
}

Nerve::Nerve(const FiniteRealGroupoid& g, std::size_t max_degree) : g_(&g)
{
    const std::size_t a = g.num_arrows(), n_obj = g.num_objects();
    cnt_.assign(max_degree + 1, std::vector<std::size_t>(n_obj, 0));
    std::fill(cnt_[0].begin(), cnt_[0].end(), 1);
    for (std::size_t k = 1; k <= max_degree; ++k)
        for (Index x = 0; x < n_obj; ++x) {
            std::size_t s = 0;
            for (Index h : g.arrows_into(x))
                s += cnt_[k - 1][g.src(h)];
            cnt_[k][x] = s;
        }
    first_.assign(max_degree, std::vector<std::size_t>(a, 0));
    before_.assign(max_degree, std::vector<std::size_t>(a, 0));
    for (std::size_t k = 0; k < max_degree; ++k) {
        std::size_t s = 0;
        for (Index h = 0; h < a; ++h) {
            first_[k][h] = s;
            s += cnt_[k][g.src(h)];
        }
        if (s > kMaxNerveTuples)
            fail(ErrorKind::limit_exceeded, "nerve level " + std::to_string(k + 1) + " has too many tuples");
        for (Index x = 0; x < n_obj; ++x) {
            std::size_t acc = 0;
            for (Index h : g.arrows_into(x)) {
                before_[k][h] = acc;
                acc += cnt_[k][g.src(h)];
            }
        }
    }

    levels_.resize(max_degree + 1);
    NerveLevel& l0 = levels_[0];
    l0.degree = 0;
    l0.width = 1;
    for (Index x = 0; x < n_obj; ++x) {
        l0.entries.push_back(x);
        l0.rho.push_back(g.rho_obj(x));
    }
    for (std::size_t n = 1; n <= max_degree; ++n) {
        NerveLevel& l = levels_[n];
        l.degree = n;
        l.width = n;
        std::vector<Index> cur(n);
        // depth-first enumeration; into-lists are ascending, so the order is lexicographic
        std::vector<std::size_t> pos(n, 0);
        auto options = [&](std::size_t depth) -> std::size_t {
            return depth == 0 ? a : g.arrows_into(g.src(cur[depth - 1])).size();
        };
        auto pick = [&](std::size_t depth, std::size_t p) -> Index {
            return depth == 0 ? p : g.arrows_into(g.src(cur[depth - 1]))[p];
        };
        std::size_t depth = 0;
        pos[0] = 0;
        while (true) {
            if (pos[depth] < options(depth)) {
                cur[depth] = pick(depth, pos[depth]);
                if (depth + 1 == n) {
                    l.entries.insert(l.entries.end(), cur.begin(), cur.end());
                    ++pos[depth];
                } else {
                    ++depth;
                    pos[depth] = 0;
                }
            } else {
                if (depth == 0)
                    break;
                --depth;
                ++pos[depth];
            }
        }
        const std::size_t count = l.entries.size() / n;
        l.rho.resize(count);
        std::vector<Index> r(n);
        for (std::size_t t = 0; t < count; ++t) {
            for (std::size_t k = 0; k < n; ++k)
                r[k] = g.rho_arr(l.entries[t * n + k]);
            l.rho[t] = index_of(n, r);
        }
    }
}

std::size_t Nerve::index_of(std::size_t n, std::span<const Index> t) const
{
    require(n <= max_degree(), ErrorKind::invalid_argument, "nerve degree beyond the computed range");
    if (n == 0)
        return t[0];
    std::size_t r = first_[n - 1][t[0]];
    for (std::size_t i = 1; i < n; ++i)
        r += before_[n - 1 - i][t[i]];
    return r;
}

std::size_t Nerve::face_index(std::size_t n, std::size_t i, std::size_t t) const
{
    return index_of(n - 1, face(*g_, n, i, levels_[n].tuple(t)));
}

std::size_t Nerve::degeneracy_index(std::size_t n, std::size_t i, std::size_t t) const
{
    return index_of(n + 1, degeneracy(*g_, n, i, levels_[n].tuple(t)));
}

NerveLevel nerve(const FiniteRealGroupoid& g, std::size_t n) { return Nerve(g, n).level(n); }

std::vector<std::size_t> orbit_representatives(const std::vector<std::size_t>& involution)
{
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < involution.size(); ++i)
        if (involution[i] >= i)
            reps.push_back(i);
    return reps;
}

// ---- constructions ----

RealCover make_real_cover(const FiniteRealGroupoid& g, std::vector<std::vector<Index>> blocks,
                          std::vector<std::size_t> bar)
{
    const std::size_t n = g.num_objects();
    require(!blocks.empty() || n == 0, ErrorKind::invalid_argument, "cover has no blocks");
    std::vector<bool> covered(n, false);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        auto& b = blocks[j];
        require(!b.empty(), ErrorKind::invalid_argument, "cover block " + std::to_string(j) + " is empty");
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        for (Index x : b) {
            require(x < n, ErrorKind::invalid_argument, "cover block " + std::to_string(j) + " has an invalid object");
            covered[x] = true;
        }
    }
    for (Index x = 0; x < n; ++x)
        require(covered[x], ErrorKind::invalid_argument, "cover misses object " + std::to_string(x));

    auto image = [&](std::size_t j) {
        std::vector<Index> im;
        for (Index x : blocks[j])
            im.push_back(g.rho_obj(x));
        std::sort(im.begin(), im.end());
        return im;
    };
    const std::size_t none = blocks.size();
    if (bar.empty()) {
        bar.assign(blocks.size(), none);
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            if (bar[j] != none)
                continue;
            auto im = image(j);
            if (im == blocks[j]) {
                bar[j] = j;
                continue;
            }
            for (std::size_t k = j + 1; k < blocks.size(); ++k)
                if (bar[k] == none && blocks[k] == im) {
                    bar[j] = k;
                    bar[k] = j;
                    break;
                }
            require(bar[j] != none, ErrorKind::invalid_argument,
                    "cover is not Real: no partner block for block " + std::to_string(j));
        }
    } else {
        require(bar.size() == blocks.size(), ErrorKind::invalid_argument, "cover index involution has wrong size");
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            require(bar[j] < blocks.size() && bar[bar[j]] == j, ErrorKind::invalid_argument,
                    "cover index map is not an involution");
            require(blocks[bar[j]] == image(j), ErrorKind::invalid_argument,
                    "cover is not Real: block " + std::to_string(bar[j]) + " is not the image of block " +
                        std::to_string(j));
        }
    }
    return RealCover{std::move(blocks), std::move(bar)};
}

ValidationReport check_strict_morphism(const FiniteRealGroupoid& from, const FiniteRealGroupoid& to,
                                       const StrictMorphism& f)
{
    ValidationReport r;
    if (f.on_objects.size() != from.num_objects() || f.on_arrows.size() != from.num_arrows()) {
        r.add("morphism size", "maps must cover every object and arrow");
        return r;
    }
    for (Index g = 0; g < from.num_arrows(); ++g) {
        Index fg = f.on_arrows[g];
        if (fg >= to.num_arrows() || to.src(fg) != f.on_objects[from.src(g)] || to.tgt(fg) != f.on_objects[from.tgt(g)]) {
            r.add("morphism does not respect src/tgt", w1("g", g));
            return r;
        }
    }
    for (Index g = 0; g < from.num_arrows() && !r.has("morphism does not preserve composition"); ++g)
        for (Index h : from.arrows_into(from.src(g)))
            if (f.on_arrows[from.compose(g, h)] != to.compose(f.on_arrows[g], f.on_arrows[h])) {
                r.add("morphism does not preserve composition", w2(g, h));
                break;
            }
    for (Index g = 0; g < from.num_arrows(); ++g)
        if (f.on_arrows[from.rho_arr(g)] != to.rho_arr(f.on_arrows[g])) {
            r.add("morphism does not commute with rho", w1("g", g));
            break;
        }
    for (Index x = 0; x < from.num_objects(); ++x)
        if (f.on_objects[from.rho_obj(x)] != to.rho_obj(f.on_objects[x])) {
            r.add("morphism does not commute with rho_obj", w1("x", x));
            break;
        }
    return r;
}

CoverGroupoid cover_groupoid(const FiniteRealGroupoid& g, const RealCover& cover)
{
    const std::size_t nb = cover.blocks.size(), a = g.num_arrows(), n = g.num_objects();
    require(cover.bar.size() == nb, ErrorKind::invalid_argument, "cover has no index involution");
    CoverGroupoid out;
    std::vector<std::vector<Index>> in_block(n);  // blocks containing x, ascending
    std::vector<std::size_t> obj_index(nb * n, std::numeric_limits<std::size_t>::max());
    for (std::size_t j = 0; j < nb; ++j)
        for (Index x : cover.blocks[j]) {
            obj_index[j * n + x] = out.objects.size();
            out.objects.push_back({j, x});
            in_block[x].push_back(j);
        }
    std::vector<std::size_t> arr_index(nb * a * nb, std::numeric_limits<std::size_t>::max());
    for (std::size_t j0 = 0; j0 < nb; ++j0)
        for (Index x = 0; x < a; ++x) {
            if (!std::binary_search(cover.blocks[j0].begin(), cover.blocks[j0].end(), g.tgt(x)))
                continue;
            for (std::size_t j1 : in_block[g.src(x)]) {
                arr_index[(j0 * a + x) * nb + j1] = out.arrows.size();
                out.arrows.push_back({j0, x, j1});
            }
        }
    auto arrow = [&](std::size_t j0, Index x, std::size_t j1) { return arr_index[(j0 * a + x) * nb + j1]; };

    GroupoidData d;
    d.objects = out.objects.size();
    for (const auto& [j, x] : out.objects) {
        d.rho_obj.push_back(obj_index[cover.bar[j] * n + g.rho_obj(x)]);
        out.iota.on_objects.push_back(x);
    }
    for (const auto& [j0, x, j1] : out.arrows) {
        d.src.push_back(obj_index[j1 * n + g.src(x)]);
        d.tgt.push_back(obj_index[j0 * n + g.tgt(x)]);
        d.inv.push_back(arrow(j1, g.inv(x), j0));
        d.rho_arr.push_back(arrow(cover.bar[j0], g.rho_arr(x), cover.bar[j1]));
        out.iota.on_arrows.push_back(x);
    }
    for (std::size_t p = 0; p < out.arrows.size(); ++p) {
        const auto& [j0, x, j1] = out.arrows[p];
        for (Index y : g.arrows_into(g.src(x)))
            for (std::size_t j2 : in_block[g.src(y)])
                d.comp.push_back({p, arrow(j1, y, j2), arrow(j0, g.compose(x, y), j2)});
    }
    out.groupoid = FiniteRealGroupoid::create(d);
    return out;
}

FiniteRealGroupoid cech_groupoid(const std::vector<Index>& pi, std::size_t x_count, const std::vector<Index>& rho_y,
                                 const std::vector<Index>& rho_x)
{
    const std::size_t ny = pi.size();
    require(rho_y.size() == ny && rho_x.size() == x_count, ErrorKind::invalid_argument,
            "cech groupoid: involution sizes do not match");
    std::vector<bool> hit(x_count, false);
    for (Index y = 0; y < ny; ++y) {
        require(pi[y] < x_count && rho_y[y] < ny, ErrorKind::invalid_argument, "cech groupoid: index out of range");
        hit[pi[y]] = true;
    }
    for (Index x = 0; x < x_count; ++x) {
        require(hit[x], ErrorKind::invalid_argument, "cech groupoid: map is not surjective (misses " + std::to_string(x) + ")");
        require(rho_x[x] < x_count && rho_x[rho_x[x]] == x, ErrorKind::invalid_argument,
                "cech groupoid: rho_X is not an involution");
    }
    for (Index y = 0; y < ny; ++y) {
        require(rho_y[rho_y[y]] == y, ErrorKind::invalid_argument, "cech groupoid: rho_Y is not an involution");
        require(pi[rho_y[y]] == rho_x[pi[y]], ErrorKind::invalid_argument,
                "cech groupoid: map does not commute with the involutions");
    }
    std::vector<std::size_t> idx(ny * ny, 0);
    std::vector<std::array<Index, 2>> arrows;
    for (Index y1 = 0; y1 < ny; ++y1)
        for (Index y2 = 0; y2 < ny; ++y2)
            if (pi[y1] == pi[y2]) {
                idx[y1 * ny + y2] = arrows.size();
                arrows.push_back({y1, y2});
            }
    GroupoidData d;
    d.objects = ny;
    d.rho_obj = rho_y;
    for (std::size_t p = 0; p < arrows.size(); ++p) {
        auto [y1, y2] = arrows[p];
        d.src.push_back(y2);
        d.tgt.push_back(y1);
        d.inv.push_back(idx[y2 * ny + y1]);
        d.rho_arr.push_back(idx[rho_y[y1] * ny + rho_y[y2]]);
        for (Index y3 = 0; y3 < ny; ++y3)
            if (pi[y3] == pi[y2])
                d.comp.push_back({p, idx[y2 * ny + y3], idx[y1 * ny + y3]});
    }
    return FiniteRealGroupoid::create(d);
}

FiniteRealGroupoid pullback_groupoid(const FiniteRealGroupoid& g, const std::vector<Index>& phi,
                                     const std::vector<Index>& rho_z)
{
    const std::size_t nz = phi.size(), a = g.num_arrows();
    require(rho_z.size() == nz, ErrorKind::invalid_argument, "pullback: involution size does not match");
    for (Index z = 0; z < nz; ++z) {
        require(phi[z] < g.num_objects() && rho_z[z] < nz, ErrorKind::invalid_argument, "pullback: index out of range");
        require(rho_z[rho_z[z]] == z, ErrorKind::invalid_argument, "pullback: rho_Z is not an involution");
        require(phi[rho_z[z]] == g.rho_obj(phi[z]), ErrorKind::invalid_argument,
                "pullback: map does not commute with the involutions");
    }
    std::vector<std::vector<Index>> over(g.num_objects());
    for (Index z = 0; z < nz; ++z)
        over[phi[z]].push_back(z);
    std::vector<std::size_t> idx(nz * a * nz, 0);
    std::vector<std::array<Index, 3>> arrows;
    for (Index z1 = 0; z1 < nz; ++z1)
        for (Index x : g.arrows_into(phi[z1]))
            for (Index z2 : over[g.src(x)]) {
                idx[(z1 * a + x) * nz + z2] = arrows.size();
                arrows.push_back({z1, x, z2});
            }
    // arrows_into is ascending in x, and z2 ascending, so the triples are ordered lexicographically
    auto at = [&](Index z1, Index x, Index z2) { return idx[(z1 * a + x) * nz + z2]; };
    GroupoidData d;
    d.objects = nz;
    d.rho_obj = rho_z;
    for (std::size_t p = 0; p < arrows.size(); ++p) {
        auto [z1, x, z2] = arrows[p];
        d.src.push_back(z2);
        d.tgt.push_back(z1);
        d.inv.push_back(at(z2, g.inv(x), z1));
        d.rho_arr.push_back(at(rho_z[z1], g.rho_arr(x), rho_z[z2]));
        for (Index y : g.arrows_into(g.src(x)))
            for (Index z3 : over[g.src(y)])
                d.comp.push_back({p, at(z2, y, z3), at(z1, g.compose(x, y), z3)});
    }
    return FiniteRealGroupoid::create(d);
}

FiniteRealGroupoid product_with_group(const FiniteRealGroupoid& g, const RealCoefficientGroup& s)
{
    require(s.is_finite(), ErrorKind::invalid_argument, "product with an infinite coefficient group");
    const std::size_t ns = s.element_count().get_ui();
    GroupoidData d;
    d.objects = g.num_objects();
    d.rho_obj.resize(d.objects);
    for (Index x = 0; x < d.objects; ++x)
        d.rho_obj[x] = g.rho_obj(x);
    std::vector<IntVector> elems(ns);
    for (std::size_t t = 0; t < ns; ++t)
        elems[t] = s.element(t);
    for (Index x = 0; x < g.num_arrows(); ++x)
        for (std::size_t t = 0; t < ns; ++t) {
            d.src.push_back(g.src(x));
            d.tgt.push_back(g.tgt(x));
            d.inv.push_back(g.inv(x) * ns + s.element_index(s.negate(elems[t])));
            d.rho_arr.push_back(g.rho_arr(x) * ns + s.element_index(s.apply_tau(elems[t])));
            for (Index y : g.arrows_into(g.src(x)))
                for (std::size_t u = 0; u < ns; ++u)
                    d.comp.push_back(
                        {x * ns + t, y * ns + u, g.compose(x, y) * ns + s.element_index(s.add(elems[t], elems[u]))});
        }
    return FiniteRealGroupoid::create(d);
}

// ---- standard examples ----

FiniteRealGroupoid point_groupoid() { return space_groupoid({0}); }

FiniteRealGroupoid space_groupoid(const std::vector<Index>& rho)
{
    GroupoidData d;
    d.objects = rho.size();
    d.rho_obj = rho;
    d.rho_arr = rho;
    for (Index x = 0; x < rho.size(); ++x) {
        d.src.push_back(x);
        d.tgt.push_back(x);
        d.inv.push_back(x);
        d.comp.push_back({x, x, x});
    }
    return FiniteRealGroupoid::create(d);
}

FiniteRealGroupoid group_groupoid(const std::vector<std::vector<Index>>& table, const std::vector<Index>& rho)
{
    const std::size_t n = table.size();
    require(rho.size() == n, ErrorKind::invalid_argument, "group involution size does not match table");
    for (const auto& row : table)
        require(row.size() == n, ErrorKind::invalid_argument, "group table is not square");
    Index e = group_identity(table);
    GroupoidData d;
    d.objects = 1;
    d.rho_obj = {0};
    d.src.assign(n, 0);
    d.tgt.assign(n, 0);
    d.inv = group_inverses(table, e);
    d.rho_arr = rho;
    for (Index g = 0; g < n; ++g)
        for (Index h = 0; h < n; ++h)
            d.comp.push_back({g, h, table[g][h]});
    return FiniteRealGroupoid::create(d);
}

FiniteRealGroupoid cyclic_group(std::size_t n, bool inversion)
{
    require(n >= 1, ErrorKind::invalid_argument, "cyclic group of order 0");
    std::vector<std::vector<Index>> table(n, std::vector<Index>(n));
    std::vector<Index> rho(n);
    for (Index g = 0; g < n; ++g) {
        for (Index h = 0; h < n; ++h)
            table[g][h] = (g + h) % n;
        rho[g] = inversion ? (n - g) % n : g;
    }
    return group_groupoid(table, rho);
}

FiniteRealGroupoid klein_four()
{
    std::vector<std::vector<Index>> table(4, std::vector<Index>(4));
    for (Index g = 0; g < 4; ++g)
        for (Index h = 0; h < 4; ++h)
            table[g][h] = g ^ h;
    return group_groupoid(table, {0, 1, 2, 3});
}

FiniteRealGroupoid pair_groupoid(std::size_t k, const std::vector<Index>& rho_obj)
{
    require(rho_obj.size() == k, ErrorKind::invalid_argument, "pair groupoid: involution size does not match");
    GroupoidData d;
    d.objects = k;
    d.rho_obj = rho_obj;
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) {
            require(rho_obj[i] < k, ErrorKind::invalid_argument, "pair groupoid: involution out of range");
            d.src.push_back(j);
            d.tgt.push_back(i);
            d.inv.push_back(j * k + i);
            d.rho_arr.push_back(rho_obj[i] * k + rho_obj[j]);
            for (Index l = 0; l < k; ++l)
                d.comp.push_back({i * k + j, j * k + l, i * k + l});
        }
    return FiniteRealGroupoid::create(d);
}

FiniteRealGroupoid disjoint_union(const FiniteRealGroupoid& a, const FiniteRealGroupoid& b)
{
    GroupoidData da = a.data(), db = b.data();
    const std::size_t no = da.objects, na = da.arrows();
    da.objects += db.objects;
    for (Index g = 0; g < db.arrows(); ++g) {
        da.src.push_back(db.src[g] + no);
        da.tgt.push_back(db.tgt[g] + no);
        da.inv.push_back(db.inv[g] + na);
        da.rho_arr.push_back(db.rho_arr[g] + na);
    }
    for (Index x : db.rho_obj)
        da.rho_obj.push_back(x + no);
    for (const auto& [g, h, m] : db.comp)
        da.comp.push_back({g + na, h + na, m + na});
    return FiniteRealGroupoid::create(da);
}

FiniteRealGroupoid action_groupoid(const std::vector<std::vector<Index>>& table, const std::vector<Index>& rho_g,
                                   const std::vector<std::vector<Index>>& act, const std::vector<Index>& rho_x)
{
    const std::size_t ng = table.size(), nx = rho_x.size();
    require(act.size() == ng && rho_g.size() == ng, ErrorKind::invalid_argument, "action groupoid: size mismatch");
    for (const auto& row : act)
        require(row.size() == nx, ErrorKind::invalid_argument, "action groupoid: action table size mismatch");
    Index e = group_identity(table);
    auto ginv = group_inverses(table, e);
    GroupoidData d;
    d.objects = nx;
    d.rho_obj = rho_x;
    for (Index g = 0; g < ng; ++g)
        for (Index x = 0; x < nx; ++x) {
            Index y = act[g][x];
            d.src.push_back(x);
            d.tgt.push_back(y);
            d.inv.push_back(ginv[g] * nx + y);
            d.rho_arr.push_back(rho_g[g] * nx + rho_x[x]);
            // (g, x) ∘ (h, w) with h·w = x
            for (Index h = 0; h < ng; ++h)
                for (Index w = 0; w < nx; ++w)
                    if (act[h][w] == x)
                        d.comp.push_back({g * nx + x, h * nx + w, table[g][h] * nx + w});
        }
    return FiniteRealGroupoid::create(d);
}

}  // namespace rgc
