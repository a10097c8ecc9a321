#include "rgc.h"

#include "rgc/io.hpp"

#include <cstdlib>
#include <cstring>
#include <new>

using namespace rgc;
using io::Json;

struct rgc_groupoid {
    FiniteRealGroupoid g;
};

struct rgc_coefficients {
    RealCoefficientGroup s;
};

struct rgc_twist {
    GradedTwist t;
};

struct rgc_representation {
    RealRepresentation e;
};

namespace {

thread_local std::string last_error;

rgc_status status_of(ErrorKind k)
{
    switch (k) {
    case ErrorKind::invalid_argument: return RGC_ERR_INVALID_ARGUMENT;
    case ErrorKind::malformed_input: return RGC_ERR_PARSE;
    case ErrorKind::validation_failed:
    case ErrorKind::not_a_cocycle: return RGC_ERR_VALIDATION;
    case ErrorKind::obstruction: return RGC_ERR_COMPUTATION;
    case ErrorKind::limit_exceeded: return RGC_ERR_LIMIT;
    case ErrorKind::internal: return RGC_ERR_INTERNAL;
    }
    return RGC_ERR_INTERNAL;
}

template <class F>
rgc_status guard(F&& f)
{
    last_error.clear();
    try {
        f();
        return RGC_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("malformed input: ") + e.what();
        return RGC_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return RGC_ERR_LIMIT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return RGC_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return RGC_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what)
{
    if (!p)
        fail(ErrorKind::invalid_argument, std::string(what) + " is NULL");
}

char* dup(const Json& j)
{
    std::string s = j.dump();
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** out, const Json& j)
{
    need(out, "out");
    *out = dup(j);
}

Json vec(const IntVector& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(io::integer_to_json(x));
    return a;
}

Json inv(const CohomologyGroup& h) { return io::invariants_to_json(h.invariants()); }

Json class_count(const std::vector<const CohomologyGroup*>& groups)
{
    Integer n = 1;
    for (const auto* h : groups) {
        if (h->invariants().free_rank > 0)
            return nullptr;
        for (const auto& t : h->invariants().torsion)
            n *= t;
    }
    return io::integer_to_json(n);
}

RealCochain degree_cochain(const RealCochainComplex& cx, const char* text, std::size_t degree, const char* what)
{
    need(text, what);
    RealCochain c = io::cochain_from_json(cx, io::parse(text));
    if (c.degree != degree)
        fail(ErrorKind::malformed_input,
             std::string(what) + " must have degree " + std::to_string(degree) + ", got " + std::to_string(c.degree));
    return c;
}

// Every rho-fixed object of the base has a rho-fixed preimage (a block
// with j = bar j, a fixed point of Y or Z); only then does the singleton
// cover refine the construction.
bool fixed_points_lift(const FiniteRealGroupoid& base, const std::vector<Index>& map, const std::vector<Index>& rho)
{
    std::vector<char> ok(base.num_objects(), 0);
    for (Index y = 0; y < map.size(); ++y)
        if (rho[y] == y)
            ok[map[y]] = 1;
    for (Index x = 0; x < base.num_objects(); ++x)
        if (base.rho_obj(x) == x && !ok[x])
            return false;
    return true;
}

// Per degree: invariants on both sides and whether they agree.
Json compare_groups(const FiniteRealGroupoid& base, const FiniteRealGroupoid& other, const RealCoefficientGroup& s,
                    std::size_t n_max, const char* label, bool refines)
{
    RealCochainComplex a(base, s, n_max + 1), b(other, s, n_max + 1);
    Json degrees = Json::array();
    bool all = true;
    for (std::size_t n = 0; n <= n_max; ++n) {
        auto ha = a.cohomology(n).invariants(), hb = b.cohomology(n).invariants();
        bool same = ha == hb;
        all = all && same;
        degrees.push_back(
            {{"degree", n}, {"base", io::invariants_to_json(ha)}, {label, io::invariants_to_json(hb)}, {"isomorphic", same}});
    }
    return {{"objects", other.num_objects()}, {"arrows", other.num_arrows()}, {"degrees", degrees},
            {"all_isomorphic", all}, {"fixed_points_lift", refines}};
}

}  // namespace

extern "C" {

const char* rgc_version(void) { return "0.1.0"; }

const char* rgc_last_error(void) { return last_error.c_str(); }

void rgc_string_free(char* s) { std::free(s); }

rgc_status rgc_groupoid_parse(const char* json, rgc_groupoid** out)
{
    return guard([&] {
        need(json, "json");
        need(out, "out");
        auto g = FiniteRealGroupoid::create(io::groupoid_data_from_json(io::parse(json)));
        *out = new rgc_groupoid{std::move(g)};
    });
}

rgc_status rgc_groupoid_check(const char* json, char** report)
{
    return guard([&] {
        need(json, "json");
        emit(report, io::report_to_json(validate(io::groupoid_data_from_json(io::parse(json)))));
    });
}

rgc_status rgc_groupoid_to_json(const rgc_groupoid* g, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        emit(out, io::groupoid_to_json(g->g));
    });
}

size_t rgc_groupoid_object_count(const rgc_groupoid* g) { return g ? g->g.num_objects() : 0; }

size_t rgc_groupoid_arrow_count(const rgc_groupoid* g) { return g ? g->g.num_arrows() : 0; }

void rgc_groupoid_free(rgc_groupoid* g) { delete g; }

rgc_status rgc_nerve(const rgc_groupoid* g, size_t max_degree, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        Json levels = Json::array();
        for (std::size_t n = 0; n <= max_degree; ++n) {
            NerveLevel level = nerve(g->g, n);
            Json tuples = Json::array();
            for (std::size_t i = 0; i < level.size(); ++i) {
                auto t = level.tuple(i);
                tuples.push_back(std::vector<Index>(t.begin(), t.end()));
            }
            levels.push_back({{"degree", n}, {"count", level.size()}, {"tuples", tuples}, {"rho", level.rho}});
        }
        emit(out, {{"levels", levels}});
    });
}

rgc_status rgc_coefficients_parse(const char* text, rgc_coefficients** out)
{
    return guard([&] {
        need(text, "text");
        need(out, "out");
        // bare preset names are accepted without JSON quoting
        std::string s(text);
        auto first = s.find_first_not_of(" \t\r\n");
        Json j = first != std::string::npos && (s[first] == '{' || s[first] == '"') ? io::parse(s) : Json(s);
        *out = new rgc_coefficients{io::coefficients_from_json(j)};
    });
}

rgc_status rgc_coefficients_to_json(const rgc_coefficients* s, char** out)
{
    return guard([&] {
        need(s, "coefficients");
        emit(out, io::coefficients_to_json(s->s));
    });
}

void rgc_coefficients_free(rgc_coefficients* s) { delete s; }

rgc_status rgc_cohomology(const rgc_groupoid* g, const rgc_coefficients* s, size_t n, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        RealCochainComplex cx(g->g, s->s, n + 1);
        emit(out, io::cohomology_to_json(cx, cx.cohomology(n)));
    });
}

rgc_status rgc_invariant_sections(const rgc_groupoid* g, const rgc_coefficients* s, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        Json j = io::invariants_to_json(invariant_sections(g->g, s->s));
        j["hr0"] = io::invariants_to_json(cohomology(g->g, s->s, 0).invariants());
        emit(out, j);
    });
}

rgc_status rgc_cochain_class(const rgc_groupoid* g, const rgc_coefficients* s, const char* cochain, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        need(cochain, "cochain");
        Json j = io::parse(cochain);
        if (!j.is_object() || !j.contains("degree") || !j["degree"].is_number_unsigned())
            fail(ErrorKind::malformed_input, "cochain needs a non-negative integer \"degree\"");
        const std::size_t n = j["degree"].get<std::size_t>();
        RealCochainComplex cx(g->g, s->s, n + 1);
        RealCochain c = io::cochain_from_json(cx, j);
        auto h = cx.cohomology(n);
        auto coords = h.classify(cx.flatten(c));
        emit(out, {{"degree", n},
                   {"real", cx.is_real(c)},
                   {"cocycle", coords.has_value()},
                   {"class", coords ? vec(*coords) : Json(nullptr)},
                   {"group", inv(h)}});
    });
}

rgc_status rgc_twist_create(const rgc_groupoid* g, const rgc_coefficients* s, const char* twist_json,
                            rgc_twist** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        need(out, "out");
        auto space = make_twist_space(g->g, s->s);
        GradedTwist t = twist_json ? io::twist_from_json(space, io::parse(twist_json)) : trivial_twist(space);
        *out = new rgc_twist{std::move(t)};
    });
}

rgc_status rgc_twist_to_json(const rgc_twist* t, char** out)
{
    return guard([&] {
        need(t, "twist");
        emit(out, io::twist_to_json(t->t));
    });
}

void rgc_twist_free(rgc_twist* t) { delete t; }

rgc_status rgc_twist_classes(const rgc_groupoid* g, const rgc_coefficients* s, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        auto space = make_twist_space(g->g, s->s);
        const auto& h1 = space->grading_cohomology();
        const auto& h2 = space->omega_cohomology();
        emit(out, {{"grading_group", inv(h1)},
                   {"cocycle_group", inv(h2)},
                   {"class_count", class_count({&h1, &h2})},
                   {"ungraded_count", class_count({&h2})}});
    });
}

rgc_status rgc_twist_build(const rgc_twist* t, char** extension)
{
    return guard([&] {
        need(t, "twist");
        Json j = io::extension_to_json(build_extension(*t->t.space, t->t.omega));
        j["delta"] = io::cochain_to_json(t->t.space->grading_complex(), t->t.delta);
        emit(extension, j);
    });
}

rgc_status rgc_twist_extract(const rgc_groupoid* g, const rgc_coefficients* s, const char* extension,
                             rgc_twist** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        need(extension, "extension");
        need(out, "out");
        auto space = make_twist_space(g->g, s->s);
        Json j = io::parse(extension);
        ExtensionGroupoid e = io::extension_from_json(j);
        auto report = validate_extension(*space, e);
        if (!report.ok())
            fail(ErrorKind::validation_failed, "not an extension of the base:\n" + report.to_string());
        RealCochain delta = space->grading_complex().zero(1);
        if (auto it = j.find("delta"); it != j.end()) {
            delta = io::cochain_from_json(space->grading_complex(), *it);
            if (delta.degree != 1)
                fail(ErrorKind::malformed_input, "delta must be a 1-cochain");
        }
        RealCochain omega = extract_cocycle(*space, e);
        *out = new rgc_twist{make_twist(space, std::move(omega), std::move(delta))};
    });
}

rgc_status rgc_twist_sum(const rgc_twist* a, const rgc_twist* b, rgc_twist** out)
{
    return guard([&] {
        need(a, "first twist");
        need(b, "second twist");
        need(out, "out");
        *out = new rgc_twist{baer_sum(a->t, b->t)};
    });
}

rgc_status rgc_twist_dd_class(const rgc_twist* t, char** out)
{
    return guard([&] {
        need(t, "twist");
        DDClass c = dd_class(t->t);
        emit(out, {{"grading", vec(c.grading)},
                   {"cocycle", vec(c.cocycle)},
                   {"grading_group", inv(t->t.space->grading_cohomology())},
                   {"cocycle_group", inv(t->t.space->omega_cohomology())}});
    });
}

rgc_status rgc_cup(const rgc_groupoid* g, const rgc_coefficients* s, const char* delta1, const char* delta2,
                   char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        auto space = make_twist_space(g->g, s->s);
        const auto& cx = space->grading_complex();
        RealCochain d1 = degree_cochain(cx, delta1, 1, "first grading");
        RealCochain d2 = degree_cochain(cx, delta2, 1, "second grading");
        for (const auto* d : {&d1, &d2})
            if (!cx.is_cocycle(*d))
                fail(ErrorKind::not_a_cocycle, "grading is not a 1-cocycle");
        emit(out, {{"cochain", io::cochain_to_json(space->omega_complex(), cup_cochain(*space, d1, d2))},
                   {"class", vec(cup(*space, d1, d2))},
                   {"group", inv(space->omega_cohomology())}});
    });
}

rgc_status rgc_bundle_classes(const rgc_groupoid* g, const rgc_coefficients* s, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        auto space = make_bundle_space(g->g, s->s);
        Json bundles = Json::array();
        for (const auto& b : classify_bundles(space))
            bundles.push_back({{"class", vec(bundle_class(b))}, {"cocycle", io::cochain_to_json(space->complex(), b.cocycle)}});
        emit(out, {{"group", inv(space->cohomology())}, {"count", bundles.size()}, {"bundles", bundles}});
    });
}

rgc_status rgc_bundle_isomorphism(const rgc_groupoid* g, const rgc_coefficients* s, const char* cocycle1,
                                  const char* cocycle2, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        auto space = make_bundle_space(g->g, s->s);
        auto a = bundle_from_cocycle(space, degree_cochain(space->complex(), cocycle1, 1, "first cocycle"));
        auto b = bundle_from_cocycle(space, degree_cochain(space->complex(), cocycle2, 1, "second cocycle"));
        BundleIsomorphism iso = bundles_isomorphic(a, b);
        Json j{{"isomorphic", iso.isomorphic},
               {"first_class", vec(bundle_class(a))},
               {"second_class", vec(bundle_class(b))}};
        if (iso.primitive)
            j["primitive"] = io::cochain_to_json(space->complex(), *iso.primitive);
        if (iso.isomorphic)
            j["map"] = iso.map;
        emit(out, j);
    });
}

rgc_status rgc_morita_cover(const rgc_groupoid* g, const rgc_coefficients* s, const char* cover, size_t n_max,
                            char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        need(cover, "cover");
        RealCover u = io::cover_from_json(g->g, io::parse(cover));
        CoverGroupoid c = cover_groupoid(g->g, u);
        std::vector<Index> block(c.objects.size()), rho(c.objects.size());
        for (Index o = 0; o < c.objects.size(); ++o) {
            block[o] = c.objects[o][1];
            rho[o] = c.groupoid.rho_obj(o);
        }
        emit(out, compare_groups(g->g, c.groupoid, s->s, n_max, "cover", fixed_points_lift(g->g, block, rho)));
    });
}

rgc_status rgc_morita_cech(const rgc_groupoid* g, const rgc_coefficients* s, const char* cech, size_t n_max,
                           char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        need(cech, "cech");
        const auto& x = g->g;
        for (Index a = 0; a < x.num_arrows(); ++a)
            if (!x.is_unit(a))
                fail(ErrorKind::invalid_argument, "the Cech construction needs a space: arrow " + std::to_string(a) +
                                                      " is not a unit");
        Json j = io::parse(cech);
        if (!j.is_object() || !j.contains("pi") || !j.contains("rho_y"))
            fail(ErrorKind::malformed_input, "cech input needs \"pi\" and \"rho_y\"");
        std::vector<Index> pi, rho_y, rho_x;
        try {
            pi = j["pi"].get<std::vector<Index>>();
            rho_y = j["rho_y"].get<std::vector<Index>>();
        } catch (const nlohmann::json::exception&) {
            fail(ErrorKind::malformed_input, "pi and rho_y must be lists of indices");
        }
        for (Index o = 0; o < x.num_objects(); ++o)
            rho_x.push_back(x.rho_obj(o));
        emit(out, compare_groups(x, cech_groupoid(pi, x.num_objects(), rho_y, rho_x), s->s, n_max, "cech",
                                 fixed_points_lift(x, pi, rho_y)));
    });
}

rgc_status rgc_morita_pullback(const rgc_groupoid* g, const rgc_coefficients* s, const char* pullback,
                               size_t n_max, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        need(pullback, "pullback");
        Json j = io::parse(pullback);
        if (!j.is_object() || !j.contains("phi") || !j.contains("rho_z"))
            fail(ErrorKind::malformed_input, "pullback input needs \"phi\" and \"rho_z\"");
        std::vector<Index> phi, rho_z;
        try {
            phi = j["phi"].get<std::vector<Index>>();
            rho_z = j["rho_z"].get<std::vector<Index>>();
        } catch (const nlohmann::json::exception&) {
            fail(ErrorKind::malformed_input, "phi and rho_z must be lists of indices");
        }
        emit(out, compare_groups(g->g, pullback_groupoid(g->g, phi, rho_z), s->s, n_max, "pullback",
                                 fixed_points_lift(g->g, phi, rho_z)));
    });
}

rgc_status rgc_representation_parse(const rgc_groupoid* g, const char* json, rgc_representation** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(json, "json");
        need(out, "out");
        RealRepresentation e = io::representation_from_json(g->g, io::parse(json));
        auto report = validate_representation(e);
        if (!report.ok())
            fail(ErrorKind::validation_failed, "not a Real representation:\n" + report.to_string());
        *out = new rgc_representation{std::move(e)};
    });
}

rgc_status rgc_representation_constant(const rgc_groupoid* g, const rgc_coefficients* s,
                                       rgc_representation** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(s, "coefficients");
        need(out, "out");
        *out = new rgc_representation{constant_representation(g->g, s->s)};
    });
}

void rgc_representation_free(rgc_representation* e) { delete e; }

rgc_status rgc_vanishing(const rgc_representation* e, size_t n_max, char** out)
{
    return guard([&] {
        need(e, "representation");
        emit(out, io::vanishing_to_json(vanishing_check(e->e, n_max)));
    });
}

rgc_status rgc_long_exact_sequence(const rgc_groupoid* g, const char* sequence, size_t top_degree, char** out)
{
    return guard([&] {
        need(g, "groupoid");
        need(sequence, "sequence");
        LongExactSequence les(g->g, io::sequence_from_json(io::parse(sequence)), top_degree);
        Json degrees = Json::array();
        for (std::size_t n = 0; n <= top_degree; ++n) {
            auto images = [](const CohomologyHom& h) {
                Json a = Json::array();
                for (const auto& v : h.images)
                    a.push_back(vec(v));
                return a;
            };
            degrees.push_back({{"degree", n},
                               {"sub", inv(les.sub_group(n))},
                               {"total", inv(les.total_group(n))},
                               {"quotient", inv(les.quotient_group(n))},
                               {"inclusion", images(les.inclusion_map(n))},
                               {"projection", images(les.projection_map(n))},
                               {"connecting", images(les.connecting_map(n))}});
        }
        Json slots = Json::array();
        bool all = true;
        for (const auto& s : les.exactness()) {
            slots.push_back({{"at", s.label}, {"exact", s.exact}});
            all = all && s.exact;
        }
        emit(out, {{"degrees", degrees},
                   {"next_sub", inv(les.sub_group(top_degree + 1))},
                   {"exactness", slots},
                   {"all_exact", all}});
    });
}

}  // extern "C"
