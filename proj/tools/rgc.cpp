// rgc: command-line front end over the C API.
//
// Exit status: 0 success, 1 validation failure (report on stderr),
// 2 malformed input or usage error, 3 computation failure or size limit.

#include "rgc.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using Json = nlohmann::json;

namespace {

struct Failure {
    rgc_status status;
    std::string message;
};

int exit_code(rgc_status s)
{
    switch (s) {
    case RGC_OK: return 0;
    case RGC_ERR_VALIDATION: return 1;
    case RGC_ERR_PARSE:
    case RGC_ERR_INVALID_ARGUMENT: return 2;
    default: return 3;
    }
}

void check(rgc_status s)
{
    if (s != RGC_OK)
        throw Failure{s, rgc_last_error()};
}

Json take(char* out)
{
    Json j = Json::parse(out);
    rgc_string_free(out);
    return j;
}

// Reads a file argument; values that are not paths are taken literally
// (preset names, inline JSON).
std::string read_arg(const std::string& arg, const char* what, bool literal_ok)
{
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    if (literal_ok)
        return arg;
    throw Failure{RGC_ERR_PARSE, std::string("cannot read ") + what + " file '" + arg + "'"};
}

template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, decltype([](T* p) { Free(p); })>;

using GroupoidHandle = Handle<rgc_groupoid, rgc_groupoid_free>;
using CoeffHandle = Handle<rgc_coefficients, rgc_coefficients_free>;
using TwistHandle = Handle<rgc_twist, rgc_twist_free>;
using RepHandle = Handle<rgc_representation, rgc_representation_free>;

struct Options {
    std::string groupoid;
    std::string coeff;
    std::string format = "json";
    bool generators = false;
    std::size_t n = 0;
    std::size_t max_degree = 2;
    std::size_t n_max = 2;
    std::size_t top = 2;
    std::string twist, twist2, extension, delta1, delta2, cocycle1, cocycle2;
    std::string cover, cech, pullback, rep, sequence;
};

GroupoidHandle load_groupoid(const Options& o)
{
    if (o.groupoid.empty())
        throw Failure{RGC_ERR_INVALID_ARGUMENT, "--groupoid is required"};
    rgc_groupoid* g = nullptr;
    check(rgc_groupoid_parse(read_arg(o.groupoid, "groupoid", false).c_str(), &g));
    return GroupoidHandle(g);
}

CoeffHandle load_coeff(const Options& o)
{
    if (o.coeff.empty())
        throw Failure{RGC_ERR_INVALID_ARGUMENT, "--coeff is required"};
    rgc_coefficients* s = nullptr;
    check(rgc_coefficients_parse(read_arg(o.coeff, "coefficient", true).c_str(), &s));
    return CoeffHandle(s);
}

TwistHandle load_twist(const rgc_groupoid* g, const rgc_coefficients* s, const std::string& arg)
{
    rgc_twist* t = nullptr;
    if (arg.empty())
        check(rgc_twist_create(g, s, nullptr, &t));
    else
        check(rgc_twist_create(g, s, read_arg(arg, "twist", true).c_str(), &t));
    return TwistHandle(t);
}

// ---- text rendering ----

bool is_group(const Json& j)
{
    return j.is_object() && j.size() == 2 && j.contains("free_rank") && j.contains("torsion");
}

std::string group_text(const Json& j)
{
    std::string out;
    const auto r = j["free_rank"].get<std::size_t>();
    if (r > 0)
        out = r == 1 ? "Z" : "Z^" + std::to_string(r);
    for (const auto& t : j["torsion"])
        out += (out.empty() ? "" : " + ") + std::string("Z/") + (t.is_string() ? t.get<std::string>() : t.dump());
    return out.empty() ? "0" : out;
}

void render(std::ostream& os, const Json& j, int indent)
{
    const std::string pad(indent * 2, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (is_group(v))
                os << pad << k << ": " << group_text(v) << "\n";
            else if (v.is_structured() && !v.empty() && (v.is_object() || v.front().is_structured())) {
                os << pad << k << ":\n";
                render(os, v, indent + 1);
            } else
                os << pad << k << ": " << v.dump() << "\n";
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (j[i].is_object()) {
                os << pad << "- [" << i << "]\n";
                render(os, j[i], indent + 1);
            } else
                os << pad << "- " << j[i].dump() << "\n";
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

void print(const Options& o, const Json& j)
{
    if (o.format == "text") {
        if (is_group(j))
            std::cout << group_text(j) << "\n";
        else
            render(std::cout, j, 0);
    } else {
        std::cout << j.dump() << "\n";
    }
}

std::string report_text(const Json& report)
{
    std::string out;
    for (const auto& v : report["violations"])
        out += v["axiom"].get<std::string>() + ": " + v["witness"].get<std::string>() + "\n";
    return out;
}

// ---- commands ----

int cmd_validate(const Options& o)
{
    if (o.groupoid.empty())
        throw Failure{RGC_ERR_INVALID_ARGUMENT, "--groupoid is required"};
    char* out = nullptr;
    check(rgc_groupoid_check(read_arg(o.groupoid, "groupoid", false).c_str(), &out));
    Json report = take(out);
    if (!report["valid"].get<bool>()) {
        print(o, report);
        std::cerr << "invalid groupoid:\n" << report_text(report);
        return 1;
    }
    // the remaining inputs are validated against the groupoid
    auto g = load_groupoid(o);
    CoeffHandle s;
    if (!o.coeff.empty())
        s = load_coeff(o);
    if (!o.twist.empty()) {
        if (!s)
            throw Failure{RGC_ERR_INVALID_ARGUMENT, "--twist needs --coeff"};
        load_twist(g.get(), s.get(), o.twist);
    }
    if (!o.rep.empty()) {
        rgc_representation* e = nullptr;
        check(rgc_representation_parse(g.get(), read_arg(o.rep, "representation", true).c_str(), &e));
        rgc_representation_free(e);
    }
    print(o, report);
    return 0;
}

int run(const std::string& command, const std::string& sub, const Options& o)
{
    char* out = nullptr;
    if (command == "validate")
        return cmd_validate(o);
    auto g = load_groupoid(o);
    if (command == "nerve") {
        check(rgc_nerve(g.get(), o.max_degree, &out));
        print(o, take(out));
        return 0;
    }
    if (command == "vanish") {
        rgc_representation* e = nullptr;
        if (!o.rep.empty())
            check(rgc_representation_parse(g.get(), read_arg(o.rep, "representation", true).c_str(), &e));
        else
            check(rgc_representation_constant(g.get(), load_coeff(o).get(), &e));
        RepHandle rep(e);
        check(rgc_vanishing(rep.get(), o.n_max, &out));
        print(o, take(out));
        return 0;
    }
    if (command == "les") {
        if (o.sequence.empty())
            throw Failure{RGC_ERR_INVALID_ARGUMENT, "--sequence is required"};
        check(rgc_long_exact_sequence(g.get(), read_arg(o.sequence, "sequence", true).c_str(), o.top, &out));
        print(o, take(out));
        return 0;
    }

    auto s = load_coeff(o);
    if (command == "cohomology") {
        check(rgc_cohomology(g.get(), s.get(), o.n, &out));
        Json j = take(out);
        if (!o.generators)
            j = Json{{"free_rank", j["free_rank"]}, {"torsion", j["torsion"]}};
        print(o, j);
    } else if (command == "invariant-sections") {
        check(rgc_invariant_sections(g.get(), s.get(), &out));
        print(o, take(out));
    } else if (command == "ext") {
        if (sub == "classify") {
            check(rgc_twist_classes(g.get(), s.get(), &out));
        } else if (sub == "build") {
            auto t = load_twist(g.get(), s.get(), o.twist);
            check(rgc_twist_build(t.get(), &out));
        } else if (sub == "extract") {
            if (o.extension.empty())
                throw Failure{RGC_ERR_INVALID_ARGUMENT, "--extension is required"};
            rgc_twist* t = nullptr;
            check(rgc_twist_extract(g.get(), s.get(), read_arg(o.extension, "extension", true).c_str(), &t));
            TwistHandle th(t);
            check(rgc_twist_to_json(th.get(), &out));
        } else if (sub == "sum") {
            auto a = load_twist(g.get(), s.get(), o.twist);
            auto b = load_twist(g.get(), s.get(), o.twist2);
            rgc_twist* t = nullptr;
            check(rgc_twist_sum(a.get(), b.get(), &t));
            TwistHandle th(t);
            check(rgc_twist_to_json(th.get(), &out));
        } else {
            auto t = load_twist(g.get(), s.get(), o.twist);
            check(rgc_twist_dd_class(t.get(), &out));
        }
        print(o, take(out));
    } else if (command == "cup") {
        if (o.delta1.empty() || o.delta2.empty())
            throw Failure{RGC_ERR_INVALID_ARGUMENT, "--delta1 and --delta2 are required"};
        check(rgc_cup(g.get(), s.get(), read_arg(o.delta1, "grading", true).c_str(),
                      read_arg(o.delta2, "grading", true).c_str(), &out));
        print(o, take(out));
    } else if (command == "bundle") {
        if (sub == "classify") {
            check(rgc_bundle_classes(g.get(), s.get(), &out));
        } else {
            if (o.cocycle1.empty() || o.cocycle2.empty())
                throw Failure{RGC_ERR_INVALID_ARGUMENT, "--cocycle1 and --cocycle2 are required"};
            check(rgc_bundle_isomorphism(g.get(), s.get(), read_arg(o.cocycle1, "cocycle", true).c_str(),
                                         read_arg(o.cocycle2, "cocycle", true).c_str(), &out));
        }
        print(o, take(out));
    } else if (command == "morita-check") {
        const int given = !o.cover.empty() + !o.cech.empty() + !o.pullback.empty();
        if (given != 1)
            throw Failure{RGC_ERR_INVALID_ARGUMENT, "give exactly one of --cover, --cech, --pullback"};
        if (!o.cover.empty())
            check(rgc_morita_cover(g.get(), s.get(), read_arg(o.cover, "cover", true).c_str(), o.n_max, &out));
        else if (!o.cech.empty())
            check(rgc_morita_cech(g.get(), s.get(), read_arg(o.cech, "cech", true).c_str(), o.n_max, &out));
        else
            check(rgc_morita_pullback(g.get(), s.get(), read_arg(o.pullback, "pullback", true).c_str(), o.n_max,
                                      &out));
        Json j = take(out);
        print(o, j);
        if (!j["all_isomorphic"].get<bool>()) {
            std::cerr << "cohomology changed under the Morita equivalence\n";
            return 1;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Real cohomology of finite groupoids with involution"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--groupoid,-g", o.groupoid, "groupoid JSON file");
    app.add_option("--coeff,-s", o.coeff, "coefficient preset, JSON file or inline JSON");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));

    std::string sub;
    auto* validate = app.add_subcommand("validate", "check the groupoid axioms (and optional --twist, --rep)");
    validate->add_option("--twist", o.twist, "twist JSON");
    validate->add_option("--rep", o.rep, "representation JSON");
    app.add_subcommand("nerve", "list nerve tuples")->add_option("--max-degree", o.max_degree, "top degree");
    auto* coh = app.add_subcommand("cohomology", "HR^n(G, S)");
    coh->add_option("--n", o.n, "degree")->required();
    coh->add_flag("--generators", o.generators, "include representative cocycles");
    app.add_subcommand("invariant-sections", "Real invariant sections and HR^0");

    auto* ext = app.add_subcommand("ext", "graded Real extensions");
    ext->require_subcommand(1);
    ext->fallthrough();
    ext->add_subcommand("classify", "count of graded classes");
    ext->add_subcommand("build", "materialize the extension of a twist")->add_option("--twist", o.twist, "twist JSON");
    ext->add_subcommand("extract", "twist of an extension")->add_option("--extension", o.extension, "extension JSON");
    auto* sum = ext->add_subcommand("sum", "graded Baer sum");
    sum->add_option("--twist", o.twist, "first twist")->required();
    sum->add_option("--with", o.twist2, "second twist")->required();
    ext->add_subcommand("dd", "Dixmier-Douady class")->add_option("--twist", o.twist, "twist JSON");

    auto* cup = app.add_subcommand("cup", "cup product of two Z/2 gradings");
    cup->add_option("--delta1", o.delta1, "first 1-cocycle");
    cup->add_option("--delta2", o.delta2, "second 1-cocycle");

    auto* bundle = app.add_subcommand("bundle", "Real principal bundles");
    bundle->require_subcommand(1);
    bundle->fallthrough();
    bundle->add_subcommand("classify", "one bundle per class of HR^1");
    auto* iso = bundle->add_subcommand("iso", "isomorphism of two bundles");
    iso->add_option("--cocycle1", o.cocycle1, "first 1-cocycle");
    iso->add_option("--cocycle2", o.cocycle2, "second 1-cocycle");

    auto* morita = app.add_subcommand("morita-check", "compare HR^n across a Morita equivalence");
    morita->add_option("--cover", o.cover, "Real cover JSON");
    morita->add_option("--cech", o.cech, "surjection JSON over a space");
    morita->add_option("--pullback", o.pullback, "essentially surjective map JSON");
    morita->add_option("--n-max", o.n_max, "top degree");

    auto* vanish = app.add_subcommand("vanish", "vanishing for a Real representation");
    vanish->add_option("--n-max", o.n_max, "top degree");
    vanish->add_option("--rep", o.rep, "representation JSON (default: constant from --coeff)");

    auto* les = app.add_subcommand("les", "long exact sequence of a coefficient sequence");
    les->add_option("--sequence", o.sequence, "short exact sequence JSON");
    les->add_option("--top", o.top, "top degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    auto* cmd = app.get_subcommands().front();
    if (!cmd->get_subcommands().empty())
        sub = cmd->get_subcommands().front()->get_name();
    try {
        return run(cmd->get_name(), sub, o);
    } catch (const Failure& f) {
        std::cerr << "rgc: " << f.message << "\n";
        return exit_code(f.status);
    } catch (const Json::exception& e) {
        std::cerr << "rgc: internal error: " << e.what() << "\n";
        return 3;
    }
}
