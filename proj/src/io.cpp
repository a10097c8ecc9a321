#include "rgc/io.hpp"

namespace rgc::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorKind::malformed_input, what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object())
        malformed(std::string("expected an object with field \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end())
        malformed(std::string("missing field \"") + key + "\"");
    return *it;
}

Index as_index(const Json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        malformed(std::string(what) + " must be a non-negative integer");
    return j.get<Index>();
}

std::vector<Index> index_list(const Json& j, const char* what)
{
    if (!j.is_array())
        malformed(std::string(what) + " must be an array");
    std::vector<Index> out;
    for (const auto& x : j)
        out.push_back(as_index(x, what));
    return out;
}

std::vector<Index> index_list_or_empty(const Json& j, const char* key)
{
    auto it = j.find(key);
    return it == j.end() ? std::vector<Index>{} : index_list(*it, key);
}

template <class T, class F>
Matrix<T> matrix_from(const Json& j, std::size_t rows, std::size_t cols, F&& entry)
{
    if (!j.is_array() || j.size() != rows)
        malformed("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    Matrix<T> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            malformed("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = entry(j[r][c]);
    }
    return m;
}

Json vector_json(const IntVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(integer_to_json(x));
    return out;
}

Json vector_json(const RatVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(rational_to_json(x));
    return out;
}

bool is_zero_vector(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

Json parse(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

Json integer_to_json(const Integer& x)
{
    if (x.fits_slong_p())
        return Json(x.get_si());
    return Json(x.get_str());
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<long>());
    if (j.is_string()) {
        Integer x;
        if (x.set_str(j.get<std::string>(), 10) != 0)
            malformed("not an integer: " + j.get<std::string>());
        return x;
    }
    malformed("expected an integer, got " + j.dump());
}

Json rational_to_json(const Rational& x)
{
    if (x.get_den() == 1)
        return integer_to_json(x.get_num());
    return Json(x.get_str());
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (j.is_string()) {
        Rational x;
        if (x.set_str(j.get<std::string>(), 10) != 0 || x.get_den() == 0)
            malformed("not a rational number: " + j.get<std::string>());
        x.canonicalize();
        return x;
    }
    malformed("expected a rational number (integer or \"p/q\"), got " + j.dump());
}

GroupoidData groupoid_data_from_json(const Json& j)
{
    GroupoidData d;
    d.objects = as_index(field(j, "objects"), "objects");
    const Json& arrows = field(j, "arrows");
    if (!arrows.is_array())
        malformed("arrows must be an array");
    const std::size_t cap = max_arrows();
    if (arrows.size() > cap)
        fail(ErrorKind::limit_exceeded,
             std::to_string(arrows.size()) + " arrows exceed RGC_MAX_ARROWS=" + std::to_string(cap));
    for (const auto& a : arrows) {
        d.src.push_back(as_index(field(a, "src"), "src"));
        d.tgt.push_back(as_index(field(a, "tgt"), "tgt"));
    }
    const Json& comp = field(j, "comp");
    if (comp.is_string()) {
        if (comp.get<std::string>() != "table")
            malformed("comp must be a list of triples or \"table\"");
        const Json& table = field(j, "table");
        if (!table.is_array() || table.size() != d.src.size())
            malformed("table must have one row per arrow");
        for (Index g = 0; g < table.size(); ++g) {
            if (!table[g].is_array() || table[g].size() != d.src.size())
                malformed("table must have one column per arrow");
            for (Index h = 0; h < table[g].size(); ++h)
                if (!table[g][h].is_null())
                    d.comp.push_back({g, h, as_index(table[g][h], "table entry")});
        }
    } else if (comp.is_array()) {
        for (const auto& t : comp) {
            if (!t.is_array() || t.size() != 3)
                malformed("comp entries must be [g, h, g∘h] triples");
            d.comp.push_back({as_index(t[0], "comp"), as_index(t[1], "comp"), as_index(t[2], "comp")});
        }
    } else {
        malformed("comp must be a list of triples or \"table\"");
    }
    d.inv = index_list(field(j, "inv"), "inv");
    d.rho_obj = index_list(field(j, "rho_obj"), "rho_obj");
    d.rho_arr = index_list(field(j, "rho_arr"), "rho_arr");
    return d;
}

Json groupoid_data_to_json(const GroupoidData& d)
{
    Json arrows = Json::array();
    for (std::size_t a = 0; a < d.src.size(); ++a)
        arrows.push_back({{"src", d.src[a]}, {"tgt", d.tgt[a]}});
    Json comp = Json::array();
    for (const auto& [g, h, gh] : d.comp)
        comp.push_back({g, h, gh});
    return {{"objects", d.objects}, {"arrows", arrows}, {"comp", comp},
            {"inv", d.inv},         {"rho_obj", d.rho_obj}, {"rho_arr", d.rho_arr}};
}

Json groupoid_to_json(const FiniteRealGroupoid& g) { return groupoid_data_to_json(g.data()); }

RealCoefficientGroup coefficients_from_json(const Json& j)
{
    if (j.is_string())
        return make_standard(j.get<std::string>());
    std::string mode = "integral";
    if (auto it = j.find("mode"); it != j.end()) {
        if (!it->is_string())
            malformed("mode must be \"integral\" or \"rational\"");
        mode = it->get<std::string>();
    }
    if (mode == "rational") {
        const Json& tau = field(j, "tau");
        if (!tau.is_array())
            malformed("tau must be a square matrix");
        return RealCoefficientGroup::rational(
            matrix_from<Rational>(tau, tau.size(), tau.size(), [](const Json& x) { return rational_from_json(x); }));
    }
    if (mode != "integral")
        malformed("mode must be \"integral\" or \"rational\"");
    const std::size_t free = as_index(field(j, "free_rank"), "free_rank");
    std::vector<Integer> torsion;
    if (auto it = j.find("torsion"); it != j.end()) {
        if (!it->is_array())
            malformed("torsion must be an array");
        for (const auto& x : *it)
            torsion.push_back(integer_from_json(x));
    }
    const std::size_t d = free + torsion.size();
    IntMatrix tau = IntMatrix::identity(d);
    if (auto it = j.find("tau"); it != j.end())
        tau = matrix_from<Integer>(*it, d, d, [](const Json& x) { return integer_from_json(x); });
    std::optional<IntVector> kappa;
    if (auto it = j.find("kappa"); it != j.end() && !it->is_null()) {
        if (!it->is_array())
            malformed("kappa must be a coefficient vector");
        IntVector k;
        for (const auto& x : *it)
            k.push_back(integer_from_json(x));
        kappa = k;
    }
    return RealCoefficientGroup::integral(free, torsion, tau, kappa);
}

Json coefficients_to_json(const RealCoefficientGroup& s)
{
    if (s.is_rational())
        return {{"mode", "rational"}, {"tau", matrix_to_json(s.tau_rational())}};
    Json torsion = Json::array();
    for (const auto& t : s.torsion())
        torsion.push_back(integer_to_json(t));
    Json out{{"mode", "integral"},
             {"free_rank", s.free_rank()},
             {"torsion", torsion},
             {"tau", matrix_to_json(s.tau())}};
    if (s.kappa())
        out["kappa"] = vector_json(*s.kappa());
    return out;
}

Json invariants_to_json(const GroupInvariants& g)
{
    Json torsion = Json::array();
    for (const auto& t : g.torsion)
        torsion.push_back(integer_to_json(t));
    return {{"free_rank", g.free_rank}, {"torsion", torsion}};
}

RealCochain cochain_from_json(const RealCochainComplex& cx, const Json& j)
{
    const std::size_t n = as_index(field(j, "degree"), "degree");
    if (n > cx.max_degree())
        malformed("cochain degree " + std::to_string(n) + " is beyond the computed nerve");
    RealCochain c = cx.zero(n);
    const Json& values = field(j, "values");
    if (!values.is_array())
        malformed("values must be an array of [orbit_index, coefficients] pairs");
    const std::size_t dim = cx.coefficients().dim();
    for (const auto& e : values) {
        if (!e.is_array() || e.size() != 2 || !e[1].is_array())
            malformed("values must be an array of [orbit_index, coefficients] pairs");
        const Index o = as_index(e[0], "orbit index");
        if (o >= c.values.size())
            malformed("orbit index " + std::to_string(o) + " out of range (degree " + std::to_string(n) + " has " +
                      std::to_string(c.values.size()) + " orbits)");
        if (e[1].size() != dim)
            malformed("coefficient vectors must have length " + std::to_string(dim));
        IntVector v;
        for (const auto& x : e[1])
            v.push_back(integer_from_json(x));
        c.values[o] = cx.coefficients().reduce(v);
    }
    return c;
}

Json cochain_to_json(const RealCochainComplex& cx, const RealCochain& c)
{
    Json values = Json::array();
    for (std::size_t o = 0; o < c.values.size(); ++o) {
        IntVector v = cx.coefficients().reduce(c.values[o]);
        if (!is_zero_vector(v))
            values.push_back({o, vector_json(v)});
    }
    return {{"degree", c.degree}, {"values", values}};
}

Json cohomology_to_json(const RealCochainComplex& cx, const CohomologyGroup& h)
{
    Json out = invariants_to_json(h.invariants());
    out["degree"] = h.degree();
    Json gens = Json::array();
    if (h.is_rational()) {
        const std::size_t d = cx.coefficients().dim();
        for (const auto& g : h.rational_generators()) {
            Json values = Json::array();
            for (std::size_t o = 0; o * d < g.size(); ++o) {
                RatVector v(g.begin() + o * d, g.begin() + (o + 1) * d);
                if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }))
                    values.push_back({o, vector_json(v)});
            }
            gens.push_back({{"degree", h.degree()}, {"values", values}});
        }
    } else {
        for (std::size_t k = 0; k < h.generators().size(); ++k) {
            Json g = cochain_to_json(cx, cx.unflatten(h.degree(), h.generators()[k]));
            g["order"] = integer_to_json(h.orders()[k]);
            gens.push_back(g);
        }
    }
    out["generators"] = gens;
    return out;
}

Json report_to_json(const ValidationReport& r)
{
    Json v = Json::array();
    for (const auto& x : r.violations)
        v.push_back({{"axiom", x.axiom}, {"witness", x.witness}});
    return {{"valid", r.ok()}, {"violations", v}};
}

Json twist_to_json(const GradedTwist& t)
{
    return {{"base", groupoid_to_json(t.space->base())},
            {"S", coefficients_to_json(t.space->coefficients())},
            {"omega", cochain_to_json(t.space->omega_complex(), t.omega)},
            {"delta", cochain_to_json(t.space->grading_complex(), t.delta)}};
}

GradedTwist twist_from_json(std::shared_ptr<const TwistSpace> space, const Json& j)
{
    RealCochain omega = space->omega_complex().zero(2);
    RealCochain delta = space->grading_complex().zero(1);
    if (auto it = j.find("omega"); it != j.end()) {
        omega = cochain_from_json(space->omega_complex(), *it);
        if (omega.degree != 2)
            malformed("omega must be a 2-cochain");
    }
    if (auto it = j.find("delta"); it != j.end()) {
        delta = cochain_from_json(space->grading_complex(), *it);
        if (delta.degree != 1)
            malformed("delta must be a 1-cochain");
    }
    return make_twist(std::move(space), std::move(omega), std::move(delta));
}

Json extension_to_json(const ExtensionGroupoid& e)
{
    return {{"groupoid", groupoid_to_json(e.total)},
            {"projection", e.projection},
            {"fiber_size", e.fiber_size},
            {"action", e.action}};
}

ExtensionGroupoid extension_from_json(const Json& j)
{
    ExtensionGroupoid e;
    e.total = FiniteRealGroupoid::create(groupoid_data_from_json(field(j, "groupoid")));
    e.projection = index_list(field(j, "projection"), "projection");
    e.fiber_size = as_index(field(j, "fiber_size"), "fiber_size");
    e.action = index_list(field(j, "action"), "action");
    return e;
}

Json bundle_to_json(const RealPrincipalBundle& b)
{
    return {{"base", groupoid_to_json(b.space->base())},
            {"S", coefficients_to_json(b.space->coefficients())},
            {"cocycle", cochain_to_json(b.space->complex(), b.cocycle)}};
}

RealRepresentation representation_from_json(const FiniteRealGroupoid& base, const Json& j)
{
    RealRepresentation e;
    e.base = base;
    e.p = as_index(field(j, "p"), "p");
    e.q = as_index(field(j, "q"), "q");
    const std::size_t k = e.rank();
    auto entry = [](const Json& x) { return rational_from_json(x); };
    const Json& action = field(j, "action");
    const Json& nu = field(j, "nu");
    if (!action.is_array() || action.size() != base.num_arrows())
        malformed("action must list one matrix per arrow");
    if (!nu.is_array() || nu.size() != base.num_objects())
        malformed("nu must list one matrix per object");
    for (const auto& m : action)
        e.action.push_back(matrix_from<Rational>(m, k, k, entry));
    for (const auto& m : nu)
        e.nu.push_back(matrix_from<Rational>(m, k, k, entry));
    return e;
}

Json representation_to_json(const RealRepresentation& e)
{
    Json action = Json::array(), nu = Json::array();
    for (const auto& m : e.action)
        action.push_back(matrix_to_json(m));
    for (const auto& m : e.nu)
        nu.push_back(matrix_to_json(m));
    return {{"p", e.p}, {"q", e.q}, {"action", action}, {"nu", nu}};
}

Json vanishing_to_json(const VanishingReport& r)
{
    Json degrees = Json::array();
    for (const auto& d : r.degrees)
        degrees.push_back({{"degree", d.degree},
                           {"cochain_dim", d.cochain_dim},
                           {"image_rank", d.image_rank},
                           {"kernel_dim", d.kernel_dim},
                           {"cohomology_dim", d.cohomology_dim}});
    return {{"all_zero", r.all_zero}, {"degrees", degrees}};
}

RealCover cover_from_json(const FiniteRealGroupoid& g, const Json& j)
{
    const Json& blocks = field(j, "blocks");
    if (!blocks.is_array())
        malformed("blocks must be an array of object lists");
    std::vector<std::vector<Index>> b;
    for (const auto& x : blocks)
        b.push_back(index_list(x, "block"));
    return make_real_cover(g, std::move(b), index_list_or_empty(j, "bar"));
}

RealShortExactSequence sequence_from_json(const Json& j)
{
    RealShortExactSequence s;
    s.sub = coefficients_from_json(field(j, "sub"));
    s.total = coefficients_from_json(field(j, "total"));
    s.quotient = coefficients_from_json(field(j, "quotient"));
    s.inclusion.matrix = int_matrix_from_json(field(j, "inclusion"), s.total.dim(), s.sub.dim());
    s.projection.matrix = int_matrix_from_json(field(j, "projection"), s.quotient.dim(), s.total.dim());
    return s;
}

IntMatrix int_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols)
{
    return matrix_from<Integer>(j, rows, cols, [](const Json& x) { return integer_from_json(x); });
}

RatMatrix rat_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols)
{
    return matrix_from<Rational>(j, rows, cols, [](const Json& x) { return rational_from_json(x); });
}

Json matrix_to_json(const IntMatrix& m)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.push_back(vector_json(m.row(r)));
    return out;
}

Json matrix_to_json(const RatMatrix& m)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.push_back(vector_json(m.row(r)));
    return out;
}

}  // namespace rgc::io
