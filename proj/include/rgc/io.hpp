#pragma once

// JSON codecs for every input and output object. Parsing failures throw
// Error(malformed_input); semantic checks are left to the constructors.

#include "rgc/bundles.hpp"
#include "rgc/extensions.hpp"
#include "rgc/les.hpp"
#include "rgc/proper.hpp"

#include "json.hpp"

namespace rgc::io {

using Json = nlohmann::json;

Json parse(const std::string& text);

Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);
Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j);

// {"objects", "arrows": [{"src","tgt"}], "comp": [[g,h,gh]...] | "table",
//  "table": [[gh or null]...], "inv", "rho_obj", "rho_arr"}
GroupoidData groupoid_data_from_json(const Json& j);
Json groupoid_to_json(const FiniteRealGroupoid& g);
Json groupoid_data_to_json(const GroupoidData& d);

// A preset name or {"free_rank", "torsion", "tau", "mode", "kappa"}.
RealCoefficientGroup coefficients_from_json(const Json& j);
Json coefficients_to_json(const RealCoefficientGroup& s);

Json invariants_to_json(const GroupInvariants& g);

// {"degree": n, "values": [[orbit_index, [coefficients]]...]}; orbits not
// listed are zero. Integral complexes only.
RealCochain cochain_from_json(const RealCochainComplex& cx, const Json& j);
Json cochain_to_json(const RealCochainComplex& cx, const RealCochain& c);

Json cohomology_to_json(const RealCochainComplex& cx, const CohomologyGroup& h);
Json report_to_json(const ValidationReport& r);

// {"base": groupoid, "S": coefficients, "omega": 2-cochain, "delta": 1-cochain}
Json twist_to_json(const GradedTwist& t);
// Twist over a known space; "base" and "S" are ignored when present.
GradedTwist twist_from_json(std::shared_ptr<const TwistSpace> space, const Json& j);

// {"groupoid", "projection", "fiber_size", "action"}
Json extension_to_json(const ExtensionGroupoid& e);
ExtensionGroupoid extension_from_json(const Json& j);

Json bundle_to_json(const RealPrincipalBundle& b);

// {"p", "q", "action": [matrix per arrow], "nu": [matrix per object]}
RealRepresentation representation_from_json(const FiniteRealGroupoid& base, const Json& j);
Json representation_to_json(const RealRepresentation& e);
Json vanishing_to_json(const VanishingReport& r);

// {"blocks": [[x...]...], "bar": [...]}
RealCover cover_from_json(const FiniteRealGroupoid& g, const Json& j);

// {"sub", "total", "quotient", "inclusion": matrix, "projection": matrix}
RealShortExactSequence sequence_from_json(const Json& j);

IntMatrix int_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
RatMatrix rat_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
Json matrix_to_json(const IntMatrix& m);
Json matrix_to_json(const RatMatrix& m);

}  // namespace rgc::io
