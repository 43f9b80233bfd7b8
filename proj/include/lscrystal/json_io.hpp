#pragma once

#include "lscrystal/analysis.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace lscrystal {

using Json = nlohmann::ordered_json;

/// Big integers are emitted as JSON numbers while they fit in 64 bits and as
/// decimal strings beyond that; the parser accepts both forms.
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);

Json fraction_to_json(const Rational& x);  // reduced [num, den], den > 0
Rational fraction_from_json(const Json& j);

/// {"cartan":[a,b],"lambda":[c1,c2],"dirs":[...],"sigmas":[[num,den],...]}
Json path_to_json(const LSPath& path);
LSPath path_from_json(const Json& j);

Json rational_weight_to_json(const RationalWeight& w);

Json classification_to_json(const OrbitClassification& cls);

Json report_to_json(const ComponentReport& rep);

/// Compact single-line serialization used for node identity hashing.
std::string canonical_path_string(const LSPath& path);

}  // namespace lscrystal
