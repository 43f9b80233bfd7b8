#include "lscrystal/json_io.hpp"

#include <limits>

namespace lscrystal {

Json integer_to_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() &&
        x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw Error(Errc::bad_config, "expected an integer or decimal string");
}

Json fraction_to_json(const Rational& x) {
    return Json::array({integer_to_json(boost::multiprecision::numerator(x)),
                        integer_to_json(boost::multiprecision::denominator(x))});
}

Rational fraction_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error(Errc::bad_config, "expected a [num, den] fraction pair");
    const Integer num = integer_from_json(j[0]);
    const Integer den = integer_from_json(j[1]);
    if (den <= 0) throw Error(Errc::bad_config, "fraction denominators must be positive");
    return Rational(num, den);
}

Json path_to_json(const LSPath& path) {
    Json j;
    j["cartan"] = Json::array({path.cartan().a, path.cartan().b});
    j["lambda"] = Json::array(
        {integer_to_json(path.shape().c1), integer_to_json(path.shape().c2)});
    j["dirs"] = path.dirs();
    Json sigmas = Json::array();
    for (const auto& s : path.sigmas()) sigmas.push_back(fraction_to_json(s));
    j["sigmas"] = std::move(sigmas);
    return j;
}

LSPath path_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("cartan") || !j.contains("lambda") || !j.contains("dirs") ||
        !j.contains("sigmas"))
        throw Error(Errc::bad_config, "path JSON needs cartan, lambda, dirs and sigmas");
    const auto& jc = j["cartan"];
    if (!jc.is_array() || jc.size() != 2)
        throw Error(Errc::bad_config, "cartan must be a pair [a, b]");
    CartanData cartan(jc[0].get<int>(), jc[1].get<int>());
    const auto& jl = j["lambda"];
    if (!jl.is_array() || jl.size() != 2)
        throw Error(Errc::bad_config, "lambda must be a pair [c1, c2]");
    Weight lambda{integer_from_json(jl[0]), integer_from_json(jl[1])};
    std::vector<long> dirs;
    for (const auto& d : j["dirs"]) dirs.push_back(d.get<long>());
    std::vector<Rational> sigmas;
    for (const auto& s : j["sigmas"]) sigmas.push_back(fraction_from_json(s));
    return LSPath::validate(cartan, lambda, std::move(dirs), std::move(sigmas));
}

Json rational_weight_to_json(const RationalWeight& w) {
    return Json::array({fraction_to_json(w.c1), fraction_to_json(w.c2)});
}

Json classification_to_json(const OrbitClassification& cls) {
    Json j;
    j["kind"] = to_string(cls.kind);
    j["witness_m"] = cls.witness_m;
    if (cls.canonical) {
        j["canonical"] =
            Json::array({integer_to_json(cls.canonical->c1), integer_to_json(cls.canonical->c2)});
        j["form_tag"] = to_string(*cls.form_tag);
        j["canonical_m"] = cls.canonical_m;
        j["negated"] = cls.negated;
    } else {
        j["canonical"] = nullptr;
        j["form_tag"] = nullptr;
    }
    return j;
}

Json report_to_json(const ComponentReport& rep) {
    Json j;
    j["seed"] = path_to_json(rep.seed);
    j["visited_count"] = rep.visited_count();
    j["edge_count"] = rep.edge_count();
    j["frontier_exhausted"] = rep.frontier_exhausted;
    j["depth_reached"] = rep.depth_reached;
    Json violations = Json::array();
    for (const auto& v : rep.violations) {
        Json jv;
        jv["checker"] = v.checker;
        jv["message"] = v.message;
        jv["path"] = path_to_json(rep.visited[v.node]);
        violations.push_back(std::move(jv));
    }
    j["violations"] = std::move(violations);
    Json stats;
    for (const auto& [key, value] : rep.stats) stats[key] = value;
    j["stats"] = std::move(stats);
    return j;
}

std::string canonical_path_string(const LSPath& path) { return path_to_json(path).dump(); }

}  // namespace lscrystal
