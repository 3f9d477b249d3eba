#include "jnsharp/io.hpp"

#include <fstream>
#include <sstream>

#include "jnsharp/errors.hpp"

namespace jnsharp {

namespace {

Rational rational_field(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError(where + ": expected a rational string such as \"3/4\"");
}

std::vector<Rational> rational_array(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_field(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

const Json& member(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

}  // namespace

StepFunction step_function_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("step function must be a JSON object");
    const Json& dom = member(j, "domain");
    if (!dom.is_object()) throw ParseError("domain must be an object with keys a and b");
    const Rational a = rational_field(member(dom, "a"), "domain.a");
    const Rational b = rational_field(member(dom, "b"), "domain.b");
    auto bps = rational_array(member(j, "breakpoints"), "breakpoints");
    auto vals = rational_array(member(j, "values"), "values");
    try {
        return {Interval(a, b), std::move(bps), std::move(vals)};
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

StepFunction parse_step_function(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return step_function_from_json(j);
}

StepFunction load_step_function(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_step_function(ss.str());
}

Json to_json(const StepFunction& f) {
    Json bps = Json::array();
    for (const auto& x : f.breakpoints()) bps.push_back(x.str());
    Json vals = Json::array();
    for (const auto& v : f.values()) vals.push_back(v.str());
    return {{"domain", {{"a", f.domain().a().str()}, {"b", f.domain().b().str()}}},
            {"breakpoints", std::move(bps)},
            {"values", std::move(vals)}};
}

std::string dump_step_function(const StepFunction& f) { return to_json(f).dump(2) + "\n"; }

Json to_json(const Interval& I) { return Json::array({I.a().str(), I.b().str()}); }

Json to_json(const IntervalUnion& u) {
    Json out = Json::array();
    for (const auto& p : u.parts()) out.push_back(to_json(p));
    return out;
}

Json to_json(const Enclosure& e) {
    // bits * log10(2) significant digits plus a margin.
    const int digits = e.bits() * 30103 / 100000 + 3;
    return {{"lo", e.lo_str(digits)}, {"hi", e.hi_str(digits)}, {"bits", e.bits()}};
}

Json to_json(const BmoEnclosure& n, int bits) {
    return {{"attained", n.attained.str()},
            {"upper", n.upper.str()},
            {"witness", to_json(n.witness)},
            {"tolerance", n.tolerance.str()},
            {"bounds", to_json(n.bounds(bits))}};
}

Json to_json(const DecompositionLayers& layers) {
    Json depths = Json::array();
    for (int k = 1; k <= layers.depth(); ++k) {
        const Layer& L = layers.layers[static_cast<std::size_t>(k - 1)];
        depths.push_back({{"k", k},
                          {"stopping_e", to_json(L.stopping_e)},
                          {"stopping_f", to_json(L.stopping_f)},
                          {"e", to_json(L.e)},
                          {"f", to_json(L.f)},
                          {"g", to_json(L.g)},
                          {"g_measure", L.g.measure().str()}});
    }
    return {{"params",
             {{"gamma", layers.params.gamma.str()},
              {"alpha_bar", layers.params.alpha_bar.str()},
              {"max_depth", layers.params.max_depth}}},
            {"domain", to_json(layers.domain)},
            {"base", layers.base.str()},
            {"complete", layers.complete},
            {"depth", layers.depth()},
            {"layers", std::move(depths)}};
}

}  // namespace jnsharp
