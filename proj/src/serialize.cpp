#include "lle/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>
#include <variant>

#include "lle/error.hpp"

namespace lle::io {
namespace {

void allow_keys(const Json& j, const std::set<std::string>& keys, const std::string& what) {
    for (const auto& [key, value] : j.items())
        if (!keys.count(key)) fail(ErrorKind::Usage, what + ": unknown key '" + key + "'");
}

double number(const Json& j, const std::string& what) {
    if (!j.is_number()) fail(ErrorKind::Usage, what + " must be a number");
    return j.get<double>();
}

geometry::Point2 point(const Json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2) fail(ErrorKind::Usage, what + " must be a pair [x, y]");
    return {number(j[0], what), number(j[1], what)};
}

Json point_json(const geometry::Point2& p) { return Json::array({p.x1, p.x2}); }

}  // namespace

namespace {

geometry::Region build_region(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail(ErrorKind::Usage, "region: expected an object with a string \"type\"");
    const std::string type = j["type"].get<std::string>();
    geometry::Point2 center{};
    if (j.contains("center")) center = point(j["center"], "region center");
    if (type == "disk") {
        allow_keys(j, {"type", "R", "center"}, "disk region");
        if (!j.contains("R")) fail(ErrorKind::Usage, "disk region: missing \"R\"");
        return geometry::Region::disk(number(j["R"], "disk radius"), center);
    }
    if (type == "star") {
        allow_keys(j, {"type", "coeffs", "center"}, "star region");
        if (!j.contains("coeffs") || !j["coeffs"].is_array())
            fail(ErrorKind::Usage, "star region: \"coeffs\" must be an array");
        std::vector<double> coeffs;
        for (const auto& c : j["coeffs"]) coeffs.push_back(number(c, "star coefficient"));
        return geometry::Region::star(std::move(coeffs), center);
    }
    if (type == "polygon") {
        allow_keys(j, {"type", "vertices"}, "polygon region");
        if (!j.contains("vertices") || !j["vertices"].is_array())
            fail(ErrorKind::Usage, "polygon region: \"vertices\" must be an array");
        std::vector<geometry::Point2> vertices;
        for (const auto& v : j["vertices"]) vertices.push_back(point(v, "polygon vertex"));
        return geometry::Region::polygon(std::move(vertices));
    }
    fail(ErrorKind::Usage, "region: unknown type '" + type + "'");
}

}  // namespace

geometry::Region region_from_json(const Json& j) {
    try {
        return build_region(j);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Domain) fail(ErrorKind::Usage, std::string("region: ") + e.what());
        throw;
    }
}

geometry::Region parse_region(const std::string& text) {
    std::string body = text;
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) fail(ErrorKind::Usage, "cannot read region file '" + text.substr(1) + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    Json j;
    try {
        j = Json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::Usage, std::string("region JSON: ") + e.what());
    }
    return region_from_json(j);
}

Json to_json(const geometry::Region& region) {
    Json j;
    j["type"] = region.type_name();
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, geometry::Disk>) {
                j["R"] = shape.R;
                j["center"] = point_json(shape.center);
            } else if constexpr (std::is_same_v<T, geometry::SmoothStar>) {
                j["coeffs"] = shape.coeffs;
                j["center"] = point_json(shape.center);
            } else {
                Json vs = Json::array();
                for (const auto& v : shape.vertices) vs.push_back(point_json(v));
                j["vertices"] = vs;
            }
        },
        region.shape());
    return j;
}

Json to_json(const disk::LocalSpectrum& s) {
    Json j;
    j["B"] = s.B;
    j["selector"] = s.selector.to_string();
    j["L"] = s.L;
    j["region"] = to_json(s.region);
    j["solver"] = s.solver;
    j["cutoff"] = s.cutoff;
    j["trace"] = s.trace();
    j["count"] = s.eigenvalues.size();
    j["dropped_count"] = s.dropped_count;
    j["dropped_max"] = s.dropped_max;
    Json settings = Json::object();
    for (const auto& [key, value] : s.settings) settings[key] = value;
    j["settings"] = settings;
    j["eigenvalues"] = s.eigenvalues;
    j["complements"] = s.complements;
    if (!s.sectors.empty()) j["sectors"] = s.sectors;
    return j;
}

Json to_json(const region::AsymptoticFit& fit) {
    Json j;
    j["model"] = fit.model == region::FitModel::Linear ? "linear" : "quadratic";
    if (fit.model == region::FitModel::Quadratic) j["c2"] = fit.c2;
    j["c1"] = fit.c1;
    j["c0"] = fit.c0;
    j["residual"] = fit.residual_norm;
    j["residuals"] = fit.residuals;
    j["condition"] = fit.condition;
    j["window"] = Json::array({fit.window.first, fit.window.second});
    j["slopes"] = fit.slopes;
    return j;
}

Json to_json(const identities::Check& check) {
    Json j;
    j["pass"] = check.pass;
    j["error"] = check.error;
    Json inputs = Json::object();
    for (const auto& [key, values] : check.trace.entries) {
        if (values.size() == 1) inputs[key] = values[0];
        else inputs[key] = values;
    }
    j["trace"] = inputs;
    return j;
}

Json to_json(const identities::SuiteReport& r) {
    Json j;
    j["identity"] = r.identity;
    j["seed"] = r.seed;
    j["cases"] = r.cases;
    j["passed"] = r.passed();
    j["max_error"] = r.max_error;
    j["tolerance"] = r.tolerance;
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        identities::Check c;
        c.pass = false;
        c.error = f.error;
        c.trace = f.trace;
        Json entry = to_json(c);
        entry["index"] = f.index;
        failures.push_back(entry);
    }
    j["failures"] = failures;
    return j;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string to_csv(const region::ScalingSeries& series, const std::string& value_column) {
    std::string out = "L," + value_column + "\n";
    for (const auto& [L, v] : series.points) out += format_number(L) + "," + format_number(v) + "\n";
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lle::io
