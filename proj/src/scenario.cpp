#include "varstring/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "varstring/errors.hpp"

namespace varstring {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

double get_num(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError("key '" + std::string(key) + "' in " + where +
                          " must be a number");
    return v.get<double>();
}

double get_num_or(const json& obj, const char* key, double dflt,
                  const std::string& where) {
    return obj.contains(key) ? get_num(obj, key, where) : dflt;
}

std::string get_str(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_string())
        throw ConfigError("missing or non-string key '" + std::string(key) +
                          "' in " + where);
    return obj.at(key).get<std::string>();
}

bool get_bool_or(const json& obj, const char* key, bool dflt,
                 const std::string& where) {
    if (!obj.contains(key)) return dflt;
    if (!obj.at(key).is_boolean())
        throw ConfigError("key '" + std::string(key) + "' in " + where +
                          " must be a boolean");
    return obj.at(key).get<bool>();
}

LengthProfile parse_profile(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    reject_unknown(j, {"kind", "L", "v", "T"}, where);
    const std::string kind = get_str(j, "kind", where);
    const double L = get_num_or(j, "L", 1.0, where);
    const double T = get_num(j, "T", where);
    if (kind == "constant") {
        if (j.contains("v")) throw ConfigError("'v' is meaningless in " + where);
        return make_profile(ProfileKind::Constant, L, 0.0, T);
    }
    if (kind == "linear")
        return make_profile(ProfileKind::Linear, L, get_num(j, "v", where), T);
    throw ConfigError("unknown profile kind '" + kind + "' in " + where);
}

InitialData parse_initial(const json& j, double L, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    const std::string preset = get_str(j, "preset", where);
    if (preset == "sine") {
        reject_unknown(j, {"preset", "k"}, where);
        const double k = get_num_or(j, "k", 0.0, where);
        if (k != std::floor(k) || k < 0.0)
            throw ConfigError("'k' in " + where + " must be a nonnegative integer");
        return make_initial_sine(int(k), L);
    }
    if (preset == "triangle") {
        reject_unknown(j, {"preset", "peak"}, where);
        const double peak = get_num_or(j, "peak", 0.5 * L, where);
        if (peak <= 0.0 || peak >= L)
            throw ConfigError("'peak' in " + where + " must lie inside (0, L)");
        return make_initial_triangle(peak, L);
    }
    if (preset == "gaussian") {
        reject_unknown(j, {"preset", "center", "width"}, where);
        const double center = get_num_or(j, "center", 0.5 * L, where);
        const double width = get_num_or(j, "width", L / 16.0, where);
        if (width <= 0.0) throw ConfigError("'width' in " + where + " must be positive");
        return make_initial_gaussian(center, width, L);
    }
    throw ConfigError("unknown initial preset '" + preset + "' in " + where);
}

std::vector<double> parse_times(const json& j, double T, const std::string& where) {
    std::vector<double> ts;
    if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number())
                throw ConfigError(where + " entries must be numbers");
            ts.push_back(v.get<double>());
        }
    } else if (j.is_object()) {
        reject_unknown(j, {"start", "stop", "count"}, where);
        const double start = get_num(j, "start", where);
        const double stop = get_num(j, "stop", where);
        const double countRaw = get_num(j, "count", where);
        if (countRaw != std::floor(countRaw) || countRaw < 1.0)
            throw ConfigError("'count' in " + where + " must be a positive integer");
        const int count = int(countRaw);
        if (stop < start) throw ConfigError("'stop' < 'start' in " + where);
        for (int i = 0; i < count; ++i) {
            const double f = (count == 1) ? 0.0 : double(i) / double(count - 1);
            ts.push_back(start + (stop - start) * f);
        }
    } else {
        throw ConfigError(where + " must be a list or {start, stop, count}");
    }
    if (ts.empty()) throw ConfigError(where + " must not be empty");
    for (double t : ts)
        if (t < 0.0 || t > T)
            throw ConfigError("sample t = " + std::to_string(t) + " outside [0, T] in " +
                              where);
    return ts;
}

ScenarioSpec parse_scenario(const json& j, std::size_t index) {
    std::ostringstream label;
    label << "scenarios[" << index << "]";
    if (!j.is_object()) throw ConfigError(label.str() + " must be an object");
    const std::string name =
        j.contains("name") ? get_str(j, "name", label.str()) : std::string();
    const std::string where = name.empty() ? label.str() : "scenario '" + name + "'";
    reject_unknown(j,
                   {"name", "profile", "eta", "initial", "modes", "grid_h",
                    "time_samples", "quad_tol", "moore", "outputs"},
                   where);
    if (name.empty()) throw ConfigError("missing 'name' in " + where);
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            throw ConfigError("scenario name '" + name +
                              "' must use only letters, digits, '_', '-'");
    }

    ScenarioSpec sc;
    sc.name = name;
    try {
        if (!j.contains("profile"))
            throw ConfigError("missing 'profile' in " + where);
        sc.profile = parse_profile(j.at("profile"), where + ".profile");

        const double eta = get_num_or(j, "eta", 0.0, where);
        sc.damping = make_damping(eta);

        if (!j.contains("initial"))
            throw ConfigError("missing 'initial' in " + where);
        sc.initial = parse_initial(j.at("initial"), sc.profile.L, where + ".initial");

        const double modesRaw = get_num_or(j, "modes", 256.0, where);
        if (modesRaw != std::floor(modesRaw) || modesRaw < 1.0)
            throw ConfigError("'modes' in " + where + " must be a positive integer");
        sc.modes = int(modesRaw);

        sc.gridH = get_num_or(j, "grid_h", 0.0, where);
        if (sc.gridH < 0.0) throw ConfigError("'grid_h' in " + where + " must be >= 0");

        if (!j.contains("time_samples"))
            throw ConfigError("missing 'time_samples' in " + where);
        sc.timeSamples =
            parse_times(j.at("time_samples"), sc.profile.T, where + ".time_samples");

        sc.quadTol = get_num_or(j, "quad_tol", 1e-10, where);
        if (sc.quadTol <= 0.0)
            throw ConfigError("'quad_tol' in " + where + " must be positive");

        if (j.contains("moore")) {
            const auto& m = j.at("moore");
            if (!m.is_object()) throw ConfigError("'moore' in " + where + " must be an object");
            reject_unknown(m, {"source", "seed", "grid_per_unit"}, where + ".moore");
            if (m.contains("source")) {
                const std::string src = get_str(m, "source", where + ".moore");
                if (src == "numeric")
                    sc.forceNumericMoore = true;
                else if (src != "auto")
                    throw ConfigError("'source' in " + where +
                                      ".moore must be 'auto' or 'numeric'");
            }
            if (m.contains("seed")) {
                const std::string seed = get_str(m, "seed", where + ".moore");
                if (seed == "hermite")
                    sc.seed = SeedKind::Hermite;
                else if (seed == "tangent")
                    sc.seed = SeedKind::TangentClosedForm;
                else
                    throw ConfigError("'seed' in " + where +
                                      ".moore must be 'hermite' or 'tangent'");
            }
            const double gpu =
                get_num_or(m, "grid_per_unit", double(sc.gridPerUnit), where + ".moore");
            if (gpu != std::floor(gpu) || gpu < 16.0)
                throw ConfigError("'grid_per_unit' in " + where +
                                  ".moore must be an integer >= 16");
            sc.gridPerUnit = int(gpu);
        }

        if (j.contains("outputs")) {
            const auto& o = j.at("outputs");
            if (!o.is_object())
                throw ConfigError("'outputs' in " + where + " must be an object");
            reject_unknown(o, {"modes", "fprime"}, where + ".outputs");
            sc.wantModesCsv = get_bool_or(o, "modes", false, where + ".outputs");
            sc.wantFprimeCsv = get_bool_or(o, "fprime", false, where + ".outputs");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        // physically inadmissible values are a config problem at this stage
        throw ConfigError(where + ": " + e.what());
    }
    return sc;
}

} // namespace

Bundle parse_bundle_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(root, {"scenarios"}, "config root");
    if (!root.contains("scenarios") || !root.at("scenarios").is_array())
        throw ConfigError("config must contain a 'scenarios' array");

    Bundle bundle;
    std::set<std::string> seen;
    const auto& arr = root.at("scenarios");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        ScenarioSpec sc = parse_scenario(arr[i], i);
        if (!seen.insert(sc.name).second)
            throw ConfigError("duplicate scenario name '" + sc.name + "'");
        bundle.scenarios.push_back(std::move(sc));
    }
    return bundle;
}

Bundle parse_bundle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bundle_text(buf.str());
}

MooreMap scenario_moore(const ScenarioSpec& sc) {
    if (!sc.forceNumericMoore) {
        if (sc.profile.kind == ProfileKind::Constant)
            return moore_constant(sc.profile.L);
        if (sc.profile.kind == ProfileKind::Linear)
            return moore_linear(sc.profile.L, sc.profile.v);
    }
    return moore_numeric(sc.profile, sc.seed, 0.0, sc.gridPerUnit);
}

} // namespace varstring
