#include "excitonsim_cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "excitonsim/errors.hpp"

namespace excitonsim::cli {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

const std::vector<ParamInfo>& spectrum_params() {
    static const std::vector<ParamInfo> params{
        {"n_sites", ParamType::integer, "number of chromophores"},
        {"omega_e", ParamType::real, "site transition energy, meV"},
        {"j_nn", ParamType::real, "nearest-neighbour exciton coupling, meV"},
        {"u_nn", ParamType::real, "nearest-neighbour two-exciton shift, meV"},
        {"mu_eg", ParamType::real, "site transition dipole"},
        {"coupling_range", ParamType::coupling_range, "nearest_neighbor | full_dipole"},
        {"two_exciton", ParamType::two_exciton, "bosonic | hard_core_dimer"},
        {"gamma", ParamType::real, "one-exciton coherence decay, meV"},
        {"gamma2", ParamType::real, "two-exciton coherence decay, meV"},
        {"omega_rabi", ParamType::real, "vacuum Rabi frequency, meV"},
        {"omega_c", ParamType::real_or_auto, "cavity frequency, meV, or auto"},
        {"a_c", ParamType::real_list, "mean cavity amplitudes, one curve each"},
        {"sigma", ParamType::real, "site disorder standard deviation, meV"},
        {"realizations", ParamType::integer, "disorder realizations"},
        {"delta_min", ParamType::real, "lower probe detuning, units of gamma"},
        {"delta_max", ParamType::real, "upper probe detuning, units of gamma"},
        {"grid_points", ParamType::integer, "probe grid points"},
    };
    return params;
}

const std::vector<ParamInfo>& inset_params() {
    static const std::vector<ParamInfo> params = [] {
        std::vector<ParamInfo> p = spectrum_params();
        p.push_back({"emit_inset", ParamType::boolean, "also write effective-level eigenvalue tracks"});
        p.push_back({"inset_omega2_max", ParamType::real, "upper end of the Omega_2 sweep"});
        p.push_back({"inset_points", ParamType::integer, "points in the Omega_2 sweep"});
        return p;
    }();
    return params;
}

const std::vector<ParamInfo>& minimum_params() {
    static const std::vector<ParamInfo> params{
        {"omega_e", ParamType::real, "site transition energy, meV"},
        {"j_nn", ParamType::real, "exciton coupling, meV"},
        {"u_nn", ParamType::real, "two-exciton shift, meV"},
        {"mu_eg", ParamType::real, "site transition dipole"},
        {"gamma", ParamType::real, "one-exciton coherence decay, meV"},
        {"gamma2", ParamType::real, "two-exciton coherence decay, meV"},
        {"omega_rabi", ParamType::real, "vacuum Rabi frequency, meV"},
        {"sigma_over_j", ParamType::real_list, "disorder widths in units of |j_nn|, one curve each"},
        {"realizations", ParamType::integer, "disorder realizations per point"},
        {"a_c_max", ParamType::real, "largest cavity amplitude"},
        {"a_c_points", ParamType::integer, "cavity amplitude points from 0"},
    };
    return params;
}

const ParamInfo& find_param(Scenario s, const std::string& key) {
    for (const auto& p : valid_params(s)) {
        if (p.key == key) return p;
    }
    std::ostringstream msg;
    msg << "unknown parameter '" << key << "' for scenario " << scenario_name(s)
        << "; valid keys:";
    for (const auto& p : valid_params(s)) msg << ' ' << p.key;
    throw InputError(msg.str());
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw InputError("parameter '" + key + "': expected a number, got '" + text + "'");
    }
    return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        throw InputError("parameter '" + key + "': expected an integer, got '" + text + "'");
    }
    return v;
}

json parse_text_value(const ParamInfo& info, const std::string& text) {
    const std::string t = trim(text);
    switch (info.type) {
    case ParamType::integer:
        return parse_integer(info.key, t);
    case ParamType::real:
        return parse_real(info.key, t);
    case ParamType::real_or_auto:
        if (lower(t) == "auto") return "auto";
        return parse_real(info.key, t);
    case ParamType::real_list: {
        std::string body = t;
        if (body.size() >= 2 && body.front() == '[' && body.back() == ']') {
            body = body.substr(1, body.size() - 2);
        }
        json list = json::array();
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) list.push_back(parse_real(info.key, item));
        if (list.empty()) throw InputError("parameter '" + info.key + "': empty list");
        return list;
    }
    case ParamType::boolean: {
        const std::string v = lower(t);
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        throw InputError("parameter '" + info.key + "': expected true or false, got '" + text + "'");
    }
    case ParamType::coupling_range:
        if (t == "nearest_neighbor" || t == "full_dipole") return t;
        throw InputError("parameter '" + info.key +
                         "': expected nearest_neighbor or full_dipole, got '" + text + "'");
    case ParamType::two_exciton:
        if (t == "bosonic" || t == "hard_core_dimer") return t;
        throw InputError("parameter '" + info.key + "': expected bosonic or hard_core_dimer, got '" +
                         text + "'");
    }
    throw InputError("parameter '" + info.key + "': unsupported type");
}

// Typed JSON values are checked against the parameter type; strings go
// through the text parser so hand-written JSON may quote anything.
json coerce(const ParamInfo& info, const json& value) {
    if (value.is_string()) return parse_text_value(info, value.get<std::string>());
    const auto bad = [&] {
        return InputError("parameter '" + info.key + "': value " + value.dump() +
                          " has the wrong type");
    };
    switch (info.type) {
    case ParamType::integer:
        if (!value.is_number_integer()) throw bad();
        return value.get<long long>();
    case ParamType::real:
    case ParamType::real_or_auto:
        if (!value.is_number()) throw bad();
        return value.get<double>();
    case ParamType::real_list: {
        json list = json::array();
        if (value.is_number()) {
            list.push_back(value.get<double>());
            return list;
        }
        if (!value.is_array() || value.empty()) throw bad();
        for (const auto& v : value) {
            if (!v.is_number()) throw bad();
            list.push_back(v.get<double>());
        }
        return list;
    }
    case ParamType::boolean:
        if (!value.is_boolean()) throw bad();
        return value;
    case ParamType::coupling_range:
    case ParamType::two_exciton:
        throw bad();
    }
    throw bad();
}

std::map<std::string, json> presets(Scenario s) {
    std::map<std::string, json> p;
    if (s == Scenario::custom) return p;
    p["omega_e"] = 2250.0;
    p["j_nn"] = -68.2;
    p["u_nn"] = -198.0;
    p["mu_eg"] = 1.0;
    p["gamma"] = 26.0;
    p["gamma2"] = 26.0;
    if (s == Scenario::fig4c) {
        p["omega_rabi"] = 5 * 26.0;
        p["sigma_over_j"] = {0.0, 0.05, 0.1};
        p["realizations"] = 1200;
        p["a_c_max"] = 3.0;
        p["a_c_points"] = 61;
        return p;
    }
    p["coupling_range"] = "nearest_neighbor";
    p["two_exciton"] = "bosonic";
    p["omega_rabi"] = 26.0;
    p["omega_c"] = "auto";
    p["sigma"] = 0.0;
    p["realizations"] = 1;
    p["delta_min"] = -20.0;
    p["delta_max"] = 20.0;
    p["grid_points"] = 2001;
    switch (s) {
    case Scenario::fig2a:
        p["n_sites"] = 100;
        p["a_c"] = {0.0, 0.2, 0.4, 0.6, 0.8};
        break;
    case Scenario::fig2b:
        p["n_sites"] = 6;
        p["a_c"] = {0.0, 0.4, 0.8, 1.2, 1.6};
        break;
    case Scenario::fig3a:
        p["n_sites"] = 100;
        p["a_c"] = {0.0, 0.1, 0.2, 0.3};
        p["sigma"] = 0.125 * 68.2;
        p["realizations"] = 400;
        break;
    case Scenario::fig3b:
        p["n_sites"] = 6;
        p["a_c"] = {0.0, 0.4, 0.8, 1.2, 1.6, 2.0};
        p["sigma"] = 0.125 * 68.2;
        p["realizations"] = 1200;
        break;
    case Scenario::fig4ab:
        p["n_sites"] = 2;
        p["two_exciton"] = "hard_core_dimer";
        p["omega_rabi"] = 5 * 26.0;
        p["a_c"] = {0.0, 0.5, 1.0};
        p["sigma"] = 0.1 * 68.2;
        p["realizations"] = 1200;
        break;
    default:
        break;
    }
    if (s == Scenario::fig2a || s == Scenario::fig2b) {
        p["emit_inset"] = false;
        p["inset_omega2_max"] = 10.0;
        p["inset_points"] = 201;
    }
    return p;
}

void check_ranges(const RunConfig& c) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw InputError(what);
    };
    require(c.integer("realizations") >= 1, "realizations must be >= 1");
    if (c.scenario == Scenario::fig4c) {
        require(c.integer("realizations") >= 2, "realizations must be >= 2 for fig4c");
        require(c.integer("a_c_points") >= 2, "a_c_points must be >= 2");
        require(c.real("a_c_max") > 0.0, "a_c_max must be > 0");
        for (double s : c.reals("sigma_over_j")) require(s >= 0.0, "sigma_over_j must be >= 0");
        return;
    }
    require(c.integer("n_sites") >= 2, "n_sites must be >= 2");
    require(c.integer("grid_points") >= 2, "grid_points must be >= 2");
    require(c.real("delta_max") > c.real("delta_min"), "delta_max must exceed delta_min");
    require(c.real("sigma") >= 0.0, "sigma must be >= 0");
    for (double a : c.reals("a_c")) require(a >= 0.0, "a_c values must be >= 0");
    if (c.params.count("inset_points")) {
        require(c.integer("inset_points") >= 1, "inset_points must be >= 1");
        require(c.real("inset_omega2_max") >= 0.0, "inset_omega2_max must be >= 0");
    }
}

} // namespace

Scenario parse_scenario(const std::string& name) {
    static const std::map<std::string, Scenario> names{
        {"fig2a", Scenario::fig2a}, {"fig2b", Scenario::fig2b},   {"fig3a", Scenario::fig3a},
        {"fig3b", Scenario::fig3b}, {"fig4ab", Scenario::fig4ab}, {"fig4c", Scenario::fig4c},
        {"custom", Scenario::custom}};
    const auto it = names.find(trim(name));
    if (it == names.end()) {
        throw InputError("unknown scenario '" + name +
                         "'; expected one of fig2a fig2b fig3a fig3b fig4ab fig4c custom");
    }
    return it->second;
}

std::string scenario_name(Scenario s) {
    switch (s) {
    case Scenario::fig2a: return "fig2a";
    case Scenario::fig2b: return "fig2b";
    case Scenario::fig3a: return "fig3a";
    case Scenario::fig3b: return "fig3b";
    case Scenario::fig4ab: return "fig4ab";
    case Scenario::fig4c: return "fig4c";
    case Scenario::custom: return "custom";
    }
    return "custom";
}

OutputFormat parse_format(const std::string& name) {
    const std::string n = lower(trim(name));
    if (n == "csv") return OutputFormat::csv;
    if (n == "json") return OutputFormat::json;
    throw InputError("unknown format '" + name + "'; expected csv or json");
}

std::string format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::string provenance_name(Provenance p) {
    switch (p) {
    case Provenance::preset: return "preset";
    case Provenance::config: return "config";
    case Provenance::override_: return "override";
    case Provenance::flag: return "flag";
    }
    return "preset";
}

const std::vector<ParamInfo>& valid_params(Scenario s) {
    switch (s) {
    case Scenario::fig2a:
    case Scenario::fig2b:
        return inset_params();
    case Scenario::fig4c:
        return minimum_params();
    default:
        return spectrum_params();
    }
}

double RunConfig::real(const std::string& key) const { return params.at(key).value.get<double>(); }

long long RunConfig::integer(const std::string& key) const {
    return params.at(key).value.get<long long>();
}

bool RunConfig::boolean(const std::string& key) const { return params.at(key).value.get<bool>(); }

std::vector<double> RunConfig::reals(const std::string& key) const {
    return params.at(key).value.get<std::vector<double>>();
}

std::string RunConfig::text(const std::string& key) const {
    return params.at(key).value.get<std::string>();
}

bool RunConfig::is_auto(const std::string& key) const {
    const json& v = params.at(key).value;
    return v.is_string() && v.get<std::string>() == "auto";
}

std::pair<std::string, std::string> split_assignment(const std::string& item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
        throw InputError("expected key=value, got '" + item + "'");
    }
    std::string key = trim(item.substr(0, eq));
    if (key.empty()) throw InputError("missing key in '" + item + "'");
    return {key, trim(item.substr(eq + 1))};
}

ConfigLayer parse_key_value_text(const std::string& text, const std::string& origin) {
    ConfigLayer layer;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        std::pair<std::string, std::string> kv;
        try {
            kv = split_assignment(line);
        } catch (const InputError& e) {
            throw InputError(origin + ":" + std::to_string(number) + ": " + e.what());
        }
        const auto& [key, value] = kv;
        if (key == "scenario") {
            layer.scenario = value;
        } else if (key == "seed") {
            layer.seed = static_cast<std::uint64_t>(parse_integer("seed", value));
        } else if (key == "format") {
            layer.format = value;
        } else {
            layer.values.emplace_back(key, json(value));
        }
    }
    return layer;
}

ConfigLayer parse_json_config(const json& doc, const std::string& origin) {
    if (!doc.is_object()) throw InputError(origin + ": expected a JSON object");
    ConfigLayer layer;
    if (doc.contains("scenario")) layer.scenario = doc.at("scenario").get<std::string>();
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) {
            throw InputError(origin + ": seed must be a nonnegative integer");
        }
        layer.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("format")) layer.format = doc.at("format").get<std::string>();
    if (doc.contains("parameters")) {
        const json& params = doc.at("parameters");
        if (!params.is_object()) throw InputError(origin + ": 'parameters' must be an object");
        for (const auto& [key, value] : params.items()) layer.values.emplace_back(key, value);
    }
    return layer;
}

ConfigLayer load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        json doc;
        try {
            doc = json::parse(body);
        } catch (const json::exception& e) {
            throw InputError(path + ": invalid JSON: " + e.what());
        }
        try {
            return parse_json_config(doc, path);
        } catch (const json::exception& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    return parse_key_value_text(text, path);
}

RunConfig resolve(const std::optional<ConfigLayer>& file, const CommandLineSettings& cmd,
                  std::vector<std::string>& warnings) {
    RunConfig out;

    std::optional<std::string> scenario = file ? file->scenario : std::nullopt;
    if (cmd.scenario) {
        if (scenario && parse_scenario(*scenario) != parse_scenario(*cmd.scenario)) {
            warnings.push_back("warning: --scenario " + *cmd.scenario +
                               " replaces scenario " + *scenario + " from the config file");
        }
        scenario = cmd.scenario;
    }
    if (!scenario) throw InputError("no scenario given (use --scenario or a config file)");
    out.scenario = parse_scenario(*scenario);

    for (auto& [key, value] : presets(out.scenario)) {
        out.params[key] = ResolvedParam{value, Provenance::preset};
    }

    auto apply = [&](const std::string& key, const json& raw, Provenance source) {
        const ParamInfo& info = find_param(out.scenario, key);
        const json value = coerce(info, raw);
        const auto it = out.params.find(key);
        if (it != out.params.end() && it->second.source == Provenance::preset &&
            it->second.value != value) {
            warnings.push_back("warning: " + key + " = " + value.dump() + " (" +
                               provenance_name(source) + ") replaces " +
                               scenario_name(out.scenario) + " preset value " +
                               it->second.value.dump());
        }
        out.params[key] = ResolvedParam{value, source};
    };

    if (file) {
        for (const auto& [key, value] : file->values) apply(key, value, Provenance::config);
        if (file->seed) {
            out.seed = *file->seed;
            out.seed_source = Provenance::config;
        }
        if (file->format) out.format = parse_format(*file->format);
    }
    for (const auto& item : cmd.assignments) {
        const auto [key, value] = split_assignment(item);
        if (key == "seed") {
            out.seed = static_cast<std::uint64_t>(parse_integer("seed", value));
            out.seed_source = Provenance::override_;
            continue;
        }
        apply(key, json(value), Provenance::override_);
    }
    if (cmd.seed) {
        out.seed = *cmd.seed;
        out.seed_source = Provenance::flag;
    }
    if (cmd.format) out.format = parse_format(*cmd.format);

    std::vector<std::string> missing;
    for (const auto& p : valid_params(out.scenario)) {
        if (!out.params.count(p.key)) missing.push_back(p.key);
    }
    if (!missing.empty()) {
        std::string msg = "scenario " + scenario_name(out.scenario) + " needs a full parameter set; missing:";
        for (const auto& k : missing) msg += " " + k;
        throw InputError(msg);
    }
    check_ranges(out);
    return out;
}

nlohmann::json to_json(const RunConfig& config) {
    json doc;
    doc["scenario"] = scenario_name(config.scenario);
    doc["seed"] = config.seed;
    doc["format"] = format_name(config.format);
    json params = json::object();
    json provenance = json::object();
    for (const auto& [key, p] : config.params) {
        params[key] = p.value;
        provenance[key] = provenance_name(p.source);
    }
    provenance["seed"] = provenance_name(config.seed_source);
    doc["parameters"] = params;
    doc["provenance"] = provenance;
    return doc;
}

} // namespace excitonsim::cli
