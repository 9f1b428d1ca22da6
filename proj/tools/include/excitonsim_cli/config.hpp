// Run configuration: scenario presets, typed parameters and their provenance.
//
// Values are resolved in order preset < config file < --set < dedicated flag.
// Every resolved parameter remembers where it came from.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace excitonsim::cli {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scenario { fig2a, fig2b, fig3a, fig3b, fig4ab, fig4c, custom };
enum class OutputFormat { csv, json };
enum class Provenance { preset, config, override_, flag };

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);
OutputFormat parse_format(const std::string& name);
std::string format_name(OutputFormat f);
std::string provenance_name(Provenance p);

enum class ParamType { integer, real, real_list, real_or_auto, boolean, coupling_range, two_exciton };

struct ParamInfo {
    std::string key;
    ParamType type;
    std::string help;
};

// Keys accepted by a scenario, in display order.
const std::vector<ParamInfo>& valid_params(Scenario s);

struct ResolvedParam {
    nlohmann::json value;
    Provenance source{Provenance::preset};
};

struct RunConfig {
    Scenario scenario{Scenario::custom};
    std::map<std::string, ResolvedParam> params;
    std::uint64_t seed{1};
    Provenance seed_source{Provenance::preset};
    OutputFormat format{OutputFormat::csv};

    double real(const std::string& key) const;
    long long integer(const std::string& key) const;
    bool boolean(const std::string& key) const;
    std::vector<double> reals(const std::string& key) const;
    std::string text(const std::string& key) const;
    bool is_auto(const std::string& key) const;
};

// Settings gathered from one source before resolution. Values are either raw
// strings (key = value text, --set) or typed JSON (sidecar files).
struct ConfigLayer {
    std::optional<std::string> scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::vector<std::pair<std::string, nlohmann::json>> values;
};

// Reads `key = value` text (with '#' comments) or a JSON sidecar.
ConfigLayer load_config_file(const std::string& path);
ConfigLayer parse_key_value_text(const std::string& text, const std::string& origin);
ConfigLayer parse_json_config(const nlohmann::json& doc, const std::string& origin);
std::pair<std::string, std::string> split_assignment(const std::string& item);

struct CommandLineSettings {
    std::optional<std::string> scenario;
    std::vector<std::string> assignments; // --set key=value
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
};

// Merges presets, the optional config file layer and the command line.
// Warnings (a preset value replaced) are appended to `warnings`.
RunConfig resolve(const std::optional<ConfigLayer>& file, const CommandLineSettings& cmd,
                  std::vector<std::string>& warnings);

// Sidecar form: scenario, seed, format, parameters and provenance.
nlohmann::json to_json(const RunConfig& config);

} // namespace excitonsim::cli
