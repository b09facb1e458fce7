#pragma once

// Flat INI-style configuration: [section] headers, key = value pairs, and
// '#' comments. Scenario defaults define the full key schema; user files and
// command-line overrides are merged onto them, and unknown keys are rejected
// so typos fail loudly instead of silently running defaults.

#include <map>
#include <string>
#include <vector>

namespace flatctl {

struct ConfigMap {
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key, const std::string& value);
};

ConfigMap parseConfigText(const std::string& text);
ConfigMap loadConfigFile(const std::string& path);

// Applies "section.key=value" in place. ConfigError on malformed input.
void applyOverride(ConfigMap& config, const std::string& assignment);

// Overlays user values onto the defaults. A user key whose section.key does
// not exist in the defaults is a ConfigError naming the offender.
ConfigMap mergeConfig(const ConfigMap& defaults, const ConfigMap& user);

// Typed getters; all throw ConfigError naming section.key when the key is
// missing or fails to parse.
std::string configString(const ConfigMap& c, const std::string& section, const std::string& key);
double configDouble(const ConfigMap& c, const std::string& section, const std::string& key);
int configInt(const ConfigMap& c, const std::string& section, const std::string& key);
bool configBool(const ConfigMap& c, const std::string& section, const std::string& key);

// Whitespace- or comma-separated list of reals.
std::vector<double> configDoubleList(const ConfigMap& c, const std::string& section,
                                     const std::string& key);

// Flattens to "section.key" -> value, for echoing into reports.
std::map<std::string, std::string> flattenConfig(const ConfigMap& c);

} // namespace flatctl
