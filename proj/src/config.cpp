#include "flatctl/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "flatctl/errors.hpp"

namespace flatctl {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string keyPath(const std::string& section, const std::string& key) {
    return section + "." + key;
}

const std::string& rawValue(const ConfigMap& c, const std::string& section,
                            const std::string& key) {
    auto sit = c.sections.find(section);
    if (sit == c.sections.end()) {
        throw ConfigError("missing config section [" + section + "]");
    }
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) {
        throw ConfigError("missing config key " + keyPath(section, key));
    }
    return kit->second;
}

} // namespace

bool ConfigMap::has(const std::string& section, const std::string& key) const {
    auto sit = sections.find(section);
    return sit != sections.end() && sit->second.count(key) > 0;
}

void ConfigMap::set(const std::string& section, const std::string& key,
                    const std::string& value) {
    sections[section][key] = value;
}

ConfigMap parseConfigText(const std::string& text) {
    ConfigMap config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(lineNo) +
                                  ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError("config line " + std::to_string(lineNo) +
                                  ": empty section name");
            }
            config.sections[section]; // a section may legitimately stay empty
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineNo) +
                              ": expected key = value");
        }
        if (section.empty()) {
            throw ConfigError("config line " + std::to_string(lineNo) +
                              ": key before any [section]");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineNo) + ": empty key");
        }
        config.sections[section][key] = value;
    }
    return config;
}

ConfigMap loadConfigFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseConfigText(buf.str());
}

void applyOverride(ConfigMap& config, const std::string& assignment) {
    std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override must look like section.key=value: " + assignment);
    }
    std::string path = trim(assignment.substr(0, eq));
    std::string value = trim(assignment.substr(eq + 1));
    std::size_t dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
        throw ConfigError("override key must be section.key: " + path);
    }
    config.set(path.substr(0, dot), path.substr(dot + 1), value);
}

ConfigMap mergeConfig(const ConfigMap& defaults, const ConfigMap& user) {
    ConfigMap merged = defaults;
    for (const auto& [section, keys] : user.sections) {
        auto sit = defaults.sections.find(section);
        if (sit == defaults.sections.end()) {
            throw ConfigError("unknown config section [" + section + "]");
        }
        for (const auto& [key, value] : keys) {
            if (sit->second.count(key) == 0) {
                throw ConfigError("unknown config key " + keyPath(section, key));
            }
            merged.sections[section][key] = value;
        }
    }
    return merged;
}

std::string configString(const ConfigMap& c, const std::string& section,
                         const std::string& key) {
    return rawValue(c, section, key);
}

double configDouble(const ConfigMap& c, const std::string& section, const std::string& key) {
    const std::string& raw = rawValue(c, section, key);
    char* end = nullptr;
    double value = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0') {
        throw ConfigError(keyPath(section, key) + " is not a real number: " + raw);
    }
    return value;
}

int configInt(const ConfigMap& c, const std::string& section, const std::string& key) {
    const std::string& raw = rawValue(c, section, key);
    char* end = nullptr;
    long value = std::strtol(raw.c_str(), &end, 10);
    if (end == raw.c_str() || *end != '\0') {
        throw ConfigError(keyPath(section, key) + " is not an integer: " + raw);
    }
    return static_cast<int>(value);
}

bool configBool(const ConfigMap& c, const std::string& section, const std::string& key) {
    const std::string& raw = rawValue(c, section, key);
    if (raw == "true" || raw == "yes" || raw == "1") return true;
    if (raw == "false" || raw == "no" || raw == "0") return false;
    throw ConfigError(keyPath(section, key) + " is not a boolean: " + raw);
}

std::vector<double> configDoubleList(const ConfigMap& c, const std::string& section,
                                     const std::string& key) {
    std::string raw = rawValue(c, section, key);
    for (char& ch : raw) {
        if (ch == ',') ch = ' ';
    }
    std::istringstream in(raw);
    std::vector<double> values;
    std::string token;
    while (in >> token) {
        char* end = nullptr;
        double value = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0') {
            throw ConfigError(keyPath(section, key) + " has a bad list entry: " + token);
        }
        values.push_back(value);
    }
    if (values.empty()) {
        throw ConfigError(keyPath(section, key) + " is an empty list");
    }
    return values;
}

std::map<std::string, std::string> flattenConfig(const ConfigMap& c) {
    std::map<std::string, std::string> flat;
    for (const auto& [section, keys] : c.sections) {
        for (const auto& [key, value] : keys) {
            flat[keyPath(section, key)] = value;
        }
    }
    return flat;
}

} // namespace flatctl
