#pragma once

// Scenario files ("key = value" lines) and the built-in parameter presets.

#include "wolbachia/core_maps.hpp"
#include "wolbachia/periodic_analysis.hpp"
#include "wolbachia/rational.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wolbachia {

/// One generation as written in a scenario: exact strings, mu possibly "mu*" or "mu*-<decimal>".
struct ScenarioEntry {
    std::string mu;
    std::string sf;
    std::string sh;

    friend bool operator==(const ScenarioEntry&, const ScenarioEntry&) = default;
};

struct Scenario {
    std::string name;
    std::vector<ScenarioEntry> entries;

    int period() const { return static_cast<int>(entries.size()); }
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Resolves a mu token against mu* of (sf, sh), exactly.
inline BigRational resolve_mu(std::string_view token, const BigRational& sf, const BigRational& sh)
{
    std::string t;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.rfind("mu*", 0) == 0) {
        BigRational base = mu_star(sf, sh);
        std::string rest = t.substr(3);
        if (rest.empty()) return base;
        if (rest[0] != '-' && rest[0] != '+') throw ParseError("bad mu token '" + std::string(token) + "'");
        BigRational offset = parse_rational(rest.substr(1));
        BigRational r = rest[0] == '-' ? BigRational(base - offset) : BigRational(base + offset);
        r.canonicalize();
        return r;
    }
    return parse_rational(t);
}

inline PeriodicSystem to_system(const Scenario& sc)
{
    if (sc.entries.empty()) throw ParseError("scenario has no maps");
    std::vector<MapParams> maps;
    for (std::size_t i = 0; i < sc.entries.size(); ++i) {
        const auto& e = sc.entries[i];
        try {
            BigRational sf = parse_rational(e.sf);
            BigRational sh = parse_rational(e.sh);
            maps.emplace_back(resolve_mu(e.mu, sf, sh), sf, sh);
        } catch (const ParseError& err) {
            throw ParseError("map " + std::to_string(i + 1) + ": " + err.what());
        } catch (const ParameterError& err) {
            throw ParseError("map " + std::to_string(i + 1) + ": " + err.what());
        }
    }
    return PeriodicSystem(std::move(maps));
}

inline Scenario parse_scenario(std::istream& in, const std::string& source = "<scenario>")
{
    Scenario sc;
    std::optional<int> period;
    std::map<int, ScenarioEntry> entries;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) { throw ParseError(source + ":" + std::to_string(line_no) + ": " + msg); };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        auto strip = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (value.empty()) fail("empty value for '" + key + "'");
        if (key == "name") {
            sc.name = value;
            continue;
        }
        if (key == "T") {
            try {
                std::size_t used = 0;
                int t = std::stoi(value, &used);
                if (used != value.size() || t < 1) fail("T must be a positive integer");
                period = t;
            } catch (const std::logic_error&) {
                fail("T must be a positive integer");
            }
            continue;
        }
        auto dot = key.find('.');
        if (dot == std::string::npos) fail("unknown key '" + key + "'");
        std::string field = key.substr(0, dot);
        int index = 0;
        try {
            std::size_t used = 0;
            index = std::stoi(key.substr(dot + 1), &used);
            if (used != key.size() - dot - 1) fail("bad index in '" + key + "'");
        } catch (const std::logic_error&) {
            fail("bad index in '" + key + "'");
        }
        if (index < 1) fail("indices start at 1");
        if (field != "mu" && field != "sf" && field != "sh") fail("unknown field '" + field + "'");
        auto& e = entries[index];
        // Validate the value now so diagnostics carry the line number.
        try {
            if (field == "mu") {
                if (value.rfind("mu*", 0) != 0) parse_rational(value);
                else resolve_mu(value, BigRational(0), BigRational(1));
                e.mu = value;
            } else if (field == "sf") {
                parse_rational(value);
                e.sf = value;
            } else {
                parse_rational(value);
                e.sh = value;
            }
        } catch (const ParseError& err) {
            fail(err.what());
        }
    }
    if (!period) {
        line_no = 0;
        fail("missing T");
    }
    for (int i = 1; i <= *period; ++i) {
        auto it = entries.find(i);
        if (it == entries.end() || it->second.mu.empty() || it->second.sf.empty() || it->second.sh.empty()) {
            line_no = 0;
            fail("map " + std::to_string(i) + " needs mu." + std::to_string(i) + ", sf." + std::to_string(i) +
                 " and sh." + std::to_string(i));
        }
        sc.entries.push_back(it->second);
    }
    if (static_cast<int>(entries.size()) != *period) {
        line_no = 0;
        fail("entries beyond T = " + std::to_string(*period));
    }
    return sc;
}

inline Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>")
{
    std::istringstream in(text);
    return parse_scenario(in, source);
}

inline Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    return parse_scenario(in, path);
}

inline std::string serialize(const Scenario& sc)
{
    std::ostringstream out;
    if (!sc.name.empty()) out << "name = " << sc.name << "\n";
    out << "T = " << sc.period() << "\n";
    for (int i = 0; i < sc.period(); ++i) {
        const auto& e = sc.entries[static_cast<std::size_t>(i)];
        out << "sf." << i + 1 << " = " << e.sf << "\n";
        out << "sh." << i + 1 << " = " << e.sh << "\n";
        out << "mu." << i + 1 << " = " << e.mu << "\n";
    }
    return out.str();
}

/// Scenario with every value written as an exact fraction.
inline Scenario scenario_from_system(const PeriodicSystem& s, std::string name = {})
{
    Scenario sc;
    sc.name = std::move(name);
    for (const auto& p : s.maps()) sc.entries.push_back({to_string(p.mu()), to_string(p.sf()), to_string(p.sh())});
    return sc;
}

inline const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"example1", "example1b", "fig1", "ex33", "fig2a", "fig2b", "fig3", "postex"};
    return names;
}

inline Scenario preset(std::string_view name)
{
    if (name == "example1")
        return {"example1", {{"mu*", "1/20", "9/10"}, {"mu*", "1/20", "3/10"}}};
    if (name == "example1b")
        return {"example1b", {{"mu*-1e-9", "1/20", "9/10"}, {"mu*", "1/20", "3/10"}}};
    if (name == "fig1" || name == "ex33")
        return {std::string(name), {{"0", "0.2", "0.45"}, {"0", "0.4", "0.9"}}};
    if (name == "fig2a")
        return {"fig2a", {{"mu*", "0.1", "0.9"}, {"0", "0.3", "0.9"}}};
    if (name == "fig2b")
        return {"fig2b", {{"mu*", "0.1", "0.9"}, {"mu*", "0.3", "0.9"}}};
    if (name == "fig3")
        return {"fig3", {{"0.0975309", "0.1", "0.9"}, {"0.00863972", "0.8", "0.9"}}};
    if (name == "postex")
        return {"postex", {{"0", "0.5", "0.8"}, {"mu*", "0.2", "0.8"}}};
    throw ParseError("unknown preset '" + std::string(name) + "'");
}

}  // namespace wolbachia
