#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace srd {

/// One named arithmetic condition with the numbers that certify it.
struct Condition {
    std::string name;
    bool pass = false;
    std::string certificate;
};

struct ParamVerdict {
    std::string subject;  // e.g. "(v,k)=(126,15)"
    std::vector<Condition> conditions;

    bool all_pass() const {
        return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.pass; });
    }
    const Condition* find(const std::string& name) const {
        for (const auto& c : conditions)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Line-oriented rendering: "name: PASS|FAIL (certificate)".
inline std::string render(const ParamVerdict& v) {
    std::string out;
    for (const auto& c : v.conditions) {
        out += c.name + ": " + (c.pass ? "PASS" : "FAIL");
        if (!c.certificate.empty()) out += " (" + c.certificate + ")";
        out += '\n';
    }
    return out;
}

}  // namespace srd
