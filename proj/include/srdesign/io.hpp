#pragma once

// JSON family files: one schema for SDFs, relative DFs, difference matrices
// and designs. Elements are residue tuples, {"f": ascending coefficients} on
// a field carrier, or {"g": [...], "f": [...]} on a product carrier.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "designs.hpp"
#include "differences.hpp"
#include "families.hpp"
#include "gf.hpp"

namespace srd {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string pointer, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             (pointer.empty() ? "" : " (" + pointer + ")") + ": " + message),
          line_(line),
          column_(column),
          pointer_(std::move(pointer)) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::size_t line_, column_;
    std::string pointer_;
};

namespace detail {

// Finds where the value at a JSON pointer starts in already well-formed text.
class JsonLocator {
public:
    JsonLocator(const std::string& text, std::string target) : s_(text), target_(std::move(target)) {}

    std::optional<std::size_t> find() {
        value("");
        return found_;
    }

private:
    void ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
    }
    std::string string_token() {
        std::string out;
        ++i_;  // opening quote
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
                out += s_[i_ + 1];
                i_ += 2;
            } else {
                out += s_[i_++];
            }
        }
        ++i_;
        return out;
    }
    static std::string escape(const std::string& key) {
        std::string out;
        for (char c : key) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }
    void value(const std::string& path) {
        ws();
        if (found_ || i_ >= s_.size()) return;
        if (path == target_) {
            found_ = i_;
            return;
        }
        const char c = s_[i_];
        if (c == '{') {
            ++i_;
            while (!found_ && i_ < s_.size()) {
                ws();
                if (s_[i_] == '}') {
                    ++i_;
                    return;
                }
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                const std::string key = string_token();
                ws();
                ++i_;  // colon
                value(path + "/" + escape(key));
            }
        } else if (c == '[') {
            ++i_;
            std::size_t index = 0;
            while (!found_ && i_ < s_.size()) {
                ws();
                if (s_[i_] == ']') {
                    ++i_;
                    return;
                }
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                value(path + "/" + std::to_string(index++));
            }
        } else if (c == '"') {
            string_token();
        } else {
            while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != ']' && s_[i_] != '}' && s_[i_] != ' ' && s_[i_] != '\n' &&
                   s_[i_] != '\r' && s_[i_] != '\t')
                ++i_;
        }
    }

    const std::string& s_;
    std::string target_;
    std::size_t i_ = 0;
    std::optional<std::size_t> found_;
};

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace detail

struct FieldSpec {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::optional<std::string> modulus;  // ascending coefficients, "2,1,1"

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct CarrierSpec {
    std::vector<std::uint32_t> group;  // cyclic factors; may be empty when a field is given
    std::optional<FieldSpec> field;

    friend bool operator==(const CarrierSpec&, const CarrierSpec&) = default;
};

/// The carrier built from a spec: the whole group plus its factors.
struct Carrier {
    AbelianGroup group;
    std::optional<AbelianGroup> base;  // present when the spec lists cyclic factors
    std::optional<FiniteField> field;

    std::optional<ProductCarrier> product() const {
        if (base && field) return ProductCarrier(*base, *field);
        return std::nullopt;
    }
};

inline Carrier resolve(const CarrierSpec& spec) {
    Carrier c;
    if (!spec.group.empty()) c.base = AbelianGroup(spec.group);
    if (spec.field) {
        std::optional<Polynomial> mod;
        if (spec.field->modulus) mod = parse_polynomial(*spec.field->modulus);
        c.field = make_field(spec.field->p, spec.field->n, mod);
    }
    if (c.base && c.field) c.group = direct_product(*c.base, c.field->additive_group());
    else if (c.field) c.group = c.field->additive_group();
    else if (c.base) c.group = *c.base;
    else throw std::invalid_argument("carrier needs a group or a field");
    return c;
}

inline CarrierSpec carrier_spec(const AbelianGroup& g) { return {g.cyclic_orders(), std::nullopt}; }
inline FieldSpec field_spec(const FiniteField& f) { return {f.characteristic(), f.degree(), format_polynomial(f.modulus())}; }
inline CarrierSpec carrier_spec(const ProductCarrier& c) { return {c.base().cyclic_orders(), field_spec(c.field())}; }
inline CarrierSpec carrier_spec(const FiniteField& f) { return {{}, field_spec(f)}; }

struct ForbiddenMember {
    bool generators = false;  // elements generate the member rather than list it
    std::vector<Element> elements;

    friend bool operator==(const ForbiddenMember&, const ForbiddenMember&) = default;
};

struct ForbiddenSpec {
    bool base = false;  // G x {0} on a product carrier
    std::vector<ForbiddenMember> members;

    friend bool operator==(const ForbiddenSpec&, const ForbiddenSpec&) = default;
};

struct FamilyFile {
    std::string role;  // sdf | rdf | dm | design
    std::optional<std::string> name;
    CarrierSpec carrier;
    std::uint32_t k = 0;
    std::uint64_t lambda = 0;  // sdf, rdf, design
    std::uint64_t mu = 0;      // dm
    std::optional<ForbiddenSpec> forbidden;
    std::vector<std::vector<Element>> blocks;  // dm: columns
    std::vector<std::uint64_t> multiplicity;   // design only; empty means all 1

    friend bool operator==(const FamilyFile&, const FamilyFile&) = default;
};

namespace detail {

inline nlohmann::ordered_json element_to_json(const Carrier& c, Element e) {
    using json = nlohmann::ordered_json;
    if (c.field) {
        const std::uint64_t q = c.field->order();
        const FieldElement f{static_cast<std::uint32_t>(e.id % q)};
        json out = json::object();
        if (c.base) out["g"] = c.base->coords(Element{static_cast<std::uint32_t>(e.id / q)});
        out["f"] = c.field->coeffs(f);
        return out;
    }
    return json(c.group.coords(e));
}

struct Reader {
    const std::string& text;

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        detail::JsonLocator loc(text, pointer);
        const auto off = loc.find();
        const auto [line, col] = line_column(text, off.value_or(0));
        throw ParseError(line, col, pointer.empty() ? "/" : pointer, message);
    }

    std::uint64_t uint(const nlohmann::json& j, const std::string& ptr, std::uint64_t lo = 0,
                       std::uint64_t hi = UINT64_MAX) const {
        if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
            fail(ptr, "expected a non-negative integer");
        const auto v = j.get<std::uint64_t>();
        if (v < lo || v > hi) fail(ptr, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }

    std::vector<std::uint32_t> residues(const nlohmann::json& j, const std::string& ptr,
                                        const std::vector<std::uint32_t>& moduli, const char* what) const {
        if (!j.is_array()) fail(ptr, std::string("expected an array of ") + what);
        if (j.size() != moduli.size())
            fail(ptr, "expected " + std::to_string(moduli.size()) + " " + what + ", got " + std::to_string(j.size()));
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto p = ptr + "/" + std::to_string(i);
            if (!j[i].is_number_integer()) fail(p, "expected an integer");
            const auto x = j[i].get<std::int64_t>();
            if (x < 0 || static_cast<std::uint64_t>(x) >= moduli[i])
                fail(p, "residue " + std::to_string(x) + " out of range [0, " + std::to_string(moduli[i]) + ")");
            out.push_back(static_cast<std::uint32_t>(x));
        }
        return out;
    }

    Element element(const Carrier& c, const nlohmann::json& j, const std::string& ptr) const {
        if (c.field) {
            if (!j.is_object()) fail(ptr, c.base ? "expected {\"g\": [...], \"f\": [...]}" : "expected {\"f\": [...]}");
            for (auto it = j.begin(); it != j.end(); ++it)
                if (it.key() != "f" && !(c.base && it.key() == "g")) fail(ptr + "/" + it.key(), "unknown element key");
            std::uint64_t gid = 0;
            if (c.base) {
                if (!j.contains("g")) fail(ptr, "missing \"g\"");
                const auto g = residues(j["g"], ptr + "/g", c.base->cyclic_orders(), "group residues");
                std::vector<std::int64_t> coords(g.begin(), g.end());
                gid = c.base->element(coords).id;
            }
            if (!j.contains("f")) fail(ptr, "missing \"f\"");
            const auto f = residues(j["f"], ptr + "/f",
                                    std::vector<std::uint32_t>(c.field->degree(), c.field->characteristic()),
                                    "field coefficients");
            std::vector<std::int64_t> coeffs(f.begin(), f.end());
            return Element{static_cast<std::uint32_t>(gid * c.field->order() + c.field->from_coeffs(coeffs).id)};
        }
        if (j.is_number_integer() && c.group.rank() == 1) {
            const auto x = j.get<std::int64_t>();
            if (x < 0 || static_cast<std::uint64_t>(x) >= c.group.order())
                fail(ptr, "residue " + std::to_string(x) + " out of range [0, " + std::to_string(c.group.order()) + ")");
            return Element{static_cast<std::uint32_t>(x)};
        }
        const auto r = residues(j, ptr, c.group.cyclic_orders(), "group residues");
        std::vector<std::int64_t> coords(r.begin(), r.end());
        return c.group.element(coords);
    }
};

}  // namespace detail

/// Parses and validates a family file; errors carry line and column.
inline FamilyFile parse_family(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        if (auto p = msg.find(": ", msg.find("parse error")); p != std::string::npos) msg = msg.substr(p + 2);
        throw ParseError(line, col, "", msg);
    }
    detail::Reader rd{text};
    if (!doc.is_object()) rd.fail("", "top level must be an object");
    static const std::vector<std::string> known{"role", "name", "carrier", "k", "lambda", "mu", "forbidden", "blocks",
                                                "columns", "multiplicity"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) rd.fail("/" + it.key(), "unknown key");

    FamilyFile f;
    if (!doc.contains("role") || !doc["role"].is_string()) rd.fail("", "missing string \"role\"");
    f.role = doc["role"].get<std::string>();
    if (f.role != "sdf" && f.role != "rdf" && f.role != "dm" && f.role != "design")
        rd.fail("/role", "role must be sdf, rdf, dm or design");
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) rd.fail("/name", "expected a string");
        f.name = doc["name"].get<std::string>();
    }

    if (!doc.contains("carrier") || !doc["carrier"].is_object()) rd.fail("", "missing object \"carrier\"");
    const auto& cj = doc["carrier"];
    for (auto it = cj.begin(); it != cj.end(); ++it)
        if (it.key() != "group" && it.key() != "field") rd.fail("/carrier/" + it.key(), "unknown key");
    if (cj.contains("group")) {
        if (!cj["group"].is_array()) rd.fail("/carrier/group", "expected an array of cyclic orders");
        for (std::size_t i = 0; i < cj["group"].size(); ++i)
            f.carrier.group.push_back(static_cast<std::uint32_t>(
                rd.uint(cj["group"][i], "/carrier/group/" + std::to_string(i), 1, 0xFFFFFFFFULL)));
    }
    if (cj.contains("field")) {
        const auto& fj = cj["field"];
        if (!fj.is_object()) rd.fail("/carrier/field", "expected {\"p\", \"n\", \"modulus\"}");
        FieldSpec fs;
        if (!fj.contains("p")) rd.fail("/carrier/field", "missing \"p\"");
        fs.p = static_cast<std::uint32_t>(rd.uint(fj["p"], "/carrier/field/p", 2, 1ULL << 22));
        fs.n = fj.contains("n") ? static_cast<std::uint32_t>(rd.uint(fj["n"], "/carrier/field/n", 1, 64)) : 1;
        if (fj.contains("modulus")) {
            if (!fj["modulus"].is_string()) rd.fail("/carrier/field/modulus", "expected a string like \"2,1,1\"");
            fs.modulus = fj["modulus"].get<std::string>();
        }
        f.carrier.field = fs;
    }
    Carrier carrier;
    try {
        carrier = resolve(f.carrier);
    } catch (const std::exception& e) {
        rd.fail("/carrier", e.what());
    }

    if (!doc.contains("k")) rd.fail("", "missing \"k\"");
    f.k = static_cast<std::uint32_t>(rd.uint(doc["k"], "/k", 1, 1u << 20));
    if (f.role == "dm") {
        if (!doc.contains("mu")) rd.fail("", "missing \"mu\"");
        f.mu = rd.uint(doc["mu"], "/mu");
    } else {
        if (!doc.contains("lambda")) rd.fail("", "missing \"lambda\"");
        f.lambda = rd.uint(doc["lambda"], "/lambda");
    }

    if (doc.contains("forbidden")) {
        if (f.role != "rdf") rd.fail("/forbidden", "only rdf files have a forbidden part");
        const auto& fb = doc["forbidden"];
        ForbiddenSpec spec;
        if (fb.is_string()) {
            if (fb.get<std::string>() != "base") rd.fail("/forbidden", "the only named forbidden set is \"base\"");
            if (!carrier.product()) rd.fail("/forbidden", "\"base\" needs a carrier with both group and field");
            spec.base = true;
        } else if (fb.is_array()) {
            for (std::size_t i = 0; i < fb.size(); ++i) {
                const auto p = "/forbidden/" + std::to_string(i);
                const auto& m = fb[i];
                if (!m.is_object() || m.size() != 1 || (!m.contains("elements") && !m.contains("generators")))
                    rd.fail(p, "expected {\"elements\": [...]} or {\"generators\": [...]}");
                ForbiddenMember member;
                member.generators = m.contains("generators");
                const std::string key = member.generators ? "generators" : "elements";
                if (!m[key].is_array()) rd.fail(p + "/" + key, "expected an array of elements");
                for (std::size_t j = 0; j < m[key].size(); ++j)
                    member.elements.push_back(rd.element(carrier, m[key][j], p + "/" + key + "/" + std::to_string(j)));
                spec.members.push_back(std::move(member));
            }
        } else {
            rd.fail("/forbidden", "expected \"base\" or a list of members");
        }
        f.forbidden = std::move(spec);
    }

    const std::string body = f.role == "dm" ? "columns" : "blocks";
    const std::string other = f.role == "dm" ? "blocks" : "columns";
    if (doc.contains(other)) rd.fail("/" + other, "role " + f.role + " uses \"" + body + "\"");
    if (!doc.contains(body) || !doc[body].is_array()) rd.fail("", "missing array \"" + body + "\"");
    const auto& bj = doc[body];
    for (std::size_t i = 0; i < bj.size(); ++i) {
        const auto p = "/" + body + "/" + std::to_string(i);
        if (!bj[i].is_array()) rd.fail(p, "expected an array of elements");
        if (bj[i].size() != f.k)
            rd.fail(p, "has " + std::to_string(bj[i].size()) + " elements, expected k = " + std::to_string(f.k));
        std::vector<Element> block;
        for (std::size_t j = 0; j < bj[i].size(); ++j) block.push_back(rd.element(carrier, bj[i][j], p + "/" + std::to_string(j)));
        if (f.role == "rdf" || f.role == "design") {
            auto sorted = block;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) rd.fail(p, "block repeats an element");
        }
        f.blocks.push_back(std::move(block));
    }
    if (doc.contains("multiplicity")) {
        if (f.role != "design") rd.fail("/multiplicity", "only design files have multiplicities");
        const auto& mj = doc["multiplicity"];
        if (!mj.is_array() || mj.size() != f.blocks.size())
            rd.fail("/multiplicity", "expected one positive integer per block");
        for (std::size_t i = 0; i < mj.size(); ++i) f.multiplicity.push_back(rd.uint(mj[i], "/multiplicity/" + std::to_string(i), 1));
    }
    return f;
}

/// Deterministic rendering: header keys first, one block per line.
inline std::string render_family(const FamilyFile& f) {
    using nlohmann::json;
    const Carrier c = resolve(f.carrier);
    auto el = [&](Element e) { return detail::element_to_json(c, e).dump(); };
    std::ostringstream out;
    out << "{\n  \"role\": " << json(f.role).dump() << ",\n";
    if (f.name) out << "  \"name\": " << json(*f.name).dump() << ",\n";
    nlohmann::ordered_json cj = nlohmann::ordered_json::object();
    if (!f.carrier.group.empty() || !f.carrier.field) cj["group"] = f.carrier.group;
    if (f.carrier.field) {
        nlohmann::ordered_json fj = {{"p", f.carrier.field->p}, {"n", f.carrier.field->n}};
        if (f.carrier.field->modulus) fj["modulus"] = *f.carrier.field->modulus;
        cj["field"] = fj;
    }
    out << "  \"carrier\": " << cj.dump() << ",\n";
    out << "  \"k\": " << f.k << ",\n";
    if (f.role == "dm")
        out << "  \"mu\": " << f.mu << ",\n";
    else
        out << "  \"lambda\": " << f.lambda << ",\n";
    if (f.forbidden) {
        if (f.forbidden->base) {
            out << "  \"forbidden\": \"base\",\n";
        } else {
            out << "  \"forbidden\": [";
            for (std::size_t i = 0; i < f.forbidden->members.size(); ++i) {
                const auto& m = f.forbidden->members[i];
                out << (i ? ",\n    " : "\n    ") << "{\"" << (m.generators ? "generators" : "elements") << "\": [";
                for (std::size_t j = 0; j < m.elements.size(); ++j) out << (j ? ", " : "") << el(m.elements[j]);
                out << "]}";
            }
            out << "\n  ],\n";
        }
    }
    const char* body = f.role == "dm" ? "columns" : "blocks";
    out << "  \"" << body << "\": [";
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        out << (i ? ",\n    [" : "\n    [");
        for (std::size_t j = 0; j < f.blocks[i].size(); ++j) out << (j ? ", " : "") << el(f.blocks[i][j]);
        out << "]";
    }
    out << (f.blocks.empty() ? "]" : "\n  ]");
    if (!f.multiplicity.empty()) out << ",\n  \"multiplicity\": " << json(f.multiplicity).dump();
    out << "\n}\n";
    return out.str();
}

// Conversions between files and library objects.

inline StrongDifferenceFamily to_sdf(const FamilyFile& f) {
    if (f.role != "sdf") throw std::invalid_argument("expected an sdf file, got role " + f.role);
    const Carrier c = resolve(f.carrier);
    StrongDifferenceFamily sdf;
    sdf.group = c.group;
    sdf.k = f.k;
    sdf.lambda = f.lambda;
    for (const auto& b : f.blocks) sdf.blocks.emplace_back(b);
    sdf.additive = std::all_of(sdf.blocks.begin(), sdf.blocks.end(),
                               [&](const GMultiset& m) { return is_zero_sum(sdf.group, m.elements()); });
    return sdf;
}

inline PartialSpread to_spread(const FamilyFile& f, const Carrier& c) {
    if (!f.forbidden) return PartialSpread(c.group, {});
    if (f.forbidden->base) return PartialSpread(c.group, {c.product()->base_subgroup()});
    std::vector<Subgroup> members;
    for (const auto& m : f.forbidden->members)
        members.push_back(m.generators ? generated_subgroup(c.group, m.elements) : make_subgroup(c.group, m.elements));
    return PartialSpread(c.group, std::move(members));
}

struct LoadedRdf {
    Carrier carrier;
    RelativeDifferenceFamily rdf;
};

inline LoadedRdf to_rdf(const FamilyFile& f) {
    if (f.role != "rdf") throw std::invalid_argument("expected an rdf file, got role " + f.role);
    LoadedRdf out{resolve(f.carrier), {}};
    out.rdf.group = out.carrier.group;
    out.rdf.forbidden = to_spread(f, out.carrier);
    out.rdf.k = f.k;
    out.rdf.lambda = f.lambda;
    for (const auto& b : f.blocks) out.rdf.blocks.emplace_back(b);
    out.rdf.additive = std::all_of(f.blocks.begin(), f.blocks.end(),
                                   [&](const std::vector<Element>& b) { return is_zero_sum(out.rdf.group, b); });
    return out;
}

inline DifferenceMatrix to_dm(const FamilyFile& f) {
    if (f.role != "dm") throw std::invalid_argument("expected a dm file, got role " + f.role);
    DifferenceMatrix dm;
    dm.group = resolve(f.carrier).group;
    dm.k = f.k;
    dm.mu = f.mu;
    dm.columns = f.blocks;
    dm.additive = std::all_of(dm.columns.begin(), dm.columns.end(),
                              [&](const std::vector<Element>& col) { return is_zero_sum(dm.group, col); });
    return dm;
}

inline Design to_design(const FamilyFile& f) {
    if (f.role != "design") throw std::invalid_argument("expected a design file, got role " + f.role);
    const Carrier c = resolve(f.carrier);
    Design d(c.group.order(), f.k, f.lambda, c.group);
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const std::uint64_t copies = f.multiplicity.empty() ? 1 : f.multiplicity[i];
        for (std::uint64_t r = 0; r < copies; ++r) d.add_block(std::span<const Element>(f.blocks[i]));
    }
    return d;
}

inline FamilyFile sdf_file(const StrongDifferenceFamily& sdf, CarrierSpec carrier, std::optional<std::string> name = {}) {
    FamilyFile f;
    f.role = "sdf";
    f.name = std::move(name);
    f.carrier = std::move(carrier);
    f.k = sdf.k;
    f.lambda = sdf.lambda;
    for (const auto& b : sdf.blocks) f.blocks.emplace_back(b.begin(), b.end());
    return f;
}

inline FamilyFile rdf_file(const RelativeDifferenceFamily& rdf, CarrierSpec carrier, ForbiddenSpec forbidden,
                           std::optional<std::string> name = {}) {
    FamilyFile f;
    f.role = "rdf";
    f.name = std::move(name);
    f.carrier = std::move(carrier);
    f.k = rdf.k;
    f.lambda = rdf.lambda;
    f.forbidden = std::move(forbidden);
    for (const auto& b : rdf.blocks) f.blocks.emplace_back(b.begin(), b.end());
    return f;
}

/// Forbidden spec listing each spread member's elements.
inline ForbiddenSpec forbidden_spec(const PartialSpread& spread) {
    ForbiddenSpec s;
    for (const auto& m : spread.members()) s.members.push_back({false, m.elements});
    return s;
}

inline FamilyFile dm_file(const DifferenceMatrix& dm, CarrierSpec carrier, std::optional<std::string> name = {}) {
    FamilyFile f;
    f.role = "dm";
    f.name = std::move(name);
    f.carrier = std::move(carrier);
    f.k = dm.k;
    f.mu = dm.mu;
    f.blocks = dm.columns;
    return f;
}

/// Repeated blocks are folded into the multiplicity column.
inline FamilyFile design_file(const Design& d, CarrierSpec carrier, std::optional<std::string> name = {}) {
    FamilyFile f;
    f.role = "design";
    f.name = std::move(name);
    f.carrier = std::move(carrier);
    f.k = d.k();
    f.lambda = d.lambda();
    std::vector<std::vector<Element>> blocks;
    for (std::size_t i = 0; i < d.block_count(); ++i) {
        std::vector<Element> b;
        for (auto x : d.block(i)) b.push_back(Element{x});
        blocks.push_back(std::move(b));
    }
    std::vector<std::uint64_t> mult;
    bool repeated = false;
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return blocks[a] < blocks[b]; });
    std::vector<std::uint64_t> count(blocks.size(), 0);
    std::vector<char> first(blocks.size(), 0);
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && blocks[order[j]] == blocks[order[i]]) ++j;
        first[order[i]] = 1;
        count[order[i]] = j - i;
        repeated = repeated || j - i > 1;
        i = j;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (repeated && !first[i]) continue;
        f.blocks.push_back(blocks[i]);
        mult.push_back(count[i]);
    }
    if (repeated) f.multiplicity = std::move(mult);
    return f;
}

}  // namespace srd
