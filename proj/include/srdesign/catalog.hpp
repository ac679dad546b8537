#pragma once

// Fixed families and parameter tables used as ground truth by tests and the CLI.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "io.hpp"
#include "number_theory.hpp"

namespace srd {

namespace detail {

inline std::vector<Element> z_block(const AbelianGroup& g, std::initializer_list<std::int64_t> xs) {
    std::vector<Element> out;
    for (auto x : xs) out.push_back(g.element({x}));
    return out;
}

// {0} u 2A on Z_n.
inline std::vector<Element> doubled(const AbelianGroup& g, std::initializer_list<std::int64_t> a) {
    std::vector<Element> out{g.zero()};
    for (auto x : a) {
        out.push_back(g.element({x}));
        out.push_back(g.element({x}));
    }
    return out;
}

}  // namespace detail

inline FamilyFile catalog_example51() {
    const AbelianGroup g({5});
    FamilyFile f;
    f.role = "sdf";
    f.name = "example51";
    f.carrier = carrier_spec(g);
    f.k = 5;
    f.lambda = 4;
    f.blocks.push_back(detail::z_block(g, {0, 1, 1, 4, 4}));
    return f;
}

/// Six base blocks over Z_5 x GF(25), modulus x^2 + x + 2; triples (a, b, c) are (g, coordinates of f).
inline FamilyFile catalog_thm62_z5() {
    static const int triples[6][5][3] = {
        {{0, 0, 0}, {1, 0, 1}, {1, 0, 4}, {4, 1, 0}, {4, 4, 0}},
        {{0, 0, 0}, {1, 4, 3}, {1, 1, 2}, {4, 4, 2}, {4, 1, 3}},
        {{0, 0, 0}, {1, 3, 2}, {1, 2, 3}, {4, 4, 4}, {4, 1, 1}},
        {{0, 0, 0}, {1, 0, 2}, {1, 0, 3}, {4, 2, 0}, {4, 3, 0}},
        {{0, 0, 0}, {1, 3, 1}, {1, 2, 4}, {4, 3, 4}, {4, 2, 1}},
        {{0, 0, 0}, {1, 1, 4}, {1, 4, 1}, {4, 3, 3}, {4, 2, 2}},
    };
    const ProductCarrier c(AbelianGroup({5}), make_field(5, 2, parse_polynomial("2,1,1")));
    FamilyFile f;
    f.role = "rdf";
    f.name = "thm62-z5";
    f.carrier = carrier_spec(c);
    f.k = 5;
    f.lambda = 1;
    f.forbidden = ForbiddenSpec{true, {}};
    for (const auto& blk : triples) {
        std::vector<Element> b;
        for (const auto& t : blk)
            b.push_back(c.pair(Element{static_cast<std::uint32_t>(t[0])}, c.field().from_coeffs({t[2], t[1]})));
        f.blocks.push_back(std::move(b));
    }
    return f;
}

/// Eight base blocks over Z_7^3 relative to Z_7 x {0} x {0}.
inline FamilyFile catalog_thm62_z7() {
    static const int triples[8][7][3] = {
        {{0, 0, 0}, {1, 1, 0}, {1, 6, 0}, {2, 2, 1}, {2, 5, 6}, {4, 2, 0}, {4, 5, 0}},
        {{0, 0, 0}, {1, 2, 4}, {1, 5, 3}, {2, 0, 3}, {2, 0, 4}, {4, 4, 1}, {4, 3, 6}},
        {{0, 0, 0}, {1, 2, 2}, {1, 5, 5}, {2, 2, 6}, {2, 5, 1}, {4, 4, 4}, {4, 3, 3}},
        {{0, 0, 0}, {1, 3, 5}, {1, 4, 2}, {2, 1, 6}, {2, 6, 1}, {4, 6, 3}, {4, 1, 4}},
        {{0, 0, 0}, {1, 0, 1}, {1, 0, 6}, {2, 6, 2}, {2, 1, 5}, {4, 0, 2}, {4, 0, 5}},
        {{0, 0, 0}, {1, 3, 2}, {1, 4, 5}, {2, 4, 0}, {2, 3, 0}, {4, 6, 4}, {4, 1, 3}},
        {{0, 0, 0}, {1, 5, 2}, {1, 2, 5}, {2, 1, 2}, {2, 6, 5}, {4, 3, 4}, {4, 4, 3}},
        {{0, 0, 0}, {1, 2, 3}, {1, 5, 4}, {2, 1, 1}, {2, 6, 6}, {4, 4, 6}, {4, 3, 1}},
    };
    const AbelianGroup g({7, 7, 7});
    FamilyFile f;
    f.role = "rdf";
    f.name = "thm62-z7";
    f.carrier = carrier_spec(g);
    f.k = 7;
    f.lambda = 1;
    f.forbidden = ForbiddenSpec{false, {{true, {g.element({1, 0, 0})}}}};
    for (const auto& blk : triples) {
        std::vector<Element> b;
        for (const auto& t : blk) b.push_back(g.element({t[0], t[1], t[2]}));
        f.blocks.push_back(std::move(b));
    }
    return f;
}

/// Three multisets {0} u 2A on Z_15.
inline FamilyFile catalog_sigma_prime() {
    const AbelianGroup g({15});
    FamilyFile f;
    f.role = "sdf";
    f.name = "sigma-prime";
    f.carrier = carrier_spec(g);
    f.k = 15;
    f.lambda = 42;
    f.blocks.push_back(detail::doubled(g, {1, 2, 3, 7, 9, 11, 12}));
    f.blocks.push_back(detail::doubled(g, {1, 3, 4, 5, 7, 12, 13}));
    f.blocks.push_back(detail::doubled(g, {1, 5, 8, 10, 11, 12, 13}));
    return f;
}

struct ExclusionRow {
    std::vector<std::pair<std::uint64_t, unsigned>> v;  // prime factorization
    std::vector<std::pair<std::uint64_t, unsigned>> k;

    static BigInt value(const std::vector<std::pair<std::uint64_t, unsigned>>& fac) {
        BigInt x = 1;
        for (auto [p, e] : fac)
            for (unsigned i = 0; i < e; ++i) x *= p;
        return x;
    }
    BigInt v_value() const { return value(v); }
    BigInt k_value() const { return value(k); }
};

/// Pairs (v, k) that pass the congruence and radical conditions yet are ruled out by the mod 3 argument.
inline const std::vector<ExclusionRow>& exclusion_table() {
    static const std::vector<ExclusionRow> rows{
        {{{2, 6}, {3, 1}, {5, 10}}, {{2, 2}, {3, 1}, {5, 1}}},
        {{{2, 18}, {3, 1}, {11, 10}}, {{2, 2}, {3, 1}, {11, 1}}},
        {{{3, 1}, {5, 1}, {11, 7}}, {{3, 1}, {5, 1}, {11, 1}}},
        {{{2, 21}, {3, 1}, {7, 3}}, {{2, 3}, {3, 1}, {7, 1}}},
        {{{3, 1}, {5, 22}, {13, 4}}, {{3, 1}, {5, 1}, {13, 1}}},
        {{{2, 26}, {3, 1}, {5, 6}}, {{2, 4}, {3, 1}, {5, 1}}},
    };
    return rows;
}

inline std::string format_factorization(const std::vector<std::pair<std::uint64_t, unsigned>>& fac) {
    std::string out;
    for (auto [p, e] : fac) {
        if (!out.empty()) out += "*";
        out += std::to_string(p);
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

struct ExclusionReport {
    std::size_t row = 0;  // 1-based
    ParamVerdict admissibility;
    NonexistenceVerdict verdict;
    bool discrepancy = false;  // listed as excluded but inadmissible or the mod 3 argument does not apply
};

inline std::vector<ExclusionReport> exclusion_reports() {
    std::vector<ExclusionReport> out;
    const auto& rows = exclusion_table();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ExclusionReport r;
        r.row = i + 1;
        r.admissibility = super_regular_necessary(rows[i].v_value(), rows[i].k_value());
        r.verdict = theorem41_42(rows[i].v_value(), rows[i].k_value());
        r.discrepancy = !r.admissibility.all_pass() || r.verdict.outcome != NonexistenceOutcome::nonexistent;
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<std::string> catalog_names() { return {"example51", "thm62-z5", "thm62-z7", "sigma-prime", "exclusion-table"}; }

/// Family fixtures only; the exclusion table is not a family.
inline std::vector<FamilyFile> catalog_families() {
    return {catalog_example51(), catalog_thm62_z5(), catalog_thm62_z7(), catalog_sigma_prime()};
}

inline std::optional<FamilyFile> catalog_family(const std::string& name) {
    for (auto& f : catalog_families())
        if (f.name == name) return f;
    return std::nullopt;
}

/// JSON rendering of the exclusion table with exact values.
inline std::string render_exclusion_table() {
    nlohmann::json rows = nlohmann::json::array();
    const auto reports = exclusion_reports();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = exclusion_table()[i];
        rows.push_back({{"v", format_factorization(r.v)},
                        {"k", format_factorization(r.k)},
                        {"v_value", to_string(r.v_value())},
                        {"k_value", to_string(r.k_value())},
                        {"v_over_k_mod_3", reports[i].verdict.quotient_mod3},
                        {"admissible", reports[i].admissibility.all_pass()},
                        {"verdict", to_string(reports[i].verdict.outcome)},
                        {"discrepancy", reports[i].discrepancy}});
    }
    nlohmann::json doc = {{"name", "exclusion-table"}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

}  // namespace srd
