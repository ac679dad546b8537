#pragma once

// Strong difference families, relative difference families, partial spreads
// and difference matrices: verifiers and the explicit constructions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "differences.hpp"
#include "gf.hpp"
#include "number_theory.hpp"
#include "verdict.hpp"

namespace srd {

struct StrongDifferenceFamily {
    AbelianGroup group;
    std::uint32_t k = 0;
    std::uint64_t lambda = 0;
    std::vector<GMultiset> blocks;
    bool additive = false;

    std::size_t size() const noexcept { return blocks.size(); }
};

/// Subgroups of a common parent with pairwise trivial intersections.
class PartialSpread {
public:
    PartialSpread() = default;
    PartialSpread(const AbelianGroup& parent, std::vector<Subgroup> members) : members_(std::move(members)) {
        for (const auto& m : members_) {
            if (!(m.parent == parent)) throw std::invalid_argument("partial spread member has a different parent group");
            (void)make_subgroup(parent, m.elements);  // throws if not closed
        }
        std::vector<char> used(parent.order(), 0);
        for (const auto& m : members_)
            for (auto e : m.elements) {
                if (e == parent.zero()) continue;
                if (used[e.id]) throw std::invalid_argument("partial spread members intersect non-trivially");
                used[e.id] = 1;
            }
    }

    const std::vector<Subgroup>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }

    /// The union of all members, sorted.
    std::vector<Element> covered() const {
        std::vector<Element> out;
        for (const auto& m : members_) out.insert(out.end(), m.elements.begin(), m.elements.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const PartialSpread&, const PartialSpread&) = default;

private:
    std::vector<Subgroup> members_;
};

struct RelativeDifferenceFamily {
    AbelianGroup group;
    PartialSpread forbidden;
    std::uint32_t k = 0;
    std::uint64_t lambda = 1;
    std::vector<ElementSet> blocks;
    bool additive = false;

    std::size_t size() const noexcept { return blocks.size(); }
};

struct DifferenceMatrix {
    AbelianGroup group;
    std::uint32_t k = 0;
    std::vector<std::vector<Element>> columns;  // each of length k
    std::uint64_t mu = 0;
    bool additive = false;
};

struct SdfVerdict {
    bool is_sdf = false;
    bool is_additive = false;
    CoverageVerdict coverage;
    std::string reason;
};

inline SdfVerdict verify_sdf(const std::vector<GMultiset>& blocks, const AbelianGroup& group, std::uint32_t k,
                             std::uint64_t lambda) {
    SdfVerdict v;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].size() != k) {
            v.reason = "block " + std::to_string(i) + " has size " + std::to_string(blocks[i].size()) + ", expected " +
                       std::to_string(k);
            return v;
        }
        for (auto e : blocks[i]) group.check(e);
    }
    v.coverage = coverage(delta_family(group, blocks), group);
    v.is_additive = std::all_of(blocks.begin(), blocks.end(),
                                [&](const GMultiset& b) { return is_zero_sum(group, b.elements()); });
    if (!v.coverage.constant_lambda) {
        v.reason = "coverage is not constant";
    } else if (*v.coverage.constant_lambda != lambda) {
        v.reason = "coverage is constant " + std::to_string(*v.coverage.constant_lambda) + ", expected " +
                   std::to_string(lambda);
    } else {
        v.is_sdf = true;
    }
    return v;
}

inline SdfVerdict verify_sdf(const StrongDifferenceFamily& sdf) {
    return verify_sdf(sdf.blocks, sdf.group, sdf.k, sdf.lambda);
}

struct RdfVerdict {
    bool is_rdf = false;
    bool is_additive = false;
    CoverageVerdict coverage;
    std::string reason;
};

/// Checks that the blocks' differences cover everything outside the spread
/// exactly lambda times and nothing inside it. Additivity requires zero-sum
/// blocks and zero-sum (non-binary) spread members.
inline RdfVerdict verify_rdf(const std::vector<ElementSet>& blocks, const AbelianGroup& group,
                             const PartialSpread& forbidden, std::uint32_t k, std::uint64_t lambda) {
    RdfVerdict v;
    for (const auto& m : forbidden.members())
        if (!(m.parent == group)) throw std::invalid_argument("verify_rdf: forbidden subgroup lives in another group");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].size() != k) {
            v.reason = "block " + std::to_string(i) + " has size " + std::to_string(blocks[i].size()) + ", expected " +
                       std::to_string(k);
            return v;
        }
        for (auto e : blocks[i]) group.check(e);
    }
    const auto covered = forbidden.covered();
    v.coverage = coverage(delta_family(group, blocks), group, covered);
    bool additive = std::all_of(blocks.begin(), blocks.end(),
                                [&](const ElementSet& b) { return is_zero_sum(group, b.elements()); });
    for (const auto& m : forbidden.members()) additive = additive && is_zero_sum(group, m.elements);
    v.is_additive = additive;
    if (!v.coverage.excluded_uncovered) {
        v.reason = "a forbidden element occurs as a difference";
        return v;
    }
    if (!v.coverage.constant_lambda) {
        v.reason = "coverage outside the forbidden union is not constant";
        return v;
    }
    if (!v.coverage.vacuous && *v.coverage.constant_lambda != lambda) {
        v.reason = "coverage is constant " + std::to_string(*v.coverage.constant_lambda) + ", expected " +
                   std::to_string(lambda);
        return v;
    }
    const std::uint64_t outside = group.order() - covered.size();
    if (k >= 2 && lambda * outside != static_cast<std::uint64_t>(blocks.size()) * k * (k - 1)) {
        v.reason = "base block count does not match lambda(v - |union|)/(k(k-1))";
        return v;
    }
    v.is_rdf = true;
    return v;
}

inline RdfVerdict verify_rdf(const RelativeDifferenceFamily& rdf) {
    return verify_rdf(rdf.blocks, rdf.group, rdf.forbidden, rdf.k, rdf.lambda);
}

/// Arithmetic conditions for a DF relative to a partial spread of type {k^s}.
inline ParamVerdict spread_conditions(const AbelianGroup& group, std::uint64_t k, std::uint64_t s) {
    ParamVerdict out;
    const std::uint64_t v = group.order();
    out.subject = "(v,k,s)=(" + std::to_string(v) + "," + std::to_string(k) + "," + std::to_string(s) + ")";
    const bool divides = k > 0 && v % k == 0;
    out.conditions.push_back({"k | v", divides, std::to_string(v) + " mod " + std::to_string(k) + " = " +
                                                    std::to_string(k ? v % k : 0)});
    if (divides && k >= 2) {
        const std::uint64_t quotient = v / k;
        const std::uint64_t m = k - 1;
        const bool ok = m == 1 || quotient % m == 1 % m;
        out.conditions.push_back({"v/k = 1 (mod k-1)", ok,
                                  std::to_string(quotient) + " mod " + std::to_string(m) + " = " +
                                      std::to_string(quotient % m)});
    } else {
        out.conditions.push_back({"v/k = 1 (mod k-1)", false, "k does not divide v"});
    }
    out.conditions.push_back({"s = 1 (mod k)", k > 0 && s % k == 1 % k,
                              std::to_string(s) + " mod " + std::to_string(k) + " = " + std::to_string(k ? s % k : 0)});
    // Members have pairwise trivial intersections, so each absorbs at most
    // min(2^a, |I(G)|) - 1 involutions, where 2^a is the 2-part of k.
    const std::uint64_t inv = involution_count(group);
    std::uint64_t two_part = 1;
    while (k > 0 && k % (two_part * 2) == 0) two_part *= 2;
    const std::uint64_t per_member = std::min(two_part, inv) - 1;
    const bool feasible = inv == 1 || s * per_member >= inv - 1;
    out.conditions.push_back({"I(G) inside spread union", feasible,
                              "|I(G)|-1 = " + std::to_string(inv - 1) + ", capacity s*(min(2^a,|I(G)|)-1) = " +
                                  std::to_string(s * per_member)});
    return out;
}

/// {0} plus two copies of the nonzero squares of F_q, over the additive group of F_q.
inline StrongDifferenceFamily paley_sdf(const FiniteField& field) {
    if (field.characteristic() == 2) throw std::invalid_argument("paley_sdf: q must be odd");
    std::vector<Element> elems{Element{0}};
    for (auto s : nonzero_squares(field)) {
        elems.push_back(FiniteField::as_group_element(s));
        elems.push_back(FiniteField::as_group_element(s));
    }
    StrongDifferenceFamily sdf;
    sdf.group = field.additive_group();
    sdf.k = field.order();
    sdf.lambda = field.order() - 1;
    sdf.blocks.emplace_back(std::move(elems));
    sdf.additive = is_zero_sum(sdf.group, sdf.blocks.front().elements());
    return sdf;
}

inline StrongDifferenceFamily paley_sdf(std::uint64_t q) {
    const auto pp = as_prime_power(q);
    if (!pp) throw std::invalid_argument("paley_sdf: " + std::to_string(q) + " is not a prime power");
    if (pp->prime == 2) throw std::invalid_argument("paley_sdf: q must be odd");
    return paley_sdf(make_field(static_cast<std::int64_t>(pp->prime), pp->exponent));
}

struct DmVerdict {
    bool is_dm = false;
    bool is_additive = false;
    std::string reason;
};

inline DmVerdict verify_dm(const std::vector<std::vector<Element>>& columns, const AbelianGroup& group,
                           std::uint32_t k, std::uint64_t mu) {
    DmVerdict v;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != k)
            throw std::invalid_argument("verify_dm: ragged matrix, column " + std::to_string(c) + " has " +
                                        std::to_string(columns[c].size()) + " rows");
        for (auto e : columns[c]) group.check(e);
    }
    v.is_additive = std::all_of(columns.begin(), columns.end(),
                                [&](const std::vector<Element>& col) { return is_zero_sum(group, col); });
    if (columns.size() != mu * group.order()) {
        v.reason = "column count " + std::to_string(columns.size()) + " != mu*|H| = " + std::to_string(mu * group.order());
        return v;
    }
    std::vector<std::uint64_t> counts(group.order());
    for (std::uint32_t i = 0; i < k; ++i) {
        for (std::uint32_t j = i + 1; j < k; ++j) {
            std::fill(counts.begin(), counts.end(), 0);
            for (const auto& col : columns) ++counts[group.sub(col[i], col[j]).id];
            for (std::uint64_t h = 0; h < group.order(); ++h) {
                if (counts[h] != mu) {
                    v.reason = "rows " + std::to_string(i) + "," + std::to_string(j) + " cover element " +
                               std::to_string(h) + " " + std::to_string(counts[h]) + " times";
                    return v;
                }
            }
        }
    }
    v.is_dm = true;
    return v;
}

inline DmVerdict verify_dm(const DifferenceMatrix& dm) { return verify_dm(dm.columns, dm.group, dm.k, dm.mu); }

class CapExceeded : public std::length_error {
public:
    CapExceeded(const std::string& what, std::uint64_t required) : std::length_error(what), required_(required) {}
    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

/// All zero-sum k-tuples over H as columns, in lexicographic order.
inline DifferenceMatrix zero_sum_dm(const AbelianGroup& group, std::uint32_t k, std::uint64_t cap) {
    if (k < 2) throw std::invalid_argument("zero_sum_dm: k must be >= 2");
    const std::uint64_t h = group.order();
    unsigned __int128 needed = 1;
    for (std::uint32_t i = 0; i + 1 < k; ++i) {
        needed *= h;
        if (needed > cap) break;
    }
    if (needed > cap) {
        // Report the exact requirement when it fits in 64 bits.
        unsigned __int128 full = 1;
        for (std::uint32_t i = 0; i + 1 < k && full <= UINT64_MAX; ++i) full *= h;
        const std::uint64_t req = full > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(full);
        throw CapExceeded("zero_sum_dm: " + std::to_string(h) + "^" + std::to_string(k - 1) +
                              " columns exceed cap " + std::to_string(cap) + "; required cap " + std::to_string(req),
                          req);
    }
    DifferenceMatrix dm;
    dm.group = group;
    dm.k = k;
    dm.mu = 1;
    for (std::uint32_t i = 0; i + 2 < k; ++i) dm.mu *= h;
    dm.additive = true;
    const auto count = static_cast<std::uint64_t>(needed);
    dm.columns.reserve(count);
    std::vector<Element> prefix(k - 1, group.zero());
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t x = idx;
        for (std::uint32_t i = k - 1; i-- > 0;) {
            prefix[i] = Element{static_cast<std::uint32_t>(x % h)};
            x /= h;
        }
        std::vector<Element> col(prefix);
        col.push_back(group.neg(sum_of(group, prefix)));
        dm.columns.push_back(std::move(col));
    }
    return dm;
}

/// Blocks B o M^c = {(b_1, m_1c), ..., (b_k, m_kc)} over G x H.
inline StrongDifferenceFamily jungnickel_compose(const StrongDifferenceFamily& sdf, const DifferenceMatrix& dm) {
    if (sdf.k != dm.k)
        throw std::invalid_argument("jungnickel_compose: block size " + std::to_string(sdf.k) +
                                    " != matrix rows " + std::to_string(dm.k));
    StrongDifferenceFamily out;
    out.group = direct_product(sdf.group, dm.group);
    out.k = sdf.k;
    out.lambda = sdf.lambda * dm.mu;
    out.blocks.reserve(sdf.blocks.size() * dm.columns.size());
    for (const auto& b : sdf.blocks) {
        for (const auto& col : dm.columns) {
            std::vector<Element> elems;
            elems.reserve(sdf.k);
            for (std::uint32_t i = 0; i < sdf.k; ++i) elems.push_back(pair_element(dm.group, b[i], col[i]));
            out.blocks.emplace_back(std::move(elems));
        }
    }
    out.additive = std::all_of(out.blocks.begin(), out.blocks.end(),
                               [&](const GMultiset& b) { return is_zero_sum(out.group, b.elements()); });
    return out;
}

/// The F_q-stage family {A, B, ..., B} with A = r{0} + 2r F_q^squares and
/// B = r F_q, together with the multiplicity maps of its parts.
struct CoreSdf {
    FiniteField field;
    std::uint64_t q = 0;
    std::uint64_t r = 0;
    StrongDifferenceFamily sdf;
    CoverageMap alpha;  // of Delta A
    CoverageMap beta;   // of Delta B
    CoverageMap sigma;  // of the whole family
};

inline bool is_two_pow_times_three(std::uint64_t k) {
    if (k % 3 != 0) return false;
    k /= 3;
    return (k & (k - 1)) == 0;
}

inline CoreSdf theorem82_core_sdf(std::uint64_t k) {
    if (k < 3) throw std::invalid_argument("theorem82_core_sdf: k must be >= 3");
    if (as_prime_power(k)) throw std::invalid_argument("theorem82_core_sdf: k is a prime power");
    if (k % 4 == 2) throw std::invalid_argument("theorem82_core_sdf: k is singly even");
    if (is_two_pow_times_three(k)) throw std::invalid_argument("theorem82_core_sdf: k has the form 2^n*3");
    CoreSdf core;
    core.q = largest_odd_prime_power_factor(k);
    core.r = k / core.q;
    if (core.q <= 3) throw std::logic_error("theorem82_core_sdf: largest odd prime power factor must exceed 3");
    const auto pp = *as_prime_power(core.q);
    core.field = make_field(static_cast<std::int64_t>(pp.prime), pp.exponent);
    const auto group = core.field.additive_group();

    std::vector<Element> a(core.r, group.zero());
    for (auto s : nonzero_squares(core.field))
        for (std::uint64_t i = 0; i < 2 * core.r; ++i) a.push_back(FiniteField::as_group_element(s));
    std::vector<Element> b;
    for (std::uint64_t i = 0; i < core.r; ++i)
        for (auto e : group.elements()) b.push_back(e);
    GMultiset block_a(std::move(a)), block_b(std::move(b));

    core.sdf.group = group;
    core.sdf.k = static_cast<std::uint32_t>(k);
    core.sdf.lambda = (k - 1) * core.r * core.r;
    core.sdf.blocks.push_back(block_a);
    for (std::uint64_t i = 1; i < core.r; ++i) core.sdf.blocks.push_back(block_b);
    core.sdf.additive = std::all_of(core.sdf.blocks.begin(), core.sdf.blocks.end(),
                                    [&](const GMultiset& m) { return is_zero_sum(group, m.elements()); });
    core.alpha = coverage(delta_block(group, block_a), group).map;
    core.beta = coverage(delta_block(group, block_b), group).map;
    core.sigma = coverage(delta_family(group, core.sdf.blocks), group).map;
    return core;
}

}  // namespace srd
