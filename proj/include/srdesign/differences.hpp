#pragma once

// Multisets over group elements and the list-of-differences calculus.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "gf.hpp"

namespace srd {

/// A finite multiset of group elements, stored as a sorted list with repeats.
class GMultiset {
public:
    GMultiset() = default;
    explicit GMultiset(std::vector<Element> elems) : elems_(std::move(elems)) { std::sort(elems_.begin(), elems_.end()); }
    GMultiset(std::initializer_list<Element> elems) : GMultiset(std::vector<Element>(elems)) {}

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    std::span<const Element> elements() const noexcept { return elems_; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    Element operator[](std::size_t i) const { return elems_[i]; }

    std::size_t multiplicity(Element e) const {
        auto [lo, hi] = std::equal_range(elems_.begin(), elems_.end(), e);
        return static_cast<std::size_t>(hi - lo);
    }

    /// (element, multiplicity) pairs in increasing element order.
    std::vector<std::pair<Element, std::size_t>> entries() const {
        std::vector<std::pair<Element, std::size_t>> out;
        for (auto e : elems_) {
            if (!out.empty() && out.back().first == e)
                ++out.back().second;
            else
                out.emplace_back(e, 1);
        }
        return out;
    }

    bool is_set() const { return std::adjacent_find(elems_.begin(), elems_.end()) == elems_.end(); }

    friend bool operator==(const GMultiset&, const GMultiset&) = default;

private:
    std::vector<Element> elems_;
};

/// A multiset without repeated elements.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::vector<Element> elems) : elems_(std::move(elems)) {
        std::sort(elems_.begin(), elems_.end());
        if (std::adjacent_find(elems_.begin(), elems_.end()) != elems_.end())
            throw std::invalid_argument("block has a repeated element");
    }

    std::size_t size() const noexcept { return elems_.size(); }
    std::span<const Element> elements() const noexcept { return elems_; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    Element operator[](std::size_t i) const { return elems_[i]; }
    bool contains(Element e) const { return std::binary_search(elems_.begin(), elems_.end(), e); }
    GMultiset as_multiset() const { return GMultiset(elems_); }

    friend bool operator==(const ElementSet&, const ElementSet&) = default;
    friend auto operator<=>(const ElementSet& a, const ElementSet& b) { return a.elems_ <=> b.elems_; }

private:
    std::vector<Element> elems_;
};

/// All b_i - b_j over ordered pairs of distinct positions.
inline GMultiset delta_block(const AbelianGroup& group, std::span<const Element> block) {
    if (block.size() < 2) throw std::invalid_argument("delta_block: block needs at least 2 elements");
    for (auto e : block) group.check(e);
    std::vector<Element> out;
    out.reserve(block.size() * (block.size() - 1));
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = 0; j < block.size(); ++j)
            if (i != j) out.push_back(group.sub(block[i], block[j]));
    return GMultiset(std::move(out));
}

inline GMultiset delta_block(const AbelianGroup& group, const GMultiset& block) {
    return delta_block(group, block.elements());
}

template <typename Block>
GMultiset delta_family(const AbelianGroup& group, const std::vector<Block>& blocks) {
    std::vector<Element> out;
    for (const auto& b : blocks) {
        const auto d = delta_block(group, b.elements());
        out.insert(out.end(), d.begin(), d.end());
    }
    return GMultiset(std::move(out));
}

inline GMultiset delta_family(const AbelianGroup& group, const std::vector<std::vector<Element>>& blocks) {
    std::vector<Element> out;
    for (const auto& b : blocks) {
        const auto d = delta_block(group, b);
        out.insert(out.end(), d.begin(), d.end());
    }
    return GMultiset(std::move(out));
}

/// Multiplicities over the full carrier, zeros included.
struct CoverageMap {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::uint64_t operator[](Element e) const { return counts.at(e.id); }
};

struct CoverageVerdict {
    CoverageMap map;
    /// Common multiplicity outside the excluded set when it is constant and
    /// every excluded element is uncovered.
    std::optional<std::uint64_t> constant_lambda;
    bool excluded_uncovered = true;
    /// No carrier element lies outside the excluded set.
    bool vacuous = false;
    /// First element breaking constancy, if any.
    std::optional<Element> witness;
};

inline CoverageVerdict coverage(const GMultiset& delta, const AbelianGroup& carrier,
                                std::span<const Element> excluded = {}) {
    CoverageVerdict v;
    v.map.counts.assign(carrier.order(), 0);
    for (auto e : delta) {
        carrier.check(e);
        ++v.map.counts[e.id];
        ++v.map.total;
    }
    std::vector<char> is_excluded(carrier.order(), 0);
    for (auto e : excluded) {
        carrier.check(e);
        is_excluded[e.id] = 1;
        if (v.map.counts[e.id] != 0) {
            v.excluded_uncovered = false;
            if (!v.witness) v.witness = e;
        }
    }
    std::optional<std::uint64_t> common;
    bool constant = true;
    for (std::uint64_t i = 0; i < carrier.order(); ++i) {
        if (is_excluded[i]) continue;
        if (!common) {
            common = v.map.counts[i];
        } else if (*common != v.map.counts[i]) {
            constant = false;
            if (!v.witness) v.witness = Element{static_cast<std::uint32_t>(i)};
        }
    }
    v.vacuous = !common.has_value();
    if (constant && v.excluded_uncovered) v.constant_lambda = common.value_or(0);
    return v;
}

/// The additive group of G x F_q with access to both components.
/// Element (g, f) has id g * q + f, so the field part occupies the trailing
/// n coordinates (descending coefficients) of the combined group.
class ProductCarrier {
public:
    ProductCarrier(AbelianGroup base, FiniteField field)
        : base_(std::move(base)), field_(std::move(field)), group_(direct_product(base_, field_.additive_group())) {}

    const AbelianGroup& base() const noexcept { return base_; }
    const FiniteField& field() const noexcept { return field_; }
    const AbelianGroup& group() const noexcept { return group_; }

    Element pair(Element g, FieldElement f) const {
        base_.check(g);
        field_.check(f);
        return pair_element(field_.additive_group(), g, FiniteField::as_group_element(f));
    }
    Element base_part(Element e) const {
        group_.check(e);
        return Element{static_cast<std::uint32_t>(e.id / field_.order())};
    }
    FieldElement field_part(Element e) const {
        group_.check(e);
        return FieldElement{static_cast<std::uint32_t>(e.id % field_.order())};
    }

    /// G x {0}.
    Subgroup base_subgroup() const {
        std::vector<Element> elems;
        for (auto g : base_.elements()) elems.push_back(pair(g, field_.zero()));
        return Subgroup{group_, std::move(elems)};
    }

    friend bool operator==(const ProductCarrier& a, const ProductCarrier& b) {
        return a.base_ == b.base_ && a.field_ == b.field_;
    }

private:
    AbelianGroup base_;
    FiniteField field_;
    AbelianGroup group_;
};

/// Groups a list of differences over G x F_q as the fibres Delta_g over each g.
inline std::map<Element, std::vector<FieldElement>> split_by_base(const ProductCarrier& carrier, const GMultiset& delta) {
    std::map<Element, std::vector<FieldElement>> out;
    for (auto e : delta) out[carrier.base_part(e)].push_back(carrier.field_part(e));
    for (auto& [g, fibre] : out) std::sort(fibre.begin(), fibre.end());
    return out;
}

}  // namespace srd
