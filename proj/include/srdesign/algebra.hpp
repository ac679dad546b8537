#pragma once

// Finite abelian groups presented as direct products of cyclic groups.
//
// Elements are encoded by their rank in the lexicographic enumeration of
// coordinate tuples (first factor most significant), so sorting elements by
// id is the same as sorting coordinate tuples lexicographically.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "number_theory.hpp"

namespace srd {

struct Element {
    std::uint32_t id = 0;

    friend constexpr auto operator<=>(Element, Element) = default;
};

class AbelianGroup {
public:
    AbelianGroup() : AbelianGroup(std::vector<std::uint32_t>{1}) {}

    explicit AbelianGroup(std::vector<std::uint32_t> cyclic_orders) : orders_(std::move(cyclic_orders)) {
        if (orders_.empty()) throw std::invalid_argument("AbelianGroup: empty factor list");
        std::uint64_t order = 1;
        strides_.assign(orders_.size(), 1);
        for (std::size_t i = orders_.size(); i-- > 0;) {
            if (orders_[i] == 0) throw std::invalid_argument("AbelianGroup: cyclic order must be >= 1");
            strides_[i] = order;
            order *= orders_[i];
            if (order > 0xFFFFFFFFULL) throw std::invalid_argument("AbelianGroup: order exceeds 2^32 - 1");
        }
        order_ = order;
    }

    const std::vector<std::uint32_t>& cyclic_orders() const noexcept { return orders_; }
    std::uint64_t order() const noexcept { return order_; }
    std::size_t rank() const noexcept { return orders_.size(); }

    Element zero() const noexcept { return Element{0}; }
    bool contains(Element e) const noexcept { return e.id < order_; }

    /// Builds an element from coordinates, reducing each modulo its factor.
    Element element(std::span<const std::int64_t> coords) const {
        if (coords.size() != orders_.size())
            throw std::invalid_argument("AbelianGroup::element: expected " + std::to_string(orders_.size()) +
                                        " coordinates, got " + std::to_string(coords.size()));
        std::uint64_t id = 0;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            const auto n = static_cast<std::int64_t>(orders_[i]);
            const std::int64_t c = ((coords[i] % n) + n) % n;
            id += static_cast<std::uint64_t>(c) * strides_[i];
        }
        return Element{static_cast<std::uint32_t>(id)};
    }

    Element element(std::initializer_list<std::int64_t> coords) const {
        return element(std::span<const std::int64_t>(coords.begin(), coords.size()));
    }

    std::vector<std::uint32_t> coords(Element e) const {
        check(e);
        std::vector<std::uint32_t> out(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) out[i] = static_cast<std::uint32_t>(e.id / strides_[i] % orders_[i]);
        return out;
    }

    Element add(Element a, Element b) const noexcept {
        std::uint64_t id = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const std::uint64_t n = orders_[i];
            const std::uint64_t x = a.id / strides_[i] % n;
            const std::uint64_t y = b.id / strides_[i] % n;
            std::uint64_t s = x + y;
            if (s >= n) s -= n;
            id += s * strides_[i];
        }
        return Element{static_cast<std::uint32_t>(id)};
    }

    Element neg(Element a) const noexcept {
        std::uint64_t id = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const std::uint64_t n = orders_[i];
            const std::uint64_t x = a.id / strides_[i] % n;
            id += ((n - x) % n) * strides_[i];
        }
        return Element{static_cast<std::uint32_t>(id)};
    }

    Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

    Element times(std::int64_t m, Element a) const noexcept {
        std::uint64_t id = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const auto n = static_cast<std::int64_t>(orders_[i]);
            const auto x = static_cast<std::int64_t>(a.id / strides_[i] % orders_[i]);
            const std::int64_t mm = ((m % n) + n) % n;
            id += static_cast<std::uint64_t>(static_cast<std::int64_t>((static_cast<__int128>(mm) * x) % n)) * strides_[i];
        }
        return Element{static_cast<std::uint32_t>(id)};
    }

    std::vector<Element> elements() const {
        std::vector<Element> out(order_);
        for (std::uint64_t i = 0; i < order_; ++i) out[i] = Element{static_cast<std::uint32_t>(i)};
        return out;
    }

    void check(Element e) const {
        if (!contains(e))
            throw std::out_of_range("element id " + std::to_string(e.id) + " outside group of order " +
                                    std::to_string(order_));
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i) s += "x";
            s += "Z" + std::to_string(orders_[i]);
        }
        return s;
    }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.orders_ == b.orders_; }

private:
    std::vector<std::uint32_t> orders_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t order_ = 1;
};

inline AbelianGroup make_group(const std::vector<std::int64_t>& cyclic_orders) {
    if (cyclic_orders.empty()) throw std::invalid_argument("make_group: empty factor list");
    std::vector<std::uint32_t> orders;
    orders.reserve(cyclic_orders.size());
    for (auto n : cyclic_orders) {
        if (n < 1) throw std::invalid_argument("make_group: cyclic orders must be >= 1");
        if (n > 0xFFFFFFFFLL) throw std::invalid_argument("make_group: cyclic order too large");
        orders.push_back(static_cast<std::uint32_t>(n));
    }
    return AbelianGroup(std::move(orders));
}

inline AbelianGroup direct_product(const AbelianGroup& a, const AbelianGroup& b) {
    auto orders = a.cyclic_orders();
    orders.insert(orders.end(), b.cyclic_orders().begin(), b.cyclic_orders().end());
    return AbelianGroup(std::move(orders));
}

/// Element (g, h) of direct_product(a, b).
inline Element pair_element(const AbelianGroup& b, Element g, Element h) {
    return Element{static_cast<std::uint32_t>(static_cast<std::uint64_t>(g.id) * b.order() + h.id)};
}

/// Fold of group addition over a multiset; the empty multiset sums to zero.
inline Element sum_of(const AbelianGroup& group, std::span<const Element> elems) {
    Element acc = group.zero();
    for (auto e : elems) {
        group.check(e);
        acc = group.add(acc, e);
    }
    return acc;
}

inline bool is_zero_sum(const AbelianGroup& group, std::span<const Element> elems) {
    return sum_of(group, elems) == group.zero();
}

/// Least m >= 1 with m*g == 0: the lcm of the coordinate orders.
inline std::uint64_t element_order(const AbelianGroup& group, Element g) {
    const auto c = group.coords(g);
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::uint64_t n = group.cyclic_orders()[i];
        ord = std::lcm(ord, n / std::gcd<std::uint64_t>(c[i], n));
    }
    return ord;
}

struct Subgroup {
    AbelianGroup parent;
    std::vector<Element> elements;  // sorted

    std::size_t order() const noexcept { return elements.size(); }
    bool contains(Element e) const { return std::binary_search(elements.begin(), elements.end(), e); }

    friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// Validates closure; the element list may come in any order.
inline Subgroup make_subgroup(const AbelianGroup& parent, std::vector<Element> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (auto e : elems) parent.check(e);
    Subgroup h{parent, std::move(elems)};
    if (!h.contains(parent.zero())) throw std::invalid_argument("subgroup does not contain the identity");
    for (auto a : h.elements) {
        if (!h.contains(parent.neg(a))) throw std::invalid_argument("subgroup not closed under negation");
        for (auto b : h.elements)
            if (!h.contains(parent.add(a, b))) throw std::invalid_argument("subgroup not closed under addition");
    }
    return h;
}

inline Subgroup generated_subgroup(const AbelianGroup& parent, std::span<const Element> generators) {
    std::vector<Element> elems{parent.zero()};
    std::vector<char> seen(parent.order(), 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (auto g : generators) {
            parent.check(g);
            const Element n = parent.add(elems[i], g);
            if (!seen[n.id]) {
                seen[n.id] = 1;
                elems.push_back(n);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return Subgroup{parent, std::move(elems)};
}

struct InvolutionSubgroup {
    Subgroup subgroup;  // I(G) = {g : 2g = 0}
    bool is_binary = false;
};

inline InvolutionSubgroup involution_subgroup(const AbelianGroup& group) {
    std::vector<Element> elems;
    for (auto g : group.elements())
        if (group.add(g, g) == group.zero()) elems.push_back(g);
    const bool binary = elems.size() == 2;
    return {Subgroup{group, std::move(elems)}, binary};
}

/// Order of I(G), computed from the factor list without enumeration.
inline std::uint64_t involution_count(const AbelianGroup& group) {
    std::uint64_t c = 1;
    for (auto n : group.cyclic_orders()) c *= (n % 2 == 0) ? 2 : 1;
    return c;
}

/// True iff the sum of all elements of the group is the identity.
inline bool is_zero_sum_group(const AbelianGroup& group) {
    // Coordinate i of the total is (|G|/n_i) * (0 + 1 + ... + n_i - 1) mod n_i.
    const auto& orders = group.cyclic_orders();
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const unsigned __int128 n = orders[i];
        const unsigned __int128 copies = group.order() / orders[i];
        const unsigned __int128 s = copies * (n * (n - 1) / 2);
        if (s % n != 0) return false;
    }
    return true;
}

/// Partition of the parent into cosets, ordered by minimal representative.
inline std::vector<std::vector<Element>> cosets(const Subgroup& sub) {
    const auto& g = sub.parent;
    if (!sub.contains(g.zero())) throw std::invalid_argument("cosets: not a subgroup (identity missing)");
    for (auto a : sub.elements)
        for (auto b : sub.elements)
            if (!sub.contains(g.sub(a, b))) throw std::invalid_argument("cosets: not a subgroup (not closed)");
    std::vector<char> seen(g.order(), 0);
    std::vector<std::vector<Element>> out;
    for (std::uint64_t i = 0; i < g.order(); ++i) {
        if (seen[i]) continue;
        const Element rep{static_cast<std::uint32_t>(i)};
        std::vector<Element> coset;
        coset.reserve(sub.order());
        for (auto h : sub.elements) {
            const Element x = g.add(rep, h);
            seen[x.id] = 1;
            coset.push_back(x);
        }
        std::sort(coset.begin(), coset.end());
        out.push_back(std::move(coset));
    }
    return out;
}

}  // namespace srd
