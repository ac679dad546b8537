#pragma once

// Independent brute-force reference computations. These work on raw residue
// tuples and coefficient vectors and never call the library's arithmetic.

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Tuple = std::vector<std::int64_t>;

inline Tuple add(const Tuple& a, const Tuple& b, const std::vector<std::int64_t>& n) {
    Tuple c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % n[i];
    return c;
}

inline Tuple sub(const Tuple& a, const Tuple& b, const std::vector<std::int64_t>& n) {
    Tuple c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = ((a[i] - b[i]) % n[i] + n[i]) % n[i];
    return c;
}

inline std::vector<Tuple> all_tuples(const std::vector<std::int64_t>& n) {
    std::vector<Tuple> out{Tuple{}};
    for (auto ni : n) {
        std::vector<Tuple> next;
        for (const auto& t : out)
            for (std::int64_t x = 0; x < ni; ++x) {
                auto u = t;
                u.push_back(x);
                next.push_back(u);
            }
        out = std::move(next);
    }
    return out;
}

/// Multiplicity of every difference a_i - a_j, i != j.
inline std::map<Tuple, std::uint64_t> delta(const std::vector<Tuple>& block, const std::vector<std::int64_t>& n) {
    std::map<Tuple, std::uint64_t> out;
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = 0; j < block.size(); ++j)
            if (i != j) ++out[sub(block[i], block[j], n)];
    return out;
}

/// The common multiplicity of differences outside `excluded` when it is
/// constant and nothing inside `excluded` is covered; -1 otherwise.
inline std::int64_t constant_cover(const std::vector<std::vector<Tuple>>& blocks, const std::vector<std::int64_t>& n,
                                   const std::set<Tuple>& excluded = {}) {
    std::map<Tuple, std::uint64_t> total;
    for (const auto& b : blocks)
        for (const auto& [t, m] : delta(b, n)) total[t] += m;
    std::int64_t common = -1;
    for (const auto& t : all_tuples(n)) {
        const auto it = total.find(t);
        const std::int64_t m = it == total.end() ? 0 : static_cast<std::int64_t>(it->second);
        if (excluded.count(t)) {
            if (m != 0) return -1;
            continue;
        }
        if (common == -1) common = m;
        if (common != m) return -1;
    }
    return common;
}

inline std::int64_t order_of(const Tuple& g, const std::vector<std::int64_t>& n) {
    Tuple x = g;
    std::int64_t m = 1;
    while (std::any_of(x.begin(), x.end(), [](std::int64_t c) { return c != 0; })) {
        x = add(x, g, n);
        ++m;
    }
    return m;
}

// Polynomials over Z_p, ascending coefficients.
using Poly = std::vector<std::int64_t>;

/// a * b mod f, f monic of degree n.
inline Poly polymul(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
    const std::size_t n = f.size() - 1;
    std::vector<std::int64_t> prod(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t d = 2 * n - 1; d >= n; --d) {
        const std::int64_t c = prod[d];
        if (c == 0) continue;
        for (std::size_t i = 0; i <= n; ++i) prod[d - n + i] = ((prod[d - n + i] - c * f[i]) % p + p) % p;
    }
    prod.resize(n);
    return prod;
}

inline std::int64_t mult_order_mod(std::int64_t a, std::int64_t m) {
    std::int64_t x = a % m, k = 1;
    while (x != 1 % m) {
        x = x * a % m;
        ++k;
        if (k > m) return 0;
    }
    return k;
}

inline std::set<std::int64_t> prime_divisors(std::int64_t n) {
    std::set<std::int64_t> out;
    for (std::int64_t d = 2; d <= n; ++d)
        while (n % d == 0) {
            out.insert(d);
            n /= d;
        }
    return out;
}

}  // namespace oracle
