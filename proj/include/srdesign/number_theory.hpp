#pragma once

// Small exact integer helpers: primality, factorization, radicals and
// multiplicative orders for moduli that fit in 64 bits.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace srd {

struct PrimePower {
    std::uint64_t prime = 0;
    int exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

/// Trial-division factorization, primes in increasing order.
inline std::vector<PrimePower> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> out;
    auto take = [&](std::uint64_t p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e});
    };
    take(2);
    take(3);
    for (std::uint64_t p = 5; p * p <= n; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f.front().exponent == 1;
}

inline std::optional<PrimePower> as_prime_power(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    auto f = factorize(n);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

/// Product of the distinct primes dividing n; radical(1) == 1.
inline std::uint64_t radical(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("radical: n must be positive");
    std::uint64_t r = 1;
    for (const auto& pp : factorize(static_cast<std::uint64_t>(n))) r *= pp.prime;
    return r;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = n;
    for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
    return phi;
}

/// Least m >= 1 with a^m == 1 (mod modulus). Requires gcd(a, modulus) == 1.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("multiplicative_order: modulus must be >= 2");
    if (std::gcd(a % modulus, modulus) != 1)
        throw std::invalid_argument("multiplicative_order: base is not a unit");
    std::uint64_t order = euler_phi(modulus);
    for (const auto& pp : factorize(order)) {
        while (order % pp.prime == 0 && powmod(a, order / pp.prime, modulus) == 1) order /= pp.prime;
    }
    return order;
}

/// The largest p^e exactly dividing n with p odd; 1 when n is a power of two.
inline std::uint64_t largest_odd_prime_power_factor(std::uint64_t n) {
    std::uint64_t best = 1;
    for (const auto& pp : factorize(n)) {
        if (pp.prime == 2) continue;
        best = std::max(best, ipow(pp.prime, static_cast<unsigned>(pp.exponent)));
    }
    return best;
}

}  // namespace srd
