#pragma once

// Arithmetic admissibility checks for additive and super-regular designs and
// the classification of block sizes. Large v values use exact big integers.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "algebra.hpp"
#include "number_theory.hpp"
#include "verdict.hpp"

namespace srd {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& x) { return x.str(); }

inline BigInt big_gcd(BigInt a, BigInt b) {
    while (b != 0) {
        BigInt t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

/// Strips from n every prime it shares with m; the result is 1 iff rad(n) | m.
inline BigInt coprime_part(BigInt n, const BigInt& m) {
    for (BigInt g = big_gcd(n, m); g > 1; g = big_gcd(n, m))
        while (n % g == 0) n /= g;
    return n;
}

inline bool radical_divides(const BigInt& n, const BigInt& m) { return coprime_part(n, m) == 1; }

inline bool singly_even(const BigInt& n) { return n % 4 == 2; }

/// A zero-sum group of order k exists iff k is not singly even.
inline bool trivial_additive(std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("trivial_additive: k must be >= 1");
    return k % 4 != 2;
}

inline ParamVerdict strict_additive_necessary(const BigInt& v, const BigInt& k) {
    if (k < 2 || v < k) throw std::invalid_argument("strict_additive_necessary: need v >= k >= 2");
    ParamVerdict out;
    out.subject = "(v,k)=(" + to_string(v) + "," + to_string(k) + ")";
    const BigInt rest = coprime_part(v, k);
    out.conditions.push_back({"rad(v) | k", rest == 1, "part of v coprime to k = " + to_string(rest)});
    out.conditions.push_back({"v not singly even", !singly_even(v), "v mod 4 = " + to_string(BigInt(v % 4))});
    return out;
}

inline ParamVerdict super_regular_necessary(const BigInt& v, const BigInt& k,
                                            const std::optional<AbelianGroup>& group = std::nullopt) {
    if (k < 2 || v < 1) throw std::invalid_argument("super_regular_necessary: need v >= 1 and k >= 2");
    ParamVerdict out;
    out.subject = "(v,k)=(" + to_string(v) + "," + to_string(k) + ")";
    if (group) {
        std::uint64_t exponent = 1;
        for (auto n : group->cyclic_orders()) exponent = std::lcm<std::uint64_t>(exponent, n);
        out.conditions.push_back({"|G| = v", BigInt(group->order()) == v, "|G| = " + std::to_string(group->order())});
        out.conditions.push_back({"element orders divide k", k % exponent == 0,
                                  "exponent of G = " + std::to_string(exponent) + ", k mod exponent = " +
                                      to_string(BigInt(k % exponent))});
    }
    const BigInt m = k * (k - 1);
    const BigInt r = ((v - k) % m + m) % m;
    out.conditions.push_back({"v = k (mod k(k-1))", r == 0, "(v-k) mod " + to_string(m) + " = " + to_string(r)});
    const BigInt a = coprime_part(v, k);
    const BigInt b = coprime_part(k, v);
    out.conditions.push_back({"rad(v) = rad(k)", a == 1 && b == 1,
                              "part of v coprime to k = " + to_string(a) + ", part of k coprime to v = " + to_string(b)});
    out.conditions.push_back({"k not singly even", !singly_even(k), "k mod 4 = " + to_string(BigInt(k % 4))});
    return out;
}

enum class NonexistenceOutcome { nonexistent, no_conclusion, hypothesis_not_met };

inline const char* to_string(NonexistenceOutcome o) {
    switch (o) {
        case NonexistenceOutcome::nonexistent: return "nonexistent";
        case NonexistenceOutcome::no_conclusion: return "no conclusion";
        case NonexistenceOutcome::hypothesis_not_met: return "hypothesis not met";
    }
    return "?";
}

struct NonexistenceVerdict {
    ParamVerdict params;
    bool hypothesis = false;  // 3 | k and 9 does not divide k
    unsigned quotient_mod3 = 0;
    NonexistenceOutcome outcome = NonexistenceOutcome::hypothesis_not_met;
};

/// With 3 || k (k = +-3 mod 9), v/k = 2 (mod 3) rules out a super-regular 2-(v,k,1) design.
inline NonexistenceVerdict theorem41_42(const BigInt& v, const BigInt& k) {
    if (k < 1 || v % k != 0) throw std::invalid_argument("theorem41_42: k must divide v");
    NonexistenceVerdict out;
    out.params.subject = "(v,k)=(" + to_string(v) + "," + to_string(k) + ")";
    const unsigned k9 = static_cast<unsigned>(k % 9);
    out.hypothesis = k % 3 == 0 && k9 != 0;
    out.quotient_mod3 = static_cast<unsigned>((v / k) % 3);
    out.params.conditions.push_back({"k = +-3 (mod 9)", out.hypothesis, "k mod 9 = " + std::to_string(k9)});
    out.params.conditions.push_back(
        {"v/k = 2 (mod 3)", out.quotient_mod3 == 2, "v/k mod 3 = " + std::to_string(out.quotient_mod3)});
    if (!out.hypothesis)
        out.outcome = NonexistenceOutcome::hypothesis_not_met;
    else
        out.outcome = out.quotient_mod3 == 2 ? NonexistenceOutcome::nonexistent : NonexistenceOutcome::no_conclusion;
    return out;
}

struct PowerOfTwoTimesThree {
    unsigned n = 0;
    std::uint64_t k = 0;
    std::uint64_t order = 0;  // o = ord_{k-1}(2)
    std::uint64_t bound = 0;  // n^2 - n
    std::uint64_t i_max = 0;
    std::vector<BigInt> admissible_v;  // 2^(o i + n) * 3
};

/// The only v left open for k = 2^n * 3 when the design comes from a single-orbit family.
inline PowerOfTwoTimesThree theorem43_enumerate(unsigned n) {
    if (n < 1 || n > 61) throw std::invalid_argument("theorem43_enumerate: need 1 <= n <= 61");
    PowerOfTwoTimesThree out;
    out.n = n;
    out.k = (std::uint64_t{3}) << n;
    out.bound = static_cast<std::uint64_t>(n) * n - n;
    out.order = multiplicative_order(2, out.k - 1);
    out.i_max = out.bound / out.order;
    for (std::uint64_t i = 0; i <= out.i_max; ++i) {
        BigInt v = 3;
        v <<= static_cast<unsigned>(out.order * i + n);
        out.admissible_v.push_back(v);
    }
    return out;
}

enum class MainStatus { prime_power, singly_even, two_pow_times_three, constructible };

inline const char* to_string(MainStatus s) {
    switch (s) {
        case MainStatus::prime_power: return "prime_power";
        case MainStatus::singly_even: return "singly_even";
        case MainStatus::two_pow_times_three: return "two_pow_times_three";
        case MainStatus::constructible: return "constructible";
    }
    return "?";
}

inline MainStatus main_status(std::uint64_t k) {
    if (k < 3) throw std::invalid_argument("main_status: k must be >= 3");
    if (as_prime_power(k)) return MainStatus::prime_power;
    if (k % 4 == 2) return MainStatus::singly_even;
    if (k % 3 == 0) {
        const std::uint64_t m = k / 3;
        if ((m & (m - 1)) == 0) return MainStatus::two_pow_times_three;
    }
    return MainStatus::constructible;
}

/// (q, r) with q the largest odd prime power factor of k and r = k/q.
inline std::pair<std::uint64_t, std::uint64_t> constructible_split(std::uint64_t k) {
    if (main_status(k) != MainStatus::constructible) throw std::invalid_argument("constructible_split: k is not constructible");
    const std::uint64_t q = largest_odd_prime_power_factor(k);
    return {q, k / q};
}

/// Report for --k alone: classification plus the single-k conditions.
inline ParamVerdict classify_k(std::uint64_t k) {
    ParamVerdict out;
    out.subject = "k=" + std::to_string(k);
    const auto s = main_status(k);
    out.conditions.push_back({"zero-sum group of order k exists", trivial_additive(k), "k mod 4 = " + std::to_string(k % 4)});
    out.conditions.push_back({"status " + std::string(to_string(s)),
                              s == MainStatus::prime_power || s == MainStatus::constructible, ""});
    if (s == MainStatus::constructible) {
        const auto [q, r] = constructible_split(k);
        out.conditions.back().certificate = "q = " + std::to_string(q) + ", r = " + std::to_string(r);
    }
    return out;
}

}  // namespace srd
