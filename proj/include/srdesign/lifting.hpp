#pragma once

// Lifting a strong difference family over G to a relative difference family
// over G x F_q: class assignments (psi), the backtracking searches, multiplier
// application, extension of the field and the plain/signed "simple" lifts.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "differences.hpp"
#include "families.hpp"
#include "gf.hpp"

namespace srd {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Fisher-Yates over mt19937_64, so candidate orders are identical on every platform.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

struct SearchStats {
    std::uint64_t nodes = 0;
    std::size_t deepest = 0;
};

class SearchExhausted : public std::runtime_error {
public:
    SearchExhausted(const std::string& what, SearchStats stats) : std::runtime_error(what), stats_(stats) {}
    const SearchStats& stats() const noexcept { return stats_; }

private:
    SearchStats stats_;
};

/// psi(h, i, j) for i != j, stored per block as a k x k table.
class PsiAssignment {
public:
    PsiAssignment() = default;
    PsiAssignment(std::uint32_t lambda, std::uint32_t k, std::vector<std::vector<std::uint32_t>> table)
        : lambda_(lambda), k_(k), table_(std::move(table)) {}

    std::uint32_t lambda() const noexcept { return lambda_; }
    std::uint32_t k() const noexcept { return k_; }
    std::size_t blocks() const noexcept { return table_.size(); }
    std::uint32_t operator()(std::size_t h, std::uint32_t i, std::uint32_t j) const {
        if (i == j) throw std::invalid_argument("psi is undefined on the diagonal");
        return table_.at(h).at(static_cast<std::size_t>(i) * k_ + j);
    }

private:
    std::uint32_t lambda_ = 0;
    std::uint32_t k_ = 0;
    std::vector<std::vector<std::uint32_t>> table_;
};

struct PsiTriple {
    std::size_t h;
    std::uint32_t i, j;
};

/// T_g for every g: the triples (h,i,j) with b_{h,i} - b_{h,j} = g.
inline std::vector<std::vector<PsiTriple>> difference_triples(const StrongDifferenceFamily& sdf) {
    std::vector<std::vector<PsiTriple>> t(sdf.group.order());
    for (std::size_t h = 0; h < sdf.blocks.size(); ++h) {
        const auto& b = sdf.blocks[h];
        for (std::uint32_t i = 0; i < b.size(); ++i)
            for (std::uint32_t j = 0; j < b.size(); ++j)
                if (i != j) t[sdf.group.sub(b[i], b[j]).id].push_back({h, i, j});
    }
    return t;
}

/// Seed 0 assigns residues in enumeration order; other seeds permute them.
inline PsiAssignment build_psi(const StrongDifferenceFamily& sdf, std::uint32_t lambda, std::uint64_t seed = 0) {
    if (lambda == 0 || lambda % 2 != 0)
        throw std::invalid_argument("build_psi: lambda must be even, got " + std::to_string(lambda));
    const auto verdict = verify_sdf(sdf.blocks, sdf.group, sdf.k, lambda);
    if (!verdict.is_sdf) throw std::invalid_argument("build_psi: blocks are not an SDF with this lambda: " + verdict.reason);
    const std::uint32_t k = sdf.k;
    const std::uint32_t half = lambda / 2;
    std::vector<std::vector<std::uint32_t>> table(sdf.blocks.size(), std::vector<std::uint32_t>(std::size_t{k} * k, 0));
    auto set = [&](const PsiTriple& t, std::uint32_t r) { table[t.h][std::size_t{t.i} * k + t.j] = r % lambda; };
    std::mt19937_64 rng(seed);
    const auto triples = difference_triples(sdf);
    const auto& g = sdf.group;
    for (std::uint64_t id = 0; id < g.order(); ++id) {
        const Element e{static_cast<std::uint32_t>(id)};
        const Element minus = g.neg(e);
        if (minus < e) continue;  // handled with its negative
        const auto& tg = triples[id];
        if (minus == e) {
            // T_g is closed under transposition: give each transpose pair (c, c + lambda/2).
            std::vector<std::uint32_t> base(half);
            for (std::uint32_t c = 0; c < half; ++c) base[c] = c;
            if (seed) seeded_shuffle(base, rng);
            std::size_t next = 0;
            for (const auto& t : tg) {
                if (t.i > t.j) continue;
                const bool swap = seed && (rng() & 1U);
                const std::uint32_t c = base.at(next++);
                set(t, swap ? c + half : c);
                set({t.h, t.j, t.i}, swap ? c : c + half);
            }
        } else {
            std::vector<std::uint32_t> residues(lambda);
            for (std::uint32_t c = 0; c < lambda; ++c) residues[c] = c;
            if (seed) seeded_shuffle(residues, rng);
            for (std::size_t n = 0; n < tg.size(); ++n) {
                const auto& t = tg[n];
                set(t, residues.at(n));
                set({t.h, t.j, t.i}, residues.at(n) + half);
            }
        }
    }
    return PsiAssignment(lambda, k, std::move(table));
}

/// Checks both defining properties; returns a description of the first violation.
inline std::optional<std::string> check_psi(const StrongDifferenceFamily& sdf, const PsiAssignment& psi) {
    const std::uint32_t lambda = psi.lambda();
    const auto triples = difference_triples(sdf);
    for (std::size_t g = 0; g < triples.size(); ++g) {
        std::vector<char> seen(lambda, 0);
        if (triples[g].size() != lambda) return "T_g has size " + std::to_string(triples[g].size()) + " for g=" + std::to_string(g);
        for (const auto& t : triples[g]) {
            const auto r = psi(t.h, t.i, t.j);
            if (r >= lambda || seen[r]) return "psi is not a bijection on T_g for g=" + std::to_string(g);
            seen[r] = 1;
            if (psi(t.h, t.j, t.i) != (r + lambda / 2) % lambda)
                return "transpose rule fails at (" + std::to_string(t.h) + "," + std::to_string(t.i) + "," +
                       std::to_string(t.j) + ")";
        }
    }
    return std::nullopt;
}

/// Second coordinates chosen for every position of every SDF block.
struct Lifting {
    StrongDifferenceFamily sdf;
    FiniteField field;
    std::vector<std::vector<FieldElement>> second;  // second[h][i] pairs with sdf.blocks[h][i]
    std::string strategy;
    SearchStats stats;
};

inline ProductCarrier lifting_carrier(const Lifting& lifting) { return ProductCarrier(lifting.sdf.group, lifting.field); }

/// l(B_h) as subsets of G x F_q. Throws if some lifted block repeats a point.
inline std::vector<ElementSet> lifted_blocks(const Lifting& lifting) {
    const auto carrier = lifting_carrier(lifting);
    std::vector<ElementSet> out;
    for (std::size_t h = 0; h < lifting.sdf.blocks.size(); ++h) {
        const auto& b = lifting.sdf.blocks[h];
        if (lifting.second.at(h).size() != b.size()) throw std::invalid_argument("lifting: block length mismatch");
        std::vector<Element> pts;
        for (std::size_t i = 0; i < b.size(); ++i) pts.push_back(carrier.pair(b[i], lifting.second[h][i]));
        out.emplace_back(std::move(pts));
    }
    return out;
}

struct ClassViolation {
    std::size_t h;
    std::uint32_t i, j;
};

/// l_{h,i} - l_{h,j} in C^lambda_{psi(h,i,j)} for every ordered pair.
inline std::optional<ClassViolation> check_class_conditions(const Lifting& lifting, const PsiAssignment& psi) {
    const auto& f = lifting.field;
    require_divides_order(f, psi.lambda());
    for (std::size_t h = 0; h < lifting.second.size(); ++h) {
        const auto& l = lifting.second[h];
        for (std::uint32_t i = 0; i < l.size(); ++i)
            for (std::uint32_t j = 0; j < l.size(); ++j) {
                if (i == j) continue;
                const FieldElement d = f.sub(l[i], l[j]);
                if (d.id == 0 || f.log(d) % psi.lambda() != psi(h, i, j)) return ClassViolation{h, i, j};
            }
    }
    return std::nullopt;
}

namespace detail {

inline void require_lifting_congruence(const FiniteField& field, std::uint32_t lambda) {
    const std::uint64_t q = field.order();
    if (lambda == 0 || q % (2ULL * lambda) != (lambda + 1ULL) % (2ULL * lambda))
        throw std::invalid_argument("lifting requires q = lambda+1 (mod 2 lambda); q=" + std::to_string(q) +
                                    ", lambda=" + std::to_string(lambda));
}

inline std::vector<FieldElement> order_by_log(const FiniteField& f, std::vector<FieldElement> xs) {
    std::sort(xs.begin(), xs.end(), [&](FieldElement a, FieldElement b) {
        const std::int64_t la = a.id == 0 ? -1 : static_cast<std::int64_t>(f.log(a));
        const std::int64_t lb = b.id == 0 ? -1 : static_cast<std::int64_t>(f.log(b));
        return la < lb;
    });
    return xs;
}

/// Depth-first search over levels 0..depth-1 with candidate lists produced on entry.
/// `candidates(level, chosen)` returns the options at that level; `accept(chosen)`
/// runs on complete assignments. Returns false when the space is exhausted.
template <typename Candidates, typename Accept>
bool backtrack(std::size_t depth, Candidates&& candidates, Accept&& accept, std::vector<FieldElement>& chosen,
               SearchStats& stats, std::uint64_t budget, const std::string& label) {
    std::vector<std::vector<FieldElement>> options(depth);
    std::vector<std::size_t> cursor(depth, 0);
    chosen.assign(depth, FieldElement{0});
    std::size_t level = 0;
    options[0] = candidates(0, chosen);
    while (true) {
        if (cursor[level] >= options[level].size()) {
            if (level == 0) return false;
            --level;
            ++cursor[level];
            continue;
        }
        if (++stats.nodes > budget)
            throw SearchExhausted(label + ": budget of " + std::to_string(budget) + " nodes exhausted; deepest level " +
                                      std::to_string(stats.deepest),
                                  stats);
        chosen[level] = options[level][cursor[level]];
        stats.deepest = std::max(stats.deepest, level + 1);
        if (level + 1 == depth) {
            if (accept(chosen)) return true;
            ++cursor[level];
            continue;
        }
        ++level;
        options[level] = candidates(level, chosen);
        cursor[level] = 0;
    }
}

}  // namespace detail

/// Position by position, l_{h,i} is drawn from X_{h,i}, the solutions of the class
/// conditions against the earlier positions, with backtracking on empty sets.
inline Lifting greedy_lift(const StrongDifferenceFamily& sdf, const FiniteField& field, const PsiAssignment& psi,
                           std::uint64_t budget = kDefaultBudget, std::uint64_t seed = 0) {
    const std::uint32_t lambda = psi.lambda();
    detail::require_lifting_congruence(field, lambda);
    if (psi.blocks() != sdf.blocks.size() || psi.k() != sdf.k) throw std::invalid_argument("greedy_lift: psi does not match the SDF");
    Lifting out{sdf, field, {}, "greedy", {}};
    std::mt19937_64 rng(seed);
    for (std::size_t h = 0; h < sdf.blocks.size(); ++h) {
        auto candidates = [&](std::size_t level, const std::vector<FieldElement>& chosen) {
            // The conditions are translation invariant, so one first value is enough.
            if (level == 0) return std::vector<FieldElement>{seed ? FieldElement{static_cast<std::uint32_t>(rng() % field.order())} : field.zero()};
            std::vector<ClassConstraint> cs;
            for (std::size_t j = 0; j < level; ++j)
                cs.push_back({chosen[j], psi(h, static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(j))});
            auto xs = detail::order_by_log(field, x_set(field, cs, lambda));
            if (seed) seeded_shuffle(xs, rng);
            return xs;
        };
        std::vector<FieldElement> chosen;
        const bool found = detail::backtrack(sdf.k, candidates, [](const auto&) { return true; }, chosen, out.stats,
                                             budget, "greedy_lift block " + std::to_string(h));
        if (!found)
            throw SearchExhausted("greedy_lift block " + std::to_string(h) + ": search space exhausted; deepest level " +
                                      std::to_string(out.stats.deepest),
                                  out.stats);
        out.second.push_back(chosen);
    }
    if (auto bad = check_class_conditions(out, psi))
        throw std::logic_error("greedy_lift: result fails the class check at block " + std::to_string(bad->h));
    return out;
}

/// Like greedy_lift, but the last four positions follow the zero-sum recipe so
/// that every lifted block sums to zero in the field coordinate.
inline Lifting zero_sum_lift(const StrongDifferenceFamily& sdf, const FiniteField& field, const PsiAssignment& psi,
                             std::uint64_t budget = kDefaultBudget, std::uint64_t seed = 0) {
    const std::uint32_t lambda = psi.lambda();
    const std::uint32_t k = sdf.k;
    const std::uint32_t p = field.characteristic();
    if (k == 3) throw std::invalid_argument("zero_sum_lift: k = 3 is excluded");
    if (k % p != 0) throw std::invalid_argument("zero_sum_lift: the characteristic must divide k");
    detail::require_lifting_congruence(field, lambda);
    if (k < 5) throw std::invalid_argument("zero_sum_lift: k must be at least 5");
    if (psi.blocks() != sdf.blocks.size() || psi.k() != k) throw std::invalid_argument("zero_sum_lift: psi does not match the SDF");
    if (!std::all_of(sdf.blocks.begin(), sdf.blocks.end(), [&](const GMultiset& b) { return is_zero_sum(sdf.group, b.elements()); }))
        throw std::invalid_argument("zero_sum_lift: the SDF must be additive");

    const FieldElement two = field.from_int(2);
    const FieldElement three = field.from_int(3);
    const std::uint32_t alpha = field.log(field.neg(two)) % lambda;
    auto sum = [&](const std::vector<FieldElement>& xs, std::size_t count) {
        FieldElement s = field.zero();
        for (std::size_t i = 0; i < count; ++i) s = field.add(s, xs[i]);
        return s;
    };

    Lifting out{sdf, field, {}, "zero-sum", {}};
    std::mt19937_64 rng(seed);
    std::string last_empty;
    for (std::size_t h = 0; h < sdf.blocks.size(); ++h) {
        auto ps = [&](std::size_t i, std::size_t j) { return psi(h, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)); };
        auto basic = [&](std::size_t level, const std::vector<FieldElement>& chosen) {
            std::vector<ClassConstraint> cs;
            for (std::size_t j = 0; j < level; ++j) cs.push_back({chosen[j], ps(level, j)});
            return x_set(field, cs, lambda);
        };
        auto finish = [&](std::vector<FieldElement> xs, const std::string& name) {
            if (xs.empty()) last_empty = name + " (block " + std::to_string(h) + ")";
            xs = detail::order_by_log(field, std::move(xs));
            if (seed) seeded_shuffle(xs, rng);
            return xs;
        };
        auto remove = [](std::vector<FieldElement> xs, const std::vector<FieldElement>& bad) {
            xs.erase(std::remove_if(xs.begin(), xs.end(),
                                    [&](FieldElement x) { return std::find(bad.begin(), bad.end(), x) != bad.end(); }),
                     xs.end());
            return xs;
        };
        // Levels are 0-based: the last four positions are k-4, k-3, k-2 and k-1.
        auto candidates = [&](std::size_t level, const std::vector<FieldElement>& chosen) -> std::vector<FieldElement> {
            if (level == 0) return {seed ? FieldElement{static_cast<std::uint32_t>(rng() % field.order())} : field.zero()};
            const std::string xname = "X_{" + std::to_string(level + 1) + "}";
            if (level < k - 4) return finish(basic(level, chosen), xname);
            if (level == k - 4) {
                auto xs = basic(level, chosen);
                if (p == 3) xs = remove(std::move(xs), {field.neg(sum(chosen, k - 4))});
                return finish(std::move(xs), xname);
            }
            if (level == k - 3) {
                const FieldElement s = sum(chosen, k - 3);
                std::vector<FieldElement> y;
                for (std::size_t i = 0; i < k - 3; ++i)
                    for (std::size_t j = i; j < k - 3; ++j) y.push_back(field.sub(field.neg(s), field.add(chosen[i], chosen[j])));
                for (std::size_t i = 0; i < k - 3; ++i) {
                    const FieldElement y2 = field.sub(field.neg(s), chosen[i]);
                    y.push_back(y2);
                    y.push_back(field.div(y2, two));
                }
                if (p != 3) y.push_back(field.div(field.neg(s), three));
                return finish(remove(basic(level, chosen), y), xname + " minus Y");
            }
            if (level == k - 2) {
                const FieldElement s = sum(chosen, k - 2);
                std::vector<ClassConstraint> cs;
                for (std::size_t j = 0; j < k - 2; ++j) cs.push_back({chosen[j], ps(k - 2, j)});
                for (std::size_t j = 0; j < k - 2; ++j)
                    cs.push_back({field.sub(field.neg(s), chosen[j]), (ps(k - 1, j) + lambda / 2) % lambda});
                cs.push_back({field.div(field.neg(s), two), (ps(k - 1, k - 2) + lambda - alpha) % lambda});
                for (std::size_t a = 0; a < cs.size(); ++a)
                    for (std::size_t b = 0; b < a; ++b)
                        if (cs[a].point == cs[b].point)
                            throw std::logic_error("zero_sum_lift: constraint points " + std::to_string(b + 1) + " and " +
                                                   std::to_string(a + 1) + " coincide");
                return finish(x_set(field, cs, lambda), "X'_{" + std::to_string(k - 1) + "}");
            }
            return {field.neg(sum(chosen, k - 1))};
        };
        auto accept = [&](const std::vector<FieldElement>& chosen) {
            for (std::uint32_t i = 0; i < k; ++i)
                for (std::uint32_t j = 0; j < k; ++j) {
                    if (i == j) continue;
                    const FieldElement d = field.sub(chosen[i], chosen[j]);
                    if (d.id == 0 || field.log(d) % lambda != ps(i, j)) return false;
                }
            return true;
        };
        std::vector<FieldElement> chosen;
        const bool found = detail::backtrack(k, candidates, accept, chosen, out.stats, budget,
                                             "zero_sum_lift block " + std::to_string(h));
        if (!found)
            throw SearchExhausted("zero_sum_lift block " + std::to_string(h) + ": search space exhausted; deepest level " +
                                      std::to_string(out.stats.deepest) +
                                      (last_empty.empty() ? std::string() : "; last empty set " + last_empty),
                                  out.stats);
        out.second.push_back(chosen);
    }
    if (auto bad = check_class_conditions(out, psi))
        throw std::logic_error("zero_sum_lift: result fails the class check at block " + std::to_string(bad->h));
    for (const auto& l : out.second)
        if (sum(l, l.size()).id != 0) throw std::logic_error("zero_sum_lift: a lifted block is not zero-sum");
    return out;
}

struct PsiLifting {
    PsiAssignment psi;
    std::uint64_t psi_seed = 0;
    Lifting lifting;
};

/// Runs `strategy(sdf, field, psi)` for psi seeds first_seed, first_seed+1, ...
/// until one succeeds; small fields admit liftings only for a few assignments.
template <typename Strategy>
PsiLifting lift_over_psi_seeds(const StrongDifferenceFamily& sdf, const FiniteField& field, std::uint32_t lambda,
                               std::uint64_t first_seed, std::uint64_t tries, Strategy&& strategy) {
    SearchStats total;
    for (std::uint64_t s = first_seed; s < first_seed + tries; ++s) {
        auto psi = build_psi(sdf, lambda, s);
        try {
            auto lifting = strategy(sdf, field, psi);
            lifting.stats.nodes += total.nodes;
            return PsiLifting{std::move(psi), s, std::move(lifting)};
        } catch (const SearchExhausted& e) {
            total.nodes += e.stats().nodes;
            total.deepest = std::max(total.deepest, e.stats().deepest);
        }
    }
    throw SearchExhausted("no lifting found for psi seeds " + std::to_string(first_seed) + ".." +
                              std::to_string(first_seed + tries - 1) + "; deepest level " + std::to_string(total.deepest),
                          total);
}

/// For a block {0} u 2A, the distinct nonzero elements A in increasing order.
inline std::vector<Element> signed_block_support(const AbelianGroup& group, const GMultiset& block) {
    std::vector<Element> a;
    bool zero_seen = false;
    for (auto [e, mult] : block.entries()) {
        if (e == group.zero()) {
            if (mult != 1) throw std::invalid_argument("signed block: 0 must occur exactly once");
            zero_seen = true;
        } else {
            if (mult != 2) throw std::invalid_argument("signed block: every nonzero element must occur exactly twice");
            a.push_back(e);
        }
    }
    if (!zero_seen) throw std::invalid_argument("signed block: 0 is missing");
    return a;
}

/// The half lists: for each g, one representative of every +- pair in Delta_g.
inline std::vector<std::vector<FieldElement>> signed_half_lists(const StrongDifferenceFamily& sdf, const FiniteField& field,
                                                                const std::vector<std::vector<FieldElement>>& ys) {
    const auto& g = sdf.group;
    std::vector<std::vector<FieldElement>> half(g.order());
    for (std::size_t h = 0; h < sdf.blocks.size(); ++h) {
        const auto a = signed_block_support(g, sdf.blocks[h]);
        const auto& y = ys.at(h);
        if (y.size() != a.size()) throw std::invalid_argument("signed lifting: wrong number of values");
        for (std::size_t t = 0; t < a.size(); ++t) {
            half[a[t].id].push_back(y[t]);
            half[g.neg(a[t]).id].push_back(y[t]);
            half[0].push_back(field.add(y[t], y[t]));
            for (std::size_t u = 0; u < a.size(); ++u) {
                if (u == t) continue;
                const auto d = g.sub(a[t], a[u]).id;
                half[d].push_back(field.sub(y[t], y[u]));
                half[d].push_back(field.add(y[t], y[u]));
            }
        }
    }
    for (auto& l : half) std::sort(l.begin(), l.end());
    return half;
}

/// True iff every half list is a transversal of the classes of order half_lambda.
inline std::optional<Element> check_signed_transversal(const StrongDifferenceFamily& sdf, const FiniteField& field,
                                                       std::uint32_t half_lambda,
                                                       const std::vector<std::vector<FieldElement>>& ys) {
    require_divides_order(field, half_lambda);
    const auto half = signed_half_lists(sdf, field, ys);
    for (std::size_t g = 0; g < half.size(); ++g) {
        std::vector<char> seen(half_lambda, 0);
        bool ok = half[g].size() == half_lambda;
        for (auto x : half[g]) {
            if (!ok) break;
            if (x.id == 0) {
                ok = false;
                break;
            }
            const auto c = field.log(x) % half_lambda;
            if (seen[c]) ok = false;
            seen[c] = 1;
        }
        if (!ok) return Element{static_cast<std::uint32_t>(g)};
    }
    return std::nullopt;
}

/// Per block, the +y values (one per element of A) read off a signed Lifting.
inline std::vector<std::vector<FieldElement>> signed_values(const Lifting& lifting) {
    std::vector<std::vector<FieldElement>> ys;
    for (std::size_t h = 0; h < lifting.sdf.blocks.size(); ++h) {
        const auto& b = lifting.sdf.blocks[h];
        std::vector<FieldElement> y;
        for (std::size_t i = 1; i < b.size(); ++i)
            if (b[i] == b[i - 1] && b[i] != lifting.sdf.group.zero()) y.push_back(lifting.second[h][i - 1]);
        ys.push_back(std::move(y));
    }
    return ys;
}

/// Builds the Lifting (0 -> 0, a -> +y_a then -y_a) from per-block values.
inline Lifting make_signed_lifting(const StrongDifferenceFamily& sdf, const FiniteField& field,
                                   const std::vector<std::vector<FieldElement>>& ys) {
    Lifting out{sdf, field, {}, "signed", {}};
    for (std::size_t h = 0; h < sdf.blocks.size(); ++h) {
        const auto& b = sdf.blocks[h];
        const auto a = signed_block_support(sdf.group, b);
        std::vector<FieldElement> second;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] == sdf.group.zero()) {
                second.push_back(field.zero());
                continue;
            }
            const auto t = static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), b[i]) - a.begin());
            const bool first_copy = i == 0 || b[i - 1] != b[i];
            second.push_back(first_copy ? ys.at(h).at(t) : field.neg(ys.at(h).at(t)));
        }
        out.second.push_back(std::move(second));
    }
    return out;
}

/// Searches values y_a so that each half list is a class transversal.
inline Lifting signed_lift(const StrongDifferenceFamily& sdf, const FiniteField& field, std::uint32_t half_lambda,
                           std::uint64_t budget = kDefaultBudget, std::uint64_t seed = 0) {
    if (field.characteristic() == 2) throw std::invalid_argument("signed_lift: q must be odd");
    if (half_lambda == 0 || ((field.order() - 1) / 2) % half_lambda != 0)
        throw std::invalid_argument("signed_lift: -1 must lie in C^" + std::to_string(half_lambda) +
                                    " (half_lambda must divide (q-1)/2)");
    if (2ULL * half_lambda != sdf.lambda)
        throw std::invalid_argument("signed_lift: 2*half_lambda must equal the SDF lambda " + std::to_string(sdf.lambda));
    const auto& g = sdf.group;
    std::vector<std::vector<Element>> supports;
    for (const auto& b : sdf.blocks) supports.push_back(signed_block_support(g, b));
    struct Var {
        std::size_t h, t;
    };
    std::vector<Var> vars;
    for (std::size_t h = 0; h < supports.size(); ++h)
        for (std::size_t t = 0; t < supports[h].size(); ++t) vars.push_back({h, t});

    const std::uint32_t hl = half_lambda;
    const std::uint32_t half_order = (field.order() - 1) / 2;
    std::vector<char> used(g.order() * std::size_t{hl}, 0);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> undo(vars.size());
    std::vector<FieldElement> y(vars.size());
    std::mt19937_64 rng(seed);

    // Claims the class of every half-list entry created by variable v; rolls back on conflict.
    auto place = [&](std::size_t v) {
        const auto [h, t] = vars[v];
        const Element a = supports[h][t];
        auto& log = undo[v];
        log.clear();
        auto claim = [&](Element at, FieldElement x) {
            if (x.id == 0) return false;
            const std::uint32_t c = field.log(x) % hl;
            auto& slot = used[std::size_t{at.id} * hl + c];
            if (slot) return false;
            slot = 1;
            log.emplace_back(at.id, c);
            return true;
        };
        bool ok = claim(a, y[v]) && claim(g.neg(a), y[v]) && claim(g.zero(), field.add(y[v], y[v]));
        for (std::size_t u = v - t; ok && u < v; ++u) {
            const Element b = supports[h][vars[u].t];
            ok = claim(g.sub(a, b), field.sub(y[v], y[u])) && claim(g.sub(a, b), field.add(y[v], y[u])) &&
                 claim(g.sub(b, a), field.sub(y[u], y[v])) && claim(g.sub(b, a), field.add(y[u], y[v]));
        }
        if (!ok) {
            for (auto [at, c] : log) used[std::size_t{at} * hl + c] = 0;
            log.clear();
        }
        return ok;
    };
    auto release = [&](std::size_t v) {
        for (auto [at, c] : undo[v]) used[std::size_t{at} * hl + c] = 0;
        undo[v].clear();
    };
    auto options_for = [&](std::size_t v) {
        // Scaling a block by C^hl preserves classes, so its first value can be a class representative.
        const std::uint32_t count = vars[v].t == 0 ? hl : half_order;
        std::vector<FieldElement> xs;
        for (std::uint32_t i = 0; i < count; ++i) xs.push_back(field.exp(i));
        if (seed) seeded_shuffle(xs, rng);
        return xs;
    };

    Lifting out;
    SearchStats stats;
    std::vector<std::vector<FieldElement>> options(vars.size());
    std::vector<std::size_t> cursor(vars.size(), 0);
    bool found = vars.empty();
    if (!found) {
        std::size_t level = 0;
        options[0] = options_for(0);
        while (true) {
            if (cursor[level] >= options[level].size()) {
                if (level == 0) break;
                --level;
                release(level);
                ++cursor[level];
                continue;
            }
            if (++stats.nodes > budget)
                throw SearchExhausted("signed_lift: budget of " + std::to_string(budget) +
                                          " nodes exhausted; deepest level " + std::to_string(stats.deepest),
                                      stats);
            y[level] = options[level][cursor[level]];
            if (!place(level)) {
                ++cursor[level];
                continue;
            }
            stats.deepest = std::max(stats.deepest, level + 1);
            if (level + 1 == vars.size()) {
                found = true;
                break;
            }
            ++level;
            options[level] = options_for(level);
            cursor[level] = 0;
        }
    }
    if (!found)
        throw SearchExhausted("signed_lift: no transversal lifting exists in the searched space; deepest level " +
                                  std::to_string(stats.deepest),
                              stats);
    std::vector<std::vector<FieldElement>> ys(supports.size());
    for (std::size_t v = 0; v < vars.size(); ++v) ys[vars[v].h].push_back(y[v]);
    if (auto bad = check_signed_transversal(sdf, field, hl, ys))
        throw std::logic_error("signed_lift: result fails the transversal check at g=" + std::to_string(bad->id));
    out = make_signed_lifting(sdf, field, ys);
    out.stats = stats;
    return out;
}

/// A relative difference family over G x F_q together with its carrier.
struct ProductFamily {
    ProductCarrier carrier;
    RelativeDifferenceFamily rdf;
};

inline PartialSpread base_spread(const ProductCarrier& carrier) {
    return PartialSpread(carrier.group(), {carrier.base_subgroup()});
}

struct MultiplierSet {
    FiniteField field;
    std::vector<FieldElement> elements;
};

/// r^(step i) for 0 <= i < count.
inline MultiplierSet power_multipliers(const FiniteField& f, std::uint64_t step, std::uint64_t count) {
    MultiplierSet m{f, {}};
    for (std::uint64_t i = 0; i < count; ++i) m.elements.push_back(f.exp(static_cast<std::int64_t>(step * i)));
    return m;
}

/// The index-lambda subgroup C^lambda; suits liftings whose Delta_g meets each class once.
inline MultiplierSet class_multipliers(const FiniteField& f, std::uint64_t lambda) {
    require_divides_order(f, lambda);
    return power_multipliers(f, lambda, (f.order() - 1) / lambda);
}

/// Suits signed liftings, where Delta_g is {+-y} with one y per class of index half_lambda.
inline MultiplierSet signed_multipliers(const FiniteField& f, std::uint64_t half_lambda) {
    if (half_lambda == 0 || (f.order() - 1) % (2 * half_lambda) != 0)
        throw std::invalid_argument("signed_multipliers: 2*half_lambda must divide q-1");
    return power_multipliers(f, half_lambda, (f.order() - 1) / (2 * half_lambda));
}

struct MultiplierOutcome {
    bool ok = false;
    std::optional<Element> failing_g;
    std::string reason;
    std::optional<ProductFamily> family;
    RdfVerdict verdict;
};

/// Blocks l(B_h) o m for every m in M; checks Delta_g * M = F_q^* once over for every g.
inline MultiplierOutcome apply_multipliers(const Lifting& lifting, const MultiplierSet& m) {
    MultiplierOutcome out;
    const auto& f = lifting.field;
    if (!(m.field == f)) throw std::invalid_argument("apply_multipliers: multiplier field differs from the lifting field");
    const std::uint64_t lambda = lifting.sdf.lambda;
    if (lambda == 0 || (f.order() - 1) % lambda != 0 || m.elements.size() != (f.order() - 1) / lambda)
        throw std::invalid_argument("apply_multipliers: |M| must be (q-1)/lambda = " +
                                    std::to_string(lambda ? (f.order() - 1) / lambda : 0) + ", got " +
                                    std::to_string(m.elements.size()));
    for (auto x : m.elements) {
        f.check(x);
        if (x.id == 0) throw std::invalid_argument("apply_multipliers: 0 is not a multiplier");
    }
    const auto carrier = lifting_carrier(lifting);
    const auto lifted = lifted_blocks(lifting);
    const auto fibres = split_by_base(carrier, delta_family(carrier.group(), lifted));
    for (auto g : lifting.sdf.group.elements()) {
        std::vector<std::uint32_t> hits(f.order(), 0);
        auto it = fibres.find(g);
        bool ok = it != fibres.end();
        if (ok) {
            for (auto d : it->second) {
                if (d.id == 0) ok = false;
                for (auto x : m.elements) ++hits[f.mul(d, x).id];
            }
            for (std::uint32_t id = 1; ok && id < f.order(); ++id) ok = hits[id] == 1;
        }
        if (!ok) {
            out.failing_g = g;
            out.reason = "Delta_g * M does not cover F_q^* exactly once for g=" + std::to_string(g.id);
            return out;
        }
    }
    RelativeDifferenceFamily rdf;
    rdf.group = carrier.group();
    rdf.forbidden = base_spread(carrier);
    rdf.k = lifting.sdf.k;
    rdf.lambda = 1;
    for (const auto& b : lifted)
        for (auto x : m.elements) {
            std::vector<Element> pts;
            for (auto e : b) pts.push_back(carrier.pair(carrier.base_part(e), f.mul(carrier.field_part(e), x)));
            rdf.blocks.emplace_back(std::move(pts));
        }
    out.verdict = verify_rdf(rdf);
    rdf.additive = out.verdict.is_additive;
    out.ok = out.verdict.is_rdf;
    if (!out.ok) out.reason = "output fails verify_rdf: " + out.verdict.reason;
    out.family = ProductFamily{carrier, std::move(rdf)};
    return out;
}

/// B + (0, -sigma_B / k) for every block, where sigma_B sums the field coordinates.
inline ProductFamily zero_sum_adjust(const ProductFamily& fam) {
    const auto& f = fam.carrier.field();
    const auto k = fam.rdf.k;
    if (k % f.characteristic() == 0)
        throw std::invalid_argument("zero_sum_adjust: k = " + std::to_string(k) + " is zero in GF(" +
                                    std::to_string(f.order()) + ")");
    const FieldElement kinv = f.inv(f.from_int(k));
    ProductFamily out = fam;
    out.rdf.blocks.clear();
    for (const auto& b : fam.rdf.blocks) {
        FieldElement s = f.zero();
        for (auto e : b) s = f.add(s, fam.carrier.field_part(e));
        const FieldElement shift = f.neg(f.mul(s, kinv));
        std::vector<Element> pts;
        for (auto e : b) pts.push_back(fam.carrier.pair(fam.carrier.base_part(e), f.add(fam.carrier.field_part(e), shift)));
        out.rdf.blocks.emplace_back(std::move(pts));
    }
    const auto v = verify_rdf(out.rdf);
    out.rdf.additive = v.is_additive;
    return out;
}

/// F o S over G x GF(q^n), S a transversal of the cosets of F_q^* in F_{q^n}^*.
inline ProductFamily extend_field(const ProductFamily& fam, unsigned n, std::optional<Polynomial> modulus = std::nullopt) {
    if (n == 0) throw std::invalid_argument("extend_field: degree must be >= 1");
    if (!(fam.rdf.forbidden == base_spread(fam.carrier)))
        throw std::invalid_argument("extend_field: forbidden set must be G x {0}");
    if (n == 1) return fam;
    const auto& small = fam.carrier.field();
    const FiniteField big = make_field(small.characteristic(), static_cast<std::int64_t>(small.degree()) * n, std::move(modulus));
    const auto embed = subfield_embed(big, small);
    const auto reps = coset_reps(big, CosetSpec::of_index((big.order() - 1) / (small.order() - 1)));
    ProductCarrier carrier(fam.carrier.base(), big);
    RelativeDifferenceFamily rdf;
    rdf.group = carrier.group();
    rdf.forbidden = base_spread(carrier);
    rdf.k = fam.rdf.k;
    rdf.lambda = fam.rdf.lambda;
    for (const auto& b : fam.rdf.blocks)
        for (auto s : reps) {
            std::vector<Element> pts;
            for (auto e : b)
                pts.push_back(carrier.pair(fam.carrier.base_part(e), big.mul(s, embed(fam.carrier.field_part(e)))));
            rdf.blocks.emplace_back(std::move(pts));
        }
    rdf.additive = verify_rdf(rdf).is_additive;
    return ProductFamily{std::move(carrier), std::move(rdf)};
}

/// The least (lexicographic by id) zero-sum k-subset of F_q.
inline std::vector<FieldElement> least_zero_sum_subset(const FiniteField& f, std::uint32_t k) {
    if (k == 0 || k > f.order()) throw std::invalid_argument("least_zero_sum_subset: need 1 <= k <= q");
    std::vector<FieldElement> pick;
    std::vector<char> in(f.order(), 0);
    // Choose k-1 increasing ids; the last element is forced to minus their sum.
    std::function<bool(std::uint32_t, FieldElement)> rec = [&](std::uint32_t start, FieldElement s) -> bool {
        if (pick.size() + 1 == k) {
            const FieldElement last = f.neg(s);
            if (in[last.id] || (!pick.empty() && last < pick.back())) return false;
            pick.push_back(last);
            return true;
        }
        for (std::uint32_t id = start; id < f.order(); ++id) {
            pick.push_back(FieldElement{id});
            in[id] = 1;
            if (rec(id + 1, f.add(s, FieldElement{id}))) return true;
            in[id] = 0;
            pick.pop_back();
        }
        return false;
    };
    if (!rec(0, f.zero())) throw std::invalid_argument("no zero-sum " + std::to_string(k) + "-subset of GF(" + std::to_string(f.order()) + ")");
    return pick;
}

/// Lifts every block with one fixed k-set L and multiplies by all of F_q^*
/// (unsigned) or by a transversal of {1,-1} (signed, halving lambda).
inline ProductFamily simple_lift(const StrongDifferenceFamily& sdf, const FiniteField& field,
                                 std::optional<std::vector<FieldElement>> L, bool is_signed) {
    const std::uint32_t k = sdf.k;
    if (sdf.group.order() != k) throw std::invalid_argument("simple_lift: the group order must equal k");
    if (field.order() <= k)
        throw std::invalid_argument("simple_lift: need q > k; q=" + std::to_string(field.order()) + ", k=" + std::to_string(k));
    if (!std::all_of(sdf.blocks.begin(), sdf.blocks.end(), [&](const GMultiset& b) { return is_zero_sum(sdf.group, b.elements()); }))
        throw std::invalid_argument("simple_lift: the SDF must be additive");
    if (is_signed && (field.characteristic() == 2 || sdf.lambda % 2 != 0))
        throw std::invalid_argument("simple_lift: signed mode needs odd q and even lambda");
    std::vector<std::vector<FieldElement>> second;
    if (is_signed) {
        // L = {0} u {+-y_1, ..., +-y_m}; each block {0} u 2A takes 0 and one +- pair per element of A.
        std::vector<FieldElement> ys;
        if (L) {
            std::vector<FieldElement> sorted = *L;
            std::sort(sorted.begin(), sorted.end());
            if (sorted.size() != k || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw std::invalid_argument("simple_lift: L must be a k-set");
            if (!std::binary_search(sorted.begin(), sorted.end(), field.zero()))
                throw std::invalid_argument("simple_lift: a signed L must contain 0");
            for (auto x : sorted) {
                if (x.id == 0) continue;
                if (!std::binary_search(sorted.begin(), sorted.end(), field.neg(x)))
                    throw std::invalid_argument("simple_lift: a signed L must be symmetric");
                if (field.log(x) < (field.order() - 1) / 2) ys.push_back(x);
            }
        } else {
            for (std::uint32_t i = 0; i < (k - 1) / 2; ++i) ys.push_back(field.exp(i));
        }
        for (const auto& b : sdf.blocks) {
            const auto a = signed_block_support(sdf.group, b);
            if (a.size() > ys.size()) throw std::invalid_argument("simple_lift: L has too few +- pairs");
        }
        std::vector<std::vector<FieldElement>> per_block(sdf.blocks.size());
        for (std::size_t h = 0; h < sdf.blocks.size(); ++h)
            per_block[h].assign(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(signed_block_support(sdf.group, sdf.blocks[h]).size()));
        second = make_signed_lifting(sdf, field, per_block).second;
    } else {
        std::vector<FieldElement> l = L ? *L : least_zero_sum_subset(field, k);
        if (l.size() != k) throw std::invalid_argument("simple_lift: L must have k elements");
        std::vector<FieldElement> sorted = l;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("simple_lift: L must be a set");
        FieldElement s = field.zero();
        for (auto x : l) s = field.add(s, x);
        if (s.id != 0) throw std::invalid_argument("simple_lift: L is not zero-sum");
        second.assign(sdf.blocks.size(), l);
    }
    Lifting lifting{sdf, field, std::move(second), is_signed ? "simple-signed" : "simple", {}};
    const auto carrier = lifting_carrier(lifting);
    const auto lifted = lifted_blocks(lifting);
    const auto multipliers =
        is_signed ? coset_reps(field, CosetSpec::pm_one_in(1)) : coset_reps(field, CosetSpec::of_index(field.order() - 1));
    RelativeDifferenceFamily rdf;
    rdf.group = carrier.group();
    rdf.forbidden = base_spread(carrier);
    rdf.k = k;
    rdf.lambda = is_signed ? sdf.lambda / 2 : sdf.lambda;
    for (const auto& b : lifted)
        for (auto m : multipliers) {
            std::vector<Element> pts;
            for (auto e : b) pts.push_back(carrier.pair(carrier.base_part(e), field.mul(carrier.field_part(e), m)));
            rdf.blocks.emplace_back(std::move(pts));
        }
    rdf.additive = verify_rdf(rdf).is_additive;
    return ProductFamily{carrier, std::move(rdf)};
}

}  // namespace srd
