#pragma once

// Block designs: development of difference families, pair-coverage and
// super-regularity verification, affine geometries and line closures.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "families.hpp"
#include "gf.hpp"

namespace srd {

/// Blocks are stored flat with stride k, each sorted increasingly.
class Design {
public:
    Design() = default;
    Design(std::uint64_t v, std::uint32_t k, std::uint64_t lambda, std::optional<AbelianGroup> group = std::nullopt)
        : group_(std::move(group)), v_(v), k_(k), lambda_(lambda) {
        if (k_ == 0) throw std::invalid_argument("Design: k must be >= 1");
        if (group_ && group_->order() != v_) throw std::invalid_argument("Design: group order differs from v");
    }

    const std::optional<AbelianGroup>& group() const noexcept { return group_; }
    std::uint64_t v() const noexcept { return v_; }
    std::uint32_t k() const noexcept { return k_; }
    std::uint64_t lambda() const noexcept { return lambda_; }
    std::size_t block_count() const noexcept { return flat_.size() / k_; }
    std::span<const std::uint32_t> block(std::size_t i) const {
        return std::span<const std::uint32_t>(flat_).subspan(i * k_, k_);
    }
    const std::vector<std::uint32_t>& flat() const noexcept { return flat_; }

    void reserve(std::size_t blocks) { flat_.reserve(blocks * k_); }

    void add_block(std::span<const std::uint32_t> pts) {
        if (pts.size() != k_)
            throw std::invalid_argument("Design: block of size " + std::to_string(pts.size()) + ", expected " +
                                        std::to_string(k_));
        const auto start = flat_.size();
        flat_.insert(flat_.end(), pts.begin(), pts.end());
        auto first = flat_.begin() + static_cast<std::ptrdiff_t>(start);
        std::sort(first, flat_.end());
        const bool bad_range = flat_.back() >= v_;
        const bool repeated = std::adjacent_find(first, flat_.end()) != flat_.end();
        if (bad_range || repeated) {
            flat_.resize(start);
            throw std::invalid_argument(bad_range ? "Design: point outside [0, v)" : "Design: block repeats a point");
        }
    }
    void add_block(std::span<const Element> pts) {
        std::vector<std::uint32_t> ids;
        for (auto e : pts) ids.push_back(e.id);
        add_block(std::span<const std::uint32_t>(ids));
    }
    void add_block(std::initializer_list<std::uint32_t> pts) {
        add_block(std::span<const std::uint32_t>(pts.begin(), pts.size()));
    }

    /// Copy with block i removed.
    Design without_block(std::size_t i) const {
        Design d = *this;
        d.flat_.erase(d.flat_.begin() + static_cast<std::ptrdiff_t>(i * k_),
                      d.flat_.begin() + static_cast<std::ptrdiff_t>((i + 1) * k_));
        return d;
    }

    /// Replaces block i (the new block is sorted and validated).
    void replace_block(std::size_t i, std::span<const std::uint32_t> pts) {
        Design probe(v_, k_, lambda_);
        probe.add_block(pts);
        std::copy(probe.flat_.begin(), probe.flat_.end(), flat_.begin() + static_cast<std::ptrdiff_t>(i * k_));
    }

    friend bool operator==(const Design&, const Design&) = default;

private:
    std::optional<AbelianGroup> group_;
    std::uint64_t v_ = 0;
    std::uint32_t k_ = 1;
    std::uint64_t lambda_ = 0;
    std::vector<std::uint32_t> flat_;
};

/// Thread count from SRDESIGN_THREADS (default 1).
inline unsigned design_threads() {
    if (const char* s = std::getenv("SRDESIGN_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(s, &end, 10);
        if (end != s && n >= 1 && n <= 256) return static_cast<unsigned>(n);
    }
    return 1;
}

/// All translates of every base block, then `lambda_copies` copies of every coset of every spread member.
inline Design develop(const RelativeDifferenceFamily& rdf, std::optional<std::uint64_t> lambda_copies = std::nullopt) {
    const auto verdict = verify_rdf(rdf);
    if (!verdict.is_rdf) throw std::invalid_argument("develop: the family does not verify: " + verdict.reason);
    const auto& g = rdf.group;
    const std::uint64_t copies = lambda_copies.value_or(rdf.lambda);
    Design d(g.order(), rdf.k, rdf.lambda, g);
    std::size_t count = rdf.blocks.size() * g.order();
    for (const auto& m : rdf.forbidden.members()) count += copies * (g.order() / m.order());
    d.reserve(count);
    std::vector<std::uint32_t> pts(rdf.k);
    for (const auto& b : rdf.blocks)
        for (auto t : g.elements()) {
            for (std::size_t i = 0; i < b.size(); ++i) pts[i] = g.add(b[i], t).id;
            d.add_block(pts);
        }
    for (const auto& m : rdf.forbidden.members()) {
        if (m.order() != rdf.k)
            throw std::invalid_argument("develop: spread member of order " + std::to_string(m.order()) +
                                        " cannot serve as a block of size " + std::to_string(rdf.k));
        for (const auto& c : cosets(m))
            for (std::uint64_t r = 0; r < copies; ++r) d.add_block(std::span<const Element>(c));
    }
    return d;
}

struct DesignVerdict {
    bool is_design = false;
    std::optional<std::uint64_t> lambda_found;
    bool is_simple = false;
    std::uint64_t max_block_multiplicity = 0;
    std::uint64_t pair_incidences = 0;  // sum over blocks of C(k,2)
    std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
    std::uint64_t witness_count = 0;
    std::optional<std::uint64_t> replication;  // common r when every point lies on the same number of blocks
    std::string reason;
};

inline std::size_t pair_index(std::uint64_t v, std::uint32_t a, std::uint32_t b) {
    // Row a of the strict upper triangle starts at a*(2v-a-1)/2.
    return static_cast<std::size_t>(static_cast<std::uint64_t>(a) * (2 * v - a - 1) / 2 + (b - a - 1));
}

/// Exact pair coverage over all C(v,2) pairs, plus a simplicity check.
inline DesignVerdict verify_design(const Design& d) {
    DesignVerdict out;
    const std::uint64_t v = d.v();
    const std::uint32_t k = d.k();
    const std::size_t b = d.block_count();
    if (v < 2) {
        out.reason = "fewer than two points";
        return out;
    }
    const std::size_t pairs = static_cast<std::size_t>(v * (v - 1) / 2);
    std::vector<std::uint32_t> count(pairs, 0);
    const unsigned threads = std::min<unsigned>(design_threads(), static_cast<unsigned>(std::max<std::size_t>(b, 1)));
    auto tally = [&](std::vector<std::uint32_t>& c, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto blk = d.block(i);
            for (std::uint32_t x = 0; x < k; ++x)
                for (std::uint32_t y = x + 1; y < k; ++y) ++c[pair_index(v, blk[x], blk[y])];
        }
    };
    if (threads <= 1) {
        tally(count, 0, b);
    } else {
        std::vector<std::vector<std::uint32_t>> local(threads - 1, std::vector<std::uint32_t>(pairs, 0));
        std::vector<std::thread> pool;
        const std::size_t chunk = (b + threads - 1) / threads;
        for (unsigned t = 1; t < threads; ++t)
            pool.emplace_back(tally, std::ref(local[t - 1]), std::min(b, t * chunk), std::min(b, (t + 1) * chunk));
        tally(count, 0, std::min(b, chunk));
        for (auto& th : pool) th.join();
        for (const auto& l : local)
            for (std::size_t i = 0; i < pairs; ++i) count[i] += l[i];
    }
    out.pair_incidences = static_cast<std::uint64_t>(b) * k * (k - 1) / 2;

    // Expected lambda: the declared one, else the average if it is integral.
    std::optional<std::uint64_t> expected;
    if (d.lambda() > 0) {
        expected = d.lambda();
    } else if (out.pair_incidences % pairs == 0) {
        expected = out.pair_incidences / pairs;
    }
    bool constant = expected.has_value();
    if (expected) {
        for (std::uint32_t a = 0; a < v && constant; ++a)
            for (std::uint32_t c = a + 1; c < v; ++c) {
                const auto n = count[pair_index(v, a, c)];
                if (n != *expected) {
                    constant = false;
                    out.witness = std::make_pair(a, c);
                    out.witness_count = n;
                    break;
                }
            }
    } else {
        out.witness = std::make_pair(0U, 1U);
        out.witness_count = count[0];
    }
    if (constant) {
        out.lambda_found = expected;
    } else {
        out.reason = expected ? "pair {" + std::to_string(out.witness->first) + "," + std::to_string(out.witness->second) +
                                    "} lies on " + std::to_string(out.witness_count) + " blocks, expected " +
                                    std::to_string(*expected)
                              : "pair incidences are not a multiple of C(v,2)";
    }

    std::vector<std::uint64_t> rep(v, 0);
    for (auto p : d.flat()) ++rep[p];
    if (std::all_of(rep.begin(), rep.end(), [&](std::uint64_t r) { return r == rep[0]; })) out.replication = rep[0];

    std::vector<std::span<const std::uint32_t>> blocks;
    blocks.reserve(b);
    for (std::size_t i = 0; i < b; ++i) blocks.push_back(d.block(i));
    auto less = [](std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    };
    std::sort(blocks.begin(), blocks.end(), less);
    std::uint64_t run = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        run = (i > 0 && std::equal(blocks[i].begin(), blocks[i].end(), blocks[i - 1].begin())) ? run + 1 : 1;
        out.max_block_multiplicity = std::max(out.max_block_multiplicity, run);
    }
    out.is_simple = out.max_block_multiplicity <= 1;
    out.is_design = constant;
    return out;
}

struct SuperRegularVerdict {
    bool is_regular = false;
    bool is_strictly_additive = false;
    bool is_super_regular = false;
    std::size_t orbits = 0;
    std::string reason;
};

/// Least (lexicographic) translate B - b over b in B: a canonical orbit label.
inline std::vector<std::uint32_t> orbit_label(const AbelianGroup& g, std::span<const std::uint32_t> block) {
    std::vector<std::uint32_t> best, cur(block.size());
    for (auto b : block) {
        for (std::size_t i = 0; i < block.size(); ++i) cur[i] = g.sub(Element{block[i]}, Element{b}).id;
        std::sort(cur.begin(), cur.end());
        if (best.empty() || cur < best) best = cur;
    }
    return best;
}

/// Regularity: each translation orbit present is present in full, every member
/// with the same multiplicity. Strict additivity: every block is zero-sum.
inline SuperRegularVerdict verify_super_regular(const Design& d, const AbelianGroup& g) {
    if (g.order() != d.v() || (d.group() && !(*d.group() == g)))
        throw std::invalid_argument("verify_super_regular: design points are not the elements of " + g.to_string());
    SuperRegularVerdict out;
    out.is_strictly_additive = true;
    std::vector<Element> tmp(d.k());
    for (std::size_t i = 0; i < d.block_count() && out.is_strictly_additive; ++i) {
        const auto blk = d.block(i);
        for (std::size_t j = 0; j < blk.size(); ++j) tmp[j] = Element{blk[j]};
        if (!is_zero_sum(g, tmp)) {
            out.is_strictly_additive = false;
            out.reason = "block " + std::to_string(i) + " is not zero-sum";
        }
    }

    std::vector<std::span<const std::uint32_t>> blocks;
    for (std::size_t i = 0; i < d.block_count(); ++i) blocks.push_back(d.block(i));
    auto less = [](std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    };
    std::sort(blocks.begin(), blocks.end(), less);
    struct Orbit {
        std::uint64_t distinct = 0;
        std::uint64_t stabilizer = 0;
        std::optional<std::uint64_t> multiplicity;
        bool uniform = true;
    };
    std::map<std::vector<std::uint32_t>, Orbit> orbits;
    for (std::size_t i = 0; i < blocks.size();) {
        std::size_t j = i + 1;
        while (j < blocks.size() && std::equal(blocks[j].begin(), blocks[j].end(), blocks[i].begin())) ++j;
        const std::uint64_t mult = j - i;
        auto label = orbit_label(g, blocks[i]);
        auto& o = orbits[label];
        if (o.distinct == 0) {
            // |Stab(B)| = number of b in B whose translate B - b equals the label.
            std::vector<std::uint32_t> cur(blocks[i].size());
            for (auto b : blocks[i]) {
                for (std::size_t t = 0; t < cur.size(); ++t) cur[t] = g.sub(Element{blocks[i][t]}, Element{b}).id;
                std::sort(cur.begin(), cur.end());
                if (cur == label) ++o.stabilizer;
            }
        }
        ++o.distinct;
        if (o.multiplicity && *o.multiplicity != mult) o.uniform = false;
        o.multiplicity = mult;
        i = j;
    }
    out.orbits = orbits.size();
    out.is_regular = true;
    for (const auto& [label, o] : orbits) {
        const std::uint64_t size = g.order() / o.stabilizer;
        if (o.distinct != size || !o.uniform) {
            out.is_regular = false;
            std::string l;
            for (auto x : label) l += (l.empty() ? "" : ",") + std::to_string(x);
            out.reason = "orbit of {" + l + "} has " + std::to_string(o.distinct) + " of " + std::to_string(size) +
                         " translates" + (o.uniform ? "" : " with unequal multiplicities");
            break;
        }
    }
    out.is_super_regular = out.is_regular && out.is_strictly_additive;
    return out;
}

/// Points and lines of AG(n, q), q a prime power, over the group (Z_p^e)^n.
/// Point (x_1, ..., x_n) has id sum x_i * q^(n-i), x_i read as field ids.
inline Design ag_design(unsigned n, std::uint64_t q) {
    if (n < 2) throw std::invalid_argument("ag_design: n must be >= 2");
    const auto pp = as_prime_power(q);
    if (!pp) throw std::invalid_argument("ag_design: " + std::to_string(q) + " is not a prime power");
    const auto f = make_field(static_cast<std::int64_t>(pp->prime), pp->exponent);
    std::uint64_t v = 1;
    for (unsigned i = 0; i < n; ++i) {
        v *= q;
        if (v > 0xFFFFFFFFULL) throw std::invalid_argument("ag_design: too many points");
    }
    std::vector<std::uint32_t> orders(static_cast<std::size_t>(n) * pp->exponent, static_cast<std::uint32_t>(pp->prime));
    Design d(v, static_cast<std::uint32_t>(q), 1, AbelianGroup(orders));
    auto coords = [&](std::uint64_t id) {
        std::vector<FieldElement> c(n);
        for (unsigned i = n; i-- > 0;) {
            c[i] = FieldElement{static_cast<std::uint32_t>(id % q)};
            id /= q;
        }
        return c;
    };
    auto point = [&](const std::vector<FieldElement>& c) {
        std::uint64_t id = 0;
        for (auto x : c) id = id * q + x.id;
        return static_cast<std::uint32_t>(id);
    };
    d.reserve(static_cast<std::size_t>(v / q * ((v - 1) / (q - 1))));
    std::vector<char> seen(v);
    std::vector<std::uint32_t> line(q);
    for (std::uint64_t did = 1; did < v; ++did) {
        const auto dir = coords(did);
        const auto lead = std::find_if(dir.begin(), dir.end(), [](FieldElement x) { return x.id != 0; });
        if (lead->id != 1) continue;  // one direction per projective point
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint64_t a = 0; a < v; ++a) {
            if (seen[a]) continue;
            const auto base = coords(a);
            for (std::uint32_t t = 0; t < q; ++t) {
                std::vector<FieldElement> c(n);
                for (unsigned i = 0; i < n; ++i) c[i] = f.add(base[i], f.mul(FieldElement{t}, dir[i]));
                line[t] = point(c);
                seen[line[t]] = 1;
            }
            d.add_block(line);
        }
    }
    return d;
}

/// For a Steiner design, the block through each pair of points.
class LineIndex {
public:
    explicit LineIndex(const Design& d) : d_(&d), v_(d.v()) {
        if (v_ < 2) throw std::invalid_argument("LineIndex: need at least two points");
        const std::size_t pairs = static_cast<std::size_t>(v_ * (v_ - 1) / 2);
        line_.assign(pairs, kNone);
        for (std::size_t i = 0; i < d.block_count(); ++i) {
            const auto b = d.block(i);
            for (std::size_t x = 0; x < b.size(); ++x)
                for (std::size_t y = x + 1; y < b.size(); ++y) {
                    auto& slot = line_[pair_index(v_, b[x], b[y])];
                    if (slot != kNone) throw std::invalid_argument("LineIndex: a pair lies on two blocks (lambda > 1)");
                    slot = static_cast<std::uint32_t>(i);
                }
        }
        for (auto s : line_)
            if (s == kNone) throw std::invalid_argument("LineIndex: a pair lies on no block");
    }

    std::uint32_t through(std::uint32_t a, std::uint32_t b) const {
        if (a == b) throw std::invalid_argument("LineIndex: equal points");
        if (a > b) std::swap(a, b);
        return line_[pair_index(v_, a, b)];
    }
    const Design& design() const { return *d_; }

private:
    static constexpr std::uint32_t kNone = 0xFFFFFFFFU;
    const Design* d_;
    std::uint64_t v_;
    std::vector<std::uint32_t> line_;
};

/// Least point set containing blocks b1 and b2 and closed under joining two points by their block.
inline std::vector<std::uint32_t> closure(const LineIndex& index, std::size_t b1, std::size_t b2) {
    const Design& d = index.design();
    if (b1 >= d.block_count() || b2 >= d.block_count()) throw std::out_of_range("closure: block index out of range");
    if (b1 == b2) throw std::invalid_argument("closure: blocks are equal");
    const auto x = d.block(b1);
    const auto y = d.block(b2);
    std::vector<std::uint32_t> common;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
    if (common.empty()) throw std::invalid_argument("closure: blocks are disjoint");
    if (common.size() != 1) throw std::invalid_argument("closure: blocks share more than one point");

    std::vector<char> in(d.v(), 0);
    std::vector<std::uint32_t> pts;
    auto add = [&](std::uint32_t p) {
        if (!in[p]) {
            in[p] = 1;
            pts.push_back(p);
        }
    };
    for (auto p : x) add(p);
    for (auto p : y) add(p);
    // Each new point is joined to every earlier one exactly once.
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (auto p : d.block(index.through(pts[i], pts[j]))) add(p);
    std::sort(pts.begin(), pts.end());
    return pts;
}

inline std::vector<std::uint32_t> closure(const Design& d, std::size_t b1, std::size_t b2) {
    return closure(LineIndex(d), b1, b2);
}

struct AnomalyVerdict {
    bool anomalous = false;
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // block indices
    std::size_t closure_size = 0;
    std::size_t pairs_scanned = 0;
    std::string summary;  // "anomalous" or "inconclusive"
};

/// Scans pairs of blocks through point 0, in block order, for a closure of size != p^2.
inline AnomalyVerdict anomaly_witness(const Design& d, std::uint64_t p, std::size_t cap = 10'000) {
    std::uint64_t v = 1;
    unsigned n = 0;
    while (v < d.v() && p >= 2) {
        v *= p;
        ++n;
    }
    if (p < 2 || !is_prime(p) || v != d.v() || n < 1 || d.k() != p)
        throw std::invalid_argument("anomaly_witness: parameters are not of the form (p^n, p, 1)");
    const LineIndex index(d);
    std::vector<std::size_t> through_origin;
    for (std::size_t i = 0; i < d.block_count(); ++i)
        if (d.block(i).front() == 0) through_origin.push_back(i);
    AnomalyVerdict out;
    out.summary = "inconclusive";
    for (std::size_t a = 0; a < through_origin.size(); ++a)
        for (std::size_t b = a + 1; b < through_origin.size(); ++b) {
            if (out.pairs_scanned >= cap) return out;
            ++out.pairs_scanned;
            const auto c = closure(index, through_origin[a], through_origin[b]);
            if (c.size() != p * p) {
                out.anomalous = true;
                out.witness = std::make_pair(through_origin[a], through_origin[b]);
                out.closure_size = c.size();
                out.summary = "anomalous";
                return out;
            }
        }
    return out;
}

/// AG(m,p) with the lines inside {x_{n+1} = ... = x_m = 0} replaced by the
/// blocks of a 2-(p^n,p,1) design on that subspace (listed first).
inline Design subspace_replace(unsigned m, unsigned n, std::uint64_t p, const Design& inner) {
    if (m < n) throw std::invalid_argument("subspace_replace: m must be >= n");
    if (inner.k() != p || inner.v() != ipow(p, n))
        throw std::invalid_argument("subspace_replace: inner design must be a 2-(p^n,p,1) design");
    if (m == n) return inner;
    const std::uint64_t scale = ipow(p, m - n);
    const Design outer = ag_design(m, p);
    Design d(outer.v(), outer.k(), 1, outer.group());
    d.reserve(outer.block_count());
    std::vector<std::uint32_t> pts(p);
    for (std::size_t i = 0; i < inner.block_count(); ++i) {
        const auto b = inner.block(i);
        for (std::size_t j = 0; j < b.size(); ++j) pts[j] = static_cast<std::uint32_t>(b[j] * scale);
        d.add_block(pts);
    }
    for (std::size_t i = 0; i < outer.block_count(); ++i) {
        const auto b = outer.block(i);
        if (std::all_of(b.begin(), b.end(), [&](std::uint32_t x) { return x % scale == 0; })) continue;
        d.add_block(b);
    }
    return d;
}

}  // namespace srd
