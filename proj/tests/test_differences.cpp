#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srdesign/catalog.hpp"
#include "srdesign/differences.hpp"
#include "srdesign/io.hpp"

using namespace srd;

namespace {

std::vector<Element> z(std::initializer_list<std::uint32_t> xs) {
    std::vector<Element> out;
    for (auto x : xs) out.push_back(Element{x});
    return out;
}

// The six Z_5 x F_25 blocks as raw (a, b, c) triples; the field part b*l + c is additively Z_5^2.
const std::vector<std::vector<oracle::Tuple>> kZ5Triples = {
    {{0, 0, 0}, {1, 0, 1}, {1, 0, 4}, {4, 1, 0}, {4, 4, 0}}, {{0, 0, 0}, {1, 4, 3}, {1, 1, 2}, {4, 4, 2}, {4, 1, 3}},
    {{0, 0, 0}, {1, 3, 2}, {1, 2, 3}, {4, 4, 4}, {4, 1, 1}}, {{0, 0, 0}, {1, 0, 2}, {1, 0, 3}, {4, 2, 0}, {4, 3, 0}},
    {{0, 0, 0}, {1, 3, 1}, {1, 2, 4}, {4, 3, 4}, {4, 2, 1}}, {{0, 0, 0}, {1, 1, 4}, {1, 4, 1}, {4, 3, 3}, {4, 2, 2}},
};

}  // namespace

TEST(DeltaBlock, Z5BlockDifferenceTable) {
    const AbelianGroup z5({5});
    const auto d = delta_block(z5, z({0, 1, 1, 4, 4}));
    EXPECT_EQ(d.size(), 20u);
    for (std::uint32_t x = 0; x < 5; ++x) EXPECT_EQ(d.multiplicity(Element{x}), 4u);
}

TEST(DeltaBlock, SmallExamples) {
    const AbelianGroup z7({7});
    EXPECT_EQ(delta_block(z7, z({3, 3})), GMultiset(z({0, 0})));
    const AbelianGroup z3({3});
    const auto d = delta_block(z3, z({0, 1, 2}));
    EXPECT_EQ(d.multiplicity(Element{0}), 0u);
    EXPECT_EQ(d.multiplicity(Element{1}), 3u);
    EXPECT_EQ(d.multiplicity(Element{2}), 3u);
    EXPECT_THROW(delta_block(z3, z({1})), std::invalid_argument);
    EXPECT_THROW(delta_block(z3, z({1, 5})), std::out_of_range);
}

TEST(DeltaBlock, MatchesOracleAndIsTranslationInvariant) {
    const std::vector<std::int64_t> n{4, 6};
    const auto g = make_group(n);
    const auto tuples = oracle::all_tuples(n);
    // Every 3-multiset drawn from a stride through the group, plus all translates.
    for (std::size_t i = 0; i < tuples.size(); i += 5)
        for (std::size_t j = i; j < tuples.size(); j += 3)
            for (std::size_t l = j; l < tuples.size(); l += 7) {
                const std::vector<oracle::Tuple> raw{tuples[i], tuples[j], tuples[l]};
                std::vector<Element> blk;
                for (const auto& t : raw) blk.push_back(g.element(t));
                const auto d = delta_block(g, blk);
                const auto expect = oracle::delta(raw, n);
                std::uint64_t total = 0;
                for (const auto& [t, m] : expect) {
                    EXPECT_EQ(d.multiplicity(g.element(t)), m);
                    total += m;
                }
                EXPECT_EQ(d.size(), total);
                EXPECT_EQ(d.multiplicity(g.zero()) % 2, 0u);
                EXPECT_EQ(d.multiplicity(g.zero()) == 0, i != j && j != l);
                for (auto s : g.elements()) {
                    std::vector<Element> moved;
                    for (auto e : blk) moved.push_back(g.add(e, s));
                    ASSERT_EQ(delta_block(g, moved), d);
                }
            }
}

TEST(DeltaBlock, InvolutionsAppearEvenlyOften) {
    const std::vector<std::int64_t> n{2, 4, 6};
    const auto g = make_group(n);
    const auto inv = involution_subgroup(g).subgroup.elements;
    for (std::uint32_t a = 0; a < g.order(); a += 3)
        for (std::uint32_t b = a; b < g.order(); b += 5)
            for (std::uint32_t c = b; c < g.order(); c += 11)
                for (std::uint32_t e = c; e < g.order(); e += 17) {
                    const auto d = delta_block(g, z({a, b, c, e}));
                    for (auto x : inv) EXPECT_EQ(d.multiplicity(x) % 2, 0u);
                }
}

TEST(DeltaFamily, SizesAndExamples) {
    const AbelianGroup z15({15});
    const auto sigma = to_sdf(catalog_sigma_prime());
    const auto d = delta_family(z15, sigma.blocks);
    EXPECT_EQ(d.size(), 630u);
    EXPECT_EQ(d.size(), 42u * 15u);
    EXPECT_EQ(delta_family(z15, std::vector<std::vector<Element>>{}).size(), 0u);
    const auto one = z({0, 1, 4, 9});
    EXPECT_EQ(delta_family(z15, std::vector<std::vector<Element>>{one}), delta_block(z15, one));
    const std::vector<std::vector<Element>> mixed{z({0, 1}), z({0, 2, 5}), z({1, 2, 3, 4, 5})};
    EXPECT_EQ(delta_family(z15, mixed).size(), 2u + 6u + 20u);
}

TEST(Coverage, Z5BlockIsConstantFour) {
    const AbelianGroup z5({5});
    const auto v = coverage(delta_block(z5, z({0, 1, 1, 4, 4})), z5);
    ASSERT_TRUE(v.constant_lambda);
    EXPECT_EQ(*v.constant_lambda, 4u);
    EXPECT_EQ(v.map.total, 20u);
}

TEST(Coverage, NonConstantWitness) {
    const AbelianGroup z3({3});
    const auto v = coverage(delta_block(z3, z({0, 1, 2})), z3);
    EXPECT_FALSE(v.constant_lambda);
    EXPECT_EQ(v.map.counts, (std::vector<std::uint64_t>{0, 3, 3}));
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(*v.witness, Element{1});
}

TEST(Coverage, ExcludedMustBeUncovered) {
    const AbelianGroup z7({7});
    // {0,1,3} is a planar difference set: everything nonzero once.
    const auto d = delta_block(z7, z({0, 1, 3}));
    const auto ok = coverage(d, z7, z({0}));
    ASSERT_TRUE(ok.constant_lambda);
    EXPECT_EQ(*ok.constant_lambda, 1u);
    const auto bad = coverage(d, z7, z({0, 1}));
    EXPECT_FALSE(bad.excluded_uncovered);
    EXPECT_FALSE(bad.constant_lambda);
    const auto all = coverage(GMultiset{}, z7, z7.elements());
    EXPECT_TRUE(all.vacuous);
    ASSERT_TRUE(all.constant_lambda);
}

TEST(Coverage, Z5TimesF25BlocksCoverOutsideBaseOnce) {
    // Oracle on raw triples in Z_5^3.
    const std::vector<std::int64_t> n{5, 5, 5};
    std::map<oracle::Tuple, std::uint64_t> total;
    for (const auto& blk : kZ5Triples)
        for (const auto& [t, m] : oracle::delta(blk, n)) total[t] += m;
    for (const auto& t : oracle::all_tuples(n)) {
        const bool in_base = t[1] == 0 && t[2] == 0;
        EXPECT_EQ(total[t], in_base ? 0u : 1u);
    }
    // Library on the same blocks through the product carrier.
    const auto loaded = to_rdf(catalog_thm62_z5());
    const auto product = *loaded.carrier.product();
    std::vector<std::vector<Element>> blocks;
    for (const auto& b : loaded.rdf.blocks) blocks.emplace_back(b.begin(), b.end());
    const auto v = coverage(delta_family(product.group(), blocks), product.group(), product.base_subgroup().elements);
    ASSERT_TRUE(v.constant_lambda);
    EXPECT_EQ(*v.constant_lambda, 1u);
    for (const auto& [t, m] : total) {
        const auto f = product.field().from_coeffs({t[2], t[1]});
        EXPECT_EQ(v.map[product.pair(Element{static_cast<std::uint32_t>(t[0])}, f)], m);
    }
}

TEST(SplitByBase, GroupsFibres) {
    const ProductCarrier c(AbelianGroup({3}), make_field(5, 1));
    const auto f = c.field();
    std::vector<Element> blk{c.pair(Element{0}, f.zero()), c.pair(Element{1}, f.one()),
                             c.pair(Element{1}, FieldElement{3})};
    const auto d = delta_block(c.group(), blk);
    const auto fibres = split_by_base(c, d);
    std::size_t total = 0;
    for (const auto& [g, fibre] : fibres) {
        total += fibre.size();
        for (auto x : fibre) EXPECT_EQ(d.multiplicity(c.pair(g, x)) > 0, true);
    }
    EXPECT_EQ(total, 6u);
    // Base 0 holds the differences inside the fibre over 1: 1-3 and 3-1.
    EXPECT_EQ(fibres.at(Element{0}), (std::vector<FieldElement>{FieldElement{2}, FieldElement{3}}));
    EXPECT_EQ(fibres.at(Element{1}).size(), 2u);
    EXPECT_EQ(fibres.at(Element{2}).size(), 2u);
}
