#include <gtest/gtest.h>

#include "oracles.hpp"
#include "srdesign/catalog.hpp"
#include "srdesign/designs.hpp"
#include "srdesign/io.hpp"
#include "srdesign/lifting.hpp"

using namespace srd;

namespace {

Design develop_catalog(const FamilyFile& f) { return develop(to_rdf(f).rdf); }

// Pair multiplicities counted from scratch; returns the common value or -1.
std::int64_t oracle_pair_lambda(const Design& d) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> count;
    for (std::size_t i = 0; i < d.block_count(); ++i) {
        const auto b = d.block(i);
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y) ++count[{std::min(b[x], b[y]), std::max(b[x], b[y])}];
    }
    if (count.size() != d.v() * (d.v() - 1) / 2) return -1;
    const auto first = count.begin()->second;
    for (const auto& [pr, n] : count)
        if (n != first) return -1;
    return static_cast<std::int64_t>(first);
}

std::vector<std::uint64_t> point_degrees(const Design& d) {
    std::vector<std::uint64_t> deg(d.v(), 0);
    for (std::size_t i = 0; i < d.block_count(); ++i)
        for (auto p : d.block(i)) ++deg[p];
    return deg;
}

bool intersect_in_one(const Design& d, std::size_t a, std::size_t b) {
    std::vector<std::uint32_t> c;
    const auto x = d.block(a), y = d.block(b);
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
    return c.size() == 1;
}

ProductFamily gf13_family() {
    const auto sdf = to_sdf(catalog_example51());
    const auto f13 = make_field(13, 1);
    const auto found = lift_over_psi_seeds(sdf, f13, 4, 0, 50, [](const auto& s, const auto& f, const auto& psi) {
        return greedy_lift(s, f, psi);
    });
    return *apply_multipliers(found.lifting, class_multipliers(f13, 4)).family;
}

}  // namespace

TEST(Develop, Z5TimesF25) {
    const auto d = develop_catalog(catalog_thm62_z5());
    EXPECT_EQ(d.v(), 125u);
    EXPECT_EQ(d.block_count(), 6u * 125u + 25u);
    EXPECT_EQ(d.block_count(), 775u);
    const auto v = verify_design(d);
    EXPECT_TRUE(v.is_design) << v.reason;
    EXPECT_EQ(v.lambda_found, 1u);
    EXPECT_TRUE(v.is_simple);
    EXPECT_EQ(v.replication, 31u);
    EXPECT_EQ(oracle_pair_lambda(d), 1);
    for (auto r : point_degrees(d)) EXPECT_EQ(r, 31u);
    const auto sr = verify_super_regular(d, *d.group());
    EXPECT_TRUE(sr.is_regular);
    EXPECT_TRUE(sr.is_strictly_additive);
    EXPECT_TRUE(sr.is_super_regular) << sr.reason;
}

TEST(Develop, Z7Cubed) {
    const auto d = develop_catalog(catalog_thm62_z7());
    EXPECT_EQ(d.block_count(), 8u * 343u + 49u);
    const auto v = verify_design(d);
    EXPECT_TRUE(v.is_design) << v.reason;
    EXPECT_EQ(v.lambda_found, 1u);
    EXPECT_EQ(v.replication, 57u);
    EXPECT_EQ(oracle_pair_lambda(d), 1);
    EXPECT_TRUE(verify_super_regular(d, *d.group()).is_super_regular);
}

TEST(Develop, SignedSigmaPrimeIsNotSimple) {
    const auto sdf = to_sdf(catalog_sigma_prime());
    const auto fam = simple_lift(sdf, make_field(5, 2, parse_polynomial("2,1,1")), std::nullopt, true);
    const auto d = develop(fam.rdf);
    EXPECT_EQ(d.v(), 375u);
    EXPECT_EQ(d.block_count(), fam.rdf.blocks.size() * 375u + 21u * 25u);
    const auto v = verify_design(d);
    EXPECT_TRUE(v.is_design) << v.reason;
    EXPECT_EQ(v.lambda_found, 21u);
    EXPECT_FALSE(v.is_simple);
    EXPECT_EQ(v.max_block_multiplicity, 21u);
    EXPECT_EQ(v.replication, 374u * 21u / 14u);
    EXPECT_TRUE(verify_super_regular(d, *d.group()).is_super_regular);
}

TEST(Develop, RejectsUnverifiedFamily) {
    auto loaded = to_rdf(catalog_thm62_z5());
    loaded.rdf.blocks.pop_back();
    EXPECT_THROW(develop(loaded.rdf), std::invalid_argument);
}

// The developed design is a 2-design exactly when the family verified.
TEST(Develop, VerifiesForEveryFixture) {
    std::vector<RelativeDifferenceFamily> fams{to_rdf(catalog_thm62_z5()).rdf, to_rdf(catalog_thm62_z7()).rdf,
                                               gf13_family().rdf, zero_sum_adjust(gf13_family()).rdf};
    const auto z5 = to_rdf(catalog_thm62_z5());
    fams.push_back(extend_field(ProductFamily{*z5.carrier.product(), z5.rdf}, 1).rdf);
    for (const auto& f : fams) {
        ASSERT_TRUE(verify_rdf(f).is_rdf);
        const auto d = develop(f);
        const auto v = verify_design(d);
        EXPECT_TRUE(v.is_design) << v.reason;
        EXPECT_EQ(oracle_pair_lambda(d), 1);
        EXPECT_EQ(v.replication, (d.v() - 1) / (d.k() - 1));
    }
}

// Strict additivity of the development needs zero-sum blocks and k g = 0 for every translate g.
TEST(SuperRegular, DependsOnAdditivityAndExponent) {
    const auto plain = develop(gf13_family().rdf);
    const auto adjusted = develop(zero_sum_adjust(gf13_family()).rdf);
    const auto a = verify_super_regular(plain, *plain.group());
    const auto b = verify_super_regular(adjusted, *adjusted.group());
    EXPECT_TRUE(a.is_regular);
    EXPECT_FALSE(a.is_strictly_additive);
    EXPECT_TRUE(b.is_regular);
    // 5 (0, x) != 0 in Z_5 x F_13, so translates of zero-sum blocks are not zero-sum.
    EXPECT_FALSE(b.is_strictly_additive);
}

TEST(VerifyDesign, MissingBlockGivesWitness) {
    const auto d = develop_catalog(catalog_thm62_z5());
    const auto broken = d.without_block(17);
    const auto v = verify_design(broken);
    EXPECT_FALSE(v.is_design);
    ASSERT_TRUE(v.witness);
    const auto [a, b] = *v.witness;
    const auto blk = d.block(17);
    EXPECT_TRUE(std::binary_search(blk.begin(), blk.end(), a));
    EXPECT_TRUE(std::binary_search(blk.begin(), blk.end(), b));
}

TEST(VerifySuperRegular, PerturbedBlockBreaksRegularity) {
    auto d = develop_catalog(catalog_thm62_z5());
    const std::vector<std::uint32_t> odd{0, 1, 2, 3, 7};
    d.replace_block(40, odd);
    const auto v = verify_super_regular(d, *d.group());
    EXPECT_FALSE(v.is_regular);
    EXPECT_FALSE(v.is_super_regular);
}

TEST(AgDesign, CountsAndVerification) {
    for (auto [n, p, lines] : std::vector<std::tuple<unsigned, std::uint64_t, std::size_t>>{
             {2, 3, 12}, {2, 5, 30}, {3, 3, 117}, {3, 5, 775}, {3, 7, 2793}}) {
        const auto d = ag_design(n, p);
        EXPECT_EQ(d.block_count(), lines);
        std::uint64_t v = 1;
        for (unsigned i = 0; i < n; ++i) v *= p;
        EXPECT_EQ(d.block_count(), v / p * (v - 1) / (p - 1));
        const auto ver = verify_design(d);
        EXPECT_TRUE(ver.is_design);
        EXPECT_EQ(ver.lambda_found, 1u);
        EXPECT_EQ(oracle_pair_lambda(d), 1);
    }
    EXPECT_THROW(ag_design(1, 5), std::invalid_argument);
    EXPECT_THROW(ag_design(2, 6), std::invalid_argument);
}

TEST(AgDesign, Ag25IsSuperRegular) {
    const auto d = ag_design(2, 5);
    const auto v = verify_super_regular(d, *d.group());
    EXPECT_TRUE(v.is_super_regular) << v.reason;
    EXPECT_EQ(v.orbits, 6u);
}

TEST(Closure, AffineLinePairsSpanPlanes) {
    for (auto [n, p] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 3}, {2, 5}, {3, 3}, {3, 5}}) {
        const auto d = ag_design(n, p);
        const LineIndex index(d);
        std::size_t checked = 0;
        for (std::size_t a = 0; a < d.block_count(); ++a)
            for (std::size_t b = a + 1; b < d.block_count(); ++b) {
                if (!intersect_in_one(d, a, b)) continue;
                ASSERT_EQ(closure(index, a, b).size(), p * p) << "n=" << n << " p=" << p;
                ++checked;
            }
        std::uint64_t v = 1;
        for (unsigned i = 0; i < n; ++i) v *= p;
        const std::uint64_t r = (v - 1) / (p - 1);
        EXPECT_EQ(checked, v * r * (r - 1) / 2);
    }
}

TEST(Closure, Errors) {
    const auto d = ag_design(2, 3);
    EXPECT_THROW(closure(d, 0, 0), std::invalid_argument);
    std::size_t disjoint = 1;
    while (intersect_in_one(d, 0, disjoint)) ++disjoint;
    EXPECT_THROW(closure(d, 0, disjoint), std::invalid_argument);
}

TEST(Closure, BaseLineOfZ5DesignEscapesPlane) {
    const auto d = develop_catalog(catalog_thm62_z5());
    // The block Z_5 x {0}: points (i, 0) have id 25 i.
    std::size_t base = d.block_count();
    for (std::size_t i = 0; i < d.block_count(); ++i) {
        const auto b = d.block(i);
        if (std::vector<std::uint32_t>(b.begin(), b.end()) == std::vector<std::uint32_t>{0, 25, 50, 75, 100}) base = i;
    }
    ASSERT_LT(base, d.block_count());
    std::size_t other = 0;
    while (other == base || !intersect_in_one(d, base, other)) ++other;
    EXPECT_GT(closure(d, base, other).size(), 25u);
}

TEST(Anomaly, DevelopedDesigns) {
    const auto z5 = develop_catalog(catalog_thm62_z5());
    const auto a5 = anomaly_witness(z5, 5);
    EXPECT_TRUE(a5.anomalous);
    ASSERT_TRUE(a5.witness);
    EXPECT_GT(a5.closure_size, 25u);
    EXPECT_EQ(closure(z5, a5.witness->first, a5.witness->second).size(), a5.closure_size);

    const auto z7 = develop_catalog(catalog_thm62_z7());
    const auto a7 = anomaly_witness(z7, 7);
    EXPECT_TRUE(a7.anomalous);
    EXPECT_GT(a7.closure_size, 49u);
}

TEST(Anomaly, AffineSpaceIsInconclusive) {
    const auto v = anomaly_witness(ag_design(3, 5), 5);
    EXPECT_FALSE(v.anomalous);
    EXPECT_EQ(v.summary, "inconclusive");
    EXPECT_THROW(anomaly_witness(ag_design(2, 5), 3), std::invalid_argument);
}

TEST(SubspaceReplace, EmbedsAnomalousZ5Design) {
    const auto inner = develop_catalog(catalog_thm62_z5());
    const auto d = subspace_replace(4, 3, 5, inner);
    EXPECT_EQ(d.v(), 625u);
    const auto v = verify_design(d);
    EXPECT_TRUE(v.is_design) << v.reason;
    EXPECT_EQ(v.lambda_found, 1u);
    EXPECT_TRUE(anomaly_witness(d, 5).anomalous);
    EXPECT_EQ(subspace_replace(3, 3, 5, inner), inner);
    EXPECT_THROW(subspace_replace(2, 3, 5, inner), std::invalid_argument);
}

TEST(SubspaceReplace, EmbedsZ7DesignIn2401Points) {
    const auto d = subspace_replace(4, 3, 7, develop_catalog(catalog_thm62_z7()));
    EXPECT_EQ(d.v(), 2401u);
    const auto v = verify_design(d);
    EXPECT_TRUE(v.is_design) << v.reason;
    EXPECT_EQ(v.lambda_found, 1u);
}
