#include <gtest/gtest.h>

#include "supdeg/oracle.hpp"
#include "supdeg/sample_curves.hpp"
#include "testutil.hpp"

using namespace supdeg;

TEST(BruteForce, TwoRootsGiveThreeClusters) {
    Ctx ctx = make_context(7, 2, 2);
    std::vector<Pux> vals{Pux::pi_power(ctx, rat(1, 2)), Pux::pi_power(ctx, rat(1, 2)).scaled(Rat(-1))};
    auto fam = oracle::clusters_bruteforce(vals);
    EXPECT_EQ(fam.size(), 3u);
}

TEST(BruteForce, FiveBallSubstructure) {
    // one ball of five roots from the thirty-root sample: the disk family is
    // the five singletons plus the full five-set
    CurveSpec c = samples::thirty_root_curve();
    Ctx ctx = c.context;
    std::vector<Pux> vals;
    for (long i = 0; i < 5; ++i)
        vals.push_back(Pux::pi_power(ctx, rat(1, 2)) +
                       Pux::monomial(ctx, Cyc::zeta_pow(ctx->field(), 2 * i), rat(3, 5)));
    auto fam = oracle::clusters_bruteforce(vals);
    EXPECT_EQ(fam.size(), 6u);
    std::vector<int> all{0, 1, 2, 3, 4};
    EXPECT_TRUE(fam.count(all));
}

TEST(BruteForce, CapRejected) {
    Ctx ctx = make_context(7, 1, 1);
    std::vector<Pux> vals;
    for (long i = 1; i <= 13; ++i) vals.push_back(Pux::from_rational(ctx, Rat(i)));
    EXPECT_THROW(oracle::clusters_bruteforce(vals), std::invalid_argument);
}

TEST(BruteForce, AgreesWithTreeOnRandomEights) {
    testutil::Rng rng(91);
    for (int i = 0; i < 80; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 12, 8);
        ClusterTree t(c);
        std::vector<Pux> vals;
        for (size_t v = 0; v < t.value_count(); ++v) vals.push_back(t.value(static_cast<int>(v)));
        EXPECT_EQ(oracle::clusters_bruteforce(vals), t.family());
    }
}

TEST(MinPolyOrbits, ThirtyRootTopCluster) {
    CurveSpec c = samples::thirty_root_curve();
    ClusterTree t(c);
    // empty complement: the orbit sum is 0 and c_s = v(a_d) = 1
    EXPECT_EQ(oracle::c_via_min_poly_orbits(t, t.root_id()), Rat(0));
    EXPECT_EQ(t.cluster_constants(t.root_id()).c, Rat(1));
}

TEST(MinPolyOrbits, MatchesClusterConstants) {
    testutil::Rng rng(92);
    int checked = 0;
    for (int i = 0; i < 200 && checked < 60; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 12, 8);
        ClusterTree t(c);
        for (size_t id = 0; id < t.nodes().size(); ++id) {
            if (!t.invariant(static_cast<int>(id))) continue;
            Rat via = oracle::c_via_min_poly_orbits(t, static_cast<int>(id));
            Rat direct = t.cluster_constants(static_cast<int>(id)).c;
            EXPECT_EQ(Rat(via + c.leading.valuation().finite()), direct);
            ++checked;
        }
    }
    EXPECT_GE(checked, 60);
}

TEST(Search, FindsDegreeSixteenOnSample) {
    CurveSpec c = samples::thirty_root_curve();
    ClusterTree t(c);
    auto hit = oracle::small_degree_search(c, t, 16);
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(hit->claimed_degree, 16);
    EXPECT_EQ(hit->x0.degree_over_base(), 16);
    EXPECT_TRUE(is_integer(Rat(hit->vF * Rat(16) / Rat(3))));
}

TEST(Search, NoDegreeTwentyFiveOnSample) {
    CurveSpec c = samples::thirty_root_curve();
    ClusterTree t(c);
    EXPECT_FALSE(oracle::small_degree_search(c, t, 25).has_value());
}

TEST(Search, AlwaysFindsDegreeQ) {
    CurveSpec c = samples::thirty_root_curve();
    ClusterTree t(c);
    auto hit = oracle::small_degree_search(c, t, 3);
    ASSERT_TRUE(hit.has_value());
    EXPECT_EQ(hit->claimed_degree, 3);
}

TEST(Search, HitsLieInTheComputedSet) {
    CurveSpec c = samples::thirty_root_curve();
    ClusterTree t(c);
    DegreeSetResult res = compute_degree_set(c, t);
    for (long m : {3, 10, 16, 20, 22}) {
        auto hit = oracle::small_degree_search(c, t, m);
        if (hit) EXPECT_TRUE(res.lower.member(m)) << m;
    }
}
