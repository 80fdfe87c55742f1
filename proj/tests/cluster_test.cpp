#include <gtest/gtest.h>

#include "supdeg/oracle.hpp"
#include "supdeg/sample_curves.hpp"
#include "testutil.hpp"

using namespace supdeg;

namespace {

const CurveSpec &sample30() {
    static CurveSpec c = samples::thirty_root_curve();
    return c;
}
const ClusterTree &tree30() {
    static ClusterTree t(sample30());
    return t;
}

std::vector<long> sorted_sizes(const ClusterTree &t) {
    std::vector<long> s;
    for (const auto &n : t.nodes()) s.push_back(n.size);
    std::sort(s.begin(), s.end());
    return s;
}

int find_five_cluster(const ClusterTree &t) {
    for (size_t i = 0; i < t.nodes().size(); ++i)
        if (t.node(static_cast<int>(i)).size == 5) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST(ClusterTree, ThirtyRootShape) {
    const ClusterTree &t = tree30();
    std::vector<long> expect(30, 1);
    for (int i = 0; i < 6; ++i) expect.push_back(5);
    expect.push_back(30);
    EXPECT_EQ(sorted_sizes(t), expect);
    EXPECT_EQ(t.node(t.root_id()).size, 30);
    EXPECT_EQ(*t.node(t.root_id()).depth, rat(1, 2));
    int five = find_five_cluster(t);
    ASSERT_GE(five, 0);
    EXPECT_EQ(*t.node(five).depth, rat(3, 5));
}

TEST(ClusterTree, TwoRootChain) {
    Ctx ctx = make_context(7, 2, 2);
    CurveSpec c;
    c.context = ctx;
    c.q = 3;
    c.name = "pair";
    c.leading = Pux::one(ctx);
    c.roots.push_back({Pux::pi_power(ctx, rat(1, 2)), 1});
    c.roots.push_back({Pux::pi_power(ctx, rat(1, 2)).scaled(Rat(-1)), 1});
    c.sort_roots();
    ClusterTree t(c);
    EXPECT_EQ(t.nodes().size(), 3u);  // two singletons and their join
    EXPECT_EQ(t.node(t.root_id()).size, 2);
}

TEST(ClusterTree, MatchesBruteForceOnRandomInstances) {
    testutil::Rng rng(77);
    for (int i = 0; i < 60; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 12, 8);
        ClusterTree t(c);
        std::vector<Pux> vals;
        for (size_t v = 0; v < t.value_count(); ++v) vals.push_back(t.value(static_cast<int>(v)));
        EXPECT_EQ(t.family(), oracle::clusters_bruteforce(vals));
    }
}

TEST(ClusterTree, Laminarity) {
    testutil::Rng rng(78);
    for (int i = 0; i < 40; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 16, 10);
        ClusterTree t(c);
        for (const auto &a : t.nodes())
            for (const auto &b : t.nodes()) {
                std::vector<int> inter;
                std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                                      b.members.end(), std::back_inserter(inter));
                bool nested = inter.size() == a.members.size() || inter.size() == b.members.size();
                EXPECT_TRUE(inter.empty() || nested);
            }
    }
}

TEST(ClusterConstants, ThirtyRootValues) {
    const ClusterTree &t = tree30();
    ClusterConstants top = t.cluster_constants(t.root_id());
    EXPECT_EQ(top.size, 30);
    EXPECT_EQ(top.c, Rat(1));
    int five = find_five_cluster(t);
    ClusterConstants cc = t.cluster_constants(five);
    EXPECT_EQ(cc.c, rat(27, 2));
    // singletons: v(a_d) + 4*(3/5) + 25*(1/2) = 159/10
    for (const auto &n : t.nodes())
        if (n.single_value())
            EXPECT_EQ(t.cluster_constants(&n - t.nodes().data()).c, rat(159, 10));
}

TEST(ClusterConstants, WildCubeRootCluster) {
    CurveSpec c = samples::wild_cube_curve();
    ClusterTree t(c);
    bool found = false;
    for (size_t i = 0; i < t.nodes().size(); ++i) {
        if (t.node(static_cast<int>(i)).size != 3) continue;
        found = true;
        ClusterConstants cc = t.cluster_constants(static_cast<int>(i));
        EXPECT_EQ(cc.c, rat(2, 3));
        EXPECT_EQ(*cc.depth, rat(5, 6));
    }
    EXPECT_TRUE(found);
    EXPECT_EQ(t.cluster_constants(t.root_id()).c, Rat(0));
}

TEST(ClusterConstants, IndependentOfRepresentative) {
    testutil::Rng rng(79);
    for (int i = 0; i < 25; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 12, 8);
        ClusterTree t(c);
        for (size_t id = 0; id < t.nodes().size(); ++id) {
            const Cluster &s = t.node(static_cast<int>(id));
            Rat base = t.cluster_constants(static_cast<int>(id)).c;
            for (int rep : s.members) {
                Rat c2 = c.leading.valuation().finite();
                for (size_t j = 0; j < t.value_count(); ++j) {
                    if (std::binary_search(s.members.begin(), s.members.end(), static_cast<int>(j)))
                        continue;
                    c2 += Rat(t.multiplicity(static_cast<int>(j))) * t.pair_valuation(rep, j);
                }
                EXPECT_EQ(c2, base);
            }
        }
    }
}

TEST(Classify, ThirtyRootShapes) {
    const ClusterTree &t = tree30();
    EXPECT_EQ(t.classify(t.root_id()), ClusterShape::AnnulusType);
    int five = find_five_cluster(t);
    ClusterShape s = t.classify(five);
    EXPECT_EQ(s, ClusterShape::BallType);
    // the common ball radius is the member valuation 1/2
    EXPECT_EQ(t.value(t.node(five).members[0]).valuation().finite(), rat(1, 2));
}

TEST(Classify, FamilyBlockClusterIsAnnulusType) {
    // the cluster of all roots at the block valuation 1/2 of a generated
    // curve is cut out by a valuation bound, hence annulus type
    Ctx ctx = make_context(7, 10, 10);
    CurveSpec c;
    c.context = ctx;
    c.q = 3;
    c.name = "block";
    c.leading = Pux::pi_power(ctx, Rat(1));
    for (long j = 0; j < 5; ++j)
        c.roots.push_back({Pux::monomial(ctx, Cyc::zeta_pow(ctx->field(), 2 * j), rat(1, 5)), 1});
    for (long j = 0; j < 2; ++j)
        c.roots.push_back({Pux::monomial(ctx, Cyc::zeta_pow(ctx->field(), 5 * j), rat(1, 2)), 1});
    c.sort_roots();
    ClusterTree t(c);
    for (size_t id = 0; id < t.nodes().size(); ++id) {
        const Cluster &s = t.node(static_cast<int>(id));
        if (s.size != 2) continue;
        // the pair of square roots sits above the quintic block
        EXPECT_NE(t.classify(static_cast<int>(id)), ClusterShape::BallType);
    }
}

TEST(ShiftCenter, FiveClusterTruncationIsTheHead) {
    // the five-element cluster around pi^(1/2) truncates to pi^(1/2)
    const ClusterTree &t = tree30();
    Pux head = Pux::pi_power(sample30().context, rat(1, 2));
    bool found = false;
    for (size_t id = 0; id < t.nodes().size(); ++id) {
        if (t.node(static_cast<int>(id)).size != 5) continue;
        Pux g = t.shift_center_unchecked(static_cast<int>(id));
        if (g == head) found = true;
        EXPECT_EQ(g.term_count(), 1u);
        EXPECT_EQ(g.valuation().finite(), rat(1, 2));
    }
    EXPECT_TRUE(found);
}

TEST(Classify, EveryClusterHasAShape) {
    testutil::Rng rng(80);
    for (int i = 0; i < 40; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 14, 9);
        ClusterTree t(c);
        for (size_t id = 0; id < t.nodes().size(); ++id)
            EXPECT_NO_THROW(t.classify(static_cast<int>(id)));
    }
}

TEST(Orbit, ThirtyRootSizes) {
    const ClusterTree &t = tree30();
    EXPECT_EQ(t.orbit_of(t.root_id()).size, 1);
    EXPECT_TRUE(t.invariant(t.root_id()));
    int five = find_five_cluster(t);
    EXPECT_EQ(t.orbit_of(five).size, 2);
    for (const auto &n : t.nodes())
        if (n.single_value())
            EXPECT_EQ(t.orbit_of(static_cast<int>(&n - t.nodes().data())).size, 10);
}

TEST(Orbit, SizesCountEveryClusterOnce) {
    testutil::Rng rng(81);
    for (int i = 0; i < 25; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 12, 8);
        ClusterTree t(c);
        std::set<int> seen;
        long counted = 0;
        for (size_t id = 0; id < t.nodes().size(); ++id) {
            if (seen.count(static_cast<int>(id))) continue;
            auto orb = t.orbit_of(static_cast<int>(id));
            for (int r : orb.representatives) seen.insert(r);
            counted += orb.size;
        }
        EXPECT_EQ(counted, static_cast<long>(t.nodes().size()));
    }
}

TEST(ShiftCenter, Examples) {
    // invariant cluster with members at two distinct valuations: center 0
    Ctx ctx = make_context(7, 1, 1);
    CurveSpec c;
    c.context = ctx;
    c.q = 5;
    c.name = "mixed-valuations";
    c.leading = Pux::one(ctx);
    c.roots.push_back({Pux::pi_power(ctx, Rat(1)), 1});
    c.roots.push_back({Pux::pi_power(ctx, Rat(1)).scaled(Rat(2)), 1});
    c.roots.push_back({Pux::pi_power(ctx, Rat(2)), 1});
    c.sort_roots();
    ClusterTree t(c);
    EXPECT_TRUE(t.shift_center(t.root_id()).is_zero());
    // a singleton: the center is the root itself
    for (size_t id = 0; id < t.nodes().size(); ++id)
        if (t.node(static_cast<int>(id)).single_value() &&
            t.value(t.node(static_cast<int>(id)).members[0]) == Pux::pi_power(ctx, Rat(2)))
            EXPECT_EQ(t.shift_center(static_cast<int>(id)), Pux::pi_power(ctx, Rat(2)));
}

TEST(ShiftCenter, RequiresInvariance) {
    const ClusterTree &t = tree30();
    int five = find_five_cluster(t);
    EXPECT_THROW(t.shift_center(five), std::invalid_argument);
}

TEST(ShiftCenter, SeparationOnRandomInvariantClusters) {
    testutil::Rng rng(82);
    int checked = 0;
    for (int i = 0; i < 300 && checked < 120; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 12, 8);
        ClusterTree t(c);
        for (size_t id = 0; id < t.nodes().size(); ++id) {
            if (!t.invariant(static_cast<int>(id))) continue;
            Pux g = t.shift_center(static_cast<int>(id));  // postconditions asserted inside
            EXPECT_TRUE(g.is_base_rational());
            ClusterConstants cc = t.cluster_constants(static_cast<int>(id));
            EXPECT_TRUE(is_integer(cc.c));
            ++checked;
        }
    }
    EXPECT_GE(checked, 120);
}

TEST(RegionMembership, ThirtyRootExamples) {
    const ClusterTree &t = tree30();
    Ctx ctx = sample30().context;
    RegionLocation at0 = t.locate(Pux::zero(ctx));
    EXPECT_FALSE(at0.at_root);
    EXPECT_EQ(at0.cluster, t.root_id());
    EXPECT_EQ(at0.distance.finite(), rat(1, 2));

    RegionLocation near = t.locate(Pux::pi_power(ctx, rat(1, 2)));
    EXPECT_FALSE(near.at_root);
    EXPECT_EQ(t.node(near.cluster).size, 5);
    EXPECT_EQ(near.distance.finite(), rat(3, 5));

    RegionLocation low = t.locate(Pux::pi_power(ctx, Rat(-5)));
    EXPECT_EQ(low.cluster, t.root_id());
    EXPECT_EQ(low.distance.finite(), Rat(-5));

    RegionLocation root = t.locate(sample30().roots[7].value);
    EXPECT_TRUE(root.at_root);
}

TEST(FormulaVsEvaluation, ThirtyRootExamples) {
    const ClusterTree &t = tree30();
    Ctx ctx = sample30().context;
    // top region: v(F(x0)) = 30 v(x0) + 1
    Pux x0 = Pux::pi_power(ctx, rat(1, 10)).scaled(Rat(3));
    EXPECT_EQ(t.vF_by_formula(x0), Rat(4));
    // at the five-cluster center: |s| d_s + c_s = 3 + 27/2 = 33/2
    Pux g = Pux::pi_power(ctx, rat(1, 2));
    EXPECT_EQ(t.vF_by_formula(g), rat(33, 2));
    EXPECT_EQ(valuation_of_F(sample30(), g).finite(), rat(33, 2));
    EXPECT_THROW(t.vF_by_formula(sample30().roots[0].value), std::invalid_argument);
}

TEST(FormulaVsEvaluation, RandomAgreement) {
    testutil::Rng rng(83);
    for (int i = 0; i < 200; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 16, 10);
        ClusterTree t(c);
        Pux x0 = testutil::random_nonroot(rng, c);
        EXPECT_EQ(Val(t.vF_by_formula(x0)), evaluate_F(c, x0).valuation());
    }
}

TEST(Render, TreeDeterministicAndInformative) {
    const ClusterTree &t = tree30();
    std::string a = t.render_ascii();
    EXPECT_EQ(a, tree30().render_ascii());
    EXPECT_NE(a.find("size=30"), std::string::npos);
    EXPECT_NE(a.find("c=27/2"), std::string::npos);
    EXPECT_NE(a.find("orbit=10"), std::string::npos);
    std::string d = t.render_dot();
    EXPECT_NE(d.find("digraph"), std::string::npos);
}
