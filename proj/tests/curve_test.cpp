#include <gtest/gtest.h>

#include "supdeg/sample_curves.hpp"
#include "testutil.hpp"

using namespace supdeg;

TEST(Validate, ThirtyRootSamplePasses) {
    ValidationReport rep = validate_curve(samples::thirty_root_curve());
    EXPECT_TRUE(rep.ok());
    EXPECT_FALSE(rep.wild);
    EXPECT_TRUE(rep.warnings.empty());
}

TEST(Validate, LoneWildRootFailsTameness) {
    Ctx ctx = make_context(3, 3, 3);
    CurveSpec c;
    c.context = ctx;
    c.q = 2;
    c.name = "wild-lone";
    c.leading = Pux::one(ctx);
    c.roots.push_back({Pux::pi_power(ctx, rat(1, 3)), 1});
    ValidationReport rep = validate_curve(c);
    EXPECT_FALSE(rep.ok());
    EXPECT_TRUE(rep.wild);
    EXPECT_FALSE(rep.find("tame")->pass);
}

TEST(Validate, MissingConjugateFailsGaloisClosure) {
    Ctx ctx = make_context(7, 2, 2);
    CurveSpec c;
    c.context = ctx;
    c.q = 3;
    c.name = "half-orbit";
    c.leading = Pux::one(ctx);
    c.roots.push_back({Pux::pi_power(ctx, rat(1, 2)), 1});
    ValidationReport rep = validate_curve(c);
    EXPECT_FALSE(rep.find("galois_closed")->pass);
    EXPECT_TRUE(rep.find("tame")->pass);
}

TEST(Validate, MultiplicityAtQRejected) {
    Ctx ctx = make_context(7, 1, 1);
    CurveSpec c;
    c.context = ctx;
    c.q = 3;
    c.name = "cube-factor";
    c.leading = Pux::one(ctx);
    c.roots.push_back({Pux::pi_power(ctx, Rat(1)), 3});
    EXPECT_FALSE(validate_curve(c).find("multiplicities_below_q")->pass);
}

TEST(Validate, ZeroRootWarns) {
    Ctx ctx = make_context(7, 1, 1);
    CurveSpec c;
    c.context = ctx;
    c.q = 3;
    c.name = "zero-root";
    c.leading = Pux::one(ctx);
    c.roots.push_back({Pux::zero(ctx), 1});
    ValidationReport rep = validate_curve(c);
    EXPECT_TRUE(rep.ok());
    ASSERT_FALSE(rep.warnings.empty());
    EXPECT_NE(rep.warnings[0].find("0 is a root"), std::string::npos);
}

TEST(Validate, MixedCharacteristicWarning) {
    Ctx ctx = make_context(7, 2, 2);
    CurveSpec c;
    c.context = ctx;
    c.q = 3;
    c.name = "divergent";
    c.leading = Pux::one(ctx);
    // the difference of these conjugate pairs has a coefficient divisible by 7
    c.roots.push_back({Pux::pi_power(ctx, rat(1, 2)).scaled(Rat(8)), 1});
    c.roots.push_back({Pux::pi_power(ctx, rat(1, 2)).scaled(Rat(-8)), 1});
    c.roots.push_back({Pux::pi_power(ctx, rat(1, 2)), 1});
    c.roots.push_back({Pux::pi_power(ctx, rat(1, 2)).scaled(Rat(-1)), 1});
    c.sort_roots();
    ValidationReport rep = validate_curve(c);
    EXPECT_TRUE(rep.ok());
    bool warned = false;
    for (const auto &w : rep.warnings)
        if (w.find("residue characteristic") != std::string::npos) warned = true;
    EXPECT_TRUE(warned);
}

TEST(Evaluate, RootGivesZero) {
    CurveSpec c = samples::thirty_root_curve();
    EXPECT_TRUE(evaluate_F(c, c.roots[4].value).is_zero());
}

TEST(Evaluate, ThirtyRootValuations) {
    CurveSpec c = samples::thirty_root_curve();
    // at 0: v = v(7) + 30 * (1/2) = 16
    Pux F0 = evaluate_F(c, Pux::zero(c.context));
    EXPECT_EQ(F0.valuation().finite(), Rat(16));
    // at pi^2, a point equidistant from every root: same value
    Pux F2 = evaluate_F(c, Pux::pi_power(c.context, Rat(2)));
    EXPECT_EQ(F2.valuation().finite(), Rat(16));
}

TEST(Evaluate, FactorwiseValuationMatchesProduct) {
    testutil::Rng rng(55);
    for (int i = 0; i < 120; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 18, 8);
        Pux x0 = testutil::random_nonroot(rng, c);
        EXPECT_EQ(valuation_of_F(c, x0), evaluate_F(c, x0).valuation());
    }
}

TEST(Evaluate, CommutesWithGalois) {
    testutil::Rng rng(56);
    for (int i = 0; i < 120; ++i) {
        CurveSpec c = testutil::random_tame_curve(rng, 18, 8);
        Pux x0 = testutil::random_nonroot(rng, c);
        long k = static_cast<long>(rng() % c.context->ram_index());
        EXPECT_EQ(evaluate_F(c, x0).galois_apply(k), evaluate_F(c, x0.galois_apply(k)));
        EXPECT_EQ(valuation_of_F(c, x0), valuation_of_F(c, x0.galois_apply(k)));
    }
}
