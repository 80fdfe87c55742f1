#include <gtest/gtest.h>

#include <bitset>
#include <random>

#include "supdeg/natset.hpp"

using namespace supdeg;

namespace {

constexpr long kBitLimit = 10000;
using Bits = std::bitset<kBitLimit + 1>;

Bits to_bits(const NatSet &s) {
    Bits b;
    for (long n = 1; n <= kBitLimit; ++n)
        if (s.member(n)) b.set(n);
    return b;
}

NatSet random_set(std::mt19937_64 &rng) {
    switch (rng() % 4) {
        case 0:
            return NatSet::progression(1 + rng() % 12);
        case 1:
            return NatSet::tail_above(rng() % 40);
        case 2: {
            std::vector<long> e;
            int k = 1 + rng() % 6;
            for (int i = 0; i < k; ++i) e.push_back(1 + rng() % 60);
            return NatSet::finite(e);
        }
        default: {
            NatSet inner = NatSet::progression(1 + rng() % 6).union_with(
                NatSet::finite({static_cast<long>(1 + rng() % 20)}));
            return inner.scaled(1 + rng() % 5);
        }
    }
}

}  // namespace

TEST(NatSet, ScaledExample) {
    NatSet inner = NatSet::finite({8, 11, 13, 14}).union_with(NatSet::tail_above(15));
    NatSet s = inner.scaled(2);
    for (long n : {16, 22, 26, 28}) EXPECT_TRUE(s.member(n)) << n;
    for (long n = 32; n <= 100; n += 2) EXPECT_TRUE(s.member(n)) << n;
    for (long n : {2, 8, 11, 14, 18, 20, 24, 30}) EXPECT_FALSE(s.member(n)) << n;
    for (long n = 1; n <= 100; n += 2) EXPECT_FALSE(s.member(n)) << n;
}

TEST(NatSet, ProgressionCanonical) {
    NatSet p3 = NatSet::progression(3);
    EXPECT_EQ(p3.threshold(), 1);
    EXPECT_EQ(p3.period(), 3);
    EXPECT_EQ(p3.residues(), std::vector<long>{0});
    EXPECT_TRUE(p3.exceptional().empty());
}

TEST(NatSet, FiniteAbsorbedByProgression) {
    NatSet s = NatSet::finite({5}).union_with(NatSet::progression(5));
    EXPECT_EQ(s, NatSet::progression(5));
}

TEST(NatSet, PaperMembershipExample) {
    NatSet s = NatSet::progression(3)
                   .union_with(NatSet::finite({8, 11, 13, 14}).union_with(NatSet::tail_above(15)).scaled(2))
                   .union_with(NatSet::progression(10));
    EXPECT_TRUE(s.member(22));
    EXPECT_FALSE(s.member(25));
    // canonical representation is pinned
    EXPECT_EQ(s.exceptional(), (std::vector<long>{3, 6, 9, 10, 12}));
    EXPECT_EQ(s.threshold(), 15);
    EXPECT_EQ(s.period(), 6);
    EXPECT_EQ(s.residues(), (std::vector<long>{0, 2, 3, 4}));
}

TEST(NatSet, UnionIdempotent) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        NatSet s = random_set(rng);
        EXPECT_EQ(s.union_with(s), s);
    }
}

TEST(NatSet, UnionAgainstBitsetOracle) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        NatSet a = random_set(rng), b = random_set(rng);
        NatSet u = a.union_with(b);
        EXPECT_EQ(to_bits(u), to_bits(a) | to_bits(b));
    }
}

TEST(NatSet, UnionLaws) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        NatSet a = random_set(rng), b = random_set(rng), c = random_set(rng);
        EXPECT_EQ(a.union_with(b), b.union_with(a));
        EXPECT_EQ(a.union_with(b).union_with(c), a.union_with(b.union_with(c)));
        long n = 1 + static_cast<long>(rng() % kBitLimit);
        EXPECT_EQ(a.union_with(b).member(n), a.member(n) || b.member(n));
    }
}

TEST(NatSet, IndexAndCofinite) {
    NatSet ex = NatSet::progression(3)
                    .union_with(NatSet::finite({8, 11, 13, 14}).union_with(NatSet::tail_above(15)).scaled(2))
                    .union_with(NatSet::progression(10));
    auto [idx, cof] = ex.index_and_cofinite();
    EXPECT_EQ(idx, 1);
    EXPECT_FALSE(cof);

    auto [qi, qc] = NatSet::progression(7).index_and_cofinite();
    EXPECT_EQ(qi, 7);
    EXPECT_TRUE(qc);

    auto [pi, pc] = NatSet::progression(3).union_with(NatSet::progression(5)).index_and_cofinite();
    EXPECT_EQ(pi, 1);
    EXPECT_FALSE(pc);

    EXPECT_THROW(NatSet::empty().index(), std::domain_error);
}

TEST(NatSet, ProgressionIndexCofinite) {
    for (long m : {1, 2, 5, 9}) {
        auto [idx, cof] = NatSet::progression(m).index_and_cofinite();
        EXPECT_EQ(idx, m);
        EXPECT_TRUE(cof);
    }
}

TEST(NatSet, CanonicalEqualsExtensional) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 300; ++i) {
        NatSet a = random_set(rng), b = random_set(rng);
        bool same_bits = to_bits(a.union_with(b)) == to_bits(b.union_with(a));
        EXPECT_TRUE(same_bits);
        if (to_bits(a) == to_bits(b)) EXPECT_EQ(a, b);
        if (a == b) EXPECT_EQ(to_bits(a), to_bits(b));
    }
}

TEST(NatSet, CofiniteInExplicitModulus) {
    NatSet evens = NatSet::progression(2);
    auto [idx, cof] = evens.index_and_cofinite(std::optional<long>(2));
    EXPECT_EQ(idx, 2);
    EXPECT_TRUE(cof);
    EXPECT_FALSE(evens.cofinite_in(1));  // odd numbers are missing forever
    EXPECT_TRUE(NatSet::tail_above(100).cofinite_in(1));
    EXPECT_TRUE(NatSet::tail_above(100).cofinite_in(7));
}

TEST(NatSet, SubsetOf) {
    EXPECT_TRUE(NatSet::progression(10).subset_of(NatSet::progression(2)));
    EXPECT_FALSE(NatSet::progression(2).subset_of(NatSet::progression(10)));
    EXPECT_TRUE(NatSet::finite({4, 8}).subset_of(NatSet::progression(2)));
}
