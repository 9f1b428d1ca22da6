#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "excitonsim/random_streams.hpp"

using namespace excitonsim::rng;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerZeros) {
    const Counter out = philox4x32_10({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
    const Counter out = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                      {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out, (Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
    const Counter out = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                      {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out, (Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(NormalStream, DrawDependsOnlyOnSeedStreamAndPosition) {
    const NormalStream a(42, 7);
    const NormalStream b(42, 7);
    for (std::uint64_t j = 20; j-- > 0;) {
        EXPECT_EQ(a(j), b(j));
    }
    EXPECT_NE(NormalStream(42, 7)(0), NormalStream(42, 8)(0));
    EXPECT_NE(NormalStream(42, 7)(0), NormalStream(43, 7)(0));
}

TEST(NormalStream, UnitUniformStaysOpen) {
    EXPECT_GT(to_open_unit(0, 0), 0.0);
    EXPECT_LT(to_open_unit(0xffffffffu, 0xffffffffu), 1.0);
}

TEST(NormalStream, MomentsOfStandardNormal) {
    const NormalStream s(2024, 0);
    constexpr int n = 200000;
    double sum = 0, sum2 = 0, sum4 = 0;
    for (int j = 0; j < n; ++j) {
        const double x = s(static_cast<std::uint64_t>(j));
        sum += x;
        sum2 += x * x;
        sum4 += x * x * x * x;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sum2 / n, 1.0, 0.01);
    EXPECT_NEAR(sum4 / n, 3.0, 0.06);
}
