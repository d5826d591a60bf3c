#include "test_support.hpp"

#include <sselbp/elbp.hpp>
#include <sselbp/error.hpp>

#include <gtest/gtest.h>

using namespace sselbp;
namespace t = sselbp::testing;

namespace {

std::uint32_t rotl(std::uint32_t b, unsigned k, unsigned bits) {
    const std::uint32_t mask = (1u << bits) - 1u;
    k %= bits;
    return k == 0 ? b : ((b << k) | (b >> (bits - k))) & mask;
}

std::vector<std::uint64_t> bins_of(const JointHistogram& h) { return {h.bins().begin(), h.bins().end()}; }

} // namespace

TEST(Riu2Table, P8Examples) {
    const Riu2Table table(8);
    EXPECT_EQ(table[0b00000000], 0);
    EXPECT_EQ(table[0b11111111], 8);
    EXPECT_EQ(table[0b01010101], 9);
    EXPECT_EQ(table[0b00000001], 1);
    EXPECT_EQ(table[0b00111000], 3);
    EXPECT_EQ(table.codes(), 10u);
}

TEST(Riu2Table, P8ExhaustiveAgainstBruteForce) {
    const Riu2Table table(8);
    std::vector<int> histogram(10, 0);
    int uniform = 0;
    for (std::uint32_t b = 0; b < 256; ++b) {
        ASSERT_EQ(table[b], t::oracle::riu2(b, 8)) << b;
        ++histogram[table[b]];
        uniform += t::oracle::transitions(b, 8) <= 2;
        for (unsigned k = 0; k < 8; ++k) ASSERT_EQ(table[rotl(b, k, 8)], table[b]);
    }
    EXPECT_EQ(uniform, 58);
    EXPECT_EQ(histogram, (std::vector<int>{1, 8, 8, 8, 8, 8, 8, 8, 1, 198}));
}

TEST(Riu2Table, OtherWidths) {
    for (unsigned p : {2u, 3u, 5u, 12u, 16u}) {
        const Riu2Table table(p);
        ASSERT_EQ(table.map().size(), std::size_t{1} << p);
        EXPECT_EQ(table[0], 0);
        EXPECT_EQ(table[(1u << p) - 1], p);
        for (std::uint32_t b = 0; b < table.map().size(); b += 1 + b / 64) {
            ASSERT_EQ(table[b], t::oracle::riu2(b, p));
            ASSERT_EQ(table[rotl(b, 1, p)], table[b]);
        }
    }
    EXPECT_THROW(Riu2Table(1), ParameterError);
    EXPECT_THROW(Riu2Table(25), ParameterError);
}

TEST(RadiusScheme, InnerRadiiAndValidation) {
    const RadiusScheme s(8, {2, 3, 4, 7});
    EXPECT_EQ(s.inner_radii(), (std::vector<double>{kCenter, 2, 3, 4}));
    EXPECT_EQ(s.margin(), 7u);
    EXPECT_EQ(RadiusScheme(8, {1.5, 2.5}).margin(), 3u);
    EXPECT_THROW(RadiusScheme(8, {}), ParameterError);
    EXPECT_THROW(RadiusScheme(8, {2, 2}), ParameterError);
    EXPECT_THROW(RadiusScheme(8, {3, 2}), ParameterError);
    EXPECT_THROW(RadiusScheme(8, {0.5}), ParameterError);
    EXPECT_THROW(RadiusScheme(30, {1}), ParameterError);
}

TEST(SampleCircle, ConstantAndOnGrid) {
    const auto flat = GrayImage::filled(9, 9, 4.5);
    EXPECT_EQ(sample_circle(flat, 4, 4, 3.0, 8), std::vector<double>(8, 4.5));

    std::vector<double> v(25);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    const GrayImage img(5, 5, v);
    // R = 1, P = 4 around (2, 2): east, north, west, south.
    EXPECT_EQ(sample_circle(img, 2, 2, 1.0, 4), (std::vector<double>{img.at(3, 2), img.at(2, 1), img.at(1, 2), img.at(2, 3)}));
}

TEST(SampleCircle, ExactOnLinearRamp) {
    std::vector<double> v(11 * 11);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 11);
    const GrayImage ramp(11, 11, v);
    const auto s = sample_circle(ramp, 5, 5, 2.0, 8);
    for (unsigned p = 0; p < 8; ++p) EXPECT_NEAR(s[p], 5.0 + 2.0 * std::cos(2.0 * std::numbers::pi * p / 8), 1e-12) << p;
}

TEST(SampleCircle, MatchesDirectBilinear) {
    const auto img = t::random_image(13, 13, 5);
    for (double r : {1.0, 1.5, 2.0, 3.0, 4.7}) {
        const auto s = sample_circle(img, 6, 6, r, 8);
        for (unsigned p = 0; p < 8; ++p) {
            const auto [dx, dy] = t::oracle::neighbor_offset(r, p, 8);
            EXPECT_NEAR(s[p], t::oracle::bilinear(img, 6 + dx, 6 + dy), 1e-12);
        }
    }
}

TEST(SampleCircle, OutOfBoundsThrows) {
    const auto img = GrayImage::filled(5, 5, 1.0);
    EXPECT_THROW(sample_circle(img, 1, 2, 2.0, 8), ParameterError);
    EXPECT_NO_THROW(sample_circle(img, 2, 2, 2.0, 8));
}

TEST(CircleTaps, QuarterTurnsAreExact) {
    for (double r : {1.0, 2.0, 3.0, 4.0, 7.0, 2.5}) {
        const auto taps = circle_taps(r, 8);
        for (unsigned p = 0; p < 8; ++p) {
            const auto [x, y] = t::oracle::neighbor_offset(r, p, 8);
            const auto [x2, y2] = t::oracle::neighbor_offset(r, (p + 2) % 8, 8);
            EXPECT_EQ(x2, y);
            EXPECT_EQ(y2, -x);
            EXPECT_NEAR(static_cast<double>(taps[p].dx) + (taps[p].step_x ? taps[p].w10 + taps[p].w11 : 0.0), x, 1e-12);
        }
    }
}

TEST(ElbpCodes, CenterIntensity) {
    EXPECT_EQ(elbp_ci(5.0, 5.0), 1u);
    EXPECT_EQ(elbp_ci(4.9, 5.0), 0u);
    EXPECT_EQ(elbp_ci(5.1, 5.0), 1u);
}

TEST(ElbpCodes, NeighborIntensity) {
    const Riu2Table table(8);
    EXPECT_EQ(elbp_ni(std::vector<double>(8, 3.0), table), 8u);
    // mean 0.125: only neighbor 0 reaches it
    EXPECT_EQ(elbp_ni(std::vector<double>{1, 0, 0, 0, 0, 0, 0, 0}, table), 1u);
    // mean 0.5: word 0b01010101, eight transitions
    EXPECT_EQ(elbp_ni(std::vector<double>{1, 0, 1, 0, 1, 0, 1, 0}, table), 9u);
}

TEST(ElbpCodes, RadialDifference) {
    const Riu2Table table(8);
    const std::vector<double> inner{1, 2, 3, 4, 5, 6, 7, 8};
    EXPECT_EQ(elbp_rd(inner, inner, table), 8u);
    std::vector<double> lower(inner), alternating(inner);
    for (std::size_t p = 0; p < 8; ++p) {
        lower[p] -= 0.5;
        alternating[p] += p % 2 == 0 ? 1.0 : -1.0;
    }
    EXPECT_EQ(elbp_rd(lower, inner, table), 0u);
    EXPECT_EQ(elbp_rd(alternating, inner, table), 9u);
}

TEST(JointHistogram, ConstantImageSingleBin) {
    const Riu2Table table(8);
    const auto h = joint_histogram(GrayImage::filled(12, 10, 2.0), 2.0, kCenter, 8, 2, table);
    ASSERT_EQ(h.size(), 200u);
    EXPECT_EQ(h.index(1, 8, 8), 188u);
    EXPECT_EQ(h.bins()[188], (12u - 4) * (10u - 4));
    EXPECT_EQ(h.total(), h.bins()[188]);
}

TEST(JointHistogram, CountsValidRegion) {
    const Riu2Table table(8);
    const auto img = t::random_image(20, 15, 9);
    for (std::size_t margin : {3u, 4u, 6u}) EXPECT_EQ(joint_histogram(img, 3.0, 2.0, 8, margin, table).total(), (20 - 2 * margin) * (15 - 2 * margin));
}

TEST(JointHistogram, MatchesNaiveReference) {
    const Riu2Table table(8);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto img = t::random_image(16, 16, 1000 + seed);
        const double radii[] = {1.0, 2.0, 3.0};
        for (std::size_t i = 0; i < 3; ++i) {
            const double inner = i == 0 ? kCenter : radii[i - 1];
            ASSERT_EQ(bins_of(joint_histogram(img, radii[i], inner, 8, 3, table)),
                      t::oracle::joint_histogram(img, radii[i], inner, 8, 3))
                << "seed " << seed << " R " << radii[i];
        }
    }
}

TEST(JointHistogram, MatchesNaiveReferenceOtherP) {
    for (unsigned p : {4u, 6u, 12u}) {
        const Riu2Table table(p);
        const auto img = t::random_image(18, 14, 40 + p);
        ASSERT_EQ(bins_of(joint_histogram(img, 2.5, 1.0, p, 3, table)), t::oracle::joint_histogram(img, 2.5, 1.0, p, 3)) << p;
    }
}

TEST(JointHistogram, FusedPassEqualsPerRadiusCalls) {
    const RadiusScheme scheme(8, {2, 3, 4, 7});
    const Riu2Table table(8);
    const auto img = t::textured_image(40, 11);
    const auto fused = joint_histograms(img, scheme, table);
    ASSERT_EQ(fused.size(), 4u);
    for (std::size_t i = 0; i < scheme.count(); ++i)
        EXPECT_EQ(fused[i], joint_histogram(img, scheme.radius(i), scheme.inner_radius(i), 8, scheme.margin(), table));
}

TEST(JointHistogram, Rot90Invariant) {
    const RadiusScheme scheme(8, {1, 2, 3, 4, 7});
    const Riu2Table table(8);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto img = t::random_image(24, 24, 300 + seed);
        EXPECT_EQ(joint_histograms(t::rot90(img), scheme, table), joint_histograms(img, scheme, table)) << seed;
    }
}

TEST(JointHistogram, OffsetInvariant) {
    const RadiusScheme scheme(8, {2, 3, 4});
    const Riu2Table table(8);
    const auto img = t::random_image(20, 20, 17);
    EXPECT_EQ(joint_histograms(t::affine(img, 1.0, 1000.0), scheme, table), joint_histograms(img, scheme, table));
}

TEST(JointHistogram, CodesStayInRange) {
    const Riu2Table table(8);
    const auto h = joint_histogram(t::random_image(30, 30, 2), 3.0, 1.0, 8, 3, table);
    EXPECT_EQ(h.size(), 2u * 10 * 10);
    EXPECT_EQ(h.total(), 24u * 24);
}

TEST(JointHistogram, Errors) {
    const Riu2Table table(8);
    const auto img = GrayImage::filled(8, 8, 1.0);
    EXPECT_THROW(joint_histogram(img, 3.0, kCenter, 8, 2, table), ParameterError);
    EXPECT_THROW(joint_histogram(img, 3.0, kCenter, 8, 4, table), ParameterError);
    EXPECT_THROW(joint_histogram(img, 2.0, 3.0, 8, 3, table), ParameterError);
    EXPECT_THROW(joint_histogram(img, 2.0, kCenter, 6, 3, table), ParameterError);
    EXPECT_THROW(joint_histograms(img, RadiusScheme(8, {4}), table), ParameterError);
}

TEST(JointHistogram, MergeIsAdditive) {
    JointHistogram a(8), b(8);
    a.add(1, 2, 3);
    b.add(1, 2, 3);
    b.add(0, 9, 9);
    a += b;
    EXPECT_EQ(a.bins()[a.index(1, 2, 3)], 2u);
    EXPECT_EQ(a.bins()[a.index(0, 9, 9)], 1u);
    EXPECT_EQ(a.total(), 3u);
    EXPECT_THROW(a += JointHistogram(4), ParameterError);
}
