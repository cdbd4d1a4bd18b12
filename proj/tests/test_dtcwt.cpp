#include "fusewave/dtcwt.hpp"
#include "fusewave/filters.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace fusewave;

namespace {

Image reference_input(Eigen::Index rows, Eigen::Index cols) {
    Plane p(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) p(r, c) = ((r * 37 + c * 91) % 101) / 4.0 + (r == c ? 10.0 : 0.0);
    return Image(p);
}

double max_highpass_magnitude(const Pyramid& pyr) {
    double m = 0.0;
    for (const auto& s : pyr.highpass) m = std::max(m, (s.real.array().square() + s.imag.array().square()).sqrt().maxCoeff());
    return m;
}

}  // namespace

TEST(Filters, QshiftTreesAreTimeReversed) {
    const FilterBank& f = FilterBank::standard();
    EXPECT_EQ(f.h0b, f.h0a.reverse().eval());
    EXPECT_EQ(f.h1b, f.h1a.reverse().eval());
    EXPECT_EQ(f.g0a, f.h0b);
    EXPECT_EQ(f.g0b, f.h0a);
}

TEST(Filters, NormalizationAndVanishingMoment) {
    const FilterBank& f = FilterBank::standard();
    EXPECT_NEAR(f.h0o.sum(), 1.0, 1e-14);
    EXPECT_NEAR(f.g0o.sum(), 1.0, 1e-14);
    EXPECT_NEAR(f.h1o.sum(), 0.0, 1e-14);
    EXPECT_NEAR(f.h0a.sum(), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(f.h1a.sum(), 0.0, 1e-14);
    EXPECT_NEAR(f.h0a.squaredNorm(), 1.0, 1e-14);
}

TEST(Filters, TreeBLevelOneLowpassIsDelayed) {
    const FilterBank& f = FilterBank::standard();
    const Eigen::VectorXd b = f.level1_tree_b_lowpass();
    ASSERT_EQ(b.size(), f.h0o.size() + 1);
    EXPECT_EQ(b(0), 0.0);
    EXPECT_EQ(b.tail(f.h0o.size()), f.h0o);
}

TEST(Dtcwt, MatchesFrozenReferenceCoefficients) {
    std::ifstream in(test::data_dir() / "dtcwt_reference.txt");
    ASSERT_TRUE(in) << "missing reference file";
    Eigen::Index rows = 0, cols = 0;
    int levels = 0;
    in >> rows >> cols >> levels;
    const Pyramid pyr = forward(reference_input(rows, cols), levels);

    std::string tag;
    Eigen::Index lr = 0, lc = 0;
    in >> tag >> lr >> lc;
    ASSERT_EQ(tag, "lowpass");
    ASSERT_EQ(pyr.lowpass.rows(), lr);
    ASSERT_EQ(pyr.lowpass.cols(), lc);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < lr * lc; ++i) {
        double v = 0.0;
        in >> v;
        worst = std::max(worst, std::abs(v - pyr.lowpass.data()[i]));
    }
    for (int n = 0; n < 6 * levels; ++n) {
        int level = 0, k = 0;
        Eigen::Index sr = 0, sc = 0;
        in >> tag >> level >> k >> sr >> sc;
        ASSERT_EQ(tag, "subband");
        const Subband& s = pyr.subband(level, static_cast<Orientation>(k));
        ASSERT_EQ(s.real.rows(), sr);
        ASSERT_EQ(s.real.cols(), sc);
        for (Eigen::Index i = 0; i < sr * sc; ++i) {
            double re = 0.0, im = 0.0;
            in >> re >> im;
            worst = std::max({worst, std::abs(re - s.real.data()[i]), std::abs(im - s.imag.data()[i])});
        }
    }
    ASSERT_TRUE(in);
    EXPECT_LT(worst, 1e-10);
}

TEST(Dtcwt, ConstantImageHasNoHighpassEnergy) {
    const Pyramid pyr = forward(Image(Plane::Constant(64, 64, 128.0)), 3);
    EXPECT_LT(max_highpass_magnitude(pyr), 1e-10);
}

TEST(Dtcwt, SubbandShapesHalvePerLevel) {
    const Pyramid pyr = forward(Image(test::random_plane(64, 64, 3)), 2);
    ASSERT_EQ(pyr.highpass.size(), 12u);
    for (Orientation o : kOrientationOrder) {
        EXPECT_EQ(pyr.subband(1, o).real.rows(), 32);
        EXPECT_EQ(pyr.subband(1, o).real.cols(), 32);
        EXPECT_EQ(pyr.subband(2, o).imag.rows(), 16);
        EXPECT_EQ(pyr.subband(2, o).imag.cols(), 16);
    }
    EXPECT_EQ(pyr.lowpass.rows(), 32);
    EXPECT_EQ(pyr.transformed_extent(), (Extent{64, 64}));
    EXPECT_NO_THROW(pyr.validate());
}

TEST(Dtcwt, MirrorOrientationsCarryEqualEnergyForAnImpulse) {
    Plane p = Plane::Zero(64, 64);
    p(32, 32) = 1.0;
    const Pyramid pyr = forward(Image(p), 3);
    for (int level = 1; level <= 3; ++level) {
        for (Orientation o : {Orientation::Pos15, Orientation::Pos45, Orientation::Pos75}) {
            const double e1 = pyr.subband(level, o).energy();
            const double e2 = pyr.subband(level, mirror(o)).energy();
            EXPECT_NEAR(e1, e2, 1e-9 * std::max(e1, e2)) << "level " << level << " " << to_string(o);
        }
    }
}

TEST(Dtcwt, PerfectReconstruction) {
    for (int levels = 1; levels <= 3; ++levels) {
        const Image img(test::random_plane(48, 72, 10 + levels));
        EXPECT_LT(test::relative_error(img.pixels(), inverse(forward(img, levels)).pixels()), 1e-8) << levels;
    }
}

TEST(Dtcwt, DeepAndOddSizedRoundTrips) {
    const Image deep(test::random_plane(128, 64, 21));
    EXPECT_LT(test::relative_error(deep.pixels(), inverse(forward(deep, 6)).pixels()), 1e-8);
    const Image odd(test::random_plane(37, 50, 22));
    const Image back = inverse(decompose(odd, 3));
    ASSERT_EQ(back.extent(), odd.extent());
    EXPECT_LT(test::relative_error(odd.pixels(), back.pixels()), 1e-8);
}

TEST(Dtcwt, ZeroPyramidReconstructsToZero) {
    Pyramid pyr = forward(Image(test::random_plane(32, 32, 4)), 2);
    pyr.lowpass.setZero();
    for (auto& s : pyr.highpass) {
        s.real.setZero();
        s.imag.setZero();
    }
    EXPECT_EQ(inverse(pyr).pixels().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Dtcwt, TransformIsLinear) {
    const Image img(test::random_plane(32, 48, 5));
    const double a = -3.25;
    const Plane scaled = inverse(forward(Image(a * img.pixels()), 3)).pixels();
    const Plane expected = a * inverse(forward(img, 3)).pixels();
    EXPECT_LT((scaled - expected).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Dtcwt, RejectsBadShapes) {
    EXPECT_THROW(forward(Image(Plane::Zero(30, 32)), 2), std::invalid_argument);
    EXPECT_THROW(forward(Image(Plane::Zero(32, 32)), 0), std::invalid_argument);
    EXPECT_THROW(forward(Image(Plane::Zero(128, 128)), 7), std::invalid_argument);
    Pyramid pyr = forward(Image(Plane::Zero(32, 32)), 2);
    pyr.highpass.pop_back();
    EXPECT_THROW(inverse(pyr), PyramidError);
}

TEST(Dtcwt, QuadMappingRoundTrips) {
    const Plane quads = test::random_plane(16, 20, 6, -1.0, 1.0);
    Subband s1, s2;
    detail::quads_to_complex(quads, s1, s2);
    EXPECT_LT((detail::complex_to_quads(s1, s2) - quads).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ShiftSensitivity, ConstantImageScoresZero) {
    for (double s : shift_sensitivity(Image(Plane::Constant(64, 64, 77.0)), 3)) EXPECT_EQ(s, 0.0);
}

TEST(ShiftSensitivity, DualTreeBeatsSingleTree) {
    const Image img(test::random_plane(64, 64, 8));
    const auto dual = shift_sensitivity(img, 3, TreeSelection::Dual);
    const auto single = shift_sensitivity(img, 3, TreeSelection::Single);
    ASSERT_EQ(dual.size(), 3u);
    for (std::size_t i = 0; i < dual.size(); ++i) EXPECT_LT(dual[i], single[i]) << "level " << i + 1;
}

TEST(ShiftSensitivity, FullStrideShiftOfPeriodicPatternIsInvisible) {
    Plane p(64, 64);
    for (Eigen::Index r = 0; r < 64; ++r)
        for (Eigen::Index c = 0; c < 64; ++c) p(r, c) = ((r % 8) * 13 + (c % 8) * 29) % 31;
    for (double s : shift_sensitivity(Image(p), 3, TreeSelection::Dual, 8)) EXPECT_LT(s, 1e-9);
}
