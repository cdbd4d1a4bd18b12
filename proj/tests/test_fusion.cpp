#include "fusewave/fusion.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace fusewave;

TEST(FusionWeights, VectorLayout) {
    Eigen::VectorXd x(7);
    x << 0.5, 1, 1, 1, 1, 1, 1;
    const FusionWeights w = weights_from_vector(x, 1);
    EXPECT_EQ(w.lowpass, 0.5);
    EXPECT_EQ(w.levels(), 1);
    for (Orientation o : kOrientationOrder) EXPECT_EQ(w.highpass_weight(1, o), 1.0);
    EXPECT_EQ(weight_dimension(3), 19);
    EXPECT_THROW(weights_from_vector(Eigen::VectorXd::Constant(18, 0.5), 3), std::invalid_argument);
}

TEST(FusionWeights, RoundTripAndValidation) {
    const Eigen::VectorXd x = test::random_plane(19, 1, 3, 0.0, 1.0).col(0);
    EXPECT_EQ(to_vector(weights_from_vector(x, 3)), x);
    Eigen::VectorXd bad = x;
    bad(4) = 1.5;
    EXPECT_THROW(weights_from_vector(bad, 3), std::invalid_argument);
    bad(4) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(weights_from_vector(bad, 3), std::invalid_argument);
}

TEST(FusePyramids, EqualInputsAreFixedPoints) {
    const Pyramid p = forward(Image(test::random_plane(32, 32, 1)), 2);
    const FusionWeights w = weights_from_vector(test::random_plane(13, 1, 2, 0.0, 1.0).col(0), 2);
    const Pyramid out = fuse_pyramids(p, p, w);
    EXPECT_TRUE(out.lowpass.isApprox(p.lowpass, 1e-15));
    for (std::size_t i = 0; i < p.highpass.size(); ++i) {
        EXPECT_LT((out.highpass[i].real - p.highpass[i].real).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((out.highpass[i].imag - p.highpass[i].imag).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(FusePyramids, WeightOneSelectsFirst) {
    const Pyramid a = forward(Image(test::random_plane(32, 32, 3)), 2);
    const Pyramid b = forward(Image(test::random_plane(32, 32, 4)), 2);
    const Pyramid out = fuse_pyramids(a, b, FusionWeights::uniform(2, 1.0));
    EXPECT_EQ(out.lowpass, a.lowpass);
    for (std::size_t i = 0; i < a.highpass.size(); ++i) EXPECT_EQ(out.highpass[i].imag, a.highpass[i].imag);
}

TEST(FusePyramids, PerSubbandArithmetic) {
    Pyramid a = forward(Image(Plane::Zero(16, 16)), 1);
    Pyramid b = a;
    a.subband(1, Orientation::Neg45).real(0, 0) = 4.0;
    b.subband(1, Orientation::Neg45).real(0, 0) = 2.0;
    a.subband(1, Orientation::Neg45).imag(1, 1) = 4.0;
    FusionWeights w = FusionWeights::uniform(1, 0.0);
    w.highpass[static_cast<std::size_t>(Orientation::Neg45)] = 0.5;
    const Pyramid out = fuse_pyramids(a, b, w);
    EXPECT_EQ(out.subband(1, Orientation::Neg45).real(0, 0), 3.0);
    EXPECT_EQ(out.subband(1, Orientation::Neg45).imag(1, 1), 2.0);
}

TEST(FusePyramids, RejectsMismatchedStructure) {
    const Pyramid a = forward(Image(Plane::Zero(16, 16)), 1);
    const Pyramid b = forward(Image(Plane::Zero(16, 16)), 2);
    const Pyramid c = forward(Image(Plane::Zero(32, 16)), 1);
    EXPECT_THROW(fuse_pyramids(a, b, FusionWeights::uniform(1, 0.5)), std::invalid_argument);
    EXPECT_THROW(fuse_pyramids(a, c, FusionWeights::uniform(1, 0.5)), std::invalid_argument);
    EXPECT_THROW(fuse_pyramids(a, a, FusionWeights::uniform(2, 0.5)), std::invalid_argument);
}
