#include "fusewave/metrics.hpp"
#include "metrics_oracle.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fusewave;
namespace m = fusewave::metrics;

namespace {

std::vector<double> flat(const Plane& p) { return {p.data(), p.data() + p.size()}; }

}  // namespace

TEST(Entropy, KnownDistributions) {
    EXPECT_EQ(m::entropy(Plane::Constant(8, 8, 42.0)), 0.0);
    Plane half(4, 4);
    half.topRows(2).setConstant(0.0);
    half.bottomRows(2).setConstant(255.0);
    EXPECT_DOUBLE_EQ(m::entropy(half), 1.0);
    Plane quarters(4, 4);
    quarters.row(0).setConstant(0.0);
    quarters.row(1).setConstant(64.0);
    quarters.row(2).setConstant(128.0);
    quarters.row(3).setConstant(192.0);
    EXPECT_DOUBLE_EQ(m::entropy(quarters), 2.0);
}

TEST(Entropy, RoundsHalfUpAndClamps) {
    Plane p(2, 2);
    p << 0.5, 1.49, -7.0, 300.0;  // bins 1, 1, 0, 255
    EXPECT_DOUBLE_EQ(m::entropy(p), 1.5);
}

TEST(Rmse, KnownValues) {
    const Plane r = Plane::Zero(2, 2);
    EXPECT_EQ(m::rmse(r, r), 0.0);
    EXPECT_DOUBLE_EQ(m::rmse(r, Plane::Constant(2, 2, 2.0)), 2.0);
    Plane f = Plane::Zero(2, 2);
    f(1, 1) = 4.0;
    EXPECT_DOUBLE_EQ(m::rmse(r, f), 2.0);
    EXPECT_THROW(m::rmse(r, Plane::Zero(2, 3)), std::invalid_argument);
}

TEST(Psnr, KnownValues) {
    EXPECT_DOUBLE_EQ(m::psnr_from_rmse(255.0), 0.0);
    EXPECT_TRUE(std::isinf(m::psnr(Plane::Zero(3, 3), Plane::Zero(3, 3))));
    EXPECT_NEAR(m::psnr_from_rmse(2.0), 42.1102, 1e-4);
}

TEST(SsimPaper, KnownValues) {
    const Plane x = test::random_plane(9, 7, 3);
    EXPECT_EQ(m::ssim_paper(x, x), 1.0);
    EXPECT_DOUBLE_EQ(m::ssim_paper(Plane::Constant(4, 4, 9.0), Plane::Constant(4, 4, 9.0)), 1.0);
    // C1 / (255^2 + C1) with C1 = 6.5025
    const double expected = 6.5025 / (255.0 * 255.0 + 6.5025);
    EXPECT_NEAR(m::ssim_paper(Plane::Constant(4, 4, 255.0), Plane::Constant(4, 4, 0.0)), expected, 1e-15);
}

TEST(SsimStandard, IdentityAndSensitivityToStructure) {
    const Plane x = test::random_plane(32, 32, 4);
    EXPECT_NEAR(m::ssim_standard(x, x), 1.0, 1e-12);
    // Same global moments, scrambled structure: only the windowed form notices.
    Plane flipped = x.colwise().reverse();
    EXPECT_LT(m::ssim_standard(x, flipped), 0.5);
    EXPECT_NEAR(m::ssim_paper(x, flipped), 1.0, 1e-12);
    EXPECT_NEAR(m::ssim_standard(Plane::Constant(4, 4, 10.0), Plane::Constant(4, 4, 10.0)), 1.0, 1e-12);
}

TEST(MeanSd, ShiftInvarianceOnNonNegativeImages) {
    const Plane x = test::random_plane(6, 6, 14);
    EXPECT_NEAR(m::sd(x), m::sd(Plane((x.array() + 40.0).matrix())), 1e-12);
}

TEST(MeanSd, KnownValues) {
    EXPECT_EQ(m::sd(Plane::Constant(3, 3, 17.0)), 0.0);
    EXPECT_EQ(m::mean(Plane::Constant(3, 3, 17.0)), 17.0);
    Plane p(1, 2);
    p << 0.0, 2.0;
    EXPECT_DOUBLE_EQ(m::mean(p), 1.0);
    EXPECT_DOUBLE_EQ(m::sd(p), 1.0);
    // MEAN takes |F|, and SD deviates from that MEAN: sqrt(((-2 - 2)^2 + 0) / 2)
    p << -2.0, 2.0;
    EXPECT_DOUBLE_EQ(m::mean(p), 2.0);
    EXPECT_DOUBLE_EQ(m::sd(p), std::sqrt(8.0));
}

TEST(Metrics, AgreeWithLoopOracle) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Plane r = test::random_8bit_plane(8, 8, 2 * seed);
        const Plane f = test::random_plane(8, 8, 2 * seed + 1);
        EXPECT_NEAR(m::entropy(f), oracle::entropy(flat(f)), 1e-12);
        EXPECT_NEAR(m::rmse(r, f), oracle::rmse(flat(r), flat(f)), 1e-12);
        EXPECT_NEAR(m::psnr(r, f), oracle::psnr(flat(r), flat(f)), 1e-12);
        EXPECT_NEAR(m::ssim_paper(r, f), oracle::ssim(flat(r), flat(f)), 1e-12);
        EXPECT_NEAR(m::sd(f), oracle::sd(flat(f)), 1e-12);
        EXPECT_NEAR(m::mean(f), oracle::mean(flat(f)), 1e-12);
    }
}

TEST(FitnessVector, IdentityCase) {
    const Image a(test::random_8bit_plane(16, 16, 9), 8);
    const Eigen::VectorXd f = m::fitness_vector(a, a, a);
    ASSERT_EQ(f.size(), m::kObjectives);
    EXPECT_EQ(f(0), -m::entropy(a));
    EXPECT_EQ(f(1), 0.0);
    EXPECT_EQ(f(2), -m::kPsnrCeiling);
    EXPECT_EQ(f(3), -m::sd(a));
    EXPECT_EQ(f(4), -1.0);
    EXPECT_EQ(f(5), -1.0);
}

TEST(FitnessVector, MatchesReportAndOracle) {
    const Plane a = test::random_8bit_plane(8, 8, 11);
    const Plane b = test::random_8bit_plane(8, 8, 12);
    const Plane fused = 0.3 * a + 0.7 * b;
    const m::MetricsReport rep = m::evaluate(Image(fused), Image(a), Image(b));
    EXPECT_DOUBLE_EQ(rep.rmse, 0.5 * (rep.rmse_a + rep.rmse_b));
    EXPECT_DOUBLE_EQ(rep.psnr, 0.5 * (rep.psnr_a + rep.psnr_b));
    const Eigen::VectorXd f = m::fitness_vector(rep);
    EXPECT_NEAR(f(0), -oracle::entropy(flat(fused)), 1e-12);
    EXPECT_NEAR(f(1), 0.5 * (oracle::rmse(flat(a), flat(fused)) + oracle::rmse(flat(b), flat(fused))), 1e-12);
    EXPECT_NEAR(f(2), -0.5 * (oracle::psnr(flat(a), flat(fused)) + oracle::psnr(flat(b), flat(fused))), 1e-12);
    EXPECT_NEAR(f(3), -oracle::sd(flat(fused)), 1e-12);
    EXPECT_NEAR(f(4), -oracle::ssim(flat(a), flat(fused)), 1e-12);
    EXPECT_NEAR(f(5), -oracle::ssim(flat(b), flat(fused)), 1e-12);
}

TEST(Report, JsonUsesInfString) {
    const Image a(test::random_8bit_plane(8, 8, 13), 8);
    const nlohmann::json j = m::to_json(m::evaluate(a, a, a));
    for (const char* key : {"entropy", "psnr", "rmse", "ssim_vs_a", "ssim_vs_b", "sd", "mean", "rmse_a", "rmse_b",
                            "psnr_a", "psnr_b"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["psnr"], "inf");
    EXPECT_EQ(j["rmse"], 0.0);
}
