#include "fusewave/metrics.hpp"

#include <algorithm>

namespace fusewave::metrics {

double ssim_standard(const Plane& reference, const Plane& test) {
    require_same_shape(reference, test);
    const Eigen::Index wr = std::min<Eigen::Index>(8, reference.rows());
    const Eigen::Index wc = std::min<Eigen::Index>(8, reference.cols());
    const double n = static_cast<double>(wr * wc);
    double total = 0.0;
    Eigen::Index windows = 0;
    for (Eigen::Index r = 0; r + wr <= reference.rows(); ++r) {
        for (Eigen::Index c = 0; c + wc <= reference.cols(); ++c) {
            const auto x = reference.block(r, c, wr, wc).array();
            const auto y = test.block(r, c, wr, wc).array();
            const double mx = x.sum() / n, my = y.sum() / n;
            const double vx = (x - mx).square().sum() / n;
            const double vy = (y - my).square().sum() / n;
            const double cov = ((x - mx) * (y - my)).sum() / n;
            total += ((2.0 * mx * my + kSsimC1) * (2.0 * cov + kSsimC2)) /
                     ((mx * mx + my * my + kSsimC1) * (vx + vy + kSsimC2));
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

MetricsReport evaluate(const Image& fused, const Image& source_a, const Image& source_b) {
    MetricsReport m;
    m.entropy = entropy(fused);
    m.rmse_a = rmse(source_a, fused);
    m.rmse_b = rmse(source_b, fused);
    m.rmse = 0.5 * (m.rmse_a + m.rmse_b);
    m.psnr_a = psnr_from_rmse(m.rmse_a);
    m.psnr_b = psnr_from_rmse(m.rmse_b);
    m.psnr = 0.5 * (m.psnr_a + m.psnr_b);
    m.ssim_vs_a = ssim_paper(source_a, fused);
    m.ssim_vs_b = ssim_paper(source_b, fused);
    m.sd = sd(fused);
    m.mean = mean(fused);
    return m;
}

Eigen::VectorXd fitness_vector(const MetricsReport& m) {
    const auto finite_psnr = [](double p) { return std::isinf(p) && p > 0 ? kPsnrCeiling : p; };
    Eigen::VectorXd f(kObjectives);
    f << -m.entropy, m.rmse, -0.5 * (finite_psnr(m.psnr_a) + finite_psnr(m.psnr_b)), -m.sd, -m.ssim_vs_a,
        -m.ssim_vs_b;
    return f;
}

Eigen::VectorXd fitness_vector(const Image& fused, const Image& source_a, const Image& source_b) {
    if (!(fused.extent() == source_a.extent()) || !(fused.extent() == source_b.extent())) {
        throw std::invalid_argument("image dimensions differ");
    }
    return fitness_vector(evaluate(fused, source_a, source_b));
}

nlohmann::json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

nlohmann::json to_json(const MetricsReport& m) {
    return {
        {"entropy", json_number(m.entropy)},
        {"psnr", json_number(m.psnr)},
        {"rmse", json_number(m.rmse)},
        {"ssim_vs_a", json_number(m.ssim_vs_a)},
        {"ssim_vs_b", json_number(m.ssim_vs_b)},
        {"sd", json_number(m.sd)},
        {"mean", json_number(m.mean)},
        {"rmse_a", json_number(m.rmse_a)},
        {"rmse_b", json_number(m.rmse_b)},
        {"psnr_a", json_number(m.psnr_a)},
        {"psnr_b", json_number(m.psnr_b)},
    };
}

}  // namespace fusewave::metrics
