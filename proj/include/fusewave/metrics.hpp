#ifndef FUSEWAVE_METRICS_HPP
#define FUSEWAVE_METRICS_HPP

#include "fusewave/image.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fusewave::metrics {

inline constexpr double kPeak = 255.0;
inline constexpr double kSsimC1 = (0.01 * kPeak) * (0.01 * kPeak);
inline constexpr double kSsimC2 = (0.03 * kPeak) * (0.03 * kPeak);
/// Stand-in for an infinite PSNR inside fitness vectors.
inline constexpr double kPsnrCeiling = 1000.0;
inline constexpr int kObjectives = 6;

template <typename A, typename B>
void require_same_shape(const Eigen::DenseBase<A>& a, const Eigen::DenseBase<B>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("image dimensions differ");
}

/// Shannon entropy in bits of the 256-bin histogram. Values are rounded
/// half-up and clamped to [0, 255] before binning.
template <typename Derived>
double entropy(const Eigen::DenseBase<Derived>& x) {
    std::array<double, 256> hist{};
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        for (Eigen::Index c = 0; c < x.cols(); ++c) {
            const double v = std::clamp(static_cast<double>(x(r, c)), 0.0, kPeak);
            hist[static_cast<std::size_t>(std::floor(v + 0.5))] += 1.0;
        }
    }
    const double n = static_cast<double>(x.size());
    double e = 0.0;
    for (double count : hist) {
        if (count == 0.0) continue;
        const double p = count / n;
        e -= p * std::log2(p);
    }
    return e;
}

template <typename A, typename B>
double rmse(const Eigen::DenseBase<A>& reference, const Eigen::DenseBase<B>& test) {
    require_same_shape(reference, test);
    const double sum = (reference.derived().template cast<double>() - test.derived().template cast<double>())
                           .array()
                           .square()
                           .sum();
    return std::sqrt(sum / static_cast<double>(reference.size()));
}

/// 10 log10(255^2 / RMSE^2); +infinity when the images are identical.
inline double psnr_from_rmse(double rmse_value) {
    if (rmse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeak * kPeak / (rmse_value * rmse_value));
}

template <typename A, typename B>
double psnr(const Eigen::DenseBase<A>& reference, const Eigen::DenseBase<B>& test) {
    return psnr_from_rmse(rmse(reference, test));
}

/// Mean of absolute values.
template <typename Derived>
double mean(const Eigen::DenseBase<Derived>& x) {
    return x.derived().template cast<double>().array().abs().sum() / static_cast<double>(x.size());
}

/// Root mean squared deviation from mean(x); note mean() takes |x|.
template <typename Derived>
double sd(const Eigen::DenseBase<Derived>& x) {
    const double m = mean(x);
    const double ss = (x.derived().template cast<double>().array() - m).square().sum();
    return std::sqrt(ss / static_cast<double>(x.size()));
}

/// Global structural similarity without the cross-covariance term:
///   (2 mu_f mu_r + C1)(2 sigma_f sigma_r + C2) /
///   ((mu_f^2 + mu_r^2 + C1)(sigma_f^2 + sigma_r^2 + C2))
/// with arithmetic means and population standard deviations over the image.
template <typename A, typename B>
double ssim_paper(const Eigen::DenseBase<A>& reference, const Eigen::DenseBase<B>& test) {
    require_same_shape(reference, test);
    const auto r = reference.derived().template cast<double>().array();
    const auto f = test.derived().template cast<double>().array();
    const double n = static_cast<double>(reference.size());
    const double mu_r = r.sum() / n;
    const double mu_f = f.sum() / n;
    const double var_r = (r - mu_r).square().sum() / n;
    const double var_f = (f - mu_f).square().sum() / n;
    // sigma_f * sigma_r as sqrt(var_f * var_r): exact when the images match.
    const double sigma_fr = std::sqrt(var_f * var_r);
    return ((2.0 * mu_f * mu_r + kSsimC1) * (2.0 * sigma_fr + kSsimC2)) /
           ((mu_f * mu_f + mu_r * mu_r + kSsimC1) * (var_f + var_r + kSsimC2));
}

/// Conventional SSIM for comparison: covariance numerator, 8x8 box windows at
/// every position, averaged. Images smaller than a window use one window.
double ssim_standard(const Plane& reference, const Plane& test);

inline double entropy(const Image& img) { return entropy(img.pixels()); }
inline double rmse(const Image& a, const Image& b) { return rmse(a.pixels(), b.pixels()); }
inline double psnr(const Image& a, const Image& b) { return psnr(a.pixels(), b.pixels()); }
inline double mean(const Image& img) { return mean(img.pixels()); }
inline double sd(const Image& img) { return sd(img.pixels()); }
inline double ssim_paper(const Image& a, const Image& b) { return ssim_paper(a.pixels(), b.pixels()); }
inline double ssim_standard(const Image& a, const Image& b) { return ssim_standard(a.pixels(), b.pixels()); }

/// Quality of a fused image against its two sources.
struct MetricsReport {
    double entropy = 0.0;
    double psnr = 0.0;  // mean of psnr_a and psnr_b; may be +infinity
    double rmse = 0.0;  // mean of rmse_a and rmse_b
    double ssim_vs_a = 0.0;
    double ssim_vs_b = 0.0;
    double sd = 0.0;
    double mean = 0.0;
    double rmse_a = 0.0;
    double rmse_b = 0.0;
    double psnr_a = 0.0;
    double psnr_b = 0.0;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport evaluate(const Image& fused, const Image& source_a, const Image& source_b);

/// Minimization-convention objectives, in order:
///   -entropy, mean RMSE, -mean PSNR (infinite PSNR counted as 1000 dB),
///   -SD, -SSIM vs a, -SSIM vs b.
Eigen::VectorXd fitness_vector(const MetricsReport& report);
Eigen::VectorXd fitness_vector(const Image& fused, const Image& source_a, const Image& source_b);

/// JSON-safe number: infinities become the strings "inf" / "-inf".
nlohmann::json json_number(double v);

/// Flat object with keys entropy, psnr, rmse, ssim_vs_a, ssim_vs_b, sd, mean,
/// rmse_a, rmse_b, psnr_a, psnr_b.
nlohmann::json to_json(const MetricsReport& report);

}  // namespace fusewave::metrics

#endif  // FUSEWAVE_METRICS_HPP
