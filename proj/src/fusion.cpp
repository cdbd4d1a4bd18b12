#include "fusewave/fusion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fusewave {

namespace {

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

void FusionWeights::validate() const {
    if (highpass.empty() || highpass.size() % kOrientations != 0) {
        throw std::invalid_argument("highpass weight count must be a positive multiple of 6");
    }
    if (!in_unit_interval(lowpass)) throw std::invalid_argument("lowpass weight outside [0, 1]");
    for (double w : highpass) {
        if (!in_unit_interval(w)) throw std::invalid_argument("highpass weight outside [0, 1]");
    }
}

FusionWeights FusionWeights::uniform(int levels, double w) {
    FusionWeights out{w, std::vector<double>(static_cast<std::size_t>(kOrientations * levels), w)};
    out.validate();
    return out;
}

FusionWeights weights_from_vector(const Eigen::VectorXd& x, int levels) {
    if (levels < 1) throw std::invalid_argument("levels must be positive");
    if (x.size() != weight_dimension(levels)) {
        throw std::invalid_argument("weight vector for " + std::to_string(levels) + " levels needs " +
                                    std::to_string(weight_dimension(levels)) + " entries, got " +
                                    std::to_string(x.size()));
    }
    FusionWeights w;
    w.lowpass = x(0);
    w.highpass.assign(x.data() + 1, x.data() + x.size());
    w.validate();
    return w;
}

Eigen::VectorXd to_vector(const FusionWeights& w) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(w.highpass.size()) + 1);
    x(0) = w.lowpass;
    for (std::size_t i = 0; i < w.highpass.size(); ++i) x(static_cast<Eigen::Index>(i) + 1) = w.highpass[i];
    return x;
}

Pyramid fuse_pyramids(const Pyramid& first, const Pyramid& second, const FusionWeights& w) {
    w.validate();
    if (first.levels != second.levels || first.lowpass.rows() != second.lowpass.rows() ||
        first.lowpass.cols() != second.lowpass.cols() || !(first.source_extent == second.source_extent)) {
        throw std::invalid_argument("pyramids differ in structure");
    }
    if (w.levels() != first.levels) throw std::invalid_argument("weight count does not match pyramid levels");
    first.validate();
    second.validate();

    Pyramid out;
    out.levels = first.levels;
    out.source_extent = first.source_extent;
    out.lowpass = w.lowpass * first.lowpass + (1.0 - w.lowpass) * second.lowpass;
    out.highpass.reserve(first.highpass.size());
    for (std::size_t i = 0; i < first.highpass.size(); ++i) {
        const Subband& a = first.highpass[i];
        const Subband& b = second.highpass[i];
        const double ws = w.highpass[i];
        out.highpass.push_back({a.level, a.orientation, ws * a.real + (1.0 - ws) * b.real,
                                ws * a.imag + (1.0 - ws) * b.imag});
    }
    return out;
}

}  // namespace fusewave
