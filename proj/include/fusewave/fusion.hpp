#ifndef FUSEWAVE_FUSION_HPP
#define FUSEWAVE_FUSION_HPP

#include "fusewave/dtcwt.hpp"

#include <vector>

namespace fusewave {

/// Convex fusion weights: one for the lowpass plane, one per subband.
///
/// Highpass weights are level-major, orientations in kOrientationOrder. A
/// weight w blends coefficients as w * first + (1 - w) * second.
struct FusionWeights {
    double lowpass = 0.5;
    std::vector<double> highpass;

    int levels() const { return static_cast<int>(highpass.size()) / kOrientations; }
    double highpass_weight(int level, Orientation o) const {
        return highpass.at(static_cast<std::size_t>((level - 1) * kOrientations + static_cast<int>(o)));
    }

    /// Throws std::invalid_argument unless the size is 6 * levels and every
    /// entry lies in [0, 1].
    void validate() const;

    /// Same weight everywhere.
    static FusionWeights uniform(int levels, double w);
};

/// Decision-vector length for a decomposition depth: 1 + 6 * levels.
constexpr Eigen::Index weight_dimension(int levels) { return 1 + kOrientations * levels; }

FusionWeights weights_from_vector(const Eigen::VectorXd& x, int levels);
Eigen::VectorXd to_vector(const FusionWeights& w);

/// Coefficient-wise convex combination of two pyramids of identical shape.
/// Real and imaginary parts of a subband share its weight.
Pyramid fuse_pyramids(const Pyramid& first, const Pyramid& second, const FusionWeights& w);

}  // namespace fusewave

#endif  // FUSEWAVE_FUSION_HPP
