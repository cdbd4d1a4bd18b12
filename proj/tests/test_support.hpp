#ifndef FUSEWAVE_TEST_SUPPORT_HPP
#define FUSEWAVE_TEST_SUPPORT_HPP

#include "fusewave/image.hpp"

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

namespace fusewave::test {

inline Plane random_plane(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed, double lo = 0.0, double hi = 255.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Plane p(rows, cols);
    for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = dist(gen);
    return p;
}

inline Plane random_8bit_plane(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    Plane p(rows, cols);
    for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = dist(gen);
    return p;
}

inline double relative_error(const Plane& expected, const Plane& actual) {
    return (expected - actual).norm() / expected.norm();
}

// Fresh per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("fusewave_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path data_dir() { return FUSEWAVE_DATA_DIR; }

}  // namespace fusewave::test

#endif  // FUSEWAVE_TEST_SUPPORT_HPP
