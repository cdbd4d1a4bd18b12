// Writes the bundled 256x256 CT/MR-style phantom pair.
//
// CT: dark background, bright skull ring, nearly flat brain, a few dense
// calcifications. Low entropy, edges dominated by bone.
// MR: dim skull, textured gray/white matter folds, dark ventricles, mild
// smooth noise. The two share geometry so they are registered by construction.

#include "fusewave/image.hpp"
#include "fusewave/mopso.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>

namespace {

using fusewave::Plane;

constexpr int kSize = 256;

struct Ellipse {
    double cy, cx, ry, rx;

    double radius(double y, double x) const {
        const double dy = (y - cy) / ry;
        const double dx = (x - cx) / rx;
        return std::sqrt(dy * dy + dx * dx);
    }
};

constexpr Ellipse kHead{128.0, 128.0, 112.0, 92.0};
constexpr Ellipse kBrain{128.0, 128.0, 100.0, 80.0};
constexpr Ellipse kLeftVentricle{118.0, 112.0, 22.0, 8.0};
constexpr Ellipse kRightVentricle{118.0, 144.0, 22.0, 8.0};

// Bilinear upsampling of a coarse uniform grid: smooth, deterministic noise.
Plane smooth_noise(std::uint64_t seed, int cells) {
    fusewave::mopso::Rng rng(seed);
    Eigen::MatrixXd grid(cells + 1, cells + 1);
    for (Eigen::Index r = 0; r <= cells; ++r)
        for (Eigen::Index c = 0; c <= cells; ++c) grid(r, c) = rng.uniform() - 0.5;
    Plane out(kSize, kSize);
    const double step = static_cast<double>(kSize) / cells;
    for (int r = 0; r < kSize; ++r) {
        for (int c = 0; c < kSize; ++c) {
            const double y = r / step, x = c / step;
            const int y0 = static_cast<int>(y), x0 = static_cast<int>(x);
            const double fy = y - y0, fx = x - x0;
            out(r, c) = (1 - fy) * ((1 - fx) * grid(y0, x0) + fx * grid(y0, x0 + 1)) +
                        fy * ((1 - fx) * grid(y0 + 1, x0) + fx * grid(y0 + 1, x0 + 1));
        }
    }
    return out;
}

Plane make_ct() {
    Plane img = Plane::Zero(kSize, kSize);
    for (int r = 0; r < kSize; ++r) {
        for (int c = 0; c < kSize; ++c) {
            const double head = kHead.radius(r, c);
            const double brain = kBrain.radius(r, c);
            if (head > 1.0) continue;
            if (brain > 1.0) {
                img(r, c) = 235.0;
            } else {
                img(r, c) = 40.0;
                if (kLeftVentricle.radius(r, c) < 1.0 || kRightVentricle.radius(r, c) < 1.0) img(r, c) = 28.0;
            }
        }
    }
    const Ellipse calcifications[] = {{150.0, 128.0, 4.0, 4.0}, {90.0, 170.0, 3.0, 3.0}, {176.0, 96.0, 3.0, 5.0}};
    for (const auto& e : calcifications)
        for (int r = 0; r < kSize; ++r)
            for (int c = 0; c < kSize; ++c)
                if (e.radius(r, c) < 1.0) img(r, c) = 200.0;
    return img;
}

Plane make_mr() {
    const Plane noise = smooth_noise(7, 32);
    Plane img = Plane::Zero(kSize, kSize);
    for (int r = 0; r < kSize; ++r) {
        for (int c = 0; c < kSize; ++c) {
            const double head = kHead.radius(r, c);
            const double brain = kBrain.radius(r, c);
            if (head > 1.0) continue;
            if (brain > 1.0) {
                // Scalp fat is bright on MR, cortical bone dark.
                img(r, c) = head > 0.96 ? 170.0 : 25.0;
                continue;
            }
            const double theta = std::atan2(r - kBrain.cy, c - kBrain.cx);
            const double folds = std::sin(18.0 * theta + 14.0 * brain) * std::cos(9.0 * brain * std::numbers::pi);
            const double white = brain < 0.75 + 0.12 * folds ? 1.0 : 0.0;
            img(r, c) = 95.0 + 55.0 * white + 18.0 * folds + 40.0 * noise(r, c);
            if (kLeftVentricle.radius(r, c) < 1.0 || kRightVentricle.radius(r, c) < 1.0) img(r, c) = 30.0;
        }
    }
    return img.cwiseMax(0.0).cwiseMin(255.0).unaryExpr([](double v) { return std::floor(v + 0.5); });
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    try {
        std::filesystem::create_directories(dir);
        fusewave::save_image(fusewave::Image(make_ct(), 8), dir / "phantom_ct.pgm");
        fusewave::save_image(fusewave::Image(make_mr(), 8), dir / "phantom_mr.pgm");
    } catch (const std::exception& e) {
        std::cerr << "make_phantoms: " << e.what() << "\n";
        return 1;
    }
    std::cout << "wrote " << (dir / "phantom_ct.pgm").string() << " and " << (dir / "phantom_mr.pgm").string() << "\n";
    return 0;
}
