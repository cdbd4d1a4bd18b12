#ifndef FUSEWAVE_IMAGE_HPP
#define FUSEWAVE_IMAGE_HPP

#include <Eigen/Dense>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace fusewave {

/// Dense row-major plane, the storage type for rasters and coefficient planes.
template <typename Scalar>
using PlaneT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Plane = PlaneT<double>;

/// Thrown for unreadable, malformed, or unsupported image files.
class ImageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Extent {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;

    friend bool operator==(const Extent&, const Extent&) = default;
};

/// Grayscale raster. Rows are image lines (height), columns are width.
///
/// Invariants, checked on construction: at least 2x2, all values finite, and
/// values within [0, 255] when the declared depth is 8. Depth 0 marks a
/// derived raster (e.g. a reconstruction) with no range guarantee.
class Image {
public:
    static constexpr int kDerived = 0;

    Image() = default;
    explicit Image(Plane pixels, int depth = kDerived);

    Eigen::Index width() const { return pixels_.cols(); }
    Eigen::Index height() const { return pixels_.rows(); }
    Extent extent() const { return {pixels_.rows(), pixels_.cols()}; }
    int depth() const { return depth_; }

    const Plane& pixels() const { return pixels_; }
    double operator()(Eigen::Index row, Eigen::Index col) const { return pixels_(row, col); }

private:
    Plane pixels_;
    int depth_ = kDerived;
};

/// Reads an 8-bit grayscale PGM (P2 or P5, maxval <= 255) or PNG. Values are
/// taken verbatim; a PGM with maxval < 255 is not rescaled.
Image load_image(const std::filesystem::path& path);

/// Writes binary P5 PGM or 8-bit grayscale PNG, chosen by the file extension.
/// Pixels are clamped to [0, 255] and rounded half-up.
void save_image(const Image& img, const std::filesystem::path& path);

/// Quantizes one value the way save_image does.
unsigned char quantize_8bit(double value);

struct PaddedImage {
    Image image;
    Extent original;
};

/// Symmetrically pads on the right and bottom so both dimensions are multiples
/// of `factor`. The reflection is half-sample (boundary sample repeated), the
/// same extension the wavelet filters use: padding a 6-row image to 8 copies
/// rows 5, 4 into rows 6, 7.
PaddedImage pad_to_multiple(const Image& img, Eigen::Index factor);

/// Top-left crop. Throws std::invalid_argument if `extent` exceeds the image.
Image crop(const Image& img, Extent extent);

/// Index into [0, n) of position `i` under half-sample symmetric reflection
/// (..., 1, 0, 0, 1, ..., n-1, n-1, n-2, ...). Any integer `i` is valid.
Eigen::Index reflect_index(Eigen::Index i, Eigen::Index n);

}  // namespace fusewave

#endif  // FUSEWAVE_IMAGE_HPP
