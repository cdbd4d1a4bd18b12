#ifndef FUSEWAVE_DTCWT_HPP
#define FUSEWAVE_DTCWT_HPP

#include "fusewave/filters.hpp"
#include "fusewave/image.hpp"

#include <array>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace fusewave {

/// Subband directions. The enumerator order is the storage order inside a
/// level and the order of fusion weights.
enum class Orientation : int { Pos15 = 0, Pos45, Pos75, Neg75, Neg45, Neg15 };

inline constexpr int kOrientations = 6;
inline constexpr int kMaxLevels = 6;

inline constexpr std::array<Orientation, kOrientations> kOrientationOrder = {
    Orientation::Pos15, Orientation::Pos45, Orientation::Pos75,
    Orientation::Neg75, Orientation::Neg45, Orientation::Neg15};

std::string_view to_string(Orientation o);

/// The orientation with the same angle magnitude and opposite sign.
constexpr Orientation mirror(Orientation o) {
    return static_cast<Orientation>(kOrientations - 1 - static_cast<int>(o));
}

/// Thrown when a pyramid does not have the shape its level count implies.
class PyramidError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One oriented complex subband.
struct Subband {
    int level = 1;
    Orientation orientation = Orientation::Pos15;
    Plane real;
    Plane imag;

    double energy() const { return real.squaredNorm() + imag.squaredNorm(); }
};

/// Dual-tree coefficient set.
///
/// `lowpass` holds the four tree lowpass outputs interleaved in 2x2 quads, so
/// it is twice the size of a level-L subband in each direction. `highpass`
/// stores six subbands per level, level-major, orientations in
/// kOrientationOrder. `source_extent` is the region of the reconstruction the
/// inverse returns; it may be smaller than the transformed size when the
/// source was padded.
struct Pyramid {
    int levels = 0;
    Plane lowpass;
    std::vector<Subband> highpass;
    Extent source_extent;

    /// Size of the plane the transform actually operated on.
    Extent transformed_extent() const;

    const Subband& subband(int level, Orientation o) const;
    Subband& subband(int level, Orientation o);

    /// Throws PyramidError when counts, labels, or dimensions are inconsistent.
    void validate() const;
};

/// Forward transform. Image dimensions must be divisible by 2^levels and
/// levels must lie in [1, kMaxLevels]; throws std::invalid_argument otherwise.
Pyramid forward(const Image& img, int levels, const FilterBank& bank = FilterBank::standard());

/// Inverse transform, cropped to pyr.source_extent.
Image inverse(const Pyramid& pyr, const FilterBank& bank = FilterBank::standard());

/// Forward transform of an arbitrary-size image: pads to a multiple of
/// 2^levels and records the original extent so inverse() crops back.
Pyramid decompose(const Image& img, int levels, const FilterBank& bank = FilterBank::standard());

enum class TreeSelection { Dual, Single };

/// Shift-sensitivity diagnostic. For every circular shift (dy, dx) with
/// dy, dx in {0, step, ..., 3*step}, measures each subband's energy; the
/// per-subband score is (max - min) / mean over the shifts and the per-level
/// result is the worst subband. `Single` scores only tree a's real
/// coefficients (three separable subbands per level), the plain decimated
/// wavelet baseline. Subbands with energy below 1e-20 of the image energy
/// score 0.
std::vector<double> shift_sensitivity(const Image& img, int levels, TreeSelection trees = TreeSelection::Dual,
                                      Eigen::Index step = 1, const FilterBank& bank = FilterBank::standard());

namespace detail {

/// Quad plane (2r x 2c) to the two complex subbands of one direction pair.
void quads_to_complex(const Plane& quads, Subband& first, Subband& second);

/// Inverse of quads_to_complex.
Plane complex_to_quads(const Subband& first, const Subband& second);

}  // namespace detail

}  // namespace fusewave

#endif  // FUSEWAVE_DTCWT_HPP
