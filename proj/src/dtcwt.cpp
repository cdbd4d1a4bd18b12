#include "fusewave/dtcwt.hpp"

#include "fusewave/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fusewave {

using filtering::coldfilt;
using filtering::colfilter;
using filtering::colifilt;

std::string_view to_string(Orientation o) {
    switch (o) {
        case Orientation::Pos15: return "+15";
        case Orientation::Pos45: return "+45";
        case Orientation::Pos75: return "+75";
        case Orientation::Neg75: return "-75";
        case Orientation::Neg45: return "-45";
        case Orientation::Neg15: return "-15";
    }
    return "?";
}

Extent Pyramid::transformed_extent() const {
    if (levels < 1) return {};
    const Eigen::Index scale = Eigen::Index{1} << (levels - 1);
    return {lowpass.rows() * scale, lowpass.cols() * scale};
}

const Subband& Pyramid::subband(int level, Orientation o) const {
    if (level < 1 || level > levels) throw PyramidError("subband level out of range");
    return highpass.at(static_cast<std::size_t>((level - 1) * kOrientations + static_cast<int>(o)));
}

Subband& Pyramid::subband(int level, Orientation o) {
    return const_cast<Subband&>(static_cast<const Pyramid&>(*this).subband(level, o));
}

void Pyramid::validate() const {
    if (levels < 1 || levels > kMaxLevels) throw PyramidError("pyramid level count out of range");
    if (highpass.size() != static_cast<std::size_t>(kOrientations * levels)) {
        throw PyramidError("pyramid must hold 6 subbands per level");
    }
    if (lowpass.rows() < 2 || lowpass.cols() < 2 || lowpass.rows() % 2 || lowpass.cols() % 2) {
        throw PyramidError("lowpass plane must have even dimensions");
    }
    const Extent full = transformed_extent();
    for (int level = 1; level <= levels; ++level) {
        const Eigen::Index rows = full.rows >> level;
        const Eigen::Index cols = full.cols >> level;
        for (Orientation o : kOrientationOrder) {
            const auto& s = highpass[static_cast<std::size_t>((level - 1) * kOrientations + static_cast<int>(o))];
            if (s.level != level || s.orientation != o) throw PyramidError("subband stored out of order");
            if (s.real.rows() != rows || s.real.cols() != cols || s.imag.rows() != rows || s.imag.cols() != cols) {
                throw PyramidError("subband at level " + std::to_string(level) + " has wrong dimensions");
            }
        }
    }
    if (source_extent.rows < 2 || source_extent.cols < 2 || source_extent.rows > full.rows ||
        source_extent.cols > full.cols) {
        throw PyramidError("source extent does not fit the transformed plane");
    }
}

namespace detail {

void quads_to_complex(const Plane& quads, Subband& first, Subband& second) {
    const double s = std::sqrt(0.5);
    const Eigen::Index rows = quads.rows() / 2;
    const Eigen::Index cols = quads.cols() / 2;
    first.real.resize(rows, cols);
    first.imag.resize(rows, cols);
    second.real.resize(rows, cols);
    second.imag.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            // p = (a + jb) / sqrt2, q = (d - jc) / sqrt2
            const double a = quads(2 * r, 2 * c), b = quads(2 * r, 2 * c + 1);
            const double cq = quads(2 * r + 1, 2 * c), d = quads(2 * r + 1, 2 * c + 1);
            const double p_re = a * s, p_im = b * s;
            const double q_re = d * s, q_im = -cq * s;
            first.real(r, c) = p_re - q_re;
            first.imag(r, c) = p_im - q_im;
            second.real(r, c) = p_re + q_re;
            second.imag(r, c) = p_im + q_im;
        }
    }
}

Plane complex_to_quads(const Subband& first, const Subband& second) {
    const double s = std::sqrt(0.5);
    const Eigen::Index rows = first.real.rows();
    const Eigen::Index cols = first.real.cols();
    Plane quads(2 * rows, 2 * cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double p_re = (first.real(r, c) + second.real(r, c)) * s;
            const double p_im = (first.imag(r, c) + second.imag(r, c)) * s;
            const double q_re = (first.real(r, c) - second.real(r, c)) * s;
            const double q_im = (first.imag(r, c) - second.imag(r, c)) * s;
            quads(2 * r, 2 * c) = p_re;
            quads(2 * r, 2 * c + 1) = p_im;
            quads(2 * r + 1, 2 * c) = q_im;
            quads(2 * r + 1, 2 * c + 1) = -q_re;
        }
    }
    return quads;
}

}  // namespace detail

namespace {

// Separable outputs of one level, in quad layout.
struct LevelQuads {
    Plane lolo;
    Plane lohi;  // vertical highpass, horizontal lowpass -> +/-15
    Plane hilo;  // vertical lowpass, horizontal highpass -> +/-75
    Plane hihi;  // -> +/-45
};

void store_level(Pyramid& pyr, int level, const LevelQuads& q) {
    const auto at = [&](Orientation o) -> Subband& {
        auto& s = pyr.highpass[static_cast<std::size_t>((level - 1) * kOrientations + static_cast<int>(o))];
        s.level = level;
        s.orientation = o;
        return s;
    };
    detail::quads_to_complex(q.lohi, at(Orientation::Pos15), at(Orientation::Neg15));
    detail::quads_to_complex(q.hilo, at(Orientation::Pos75), at(Orientation::Neg75));
    detail::quads_to_complex(q.hihi, at(Orientation::Pos45), at(Orientation::Neg45));
}

LevelQuads analyse_level1(const Plane& x, const FilterBank& fb) {
    const Plane lo = colfilter(x, fb.h0o).transpose();
    const Plane hi = colfilter(x, fb.h1o).transpose();
    LevelQuads q;
    q.lolo = colfilter(lo, fb.h0o).transpose();
    q.lohi = colfilter(hi, fb.h0o).transpose();
    q.hilo = colfilter(lo, fb.h1o).transpose();
    q.hihi = colfilter(hi, fb.h1o).transpose();
    return q;
}

LevelQuads analyse_qshift(const Plane& x, const FilterBank& fb) {
    const Plane lo = coldfilt(x, fb.h0b, fb.h0a).transpose();
    const Plane hi = coldfilt(x, fb.h1b, fb.h1a).transpose();
    LevelQuads q;
    q.lolo = coldfilt(lo, fb.h0b, fb.h0a).transpose();
    q.lohi = coldfilt(hi, fb.h0b, fb.h0a).transpose();
    q.hilo = coldfilt(lo, fb.h1b, fb.h1a).transpose();
    q.hihi = coldfilt(hi, fb.h1b, fb.h1a).transpose();
    return q;
}

void check_transformable(Extent e, int levels) {
    if (levels < 1 || levels > kMaxLevels) {
        throw std::invalid_argument("levels must be in [1, " + std::to_string(kMaxLevels) + "], got " +
                                    std::to_string(levels));
    }
    const Eigen::Index factor = Eigen::Index{1} << levels;
    if (e.rows % factor != 0 || e.cols % factor != 0) {
        throw std::invalid_argument("image " + std::to_string(e.rows) + "x" + std::to_string(e.cols) +
                                    " is not divisible by 2^" + std::to_string(levels));
    }
}

Plane circular_shift(const Plane& x, Eigen::Index dy, Eigen::Index dx) {
    Plane out(x.rows(), x.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        const Eigen::Index sr = ((r - dy) % x.rows() + x.rows()) % x.rows();
        for (Eigen::Index c = 0; c < x.cols(); ++c) out(r, c) = x(sr, ((c - dx) % x.cols() + x.cols()) % x.cols());
    }
    return out;
}

// Per-level subband energies for one image.
std::vector<std::vector<double>> subband_energies(const Pyramid& pyr, TreeSelection trees) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(pyr.levels));
    for (int level = 1; level <= pyr.levels; ++level) {
        auto& e = out[static_cast<std::size_t>(level - 1)];
        if (trees == TreeSelection::Dual) {
            for (Orientation o : kOrientationOrder) e.push_back(pyr.subband(level, o).energy());
            continue;
        }
        constexpr std::array<std::array<Orientation, 2>, 3> pairs = {{{Orientation::Pos15, Orientation::Neg15},
                                                                       {Orientation::Pos75, Orientation::Neg75},
                                                                       {Orientation::Pos45, Orientation::Neg45}}};
        for (const auto& pair : pairs) {
            const Plane quads = detail::complex_to_quads(pyr.subband(level, pair[0]), pyr.subband(level, pair[1]));
            double tree_a = 0.0;
            for (Eigen::Index r = 0; r < quads.rows(); r += 2) {
                for (Eigen::Index c = 0; c < quads.cols(); c += 2) tree_a += quads(r, c) * quads(r, c);
            }
            e.push_back(tree_a);
        }
    }
    return out;
}

}  // namespace

Pyramid forward(const Image& img, int levels, const FilterBank& bank) {
    check_transformable(img.extent(), levels);
    Pyramid pyr;
    pyr.levels = levels;
    pyr.source_extent = img.extent();
    pyr.highpass.resize(static_cast<std::size_t>(kOrientations * levels));

    LevelQuads q = analyse_level1(img.pixels(), bank);
    store_level(pyr, 1, q);
    for (int level = 2; level <= levels; ++level) {
        q = analyse_qshift(q.lolo, bank);
        store_level(pyr, level, q);
    }
    pyr.lowpass = std::move(q.lolo);
    return pyr;
}

Pyramid decompose(const Image& img, int levels, const FilterBank& bank) {
    check_transformable({Eigen::Index{1} << levels, Eigen::Index{1} << levels}, levels);
    PaddedImage padded = pad_to_multiple(img, Eigen::Index{1} << levels);
    Pyramid pyr = forward(padded.image, levels, bank);
    pyr.source_extent = padded.original;
    return pyr;
}

Image inverse(const Pyramid& pyr, const FilterBank& fb) {
    pyr.validate();
    Plane z = pyr.lowpass;
    const auto quads = [&](int level, Orientation a, Orientation b) {
        return detail::complex_to_quads(pyr.subband(level, a), pyr.subband(level, b));
    };
    for (int level = pyr.levels; level >= 1; --level) {
        const Plane lh = quads(level, Orientation::Pos15, Orientation::Neg15);
        const Plane hl = quads(level, Orientation::Pos75, Orientation::Neg75);
        const Plane hh = quads(level, Orientation::Pos45, Orientation::Neg45);
        if (level >= 2) {
            const Plane y1 = colifilt(z, fb.g0b, fb.g0a) + colifilt(lh, fb.g1b, fb.g1a);
            const Plane y2 = colifilt(hl, fb.g0b, fb.g0a) + colifilt(hh, fb.g1b, fb.g1a);
            const Plane y1t = y1.transpose();
            const Plane y2t = y2.transpose();
            z = (colifilt(y1t, fb.g0b, fb.g0a) + colifilt(y2t, fb.g1b, fb.g1a)).transpose();
        } else {
            const Plane y1 = colfilter(z, fb.g0o) + colfilter(lh, fb.g1o);
            const Plane y2 = colfilter(hl, fb.g0o) + colfilter(hh, fb.g1o);
            const Plane y1t = y1.transpose();
            const Plane y2t = y2.transpose();
            z = (colfilter(y1t, fb.g0o) + colfilter(y2t, fb.g1o)).transpose();
        }
    }
    return Image(z.topLeftCorner(pyr.source_extent.rows, pyr.source_extent.cols), Image::kDerived);
}

std::vector<double> shift_sensitivity(const Image& img, int levels, TreeSelection trees, Eigen::Index step,
                                      const FilterBank& bank) {
    check_transformable(img.extent(), levels);
    if (step < 1) throw std::invalid_argument("shift step must be positive");

    std::vector<std::vector<std::vector<double>>> per_shift;
    for (Eigen::Index sy = 0; sy < 4; ++sy) {
        for (Eigen::Index sx = 0; sx < 4; ++sx) {
            const Image shifted(circular_shift(img.pixels(), sy * step, sx * step), Image::kDerived);
            per_shift.push_back(subband_energies(forward(shifted, levels, bank), trees));
        }
    }

    // Subbands whose energy is round-off relative to the image count as empty.
    const double floor = 1e-20 * img.pixels().squaredNorm();
    std::vector<double> score(static_cast<std::size_t>(levels), 0.0);
    for (std::size_t level = 0; level < score.size(); ++level) {
        for (std::size_t band = 0; band < per_shift.front()[level].size(); ++band) {
            double lo = per_shift.front()[level][band], hi = lo, sum = 0.0;
            for (const auto& energies : per_shift) {
                const double e = energies[level][band];
                lo = std::min(lo, e);
                hi = std::max(hi, e);
                sum += e;
            }
            const double mean = sum / static_cast<double>(per_shift.size());
            if (mean > floor) score[level] = std::max(score[level], (hi - lo) / mean);
        }
    }
    return score;
}

}  // namespace fusewave
