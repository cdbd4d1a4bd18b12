#ifndef FUSEWAVE_FILTERING_HPP
#define FUSEWAVE_FILTERING_HPP

// Column filtering primitives of the dual-tree transform. Every routine
// filters down the columns (along the row index) of a plane with symmetric
// half-sample extension at both ends; callers transpose for row filtering.
// Ported from the colfilter / coldfilt / colifilt routines of N. Kingsbury's
// DTCWT toolbox.

#include "fusewave/image.hpp"

#include <stdexcept>
#include <vector>

namespace fusewave::filtering {

/// Row selection into `x` used to build an extended, reordered input.
using RowIndex = std::vector<Eigen::Index>;

/// 'valid' convolution of the selected rows of `x` with `h`:
///   out.row(i) = sum_k h[k] * x.row(rows[i + m - 1 - k]),  m = h.size()
/// Output has rows.size() - m + 1 rows.
template <typename Derived>
PlaneT<typename Derived::Scalar> convolve_rows(const Eigen::MatrixBase<Derived>& x, const RowIndex& rows,
                                               const Eigen::VectorXd& h) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index m = h.size();
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size()) - m + 1;
    PlaneT<Scalar> out = PlaneT<Scalar>::Zero(n, x.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < m; ++k) {
            const double tap = h(k);
            if (tap == 0.0) continue;
            out.row(i).noalias() += Scalar(tap) * x.row(rows[i + m - 1 - k]);
        }
    }
    return out;
}

/// Reflected row indices for extended positions [first, last).
inline RowIndex extended_rows(Eigen::Index first, Eigen::Index last, Eigen::Index n) {
    RowIndex idx;
    idx.reserve(static_cast<std::size_t>(last - first));
    for (Eigen::Index i = first; i < last; ++i) idx.push_back(reflect_index(i, n));
    return idx;
}

/// Picks xe[t] for t = start, start + step, ... < stop, shifted by `offset`.
inline RowIndex pick(const RowIndex& xe, Eigen::Index start, Eigen::Index stop, Eigen::Index step,
                     Eigen::Index offset) {
    RowIndex out;
    for (Eigen::Index t = start; t < stop; t += step) out.push_back(xe[t + offset]);
    return out;
}

/// Every other tap starting at `first`.
inline Eigen::VectorXd taps_from(const Eigen::VectorXd& h, Eigen::Index first) {
    Eigen::VectorXd out((h.size() - first + 1) / 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = h(first + 2 * i);
    return out;
}

/// Undecimated filtering with an odd-length filter; output has x's size.
template <typename Derived>
PlaneT<typename Derived::Scalar> colfilter(const Eigen::MatrixBase<Derived>& x, const Eigen::VectorXd& h) {
    if (h.size() % 2 == 0) throw std::invalid_argument("colfilter expects an odd-length filter");
    const Eigen::Index m2 = h.size() / 2;
    return convolve_rows(x, extended_rows(-m2, x.rows() + m2, x.rows()), h);
}

/// Decimating Q-shift filtering: `ha` runs on one polyphase stream, `hb` on
/// the other, and the two decimated outputs are interleaved. Rows of x must be
/// a multiple of 4; output has half as many rows.
template <typename Derived>
PlaneT<typename Derived::Scalar> coldfilt(const Eigen::MatrixBase<Derived>& x, const Eigen::VectorXd& ha,
                                          const Eigen::VectorXd& hb) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index r = x.rows();
    const Eigen::Index m = ha.size();
    if (r % 4 != 0) throw std::invalid_argument("coldfilt needs a row count divisible by 4");
    if (hb.size() != m || m % 2 != 0) throw std::invalid_argument("coldfilt needs equal even-length filters");

    const RowIndex xe = extended_rows(-m, r + m, r);
    const Eigen::Index stop = r + 2 * m - 2;
    const Eigen::VectorXd hao = taps_from(ha, 0), hae = taps_from(ha, 1);
    const Eigen::VectorXd hbo = taps_from(hb, 0), hbe = taps_from(hb, 1);

    const PlaneT<Scalar> ya = convolve_rows(x, pick(xe, 5, stop, 4, -1), hao) +
                              convolve_rows(x, pick(xe, 5, stop, 4, -3), hae);
    const PlaneT<Scalar> yb = convolve_rows(x, pick(xe, 5, stop, 4, 0), hbo) +
                              convolve_rows(x, pick(xe, 5, stop, 4, -2), hbe);

    const bool a_first = ha.dot(hb) > 0.0;
    PlaneT<Scalar> y(r / 2, x.cols());
    for (Eigen::Index i = 0; i < r / 4; ++i) {
        y.row(2 * i) = a_first ? ya.row(i) : yb.row(i);
        y.row(2 * i + 1) = a_first ? yb.row(i) : ya.row(i);
    }
    return y;
}

/// Interpolating Q-shift filtering, the synthesis counterpart of coldfilt.
/// Rows of x must be even; output has twice as many rows.
template <typename Derived>
PlaneT<typename Derived::Scalar> colifilt(const Eigen::MatrixBase<Derived>& x, const Eigen::VectorXd& ha,
                                          const Eigen::VectorXd& hb) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index r = x.rows();
    const Eigen::Index m = ha.size();
    if (r % 2 != 0) throw std::invalid_argument("colifilt needs an even row count");
    if (hb.size() != m || m % 2 != 0) throw std::invalid_argument("colifilt needs equal even-length filters");

    PlaneT<Scalar> y = PlaneT<Scalar>::Zero(2 * r, x.cols());
    if (x.isZero(0.0)) return y;

    const Eigen::Index m2 = m / 2;
    const RowIndex xe = extended_rows(-m2, r + m2, r);
    const bool a_first = ha.dot(hb) > 0.0;
    const Eigen::VectorXd hao = taps_from(ha, 0), hae = taps_from(ha, 1);
    const Eigen::VectorXd hbo = taps_from(hb, 0), hbe = taps_from(hb, 1);

    PlaneT<Scalar> y0, y1, y2, y3;
    if (m2 % 2 == 0) {
        const Eigen::Index start = 3, stop = r + m;
        const Eigen::Index ta = a_first ? 0 : -1, tb = a_first ? -1 : 0;
        y0 = convolve_rows(x, pick(xe, start, stop, 2, tb - 2), hae);
        y1 = convolve_rows(x, pick(xe, start, stop, 2, ta - 2), hbe);
        y2 = convolve_rows(x, pick(xe, start, stop, 2, tb), hao);
        y3 = convolve_rows(x, pick(xe, start, stop, 2, ta), hbo);
    } else {
        const Eigen::Index start = 2, stop = r + m - 1;
        const Eigen::Index ta = a_first ? 0 : -1, tb = a_first ? -1 : 0;
        y0 = convolve_rows(x, pick(xe, start, stop, 2, tb), hao);
        y1 = convolve_rows(x, pick(xe, start, stop, 2, ta), hbo);
        y2 = convolve_rows(x, pick(xe, start, stop, 2, tb), hae);
        y3 = convolve_rows(x, pick(xe, start, stop, 2, ta), hbe);
    }
    for (Eigen::Index i = 0; i < r / 2; ++i) {
        y.row(4 * i) = y0.row(i);
        y.row(4 * i + 1) = y1.row(i);
        y.row(4 * i + 2) = y2.row(i);
        y.row(4 * i + 3) = y3.row(i);
    }
    return y;
}

}  // namespace fusewave::filtering

#endif  // FUSEWAVE_FILTERING_HPP
