#ifndef FUSEWAVE_FILTERS_HPP
#define FUSEWAVE_FILTERS_HPP

#include <Eigen/Dense>

namespace fusewave {

/// Analysis/synthesis filters of the dual-tree transform.
///
/// Level 1 uses an odd-length biorthogonal pair applied without decimation;
/// the two trees are the even and odd polyphase samples of that output, which
/// is the same as running tree b with the tree-a filter delayed by one sample.
/// Levels >= 2 use even-length Q-shift filters whose tree-b filters are the
/// time reverse of tree a, giving the quarter-sample delay difference.
struct FilterBank {
    // Level 1, shared by both trees.
    Eigen::VectorXd h0o, h1o, g0o, g1o;
    // Q-shift analysis.
    Eigen::VectorXd h0a, h0b, h1a, h1b;
    // Q-shift synthesis.
    Eigen::VectorXd g0a, g0b, g1a, g1b;

    /// near_sym_b (13,19-tap) at level 1 with the 10-tap Q-shift pair
    /// (qshift_06) below it, both from N. Kingsbury's DTCWT designs.
    static const FilterBank& standard();

    /// Tree-b level-1 lowpass: h0o delayed by one sample.
    Eigen::VectorXd level1_tree_b_lowpass() const;
};

}  // namespace fusewave

#endif  // FUSEWAVE_FILTERS_HPP
