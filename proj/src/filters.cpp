#include "fusewave/filters.hpp"

#include <initializer_list>

namespace fusewave {

namespace {

Eigen::VectorXd taps(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

// Coefficients as distributed with the `dtcwt` reference implementation
// (biort 'near_sym_b', qshift 'qshift_06'), printed at full double precision.
FilterBank make_standard() {
    FilterBank fb;
    fb.h0o = taps({-0.0017578125, 0.0, 0.022265625, -0.046875, -0.0482421875, 0.296875, 0.55546875, 0.296875,
                   -0.0482421875, -0.046875, 0.022265625, 0.0, -0.0017578125});
    fb.g0o = taps({7.062639508928571e-05, 0.0, -0.0013419015066964285, -0.0018833705357142855, 0.007156808035714285,
                   0.023856026785714284, -0.05564313616071428, -0.05168805803571428, 0.29975760323660716,
                   0.5594308035714286, 0.29975760323660716, -0.05168805803571428, -0.05564313616071428,
                   0.023856026785714284, 0.007156808035714285, -0.0018833705357142855, -0.0013419015066964285, 0.0,
                   7.062639508928571e-05});
    fb.h1o = taps({-7.062639508928571e-05, 0.0, 0.0013419015066964285, -0.0018833705357142855, -0.007156808035714285,
                   0.023856026785714284, 0.05564313616071428, -0.05168805803571428, -0.29975760323660716,
                   0.5594308035714286, -0.29975760323660716, -0.05168805803571428, 0.05564313616071428,
                   0.023856026785714284, -0.007156808035714285, -0.0018833705357142855, 0.0013419015066964285, 0.0,
                   -7.062639508928571e-05});
    fb.g1o = taps({-0.0017578125, 0.0, 0.022265625, 0.046875, -0.0482421875, -0.296875, 0.55546875, -0.296875,
                   -0.0482421875, 0.046875, 0.022265625, 0.0, -0.0017578125});

    fb.h0a = taps({0.03516383657149474, 0.0, -0.08832942445107285, 0.23389032060723564, 0.7602723690661257,
                   0.5875182977235605, 0.0, -0.11430183714424873, 0.0, 0.0});
    fb.h0b = fb.h0a.reverse();
    fb.h1a = taps({0.0, 0.0, -0.11430183714424873, 0.0, 0.5875182977235605, -0.7602723690661257, 0.23389032060723564,
                   0.08832942445107285, 0.0, -0.03516383657149474});
    fb.h1b = fb.h1a.reverse();
    fb.g0a = fb.h0b;
    fb.g0b = fb.h0a;
    fb.g1a = fb.h1b;
    fb.g1b = fb.h1a;
    return fb;
}

}  // namespace

const FilterBank& FilterBank::standard() {
    static const FilterBank bank = make_standard();
    return bank;
}

Eigen::VectorXd FilterBank::level1_tree_b_lowpass() const {
    Eigen::VectorXd delayed = Eigen::VectorXd::Zero(h0o.size() + 1);
    delayed.tail(h0o.size()) = h0o;
    return delayed;
}

}  // namespace fusewave
