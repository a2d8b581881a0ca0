#pragma once

#include "focklab/weights.hpp"

namespace testutil {

/// e^{Re z}: separable weight with closed-form square means.
inline focklab::Weight exp_re() {
    focklab::Weight w;
    w.eval = [](focklab::cplx z) { return std::exp(z.real()); };
    w.meta.exp_linear_rate = 1.0;
    w.label = "exp_re";
    return w;
}

/// e^{c |z|^2}: used only on bounded regions.
inline focklab::Weight exp_norm_sq(double c) {
    focklab::Weight w;
    w.eval = [c](focklab::cplx z) { return std::exp(c * std::norm(z)); };
    w.meta.gaussian_decay_rate = -std::min(c, 0.0);
    w.label = "exp_norm_sq";
    return w;
}

}  // namespace testutil
