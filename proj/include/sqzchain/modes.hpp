#pragma once

#include <span>
#include <utility>

#include "sqzchain/noise_algebra.hpp"

namespace sqz {

// 1-D Hermite-Gauss profile psi_n(x) ~ H_n(x/w) exp(-x^2 / (2 w^2)), unit L2
// norm. Order 0 is the fundamental (symmetric) mode, order 1 the first
// antisymmetric one. `width` is the 1/e intensity half-width of order 0.
struct TransverseMode {
    int order = 0;
    double width = 1.0;

    void validate() const;
};

double hermite_gauss(const TransverseMode& mode, double x);

// Integral of psi_p psi_m psi_n over +-12 of the largest width, adaptive
// Simpson to 1e-10 absolute.
double triple_overlap(const TransverseMode& p, const TransverseMode& m, const TransverseMode& n);

using WeightedLevels = std::pair<NoiseLevels, double>;

NoiseLevels multimode_noise(std::span<const WeightedLevels> per_mode);

}  // namespace sqz
