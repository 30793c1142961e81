#pragma once

#include <cstddef>
#include <vector>

namespace chebmotion {

// Gauss-Legendre rule on [-1, 1]: exact for polynomials up to degree 2n-1.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t n);

} // namespace chebmotion
