#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chebmotion {

// Row-major dense matrix, just big enough for constraint systems and
// least-squares design matrices.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

// Solve A x = b for square A by LU with partial pivoting, then one round of
// iterative refinement with the residual accumulated in long double. The
// boundary-constraint systems feed endpoint accelerations that get divided
// by a^2*c, so the extra digits are not optional. Throws std::runtime_error
// on a (numerically) singular matrix.
std::vector<double> solve_linear(const Matrix& a, std::span<const double> b);

struct LeastSquaresFit {
    std::vector<double> x;
    double residual_norm = 0.0; // ||A x - b||_2
};

// Minimize ||A x - b||_2 via Householder QR (rows >= cols). Throws
// std::runtime_error on rank deficiency.
LeastSquaresFit least_squares(const Matrix& a, std::span<const double> b);

} // namespace chebmotion
