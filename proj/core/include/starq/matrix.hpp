#pragma once

#include "starq/poly.hpp"
#include "starq/scalar.hpp"

#include <string>
#include <vector>

namespace starq {

/// Dense matrix over the exact scalar field.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static ScalarMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    ScalarMatrix operator+(const ScalarMatrix& o) const;
    ScalarMatrix operator-(const ScalarMatrix& o) const;
    ScalarMatrix operator*(const ScalarMatrix& o) const;
    ScalarMatrix scale(const Scalar& c) const;
    bool operator==(const ScalarMatrix& o) const = default;

    bool is_zero() const;
    /// True when the matrix equals lambda * Id; stores lambda.
    bool is_scalar_matrix(Scalar& lambda) const;

    /// Rank by Gaussian elimination over the field.
    int rank() const;

    /// Plain row-major text: one row per line, entries space separated.
    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

/// Rank of a matrix with polynomial entries (fraction-free Bareiss
/// elimination; all divisions exact).
int poly_matrix_rank(std::vector<std::vector<Polynomial>> m);

/// Solves A x = b for square invertible A over the scalars, with polynomial
/// right-hand sides.  Throws std::domain_error when A is singular.
std::vector<Polynomial> solve_scalar_system(ScalarMatrix a, std::vector<Polynomial> b);

/// Gaussian elimination for a general rational system A x = b.  Returns a
/// particular solution (free unknowns set to zero) or nothing if
/// inconsistent.
std::optional<std::vector<Scalar>> solve_linear_system(ScalarMatrix a, std::vector<Scalar> b);

} // namespace starq
