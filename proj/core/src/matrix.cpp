#include "starq/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace starq {

ScalarMatrix ScalarMatrix::identity(int n) {
    ScalarMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix: shape mismatch");
    ScalarMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix: shape mismatch");
    ScalarMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix: shape mismatch");
    ScalarMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

ScalarMatrix ScalarMatrix::scale(const Scalar& c) const {
    ScalarMatrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
}

bool ScalarMatrix::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

bool ScalarMatrix::is_scalar_matrix(Scalar& lambda) const {
    if (rows_ != cols_ || rows_ == 0) return false;
    lambda = at(0, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && !(at(i, j) == lambda)) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

int ScalarMatrix::rank() const {
    ScalarMatrix m = *this;
    int rank = 0;
    for (int col = 0; col < m.cols_ && rank < m.rows_; ++col) {
        int pivot = -1;
        for (int i = rank; i < m.rows_; ++i)
            if (!m.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < m.cols_; ++j) std::swap(m.at(rank, j), m.at(pivot, j));
        Scalar inv = m.at(rank, col).inverse();
        for (int j = col; j < m.cols_; ++j) m.at(rank, j) *= inv;
        for (int i = 0; i < m.rows_; ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (int j = col; j < m.cols_; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

std::string ScalarMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << at(i, j).str();
        }
        os << '\n';
    }
    return os.str();
}

int poly_matrix_rank(std::vector<std::vector<Polynomial>> m) {
    if (m.empty()) return 0;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    auto vars = m[0][0].vars();
    Polynomial prev = Polynomial::one(vars);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (!m[static_cast<size_t>(i)][static_cast<size_t>(col)].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(pivot)]);
        const Polynomial piv = m[static_cast<size_t>(rank)][static_cast<size_t>(col)];
        for (int i = rank + 1; i < rows; ++i) {
            auto& row = m[static_cast<size_t>(i)];
            const Polynomial mic = row[static_cast<size_t>(col)];
            for (int j = col; j < cols; ++j) {
                const Polynomial& rkj = m[static_cast<size_t>(rank)][static_cast<size_t>(j)];
                Polynomial num = piv * row[static_cast<size_t>(j)] - mic * rkj;
                row[static_cast<size_t>(j)] = num.is_zero() ? num : exact_divide(num, prev);
            }
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

std::vector<Polynomial> solve_scalar_system(ScalarMatrix a, std::vector<Polynomial> b) {
    int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_scalar_system: shape mismatch");
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (!a.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) throw std::domain_error("solve_scalar_system: singular matrix");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(col, j), a.at(pivot, j));
            std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(pivot)]);
        }
        Scalar inv = a.at(col, col).inverse();
        for (int j = col; j < n; ++j) a.at(col, j) *= inv;
        b[static_cast<size_t>(col)] = b[static_cast<size_t>(col)].scale(inv);
        for (int i = 0; i < n; ++i) {
            if (i == col || a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col);
            for (int j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
            b[static_cast<size_t>(i)] -= b[static_cast<size_t>(col)].scale(f);
        }
    }
    return b;
}

std::optional<std::vector<Scalar>> solve_linear_system(ScalarMatrix a, std::vector<Scalar> b) {
    int rows = a.rows(), cols = a.cols();
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (!a.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int j = 0; j < cols; ++j) std::swap(a.at(rank, j), a.at(pivot, j));
            std::swap(b[static_cast<size_t>(rank)], b[static_cast<size_t>(pivot)]);
        }
        Scalar inv = a.at(rank, col).inverse();
        for (int j = col; j < cols; ++j) a.at(rank, j) *= inv;
        b[static_cast<size_t>(rank)] = b[static_cast<size_t>(rank)] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || a.at(i, col).is_zero()) continue;
            Scalar f = a.at(i, col);
            for (int j = col; j < cols; ++j) a.at(i, j) -= f * a.at(rank, j);
            b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(rank)];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (int i = rank; i < rows; ++i)
        if (!b[static_cast<size_t>(i)].is_zero()) return std::nullopt;
    std::vector<Scalar> x(static_cast<size_t>(cols), Scalar(0));
    for (int i = 0; i < rank; ++i) x[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = b[static_cast<size_t>(i)];
    return x;
}

} // namespace starq
