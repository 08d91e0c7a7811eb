#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "oplab/config.hpp"
#include "oplab/errors.hpp"
#include "oplab/rng.hpp"

namespace oplab {

using complexd = std::complex<double>;

// Dense row-major complex matrix. Vectors are n x 1 matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const complexd> values);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<complexd>> rows);
    static ComplexMatrix column(std::span<const complexd> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    bool square() const { return rows_ == cols_ && rows_ > 0; }
    bool same_shape(const ComplexMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    complexd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const complexd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const complexd> data() const { return data_; }
    std::span<complexd> data() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(complexd s);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<complexd> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(complexd s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, complexd s);

// A^n by repeated multiplication (profiles need every intermediate anyway).
ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t n);

// <x, y> = sum_i x_i * conj(y_i) on column vectors.
complexd inner(const ComplexMatrix& x, const ComplexMatrix& y);
double norm2(const ComplexMatrix& x);

// Kronecker product with the convention kron(A, B) * vec(Z) = vec(B * Z * A^T),
// vec stacking columns. Throws SizeCapError when the result would exceed cap rows/cols.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t cap = kKroneckerRowCap);
ComplexMatrix vec(const ComplexMatrix& z);
ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols);

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

} // namespace oplab
