#include "oplab/matrix.hpp"

#include <cmath>

namespace oplab {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const complexd> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<complexd>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("from_rows: ragged row lengths");
        std::size_t j = 0;
        for (complexd v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const complexd> values) {
    ComplexMatrix m(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = (*this)(i, j);
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const complexd& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const complexd& v : data_) s = std::max(s, std::abs(v));
    return s;
}

bool ComplexMatrix::all_finite() const {
    for (const complexd& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0,
                                   std::size_t nrows, std::size_t ncols) const {
    if (r0 + nrows > rows_ || c0 + ncols > cols_)
        throw DimensionError("block: range outside matrix");
    ComplexMatrix m(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j)
            m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
        throw DimensionError("set_block: range outside matrix");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            (*this)(r0 + i, c0 + j) = b(i, j);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (!same_shape(o)) throw DimensionError("operator+=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (!same_shape(o)) throw DimensionError("operator-=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complexd s) {
    for (complexd& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("operator*: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    // i-k-j order; skipping zero pivots pays off on shift-like operators.
    for (std::size_t i = 0; i < n; ++i) {
        complexd* orow = &out(i, 0);
        for (std::size_t kk = 0; kk < k; ++kk) {
            const complexd aik = a(i, kk);
            if (aik == complexd{}) continue;
            const complexd* brow = &b(kk, 0);
            for (std::size_t j = 0; j < m; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

ComplexMatrix operator*(complexd s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, complexd s) { return a *= s; }

ComplexMatrix matrix_power(const ComplexMatrix& a, std::size_t n) {
    if (!a.square()) throw DimensionError("matrix_power: matrix must be square");
    ComplexMatrix p = ComplexMatrix::identity(a.rows());
    for (std::size_t i = 0; i < n; ++i) p = p * a;
    return p;
}

complexd inner(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.cols() != 1 || y.cols() != 1 || x.rows() != y.rows())
        throw DimensionError("inner: expects equal-length column vectors");
    complexd s = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, 0) * std::conj(y(i, 0));
    return s;
}

double norm2(const ComplexMatrix& x) {
    double s = 0.0;
    for (const complexd& v : x.data()) s += std::norm(v);
    return std::sqrt(s);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t cap) {
    if (a.empty() || b.empty()) throw DimensionError("kron: empty factor");
    const std::size_t r = a.rows() * b.rows();
    const std::size_t c = a.cols() * b.cols();
    if (r > cap || c > cap)
        throw SizeCapError("kron: result exceeds size cap of " + std::to_string(cap));
    ComplexMatrix out(r, c);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complexd aij = a(i, j);
            if (aij == complexd{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix vec(const ComplexMatrix& z) {
    // Column stacking, to match kron(A, B) vec(Z) = vec(B Z A^T).
    ComplexMatrix v(z.rows() * z.cols(), 1);
    for (std::size_t j = 0; j < z.cols(); ++j)
        for (std::size_t i = 0; i < z.rows(); ++i)
            v(j * z.rows() + i, 0) = z(i, j);
    return v;
}

ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols)
        throw DimensionError("unvec: length does not match target shape");
    ComplexMatrix z(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i)
            z(i, j) = v(j * rows + i, 0);
    return z;
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (complexd& v : m.data()) v = rng.cgauss();
    return m;
}

} // namespace oplab
