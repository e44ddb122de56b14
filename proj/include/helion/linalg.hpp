#ifndef HELION_LINALG_HPP
#define HELION_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "helion/errors.hpp"

namespace helion {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense row-major complex matrix.  Deliberately minimal: just what the
// scattering-matrix pipeline needs, not a general linear-algebra library.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("ComplexMatrix dimensions must be positive");
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return entries_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<Complex> data() { return entries_; }
    std::span<const Complex> data() const { return entries_; }

    std::span<Complex> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
    std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

    bool operator==(const ComplexMatrix& other) const = default;

    // True when every entry is finite (no NaN/Inf).
    bool is_finite() const;

    double frobenius_norm() const;
    Complex trace() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // unit-norm columns, column j pairs with eigenvalues[j]
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x);

// Difference b - a, entrywise.  Shapes must match.
ComplexMatrix subtract(const ComplexMatrix& b, const ComplexMatrix& a);

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Input must be Hermitian to within 1e-10 (max entry of |h - adjoint(h)|).
// Eigenvalues come back sorted descending; each eigenvector's
// largest-magnitude entry is rotated to be real positive so repeated runs
// produce identical output.
EigenDecomposition eig_hermitian(const ComplexMatrix& h);

// Largest singular value via power iteration on adjoint(a) * a.
double largest_singular_value(const ComplexMatrix& a);

// Vector helpers.
double norm(const ComplexVector& x);
Complex inner_product(const ComplexVector& x, const ComplexVector& y);  // conjugate-linear in x
void scale(ComplexVector& x, Complex factor);

}  // namespace helion

#endif
