#include "helion/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace helion {

namespace {

constexpr double kHermitianTol = 1e-10;       // max |h - h^dagger| entry
constexpr double kJacobiSweepCap = 100;       // cyclic sweeps before giving up
constexpr double kJacobiOffTol = 1e-12;       // off-diagonal Frobenius, relative to ||h||
constexpr double kPowerIterTol = 1e-10;       // relative change of the Rayleigh quotient
constexpr int kPowerIterCap = 10000;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << op << ": shape mismatch (" << a.rows() << "x" << a.cols()
            << " vs " << b.rows() << "x" << b.cols() << ")";
        throw DimensionError(msg.str());
    }
}

// Off-diagonal Frobenius norm, the Jacobi convergence measure.
double off_diagonal_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) sum += std::norm(a(r, c));
        }
    }
    return std::sqrt(sum);
}

// One complex Jacobi rotation annihilating a(p, q).  The 2x2 unitary is the
// product of a phase that makes the pivot real and a real Givens rotation.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;

    const Complex phase = apq / mag;  // e^{i arg(apq)}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex jpq = s * std::conj(phase);   // J(p,q) column factor carries the phase
    const std::size_t n = a.rows();

    // Rows p and q: A <- J^dagger A.
    for (std::size_t k = 0; k < n; ++k) {
        const Complex arp = a(p, k);
        const Complex arq = a(q, k);
        a(p, k) = c * arp - s * phase * arq;
        a(q, k) = s * arp + c * phase * arq;
    }
    // Columns p and q: A <- A J, and accumulate V <- V J.
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - jpq * akq;
        a(k, q) = s * akp + c * std::conj(phase) * akq;

        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - jpq * vkq;
        v(k, q) = s * vkp + c * std::conj(phase) * vkq;
    }

    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = Complex(a(p, p).real(), 0.0);
    a(q, q) = Complex(a(q, q).real(), 0.0);
}

}  // namespace

bool ComplexMatrix::is_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const Complex& z : entries_) sum += std::norm(z);
    return std::sqrt(sum);
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "matmul: inner dimensions differ (" << a.rows() << "x" << a.cols()
            << " times " << b.rows() << "x" << b.cols() << ")";
        throw DimensionError(msg.str());
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out_row = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            auto b_row = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out_row[j] += aik * b_row[j];
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.cols() != x.size()) {
        throw DimensionError("matvec: vector length does not match matrix columns");
    }
    ComplexVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc = 0.0;
        auto row = a.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) acc += row[j] * x[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix subtract(const ComplexMatrix& b, const ComplexMatrix& a) {
    require_same_shape(a, b, "subtract");
    ComplexMatrix out(a.rows(), a.cols());
    auto bo = b.data();
    auto ao = a.data();
    auto oo = out.data();
    for (std::size_t i = 0; i < oo.size(); ++i) oo[i] = bo[i] - ao[i];
    return out;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) {
        throw DimensionError("eig_hermitian: matrix must be square");
    }
    const std::size_t n = h.rows();

    double herm_defect = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            herm_defect = std::max(herm_defect, std::abs(h(r, c) - std::conj(h(c, r))));
        }
    }
    if (herm_defect > kHermitianTol) {
        std::ostringstream msg;
        msg << "eig_hermitian: input is not Hermitian (defect " << herm_defect << ")";
        throw ValidationError(msg.str());
    }

    // Work on the symmetrized copy so rounding debris cannot bias one triangle.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = a.frobenius_norm();
    if (scale > 0.0) {
        const double target = kJacobiOffTol * scale;
        int sweep = 0;
        double off = off_diagonal_norm(a);
        while (off > target) {
            if (++sweep > kJacobiSweepCap) {
                std::ostringstream msg;
                msg << "eig_hermitian: no convergence after " << kJacobiSweepCap
                    << " sweeps (off-diagonal residual " << off / scale << ")";
                throw ConvergenceError(msg.str());
            }
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    jacobi_rotate(a, v, p, q);
                }
            }
            off = off_diagonal_norm(a);
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        return a(lhs, lhs).real() > a(rhs, rhs).real();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = a(src, src).real();

        // Global-phase convention: largest-magnitude entry real positive.
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double m = std::abs(v(r, src));
            if (m > best) {
                best = m;
                imax = r;
            }
        }
        Complex phase = 1.0;
        if (best > 0.0) phase = std::conj(v(imax, src)) / best;
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors(r, j) = v(r, src) * phase;
        }
    }
    return out;
}

double largest_singular_value(const ComplexMatrix& a) {
    const ComplexMatrix gram = matmul(adjoint(a), a);
    const std::size_t n = gram.rows();

    if (gram.frobenius_norm() == 0.0) return 0.0;

    // Deterministic start: normalized all-ones vector.
    ComplexVector x(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    double lambda = 0.0;
    for (int iter = 0; iter < kPowerIterCap; ++iter) {
        ComplexVector y = matvec(gram, x);
        const double ynorm = norm(y);
        if (ynorm == 0.0) return 0.0;  // start vector lies in the null space
        for (auto& z : y) z /= ynorm;
        const double next = std::real(inner_product(y, matvec(gram, y)));
        x = std::move(y);
        if (std::abs(next - lambda) <= kPowerIterTol * std::max(next, 1e-300)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

double norm(const ComplexVector& x) {
    double sum = 0.0;
    for (const Complex& z : x) sum += std::norm(z);
    return std::sqrt(sum);
}

Complex inner_product(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) {
        throw DimensionError("inner_product: length mismatch");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

void scale(ComplexVector& x, Complex factor) {
    for (auto& z : x) z *= factor;
}

}  // namespace helion
