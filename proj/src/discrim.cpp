#include "helion/discrim.hpp"

#include <cmath>
#include <sstream>

namespace helion {

namespace {

constexpr double kClampWindow = 1e-9;

ComplexVector column(const ComplexMatrix& m, std::size_t j) {
    ComplexVector v(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, j);
    return v;
}

ProbeState make_state(ComplexVector amplitudes, double photons) {
    if (!(photons >= 0.0) || !std::isfinite(photons)) {
        throw ValidationError("ProbeState: photons must be finite and >= 0");
    }
    const double len = norm(amplitudes);
    if (len <= 0.0) throw NumericError("ProbeState: zero amplitude vector");
    scale(amplitudes, 1.0 / len);
    return ProbeState{std::move(amplitudes), photons};
}

}  // namespace

ComplexMatrix build_discrimination_operator(const ComplexMatrix& s1, const ComplexMatrix& s2) {
    if (s1.rows() != s2.rows() || s1.cols() != s2.cols()) {
        throw DimensionError("build_discrimination_operator: s1 and s2 shapes differ");
    }
    const ComplexMatrix delta = subtract(s2, s1);
    ComplexMatrix d = matmul(adjoint(delta), delta);
    // Hermitian by construction; symmetrizing sweeps out rounding debris.
    for (std::size_t r = 0; r < d.rows(); ++r) {
        d(r, r) = Complex(d(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < d.cols(); ++c) {
            const Complex avg = 0.5 * (d(r, c) + std::conj(d(c, r)));
            d(r, c) = avg;
            d(c, r) = std::conj(avg);
        }
    }
    return d;
}

ComplexMatrix build_discrimination_operator(const ScatteringPair& pair) {
    return build_discrimination_operator(pair.s1, pair.s2);
}

DiscriminationSpectrum spectrum(const ComplexMatrix& d12) {
    EigenDecomposition eig = eig_hermitian(d12);

    DiscriminationSpectrum out;
    out.eigenvalues.reserve(eig.eigenvalues.size());
    double sum = 0.0;
    for (double lambda : eig.eigenvalues) {
        if (lambda < -kClampWindow || lambda > 4.0 + kClampWindow) {
            std::ostringstream msg;
            msg << "spectrum: eigenvalue " << lambda << " outside [0, 4]; the pair is not a"
                << " physical scattering pair";
            throw NumericError(msg.str());
        }
        const double clamped = std::min(std::max(lambda, 0.0), 4.0);
        out.eigenvalues.push_back(clamped);
        sum += clamped;
    }
    out.eigenstates = std::move(eig.eigenvectors);
    out.mean_eigenvalue = sum / static_cast<double>(out.eigenvalues.size());
    return out;
}

ProbeState optimal_state(const DiscriminationSpectrum& spec, double photons) {
    return make_state(column(spec.eigenstates, 0), photons);
}

ProbeState average_state(const DiscriminationSpectrum& spec, double photons) {
    const std::size_t m = spec.eigenstates.cols();
    const double coeff = 1.0 / std::sqrt(static_cast<double>(m));
    ComplexVector amplitudes(spec.eigenstates.rows(), Complex(0.0, 0.0));
    for (std::size_t r = 0; r < spec.eigenstates.rows(); ++r) {
        Complex acc = 0.0;
        auto row = spec.eigenstates.row(r);
        for (std::size_t j = 0; j < m; ++j) acc += row[j];
        amplitudes[r] = coeff * acc;
    }
    return make_state(std::move(amplitudes), photons);
}

double statistical_distance(const ScatteringPair& pair, const ProbeState& state) {
    if (state.amplitudes.size() != pair.s1.cols()) {
        throw DimensionError("statistical_distance: state dimension must equal m_in");
    }

    // Route 1: per-mode summation over the output-field difference.
    const ComplexVector e1 = matvec(pair.s1, state.amplitudes);
    const ComplexVector e2 = matvec(pair.s2, state.amplitudes);
    double by_fields = 0.0;
    for (std::size_t k = 0; k < e1.size(); ++k) by_fields += std::norm(e2[k] - e1[k]);

    // Route 2: quadratic form of the discrimination operator.
    const ComplexMatrix d12 = build_discrimination_operator(pair);
    const double by_form = std::real(inner_product(state.amplitudes, matvec(d12, state.amplitudes)));

    // Both routes accumulate rounding on the scale of ||s2 - s1||_F^2, so the
    // relative check carries an absolute slack on that scale.
    const double scale_sq = [&] {
        double s = 0.0;
        auto d1 = pair.s1.data();
        auto d2 = pair.s2.data();
        for (std::size_t i = 0; i < d1.size(); ++i) s += std::norm(d2[i] - d1[i]);
        return s;
    }();
    const double slack = 1e-9 * std::max(by_fields, std::abs(by_form)) + 1e-12 * scale_sq;
    if (std::abs(by_fields - by_form) > slack) {
        std::ostringstream msg;
        msg << "statistical_distance: field-sum route " << by_fields
            << " disagrees with quadratic-form route " << by_form;
        throw NumericError(msg.str());
    }
    return std::max(by_form, 0.0);
}

std::vector<PhaseAnalysisEntry> unitary_phase_analysis(const ScatteringPair& pair,
                                                       const DiscriminationSpectrum& spec) {
    if (!pair.unitary) {
        throw ValidationError("unitary_phase_analysis: pair is not unitary");
    }

    std::vector<PhaseAnalysisEntry> out;
    out.reserve(spec.eigenvalues.size());
    for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
        const ComplexVector v = column(spec.eigenstates, j);
        const ComplexVector u = matvec(pair.s1, v);
        const ComplexVector w = matvec(pair.s2, v);
        const Complex overlap = inner_product(u, w);

        PhaseAnalysisEntry entry;
        entry.lambda = spec.eigenvalues[j];
        entry.theta = std::arg(overlap);
        // For unit v and unitary matrices |overlap| <= 1, with equality
        // exactly when v is a generalized eigenvector; below that, v mixes a
        // degenerate cluster and the phase identity need not hold.
        entry.degenerate = std::abs(overlap) < 1.0 - 1e-6;

        const Complex rot(std::cos(entry.theta), std::sin(entry.theta));
        double res_sq = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) res_sq += std::norm(w[k] - rot * u[k]);
        entry.residual = std::sqrt(res_sq);

        if (!entry.degenerate) {
            const double predicted = 2.0 * (1.0 - std::cos(entry.theta));
            if (std::abs(entry.lambda - predicted) > 1e-7 || entry.residual > 1e-7) {
                std::ostringstream msg;
                msg << "unitary_phase_analysis: eigenstate " << j << " violates the phase"
                    << " identity (lambda " << entry.lambda << ", 2(1-cos theta) " << predicted
                    << ", residual " << entry.residual << ")";
                throw NumericError(msg.str());
            }
        }
        out.push_back(entry);
    }
    return out;
}

}  // namespace helion
