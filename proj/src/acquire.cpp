#include "helion/acquire.hpp"

#include <cmath>

#include "helion/parallel.hpp"
#include "helion/receiver.hpp"

namespace helion {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Unitary probe basis as a matrix of columns; DFT for plane_wave_like.
ComplexMatrix probe_basis_matrix(ProbeBasis basis, std::size_t dim) {
    if (basis == ProbeBasis::canonical) return ComplexMatrix::identity(dim);
    ComplexMatrix f(dim, dim);
    const double coeff = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t c = 0; c < dim; ++c) {
            const double angle = kTwoPi * static_cast<double>(j * c % dim) / static_cast<double>(dim);
            f(j, c) = coeff * Complex(std::cos(angle), std::sin(angle));
        }
    }
    return f;
}

}  // namespace

void AcquisitionConfig::validate() const {
    if (!(n0_per_column >= 0.0) || !std::isfinite(n0_per_column)) {
        throw ValidationError("AcquisitionConfig: n0_per_column must be finite and >= 0");
    }
    if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
        throw ValidationError("AcquisitionConfig: sigma_sq must be finite and > 0");
    }
    if (!(phase_jitter_sd >= 0.0) || !std::isfinite(phase_jitter_sd)) {
        throw ValidationError("AcquisitionConfig: phase_jitter_sd must be finite and >= 0");
    }
}

ComplexMatrix measure_matrix(const ScatteringPair& pair, int hypothesis,
                             const AcquisitionConfig& cfg) {
    cfg.validate();
    if (hypothesis != 1 && hypothesis != 2) {
        throw ValidationError("measure_matrix: hypothesis must be 1 or 2");
    }
    if (!(cfg.n0_per_column > 0.0)) {
        throw ValidationError("measure_matrix: n0_per_column must be > 0 to normalize");
    }

    const ComplexMatrix& s = hypothesis == 1 ? pair.s1 : pair.s2;
    const std::size_t n = s.rows();
    const std::size_t m = s.cols();
    const double amp = std::sqrt(cfg.n0_per_column);

    const ComplexMatrix basis = probe_basis_matrix(cfg.probe_basis, m);
    const ComplexMatrix s_in_basis = matmul(s, basis);  // column c = s * probe_c

    ComplexMatrix raw(n, m);
    const std::uint64_t stream_base = static_cast<std::uint64_t>(hypothesis - 1) * m;
    parallel_for(m, [&](std::size_t c) {
        Rng rng(cfg.seed, stream_base + c);
        ComplexVector expected(n);
        for (std::size_t r = 0; r < n; ++r) expected[r] = amp * s_in_basis(r, c);
        ComplexVector z = sample_homodyne(expected, cfg.sigma_sq, rng);
        Complex rot(1.0, 0.0);
        if (cfg.phase_jitter_sd > 0.0) {
            const double delta = cfg.phase_jitter_sd * rng.next_gaussian();
            rot = Complex(std::cos(delta), std::sin(delta));
        }
        for (std::size_t r = 0; r < n; ++r) raw(r, c) = rot * z[r] / amp;
    });

    if (cfg.probe_basis == ProbeBasis::canonical) return raw;
    return matmul(raw, adjoint(basis));
}

FidelityMetrics fidelity_metrics(const ComplexVector& predicted, const ComplexVector& measured) {
    if (predicted.size() != measured.size()) {
        throw DimensionError("fidelity_metrics: vector dimensions differ");
    }
    const double pred_norm = norm(predicted);
    if (pred_norm <= 0.0) {
        throw ValidationError("fidelity_metrics: predicted vector must be nonzero");
    }
    const double meas_norm = norm(measured);
    FidelityMetrics out;
    out.norm_ratio = (meas_norm * meas_norm) / (pred_norm * pred_norm);
    out.corr_magnitude =
        meas_norm > 0.0 ? std::abs(inner_product(predicted, measured)) / (pred_norm * meas_norm)
                        : 0.0;
    return out;
}

double eta_d(double d12sq_measured, double d12sq_predicted) {
    if (!(d12sq_predicted > 0.0)) {
        throw ValidationError("eta_d: predicted d12sq must be > 0");
    }
    return d12sq_measured / d12sq_predicted;
}

DiscriminationSpectrum end_to_end_spectrum(const ScatteringPair& pair,
                                           const AcquisitionConfig& cfg) {
    const ComplexMatrix m1 = measure_matrix(pair, 1, cfg);
    const ComplexMatrix m2 = measure_matrix(pair, 2, cfg);
    return spectrum(build_discrimination_operator(m1, m2));
}

}  // namespace helion
