#ifndef HELION_ACQUIRE_HPP
#define HELION_ACQUIRE_HPP

#include <cstdint>

#include "helion/discrim.hpp"
#include "helion/scatter.hpp"

namespace helion {

enum class ProbeBasis { canonical, plane_wave_like };

struct AcquisitionConfig {
    double n0_per_column = 0.0;  // photons per probe column
    ProbeBasis probe_basis = ProbeBasis::canonical;
    double sigma_sq = 0.5;
    std::uint64_t seed = 0;
    // Residual phase-reference drift: per-column global phase jitter applied
    // to the stored column.  0 disables the draw entirely.
    double phase_jitter_sd = 0.0;

    void validate() const;
};

// Column-by-column virtual acquisition of s_hyp.  Column c of hypothesis h
// uses substream (seed, (h-1)*m_in + c): the mode samples first, then one
// extra Gaussian when phase jitter is enabled.  Probes are unit columns of
// the chosen basis at sqrt(n0) amplitude; stored columns are scaled back by
// 1/sqrt(n0) and rotated to the canonical input basis, so the estimator is
// unbiased with per-entry quadrature variance sigma_sq / n0.
ComplexMatrix measure_matrix(const ScatteringPair& pair, int hypothesis,
                             const AcquisitionConfig& cfg);

struct FidelityMetrics {
    double corr_magnitude = 0.0;  // |<predicted|measured>| / (norms product)
    double norm_ratio = 0.0;      // ||measured||^2 / ||predicted||^2
};

// Zero measured vector yields (0, 0): no correlation, no energy.
FidelityMetrics fidelity_metrics(const ComplexVector& predicted, const ComplexVector& measured);

// Ratio of measured to predicted d12^2.
double eta_d(double d12sq_measured, double d12sq_predicted);

// Measure both hypotheses, build the discrimination operator from the noisy
// estimates, and decompose it.
DiscriminationSpectrum end_to_end_spectrum(const ScatteringPair& pair,
                                           const AcquisitionConfig& cfg);

}  // namespace helion

#endif
