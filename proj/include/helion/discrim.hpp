#ifndef HELION_DISCRIM_HPP
#define HELION_DISCRIM_HPP

#include <vector>

#include "helion/linalg.hpp"
#include "helion/scatter.hpp"

namespace helion {

struct DiscriminationSpectrum {
    std::vector<double> eigenvalues;  // descending, clamped into [0, 4]
    ComplexMatrix eigenstates;        // M x M, orthonormal columns matching eigenvalues
    double mean_eigenvalue = 0.0;     // trace(D12) / M
};

struct ProbeState {
    ComplexVector amplitudes;  // unit norm
    double photons = 0.0;      // n >= 0
};

struct PhaseAnalysisEntry {
    double lambda = 0.0;
    double theta = 0.0;     // arg <s1 v | s2 v>
    double residual = 0.0;  // || s2 v - e^{i theta} s1 v ||
    bool degenerate = false;  // |<s1 v|s2 v>| < 1 - 1e-6: v mixes generalized eigenvectors
};

// D12 = (s2 - s1)^dagger (s2 - s1), numerically symmetrized.
ComplexMatrix build_discrimination_operator(const ComplexMatrix& s1, const ComplexMatrix& s2);
ComplexMatrix build_discrimination_operator(const ScatteringPair& pair);

// Eigendecomposition of D12.  Eigenvalues within 1e-9 of [0, 4] are clamped
// onto the interval; anything further out means the pair is broken and
// raises NumericError.
DiscriminationSpectrum spectrum(const ComplexMatrix& d12);

// Leading eigenstate; its quadratic form is Lambda_1.
ProbeState optimal_state(const DiscriminationSpectrum& spec, double photons);

// Equal-weight superposition of all eigenstates; quadratic form is the mean
// eigenvalue since every coefficient has squared magnitude 1/M.
ProbeState average_state(const DiscriminationSpectrum& spec, double photons);

// d12^2 of a normalized state, computed both as the output-field difference
// norm (per-mode summation) and as the quadratic form <state|D12|state>.
// The two routes must agree to 1e-9 relative; disagreement raises
// NumericError.  Returns the quadratic-form value.
double statistical_distance(const ScatteringPair& pair, const ProbeState& state);

// For unitary pairs: per eigenstate, the output phase shift theta and the
// residual of the generalized eigenrelation s2 v = e^{i theta} s1 v.
// Nondegenerate entries must satisfy lambda = 2(1 - cos theta) within 1e-7;
// degenerate ones are reported with the flag set instead of enforced.
std::vector<PhaseAnalysisEntry> unitary_phase_analysis(const ScatteringPair& pair,
                                                       const DiscriminationSpectrum& spec);

}  // namespace helion

#endif
