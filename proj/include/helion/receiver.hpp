#ifndef HELION_RECEIVER_HPP
#define HELION_RECEIVER_HPP

#include <cstdint>
#include <vector>

#include "helion/bounds.hpp"
#include "helion/discrim.hpp"
#include "helion/rng.hpp"
#include "helion/scatter.hpp"

namespace helion {

enum class MeanStrategy {
    oracle_means,       // LLR uses the exact expected fields from the matrices
    empirical_sum_mean  // LLR means reconstructed from the batch sum field
};

struct TrialOptions {
    MeanStrategy mean_strategy = MeanStrategy::oracle_means;
    // Balanced truth assignment (round(pi1 * n_rep) trials of hypothesis 1,
    // rest hypothesis 2) instead of i.i.d. prior draws.
    bool fixed_split = false;
    // empirical_sum_mean only: exclude the decided trial from the batch mean.
    bool leave_one_out = false;
};

struct TrialBatch {
    std::size_t n_rep = 0;
    std::vector<int> decisions;  // 1 or 2
    std::vector<int> truths;     // 1 or 2
    std::vector<double> llr;
    double error_rate = 0.0;  // exact fraction of decisions != truths
    Interval ci;              // binomial_ci(error_rate, n_rep)
    std::uint64_t seed = 0;
    MeanStrategy mean_strategy = MeanStrategy::oracle_means;
};

// One noisy homodyne record: each quadrature of each mode gets independent
// Normal(expected quadrature, sigma_sq) noise.
ComplexVector sample_homodyne(const ComplexVector& expected, double sigma_sq, Rng& rng);

// ln l(z) = Re[sum_k conj(e2_k - e1_k) z_k] / sigma_sq
//           + sum_k (|e1_k|^2 - |e2_k|^2) / (2 sigma_sq)
double log_likelihood_ratio(const ComplexVector& z, const ComplexVector& e1,
                            const ComplexVector& e2, double sigma_sq);

// Hypothesis 2 iff llr exceeds ln(pi1/pi2); ties go to hypothesis 1.
int decide(double llr, const Priors& priors);

// Virtual detection experiment.  Trial t draws from substream (seed, t):
// in i.i.d. mode one uniform deviate picks the truth, then one Gaussian pair
// per output mode forms the sample; fixed_split skips the truth draw.
// Deterministic for fixed inputs regardless of thread count.
TrialBatch run_trials(const ScatteringPair& pair, const ProbeState& state, const Priors& priors,
                      double sigma_sq, std::size_t n_rep, const TrialOptions& options,
                      std::uint64_t seed);

}  // namespace helion

#endif
