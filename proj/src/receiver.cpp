#include "helion/receiver.hpp"

#include <cmath>

#include "helion/parallel.hpp"

namespace helion {

ComplexVector sample_homodyne(const ComplexVector& expected, double sigma_sq, Rng& rng) {
    if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
        throw ValidationError("sample_homodyne: sigma_sq must be finite and > 0");
    }
    const double sigma = std::sqrt(sigma_sq);
    ComplexVector z(expected.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        const auto [g1, g2] = rng.next_gaussian_pair();
        z[k] = expected[k] + Complex(sigma * g1, sigma * g2);
    }
    return z;
}

double log_likelihood_ratio(const ComplexVector& z, const ComplexVector& e1,
                            const ComplexVector& e2, double sigma_sq) {
    if (z.size() != e1.size() || z.size() != e2.size()) {
        throw DimensionError("log_likelihood_ratio: vector dimensions differ");
    }
    double cross = 0.0;
    double bias = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        cross += std::real(std::conj(e2[k] - e1[k]) * z[k]);
        bias += std::norm(e1[k]) - std::norm(e2[k]);
    }
    return cross / sigma_sq + bias / (2.0 * sigma_sq);
}

int decide(double llr, const Priors& priors) {
    return llr > priors.log_ratio() ? 2 : 1;
}

TrialBatch run_trials(const ScatteringPair& pair, const ProbeState& state, const Priors& priors,
                      double sigma_sq, std::size_t n_rep, const TrialOptions& options,
                      std::uint64_t seed) {
    if (n_rep < 1) throw ValidationError("run_trials: n_rep must be >= 1");
    if (!(sigma_sq > 0.0)) throw ValidationError("run_trials: sigma_sq must be > 0");
    if (!(state.photons >= 0.0)) throw ValidationError("run_trials: photons must be >= 0");
    if (state.amplitudes.size() != pair.s1.cols()) {
        throw DimensionError("run_trials: state dimension must equal m_in");
    }
    priors.log_ratio();  // both priors must be positive before any decision
    if (options.leave_one_out && options.mean_strategy != MeanStrategy::empirical_sum_mean) {
        throw ValidationError("run_trials: leave_one_out applies only to empirical_sum_mean");
    }
    if (options.leave_one_out && n_rep < 2) {
        throw ValidationError("run_trials: leave_one_out needs n_rep >= 2");
    }

    const std::size_t n_modes = pair.s1.rows();
    const double amp = std::sqrt(state.photons);
    ComplexVector mu1 = matvec(pair.s1, state.amplitudes);
    ComplexVector mu2 = matvec(pair.s2, state.amplitudes);
    scale(mu1, amp);
    scale(mu2, amp);

    TrialBatch batch;
    batch.n_rep = n_rep;
    batch.seed = seed;
    batch.mean_strategy = options.mean_strategy;
    batch.truths.resize(n_rep);
    batch.decisions.resize(n_rep);
    batch.llr.resize(n_rep);

    const std::size_t n_first =
        options.fixed_split
            ? static_cast<std::size_t>(std::llround(priors.pi1 * static_cast<double>(n_rep)))
            : 0;

    std::vector<Complex> samples(n_rep * n_modes);
    parallel_for(n_rep, [&](std::size_t t) {
        Rng rng(seed, t);
        int truth;
        if (options.fixed_split) {
            truth = t < n_first ? 1 : 2;
        } else {
            truth = rng.next_double() < priors.pi1 ? 1 : 2;
        }
        batch.truths[t] = truth;
        const ComplexVector z = sample_homodyne(truth == 1 ? mu1 : mu2, sigma_sq, rng);
        std::copy(z.begin(), z.end(), samples.begin() + t * n_modes);
    });

    // Difference field is always taken from the matrices; only the sum field
    // is estimated from data under empirical_sum_mean.
    ComplexVector batch_sum(n_modes, Complex(0.0, 0.0));
    if (options.mean_strategy == MeanStrategy::empirical_sum_mean) {
        for (std::size_t t = 0; t < n_rep; ++t) {
            for (std::size_t k = 0; k < n_modes; ++k) batch_sum[k] += samples[t * n_modes + k];
        }
    }
    ComplexVector e_diff(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        e_diff[k] = priors.pi2 * mu2[k] - priors.pi1 * mu1[k];
    }

    parallel_for(n_rep, [&](std::size_t t) {
        const ComplexVector z(samples.begin() + t * n_modes, samples.begin() + (t + 1) * n_modes);
        double llr;
        if (options.mean_strategy == MeanStrategy::oracle_means) {
            llr = log_likelihood_ratio(z, mu1, mu2, sigma_sq);
        } else {
            ComplexVector e1(n_modes), e2(n_modes);
            for (std::size_t k = 0; k < n_modes; ++k) {
                Complex e_sum = batch_sum[k];
                double count = static_cast<double>(n_rep);
                if (options.leave_one_out) {
                    e_sum -= z[k];
                    count -= 1.0;
                }
                e_sum /= count;
                e1[k] = (e_sum - e_diff[k]) / (2.0 * priors.pi1);
                e2[k] = (e_sum + e_diff[k]) / (2.0 * priors.pi2);
            }
            llr = log_likelihood_ratio(z, e1, e2, sigma_sq);
        }
        batch.llr[t] = llr;
        batch.decisions[t] = decide(llr, priors);
    });

    std::size_t errors = 0;
    for (std::size_t t = 0; t < n_rep; ++t) {
        if (batch.decisions[t] != batch.truths[t]) ++errors;
    }
    batch.error_rate = static_cast<double>(errors) / static_cast<double>(n_rep);
    batch.ci = binomial_ci(batch.error_rate, n_rep);
    return batch;
}

}  // namespace helion
