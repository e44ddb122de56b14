#ifndef HELION_BOUNDS_HPP
#define HELION_BOUNDS_HPP

#include <cstddef>

namespace helion {

// Shot-noise variance per quadrature in photon units.
inline constexpr double kDefaultSigmaSq = 0.5;

struct Priors {
    double pi1 = 0.5;
    double pi2 = 0.5;

    Priors() = default;
    Priors(double p1, double p2);  // validates: each in [0,1], sum 1 within 1e-12

    static Priors equal() { return Priors(0.5, 0.5); }

    // ln(pi1/pi2); the decision threshold.  Requires both priors positive.
    double log_ratio() const;
};

struct PhotonBudget {
    double n0 = 0.0;    // photons per probe before attenuation
    double t_nd = 1.0;  // neutral-density filter transmittance
    double t_va = 1.0;  // variable attenuator transmittance
    double t_mod = 1.0; // modulation efficiency

    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Minimum error probability over all quantum measurements:
// P_H = (1 - sqrt(1 - 4 pi1 pi2 exp(-n d12sq))) / 2.
double helstrom_bound(double n, double d12sq, const Priors& priors);

struct GaussianReceiverResult {
    double value = 0.0;
    // True when n*d12sq = 0 with unequal priors: the fields carry no
    // information, the receiver decides on the prior alone and the error is
    // min(pi1, pi2).
    bool prior_only = false;
};

// Error probability of the homodyne (Gaussian) receiver with the optimal
// likelihood-ratio threshold.
GaussianReceiverResult gaussian_receiver_error_ex(double n, double d12sq, double sigma_sq,
                                                  const Priors& priors);
double gaussian_receiver_error(double n, double d12sq, double sigma_sq, const Priors& priors);

// Two-standard-error binomial interval, clipped to [0, 1] (covers 95.4%).
Interval binomial_ci(double p, std::size_t n_rep);

double effective_photons(const PhotonBudget& budget);

}  // namespace helion

#endif
