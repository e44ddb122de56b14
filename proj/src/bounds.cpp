#include "helion/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "helion/errors.hpp"

namespace helion {

namespace {

void check_n_and_distance(double n, double d12sq) {
    if (!(n >= 0.0) || !std::isfinite(n)) {
        throw ValidationError("photon number n must be finite and >= 0");
    }
    if (!(d12sq >= 0.0) || !(d12sq <= 4.0)) {
        throw ValidationError("d12sq must lie in [0, 4]");
    }
}

}  // namespace

Priors::Priors(double p1, double p2) : pi1(p1), pi2(p2) {
    if (!(pi1 >= 0.0 && pi1 <= 1.0) || !(pi2 >= 0.0 && pi2 <= 1.0)) {
        throw ValidationError("priors must lie in [0, 1]");
    }
    if (std::abs(pi1 + pi2 - 1.0) > 1e-12) {
        throw ValidationError("priors must sum to 1");
    }
}

double Priors::log_ratio() const {
    if (pi1 <= 0.0 || pi2 <= 0.0) {
        throw ValidationError("likelihood-ratio threshold needs both priors > 0");
    }
    return std::log(pi1 / pi2);
}

void PhotonBudget::validate() const {
    if (!(n0 >= 0.0) || !std::isfinite(n0)) {
        throw ValidationError("PhotonBudget: n0 must be finite and >= 0");
    }
    for (double t : {t_nd, t_va, t_mod}) {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw ValidationError("PhotonBudget: transmittances must lie in [0, 1]");
        }
    }
}

double helstrom_bound(double n, double d12sq, const Priors& priors) {
    check_n_and_distance(n, d12sq);
    double arg = 1.0 - 4.0 * priors.pi1 * priors.pi2 * std::exp(-n * d12sq);
    if (arg < 0.0) {
        if (arg < -1e-12) {
            std::ostringstream msg;
            msg << "helstrom_bound: discriminant " << arg << " below zero";
            throw NumericError(msg.str());
        }
        arg = 0.0;  // rounding at 4 pi1 pi2 exp(..) = 1
    }
    return 0.5 * (1.0 - std::sqrt(arg));
}

GaussianReceiverResult gaussian_receiver_error_ex(double n, double d12sq, double sigma_sq,
                                                  const Priors& priors) {
    check_n_and_distance(n, d12sq);
    if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
        throw ValidationError("sigma_sq must be finite and > 0");
    }

    // A certain prior means the receiver never errs.
    if (priors.pi1 == 0.0 || priors.pi2 == 0.0) return {0.0, false};

    const double x = n * d12sq;
    if (priors.pi1 == priors.pi2) {
        return {0.5 * std::erfc(std::sqrt(x / (8.0 * sigma_sq))), false};
    }
    if (x == 0.0) {
        // No field information: decide on the prior alone.
        return {std::min(priors.pi1, priors.pi2), true};
    }
    const double separation = std::sqrt(x / (8.0 * sigma_sq));
    const double offset = priors.log_ratio() * std::sqrt(sigma_sq / (2.0 * x));
    return {0.5 * priors.pi1 * std::erfc(separation + offset) +
                0.5 * priors.pi2 * std::erfc(separation - offset),
            false};
}

double gaussian_receiver_error(double n, double d12sq, double sigma_sq, const Priors& priors) {
    return gaussian_receiver_error_ex(n, d12sq, sigma_sq, priors).value;
}

Interval binomial_ci(double p, std::size_t n_rep) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("binomial_ci: p must lie in [0, 1]");
    if (n_rep < 1) throw ValidationError("binomial_ci: n_rep must be >= 1");
    const double half_width = 2.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n_rep));
    return {std::max(0.0, p - half_width), std::min(1.0, p + half_width)};
}

double effective_photons(const PhotonBudget& budget) {
    budget.validate();
    return budget.n0 * budget.t_nd * budget.t_va * budget.t_mod;
}

}  // namespace helion
