#include "helion/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "helion/rng.hpp"

namespace helion {

namespace {

// gen_system draws a from stream 1 and b from stream 2; the public
// single-matrix generators use stream 0.
ComplexMatrix ginibre_stream(std::size_t rows, std::size_t cols, std::uint64_t seed,
                             std::uint64_t stream) {
    if (rows < 1 || cols < 1) throw ValidationError("gen_ginibre: dimensions must be >= 1");
    Rng rng(seed, stream);
    ComplexMatrix m(rows, cols);
    for (Complex& z : m.data()) z = rng.next_unit_circular_gaussian();
    return m;
}

ComplexMatrix haar_unitary_stream(std::size_t dim, std::uint64_t seed, std::uint64_t stream) {
    if (dim < 1) throw ValidationError("gen_random_unitary: dim must be >= 1");
    const ComplexMatrix g = ginibre_stream(dim, dim, seed, stream);

    // Modified Gram-Schmidt, two passes per column.  Normalizing by the
    // (positive real) column norm is the R-diagonal phase convention that
    // makes QR of a Ginibre draw Haar-distributed.
    ComplexMatrix q(dim, dim);
    ComplexVector v(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t r = 0; r < dim; ++r) v[r] = g(r, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex proj = 0.0;
                for (std::size_t r = 0; r < dim; ++r) proj += std::conj(q(r, i)) * v[r];
                for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * q(r, i);
            }
        }
        const double len = norm(v);
        if (len < 1e-12) {
            throw NumericError("gen_random_unitary: degenerate Ginibre draw (dependent columns)");
        }
        for (std::size_t r = 0; r < dim; ++r) q(r, j) = v[r] / len;
    }
    return q;
}

ComplexMatrix masked_product(const ComplexMatrix& b, const ComplexVector& mask,
                             const ComplexMatrix& a) {
    // b * diag(mask) * a without forming the diagonal matrix.
    ComplexMatrix ma(a.rows(), a.cols());
    for (std::size_t p = 0; p < a.rows(); ++p) {
        const Complex m = mask[p];
        auto src = a.row(p);
        auto dst = ma.row(p);
        for (std::size_t c = 0; c < a.cols(); ++c) dst[c] = m * src[c];
    }
    return matmul(b, ma);
}

}  // namespace

void SystemConfig::validate() const {
    if (m_in < 1 || n_out < 1 || n_plane < 1) {
        throw ValidationError("SystemConfig: m_in, n_out, n_plane must be positive");
    }
    if (target_pixels.empty()) {
        throw ValidationError("SystemConfig: target_pixels must be nonempty");
    }
    std::set<std::size_t> seen;
    for (std::size_t px : target_pixels) {
        if (px >= n_plane) {
            std::ostringstream msg;
            msg << "SystemConfig: target pixel " << px << " outside plane of size " << n_plane;
            throw ValidationError(msg.str());
        }
        if (!seen.insert(px).second) {
            throw ValidationError("SystemConfig: duplicate target pixel");
        }
    }
    if (!(target_transmittance >= 0.0 && target_transmittance <= 1.0)) {
        throw ValidationError("SystemConfig: target_transmittance must be in [0, 1]");
    }
    if (!std::isfinite(target_phase)) {
        throw ValidationError("SystemConfig: target_phase must be finite");
    }
    if (loss_model == LossModel::unitary_embed && (m_in != n_out || m_in != n_plane)) {
        throw ValidationError("SystemConfig: unitary_embed requires m_in = n_out = n_plane");
    }
}

ComplexVector hypothesis_mask(const SystemConfig& config, int hypothesis) {
    if (hypothesis != 1 && hypothesis != 2) {
        throw ValidationError("hypothesis must be 1 or 2");
    }
    ComplexVector mask(config.n_plane, Complex(1.0, 0.0));
    if (hypothesis == 2) {
        const Complex t = config.target_transmittance *
                          Complex(std::cos(config.target_phase), std::sin(config.target_phase));
        for (std::size_t px : config.target_pixels) mask[px] = t;
    }
    return mask;
}

ComplexMatrix gen_ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    return ginibre_stream(rows, cols, seed, 0);
}

ComplexMatrix gen_random_unitary(std::size_t dim, std::uint64_t seed) {
    return haar_unitary_stream(dim, seed, 0);
}

ScatteringPair gen_system(const SystemConfig& config) {
    config.validate();

    ScatteringPair pair;
    pair.config = config;
    if (config.loss_model == LossModel::unitary_embed) {
        pair.a = haar_unitary_stream(config.n_plane, config.seed, 1);
        pair.b = haar_unitary_stream(config.n_out, config.seed, 2);
    } else {
        pair.a = ginibre_stream(config.n_plane, config.m_in, config.seed, 1);
        pair.b = ginibre_stream(config.n_out, config.n_plane, config.seed, 2);
    }

    const ComplexVector mask1 = hypothesis_mask(config, 1);
    const ComplexVector mask2 = hypothesis_mask(config, 2);
    pair.s1 = masked_product(pair.b, mask1, pair.a);
    pair.s2 = masked_product(pair.b, mask2, pair.a);

    if (config.loss_model == LossModel::ginibre_subunitary) {
        const double sigma_raw =
            std::max(largest_singular_value(pair.s1), largest_singular_value(pair.s2));
        if (sigma_raw <= 0.0) {
            throw NumericError("gen_system: degenerate draw, zero scattering matrices");
        }
        // One common factor keeps the relative structure of s2 - s1; folding
        // sqrt of it into a and b preserves s_i = b * diag(mask_i) * a.
        const double factor = 0.95 / sigma_raw;
        const double sqrt_factor = std::sqrt(factor);
        for (Complex& z : pair.s1.data()) z *= factor;
        for (Complex& z : pair.s2.data()) z *= factor;
        for (Complex& z : pair.a.data()) z *= sqrt_factor;
        for (Complex& z : pair.b.data()) z *= sqrt_factor;
    }

    pair.sigma_max = std::max(largest_singular_value(pair.s1), largest_singular_value(pair.s2));
    // s2 is unitary only when the mask stays unimodular; transmittance < 1
    // makes it strictly sub-unitary and the phase analysis inapplicable.
    pair.unitary = config.loss_model == LossModel::unitary_embed &&
                   config.target_transmittance == 1.0;
    return pair;
}

ComplexVector target_plane_field(const ScatteringPair& pair, const ComplexVector& state,
                                 int hypothesis) {
    if (state.size() != pair.a.cols()) {
        throw DimensionError("target_plane_field: state dimension must equal m_in");
    }
    const ComplexVector mask = hypothesis_mask(pair.config, hypothesis);
    ComplexVector field = matvec(pair.a, state);
    for (std::size_t p = 0; p < field.size(); ++p) field[p] *= mask[p];
    return field;
}

}  // namespace helion
