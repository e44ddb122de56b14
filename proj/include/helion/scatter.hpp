#ifndef HELION_SCATTER_HPP
#define HELION_SCATTER_HPP

#include <cstdint>
#include <vector>

#include "helion/linalg.hpp"

namespace helion {

enum class LossModel { unitary_embed, ginibre_subunitary };

// Synthetic two-propagator system: input-side propagator a (plane <- input),
// diagonal target mask at the intermediate plane, output-side propagator b.
struct SystemConfig {
    std::size_t m_in = 0;     // incident modes M
    std::size_t n_out = 0;    // outgoing modes N
    std::size_t n_plane = 0;  // target-plane pixels P
    std::vector<std::size_t> target_pixels;
    double target_transmittance = 1.0;  // in [0, 1]
    double target_phase = 0.0;          // radians
    LossModel loss_model = LossModel::ginibre_subunitary;
    std::uint64_t seed = 0;

    void validate() const;  // throws ValidationError on any violated invariant
};

struct ScatteringPair {
    ComplexMatrix s1;  // N x M, target absent
    ComplexMatrix s2;  // N x M, target present
    ComplexMatrix a;   // P x M
    ComplexMatrix b;   // N x P
    double sigma_max = 0.0;  // max singular value over both matrices
    bool unitary = false;    // both s1 and s2 exactly unitary by construction
    SystemConfig config;     // echo; also supplies the masks for target_plane_field
};

// Diagonal target mask for the given hypothesis: all ones for hypothesis 1,
// target_transmittance * exp(i * target_phase) on target_pixels for 2.
ComplexVector hypothesis_mask(const SystemConfig& config, int hypothesis);

// i.i.d. circular complex Gaussian entries, variance 1/2 per quadrature.
ComplexMatrix gen_ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed);

// Haar-distributed unitary: QR of a Ginibre draw by twice-iterated modified
// Gram-Schmidt; the positive-norm normalization fixes the R-diagonal phase.
ComplexMatrix gen_random_unitary(std::size_t dim, std::uint64_t seed);

// Synthesizes the pair.  Substreams of config.seed: stream 1 draws a,
// stream 2 draws b.  ginibre_subunitary rescales both s-matrices by one
// common factor so sigma_max lands at 0.95; the factor is folded into the
// stored a and b (sqrt each) so s_i = b * diag(mask_i) * a keeps holding.
ScatteringPair gen_system(const SystemConfig& config);

// Field just after the target plane: diag(mask_hyp) * a * state.
ComplexVector target_plane_field(const ScatteringPair& pair, const ComplexVector& state,
                                 int hypothesis);

}  // namespace helion

#endif
