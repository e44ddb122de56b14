#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "helion/discrim.hpp"
#include "helion/linalg.hpp"
#include "helion/scatter.hpp"

using helion::Complex;
using helion::ComplexMatrix;
using helion::ComplexVector;
using helion::LossModel;
using helion::ScatteringPair;
using helion::SystemConfig;

namespace {

SystemConfig base_config() {
    SystemConfig cfg;
    cfg.m_in = 16;
    cfg.n_out = 16;
    cfg.n_plane = 16;
    cfg.target_pixels = {3};
    cfg.target_transmittance = 1.0;
    cfg.target_phase = 3.14159265358979323846;
    cfg.loss_model = LossModel::unitary_embed;
    cfg.seed = 11;
    return cfg;
}

double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
        }
    }
    return worst;
}

}  // namespace

TEST_SUITE("scatter") {

TEST_CASE("ginibre entries have circular unit-variance moments") {
    const ComplexMatrix g = helion::gen_ginibre(400, 400, 2024);
    const double n = 400.0 * 400.0;
    double power = 0.0;
    double mean_re = 0.0;
    double cross = 0.0;
    for (const Complex& z : g.data()) {
        power += std::norm(z);
        mean_re += z.real();
        cross += z.real() * z.imag();
    }
    // |z|^2 is Exp(1): mean 1, variance 1.  Re*Im has variance 1/4.
    CHECK(std::abs(power / n - 1.0) < 5.0 / std::sqrt(n));
    CHECK(std::abs(mean_re / n) < 5.0 * std::sqrt(0.5 / n));
    CHECK(std::abs(cross / n) < 5.0 * 0.5 / std::sqrt(n));
}

TEST_CASE("ginibre draws are deterministic per seed") {
    CHECK(helion::gen_ginibre(8, 5, 42) == helion::gen_ginibre(8, 5, 42));
    CHECK(helion::gen_ginibre(8, 5, 42) != helion::gen_ginibre(8, 5, 43));
    CHECK_THROWS_AS(helion::gen_ginibre(0, 5, 1), helion::ValidationError);
}

TEST_CASE("random unitary is unitary to working precision") {
    const ComplexMatrix u = helion::gen_random_unitary(32, 7);
    const ComplexMatrix gram = helion::matmul(helion::adjoint(u), u);
    CHECK(max_abs_diff(gram, ComplexMatrix::identity(32)) < 1e-10);

    const ComplexMatrix tiny = helion::gen_random_unitary(1, 99);
    CHECK(std::abs(std::abs(tiny(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("an inert target leaves the two matrices bitwise identical") {
    SystemConfig cfg = base_config();
    cfg.target_phase = 0.0;
    const ScatteringPair pair = helion::gen_system(cfg);
    CHECK(pair.s1 == pair.s2);
}

TEST_CASE("unitary embedding keeps both matrices unitary") {
    const ScatteringPair pair = helion::gen_system(base_config());
    CHECK(pair.unitary);
    CHECK(pair.sigma_max == doctest::Approx(1.0).epsilon(1e-9));
    const ComplexMatrix gram2 = helion::matmul(helion::adjoint(pair.s2), pair.s2);
    CHECK(max_abs_diff(gram2, ComplexMatrix::identity(16)) < 1e-9);
}

TEST_CASE("transmittance below one clears the unitary flag") {
    SystemConfig cfg = base_config();
    cfg.target_transmittance = 0.5;
    CHECK_FALSE(helion::gen_system(cfg).unitary);
}

TEST_CASE("subunitary model lands sigma_max on 0.95 and keeps the factorization") {
    SystemConfig cfg;
    cfg.m_in = 12;
    cfg.n_out = 20;
    cfg.n_plane = 24;
    cfg.target_pixels = {0, 5, 6};
    cfg.target_transmittance = 0.3;
    cfg.target_phase = 1.1;
    cfg.loss_model = LossModel::ginibre_subunitary;
    cfg.seed = 404;

    const ScatteringPair pair = helion::gen_system(cfg);
    CHECK_FALSE(pair.unitary);
    CHECK(pair.sigma_max == doctest::Approx(0.95).epsilon(1e-6));
    CHECK(pair.s1.rows() == 20);
    CHECK(pair.s1.cols() == 12);

    // The stored propagators must still reproduce both matrices.
    for (int hyp : {1, 2}) {
        const ComplexVector mask = helion::hypothesis_mask(cfg, hyp);
        ComplexMatrix masked_a = pair.a;
        for (std::size_t p = 0; p < masked_a.rows(); ++p) {
            for (std::size_t c = 0; c < masked_a.cols(); ++c) masked_a(p, c) *= mask[p];
        }
        const ComplexMatrix rebuilt = helion::matmul(pair.b, masked_a);
        CHECK(max_abs_diff(rebuilt, hyp == 1 ? pair.s1 : pair.s2) < 1e-10);
    }
}

TEST_CASE("hypothesis masks") {
    SystemConfig cfg = base_config();
    cfg.target_transmittance = 0.25;
    cfg.target_phase = 0.7;
    const ComplexVector m1 = helion::hypothesis_mask(cfg, 1);
    for (const Complex& v : m1) CHECK(v == Complex(1.0, 0.0));
    const ComplexVector m2 = helion::hypothesis_mask(cfg, 2);
    CHECK(std::abs(m2[3] - 0.25 * std::exp(Complex(0.0, 0.7))) < 1e-15);
    CHECK(m2[0] == Complex(1.0, 0.0));
    CHECK_THROWS_AS(helion::hypothesis_mask(cfg, 3), helion::ValidationError);
    CHECK_THROWS_AS(helion::hypothesis_mask(cfg, 0), helion::ValidationError);
}

TEST_CASE("target_plane_field applies mask after the input propagator") {
    const ScatteringPair pair = helion::gen_system(base_config());
    ComplexVector e2(16, Complex(0.0, 0.0));
    e2[2] = 1.0;
    const ComplexVector f1 = helion::target_plane_field(pair, e2, 1);
    const ComplexVector f2 = helion::target_plane_field(pair, e2, 2);
    for (std::size_t p = 0; p < 16; ++p) {
        CHECK(std::abs(f1[p] - pair.a(p, 2)) < 1e-15);
        const Complex want = p == 3 ? -pair.a(p, 2) : pair.a(p, 2);  // phase pi flips pixel 3
        CHECK(std::abs(f2[p] - want) < 1e-14);
    }
    ComplexVector wrong(5, Complex(0.0, 0.0));
    CHECK_THROWS_AS(helion::target_plane_field(pair, wrong, 1), helion::DimensionError);
}

TEST_CASE("the best probe focuses more light on the target than the average probe") {
    // For unitary b the quadratic form is |1 - e^{i phi}|^2 times the
    // hypothesis-1 intensity on the target pixels, so lambda_1 / 4 at phi = pi.
    const ScatteringPair pair = helion::gen_system(base_config());
    const auto spec = helion::spectrum(helion::build_discrimination_operator(pair));
    const auto target_intensity = [&](const ComplexVector& state) {
        const ComplexVector field = helion::target_plane_field(pair, state, 1);
        return std::norm(field[3]);
    };
    const auto best = helion::optimal_state(spec, 1.0);
    const auto avg = helion::average_state(spec, 1.0);
    CHECK(target_intensity(best.amplitudes) ==
          doctest::Approx(spec.eigenvalues[0] / 4.0).epsilon(1e-10));
    CHECK(target_intensity(avg.amplitudes) ==
          doctest::Approx(spec.mean_eigenvalue / 4.0).epsilon(1e-10));
    CHECK(target_intensity(best.amplitudes) > target_intensity(avg.amplitudes));
}

TEST_CASE("gen_system is deterministic and distinct across seeds") {
    const ScatteringPair p1 = helion::gen_system(base_config());
    const ScatteringPair p2 = helion::gen_system(base_config());
    CHECK(p1.s1 == p2.s1);
    CHECK(p1.s2 == p2.s2);
    CHECK(p1.a == p2.a);
    CHECK(p1.b == p2.b);
    CHECK(p1.sigma_max == p2.sigma_max);

    SystemConfig other = base_config();
    other.seed = 12;
    CHECK(helion::gen_system(other).s1 != p1.s1);
    // a and b come from different substreams of the same seed.
    CHECK(p1.a != p1.b);
}

TEST_CASE("config validation rejects malformed systems") {
    SystemConfig cfg = base_config();
    cfg.target_pixels = {};
    CHECK_THROWS_AS(cfg.validate(), helion::ValidationError);

    cfg = base_config();
    cfg.target_pixels = {3, 3};
    CHECK_THROWS_AS(cfg.validate(), helion::ValidationError);

    cfg = base_config();
    cfg.target_pixels = {16};
    CHECK_THROWS_AS(cfg.validate(), helion::ValidationError);

    cfg = base_config();
    cfg.target_transmittance = 1.5;
    CHECK_THROWS_AS(cfg.validate(), helion::ValidationError);

    cfg = base_config();
    cfg.n_out = 8;  // unitary_embed needs all three dims equal
    CHECK_THROWS_AS(cfg.validate(), helion::ValidationError);

    cfg = base_config();
    cfg.m_in = 0;
    CHECK_THROWS_AS(cfg.validate(), helion::ValidationError);
}

}  // TEST_SUITE
