#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "helion/discrim.hpp"
#include "helion/rng.hpp"
#include "helion/scatter.hpp"

using helion::Complex;
using helion::ComplexMatrix;
using helion::ComplexVector;
using helion::DiscriminationSpectrum;
using helion::ScatteringPair;
using helion::SystemConfig;

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    helion::Rng rng(seed, 0);
    ComplexMatrix m(rows, cols);
    for (Complex& z : m.data()) z = rng.next_unit_circular_gaussian();
    return m;
}

SystemConfig unitary_config(std::size_t dim, std::vector<std::size_t> pixels, double phase) {
    SystemConfig cfg;
    cfg.m_in = dim;
    cfg.n_out = dim;
    cfg.n_plane = dim;
    cfg.target_pixels = std::move(pixels);
    cfg.target_transmittance = 1.0;
    cfg.target_phase = phase;
    cfg.loss_model = helion::LossModel::unitary_embed;
    cfg.seed = 23;
    return cfg;
}

ComplexMatrix diagonal(std::vector<double> entries) {
    ComplexMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexVector unit_random(std::size_t dim, std::uint64_t seed) {
    helion::Rng rng(seed, 3);
    ComplexVector v(dim);
    for (Complex& z : v) z = rng.next_unit_circular_gaussian();
    helion::scale(v, 1.0 / helion::norm(v));
    return v;
}

}  // namespace

TEST_SUITE("discrim") {

TEST_CASE("discrimination operator matches the entrywise definition") {
    const ComplexMatrix s1 = random_matrix(5, 4, 1);
    const ComplexMatrix s2 = random_matrix(5, 4, 2);
    const ComplexMatrix d = helion::build_discrimination_operator(s1, s2);
    REQUIRE(d.rows() == 4);
    REQUIRE(d.cols() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            Complex want = 0.0;
            for (std::size_t k = 0; k < 5; ++k) {
                want += std::conj(s2(k, i) - s1(k, i)) * (s2(k, j) - s1(k, j));
            }
            CHECK(std::abs(d(i, j) - want) < 1e-12);
            CHECK(d(i, j) == std::conj(d(j, i)));  // exact after symmetrization
        }
    }
    CHECK_THROWS_AS(helion::build_discrimination_operator(s1, random_matrix(5, 3, 2)),
                    helion::DimensionError);
}

TEST_CASE("a sign-flipped channel gives the two-point spectrum") {
    ComplexMatrix s1 = ComplexMatrix::identity(2);
    ComplexMatrix s2 = ComplexMatrix::identity(2);
    s2(0, 0) = -1.0;
    const DiscriminationSpectrum spec =
        helion::spectrum(helion::build_discrimination_operator(s1, s2));
    CHECK(spec.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(spec.eigenvalues[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(spec.mean_eigenvalue == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(spec.eigenstates(0, 0) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(spec.eigenstates(1, 1) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("k target pixels put exactly k eigenvalues in the spectrum") {
    const ScatteringPair pair = helion::gen_system(unitary_config(12, {1, 4, 9}, kPi / 2.0));
    const DiscriminationSpectrum spec =
        helion::spectrum(helion::build_discrimination_operator(pair));
    // Phase pi/2 puts every nonzero eigenvalue at 2(1 - cos(pi/2)) = 2.
    for (int j = 0; j < 3; ++j) CHECK(spec.eigenvalues[j] == doctest::Approx(2.0).epsilon(1e-9));
    for (std::size_t j = 3; j < 12; ++j) CHECK(spec.eigenvalues[j] < 1e-9);
    CHECK(spec.mean_eigenvalue == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("mean eigenvalue is the trace over the dimension") {
    const ScatteringPair pair = helion::gen_system(unitary_config(9, {0, 2}, 0.9));
    const ComplexMatrix d = helion::build_discrimination_operator(pair);
    const DiscriminationSpectrum spec = helion::spectrum(d);
    CHECK(spec.mean_eigenvalue == doctest::Approx(d.trace().real() / 9.0).epsilon(1e-12));
}

TEST_CASE("eigenvalues just outside [0, 4] clamp; far outside raises") {
    const DiscriminationSpectrum near = helion::spectrum(diagonal({4.0 + 1e-10, -1e-10}));
    CHECK(near.eigenvalues[0] == 4.0);
    CHECK(near.eigenvalues[1] == 0.0);

    CHECK_THROWS_AS(helion::spectrum(diagonal({5.0, 0.0})), helion::NumericError);
    CHECK_THROWS_AS(helion::spectrum(diagonal({2.0, -1e-8})), helion::NumericError);
}

TEST_CASE("optimal state is the unit leading eigenstate") {
    const DiscriminationSpectrum spec = helion::spectrum(diagonal({3.0, 1.0, 0.0}));
    const helion::ProbeState best = helion::optimal_state(spec, 2.5);
    CHECK(best.photons == 2.5);
    CHECK(std::abs(best.amplitudes[0] - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(best.amplitudes[1]) < 1e-12);
    CHECK(helion::norm(best.amplitudes) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(helion::optimal_state(spec, -1.0), helion::ValidationError);
}

TEST_CASE("average state achieves exactly the mean eigenvalue") {
    const ScatteringPair pair = helion::gen_system(unitary_config(10, {2, 3, 7}, 1.3));
    const ComplexMatrix d = helion::build_discrimination_operator(pair);
    const DiscriminationSpectrum spec = helion::spectrum(d);
    const helion::ProbeState avg = helion::average_state(spec, 1.0);
    CHECK(helion::norm(avg.amplitudes) == doctest::Approx(1.0).epsilon(1e-12));
    const double form =
        std::real(helion::inner_product(avg.amplitudes, helion::matvec(d, avg.amplitudes)));
    CHECK(form == doctest::Approx(spec.mean_eigenvalue).epsilon(1e-10));
}

TEST_CASE("statistical distance vanishes for identical channels") {
    SystemConfig cfg = unitary_config(6, {0}, 0.0);
    const ScatteringPair pair = helion::gen_system(cfg);
    const helion::ProbeState state{unit_random(6, 8), 1.0};
    CHECK(helion::statistical_distance(pair, state) == 0.0);
}

TEST_CASE("a global sign flip saturates the distance at 4 for every state") {
    const ComplexMatrix w = helion::gen_random_unitary(5, 3);
    ScatteringPair pair;
    pair.s1 = w;
    pair.s2 = w;
    for (Complex& z : pair.s2.data()) z = -z;
    for (std::uint64_t s = 0; s < 5; ++s) {
        const helion::ProbeState state{unit_random(5, 100 + s), 1.0};
        CHECK(helion::statistical_distance(pair, state) == doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("statistical distance equals the output-field difference power") {
    SystemConfig cfg;
    cfg.m_in = 7;
    cfg.n_out = 11;
    cfg.n_plane = 9;
    cfg.target_pixels = {1, 8};
    cfg.target_transmittance = 0.6;
    cfg.target_phase = 0.4;
    cfg.loss_model = helion::LossModel::ginibre_subunitary;
    cfg.seed = 19;
    const ScatteringPair pair = helion::gen_system(cfg);
    const helion::ProbeState state{unit_random(7, 55), 1.0};
    const double d12sq = helion::statistical_distance(pair, state);

    double want = 0.0;
    for (std::size_t k = 0; k < 11; ++k) {
        Complex diff = 0.0;
        for (std::size_t j = 0; j < 7; ++j) {
            diff += (pair.s2(k, j) - pair.s1(k, j)) * state.amplitudes[j];
        }
        want += std::norm(diff);
    }
    CHECK(d12sq == doctest::Approx(want).epsilon(1e-10));
    CHECK(d12sq > 0.0);

    const helion::ProbeState wrong{unit_random(5, 1), 1.0};
    CHECK_THROWS_AS(helion::statistical_distance(pair, wrong), helion::DimensionError);
}

TEST_CASE("no state beats the leading eigenvalue") {
    const ScatteringPair pair = helion::gen_system(unitary_config(8, {2, 5}, 2.0));
    const DiscriminationSpectrum spec =
        helion::spectrum(helion::build_discrimination_operator(pair));
    for (std::uint64_t s = 0; s < 50; ++s) {
        const helion::ProbeState state{unit_random(8, 200 + s), 1.0};
        CHECK(helion::statistical_distance(pair, state) <= spec.eigenvalues[0] + 1e-9);
    }
    const helion::ProbeState best = helion::optimal_state(spec, 1.0);
    CHECK(helion::statistical_distance(pair, best) ==
          doctest::Approx(spec.eigenvalues[0]).epsilon(1e-10));
}

TEST_CASE("phase analysis on a unitary pair recovers the output phases") {
    const ScatteringPair pair = helion::gen_system(unitary_config(6, {4}, kPi));
    const DiscriminationSpectrum spec =
        helion::spectrum(helion::build_discrimination_operator(pair));
    const auto entries = helion::unitary_phase_analysis(pair, spec);
    REQUIRE(entries.size() == 6);
    CHECK(entries[0].lambda == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(std::abs(std::abs(entries[0].theta) - kPi) < 1e-7);
    CHECK(entries[0].residual < 1e-7);
    CHECK_FALSE(entries[0].degenerate);
    for (std::size_t j = 1; j < 6; ++j) {
        CHECK(entries[j].lambda < 1e-9);
        CHECK(std::abs(entries[j].theta) < 1e-6);
        CHECK_FALSE(entries[j].degenerate);
    }
}

TEST_CASE("phase analysis rejects non-unitary pairs") {
    SystemConfig cfg = unitary_config(4, {1}, 1.0);
    cfg.target_transmittance = 0.9;
    const ScatteringPair pair = helion::gen_system(cfg);
    const DiscriminationSpectrum spec =
        helion::spectrum(helion::build_discrimination_operator(pair));
    CHECK_THROWS_AS(helion::unitary_phase_analysis(pair, spec), helion::ValidationError);
}

TEST_CASE("mixing a degenerate eigenvalue cluster is flagged, not enforced") {
    // Mask exp(+-i pi/3) on two pixels gives a twofold eigenvalue 1 whose
    // classes carry opposite phases; a 50/50 mix has |overlap| = cos(pi/3).
    const double phi = kPi / 3.0;
    const ComplexMatrix w = helion::gen_random_unitary(4, 5);
    ScatteringPair pair;
    pair.s1 = w;
    pair.s2 = w;
    const Complex m0 = std::exp(Complex(0.0, phi));
    const Complex m1 = std::exp(Complex(0.0, -phi));
    for (std::size_t c = 0; c < 4; ++c) {
        pair.s2(0, c) *= m0;
        pair.s2(1, c) *= m1;
    }
    pair.unitary = true;

    const ComplexMatrix wdag = helion::adjoint(w);
    DiscriminationSpectrum spec;
    spec.eigenvalues = {1.0, 1.0, 0.0, 0.0};
    spec.mean_eigenvalue = 0.5;
    spec.eigenstates = ComplexMatrix(4, 4);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t r = 0; r < 4; ++r) {
        spec.eigenstates(r, 0) = inv_sqrt2 * (wdag(r, 0) + wdag(r, 1));
        spec.eigenstates(r, 1) = inv_sqrt2 * (wdag(r, 0) - wdag(r, 1));
        spec.eigenstates(r, 2) = wdag(r, 2);
        spec.eigenstates(r, 3) = wdag(r, 3);
    }

    const auto entries = helion::unitary_phase_analysis(pair, spec);
    CHECK(entries[0].degenerate);
    CHECK(entries[1].degenerate);
    CHECK(entries[0].residual > 0.5);  // the identity really fails on the mix
    CHECK_FALSE(entries[2].degenerate);
    CHECK_FALSE(entries[3].degenerate);
    CHECK(std::abs(entries[2].theta) < 1e-9);
}

TEST_CASE("spectrum is bitwise deterministic") {
    const ScatteringPair pair = helion::gen_system(unitary_config(7, {1, 3}, 0.8));
    const ComplexMatrix d = helion::build_discrimination_operator(pair);
    const DiscriminationSpectrum a = helion::spectrum(d);
    const DiscriminationSpectrum b = helion::spectrum(d);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.eigenstates == b.eigenstates);
}

}  // TEST_SUITE
