// Copyright 2026 The CDPQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <vector>

#include "cdpq/core/fit.hpp"
#include "cdpq/core/linalg.hpp"
#include "cdpq/core/parallel.hpp"
#include "cdpq/core/propagate.hpp"
#include "cdpq/core/random.hpp"

using namespace cdpq;

namespace {

// Independent oracle: truncated Taylor series with scaling and squaring.
Operator taylor_expm(const Operator& h, double t) {
    const cplx i(0, 1);
    int squarings = 0;
    Operator a = -i * t * h;
    while (a.norm() > 0.1) {
        a /= 2.0;
        ++squarings;
    }
    Operator sum = Operator::Identity(h.rows(), h.cols());
    Operator term = sum;
    for (int k = 1; k < 30; ++k) {
        term = (term * a / static_cast<double>(k)).eval();
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
    return sum;
}

Operator random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Operator a(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a(r, c) = cplx(g(rng), g(rng));
    }
    return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST(Ladder, CommutatorAndNumber) {
    const auto l = ladder_operators(5);
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(l.number(k, k).real(), k, 1e-14);
    const Operator comm = l.lowering * l.raising - l.raising * l.lowering;
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(comm(k, k).real(), 1.0, 1e-14);
    EXPECT_NEAR(comm(4, 4).real(), -4.0, 1e-14);  // truncation edge
    EXPECT_THROW(ladder_operators(1), Error);
}

TEST(Pauli, Algebra) {
    const cplx i(0, 1);
    EXPECT_LT((sigma_x() * sigma_y() - i * sigma_z()).norm(), 1e-15);
    EXPECT_LT((sigma_x() * sigma_x() - Operator::Identity(2, 2)).norm(), 1e-15);
}

TEST(Expm, MatchesRotationFormula) {
    // exp(-i w t n.sigma) = cos(wt) I - i sin(wt) n.sigma
    const double w = 2.3, t = 0.7;
    const double nx = 0.48, ny = -0.6, nz = 0.64;
    const Operator ns = nx * sigma_x() + ny * sigma_y() + nz * sigma_z();
    const cplx i(0, 1);
    const Operator expect = std::cos(w * t) * Operator::Identity(2, 2) - i * std::sin(w * t) * ns;
    EXPECT_LT((expm_hermitian(Operator(w * ns), t) - expect).norm(), 1e-13);
}

TEST(Expm, MatchesTaylorOracleSmallAndLarge) {
    for (int n : {3, 6, 10}) {
        const Operator h = random_hermitian(n, 11u + static_cast<unsigned>(n));
        const Operator u = expm_hermitian(h, 0.9);
        EXPECT_LT((u - taylor_expm(h, 0.9)).norm(), 1e-10) << n;
        EXPECT_LT((u.adjoint() * u - Operator::Identity(n, n)).norm(), 1e-12);
    }
}

TEST(Eigen, PhaseConventionAndOrdering) {
    const Operator h = random_hermitian(4, 3);
    const auto es = eigendecompose(h);
    for (int k = 0; k < 4; ++k) {
        Eigen::Index best = 0;
        es.vectors.col(k).cwiseAbs().maxCoeff(&best);
        EXPECT_NEAR(es.vectors(best, k).imag(), 0.0, 1e-12);
        EXPECT_GT(es.vectors(best, k).real(), 0.0);
        EXPECT_LT((h * es.vectors.col(k) - es.values(k) * es.vectors.col(k)).norm(), 1e-10);
    }
    for (int k = 0; k < 3; ++k) EXPECT_LE(es.values(k), es.values(k + 1));
    Operator bad = h;
    bad(0, 1) += 1.0;
    EXPECT_THROW(eigendecompose(bad), Error);
}

TEST(Distances, GlobalPhaseInvariance) {
    const Operator u = expm_hermitian(random_hermitian(3, 5), 1.0);
    const Operator v = std::exp(cplx(0, 0.77)) * u;
    EXPECT_LT(phase_invariant_distance(u, v), 1e-13);
    EXPECT_NEAR(trace_infidelity(u, v), 0.0, 1e-14);
    EXPECT_GT(trace_infidelity(u, Operator(Operator::Identity(3, 3))), 1e-3);
}

TEST(Populations, RejectsNonOrthonormalBasis) {
    StateVector psi(2);
    psi << 1.0, 0.0;
    Operator b(2, 2);
    b << 1.0, 1.0, 0.0, 1.0;
    EXPECT_THROW(populations<double>(psi, b), Error);
    const RealVector p = populations<double>(psi);
    EXPECT_DOUBLE_EQ(p(0), 1.0);
}

TEST(Propagate, ConstantHamiltonianMatchesSingleExponential) {
    const Operator h = random_hermitian(3, 9);
    std::vector<Operator> samples(50, h);
    StateVector psi = StateVector::Zero(3);
    psi(0) = 1.0;
    const auto traj = propagate<double>(samples, 0.01, psi);
    ASSERT_EQ(traj.size(), 51u);
    EXPECT_LT((traj.back() - taylor_expm(h, 0.5) * psi).norm(), 1e-11);
    EXPECT_LT((propagator<double>(samples, 0.01) - taylor_expm(h, 0.5)).norm(), 1e-11);
    EXPECT_THROW(propagate<double>(samples, 0.0, psi), Error);
}

TEST(Propagate, CommutingTimeDependenceIntegratesExactly) {
    // H(t) = f(t) sx / 2 commutes with itself: U = exp(-i F sx / 2), F = int f.
    auto f = [](double t) { return 3.0 * std::sin(2.0 * t); };
    const double big_f = 1.5 * (1.0 - std::cos(2.0 * 1.2));
    const Operator u = evolve_unitary([&](double t) { return Operator(f(t) * sigma_x() / 2.0); }, 0.0, 1.2, 1e-3, 2);
    const Operator expect = taylor_expm(sigma_x() / 2.0, big_f);
    EXPECT_LT(phase_invariant_distance(u, expect), 1e-6);
    EXPECT_EQ(step_count(1.0, 0.25), 4);
    EXPECT_EQ(step_count(0.0, 0.25), 0);
}

TEST(Fit, SinusoidRecoversParameters) {
    std::vector<double> x, y;
    for (int i = 0; i < 80; ++i) {
        x.push_back(i * 0.05);
        y.push_back(0.4 + 0.3 * std::cos(5.1 * x.back() + 0.8));
    }
    const auto fit = fit_sinusoid(x, y, 2.0, 10.0);
    EXPECT_NEAR(fit.offset, 0.4, 1e-8);
    EXPECT_NEAR(fit.amplitude, 0.3, 1e-8);
    EXPECT_NEAR(fit.omega, 5.1, 1e-8);
    EXPECT_NEAR(fit.phase, 0.8, 1e-7);
    EXPECT_NEAR(fit.contrast(), 0.6, 1e-8);
}

TEST(Fit, ExponentialAndLine) {
    std::vector<double> x, y;
    for (int i = 0; i < 30; ++i) {
        x.push_back(i);
        y.push_back(0.7 * std::exp(-x.back() / 9.0) + 0.1);
    }
    Eigen::VectorXd init(3);
    init << 1.0, 5.0, 0.0;
    const auto fit = least_squares([](const Eigen::VectorXd& p, double t) { return p(0) * std::exp(-t / p(1)) + p(2); },
                                   x, y, init);
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.params(1), 9.0, 1e-6);
    const std::vector<double> lx{0, 1, 2, 3}, ly{1, 3, 5, 7};
    const auto line = fit_line(lx, ly);
    EXPECT_NEAR(line.slope, 2.0, 1e-12);
    EXPECT_NEAR(line.intercept, 1.0, 1e-12);
    EXPECT_THROW(fit_sinusoid(std::vector<double>{1, 2}, std::vector<double>{1, 2}, 1, 2), Error);
}

TEST(Random, SubstreamsAreDeterministicAndDistinct) {
    auto a = make_stream(42, StreamTag::Noise, 7);
    auto b = make_stream(42, StreamTag::Noise, 7);
    auto c = make_stream(42, StreamTag::Noise, 8);
    auto d = make_stream(42, StreamTag::RbSequence, 7);
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(va, d());
}

TEST(Parallel, CoversEveryIndexOnceForAnyWorkerCount) {
    for (int w : {1, 2, 3, 8}) {
        std::vector<std::atomic<int>> hits(37);
        parallel_for(hits.size(), w, [&](std::size_t i) { hits[i]++; });
        for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    }
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 5) throw Error(ErrorCode::Validation, "boom");
                 }),
                 Error);
}
