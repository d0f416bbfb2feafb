// SPDX-License-Identifier: Apache-2.0
//
// risce: channel estimation for RIS-assisted multi-user uplinks
// Copyright (C) 2026 The risce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "support.hpp"

#include <doctest.h>

#include <complex>

using namespace risce;
using risce::testing::desk_stats;
using risce::testing::desk_training;

TEST_CASE("Sylvester Hadamard matrices have Gram T I")
{
    for (int T = 1; T <= 128; T *= 2) {
        const Eigen::MatrixXd H = hadamard(T);
        CHECK(H.cwiseAbs().minCoeff() == 1.0);
        CHECK(H.transpose() * H == T * Eigen::MatrixXd::Identity(T, T));
    }
    CHECK_THROWS_AS(hadamard(12), DomainError);
    CHECK_THROWS_AS(hadamard(0), DomainError);
}

TEST_CASE("training rows are Hadamard prefixes and orthogonal for power-of-two T")
{
    for (int ng : {1, 3, 7, 15}) {
        const int T = ng + 1;
        const TrainingPatterns tp = training_patterns(ng, ng, T);
        const Eigen::MatrixXd H = hadamard(T);
        Eigen::MatrixXd X(T, ng + 1);
        for (int t = 0; t < T; ++t) {
            X(t, 0) = 1.0;
            X.row(t).tail(ng) = tp.group_patterns[t].real().transpose();
            CHECK(tp.group_patterns[t].imag().isZero(0.0));
        }
        CHECK(X == H.leftCols(ng + 1) * H(0, 0));
        CHECK(X.transpose() * X == T * Eigen::MatrixXd::Identity(ng + 1, ng + 1));
        CHECK(tp.orthogonal);
    }
    CHECK_FALSE(training_patterns(16, 4, 5).orthogonal);
}

TEST_CASE("N = N_G = 2, T = 3 takes entries 2..3 of the first three order-4 Hadamard rows")
{
    const TrainingPatterns tp = training_patterns(2, 2, 3);
    const Eigen::MatrixXd H = hadamard(4);
    REQUIRE(tp.group_patterns.size() == 3);
    for (int t = 0; t < 3; ++t) {
        CHECK(H(t, 0) == 1.0);
        CHECK(tp.group_patterns[t](0).real() == H(t, 1));
        CHECK(tp.group_patterns[t](1).real() == H(t, 2));
    }
    CHECK_FALSE(tp.orthogonal);
}

TEST_CASE("element patterns repeat the group entry and have unit modulus")
{
    const Grouping g = Grouping::contiguous(16, 4);
    const TrainingPatterns tp = training_patterns(g, 5);
    REQUIRE(tp.patterns.size() == 5);
    for (std::size_t t = 0; t < 5; ++t) {
        CHECK((tp.patterns[t].cwiseAbs().array() - 1.0).abs().maxCoeff() == 0.0);
        for (int n = 0; n < 16; ++n)
            CHECK(tp.patterns[t](n) == tp.group_patterns[t](g.group_of[n]));
    }
}

TEST_CASE("groupings: contiguous and tiles partition the elements equally")
{
    const Grouping c = Grouping::contiguous(16, 4);
    for (int n = 0; n < 16; ++n)
        CHECK(c.group_of[n] == n / 4);
    const Grouping t = Grouping::grid_tiles(4, 4, 2, 2);
    CHECK(t.group_of[0] == 0);
    CHECK(t.group_of[1] == 0);
    CHECK(t.group_of[4] == 0);
    CHECK(t.group_of[5] == 0);
    CHECK(t.group_of[2] == 1);
    CHECK(t.group_of[8] == 2);
    CHECK(t.membership().rowwise().sum().isApprox(Eigen::VectorXd::Constant(4, 4.0)));
    CHECK_THROWS(Grouping::contiguous(16, 5));
    CHECK_THROWS(Grouping::contiguous(16, 0));
}

TEST_CASE("DFT pilots have Gram K I for every K up to 64")
{
    for (int K = 1; K <= 64; ++K) {
        const cmat P = pilot_sequences(K);
        CHECK((P.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        CHECK((P * P.adjoint() - K * cmat::Identity(K, K)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("overhead and identifiability")
{
    const PilotOverhead p = pilot_overhead(4, 64, 16);
    CHECK(p.full == 260);
    CHECK(p.grouped == 68);
    const TrainingConfig tc = desk_training(4, 1.0);
    CHECK(tc.T == 5);
    CHECK(tc.tau_p == desk_stats().n_users() * tc.T);
    CHECK(desk_training(4, 1.0, 9).tau_p == 18);
    CHECK_THROWS_AS(desk_training(4, 1.0, 4), ConfigError);
    CHECK_THROWS_AS(desk_training(16, 1.0, 16), ConfigError);
}

TEST_CASE("grouped Z at N_G = N equals the ungrouped Z bit for bit")
{
    const TrainingConfig tc = desk_training(16, 0.7);
    for (int k = 0; k < desk_stats().n_users(); ++k)
        CHECK(build_Z(k, desk_stats(), tc, true) == build_Z(k, desk_stats(), tc, false));
}

TEST_CASE("combining reproduces y_k = sqrt(rho) Z_k s_k + combined noise")
{
    const ChannelStatistics &st = desk_stats();
    const int K = st.n_users();
    const int M = st.n_antennas();
    for (int ng : {4, 16}) {
        const TrainingConfig tc = desk_training(ng, 0.37);
        Rng rng(5);
        const ChannelRealization real = sample_realization(st, rng);
        const std::vector<cvec> noise = draw_noise(tc, M, rng);
        const ObservationSet obs = synthesize_received(real, st, tc, noise);
        for (int k = 0; k < K; ++k) {
            cvec w(M * tc.T);
            for (int t = 0; t < tc.T; ++t) {
                cvec acc = cvec::Zero(M);
                for (int i = 0; i < K; ++i)
                    acc += noise[t * K + i] * std::conj(tc.pilot_matrix(k, i));
                w.segment(t * M, M) = acc;
            }
            const cvec model = std::sqrt(0.37) * build_Z(k, st, tc, false) * real.s[k] + w;
            CHECK((obs.y_combined[k] - model).norm() / model.norm() < 1e-10);
        }
    }
}

TEST_CASE("noise draws and digests are reproducible")
{
    const TrainingConfig tc = desk_training(4, 1.0);
    Rng a(8), b(8), c(9);
    const auto na = draw_noise(tc, 4, a);
    const auto nb = draw_noise(tc, 4, b);
    const auto nc = draw_noise(tc, 4, c);
    CHECK(na.size() == static_cast<std::size_t>(tc.T * 2));
    CHECK(digest(na) == digest(nb));
    CHECK(digest(na) != digest(nc));
    double power = 0.0;
    Rng big(10);
    for (int r = 0; r < 2000; ++r)
        for (const auto &w : draw_noise(tc, 4, big))
            power += w.squaredNorm() / 4.0;
    CHECK(power / (2000.0 * tc.T * 2) == doctest::Approx(tc.sigma_w2).epsilon(0.02));
}
