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

#include "risce/training.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace risce {

Grouping Grouping::contiguous(int n_elements, int n_groups)
{
    if (n_elements < 1 || n_groups < 1 || n_elements % n_groups != 0)
        throw DomainError("grouping: N_G = " + std::to_string(n_groups) + " must divide N = " +
                          std::to_string(n_elements));
    Grouping g;
    g.n_elements = n_elements;
    g.n_groups = n_groups;
    g.group_of.resize(n_elements);
    const int size = n_elements / n_groups;
    for (int n = 0; n < n_elements; ++n)
        g.group_of[n] = n / size;
    return g;
}

Grouping Grouping::grid_tiles(int n_x, int n_y, int tile_x, int tile_y)
{
    if (tile_x < 1 || tile_y < 1 || n_x % tile_x != 0 || n_y % tile_y != 0)
        throw DomainError("grouping: tiles must evenly divide the RIS grid");
    Grouping g;
    g.n_elements = n_x * n_y;
    const int tiles_x = n_x / tile_x;
    g.n_groups = tiles_x * (n_y / tile_y);
    g.group_of.resize(g.n_elements);
    for (int n = 0; n < g.n_elements; ++n) {
        const int ix = n % n_x;
        const int iy = n / n_x;
        g.group_of[n] = (iy / tile_y) * tiles_x + ix / tile_x;
    }
    return g;
}

void Grouping::validate() const
{
    if (n_groups < 1 || n_elements < 1 || n_elements % n_groups != 0 ||
        static_cast<int>(group_of.size()) != n_elements)
        throw DomainError("grouping is not a partition into equal groups");
    std::vector<int> count(n_groups, 0);
    for (int g : group_of) {
        if (g < 0 || g >= n_groups)
            throw DomainError("grouping: group index out of range");
        ++count[g];
    }
    for (int c : count)
        if (c != group_size())
            throw DomainError("grouping: groups must have N / N_G elements each");
}

Eigen::MatrixXd Grouping::membership() const
{
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n_groups, n_elements);
    for (int n = 0; n < n_elements; ++n)
        P(group_of[n], n) = 1.0;
    return P;
}

Eigen::MatrixXd hadamard(int order)
{
    if (order < 1 || !std::has_single_bit(static_cast<unsigned>(order)))
        throw DomainError("hadamard: order " + std::to_string(order) + " is not a power of two");
    Eigen::MatrixXd H(1, 1);
    H(0, 0) = 1.0;
    while (H.rows() < order) {
        const Index n = H.rows();
        Eigen::MatrixXd next(2 * n, 2 * n);
        next << H, H, H, -H;
        H = std::move(next);
    }
    return H;
}

TrainingPatterns training_patterns(const Grouping &grouping, int T)
{
    grouping.validate();
    const int NG = grouping.n_groups;
    if (T < NG + 1)
        throw ConfigError("training: T = " + std::to_string(T) + " < N_G + 1 = " +
                          std::to_string(NG + 1) + "; channel not identifiable");
    const int order = static_cast<int>(std::bit_ceil(static_cast<unsigned>(T)));
    const Eigen::MatrixXd H = hadamard(order);

    TrainingPatterns out;
    out.orthogonal = (order == T);
    for (int t = 0; t < T; ++t) {
        cvec theta_g = H.row(t).segment(1, NG).transpose().cast<cplx>();
        cvec theta(grouping.n_elements);
        for (int n = 0; n < grouping.n_elements; ++n)
            theta(n) = theta_g(grouping.group_of[n]);
        out.group_patterns.push_back(std::move(theta_g));
        out.patterns.push_back(std::move(theta));
    }
    return out;
}

TrainingPatterns training_patterns(int n_elements, int n_groups, int T)
{
    return training_patterns(Grouping::contiguous(n_elements, n_groups), T);
}

cmat pilot_sequences(int n_users)
{
    if (n_users < 1)
        throw DomainError("pilot_sequences: K must be >= 1");
    cmat P(n_users, n_users);
    for (int k = 0; k < n_users; ++k)
        for (int i = 0; i < n_users; ++i) {
            // Reduce k*i mod K first so the phase argument stays exact for the
            // entries that should be exactly +-1.
            const int r = (k * i) % n_users;
            if (r == 0)
                P(k, i) = 1.0;
            else if (2 * r == n_users)
                P(k, i) = -1.0;
            else
                P(k, i) = std::polar(1.0, -2.0 * std::numbers::pi * r / n_users);
        }
    return P;
}

PilotOverhead pilot_overhead(int n_users, int n_elements, int n_groups)
{
    return {n_users * (n_elements + 1), n_users * (n_groups + 1)};
}

TrainingConfig make_training_config(const Grouping &grouping, int n_users, int T,
                                    std::vector<double> rho, double sigma_w2)
{
    if (static_cast<int>(rho.size()) != n_users)
        throw ConfigError("training: need one pilot power per user");
    if (!(sigma_w2 >= 0.0))
        throw ConfigError("training: noise power must be >= 0");
    TrainingConfig c;
    c.n_groups = grouping.n_groups;
    c.grouping = grouping;
    c.T = T == 0 ? grouping.n_groups + 1 : T;
    TrainingPatterns tp = training_patterns(grouping, c.T);
    c.patterns = std::move(tp.patterns);
    c.group_patterns = std::move(tp.group_patterns);
    c.pilot_matrix = pilot_sequences(n_users);
    c.rho = std::move(rho);
    c.sigma_w2 = sigma_w2;
    c.tau_p = n_users * c.T;
    return c;
}

cmat build_Z(int k, const ChannelStatistics &stats, const TrainingConfig &config, bool grouped)
{
    const int M = stats.n_antennas();
    const int K = config.n_users();
    const auto &pats = grouped ? config.group_patterns : config.patterns;
    if (pats.empty() || k < 0 || k >= stats.n_users() || K != stats.n_users())
        throw std::logic_error("build_Z: dimension mismatch");
    const Index D = pats.front().size();
    if (!grouped && D != stats.n_elements())
        throw std::logic_error("build_Z: pattern length differs from N");

    const double direct = K * std::sqrt(stats.rho_b[k]);
    const double reflected = K * std::sqrt(stats.rho_g[k] * stats.rho_A);
    cmat Z = cmat::Zero(static_cast<Index>(M) * config.T, M * (D + 1));
    for (int t = 0; t < config.T; ++t) {
        for (int m = 0; m < M; ++m) {
            const Index row = static_cast<Index>(t) * M + m;
            Z(row, m) = direct;
            Z.row(row).segment(M + m * D, D) = reflected * pats[t].transpose();
        }
    }
    return Z;
}

std::vector<cvec> draw_noise(const TrainingConfig &config, int n_antennas, Rng &rng)
{
    const double scale = std::sqrt(config.sigma_w2);
    std::vector<cvec> w;
    w.reserve(static_cast<std::size_t>(config.T) * config.n_users());
    for (int t = 0; t < config.T; ++t)
        for (int i = 0; i < config.n_users(); ++i)
            w.push_back(scale * complex_normal(n_antennas, rng));
    return w;
}

ObservationSet synthesize_received(const ChannelRealization &real, const ChannelStatistics &stats,
                                   const TrainingConfig &config, const std::vector<cvec> &noise)
{
    const int M = stats.n_antennas();
    const int N = stats.n_elements();
    const int K = config.n_users();
    if (static_cast<int>(real.s.size()) != K || static_cast<int>(noise.size()) != config.T * K)
        throw std::logic_error("synthesize_received: dimension mismatch");

    ObservationSet obs;
    obs.y_raw.reserve(noise.size());
    std::vector<cvec> y_combined(K, cvec::Zero(static_cast<Index>(M) * config.T));
    for (int t = 0; t < config.T; ++t) {
        // Noise-free per-user contribution [sqrt(rho_b) I, sqrt(rho_A rho_g) I (x) theta_t] s_k.
        std::vector<cvec> x(K);
        for (int k = 0; k < K; ++k) {
            const cvec &s = real.s[k];
            const double direct = std::sqrt(stats.rho_b[k]);
            const double reflected = std::sqrt(stats.rho_A * stats.rho_g[k]);
            x[k].resize(M);
            for (int m = 0; m < M; ++m)
                x[k](m) = direct * s(m) +
                          reflected * config.patterns[t].cwiseProduct(s.segment(M + m * N, N)).sum();
            x[k] *= std::sqrt(config.rho[k]);
        }
        for (int i = 0; i < K; ++i) {
            cvec y = noise[static_cast<std::size_t>(t) * K + i];
            for (int k = 0; k < K; ++k)
                y += x[k] * config.pilot_matrix(k, i);
            obs.y_raw.push_back(std::move(y));
        }
        for (int k = 0; k < K; ++k) {
            auto block = y_combined[k].segment(static_cast<Index>(t) * M, M);
            for (int i = 0; i < K; ++i)
                block += obs.y_raw[static_cast<std::size_t>(t) * K + i] *
                         std::conj(config.pilot_matrix(k, i));
        }
    }
    obs.y_combined = std::move(y_combined);
    obs.noise_digest = digest(noise);
    return obs;
}

ObservationSet synthesize_received(const ChannelRealization &real, const ChannelStatistics &stats,
                                   const TrainingConfig &config, Rng &rng)
{
    return synthesize_received(real, stats, config, draw_noise(config, stats.n_antennas(), rng));
}

std::uint64_t digest(const std::vector<cvec> &values)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto &v : values) {
        const auto *bytes = reinterpret_cast<const unsigned char *>(v.data());
        const std::size_t n = static_cast<std::size_t>(v.size()) * sizeof(cplx);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

} // namespace risce
