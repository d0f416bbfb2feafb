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

#pragma once

#include "risce/channel_model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace risce {

/// Partition of the N RIS elements into equally sized groups.
struct Grouping {
    int n_elements = 0;
    int n_groups = 0;
    std::vector<int> group_of;  ///< element -> group index

    int group_size() const { return n_elements / n_groups; }

    /// Group g holds elements g*N/N_G .. (g+1)*N/N_G - 1.
    static Grouping contiguous(int n_elements, int n_groups);

    /// Rectangular tiles of tile_x * tile_y elements on the n_x by n_y grid, tiles numbered
    /// row-major. Elements use the same row-major numbering as SystemGeometry.
    static Grouping grid_tiles(int n_x, int n_y, int tile_x, int tile_y);

    /// Throws DomainError unless every group has exactly N / N_G members.
    void validate() const;

    /// N_G x N 0/1 membership matrix.
    Eigen::MatrixXd membership() const;
};

enum class GroupLayout { Contiguous, GridTiles };

/// RIS training patterns and pilot parameters for one estimation round.
struct TrainingConfig {
    int T = 0;
    int n_groups = 0;
    Grouping grouping;
    std::vector<cvec> patterns;        ///< T unit-modulus N-vectors (row vectors theta_t)
    std::vector<cvec> group_patterns;  ///< T N_G-vectors theta_{G,t}
    cmat pilot_matrix;                 ///< K x K, entry (k, i) is phi_k^{(i)}
    std::vector<double> rho;           ///< pilot power per user, watts
    double sigma_w2 = 0.0;             ///< noise power, watts
    int tau_p = 0;                     ///< pilot slots, K * T
    int tau_c = 0;                     ///< coherence interval, metadata only (0 = unspecified)

    int n_users() const { return static_cast<int>(pilot_matrix.rows()); }
    bool grouped() const { return n_groups < grouping.n_elements; }
};

/// Sylvester-construction Hadamard matrix; order must be a power of two.
Eigen::MatrixXd hadamard(int order);

struct TrainingPatterns {
    std::vector<cvec> patterns;
    std::vector<cvec> group_patterns;
    /// False when T is not a power of two; the stacked [1, theta_G] rows are then not
    /// guaranteed to have orthogonal columns.
    bool orthogonal = true;
};

/// [1, theta_{G,t}] is the first N_G + 1 entries of row t of the order 2^ceil(log2 T)
/// Hadamard matrix; theta_t repeats each group entry over the group's elements.
TrainingPatterns training_patterns(const Grouping &grouping, int T);
TrainingPatterns training_patterns(int n_elements, int n_groups, int T);

/// K x K pilot matrix with unit-modulus entries exp(-j 2 pi k i / K).
cmat pilot_sequences(int n_users);

struct PilotOverhead {
    int full = 0;     ///< K (N + 1)
    int grouped = 0;  ///< K (N_G + 1)
};

PilotOverhead pilot_overhead(int n_users, int n_elements, int n_groups);

/// T = 0 selects the minimum identifiable T = N_G + 1.
TrainingConfig make_training_config(const Grouping &grouping, int n_users, int T,
                                    std::vector<double> rho, double sigma_w2);

/// Stacked observation matrix of user k: rows t*M + m, columns [direct | M blocks of D],
/// D = N (ungrouped) or N_G (grouped). Block (t) is K [sqrt(rho_b) I_M, sqrt(rho_g rho_A) I_M (x) theta_t].
cmat build_Z(int k, const ChannelStatistics &stats, const TrainingConfig &config, bool grouped);

/// Received pilot signals for one coherence interval.
struct ObservationSet {
    std::vector<cvec> y_raw;       ///< T*K M-vectors, index t*K + i
    std::vector<cvec> y_combined;  ///< K MT-vectors
    std::uint64_t noise_digest = 0;
};

/// Raw per-slot noise, T*K M-vectors w^{(t,i)} ~ CN(0, sigma_w2 I), index t*K + i.
std::vector<cvec> draw_noise(const TrainingConfig &config, int n_antennas, Rng &rng);

/// y^{(t,i)} = sum_k sqrt(rho_k) [sqrt(rho_b) I, sqrt(rho_A rho_g) I (x) theta_t] s_k phi_k^{(i)} + w^{(t,i)},
/// combined per user with conj(phi_k^{(i)}) and stacked over t.
ObservationSet synthesize_received(const ChannelRealization &real, const ChannelStatistics &stats,
                                   const TrainingConfig &config, const std::vector<cvec> &noise);

ObservationSet synthesize_received(const ChannelRealization &real, const ChannelStatistics &stats,
                                   const TrainingConfig &config, Rng &rng);

/// FNV-1a over the raw bytes of the noise samples.
std::uint64_t digest(const std::vector<cvec> &values);

} // namespace risce
