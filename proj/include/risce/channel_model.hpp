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

#include "risce/linalg.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace risce {

/// Random source used throughout. mt19937_64 output is fully specified by the standard.
using Rng = std::mt19937_64;

/// Node placement and array layouts.
///
/// The RIS is a uniform rectangular array of n_x * n_y elements. Element n (0-based) sits at
/// grid coordinates ((n % n_x) * delta_x, (n / n_x) * delta_y) in the RIS plane. The RIS local
/// frame has its broadside along global +x; the in-plane horizontal axis is global +y and the
/// vertical axis is global +z. The BS is a uniform linear array of m_antennas elements.
struct SystemGeometry {
    Eigen::Vector3d bs_position{0.0, 0.0, 15.0};
    Eigen::Vector3d ris_position{0.0, 50.0, 10.0};
    std::vector<Eigen::Vector3d> ue_positions;
    int n_x = 8;
    int n_y = 8;
    int m_antennas = 8;
    double delta_x = 0.05;  ///< meters
    double delta_y = 0.05;  ///< meters
    double delta_0 = 0.05;  ///< BS antenna spacing, meters
    double wavelength = 0.1;
    double bs_arrival_angle = 1.0471975511965976;  ///< psi, radians

    int n_elements() const { return n_x * n_y; }
    int n_users() const { return static_cast<int>(ue_positions.size()); }

    /// Throws DomainError when a size or spacing invariant is violated.
    void validate() const;

    /// In-plane coordinates of element n (0-based), meters.
    Eigen::Vector2d element_position(int n) const;
};

/// Large-scale and small-scale fading parameters, all linear scale.
struct FadingParams {
    double kappa_A = 0.01;     ///< Rician factor RIS-BS
    double kappa_g = 1.9952623149688795;  ///< Rician factor UE-RIS (shared by all users)
    double alpha_A = 2.5;
    double alpha_g = 2.2;
    double alpha_b = 3.5;
    double rho_0 = 1e-3;       ///< path loss at 1 m
    /// eta[0] correlates the RIS-BS links, eta[k] (k >= 1) the links of UE k.
    std::vector<double> eta;
    /// A blocked direct link has zero large-scale gain; its normalized channel is then zero.
    bool direct_link_blocked = true;

    void validate(int n_users) const;
};

/// Everything the closed-form moments need. Channels are expressed in normalized form:
/// physical g_k = sqrt(rho_g[k]) * (unit-power g_k), likewise for b_k and a_m.
struct ChannelStatistics {
    std::vector<double> rho_b;
    std::vector<double> rho_g;
    double rho_A = 0.0;
    std::vector<cvec> g_bar;  ///< K unit-modulus N-vectors
    std::vector<cvec> a_bar;  ///< M unit-modulus N-vectors
    std::vector<cmat> R;      ///< K correlation matrices of the UE-RIS NLoS parts
    cmat R0;                  ///< correlation of the RIS-BS NLoS parts
    FadingParams fading;

    int n_users() const { return static_cast<int>(g_bar.size()); }
    int n_elements() const { return g_bar.empty() ? 0 : static_cast<int>(g_bar.front().size()); }
    int n_antennas() const { return static_cast<int>(a_bar.size()); }
    /// Length of the cascaded vector s_k, M (N + 1).
    int cascade_length() const { return n_antennas() * (n_elements() + 1); }
    bool direct_link_active(int k) const { return rho_b.at(k) > 0.0; }
};

/// One draw of all channels.
///
/// b, g and A are physical channels (large-scale gains applied). The *_unit members are the
/// same draw at unit large-scale power; s[k] is assembled from them, so that
/// y_k = sqrt(rho_k) Z_k s_k + w_k with the gains carried by Z_k.
struct ChannelRealization {
    std::vector<cvec> b;       ///< K M-vectors
    std::vector<cvec> g;       ///< K N-vectors
    cmat A;                    ///< M x N, row m is a_m^H
    std::vector<cvec> b_unit;
    std::vector<cvec> g_unit;
    std::vector<cvec> a_unit;  ///< M N-vectors
    std::vector<cvec> s;       ///< K cascaded M(N+1)-vectors [b; a_1 .* g; ...; a_M .* g]
};

/// Direction of a path seen from the RIS, in the RIS local frame. `elevation` is the angle
/// from broadside, `azimuth` is measured in the array plane from the horizontal axis.
struct ArrayAngles {
    double azimuth = 0.0;
    double elevation = 0.0;
};

double path_loss(double distance, double alpha, double rho_0);

/// Distance between elements n1 and n2 (0-based), meters.
double element_distance(int n1, int n2, const SystemGeometry &geometry);

/// [R]_{n1,n2} = eta^(distance / wavelength).
cmat exp_correlation_matrix(double eta, const SystemGeometry &geometry);

cvec ris_steering_vector(double azimuth, double elevation, const SystemGeometry &geometry);

/// LoS vectors a_bar_m, m = 0..M-1: RIS departure steering times the BS-side phase
/// exp(j 2 pi / lambda * m * delta_0 * sin(psi)).
std::vector<cvec> bs_los_vectors(const SystemGeometry &geometry, const ArrayAngles &departure,
                                 double psi);

/// Angles of `point` as seen from the RIS.
ArrayAngles ris_angles_towards(const SystemGeometry &geometry, const Eigen::Vector3d &point);

ChannelStatistics build_statistics(const SystemGeometry &geometry, const FadingParams &fading);

/// Concatenate [b; a_1 .* g; ...; a_M .* g].
cvec cascade(const cvec &b, const std::vector<cvec> &a, const cvec &g);

/// Draws complex standard normal entries, CN(0, 1).
cvec complex_normal(Index n, Rng &rng);

/// Correlated Rician sampler. Factorizations of R_k and R_0 are computed once.
class ChannelSampler {
public:
    explicit ChannelSampler(ChannelStatistics stats);

    ChannelRealization sample(Rng &rng) const;

    const ChannelStatistics &statistics() const { return stats_; }

private:
    ChannelStatistics stats_;
    std::vector<cmat> factor_g_;
    cmat factor_a_;
};

ChannelRealization sample_realization(const ChannelStatistics &stats, Rng &rng);

} // namespace risce
