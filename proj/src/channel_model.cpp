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

#include "risce/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace risce {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

const Eigen::Vector3d ris_broadside{1.0, 0.0, 0.0};
const Eigen::Vector3d ris_horizontal{0.0, 1.0, 0.0};
const Eigen::Vector3d ris_vertical{0.0, 0.0, 1.0};

double node_distance(const Eigen::Vector3d &a, const Eigen::Vector3d &b, const char *what)
{
    const double d = (a - b).norm();
    if (!(d > 0.0))
        throw DomainError(std::string("coincident node positions: ") + what);
    return d;
}

} // namespace

void SystemGeometry::validate() const
{
    if (n_x < 1 || n_y < 1)
        throw DomainError("RIS grid dimensions must be >= 1");
    if (m_antennas < 1)
        throw DomainError("BS antenna count must be >= 1");
    if (!(delta_x > 0.0) || !(delta_y > 0.0) || !(delta_0 > 0.0))
        throw DomainError("element spacings must be > 0");
    if (!(wavelength > 0.0))
        throw DomainError("wavelength must be > 0");
    if (ue_positions.empty())
        throw DomainError("at least one UE is required");
}

Eigen::Vector2d SystemGeometry::element_position(int n) const
{
    if (n < 0 || n >= n_elements())
        throw DomainError("element index " + std::to_string(n) + " out of range");
    return {(n % n_x) * delta_x, (n / n_x) * delta_y};
}

void FadingParams::validate(int n_users) const
{
    if (!(kappa_A >= 0.0) || !(kappa_g >= 0.0))
        throw DomainError("Rician factors must be >= 0");
    if (!(rho_0 > 0.0))
        throw DomainError("reference path loss must be > 0");
    if (static_cast<int>(eta.size()) != n_users + 1)
        throw DomainError("eta needs K+1 = " + std::to_string(n_users + 1) + " entries, got " +
                          std::to_string(eta.size()));
    for (double e : eta)
        if (!(e >= 0.0 && e <= 1.0))
            throw DomainError("correlation coefficient eta = " + std::to_string(e) +
                              " outside [0, 1]");
}

double path_loss(double distance, double alpha, double rho_0)
{
    if (!(distance > 0.0))
        throw DomainError("path_loss: distance must be > 0");
    if (!(rho_0 > 0.0))
        throw DomainError("path_loss: rho_0 must be > 0");
    return rho_0 * std::pow(distance, -alpha);
}

double element_distance(int n1, int n2, const SystemGeometry &geometry)
{
    return (geometry.element_position(n1) - geometry.element_position(n2)).norm();
}

cmat exp_correlation_matrix(double eta, const SystemGeometry &geometry)
{
    if (!(eta >= 0.0 && eta <= 1.0))
        throw DomainError("exp_correlation_matrix: eta = " + std::to_string(eta) +
                          " outside [0, 1]");
    const int n = geometry.n_elements();
    cmat R(n, n);
    for (int i = 0; i < n; ++i) {
        R(i, i) = 1.0;
        for (int j = i + 1; j < n; ++j) {
            const double v = std::pow(eta, element_distance(i, j, geometry) / geometry.wavelength);
            R(i, j) = v;
            R(j, i) = v;
        }
    }
    return R;
}

cvec ris_steering_vector(double azimuth, double elevation, const SystemGeometry &geometry)
{
    const int n = geometry.n_elements();
    const double k0 = two_pi / geometry.wavelength;
    const double ux = std::sin(elevation) * std::cos(azimuth);
    const double uy = std::sin(elevation) * std::sin(azimuth);
    cvec v(n);
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d p = geometry.element_position(i);
        v(i) = std::polar(1.0, k0 * (p.x() * ux + p.y() * uy));
    }
    return v;
}

std::vector<cvec> bs_los_vectors(const SystemGeometry &geometry, const ArrayAngles &departure,
                                 double psi)
{
    const cvec ris = ris_steering_vector(departure.azimuth, departure.elevation, geometry);
    const double step = two_pi / geometry.wavelength * geometry.delta_0 * std::sin(psi);
    std::vector<cvec> out;
    out.reserve(geometry.m_antennas);
    for (int m = 0; m < geometry.m_antennas; ++m)
        out.push_back(std::polar(1.0, m * step) * ris);
    return out;
}

ArrayAngles ris_angles_towards(const SystemGeometry &geometry, const Eigen::Vector3d &point)
{
    const Eigen::Vector3d d = point - geometry.ris_position;
    const double len = d.norm();
    if (!(len > 0.0))
        throw DomainError("direction undefined: point coincides with the RIS");
    const Eigen::Vector3d u = d / len;
    ArrayAngles a;
    a.elevation = std::acos(std::clamp(u.dot(ris_broadside), -1.0, 1.0));
    a.azimuth = std::atan2(u.dot(ris_vertical), u.dot(ris_horizontal));
    return a;
}

ChannelStatistics build_statistics(const SystemGeometry &geometry, const FadingParams &fading)
{
    geometry.validate();
    fading.validate(geometry.n_users());

    ChannelStatistics st;
    st.fading = fading;
    const double d_ris_bs = node_distance(geometry.ris_position, geometry.bs_position, "RIS-BS");
    st.rho_A = path_loss(d_ris_bs, fading.alpha_A, fading.rho_0);

    for (const auto &ue : geometry.ue_positions) {
        const double d_g = node_distance(ue, geometry.ris_position, "UE-RIS");
        const double d_b = node_distance(ue, geometry.bs_position, "UE-BS");
        st.rho_g.push_back(path_loss(d_g, fading.alpha_g, fading.rho_0));
        st.rho_b.push_back(fading.direct_link_blocked ? 0.0
                                                      : path_loss(d_b, fading.alpha_b, fading.rho_0));
        const ArrayAngles in = ris_angles_towards(geometry, ue);
        st.g_bar.push_back(ris_steering_vector(in.azimuth, in.elevation, geometry));
    }

    const ArrayAngles out = ris_angles_towards(geometry, geometry.bs_position);
    st.a_bar = bs_los_vectors(geometry, out, geometry.bs_arrival_angle);

    st.R0 = exp_correlation_matrix(fading.eta[0], geometry);
    for (int k = 0; k < geometry.n_users(); ++k)
        st.R.push_back(exp_correlation_matrix(fading.eta[k + 1], geometry));
    return st;
}

cvec cascade(const cvec &b, const std::vector<cvec> &a, const cvec &g)
{
    const Index m = static_cast<Index>(a.size());
    const Index n = g.size();
    cvec s(m * (n + 1));
    s.head(m) = b;
    for (Index i = 0; i < m; ++i)
        s.segment(m + i * n, n) = a[i].cwiseProduct(g);
    return s;
}

cvec complex_normal(Index n, Rng &rng)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    cvec z(n);
    for (Index i = 0; i < n; ++i) {
        const double re = nd(rng);
        const double im = nd(rng);
        z(i) = cplx(re, im);
    }
    return z;
}

ChannelSampler::ChannelSampler(ChannelStatistics stats) : stats_(std::move(stats))
{
    for (const auto &R : stats_.R)
        factor_g_.push_back(linalg::psd_factor(R));
    factor_a_ = linalg::psd_factor(stats_.R0);
}

ChannelRealization ChannelSampler::sample(Rng &rng) const
{
    const int K = stats_.n_users();
    const int M = stats_.n_antennas();
    const int N = stats_.n_elements();
    const FadingParams &f = stats_.fading;

    const double los_g = std::sqrt(f.kappa_g / (1.0 + f.kappa_g));
    const double nlos_g = std::sqrt(1.0 / (1.0 + f.kappa_g));
    const double los_a = std::sqrt(f.kappa_A / (1.0 + f.kappa_A));
    const double nlos_a = std::sqrt(1.0 / (1.0 + f.kappa_A));

    ChannelRealization out;
    // Fixed draw order: direct links, UE-RIS links, RIS-BS links.
    for (int k = 0; k < K; ++k) {
        if (stats_.direct_link_active(k))
            out.b_unit.push_back(complex_normal(M, rng));
        else
            out.b_unit.push_back(cvec::Zero(M));
        out.b.push_back(std::sqrt(stats_.rho_b[k]) * out.b_unit.back());
    }
    for (int k = 0; k < K; ++k) {
        out.g_unit.push_back(los_g * stats_.g_bar[k] + nlos_g * (factor_g_[k] * complex_normal(N, rng)));
        out.g.push_back(std::sqrt(stats_.rho_g[k]) * out.g_unit.back());
    }
    out.A.resize(M, N);
    const double scale_A = std::sqrt(stats_.rho_A);
    for (int m = 0; m < M; ++m) {
        out.a_unit.push_back(los_a * stats_.a_bar[m] + nlos_a * (factor_a_ * complex_normal(N, rng)));
        out.A.row(m) = scale_A * out.a_unit.back().adjoint();
    }
    for (int k = 0; k < K; ++k)
        out.s.push_back(cascade(out.b_unit[k], out.a_unit, out.g_unit[k]));
    return out;
}

ChannelRealization sample_realization(const ChannelStatistics &stats, Rng &rng)
{
    return ChannelSampler(stats).sample(rng);
}

} // namespace risce
