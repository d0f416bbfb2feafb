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

#include "risce/estimator_bank.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace risce;
using namespace risce::testing;

namespace {

cmat ideal_prior(int k, const Grouping &g)
{
    return cov_uu(cov_ss(with_ideal_correlation(desk_stats(), g), k), desk_stats().n_antennas(), g);
}

} // namespace

TEST_CASE("bank closed forms and designs agree with the moment-based reference")
{
    for (int ng : {4, 16}) {
        const Grouping g = scenario_grouping(desk_scenario(), ng);
        for (int k = 0; k < 2; ++k) {
            std::vector<EstimatorKind> kinds;
            for (EstimatorKind kind : all_estimators)
                if (ng == 16 || uses_grouped_training(kind))
                    kinds.push_back(kind);
            const EstimatorBank bank(desk_stats(), k, desk_training(ng, 1.0), kinds);
            CHECK(bank.prior_trace() == doctest::Approx(cov_ss(desk_stats(), k).trace().real()));
            for (double snr : {-10.0, 10.0, 40.0}) {
                const double rho = desk_rho(snr);
                const MomentSet m = build_moments(desk_stats(), k, desk_training(ng, rho));
                const cmat ideal = ideal_prior(k, g);
                for (EstimatorKind kind : kinds) {
                    CAPTURE(ng);
                    CAPTURE(snr);
                    CAPTURE(to_string(kind));
                    const EstimatorBank::Evaluation ev = bank.evaluate(kind, rho, true);
                    const AffineEstimator ref = design_estimator(kind, m, ideal);
                    CHECK(rel_diff(ev.design.gain, ref.gain) < 1e-7);
                    CHECK((ev.design.offset - ref.offset).norm() <= 1e-7 * std::max(1.0, ref.offset.norm()));
                    CHECK(rel_diff(ev.mse, affine_error(ref, m).mse()) < 1e-8);
                    const double floor = estimator_floor(kind, m, ideal);
                    CHECK(std::abs(bank.floor(kind) / bank.prior_trace() - floor) < 1e-9 + 1e-8 * floor);
                    CHECK(bank.evaluate(kind, rho, false).design.gain.size() == 0);
                }
            }
        }
    }
}

TEST_CASE("bank rejects unprepared kinds and nonpositive power")
{
    const EstimatorBank bank(desk_stats(), 0, desk_training(4, 1.0), {EstimatorKind::LMMSE});
    CHECK_THROWS_AS(bank.evaluate(EstimatorKind::LS, 1.0, false), std::logic_error);
    CHECK_THROWS_AS(bank.evaluate(EstimatorKind::LMMSE, 0.0, false), DomainError);
    CHECK(bank.error(EstimatorKind::LMMSE).empty());

    // Ungrouped least squares cannot be formed from grouped training.
    const EstimatorBank grouped(desk_stats(), 0, desk_training(4, 1.0), {EstimatorKind::LS});
    CHECK(grouped.error(EstimatorKind::LS).find("rank-deficient") != std::string::npos);
    CHECK_THROWS_AS(grouped.evaluate(EstimatorKind::LS, 1.0, false), NumericalError);
}
