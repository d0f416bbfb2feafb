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

// Serial reference kernel against the OpenMP kernel on the same sweep.
// Usage: bench_sweep [trials] [workers] [desk|reference]

#include "risce/config.hpp"
#include "risce/report.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

int main(int argc, char **argv)
{
    using namespace risce;
    const int trials = argc > 1 ? std::atoi(argv[1]) : 2000;
    const int workers = argc > 2 ? std::atoi(argv[2]) : omp_get_num_procs();
    const std::string which = argc > 3 ? argv[3] : "desk";

    RunConfig rc = which == "reference" ? default_run_config() : desk_run_config();
    rc.sweep.n_trials = trials;

    auto time = [&](Execution exec, int w, std::string &csv) {
        const auto t0 = std::chrono::steady_clock::now();
        const MseReport r = run_sweep(rc.sweep, exec, w);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream o;
        write_sweep_csv(o, r, {});
        csv = o.str();
        return s;
    };

    std::string serial_csv, parallel_csv;
    const double ts = time(Execution::Serial, 1, serial_csv);
    const double tp = time(Execution::Parallel, workers, parallel_csv);
    const double cells = static_cast<double>(trials) * static_cast<double>(rc.sweep.snr_db.size());

    std::printf("scenario        %s (M=%d, N=%d, K=%d)\n", which.c_str(),
                rc.sweep.scenario.geometry.m_antennas, rc.sweep.scenario.geometry.n_elements(),
                rc.sweep.scenario.geometry.n_users());
    std::printf("trials x snr    %d x %zu\n", trials, rc.sweep.snr_db.size());
    std::printf("serial          %8.3f s  %10.0f trials/s\n", ts, cells / ts);
    std::printf("parallel (%3d)  %8.3f s  %10.0f trials/s  speedup %.2f\n", workers, tp, cells / tp,
                ts / tp);
    std::printf("outputs         %s\n", serial_csv == parallel_csv ? "identical" : "DIFFER");
    return serial_csv == parallel_csv ? 0 : 1;
}
