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

#include "risce/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace risce {

namespace {

double from_db(double db) { return std::pow(10.0, db / 10.0); }

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double to_double(const std::string &v)
{
    if (v.empty())
        throw FieldError("expected a number, got an empty value");
    char *end = nullptr;
    errno = 0;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x))
        throw FieldError("expected a finite number, got '" + v + "'");
    return x;
}

long long to_integer(const std::string &v, long long lo, long long hi)
{
    char *end = nullptr;
    errno = 0;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
        throw FieldError("expected an integer, got '" + v + "'");
    if (x < lo || x > hi)
        throw FieldError("value " + v + " outside [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    return x;
}

std::uint64_t to_seed(const std::string &v)
{
    char *end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 0);
    if (v.empty() || v[0] == '-' || end != v.c_str() + v.size() || errno == ERANGE)
        throw FieldError("expected an unsigned 64-bit integer, got '" + v + "'");
    return x;
}

std::vector<double> to_doubles(const std::string &v)
{
    std::vector<double> out;
    for (const auto &p : split(v, ','))
        out.push_back(to_double(p));
    return out;
}

Eigen::Vector3d to_point(const std::string &v)
{
    std::vector<double> c;
    std::istringstream in(v);
    std::string tok;
    while (in >> tok) {
        for (const auto &p : split(tok, ','))
            if (!p.empty())
                c.push_back(to_double(p));
    }
    if (c.size() != 3)
        throw FieldError("expected three coordinates x y z, got '" + v + "'");
    return {c[0], c[1], c[2]};
}

bool to_bool(const std::string &v)
{
    if (v == "true" || v == "yes" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "0")
        return false;
    throw FieldError("expected true or false, got '" + v + "'");
}

std::vector<int> to_group_list(const std::string &v)
{
    std::vector<int> out;
    for (const auto &p : split(v, ','))
        out.push_back(static_cast<int>(to_integer(p, 1, 1 << 20)));
    if (out.empty())
        throw FieldError("expected at least one group count");
    return out;
}

std::vector<EstimatorKind> to_estimators(const std::string &v)
{
    std::vector<EstimatorKind> out;
    for (const auto &p : split(v, ',')) {
        if (p.empty())
            continue;
        const auto kind = parse_estimator(p);
        if (!kind)
            throw FieldError("unknown estimator '" + p +
                             "' (LS, LMMSE, GroupingLS, GroupingLMMSE, CorrelatedGroupingLMMSE)");
        out.push_back(*kind);
    }
    return out;
}

using Setter = std::function<void(RunConfig &, const std::string &)>;

const std::map<std::string, std::map<std::string, Setter>> &schema()
{
    static const std::map<std::string, std::map<std::string, Setter>> s = {
        {"scenario",
         {
             {"bs_antennas", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.m_antennas = static_cast<int>(to_integer(v, 1, 4096));
              }},
             {"ris_nx", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.n_x = static_cast<int>(to_integer(v, 1, 4096));
              }},
             {"ris_ny", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.n_y = static_cast<int>(to_integer(v, 1, 4096));
              }},
             {"bs_position", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.bs_position = to_point(v);
              }},
             {"ris_position", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.ris_position = to_point(v);
              }},
             {"ue_positions", [](RunConfig &c, const std::string &v) {
                  std::vector<Eigen::Vector3d> ues;
                  for (const auto &p : split(v, ';'))
                      if (!p.empty())
                          ues.push_back(to_point(p));
                  if (ues.empty())
                      throw FieldError("expected at least one UE position");
                  c.sweep.scenario.geometry.ue_positions = std::move(ues);
              }},
             {"wavelength", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.wavelength = to_double(v);
              }},
             {"element_spacing", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.delta_x = c.sweep.scenario.geometry.delta_y = to_double(v);
              }},
             {"element_spacing_x", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.delta_x = to_double(v);
              }},
             {"element_spacing_y", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.delta_y = to_double(v);
              }},
             {"antenna_spacing", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.delta_0 = to_double(v);
              }},
             {"bs_arrival_angle_deg", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.geometry.bs_arrival_angle = to_double(v) * std::numbers::pi / 180.0;
              }},
             {"kappa_A_db", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.fading.kappa_A = from_db(to_double(v));
              }},
             {"kappa_g_db", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.fading.kappa_g = from_db(to_double(v));
              }},
             {"alpha_A", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.fading.alpha_A = to_double(v);
              }},
             {"alpha_g", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.fading.alpha_g = to_double(v);
              }},
             {"alpha_b", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.fading.alpha_b = to_double(v);
              }},
             {"rho0_db", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.fading.rho_0 = from_db(to_double(v));
              }},
             {"noise_dbm", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.sigma_w2 = from_db(to_double(v) - 30.0);
              }},
             {"eta", [](RunConfig &c, const std::string &v) {
                  c.sweep.scenario.fading.eta = to_doubles(v);
              }},
             {"direct_link", [](RunConfig &c, const std::string &v) {
                  if (v == "blocked")
                      c.sweep.scenario.fading.direct_link_blocked = true;
                  else if (v == "active")
                      c.sweep.scenario.fading.direct_link_blocked = false;
                  else
                      throw FieldError("expected 'blocked' or 'active', got '" + v + "'");
              }},
             {"grouping", [](RunConfig &c, const std::string &v) {
                  if (v == "tiles")
                      c.sweep.scenario.layout = GroupLayout::GridTiles;
                  else if (v == "contiguous")
                      c.sweep.scenario.layout = GroupLayout::Contiguous;
                  else
                      throw FieldError("expected 'tiles' or 'contiguous', got '" + v + "'");
              }},
         }},
        {"sweep",
         {
             {"estimators", [](RunConfig &c, const std::string &v) {
                  c.sweep.estimators = to_estimators(v);
              }},
             {"snr_min_db", [](RunConfig &c, const std::string &v) { c.snr_min_db = to_double(v); }},
             {"snr_max_db", [](RunConfig &c, const std::string &v) { c.snr_max_db = to_double(v); }},
             {"snr_step_db", [](RunConfig &c, const std::string &v) { c.snr_step_db = to_double(v); }},
             {"snr_axis", [](RunConfig &c, const std::string &v) {
                  if (v == "gamma")
                      c.sweep.axis = SnrAxis::Gamma;
                  else if (v == "rho")
                      c.sweep.axis = SnrAxis::Rho;
                  else
                      throw FieldError("expected 'gamma' or 'rho', got '" + v + "'");
              }},
             {"trials", [](RunConfig &c, const std::string &v) {
                  c.sweep.n_trials = static_cast<int>(to_integer(v, 1, 100000000));
              }},
             {"n_groups", [](RunConfig &c, const std::string &v) {
                  c.sweep.n_groups = to_group_list(v);
              }},
             {"seed", [](RunConfig &c, const std::string &v) { c.sweep.base_seed = to_seed(v); }},
             {"normalized", [](RunConfig &c, const std::string &v) {
                  c.sweep.normalized = to_bool(v);
              }},
         }},
        {"output",
         {
             {"path", [](RunConfig &c, const std::string &v) { c.out_path = v.empty() ? "-" : v; }},
             {"tau_c", [](RunConfig &c, const std::string &v) {
                  c.tau_c = static_cast<int>(to_integer(v, 0, 100000000));
              }},
         }},
    };
    return s;
}

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

Scenario reference_scenario()
{
    Scenario s;
    s.geometry.m_antennas = 8;
    s.geometry.n_x = 8;
    s.geometry.n_y = 8;
    s.geometry.ue_positions = {{-8.0, 44.0, 5.0}, {-6.0, 42.0, 5.0}, {6.0, 42.0, 5.0}, {8.0, 44.0, 5.0}};
    s.fading.eta.assign(5, 0.99);
    s.sigma_w2 = from_db(-89.0 - 30.0);
    return s;
}

Scenario desk_scenario()
{
    Scenario s = reference_scenario();
    s.geometry.m_antennas = 4;
    s.geometry.n_x = 4;
    s.geometry.n_y = 4;
    s.geometry.ue_positions = {{-8.0, 44.0, 5.0}, {8.0, 44.0, 5.0}};
    s.fading.eta.assign(3, 0.99);
    return s;
}

void RunConfig::apply_snr_grid() { sweep.snr_db = snr_grid(snr_min_db, snr_max_db, snr_step_db); }

RunConfig default_run_config()
{
    RunConfig c;
    c.sweep.scenario = reference_scenario();
    c.sweep.n_groups = {16};
    c.sweep.n_trials = 1000;
    c.apply_snr_grid();
    return c;
}

RunConfig desk_run_config()
{
    RunConfig c;
    c.sweep.scenario = desk_scenario();
    c.sweep.n_groups = {4};
    c.sweep.n_trials = 5000;
    c.apply_snr_grid();
    return c;
}

std::vector<double> snr_grid(double min_db, double max_db, double step_db)
{
    if (!std::isfinite(min_db) || !std::isfinite(max_db) || !std::isfinite(step_db))
        throw ConfigError("SNR range must be finite");
    if (max_db < min_db)
        throw ConfigError("SNR range: max " + fmt(max_db) + " dB < min " + fmt(min_db) + " dB");
    if (max_db == min_db)
        return {min_db};
    if (!(step_db > 0.0))
        throw ConfigError("SNR step must be > 0 dB");
    const auto n = static_cast<long>(std::floor((max_db - min_db) / step_db + 1e-9));
    if (n > 100000)
        throw ConfigError("SNR range has too many points");
    std::vector<double> out;
    for (long i = 0; i <= n; ++i)
        out.push_back(min_db + static_cast<double>(i) * step_db);
    return out;
}

RunConfig parse_run_config(std::istream &in, const std::string &source_name, RunConfig base)
{
    const int users_before = base.sweep.scenario.geometry.n_users();
    bool eta_set = false;
    std::string section;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string &msg) {
        throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';')
            continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                fail("unterminated section header '" + t + "'");
            section = trim(t.substr(1, t.size() - 2));
            if (!schema().count(section))
                fail("unknown section [" + section + "] (expected scenario, sweep or output)");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            fail("expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (const auto hash = value.find(" #"); hash != std::string::npos)
            value = trim(value.substr(0, hash));
        if (section.empty())
            fail("key '" + key + "' appears before any section header");
        const auto &keys = schema().at(section);
        const auto it = keys.find(key);
        if (it == keys.end())
            fail("unknown key '" + key + "' in section [" + section + "]");
        try {
            it->second(base, value);
        } catch (const FieldError &e) {
            fail("field '" + key + "': " + e.what());
        }
        if (key == "eta")
            eta_set = true;
    }

    // A single eta applies to every link; a stale default follows a change of UE count.
    auto &eta = base.sweep.scenario.fading.eta;
    const int K = base.sweep.scenario.geometry.n_users();
    if (eta.size() == 1 || (!eta_set && K != users_before && !eta.empty()))
        eta.assign(static_cast<std::size_t>(K) + 1, eta.front());
    base.apply_snr_grid();
    return base;
}

RunConfig load_run_config(const std::string &path, RunConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    RunConfig c = parse_run_config(in, path, std::move(base));
    c.scenario_path = path;
    return c;
}

std::string canonical_text(const RunConfig &c)
{
    const Scenario &s = c.sweep.scenario;
    const SystemGeometry &g = s.geometry;
    const FadingParams &f = s.fading;
    std::ostringstream o;
    auto pt = [&](const Eigen::Vector3d &p) { return fmt(p.x()) + " " + fmt(p.y()) + " " + fmt(p.z()); };
    o << "bs_antennas=" << g.m_antennas << "\nris=" << g.n_x << "x" << g.n_y
      << "\nbs_position=" << pt(g.bs_position) << "\nris_position=" << pt(g.ris_position)
      << "\nue_positions=";
    for (const auto &u : g.ue_positions)
        o << pt(u) << ";";
    o << "\nwavelength=" << fmt(g.wavelength) << "\nspacing=" << fmt(g.delta_x) << " "
      << fmt(g.delta_y) << " " << fmt(g.delta_0) << "\npsi=" << fmt(g.bs_arrival_angle)
      << "\nkappa=" << fmt(f.kappa_A) << " " << fmt(f.kappa_g) << "\nalpha=" << fmt(f.alpha_A)
      << " " << fmt(f.alpha_g) << " " << fmt(f.alpha_b) << "\nrho0=" << fmt(f.rho_0) << "\neta=";
    for (double e : f.eta)
        o << fmt(e) << ",";
    o << "\ndirect_link_blocked=" << f.direct_link_blocked << "\nsigma_w2=" << fmt(s.sigma_w2)
      << "\nlayout=" << static_cast<int>(s.layout) << "\nestimators=";
    for (auto k : c.sweep.estimators)
        o << to_string(k) << ",";
    o << "\nsnr_db=";
    for (double x : c.sweep.snr_db)
        o << fmt(x) << ",";
    o << "\naxis=" << static_cast<int>(c.sweep.axis) << "\ntrials=" << c.sweep.n_trials
      << "\nn_groups=";
    for (int n : c.sweep.n_groups)
        o << n << ",";
    o << "\nseed=" << c.sweep.base_seed << "\nnormalized=" << c.sweep.normalized
      << "\ntau_c=" << c.tau_c << "\n";
    return o.str();
}

std::string config_hash(const RunConfig &config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_text(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace risce
