// SPDX-License-Identifier: Apache-2.0
//
// rasense: rotatable-antenna sparse-array DOA estimation via tensor decomposition
// Copyright (C) 2026 The rasense authors
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

#include "rasense/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace rasense
{
    std::string_view scheme_name(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::US_RA:
            return "US_RA";
        case Scheme::UD_RA:
            return "UD_RA";
        case Scheme::US_OA:
            return "US_OA";
        case Scheme::UD_OA:
            return "UD_OA";
        }
        return "?";
    }

    std::optional<Scheme> parse_scheme(std::string_view name)
    {
        for (Scheme s : all_schemes)
            if (scheme_name(s) == name)
                return s;
        return std::nullopt;
    }

    ArrayGeometry ExperimentParams::geometry(Scheme scheme) const
    {
        return ArrayGeometry(n_antennas, is_sparse(scheme) ? sparse_factor : 1.0, spacing_wavelengths);
    }

    RotationSchedule ExperimentParams::schedule() const { return RotationSchedule(m_rotations, theta_max); }

    GainPattern ExperimentParams::pattern() const { return GainPattern(directivity); }

    Scene ExperimentParams::scene() const
    {
        Scene s;
        for (double doa : target_doas)
            s.targets.push_back({doa, scattering, signal_power});
        s.noise_power = noise_power ? *noise_power : noise_power_for_snr(snr_db, signal_power);
        return s;
    }

    AngularGrid ExperimentParams::grid() const { return sensing_grid(schedule(), grid_resolution); }

    SimulationConfig ExperimentParams::simulation(std::uint64_t seed) const
    {
        SimulationConfig cfg;
        cfg.snapshots = snapshots;
        cfg.seed = seed;
        cfg.fresh_signals_per_rotation = fresh_signals_per_rotation;
        return cfg;
    }

    void ExperimentParams::validate() const
    {
        (void)geometry(Scheme::US_RA);
        const RotationSchedule sched = schedule();
        (void)pattern();
        validate_scene(scene(), sched);
        if (snapshots < 1)
            throw std::invalid_argument("snapshots must be >= 1");
        if (k_targets() >= n_antennas)
            throw std::invalid_argument("number of targets must be smaller than n_antennas");
        if (!std::isfinite(snr_db))
            throw std::invalid_argument("snr_db must be finite");
        (void)grid();
    }

    double match_and_rmse(std::vector<double> true_doas, std::vector<double> est_doas)
    {
        if (true_doas.size() != est_doas.size())
            throw std::invalid_argument("match_and_rmse: lists differ in length");
        if (true_doas.empty())
            return 0.0;
        std::sort(true_doas.begin(), true_doas.end());
        std::sort(est_doas.begin(), est_doas.end());
        double acc = 0.0;
        for (std::size_t i = 0; i < true_doas.size(); ++i)
        {
            const double diff = rad2deg(est_doas[i] - true_doas[i]);
            acc += diff * diff;
        }
        return std::sqrt(acc / static_cast<double>(true_doas.size()));
    }

    TrialRunner::TrialRunner(ExperimentParams params)
        : params_((params.validate(), std::move(params))), grid_(params_.grid()),
          sparse_joint_(params_.geometry(Scheme::US_RA), params_.schedule(), params_.pattern(), grid_),
          dense_joint_(params_.geometry(Scheme::UD_RA), params_.schedule(), params_.pattern(), grid_),
          sparse_music_(params_.geometry(Scheme::US_OA), grid_), dense_music_(params_.geometry(Scheme::UD_OA), grid_)
    {
    }

    TrialResult TrialRunner::run(Scheme scheme, std::uint64_t seed) const
    {
        return run_with_estimate(scheme, seed, false).first;
    }

    std::pair<TrialResult, DoaEstimate> TrialRunner::run_with_estimate(Scheme scheme, std::uint64_t seed,
                                                                       bool keep_spectra) const
    {
        const Scene scene = params_.scene();
        const SimulationConfig sim = params_.simulation(seed);
        const ArrayGeometry geometry = params_.geometry(scheme);
        const int k = params_.k_targets();

        TrialResult res;
        res.scheme = scheme;
        res.seed = seed;
        res.true_doas = scene.doas();
        std::sort(res.true_doas.begin(), res.true_doas.end());

        DoaEstimate est;
        if (uses_rotation(scheme))
        {
            const ComplexTensor3 y = synthesize(scene, geometry, params_.schedule(), params_.pattern(), sim);
            AlsOptions als = params_.als;
            als.seed = seed;
            const auto [factors, report] = cp_als(y, k, als);
            res.diagnostics.als_iterations = report.iterations;
            res.diagnostics.als_starts = report.starts;
            res.diagnostics.als_converged = report.converged;
            res.diagnostics.rank_deficient = report.rank_deficient;
            est = (is_sparse(scheme) ? sparse_joint_ : dense_joint_).estimate(factors, keep_spectra);
        }
        else
        {
            const ComplexTensor3 y = synthesize_omnidirectional(scene, geometry, params_.m_rotations, sim);
            const MusicSearch &search = is_sparse(scheme) ? sparse_music_ : dense_music_;
            est = search.estimate(sample_covariance(aggregate_snapshots(y)), k, keep_spectra);
        }

        res.diagnostics.low_confidence = est.any_low_confidence();
        res.est_doas = est.angles;
        const double rmse = match_and_rmse(res.true_doas, res.est_doas);
        res.matched_sq_err = rmse * rmse;
        return {std::move(res), std::move(est)};
    }

    TrialResult run_trial(Scheme scheme, const ExperimentParams &params, std::uint64_t seed)
    {
        return TrialRunner(params).run(scheme, seed);
    }

    std::string_view sweep_variable_name(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::snr_db:
            return "snr_db";
        case SweepVariable::sparse_factor:
            return "sparse_factor";
        case SweepVariable::directivity:
            return "directivity";
        }
        return "?";
    }

    ExperimentParams apply_sweep_value(ExperimentParams params, SweepVariable variable, double value)
    {
        switch (variable)
        {
        case SweepVariable::snr_db:
            params.snr_db = value;
            params.noise_power.reset();
            break;
        case SweepVariable::sparse_factor:
            params.sparse_factor = value;
            break;
        case SweepVariable::directivity:
            params.directivity = value;
            break;
        }
        return params;
    }

    RmseSummary summarize_squared_errors(const std::vector<double> &sq)
    {
        RmseSummary out;
        if (sq.empty())
            return out;
        const auto n = static_cast<double>(sq.size());
        double mean = 0.0;
        for (double e : sq)
            mean += e;
        mean /= n;
        out.rmse = std::sqrt(mean);
        if (sq.size() > 1 && out.rmse > 0.0)
        {
            double var = 0.0;
            for (double e : sq)
                var += (e - mean) * (e - mean);
            var /= (n - 1.0);
            out.standard_error = std::sqrt(var / n) / (2.0 * out.rmse);
        }
        return out;
    }

    namespace
    {
        struct TrialOutcome
        {
            double sq_err = 0.0;
            bool failed = false;
        };

        struct SweepPlan
        {
            std::vector<TrialRunner> runners; // one per sweep value
            std::size_t per_value = 0;        // schemes * trials
            std::size_t total = 0;
        };

        SweepPlan plan_sweep(const SweepSpec &spec)
        {
            if (spec.values.empty())
                throw std::invalid_argument("run_sweep: sweep values must not be empty");
            if (spec.trials < 1)
                throw std::invalid_argument("run_sweep: trials must be >= 1");
            if (spec.schemes.empty())
                throw std::invalid_argument("run_sweep: at least one scheme is required");
            SweepPlan plan;
            for (double v : spec.values)
                plan.runners.emplace_back(apply_sweep_value(spec.base, spec.variable, v));
            plan.per_value = spec.schemes.size() * static_cast<std::size_t>(spec.trials);
            plan.total = plan.per_value * spec.values.size();
            return plan;
        }

        TrialOutcome run_job(const SweepSpec &spec, const SweepPlan &plan, std::size_t job)
        {
            const std::size_t value_idx = job / plan.per_value;
            const std::size_t rest = job % plan.per_value;
            const std::size_t scheme_idx = rest / static_cast<std::size_t>(spec.trials);
            const std::size_t trial = rest % static_cast<std::size_t>(spec.trials);
            const TrialResult r = plan.runners[value_idx].run(spec.schemes[scheme_idx], spec.base_seed + trial);
            return {r.matched_sq_err, r.diagnostics.failed()};
        }

        std::vector<SweepRow> aggregate(const SweepSpec &spec, const SweepPlan &plan,
                                        const std::vector<TrialOutcome> &outcomes)
        {
            std::vector<SweepRow> rows;
            const auto trials = static_cast<std::size_t>(spec.trials);
            for (std::size_t v = 0; v < spec.values.size(); ++v)
            {
                const ExperimentParams &p = plan.runners[v].params();
                for (std::size_t s = 0; s < spec.schemes.size(); ++s)
                {
                    const std::size_t first = v * plan.per_value + s * trials;
                    std::vector<double> sq(trials);
                    int failures = 0;
                    for (std::size_t i = 0; i < trials; ++i)
                    {
                        sq[i] = outcomes[first + i].sq_err;
                        failures += outcomes[first + i].failed ? 1 : 0;
                    }
                    const RmseSummary sum = summarize_squared_errors(sq);
                    const Scheme scheme = spec.schemes[s];
                    rows.push_back({spec.variable, spec.values[v], scheme, sum.rmse, sum.standard_error, spec.trials,
                                    failures, p.snr_db, is_sparse(scheme) ? p.sparse_factor : 1.0,
                                    uses_rotation(scheme) ? p.directivity : 0.0});
                }
            }
            return rows;
        }
    } // namespace

    std::vector<SweepRow> run_sweep(const SweepSpec &spec)
    {
        const SweepPlan plan = plan_sweep(spec);
        std::vector<TrialOutcome> outcomes(plan.total);
        const auto total = static_cast<long long>(plan.total);
#pragma omp parallel for schedule(dynamic, 4)
        for (long long job = 0; job < total; ++job)
            outcomes[static_cast<std::size_t>(job)] = run_job(spec, plan, static_cast<std::size_t>(job));
        return aggregate(spec, plan, outcomes);
    }

    std::vector<SweepRow> run_sweep_serial(const SweepSpec &spec)
    {
        const SweepPlan plan = plan_sweep(spec);
        std::vector<TrialOutcome> outcomes(plan.total);
        for (std::size_t job = 0; job < plan.total; ++job)
            outcomes[job] = run_job(spec, plan, job);
        return aggregate(spec, plan, outcomes);
    }

    std::vector<SvcRow> svc_curves(double theta_k, const ExperimentParams &params, const AngularGrid &grid)
    {
        const RotationSchedule sched = params.schedule();
        if (!(std::abs(theta_k) <= sched.theta_max()))
            throw std::invalid_argument("svc_curves: |theta_k| must not exceed theta_max");
        const ArrayGeometry geometry = params.geometry(Scheme::US_RA);
        const GainPattern pattern = params.pattern();
        std::vector<SvcRow> rows;
        rows.reserve(grid.size());
        for (double theta : grid.points())
        {
            const double a = array_svc(theta_k, theta, geometry);
            const double b = gain_svc(theta_k, theta, sched, pattern);
            rows.push_back({theta, a, b, a * b});
        }
        return rows;
    }

    std::string format_number(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", v);
        return buf;
    }

    void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows)
    {
        os << "sweep_variable,value,scheme,rmse_deg,trials,failures,rmse_se_deg,snr_db,sparse_factor,directivity\n";
        for (const auto &r : rows)
            os << sweep_variable_name(r.variable) << ',' << format_number(r.value) << ',' << scheme_name(r.scheme)
               << ',' << format_number(r.rmse_deg) << ',' << r.trials << ',' << r.failures << ','
               << format_number(r.rmse_se_deg) << ',' << format_number(r.snr_db) << ','
               << format_number(r.sparse_factor) << ',' << format_number(r.directivity) << '\n';
    }

    void write_svc_csv(std::ostream &os, const std::vector<SvcRow> &rows)
    {
        os << "theta_deg,array_svc,gain_svc,joint_svc\n";
        for (const auto &r : rows)
            os << format_number(rad2deg(r.theta)) << ',' << format_number(r.array) << ',' << format_number(r.gain)
               << ',' << format_number(r.joint) << '\n';
    }

} // namespace rasense
