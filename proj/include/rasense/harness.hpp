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

#ifndef RASENSE_HARNESS_HPP
#define RASENSE_HARNESS_HPP

#include "rasense/cp_als.hpp"
#include "rasense/doa.hpp"
#include "rasense/music.hpp"
#include "rasense/scene.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rasense
{
    enum class Scheme
    {
        US_RA, // tensor pipeline, sparse array of rotatable antennas
        UD_RA, // tensor pipeline, dense array (L = 1)
        US_OA, // MUSIC, sparse array of omnidirectional antennas
        UD_OA, // MUSIC, dense array
    };

    inline constexpr Scheme all_schemes[] = {Scheme::US_RA, Scheme::UD_RA, Scheme::US_OA, Scheme::UD_OA};

    std::string_view scheme_name(Scheme scheme);
    std::optional<Scheme> parse_scheme(std::string_view name);
    constexpr bool uses_rotation(Scheme s) { return s == Scheme::US_RA || s == Scheme::UD_RA; }
    constexpr bool is_sparse(Scheme s) { return s == Scheme::US_RA || s == Scheme::US_OA; }

    // Everything one Monte Carlo trial needs besides its seed. Angles in radians.
    struct ExperimentParams
    {
        int n_antennas = 8;
        double sparse_factor = 2.0;
        double spacing_wavelengths = 0.5;
        int m_rotations = 7;
        double theta_max = deg2rad(60.0);
        double directivity = 3.0;
        std::vector<double> target_doas{deg2rad(-20.0), deg2rad(15.0), deg2rad(45.0)};
        cdouble scattering{1.0, 0.0};
        double signal_power = 1.0;
        double snr_db = 10.0;
        // When set, overrides the SNR-derived noise power (0 gives noise-free data).
        std::optional<double> noise_power;
        int snapshots = 20;
        bool fresh_signals_per_rotation = false;
        double grid_resolution = deg2rad(0.05);
        // Restart from a fresh random start when ALS stalls at max_iter (swamps).
        AlsOptions als{.restarts = 3};

        int k_targets() const { return static_cast<int>(target_doas.size()); }
        ArrayGeometry geometry(Scheme scheme) const;
        RotationSchedule schedule() const;
        GainPattern pattern() const;
        Scene scene() const;
        AngularGrid grid() const;
        SimulationConfig simulation(std::uint64_t seed) const;

        // Throws std::invalid_argument when any component is invalid.
        void validate() const;
    };

    struct TrialDiagnostics
    {
        int als_iterations = 0;
        int als_starts = 0;
        bool als_converged = true;
        bool rank_deficient = false;
        bool low_confidence = false;

        bool failed() const { return !als_converged || rank_deficient || low_confidence; }
        bool operator==(const TrialDiagnostics &) const = default;
    };

    struct TrialResult
    {
        Scheme scheme;
        std::vector<double> true_doas; // radians, ascending
        std::vector<double> est_doas;  // radians, ascending
        double matched_sq_err = 0.0;   // degrees^2, mean over targets after optimal pairing
        std::uint64_t seed = 0;
        TrialDiagnostics diagnostics;

        bool operator==(const TrialResult &) const = default;
    };

    // Sorted pairing RMSE in degrees. Inputs in radians, any order.
    double match_and_rmse(std::vector<double> true_doas, std::vector<double> est_doas);

    // Pre-built search dictionaries for one parameter set; const methods are thread-safe.
    class TrialRunner
    {
    public:
        explicit TrialRunner(ExperimentParams params);

        const ExperimentParams &params() const { return params_; }
        TrialResult run(Scheme scheme, std::uint64_t seed) const;
        // Same trial, also returning the estimator output (with spectra when requested).
        std::pair<TrialResult, DoaEstimate> run_with_estimate(Scheme scheme, std::uint64_t seed,
                                                              bool keep_spectra) const;

    private:
        ExperimentParams params_;
        AngularGrid grid_;
        JointSearch sparse_joint_, dense_joint_;
        MusicSearch sparse_music_, dense_music_;
    };

    TrialResult run_trial(Scheme scheme, const ExperimentParams &params, std::uint64_t seed);

    enum class SweepVariable
    {
        snr_db,
        sparse_factor,
        directivity,
    };

    std::string_view sweep_variable_name(SweepVariable v);
    ExperimentParams apply_sweep_value(ExperimentParams params, SweepVariable variable, double value);

    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::snr_db;
        std::vector<double> values;
        int trials = 200;
        ExperimentParams base;
        std::vector<Scheme> schemes{std::begin(all_schemes), std::end(all_schemes)};
        // Trial i of every sweep point uses seed base_seed + i.
        std::uint64_t base_seed = 0;
    };

    struct SweepRow
    {
        SweepVariable variable;
        double value;
        Scheme scheme;
        double rmse_deg;
        double rmse_se_deg; // delta-method Monte Carlo standard error of rmse_deg
        int trials;
        int failures;
        double snr_db;
        double sparse_factor;
        double directivity;

        bool operator==(const SweepRow &) const = default;
    };

    struct RmseSummary
    {
        double rmse = 0.0;
        double standard_error = 0.0;
    };

    // Pooled RMSE over squared errors and its Monte Carlo standard error.
    RmseSummary summarize_squared_errors(const std::vector<double> &sq_errors);

    // Trials run in parallel (OpenMP); aggregation happens after all trials, in trial order.
    std::vector<SweepRow> run_sweep(const SweepSpec &spec);
    // Serial reference for run_sweep.
    std::vector<SweepRow> run_sweep_serial(const SweepSpec &spec);

    struct SvcRow
    {
        double theta;
        double array;
        double gain;
        double joint;
    };

    // Array, gain and joint correlation against theta_k over the grid, using the sparse geometry.
    std::vector<SvcRow> svc_curves(double theta_k, const ExperimentParams &params, const AngularGrid &grid);

    // CSV writers; column sets are fixed and documented in the README.
    void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows);
    void write_svc_csv(std::ostream &os, const std::vector<SvcRow> &rows);

    std::string format_number(double v);

} // namespace rasense

#endif
