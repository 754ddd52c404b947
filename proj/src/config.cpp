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

#include "rasense/config.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace rasense
{
    namespace
    {
        using json = nlohmann::json;

        std::string join(const std::string &prefix, const std::string &key)
        {
            return prefix.empty() ? key : prefix + "." + key;
        }

        void reject_unknown(const json &obj, const std::string &prefix, std::initializer_list<std::string_view> allowed)
        {
            for (const auto &item : obj.items())
            {
                bool known = false;
                for (auto a : allowed)
                    known |= item.key() == a;
                if (!known)
                    throw ConfigError(join(prefix, item.key()), "unknown key");
            }
        }

        const json *section(const json &root, const std::string &name)
        {
            auto it = root.find(name);
            if (it == root.end())
                return nullptr;
            if (!it->is_object())
                throw ConfigError(name, "expected a section (object)");
            return &*it;
        }

        std::optional<double> number(const json *obj, const std::string &prefix, const std::string &key)
        {
            if (!obj)
                return std::nullopt;
            auto it = obj->find(key);
            if (it == obj->end() || it->is_null())
                return std::nullopt;
            if (!it->is_number())
                throw ConfigError(join(prefix, key), "expected a number");
            const double v = it->get<double>();
            if (!std::isfinite(v))
                throw ConfigError(join(prefix, key), "must be finite");
            return v;
        }

        std::optional<long long> integer(const json *obj, const std::string &prefix, const std::string &key)
        {
            if (!obj)
                return std::nullopt;
            auto it = obj->find(key);
            if (it == obj->end() || it->is_null())
                return std::nullopt;
            if (!it->is_number_integer())
                throw ConfigError(join(prefix, key), "expected an integer");
            return it->get<long long>();
        }

        std::optional<bool> boolean(const json *obj, const std::string &prefix, const std::string &key)
        {
            if (!obj)
                return std::nullopt;
            auto it = obj->find(key);
            if (it == obj->end() || it->is_null())
                return std::nullopt;
            if (!it->is_boolean())
                throw ConfigError(join(prefix, key), "expected true or false");
            return it->get<bool>();
        }

        std::optional<std::string> string(const json *obj, const std::string &prefix, const std::string &key)
        {
            if (!obj)
                return std::nullopt;
            auto it = obj->find(key);
            if (it == obj->end() || it->is_null())
                return std::nullopt;
            if (!it->is_string())
                throw ConfigError(join(prefix, key), "expected a string");
            return it->get<std::string>();
        }

        std::optional<std::vector<double>> numbers(const json *obj, const std::string &prefix, const std::string &key)
        {
            if (!obj)
                return std::nullopt;
            auto it = obj->find(key);
            if (it == obj->end() || it->is_null())
                return std::nullopt;
            if (!it->is_array() || it->empty())
                throw ConfigError(join(prefix, key), "expected a non-empty array of numbers");
            std::vector<double> out;
            for (const auto &v : *it)
            {
                if (!v.is_number() || !std::isfinite(v.get<double>()))
                    throw ConfigError(join(prefix, key), "expected a non-empty array of numbers");
                out.push_back(v.get<double>());
            }
            return out;
        }

        std::string repr(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string repr_list(const std::vector<double> &vs)
        {
            std::string out;
            for (std::size_t i = 0; i < vs.size(); ++i)
                out += (i ? "," : "") + repr(vs[i]);
            return out;
        }

        std::vector<double> to_degrees(const std::vector<double> &rad)
        {
            std::vector<double> out;
            for (double r : rad)
                out.push_back(rad2deg(r));
            return out;
        }
    } // namespace

    RunConfig parse_config(std::string_view text)
    {
        json root;
        if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
            root = json::object();
        else
        {
            try
            {
                root = json::parse(text, nullptr, true, true);
            }
            catch (const json::parse_error &e)
            {
                throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
            }
        }
        if (!root.is_object())
            throw ConfigError("<document>", "top level must be an object");

        reject_unknown(root, "", {"array", "rotation", "pattern", "scene", "simulation", "grid", "als", "sweep", "svc",
                                  "output_dir"});

        RunConfig cfg;
        ExperimentParams &p = cfg.params;

        if (const json *s = section(root, "array"))
        {
            reject_unknown(*s, "array", {"n_antennas", "sparse_factor", "spacing_wavelengths"});
            if (auto v = integer(s, "array", "n_antennas"))
            {
                if (*v < 2 || *v > 4096)
                    throw ConfigError("array.n_antennas", "must be an integer in [2, 4096]");
                p.n_antennas = static_cast<int>(*v);
            }
            if (auto v = number(s, "array", "sparse_factor"))
            {
                if (*v < 1.0)
                    throw ConfigError("array.sparse_factor", "must be >= 1");
                p.sparse_factor = *v;
            }
            if (auto v = number(s, "array", "spacing_wavelengths"))
            {
                if (!(*v > 0.0))
                    throw ConfigError("array.spacing_wavelengths", "must be > 0");
                p.spacing_wavelengths = *v;
            }
        }

        if (const json *s = section(root, "rotation"))
        {
            reject_unknown(*s, "rotation", {"m_rotations", "theta_max_deg"});
            if (auto v = integer(s, "rotation", "m_rotations"))
            {
                if (*v < 2)
                    throw ConfigError("rotation.m_rotations",
                                      "must be >= 2; the gain correlation has a unique global maximum only when "
                                      "the antennas take at least two rotation angles (M >= 2)");
                if (*v > 4096)
                    throw ConfigError("rotation.m_rotations", "must be <= 4096");
                p.m_rotations = static_cast<int>(*v);
            }
            if (auto v = number(s, "rotation", "theta_max_deg"))
            {
                if (!(*v > 0.0 && *v < 90.0))
                    throw ConfigError("rotation.theta_max_deg", "must lie in (0, 90) degrees");
                p.theta_max = deg2rad(*v);
            }
        }

        if (const json *s = section(root, "pattern"))
        {
            reject_unknown(*s, "pattern", {"directivity"});
            if (auto v = number(s, "pattern", "directivity"))
            {
                if (*v < 0.0)
                    throw ConfigError("pattern.directivity", "must be >= 0");
                p.directivity = *v;
            }
        }

        if (const json *s = section(root, "scene"))
        {
            reject_unknown(*s, "scene", {"targets_deg", "scattering", "signal_power", "snr_db", "noise_power"});
            if (auto v = numbers(s, "scene", "targets_deg"))
            {
                p.target_doas.clear();
                for (double d : *v)
                    p.target_doas.push_back(deg2rad(d));
            }
            if (auto it = s->find("scattering"); it != s->end() && !it->is_null())
            {
                if (it->is_number())
                    p.scattering = {it->get<double>(), 0.0};
                else if (it->is_array() && it->size() == 2 && (*it)[0].is_number() && (*it)[1].is_number())
                    p.scattering = {(*it)[0].get<double>(), (*it)[1].get<double>()};
                else
                    throw ConfigError("scene.scattering", "expected a number or [re, im]");
            }
            if (auto v = number(s, "scene", "signal_power"))
            {
                if (!(*v > 0.0))
                    throw ConfigError("scene.signal_power", "must be > 0");
                p.signal_power = *v;
            }
            const auto snr = number(s, "scene", "snr_db");
            const auto noise = number(s, "scene", "noise_power");
            if (snr && noise)
                throw ConfigError("scene.noise_power", "set either snr_db or noise_power, not both");
            if (snr)
                p.snr_db = *snr;
            if (noise)
            {
                if (*noise < 0.0)
                    throw ConfigError("scene.noise_power", "must be >= 0");
                p.noise_power = *noise;
            }
        }

        if (const json *s = section(root, "simulation"))
        {
            reject_unknown(*s, "simulation", {"snapshots", "seed", "trials", "fresh_signals_per_rotation"});
            if (auto v = integer(s, "simulation", "snapshots"))
            {
                if (*v < 1 || *v > 1000000)
                    throw ConfigError("simulation.snapshots", "must be an integer in [1, 1e6]");
                p.snapshots = static_cast<int>(*v);
            }
            if (auto it = s->find("seed"); it != s->end() && !it->is_null())
            {
                if (!it->is_number_unsigned())
                    throw ConfigError("simulation.seed", "expected a non-negative integer");
                cfg.seed = it->get<std::uint64_t>();
            }
            if (auto v = integer(s, "simulation", "trials"))
            {
                if (*v < 1)
                    throw ConfigError("simulation.trials", "must be >= 1");
                cfg.trials = static_cast<int>(*v);
            }
            if (auto v = boolean(s, "simulation", "fresh_signals_per_rotation"))
                p.fresh_signals_per_rotation = *v;
        }

        if (const json *s = section(root, "grid"))
        {
            reject_unknown(*s, "grid", {"resolution_deg"});
            if (auto v = number(s, "grid", "resolution_deg"))
            {
                if (!(*v > 0.0 && *v <= 10.0))
                    throw ConfigError("grid.resolution_deg", "must lie in (0, 10] degrees");
                p.grid_resolution = deg2rad(*v);
            }
        }

        if (const json *s = section(root, "als"))
        {
            reject_unknown(*s, "als", {"max_iter", "tol", "init", "restarts"});
            if (auto v = integer(s, "als", "max_iter"))
            {
                if (*v < 1)
                    throw ConfigError("als.max_iter", "must be >= 1");
                p.als.max_iter = static_cast<int>(*v);
            }
            if (auto v = number(s, "als", "tol"))
            {
                if (!(*v > 0.0))
                    throw ConfigError("als.tol", "must be > 0");
                p.als.tol = *v;
            }
            if (auto v = string(s, "als", "init"))
            {
                if (*v == "random")
                    p.als.init = InitStrategy::random;
                else if (*v == "spectral")
                    p.als.init = InitStrategy::spectral;
                else
                    throw ConfigError("als.init", "expected \"random\" or \"spectral\"");
            }
            if (auto v = integer(s, "als", "restarts"))
            {
                if (*v < 0)
                    throw ConfigError("als.restarts", "must be >= 0");
                p.als.restarts = static_cast<int>(*v);
            }
        }

        if (const json *s = section(root, "sweep"))
        {
            reject_unknown(*s, "sweep", {"values", "directivities", "snr_db", "schemes"});
            cfg.sweep.values = numbers(s, "sweep", "values");
            cfg.sweep.directivities = numbers(s, "sweep", "directivities");
            if (cfg.sweep.directivities)
                for (double d : *cfg.sweep.directivities)
                    if (d < 0.0)
                        throw ConfigError("sweep.directivities", "must be >= 0");
            cfg.sweep.snr_db = number(s, "sweep", "snr_db");
            if (auto it = s->find("schemes"); it != s->end() && !it->is_null())
            {
                if (!it->is_array() || it->empty())
                    throw ConfigError("sweep.schemes", "expected a non-empty array of scheme names");
                std::vector<Scheme> schemes;
                for (const auto &v : *it)
                {
                    const auto sc = v.is_string() ? parse_scheme(v.get<std::string>()) : std::nullopt;
                    if (!sc)
                        throw ConfigError("sweep.schemes", "unknown scheme (expected US_RA, UD_RA, US_OA, UD_OA)");
                    schemes.push_back(*sc);
                }
                cfg.sweep.schemes = std::move(schemes);
            }
        }

        if (const json *s = section(root, "svc"))
        {
            reject_unknown(*s, "svc", {"target_deg"});
            if (auto v = number(s, "svc", "target_deg"))
                cfg.svc_target = deg2rad(*v);
        }

        if (auto v = string(&root, "", "output_dir"))
        {
            if (v->empty())
                throw ConfigError("output_dir", "must not be empty");
            cfg.output_dir = *v;
        }

        // Cross-field checks.
        const double theta_max_deg = rad2deg(p.theta_max);
        for (std::size_t i = 0; i < p.target_doas.size(); ++i)
        {
            if (std::abs(p.target_doas[i]) > p.theta_max + 1e-12)
                throw ConfigError("scene.targets_deg", "target " + repr(rad2deg(p.target_doas[i])) +
                                                           " deg lies outside the sensing range +-" +
                                                           repr(theta_max_deg) + " deg");
            for (std::size_t j = 0; j < i; ++j)
                if (p.target_doas[i] == p.target_doas[j])
                    throw ConfigError("scene.targets_deg", "target DOAs must be distinct");
        }
        if (p.k_targets() >= p.n_antennas)
            throw ConfigError("scene.targets_deg", "number of targets must be smaller than array.n_antennas");
        if (std::abs(cfg.svc_target) > p.theta_max + 1e-12)
            throw ConfigError("svc.target_deg", "lies outside the sensing range +-" + repr(theta_max_deg) + " deg");
        if (p.grid_resolution >= 2.0 * p.theta_max)
            throw ConfigError("grid.resolution_deg", "must be smaller than the sensing range");
        try
        {
            p.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError("<document>", e.what());
        }
        return cfg;
    }

    RunConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("<file>", "cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    std::map<std::string, std::string> flatten_config(const RunConfig &c)
    {
        const ExperimentParams &p = c.params;
        std::map<std::string, std::string> kv;
        kv["array.n_antennas"] = std::to_string(p.n_antennas);
        kv["array.sparse_factor"] = repr(p.sparse_factor);
        kv["array.spacing_wavelengths"] = repr(p.spacing_wavelengths);
        kv["rotation.m_rotations"] = std::to_string(p.m_rotations);
        kv["rotation.theta_max_deg"] = repr(rad2deg(p.theta_max));
        kv["pattern.directivity"] = repr(p.directivity);
        kv["scene.targets_deg"] = repr_list(to_degrees(p.target_doas));
        kv["scene.scattering"] = repr(p.scattering.real()) + "," + repr(p.scattering.imag());
        kv["scene.signal_power"] = repr(p.signal_power);
        if (p.noise_power)
            kv["scene.noise_power"] = repr(*p.noise_power);
        else
            kv["scene.snr_db"] = repr(p.snr_db);
        kv["simulation.snapshots"] = std::to_string(p.snapshots);
        kv["simulation.trials"] = std::to_string(c.trials);
        kv["simulation.fresh_signals_per_rotation"] = p.fresh_signals_per_rotation ? "true" : "false";
        if (c.seed)
            kv["simulation.seed"] = std::to_string(*c.seed);
        kv["grid.resolution_deg"] = repr(rad2deg(p.grid_resolution));
        kv["als.max_iter"] = std::to_string(p.als.max_iter);
        kv["als.tol"] = repr(p.als.tol);
        kv["als.init"] = p.als.init == InitStrategy::spectral ? "spectral" : "random";
        kv["als.restarts"] = std::to_string(p.als.restarts);
        if (c.sweep.values)
            kv["sweep.values"] = repr_list(*c.sweep.values);
        if (c.sweep.directivities)
            kv["sweep.directivities"] = repr_list(*c.sweep.directivities);
        if (c.sweep.snr_db)
            kv["sweep.snr_db"] = repr(*c.sweep.snr_db);
        if (c.sweep.schemes)
        {
            std::string s;
            for (std::size_t i = 0; i < c.sweep.schemes->size(); ++i)
                s += (i ? "," : "") + std::string(scheme_name((*c.sweep.schemes)[i]));
            kv["sweep.schemes"] = s;
        }
        kv["svc.target_deg"] = repr(rad2deg(c.svc_target));
        kv["output_dir"] = c.output_dir;
        return kv;
    }

} // namespace rasense
