// SPDX-License-Identifier: Apache-2.0
//
// wsms - terahertz widely-spaced multi-subarray link simulation
// Copyright (C) 2026 The wsms authors
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

#include "wsms/scenario.hpp"

#include "wsms/errors.hpp"
#include "wsms/numerics.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace wsms
{
    LinkScenario to_link_scenario(const ScenarioConfig &config)
    {
        if (config.transmit_power_dbm.empty())
            throw ConfigError("transmit_power_dbm must list at least one value");
        return to_link_scenario(config, config.transmit_power_dbm.front());
    }

    LinkScenario to_link_scenario(const ScenarioConfig &config, double transmit_power_dbm)
    {
        LinkScenario s;
        s.wavelength = wavelength_from_frequency(config.carrier_frequency);
        s.n_tx = config.n_tx;
        s.n_rx = config.n_rx;
        s.transmit_power = dbm_to_watts(transmit_power_dbm);
        s.noise_power = dbm_to_watts(config.noise_power_dbm);
        s.distances = config.distances;
        s.tx_height = config.tx_height;
        s.rx_height = config.rx_height;
        s.reflection_loss_db = config.reflection_loss_db;
        s.absorption = config.absorption;
        s.ground_reflection = config.ground_reflection;
        s.wall_offsets = config.wall_offsets;
        if (config.random_walls.count > 0)
        {
            std::mt19937_64 rng(config.seed);
            std::uniform_real_distribution<double> offset(config.random_walls.min_offset,
                                                          config.random_walls.max_offset);
            for (int i = 0; i < config.random_walls.count; ++i)
                s.wall_offsets.push_back(offset(rng));
        }
        s.min_spacing = config.min_spacing;
        s.max_spacing = config.max_spacing;
        s.max_aperture = config.max_aperture;
        s.k_override = config.k;
        s.include_oversized_k = config.include_oversized_k;
        return s;
    }

    namespace
    {
        int line_of(const YAML::Node &node) { return node.Mark().line + 1; }

        template <class T>
        T scalar(const YAML::Node &node, const std::string &key)
        {
            if (!node.IsScalar())
                throw ConfigError("'" + key + "' must be a scalar", line_of(node));
            try
            {
                return node.as<T>();
            }
            catch (const YAML::Exception &)
            {
                throw ConfigError("'" + key + "' has an invalid value '" + node.Scalar() + "'", line_of(node));
            }
        }

        double positive(const YAML::Node &node, const std::string &key)
        {
            const double v = scalar<double>(node, key);
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError("'" + key + "' must be positive", line_of(node));
            return v;
        }

        double non_negative(const YAML::Node &node, const std::string &key)
        {
            const double v = scalar<double>(node, key);
            if (!(v >= 0.0) || !std::isfinite(v))
                throw ConfigError("'" + key + "' must be non-negative", line_of(node));
            return v;
        }

        double finite(const YAML::Node &node, const std::string &key)
        {
            const double v = scalar<double>(node, key);
            if (!std::isfinite(v))
                throw ConfigError("'" + key + "' must be finite", line_of(node));
            return v;
        }

        double nonzero(const YAML::Node &node, const std::string &key)
        {
            const double v = scalar<double>(node, key);
            if (v == 0.0 || !std::isfinite(v))
                throw ConfigError("'" + key + "' must be finite and nonzero", line_of(node));
            return v;
        }

        int positive_int(const YAML::Node &node, const std::string &key)
        {
            const int v = scalar<int>(node, key);
            if (v < 1)
                throw ConfigError("'" + key + "' must be a positive integer", line_of(node));
            return v;
        }

        std::vector<double> number_list(const YAML::Node &node, const std::string &key,
                                        const std::function<double(const YAML::Node &, const std::string &)> &each)
        {
            std::vector<double> out;
            if (node.IsScalar())
                out.push_back(each(node, key));
            else if (node.IsSequence())
                for (const auto &item : node)
                    out.push_back(each(item, key));
            else
                throw ConfigError("'" + key + "' must be a number or a list of numbers", line_of(node));
            return out;
        }

        using Handler = std::function<void(const YAML::Node &, const std::string &)>;

        void dispatch(const YAML::Node &section, const std::string &name, const std::map<std::string, Handler> &handlers)
        {
            if (!section.IsMap())
                throw ConfigError("section '" + name + "' must be a mapping", line_of(section));
            for (const auto &entry : section)
            {
                const std::string key = entry.first.as<std::string>();
                const auto it = handlers.find(key);
                if (it == handlers.end())
                    throw ConfigError("unknown key '" + key + "' in section '" + name + "'", line_of(entry.first));
                it->second(entry.second, key);
            }
        }

        std::vector<DistancePoint> parse_distances(const YAML::Node &node)
        {
            if (node.IsScalar())
                return {{positive(node, "distance"), 1.0}};
            if (!node.IsSequence() || node.size() == 0)
                throw ConfigError("'distance' must be a number or a non-empty list of {distance, probability}",
                                  line_of(node));
            std::vector<DistancePoint> out;
            double total = 0.0;
            for (const auto &item : node)
            {
                DistancePoint p;
                bool have_d = false;
                bool have_p = false;
                dispatch(item, "distance", {
                    {"distance", [&](const YAML::Node &n, const std::string &k) { p.distance = positive(n, k); have_d = true; }},
                    {"probability", [&](const YAML::Node &n, const std::string &k) { p.probability = non_negative(n, k); have_p = true; }},
                });
                if (!have_d || !have_p)
                    throw ConfigError("distance entries need both 'distance' and 'probability'", line_of(item));
                total += p.probability;
                out.push_back(p);
            }
            if (std::abs(total - 1.0) > 1e-9)
                throw ConfigError("distance probabilities sum to " + std::to_string(total) + ", not 1", line_of(node));
            return out;
        }

        void parse_power_model(const YAML::Node &node, const std::string &name, PowerModel &m)
        {
            dispatch(node, name, {
                {"pa", [&](const YAML::Node &n, const std::string &k) { m.pa = positive(n, k); }},
                {"pc", [&](const YAML::Node &n, const std::string &k) { m.pc = positive(n, k); }},
                {"ps", [&](const YAML::Node &n, const std::string &k) { m.ps = positive(n, k); }},
                {"rf", [&](const YAML::Node &n, const std::string &k) { m.rf = positive(n, k); }},
                {"dac", [&](const YAML::Node &n, const std::string &k) { m.dac = positive(n, k); }},
                {"bb", [&](const YAML::Node &n, const std::string &k) { m.bb = positive(n, k); }},
            });
        }

        void check_consistency(const ScenarioConfig &c, const YAML::Node &root)
        {
            const int line = root.IsMap() ? line_of(root) : 0;
            if (c.k && (c.n_tx % *c.k != 0 || c.n_rx % *c.k != 0))
                throw ConfigError("k = " + std::to_string(*c.k) + " must divide n_tx and n_rx", line);
            if (c.min_spacing && c.max_spacing && *c.min_spacing > *c.max_spacing)
                throw ConfigError("ds_min exceeds ds_max", line);
            if (c.random_walls.min_offset > c.random_walls.max_offset)
                throw ConfigError("random_walls.min_offset exceeds max_offset", line);
        }
    }

    ScenarioConfig parse_scenario(std::string_view text)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(std::string(text));
        }
        catch (const YAML::ParserException &e)
        {
            throw ConfigError(e.msg, e.mark.line + 1);
        }

        ScenarioConfig c;
        if (root.IsNull())
            return c;
        const std::map<std::string, Handler> sections{
            {"link",
             [&](const YAML::Node &s, const std::string &name) {
                 dispatch(s, name, {
                     {"carrier_frequency", [&](const YAML::Node &n, const std::string &k) { c.carrier_frequency = positive(n, k); }},
                     {"bandwidth", [&](const YAML::Node &n, const std::string &k) { c.bandwidth = positive(n, k); }},
                     {"noise_power_dbm", [&](const YAML::Node &n, const std::string &k) { c.noise_power_dbm = finite(n, k); }},
                     {"transmit_power_dbm", [&](const YAML::Node &n, const std::string &k) {
                          c.transmit_power_dbm = number_list(n, k, finite);
                          if (c.transmit_power_dbm.empty())
                              throw ConfigError("'transmit_power_dbm' must not be empty", line_of(n));
                      }},
                     {"distance", [&](const YAML::Node &n, const std::string &) { c.distances = parse_distances(n); }},
                     {"tx_height", [&](const YAML::Node &n, const std::string &k) { c.tx_height = positive(n, k); }},
                     {"rx_height", [&](const YAML::Node &n, const std::string &k) { c.rx_height = positive(n, k); }},
                 });
             }},
            {"arrays",
             [&](const YAML::Node &s, const std::string &name) {
                 dispatch(s, name, {
                     {"n_tx", [&](const YAML::Node &n, const std::string &k) { c.n_tx = positive_int(n, k); }},
                     {"n_rx", [&](const YAML::Node &n, const std::string &k) { c.n_rx = positive_int(n, k); }},
                     {"max_aperture", [&](const YAML::Node &n, const std::string &k) { c.max_aperture = positive(n, k); }},
                     {"ds_min", [&](const YAML::Node &n, const std::string &k) { c.min_spacing = positive(n, k); }},
                     {"ds_max", [&](const YAML::Node &n, const std::string &k) { c.max_spacing = positive(n, k); }},
                     {"k", [&](const YAML::Node &n, const std::string &k) { c.k = positive_int(n, k); }},
                     {"include_oversized_k", [&](const YAML::Node &n, const std::string &k) { c.include_oversized_k = scalar<bool>(n, k); }},
                 });
             }},
            {"propagation",
             [&](const YAML::Node &s, const std::string &name) {
                 dispatch(s, name, {
                     {"reflection_loss_db", [&](const YAML::Node &n, const std::string &k) { c.reflection_loss_db = non_negative(n, k); }},
                     {"absorption", [&](const YAML::Node &n, const std::string &k) { c.absorption = non_negative(n, k); }},
                     {"ground_reflection", [&](const YAML::Node &n, const std::string &k) { c.ground_reflection = scalar<bool>(n, k); }},
                     {"wall_offsets", [&](const YAML::Node &n, const std::string &k) {
                          c.wall_offsets = n.IsSequence() && n.size() == 0 ? std::vector<double>{} : number_list(n, k, nonzero);
                      }},
                     {"random_walls", [&](const YAML::Node &n, const std::string &k) {
                          dispatch(n, k, {
                              {"count", [&](const YAML::Node &v, const std::string &kk) {
                                   c.random_walls.count = scalar<int>(v, kk);
                                   if (c.random_walls.count < 0)
                                       throw ConfigError("'count' must be non-negative", line_of(v));
                               }},
                              {"min_offset", [&](const YAML::Node &v, const std::string &kk) { c.random_walls.min_offset = positive(v, kk); }},
                              {"max_offset", [&](const YAML::Node &v, const std::string &kk) { c.random_walls.max_offset = positive(v, kk); }},
                          });
                      }},
                 });
             }},
            {"power",
             [&](const YAML::Node &s, const std::string &name) {
                 dispatch(s, name, {
                     {"tx", [&](const YAML::Node &n, const std::string &k) { parse_power_model(n, k, c.tx_power_model); }},
                     {"rx", [&](const YAML::Node &n, const std::string &k) { parse_power_model(n, k, c.rx_power_model); }},
                 });
             }},
            {"run",
             [&](const YAML::Node &s, const std::string &name) {
                 dispatch(s, name, {
                     {"seed", [&](const YAML::Node &n, const std::string &k) { c.seed = scalar<std::uint64_t>(n, k); }},
                     {"workers", [&](const YAML::Node &n, const std::string &k) { c.workers = positive_int(n, k); }},
                 });
             }},
        };
        dispatch(root, "top level", sections);
        check_consistency(c, root);
        return c;
    }

    ScenarioConfig load_scenario(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open '" + path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return parse_scenario(text.str());
    }

    namespace
    {
        void emit_power_model(YAML::Emitter &out, const char *name, const PowerModel &m)
        {
            out << YAML::Key << name << YAML::Value << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "pa" << YAML::Value << m.pa;
            out << YAML::Key << "pc" << YAML::Value << m.pc;
            out << YAML::Key << "ps" << YAML::Value << m.ps;
            out << YAML::Key << "rf" << YAML::Value << m.rf;
            out << YAML::Key << "dac" << YAML::Value << m.dac;
            out << YAML::Key << "bb" << YAML::Value << m.bb;
            out << YAML::EndMap;
        }
    }

    std::string serialize(const ScenarioConfig &c)
    {
        YAML::Emitter out;
        out.SetDoublePrecision(17);
        out << YAML::BeginMap;

        out << YAML::Key << "link" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "carrier_frequency" << YAML::Value << c.carrier_frequency;
        out << YAML::Key << "bandwidth" << YAML::Value << c.bandwidth;
        out << YAML::Key << "noise_power_dbm" << YAML::Value << c.noise_power_dbm;
        out << YAML::Key << "transmit_power_dbm" << YAML::Value << YAML::Flow << c.transmit_power_dbm;
        out << YAML::Key << "distance" << YAML::Value;
        if (c.distances.size() == 1 && c.distances.front().probability == 1.0)
            out << c.distances.front().distance;
        else
        {
            out << YAML::BeginSeq;
            for (const auto &p : c.distances)
                out << YAML::Flow << YAML::BeginMap << YAML::Key << "distance" << YAML::Value << p.distance
                    << YAML::Key << "probability" << YAML::Value << p.probability << YAML::EndMap;
            out << YAML::EndSeq;
        }
        out << YAML::Key << "tx_height" << YAML::Value << c.tx_height;
        out << YAML::Key << "rx_height" << YAML::Value << c.rx_height;
        out << YAML::EndMap;

        out << YAML::Key << "arrays" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "n_tx" << YAML::Value << c.n_tx;
        out << YAML::Key << "n_rx" << YAML::Value << c.n_rx;
        out << YAML::Key << "max_aperture" << YAML::Value << c.max_aperture;
        if (c.min_spacing)
            out << YAML::Key << "ds_min" << YAML::Value << *c.min_spacing;
        if (c.max_spacing)
            out << YAML::Key << "ds_max" << YAML::Value << *c.max_spacing;
        if (c.k)
            out << YAML::Key << "k" << YAML::Value << *c.k;
        out << YAML::Key << "include_oversized_k" << YAML::Value << c.include_oversized_k;
        out << YAML::EndMap;

        out << YAML::Key << "propagation" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "reflection_loss_db" << YAML::Value << c.reflection_loss_db;
        out << YAML::Key << "absorption" << YAML::Value << c.absorption;
        out << YAML::Key << "ground_reflection" << YAML::Value << c.ground_reflection;
        out << YAML::Key << "wall_offsets" << YAML::Value << YAML::Flow << c.wall_offsets;
        out << YAML::Key << "random_walls" << YAML::Value << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "count" << YAML::Value << c.random_walls.count;
        out << YAML::Key << "min_offset" << YAML::Value << c.random_walls.min_offset;
        out << YAML::Key << "max_offset" << YAML::Value << c.random_walls.max_offset;
        out << YAML::EndMap;
        out << YAML::EndMap;

        out << YAML::Key << "power" << YAML::Value << YAML::BeginMap;
        emit_power_model(out, "tx", c.tx_power_model);
        emit_power_model(out, "rx", c.rx_power_model);
        out << YAML::EndMap;

        out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "seed" << YAML::Value << c.seed;
        out << YAML::Key << "workers" << YAML::Value << c.workers;
        out << YAML::EndMap;

        out << YAML::EndMap;
        return std::string(out.c_str()) + "\n";
    }
}
