// SPDX-License-Identifier: Apache-2.0
//
// resbeam: resonant-beam SWIPT link simulator
// Copyright (C) 2026 The resbeam authors
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

#include "resbeam/scenario.hpp"

#include "resbeam/errors.hpp"
#include "resbeam/geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace resbeam
{
    namespace
    {
        using json = nlohmann::json;
        using ojson = nlohmann::ordered_json;

        std::string join(const std::string &path, std::string_view key)
        {
            return path.empty() ? std::string(key) : path + "." + std::string(key);
        }

        std::string index(const std::string &path, std::size_t i)
        {
            return path + "[" + std::to_string(i) + "]";
        }

        void require_object(const json &j, const std::string &path)
        {
            if (!j.is_object())
                throw ScenarioError(path, "expected an object");
        }

        void check_keys(const json &j, const std::string &path, std::initializer_list<std::string_view> allowed,
                        bool strict)
        {
            if (!strict)
                return;
            for (const auto &item : j.items())
                if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                    throw ScenarioError(join(path, item.key()), "unknown key");
        }

        double as_number(const json &v, const std::string &path)
        {
            if (v.is_string())
            {
                const auto s = v.get<std::string>();
                if (s == "inf" || s == "infinity")
                    return std::numeric_limits<double>::infinity();
                throw ScenarioError(path, "expected a number");
            }
            if (!v.is_number())
                throw ScenarioError(path, "expected a number");
            return v.get<double>();
        }

        double number(const json &j, std::string_view key, double fallback, const std::string &path)
        {
            const auto it = j.find(key);
            return it == j.end() ? fallback : as_number(*it, join(path, key));
        }

        long long integer(const json &j, std::string_view key, long long fallback, const std::string &path)
        {
            const auto it = j.find(key);
            if (it == j.end())
                return fallback;
            if (!it->is_number_integer())
                throw ScenarioError(join(path, key), "expected an integer");
            return it->get<long long>();
        }

        Vec3 vec3(const json &v, const std::string &path)
        {
            if (!v.is_array() || v.size() != 3)
                throw ScenarioError(path, "expected an array of 3 numbers");
            return {as_number(v[0], index(path, 0)), as_number(v[1], index(path, 1)), as_number(v[2], index(path, 2))};
        }

        Vec3 unit_normal(const Vec3 &n, const std::string &path)
        {
            const double len = n.norm();
            if (!(len > 0.0) || !std::isfinite(len))
                throw ScenarioError(path, "normal must be a non-zero finite vector");
            // Leave already-unit vectors bit-for-bit alone so serialization round-trips.
            return std::abs(len - 1.0) > 1e-12 ? Vec3(n / len) : n;
        }

        LatticeSpec lattice(const json &j, const LatticeSpec &fallback, const std::string &path, bool strict)
        {
            require_object(j, path);
            check_keys(j, path, {"rows", "cols", "spacing"}, strict);
            LatticeSpec out = fallback;
            out.rows = static_cast<int>(integer(j, "rows", fallback.rows, path));
            out.cols = static_cast<int>(integer(j, "cols", fallback.cols, path));
            if (j.contains("spacing"))
            {
                out.spacing = number(j, "spacing", 0.0, path);
                if (!(out.spacing > 0.0))
                    throw ScenarioError(join(path, "spacing"), "spacing must be positive");
            }
            return out;
        }

        void parse_constants(const json &j, PhysicalConstants &c, bool strict)
        {
            const std::string path = "constants";
            require_object(j, path);
            check_keys(j, path, {"z0", "kappa", "c", "temperature"}, strict);
            c.z0 = number(j, "z0", c.z0, path);
            c.kappa = number(j, "kappa", c.kappa, path);
            c.c = number(j, "c", c.c, path);
            c.temperature = number(j, "temperature", c.temperature, path);
        }

        void parse_control(const json &j, ControlParams &c, bool strict)
        {
            const std::string path = "control";
            require_object(j, path);
            check_keys(j, path,
                       {"alpha", "gamma", "p_cap_total", "g_pa_max", "beta", "delta_db", "bandwidth", "noise_figure_db",
                        "conv_tol", "conv_window", "max_iters", "init_seed", "init_phase"},
                       strict);
            c.alpha = number(j, "alpha", c.alpha, path);
            c.gamma = number(j, "gamma", c.gamma, path);
            c.p_cap_total = number(j, "p_cap_total", c.p_cap_total, path);
            c.g_pa_max = number(j, "g_pa_max", c.g_pa_max, path);
            c.beta = number(j, "beta", c.beta, path);
            c.delta_db = number(j, "delta_db", c.delta_db, path);
            c.bandwidth = number(j, "bandwidth", c.bandwidth, path);
            c.noise_figure_db = number(j, "noise_figure_db", c.noise_figure_db, path);
            c.conv_tol = number(j, "conv_tol", c.conv_tol, path);
            c.conv_window = static_cast<int>(integer(j, "conv_window", c.conv_window, path));
            c.max_iters = static_cast<int>(integer(j, "max_iters", c.max_iters, path));
            if (const auto it = j.find("init_seed"); it != j.end())
            {
                if (!it->is_number_unsigned())
                    throw ScenarioError(join(path, "init_seed"), "expected a non-negative integer");
                c.init_seed = it->get<std::uint64_t>();
            }
            if (const auto it = j.find("init_phase"); it != j.end())
            {
                const std::string mode = it->is_string() ? it->get<std::string>() : "";
                if (mode == "random")
                    c.init_phase = InitPhase::random;
                else if (mode == "zero")
                    c.init_phase = InitPhase::zero;
                else
                    throw ScenarioError(join(path, "init_phase"), "expected \"random\" or \"zero\"");
            }
        }

        void parse_pattern(const json &j, GainPattern &p, bool strict)
        {
            const std::string path = "pattern";
            require_object(j, path);
            check_keys(j, path, {"g_max", "q"}, strict);
            p.g_max = number(j, "g_max", p.g_max, path);
            p.q = number(j, "q", p.q, path);
        }

        NodeSpec parse_bs(const json &j, bool strict)
        {
            const std::string path = "bs";
            require_object(j, path);
            check_keys(j, path, {"position", "normal", "tx", "rx"}, strict);
            NodeSpec bs;
            bs.role = NodeRole::bs;
            if (const auto it = j.find("position"); it != j.end())
                bs.position = vec3(*it, join(path, "position"));
            if (const auto it = j.find("normal"); it != j.end())
                bs.normal = unit_normal(vec3(*it, join(path, "normal")), join(path, "normal"));
            if (const auto it = j.find("tx"); it != j.end())
                bs.tx = lattice(*it, bs.tx, join(path, "tx"), strict);
            if (const auto it = j.find("rx"); it != j.end())
                bs.rx = lattice(*it, bs.rx, join(path, "rx"), strict);
            return bs;
        }

        NodeSpec parse_ue(const json &j, const NodeSpec &bs, const std::string &path, bool strict)
        {
            require_object(j, path);
            check_keys(j, path, {"link_id", "position", "normal", "tx", "rx"}, strict);
            NodeSpec ue;
            ue.role = NodeRole::ue;
            if (!j.contains("link_id"))
                throw ScenarioError(join(path, "link_id"), "required");
            ue.link_id = static_cast<int>(integer(j, "link_id", 0, path));

            const auto pos = j.find("position");
            if (pos == j.end())
                throw ScenarioError(join(path, "position"), "required");
            const std::string pos_path = join(path, "position");
            if (pos->is_object())
            {
                check_keys(*pos, pos_path, {"range", "elevation_deg", "azimuth_deg"}, strict);
                if (!pos->contains("range"))
                    throw ScenarioError(join(pos_path, "range"), "required");
                const double range = number(*pos, "range", 0.0, pos_path);
                if (!(range > 0.0))
                    throw ScenarioError(join(pos_path, "range"), "range must be positive");
                const double el = number(*pos, "elevation_deg", 0.0, pos_path);
                const double az = number(*pos, "azimuth_deg", 0.0, pos_path);
                ue.position = bs.position + range * direction_from_angles(bs.normal, el, az);
            }
            else
            {
                ue.position = vec3(*pos, pos_path);
            }

            if (const auto it = j.find("normal"); it != j.end())
                ue.normal = unit_normal(vec3(*it, join(path, "normal")), join(path, "normal"));
            else
                ue.normal = unit_normal(bs.position - ue.position, join(path, "normal"));

            // UE lattices default to the BS sizes; spacings come from the per-node rule.
            LatticeSpec tx_default{bs.tx.rows, bs.tx.cols, 0.0};
            LatticeSpec rx_default{bs.rx.rows, bs.rx.cols, 0.0};
            ue.tx = j.contains("tx") ? lattice(j["tx"], tx_default, join(path, "tx"), strict) : tx_default;
            ue.rx = j.contains("rx") ? lattice(j["rx"], rx_default, join(path, "rx"), strict) : rx_default;
            return ue;
        }

        FrequencyPlan parse_plan(const json &j, bool strict)
        {
            const std::string path = "plan";
            if (!j.is_array())
                throw ScenarioError(path, "expected an array");
            FrequencyPlan plan;
            for (std::size_t i = 0; i < j.size(); ++i)
            {
                const std::string p = index(path, i);
                require_object(j[i], p);
                check_keys(j[i], p, {"link_id", "f_dl", "f_ul"}, strict);
                for (const char *key : {"link_id", "f_dl", "f_ul"})
                    if (!j[i].contains(key))
                        throw ScenarioError(join(p, key), "required");
                FrequencyEntry e;
                e.link_id = static_cast<int>(integer(j[i], "link_id", 0, p));
                e.f_dl = number(j[i], "f_dl", 0.0, p);
                e.f_ul = number(j[i], "f_ul", 0.0, p);
                plan.entries.push_back(e);
            }
            return plan;
        }

        bool positive(double v) { return v > 0.0 && !std::isnan(v); }

        void validate_lattice(const LatticeSpec &l, const std::string &path)
        {
            if (l.rows < 1 || l.cols < 1)
                throw ScenarioError(path, "rows and cols must be >= 1");
            if (!(l.spacing > 0.0) || !std::isfinite(l.spacing))
                throw ScenarioError(join(path, "spacing"), "spacing must be positive");
        }

        void validate_node(const NodeSpec &n, const std::string &path)
        {
            if (!n.position.allFinite())
                throw ScenarioError(join(path, "position"), "position must be finite");
            if (std::abs(n.normal.norm() - 1.0) > 1e-12)
                throw ScenarioError(join(path, "normal"), "normal must have unit length");
            validate_lattice(n.tx, join(path, "tx"));
            validate_lattice(n.rx, join(path, "rx"));
        }

        ojson lattice_json(const LatticeSpec &l)
        {
            return ojson{{"rows", l.rows}, {"cols", l.cols}, {"spacing", l.spacing}};
        }

        ojson vec_json(const Vec3 &v) { return ojson::array({v.x(), v.y(), v.z()}); }

        ojson number_json(double v)
        {
            if (std::isinf(v) && v > 0.0)
                return "inf";
            return v;
        }
    }

    const FrequencyEntry &FrequencyPlan::at(int link_id) const
    {
        for (const auto &e : entries)
            if (e.link_id == link_id)
                return e;
        throw ScenarioError("plan", "no entry for link " + std::to_string(link_id));
    }

    Vec3 direction_from_angles(const Vec3 &boresight, double elevation_deg, double azimuth_deg)
    {
        Vec3 u, v;
        lattice_axes(boresight, u, v);
        const Vec3 n = boresight.normalized();
        const double el = elevation_deg * kPi / 180.0;
        const double az = azimuth_deg * kPi / 180.0;
        return std::sin(el) * std::cos(az) * u + std::sin(el) * std::sin(az) * v + std::cos(el) * n;
    }

    void apply_default_spacings(Scenario &s, bool overwrite)
    {
        const double c = s.constants.c;
        double f_dl_max = 0.0, f_ul_max = 0.0;
        for (const auto &e : s.plan.entries)
        {
            f_dl_max = std::max(f_dl_max, e.f_dl);
            f_ul_max = std::max(f_ul_max, e.f_ul);
        }
        // The BS receives every uplink and radiates every downlink; it is laid out
        // for the highest bands, which is the reference link of the default plan.
        if ((overwrite || s.bs.rx.spacing == 0.0) && f_ul_max > 0.0)
            s.bs.rx.spacing = c / f_ul_max / 2.0;
        if ((overwrite || s.bs.tx.spacing == 0.0) && f_dl_max > 0.0)
            s.bs.tx.spacing = c / f_dl_max / 2.0;
        for (auto &ue : s.ues)
        {
            const FrequencyEntry *band = nullptr;
            for (const auto &e : s.plan.entries)
                if (e.link_id == ue.link_id)
                    band = &e;
            if (band == nullptr)
                continue;
            if (overwrite || ue.rx.spacing == 0.0)
                ue.rx.spacing = c / band->f_dl / 2.0;
            if (overwrite || ue.tx.spacing == 0.0)
                ue.tx.spacing = c / band->f_ul / 2.0;
        }
    }

    void validate_scenario(const Scenario &s)
    {
        const auto &k = s.constants;
        if (!positive(k.z0))
            throw ScenarioError("constants.z0", "z0 must be positive");
        if (!positive(k.kappa))
            throw ScenarioError("constants.kappa", "kappa must be positive");
        if (!positive(k.c))
            throw ScenarioError("constants.c", "c must be positive");
        if (!positive(k.temperature))
            throw ScenarioError("constants.temperature", "temperature must be positive");

        const auto &c = s.control;
        if (!(c.alpha > 0.0 && c.alpha < 1.0))
            throw ScenarioError("control.alpha", "alpha must lie in (0,1)");
        if (!(c.gamma > 0.0 && c.gamma < 1.0))
            throw ScenarioError("control.gamma", "gamma must lie in (0,1)");
        if (!positive(c.p_cap_total))
            throw ScenarioError("control.p_cap_total", "p_cap_total must be positive");
        if (!positive(c.g_pa_max))
            throw ScenarioError("control.g_pa_max", "g_pa_max must be positive");
        if (!(c.beta >= 0.0))
            throw ScenarioError("control.beta", "beta must be >= 0");
        if (!positive(c.bandwidth))
            throw ScenarioError("control.bandwidth", "bandwidth must be positive");
        if (!std::isfinite(c.delta_db))
            throw ScenarioError("control.delta_db", "delta_db must be finite");
        if (!std::isfinite(c.noise_figure_db))
            throw ScenarioError("control.noise_figure_db", "noise_figure_db must be finite");
        if (!positive(c.conv_tol))
            throw ScenarioError("control.conv_tol", "conv_tol must be positive");
        if (c.conv_window < 1)
            throw ScenarioError("control.conv_window", "conv_window must be >= 1");
        if (c.max_iters < 1)
            throw ScenarioError("control.max_iters", "max_iters must be >= 1");

        if (!positive(s.pattern.g_max))
            throw ScenarioError("pattern.g_max", "g_max must be positive");
        if (!(s.pattern.q >= 0.0))
            throw ScenarioError("pattern.q", "q must be >= 0");

        if (s.bs.role != NodeRole::bs)
            throw ScenarioError("bs", "node role must be BS");

        if (s.ues.empty())
            throw ScenarioError("ues", "at least one UE required");
        std::set<int> ue_links;
        for (std::size_t i = 0; i < s.ues.size(); ++i)
        {
            const auto &ue = s.ues[i];
            const std::string path = index("ues", i);
            if (ue.role != NodeRole::ue)
                throw ScenarioError(path, "node role must be UE");
            if ((ue.position - s.bs.position).norm() == 0.0)
                throw ScenarioError(join(path, "position"), "UE coincides with the BS");
            if (!ue_links.insert(ue.link_id).second)
                throw ScenarioError(join(path, "link_id"), "duplicate link_id " + std::to_string(ue.link_id));
        }

        std::set<int> plan_links;
        for (std::size_t i = 0; i < s.plan.entries.size(); ++i)
        {
            const auto &e = s.plan.entries[i];
            const std::string path = index("plan", i);
            if (!positive(e.f_dl) || !std::isfinite(e.f_dl))
                throw ScenarioError(join(path, "f_dl"), "frequency must be positive");
            if (!positive(e.f_ul) || !std::isfinite(e.f_ul))
                throw ScenarioError(join(path, "f_ul"), "frequency must be positive");
            if (!plan_links.insert(e.link_id).second)
                throw ScenarioError(join(path, "link_id"), "duplicate link_id " + std::to_string(e.link_id));
        }
        if (s.plan.entries.size() != s.ues.size())
            throw ScenarioError("plan", "expected one plan entry per UE");
        for (std::size_t i = 0; i < s.ues.size(); ++i)
            if (!plan_links.count(s.ues[i].link_id))
                throw ScenarioError(join(index("ues", i), "link_id"),
                                    "link " + std::to_string(s.ues[i].link_id) + " missing from plan");
        if (s.plan.bandwidth != s.control.bandwidth)
            throw ScenarioError("plan", "plan bandwidth must equal control.bandwidth");

        // Lattices last: unset spacings are derived from the plan.
        validate_node(s.bs, "bs");
        for (std::size_t i = 0; i < s.ues.size(); ++i)
            validate_node(s.ues[i], index("ues", i));
    }

    Scenario parse_scenario(std::string_view text, const ParseOptions &options)
    {
        json doc;
        try
        {
            doc = json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            throw ScenarioError("", std::string("malformed document: ") + e.what());
        }
        const bool strict = options.strict;
        require_object(doc, "");
        check_keys(doc, "", {"constants", "control", "pattern", "bs", "ues", "plan"}, strict);

        Scenario s;
        if (doc.contains("constants"))
            parse_constants(doc["constants"], s.constants, strict);
        if (doc.contains("control"))
            parse_control(doc["control"], s.control, strict);
        if (doc.contains("pattern"))
            parse_pattern(doc["pattern"], s.pattern, strict);

        if (!doc.contains("bs"))
            throw ScenarioError("bs", "required");
        s.bs = parse_bs(doc["bs"], strict);

        if (!doc.contains("ues"))
            throw ScenarioError("ues", "required");
        const json &ues = doc["ues"];
        if (!ues.is_array())
            throw ScenarioError("ues", "expected an array");
        if (ues.empty())
            throw ScenarioError("ues", "at least one UE required");
        for (std::size_t i = 0; i < ues.size(); ++i)
            s.ues.push_back(parse_ue(ues[i], s.bs, index("ues", i), strict));

        if (!doc.contains("plan"))
            throw ScenarioError("plan", "required");
        s.plan = parse_plan(doc["plan"], strict);
        s.plan.bandwidth = s.control.bandwidth;

        apply_default_spacings(s, false);
        validate_scenario(s);
        return s;
    }

    Scenario load_scenario(const std::filesystem::path &path, const ParseOptions &options)
    {
        std::ifstream in(path);
        if (!in)
            throw ScenarioError("", "cannot open scenario file " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_scenario(buf.str(), options);
    }

    std::string serialize_scenario(const Scenario &s)
    {
        ojson doc;
        doc["constants"] = ojson{{"z0", s.constants.z0},
                                 {"kappa", s.constants.kappa},
                                 {"c", s.constants.c},
                                 {"temperature", s.constants.temperature}};
        const auto &c = s.control;
        doc["control"] = ojson{{"alpha", c.alpha},
                               {"gamma", c.gamma},
                               {"p_cap_total", c.p_cap_total},
                               {"g_pa_max", number_json(c.g_pa_max)},
                               {"beta", c.beta},
                               {"delta_db", c.delta_db},
                               {"bandwidth", c.bandwidth},
                               {"noise_figure_db", c.noise_figure_db},
                               {"conv_tol", number_json(c.conv_tol)},
                               {"conv_window", c.conv_window},
                               {"max_iters", c.max_iters},
                               {"init_seed", c.init_seed},
                               {"init_phase", c.init_phase == InitPhase::random ? "random" : "zero"}};
        doc["pattern"] = ojson{{"g_max", s.pattern.g_max}, {"q", s.pattern.q}};
        doc["bs"] = ojson{{"position", vec_json(s.bs.position)},
                          {"normal", vec_json(s.bs.normal)},
                          {"tx", lattice_json(s.bs.tx)},
                          {"rx", lattice_json(s.bs.rx)}};
        ojson ues = ojson::array();
        for (const auto &ue : s.ues)
            ues.push_back(ojson{{"link_id", ue.link_id},
                                {"position", vec_json(ue.position)},
                                {"normal", vec_json(ue.normal)},
                                {"tx", lattice_json(ue.tx)},
                                {"rx", lattice_json(ue.rx)}});
        doc["ues"] = ues;
        ojson plan = ojson::array();
        for (const auto &e : s.plan.entries)
            plan.push_back(ojson{{"link_id", e.link_id}, {"f_dl", e.f_dl}, {"f_ul", e.f_ul}});
        doc["plan"] = plan;
        return doc.dump(2);
    }

    Scenario default_two_ue_scenario()
    {
        Scenario s;
        s.bs.role = NodeRole::bs;
        s.bs.position = Vec3::Zero();
        s.bs.normal = Vec3::UnitZ();

        const Vec3 positions[] = {Vec3(1.0, 0.0, 2.0), Vec3(-1.0, 0.0, 2.0)};
        for (int k = 0; k < 2; ++k)
        {
            NodeSpec ue;
            ue.role = NodeRole::ue;
            ue.link_id = k + 1;
            ue.position = positions[k];
            ue.normal = (s.bs.position - ue.position).normalized();
            s.ues.push_back(ue);
        }
        s.plan.entries = {{1, 28.517e9, 29.5e9}, {2, 29e9, 30e9}};
        s.plan.bandwidth = s.control.bandwidth;
        apply_default_spacings(s, true);
        return s;
    }

    std::uint64_t scenario_hash(const Scenario &s)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const unsigned char ch : serialize_scenario(s))
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
}
