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

#include "generators.hpp"

#include "resbeam/errors.hpp"
#include "resbeam/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace resbeam;

namespace
{
    // Runs parse_scenario and returns the error path, or "<ok>".
    std::string error_path(const std::string &doc, ParseOptions opts = {})
    {
        try
        {
            parse_scenario(doc, opts);
            return "<ok>";
        }
        catch (const ScenarioError &e)
        {
            return e.path();
        }
    }

    std::string error_message(const std::string &doc)
    {
        try
        {
            parse_scenario(doc);
            return "<ok>";
        }
        catch (const ScenarioError &e)
        {
            return e.what();
        }
    }

    const std::string kMinimal = R"({
        "bs": {"position": [0,0,0]},
        "ues": [{"link_id": 1, "position": [1,0,2]}],
        "plan": [{"link_id": 1, "f_dl": 29e9, "f_ul": 30e9}]
    })";

    std::string with(const std::string &patch_key, const std::string &patch_value)
    {
        // Builds a document from kMinimal-like parts with one top-level section replaced.
        std::string bs = R"({"position": [0,0,0]})";
        std::string ues = R"([{"link_id": 1, "position": [1,0,2]}])";
        std::string plan = R"([{"link_id": 1, "f_dl": 29e9, "f_ul": 30e9}])";
        std::string extra;
        if (patch_key == "bs")
            bs = patch_value;
        else if (patch_key == "ues")
            ues = patch_value;
        else if (patch_key == "plan")
            plan = patch_value;
        else
            extra = ",\"" + patch_key + "\": " + patch_value;
        return "{\"bs\": " + bs + ", \"ues\": " + ues + ", \"plan\": " + plan + extra + "}";
    }
}

TEST_CASE("omitted fields take the documented defaults")
{
    const Scenario s = parse_scenario(kMinimal);
    CHECK(s.constants.z0 == 377.0);
    CHECK(s.constants.kappa == 1.38e-23);
    CHECK(s.constants.c == 2.99792458e8);
    CHECK(s.constants.temperature == 295.0);
    CHECK(s.control.alpha == 0.995);
    CHECK(s.control.gamma == 0.995);
    CHECK(s.control.p_cap_total == 20.0);
    CHECK(s.control.g_pa_max == 1e9);
    CHECK(s.control.beta == 2.0);
    CHECK(s.control.delta_db == 3.0);
    CHECK(s.control.bandwidth == 1e9);
    CHECK(s.control.noise_figure_db == 6.0);
    CHECK(s.control.conv_tol == 1e-4);
    CHECK(s.control.conv_window == 3);
    CHECK(s.control.max_iters == 200);
    CHECK(s.control.init_phase == InitPhase::random);
    CHECK(s.pattern.g_max == doctest::Approx(std::pow(10.0, 0.497)).epsilon(1e-15));
    CHECK(linear_to_db(s.pattern.g_max) == doctest::Approx(4.97).epsilon(1e-12));
    CHECK(s.bs.normal == Vec3::UnitZ());
    CHECK(s.bs.tx.rows == 30);
    CHECK(s.bs.rx.cols == 30);
}

TEST_CASE("default two-UE scenario carries the reference frequency plan and spacings")
{
    const Scenario s = default_two_ue_scenario();
    REQUIRE(s.ues.size() == 2);
    CHECK(s.plan.at(1).f_dl == 28.517e9);
    CHECK(s.plan.at(1).f_ul == 29.5e9);
    CHECK(s.plan.at(2).f_dl == 29e9);
    CHECK(s.plan.at(2).f_ul == 30e9);

    // BS lattices follow the highest bands: 0.50 cm receive, 0.52 cm transmit when rounded.
    CHECK(s.bs.rx.spacing == doctest::Approx(0.0050).epsilon(0.01));
    CHECK(s.bs.tx.spacing == doctest::Approx(0.0052).epsilon(0.01));
    CHECK(s.bs.rx.spacing == s.constants.c / 30e9 / 2.0);
    CHECK(s.bs.tx.spacing == s.constants.c / 29e9 / 2.0);

    // Per-node rule at the UEs: receive on the DL band, transmit on the UL band.
    CHECK(s.ues[0].rx.spacing == s.constants.c / 28.517e9 / 2.0);
    CHECK(s.ues[0].tx.spacing == s.constants.c / 29.5e9 / 2.0);

    CHECK(s.ues[0].position == Vec3(1, 0, 2));
    CHECK(s.ues[1].position == Vec3(-1, 0, 2));
    for (const auto &ue : s.ues)
    {
        CHECK(ue.normal.norm() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(ue.normal.dot((s.bs.position - ue.position).normalized()) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_NOTHROW(validate_scenario(s));
}

TEST_CASE("shipped example file parses to the built-in default")
{
    const auto path = std::filesystem::path(RESBEAM_SOURCE_DIR) / "scenarios" / "default_two_ue.json";
    CHECK(load_scenario(path) == default_two_ue_scenario());
}

TEST_CASE("serialization round-trip is lossless")
{
    SUBCASE("default scenario")
    {
        const Scenario s = default_two_ue_scenario();
        CHECK(parse_scenario(serialize_scenario(s)) == s);
    }
    SUBCASE("infinite tolerance and zero-phase mode survive")
    {
        Scenario s = default_two_ue_scenario();
        s.control.conv_tol = std::numeric_limits<double>::infinity();
        s.control.init_phase = InitPhase::zero;
        s.control.init_seed = 0xffffffffffffffffULL;
        CHECK(parse_scenario(serialize_scenario(s)) == s);
    }
    SUBCASE("random small scenarios")
    {
        gen::Rng rng(20261016);
        for (int i = 0; i < 50; ++i)
        {
            gen::SmallScenarioOptions o;
            o.split_frequencies = rng.coin();
            o.max_ues = 4;
            Scenario s = gen::small_scenario(rng, o);
            s.control.alpha = rng.uniform(0.01, 0.99);
            s.control.beta = rng.uniform(0.0, 4.0);
            s.pattern.q = rng.uniform(0.0, 3.0);
            s.bs.position = Vec3(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
            for (auto &ue : s.ues)
            {
                ue.position += s.bs.position;
                ue.normal = rng.unit_vector();
            }
            s.bs.normal = rng.unit_vector();
            CHECK(parse_scenario(serialize_scenario(s)) == s);
        }
    }
}

TEST_CASE("invariant violations name the field")
{
    CHECK(error_path(with("control", R"({"alpha": 1.2})")) == "control.alpha");
    CHECK(error_message(with("control", R"({"alpha": 1.2})")).find("alpha must lie in (0,1)") != std::string::npos);
    CHECK(error_path(with("control", R"({"gamma": 0})")) == "control.gamma");
    CHECK(error_path(with("control", R"({"p_cap_total": -1})")) == "control.p_cap_total");
    CHECK(error_path(with("control", R"({"beta": -0.5})")) == "control.beta");
    CHECK(error_path(with("control", R"({"conv_tol": 0})")) == "control.conv_tol");
    CHECK(error_path(with("control", R"({"max_iters": 0})")) == "control.max_iters");
    CHECK(error_path(with("control", R"({"init_phase": "sideways"})")) == "control.init_phase");
    CHECK(error_path(with("constants", R"({"temperature": 0})")) == "constants.temperature");
    CHECK(error_path(with("bs", R"({"position": [0,0,0], "normal": [0,0,0]})")) == "bs.normal");
    CHECK(error_path(with("bs", R"({"position": [0,0,0], "tx": {"rows": 0}})")) == "bs.tx");
    CHECK(error_path(with("bs", R"({"position": [0,0,0], "rx": {"spacing": -1}})")) == "bs.rx.spacing");
    CHECK(error_path(with("bs", R"({"position": [0,0]})")) == "bs.position");
    CHECK(error_path(with("plan", R"([{"link_id": 1, "f_dl": 0, "f_ul": 30e9}])")) == "plan[0].f_dl");
    CHECK(error_path(with("plan", R"([{"link_id": 2, "f_dl": 29e9, "f_ul": 30e9}])")) == "ues[0].link_id");
    CHECK(error_path(with("plan", R"([{"link_id": 1, "f_dl": 29e9}])")) == "plan[0].f_ul");
    CHECK(error_path(with("ues", R"([{"link_id": 1, "position": [0,0,0]}])")) == "ues[0].normal");
    CHECK(error_path(with("ues", R"([{"link_id": 1, "position": [1,0,2]}, {"link_id": 1, "position": [2,0,2]}])")) ==
          "ues[1].link_id");
}

TEST_CASE("empty UE list is rejected")
{
    CHECK(error_message(with("ues", "[]")).find("at least one UE required") != std::string::npos);
    CHECK(error_path(with("ues", "[]")) == "ues");
    Scenario s = default_two_ue_scenario();
    s.ues.clear();
    CHECK_THROWS_WITH_AS(validate_scenario(s), doctest::Contains("at least one UE required"), ScenarioError);
}

TEST_CASE("unknown keys are rejected only in strict mode")
{
    const std::string doc = with("control", R"({"alpah": 0.5})");
    CHECK(error_path(doc) == "control.alpah");
    CHECK(error_path(doc, ParseOptions{false}) == "<ok>");
    CHECK(error_path(with("extra_section", "{}")) == "extra_section");
}

TEST_CASE("malformed and missing documents give structured errors")
{
    CHECK_THROWS_AS(parse_scenario("{ not json"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("[]"), ScenarioError);
    CHECK(error_path(R"({"ues": [], "plan": []})") == "bs");
    CHECK_THROWS_WITH_AS(load_scenario("/nonexistent/dir/scenario.json"),
                         doctest::Contains("/nonexistent/dir/scenario.json"), ScenarioError);
}

TEST_CASE("polar UE placement is converted relative to the BS boresight")
{
    const Scenario s = parse_scenario(R"({
        "bs": {"position": [1,2,3]},
        "ues": [{"link_id": 1, "position": {"range": 2, "elevation_deg": 90, "azimuth_deg": 90}},
                {"link_id": 2, "position": {"range": 3}}],
        "plan": [{"link_id": 1, "f_dl": 29e9, "f_ul": 30e9}, {"link_id": 2, "f_dl": 28e9, "f_ul": 28e9}]
    })");
    // +z boresight: lattice u = +x, v = +y, so azimuth 90 deg points along +y.
    CHECK((s.ues[0].position - Vec3(1, 4, 3)).norm() < 1e-12);
    CHECK((s.ues[1].position - Vec3(1, 2, 6)).norm() < 1e-12);
    CHECK((s.ues[1].normal - Vec3(0, 0, -1)).norm() < 1e-15);
}

TEST_CASE("explicit spacings and sizes override the rules")
{
    const Scenario s = parse_scenario(R"({
        "bs": {"position": [0,0,0], "tx": {"rows": 4, "cols": 5, "spacing": 0.01}},
        "ues": [{"link_id": 1, "position": [0,0,2], "rx": {"rows": 2, "cols": 3, "spacing": 0.02}}],
        "plan": [{"link_id": 1, "f_dl": 29e9, "f_ul": 30e9}]
    })");
    CHECK(s.bs.tx == LatticeSpec{4, 5, 0.01});
    CHECK(s.bs.rx.spacing == s.constants.c / 30e9 / 2.0);
    CHECK(s.ues[0].rx == LatticeSpec{2, 3, 0.02});
    // UE transmit lattice defaults to the BS transmit size.
    CHECK(s.ues[0].tx.rows == 4);
    CHECK(s.ues[0].tx.cols == 5);
    CHECK(s.ues[0].tx.spacing == s.constants.c / 30e9 / 2.0);
}

TEST_CASE("non-unit normals are normalized, unit normals kept bit-exact")
{
    const Scenario s = parse_scenario(with("bs", R"({"position": [0,0,0], "normal": [0,0,5]})"));
    CHECK(s.bs.normal == Vec3::UnitZ());
    const double c = std::sqrt(0.5);
    const std::string doc = with("bs", "{\"position\": [0,0,0], \"normal\": [0, " + std::to_string(c) + ", " +
                                           std::to_string(c) + "]}");
    CHECK(std::abs(parse_scenario(doc).bs.normal.norm() - 1.0) <= 1e-12);
}

TEST_CASE("scenario hash is stable and sensitive")
{
    const Scenario a = default_two_ue_scenario();
    Scenario b = a;
    CHECK(scenario_hash(a) == scenario_hash(b));
    b.control.init_seed = 2;
    CHECK(scenario_hash(a) != scenario_hash(b));
}

TEST_CASE("direction_from_angles is a unit vector at the requested angle from boresight")
{
    gen::Rng rng(7);
    for (int i = 0; i < 100; ++i)
    {
        const Vec3 n = rng.unit_vector();
        const double el = rng.uniform(0, 180), az = rng.uniform(-180, 180);
        const Vec3 d = direction_from_angles(n, el, az);
        CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::atan2(n.cross(d).norm(), n.dot(d)) * 180.0 / M_PI == doctest::Approx(el).epsilon(1e-9));
    }
}
