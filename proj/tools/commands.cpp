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

#include "commands.hpp"

#include "resbeam/errors.hpp"
#include "resbeam/experiments.hpp"
#include "resbeam/fieldmap.hpp"
#include "resbeam/io.hpp"
#include "resbeam/oracle.hpp"
#include "resbeam/pll_freqplan.hpp"
#include "resbeam/resonance.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>

namespace fs = std::filesystem;

namespace resbeam::cli
{
    namespace
    {
        using ojson = nlohmann::ordered_json;

        std::string default_out_dir()
        {
            const char *env = std::getenv(kOutDirEnv);
            return env != nullptr && *env != '\0' ? env : "out";
        }

        std::string command_line(const std::vector<std::string> &args)
        {
            std::string s = "resbeam";
            for (const auto &a : args)
                s += ' ' + (a.find(' ') == std::string::npos ? a : "'" + a + "'");
            return s;
        }

        // Collects output files for the manifest.
        class Outputs
        {
        public:
            explicit Outputs(fs::path root) : root_(std::move(root)) {}

            const fs::path &root() const { return root_; }
            void add(const fs::path &p) { files_.push_back(fs::relative(p, root_).generic_string()); }
            const std::vector<std::string> &files() const { return files_; }

        private:
            fs::path root_;
            std::vector<std::string> files_;
        };

        void finish_manifest(const Outputs &outputs, const Scenario &s, const std::vector<std::string> &args,
                             std::chrono::steady_clock::time_point start)
        {
            RunManifest m;
            m.scenario_hash = scenario_hash(s);
            m.seed = s.control.init_seed;
            m.command_line = command_line(args);
            m.outputs = outputs.files();
            m.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            m.timestamp = utc_timestamp();
            write_manifest(m, outputs.root() / "manifest.json");
        }

        struct ScenarioOptions
        {
            std::string path;
            std::optional<std::uint64_t> seed;
            std::optional<int> max_iters;
            std::optional<std::string> init_phase;
        };

        void add_scenario_options(CLI::App *cmd, ScenarioOptions &o, bool with_run_flags)
        {
            cmd->add_option("scenario", o.path, "Scenario JSON file")->required();
            if (!with_run_flags)
                return;
            cmd->add_option("--seed", o.seed, "Override control.init_seed");
            cmd->add_option("--max-iters", o.max_iters, "Override control.max_iters")->check(CLI::PositiveNumber);
            cmd->add_option("--init-phase", o.init_phase, "Initial BS phases")
                ->check(CLI::IsMember({"random", "zero"}));
        }

        Scenario load(const ScenarioOptions &o)
        {
            Scenario s = load_scenario(o.path);
            if (o.seed)
                s.control.init_seed = *o.seed;
            if (o.max_iters)
                s.control.max_iters = *o.max_iters;
            if (o.init_phase)
                s.control.init_phase = *o.init_phase == "zero" ? InitPhase::zero : InitPhase::random;
            validate_scenario(s);
            return s;
        }

        // ---- simulate -------------------------------------------------------

        struct SimulateOptions
        {
            ScenarioOptions scenario;
            std::string out_dir;
            bool dump_channels = false;
        };

        int cmd_simulate(const SimulateOptions &o, const std::vector<std::string> &args, std::ostream &out)
        {
            const auto start = std::chrono::steady_clock::now();
            const Scenario s = load(o.scenario);
            const fs::path root(o.out_dir);
            fs::create_directories(root / "maps");
            fs::create_directories(root / "sweeps");
            Outputs outputs(root);

            const ResonanceEngine engine(s);
            const auto traces = engine.run();

            std::vector<LinkSummary> summaries;
            std::vector<LinkPowers> powers;
            bool all_converged = true;
            for (std::size_t k = 0; k < traces.size(); ++k)
            {
                const auto &t = traces[k];
                const auto &link = engine.link(k);
                const fs::path trace_path = root / ("link_" + std::to_string(t.link_id) + "_trace.csv");
                write_trace_csv(t, trace_path);
                outputs.add(trace_path);
                summaries.push_back({&t, compute_link_metrics(s, t, link.bs_rx.size(), link.ue_rx.size())});
                powers.push_back(link_powers(t.last()));
                all_converged = all_converged && t.converged();

                if (o.dump_channels)
                {
                    fs::create_directories(root / "channels");
                    for (const ChannelMatrix *ch : {&link.downlink, &link.uplink})
                    {
                        const fs::path bin = root / "channels" /
                                             ("link_" + std::to_string(t.link_id) + "_" +
                                              (ch->direction == LinkDirection::downlink ? "dl" : "ul") + ".bin");
                        write_channel_dump(*ch, bin);
                        outputs.add(bin);
                        outputs.add(bin.string() + ".json");
                    }
                }

                out << "link " << t.link_id << ": "
                    << (t.converged() ? "converged, I_k = " + std::to_string(*t.iterations_to_converge)
                                      : "NOT converged after " + std::to_string(t.records.size()) + " iterations")
                    << ", loss = " << format_double(t.last().loss) << ", eta_dl = "
                    << format_double(summaries.back().metrics.eta_dl) << '\n';
            }

            const fs::path metrics_path = root / "metrics.txt";
            {
                std::ofstream m(metrics_path);
                write_metrics_report(summaries, efficiencies(powers), m);
            }
            outputs.add(metrics_path);
            finish_manifest(outputs, s, args, start);
            return all_converged ? kExitOk : kExitNotConverged;
        }

        // ---- fieldmap -------------------------------------------------------

        struct FieldmapOptions
        {
            ScenarioOptions scenario;
            std::string out_dir;
            std::string plane = "xoz";
            std::vector<double> origin, axis_u, axis_v, extent;
            std::string at_iteration = "steady";
            std::vector<int> grid;
            double resolution = 0.02;
            int link = 0;
            std::string direction = "dl";
            std::string output;
            bool binary = false;
            bool raw = false;
            bool series = false;
            bool global_norm = false;
        };

        PlaneGrid make_grid(const FieldmapOptions &o, const Scenario &s)
        {
            if (!o.grid.empty() && (o.grid.size() != 2 || o.grid[0] < 2 || o.grid[1] < 2))
                throw std::invalid_argument("--grid needs two sample counts, each >= 2");
            if (o.plane == "custom")
            {
                if (o.origin.size() != 3 || o.axis_u.size() != 3 || o.axis_v.size() != 3 || o.extent.size() != 2)
                    throw std::invalid_argument("--plane custom needs --origin, --axis-u, --axis-v and --extent");
                PlaneGrid g;
                g.origin = Vec3(o.origin[0], o.origin[1], o.origin[2]);
                g.axis_u = Vec3(o.axis_u[0], o.axis_u[1], o.axis_u[2]);
                g.axis_v = Vec3(o.axis_v[0], o.axis_v[1], o.axis_v[2]);
                g.extent_u = o.extent[0];
                g.extent_v = o.extent[1];
                if (o.grid.empty())
                {
                    g.n_u = static_cast<int>(std::ceil(g.extent_u / o.resolution - 1e-9)) + 1;
                    g.n_v = static_cast<int>(std::ceil(g.extent_v / o.resolution - 1e-9)) + 1;
                }
                else
                {
                    g.n_u = o.grid[0];
                    g.n_v = o.grid[1];
                }
                g.validate();
                return g;
            }
            const PlanePreset preset = *parse_plane_preset(o.plane);
            return o.grid.empty() ? plane_preset_resolution(s, preset, o.resolution)
                                  : plane_preset(s, preset, o.grid[0], o.grid[1]);
        }

        FieldMap map_at(const Scenario &s, const ResonanceEngine &engine, const std::vector<ResonanceTrace> &traces,
                        const FieldmapOptions &o, const PlaneGrid &grid, int iteration)
        {
            double reactive = 0.0;
            for (const NodeSpec *n : {&s.bs})
                reactive = std::max({reactive, 2.0 * n->tx.spacing, 2.0 * n->rx.spacing});
            for (const auto &ue : s.ues)
                reactive = std::max({reactive, 2.0 * ue.tx.spacing, 2.0 * ue.rx.spacing});

            std::vector<FieldMap> parts;
            for (std::size_t k = 0; k < traces.size(); ++k)
            {
                if (o.link != 0 && traces[k].link_id != o.link)
                    continue;
                const auto &link = engine.link(k);
                const auto &snap = traces[k].history.at(static_cast<std::size_t>(iteration - 1));
                if (o.direction != "ul")
                    parts.push_back(sample_field(array_sources(link.bs_tx, snap.bs_tx), link.downlink.wavelength,
                                                 s.control.beta, s.pattern, grid, {reactive, Backend::parallel}));
                if (o.direction != "dl")
                    parts.push_back(sample_field(array_sources(link.ue_tx, snap.ue_tx), link.uplink.wavelength,
                                                 s.control.beta, s.pattern, grid, {reactive, Backend::parallel}));
            }
            if (parts.empty())
                throw std::invalid_argument("no link with id " + std::to_string(o.link));
            return combine_incoherent(parts);
        }

        int cmd_fieldmap(const FieldmapOptions &o, const std::vector<std::string> &args, std::ostream &out)
        {
            const auto start = std::chrono::steady_clock::now();
            if (o.global_norm && !o.series)
                throw std::invalid_argument("--global-norm applies to --series output");
            if (o.plane != "custom" && !parse_plane_preset(o.plane))
                throw std::invalid_argument("unknown plane " + o.plane);
            const Scenario s = load(o.scenario);
            const PlaneGrid grid = make_grid(o, s);

            const ResonanceEngine engine(s, {Backend::parallel, true});
            const auto traces = engine.run();
            std::size_t length = traces.front().records.size();
            for (const auto &t : traces)
                length = std::min(length, t.records.size());

            int iteration = 0;
            if (o.at_iteration == "steady")
                iteration = static_cast<int>(length);
            else
            {
                try
                {
                    std::size_t used = 0;
                    iteration = std::stoi(o.at_iteration, &used);
                    if (used != o.at_iteration.size())
                        throw std::invalid_argument("");
                }
                catch (const std::exception &)
                {
                    throw std::invalid_argument("--at-iteration expects a positive integer or 'steady'");
                }
                if (iteration < 1)
                    throw std::invalid_argument("--at-iteration must be >= 1");
                if (static_cast<std::size_t>(iteration) > length)
                    throw std::invalid_argument("iteration " + std::to_string(iteration) +
                                                " beyond trace length " + std::to_string(length));
            }

            const fs::path root(o.out_dir);
            const fs::path csv = o.output.empty() ? root / "maps" / (o.plane + "_" + o.at_iteration + ".csv")
                                                  : fs::path(o.output);
            if (csv.has_parent_path())
                fs::create_directories(csv.parent_path());
            fs::create_directories(root);
            Outputs outputs(root);

            auto emit = [&](const FieldMap &map, const fs::path &path) {
                write_field_map(map, path, o.binary);
                outputs.add(path);
                outputs.add(path.string() + ".json");
                if (o.binary)
                    outputs.add(fs::path(path).replace_extension(".bin"));
                const auto [iu, iv] = map.argmax();
                const Vec3 p = map.grid.point(iu, iv);
                out << path.string() << ": " << map.grid.n_u << " x " << map.grid.n_v
                    << ", peak/mean = " << format_double(map.peak_to_mean()) << ", argmax = (" << format_double(p.x())
                    << ", " << format_double(p.y()) << ", " << format_double(p.z()) << ")\n";
            };

            if (!o.series)
            {
                FieldMap map = map_at(s, engine, traces, o, grid, iteration);
                emit(o.raw ? map : normalize_map(std::move(map)), csv);
            }
            else
            {
                std::vector<FieldMap> maps;
                for (int i = 1; i <= iteration; ++i)
                    maps.push_back(map_at(s, engine, traces, o, grid, i));
                if (o.global_norm)
                    normalize_maps_global(maps);
                else if (!o.raw)
                    for (auto &m : maps)
                        m = normalize_map(std::move(m));
                for (int i = 1; i <= iteration; ++i)
                {
                    fs::path p = csv;
                    p.replace_filename(csv.stem().string() + "_iter" + std::to_string(i) + ".csv");
                    emit(maps[static_cast<std::size_t>(i - 1)], p);
                }
            }
            finish_manifest(outputs, s, args, start);
            return kExitOk;
        }

        // ---- sweep ----------------------------------------------------------

        struct SweepOptions
        {
            ScenarioOptions scenario;
            std::string out_dir;
            std::string kind;
            std::vector<std::string> values;
            double z_ue = 3.0;
            std::string time_model = "literal";
            int symmetrize = 0;
        };

        double to_double(const std::string &text)
        {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size())
                throw std::invalid_argument("not a number: " + text);
            return v;
        }

        int cmd_sweep(const SweepOptions &o, const std::vector<std::string> &args, std::ostream &out)
        {
            const auto start = std::chrono::steady_clock::now();
            Scenario s = load(o.scenario);
            if (o.symmetrize != 0)
                s = frequency_symmetrized(s, o.symmetrize);
            const TimeModel model = *parse_time_model(o.time_model);

            SweepResult result;
            if (o.kind == "array")
            {
                std::vector<std::pair<int, int>> sizes;
                const std::vector<std::string> defaults{"4x4", "8x8", "16x16"};
                for (const auto &v : o.values.empty() ? defaults : o.values)
                {
                    const auto x = v.find('x');
                    if (x == std::string::npos)
                        throw std::invalid_argument("array sizes are written ROWSxCOLS, got " + v);
                    sizes.emplace_back(std::stoi(v.substr(0, x)), std::stoi(v.substr(x + 1)));
                }
                result = array_size_sweep(s, sizes);
            }
            else
            {
                std::vector<double> values;
                for (const auto &v : o.values)
                    values.push_back(to_double(v));
                if (values.empty() && o.kind == "distance")
                    values = {2.0, 2.5, 3.0, 3.5, 4.0};
                if (values.empty())
                    for (int i = -6; i <= 6; ++i)
                        values.push_back(0.25 * i);
                result = o.kind == "distance" ? distance_sweep(s, values) : bs_position_sweep(s, values, o.z_ue);
            }

            const fs::path root(o.out_dir);
            fs::create_directories(root / "sweeps");
            Outputs outputs(root);
            const fs::path csv = root / "sweeps" / (o.kind + ".csv");
            {
                std::ofstream f(csv);
                write_sweep_csv(result, model, f);
            }
            outputs.add(csv);
            ojson meta{{"kind", o.kind},
                       {"parameter", result.parameter},
                       {"time_model", to_string(model)},
                       {"scenario_hash", hex64(scenario_hash(s))},
                       {"seed", s.control.init_seed},
                       {"tool_version", RESBEAM_VERSION}};
            if (o.kind == "bs-position")
                meta["z_ue"] = o.z_ue;
            if (o.symmetrize != 0)
                meta["symmetrized_on_link"] = o.symmetrize;
            {
                std::ofstream f(csv.string() + ".json");
                f << meta.dump(2) << '\n';
            }
            outputs.add(csv.string() + ".json");

            bool converged = true;
            for (const auto &p : result.points)
            {
                converged = converged && p.all_converged();
                out << p.label << ' ' << format_double(p.value) << ": total_efficiency = "
                    << format_double(p.total_efficiency) << ", resonance_time_s = "
                    << format_double(p.resonance_time(model)) << (p.all_converged() ? "" : "  # not converged")
                    << '\n';
            }
            finish_manifest(outputs, s, args, start);
            return converged ? kExitOk : kExitNotConverged;
        }

        // ---- freqplan -------------------------------------------------------

        struct FreqplanOptions
        {
            std::string scenario;
            std::vector<std::string> links;
            std::optional<double> bandwidth;
            double f_ref = 100e6;
            double tol = 1e-3;
            std::int64_t max_denominator = kMaxDividerDenominator;
        };

        Scenario plan_only_scenario(const FreqplanOptions &o)
        {
            Scenario s;
            for (const auto &spec : o.links)
            {
                const auto a = spec.find(':');
                const auto b = spec.find(':', a == std::string::npos ? a : a + 1);
                if (a == std::string::npos || b == std::string::npos)
                    throw std::invalid_argument("--link expects ID:F_DL:F_UL, got " + spec);
                FrequencyEntry e;
                e.link_id = std::stoi(spec.substr(0, a));
                e.f_dl = to_double(spec.substr(a + 1, b - a - 1));
                e.f_ul = to_double(spec.substr(b + 1));
                if (!(e.f_dl > 0.0) || !(e.f_ul > 0.0))
                    throw std::invalid_argument("frequencies must be positive in " + spec);
                s.plan.entries.push_back(e);
                NodeSpec ue;
                ue.link_id = e.link_id;
                s.ues.push_back(ue);
            }
            apply_default_spacings(s, true);
            return s;
        }

        int cmd_freqplan(const FreqplanOptions &o, std::ostream &out)
        {
            if (o.scenario.empty() == o.links.empty())
                throw std::invalid_argument("give either a scenario file or one or more --link entries");
            Scenario s = o.scenario.empty() ? plan_only_scenario(o) : load_scenario(o.scenario);
            if (o.bandwidth)
            {
                if (!(*o.bandwidth > 0.0))
                    throw std::invalid_argument("--bandwidth must be positive");
                s.control.bandwidth = *o.bandwidth;
            }
            s.plan.bandwidth = s.control.bandwidth;
            const double c = s.constants.c;

            out << "[retro]\n";
            for (std::size_t k = 0; k < s.ues.size(); ++k)
            {
                const auto &band = s.band(k);
                const auto &ue = s.ues[k];
                const RetroCheck bs = check_retro_condition(s.bs.rx.spacing, s.bs.tx.spacing, c / band.f_ul,
                                                            c / band.f_dl, o.tol);
                const RetroCheck u = check_retro_condition(ue.rx.spacing, ue.tx.spacing, c / band.f_dl,
                                                           c / band.f_ul, o.tol);
                for (const auto &[name, r] : {std::pair{"bs", bs}, std::pair{"ue", u}})
                    out << name << " link " << band.link_id << ": spacing_ratio = " << format_double(r.ratio_spacing)
                        << ", wavelength_ratio = " << format_double(r.ratio_wavelength)
                        << ", residual = " << format_double(r.residual) << (r.pass ? ", ok" : ", MISMATCH") << '\n';
                out << "bs link " << band.link_id << ": derived f_dl = "
                    << format_double(derive_dl_frequency(band.f_ul, s.bs.rx.spacing, s.bs.tx.spacing)) << '\n';
            }

            const BandPlanReport report = validate_fdma_plan(s.plan);
            out << "\n[fdma]\nbandwidth = " << format_double(s.plan.bandwidth) << '\n';
            for (const auto &b : report.bands)
                out << b.label << " = [" << format_double(b.low) << ", " << format_double(b.high) << "]\n";
            for (const auto &[i, j] : report.pairs())
                out << "overlap " << report.bands[i].label << ' ' << report.bands[j].label << '\n';
            out << "conflicts = " << report.pairs().size() << '\n';

            out << "\n[dividers]\nf_ref = " << format_double(o.f_ref) << '\n';
            for (std::size_t k = 0; k < s.ues.size(); ++k)
            {
                const auto &band = s.band(k);
                const std::pair<const char *, std::pair<double, double>> legs[] = {
                    {"bs", {band.f_ul, band.f_dl}}, {"ue", {band.f_dl, band.f_ul}}};
                for (const auto &[name, f] : legs)
                {
                    out << name << " link " << band.link_id << ": ";
                    try
                    {
                        const DividerRatio r = solve_divider_product(f.first, f.second, 0.0, 0.0, o.f_ref,
                                                                     o.max_denominator);
                        out << "n1/n2 = " << r.n1 << '/' << r.n2 << '\n';
                    }
                    catch (const DividerSearchError &e)
                    {
                        out << "no exact ratio, nearest output " << format_double(e.nearest_frequency()) << " Hz\n";
                    }
                    catch (const InfeasiblePlanError &e)
                    {
                        out << "infeasible: " << e.what() << '\n';
                    }
                }
            }
            return report.clean() ? kExitOk : kExitPlanConflict;
        }

        // ---- oracle ---------------------------------------------------------

        struct OracleOptions
        {
            ScenarioOptions scenario;
            int link = 0;
            bool with_mode = false;
            bool compare = false;
            std::string output;
        };

        int cmd_oracle(const OracleOptions &o, std::ostream &out)
        {
            const Scenario s = load(o.scenario);
            const ResonanceEngine engine(s);
            ojson doc = ojson::array();
            bool found = false;
            for (std::size_t k = 0; k < engine.link_count(); ++k)
            {
                const auto &link = engine.link(k);
                if (o.link != 0 && link.link_id != o.link)
                    continue;
                found = true;
                const auto pred = steady_state_mode(link.downlink, link.uplink, s.control.alpha, s.control.gamma);
                ojson entry{{"link_id", link.link_id},
                            {"dominant_loss", pred.dominant_loss},
                            {"dominant_eigenvalue", {pred.dominant_eigenvalue.real(), pred.dominant_eigenvalue.imag()}},
                            {"gap", pred.gap},
                            {"degenerate", pred.degenerate}};
                if (o.compare)
                {
                    const auto trace = engine.run_link(k);
                    entry["engine_loss"] = trace.last().loss;
                    entry["engine_converged"] = trace.converged();
                    entry["relative_error"] = std::abs(trace.last().loss - pred.dominant_loss) / pred.dominant_loss;
                    const CVector x = trace.history.empty() ? trace.final_state.bs_amplitudes.normalized()
                                                            : trace.history.back().bs_tx.normalized();
                    entry["mode_overlap"] = std::abs(pred.bs_mode.dot(x));
                }
                if (o.with_mode)
                {
                    ojson mode = ojson::array();
                    for (Eigen::Index i = 0; i < pred.bs_mode.size(); ++i)
                        mode.push_back({pred.bs_mode[i].real(), pred.bs_mode[i].imag()});
                    entry["bs_mode"] = mode;
                }
                doc.push_back(entry);
            }
            if (!found)
                throw std::invalid_argument("no link with id " + std::to_string(o.link));
            if (o.output.empty())
                out << doc.dump(2) << '\n';
            else
            {
                std::ofstream f(o.output);
                f << doc.dump(2) << '\n';
                if (!f)
                    throw Error("cannot write " + o.output);
            }
            return kExitOk;
        }
    }

    int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"resbeam: resonant-beam SWIPT link simulator", "resbeam"};
        app.set_version_flag("--version", std::string(RESBEAM_VERSION));
        app.require_subcommand(1);
        int threads = 0;
        app.add_option("--threads", threads, "OpenMP thread count (0 keeps the runtime default)")
            ->check(CLI::NonNegativeNumber);

        SimulateOptions sim;
        sim.out_dir = default_out_dir();
        auto *simulate = app.add_subcommand("simulate", "Run every link to steady state and write traces");
        add_scenario_options(simulate, sim.scenario, true);
        simulate->add_option("-o,--out", sim.out_dir, "Output directory (default $RESBEAM_OUT_DIR or ./out)");
        simulate->add_flag("--dump-channels", sim.dump_channels, "Write channel matrices as binary dumps");

        FieldmapOptions fm;
        fm.out_dir = default_out_dir();
        auto *fieldmap = app.add_subcommand("fieldmap", "Sample the power density on a plane");
        add_scenario_options(fieldmap, fm.scenario, true);
        fieldmap->add_option("--plane", fm.plane, "xoz, xoy-ue, xoy-bs or custom")
            ->check(CLI::IsMember({"xoz", "xoy-ue", "xoy-bs", "custom"}));
        fieldmap->add_option("--origin", fm.origin, "Custom plane center X Y Z")->expected(3);
        fieldmap->add_option("--axis-u", fm.axis_u, "Custom plane u axis")->expected(3);
        fieldmap->add_option("--axis-v", fm.axis_v, "Custom plane v axis")->expected(3);
        fieldmap->add_option("--extent", fm.extent, "Custom plane extents EU EV [m]")->expected(2);
        fieldmap->add_option("--at-iteration", fm.at_iteration, "Iteration number or 'steady'");
        fieldmap->add_option("--grid", fm.grid, "Sample counts NU NV")->expected(2);
        fieldmap->add_option("--resolution", fm.resolution, "Cell size when --grid is absent [m]")
            ->check(CLI::PositiveNumber);
        fieldmap->add_option("--link", fm.link, "Only this link id (default: all links, summed incoherently)");
        fieldmap->add_option("--direction", fm.direction, "dl, ul or both")
            ->check(CLI::IsMember({"dl", "ul", "both"}));
        fieldmap->add_option("-o,--output", fm.output, "CSV path (default <out>/maps/<plane>_<iteration>.csv)");
        fieldmap->add_option("--out-dir", fm.out_dir, "Output directory for the manifest and default paths");
        fieldmap->add_flag("--binary", fm.binary, "Also write a float64 binary grid");
        fieldmap->add_flag("--raw", fm.raw, "Keep W/m^2 instead of normalizing");
        fieldmap->add_flag("--series", fm.series, "Write one map per iteration up to --at-iteration");
        fieldmap->add_flag("--global-norm", fm.global_norm, "Normalize a series by its common maximum");

        SweepOptions sw;
        sw.out_dir = default_out_dir();
        auto *sweep = app.add_subcommand("sweep", "Parameter sweeps over distance, array size or BS position");
        add_scenario_options(sweep, sw.scenario, true);
        sweep->add_option("--kind", sw.kind, "distance, array or bs-position")
            ->required()
            ->check(CLI::IsMember({"distance", "array", "bs-position"}));
        sweep->add_option("--values", sw.values, "Sweep values (meters, or ROWSxCOLS for array)");
        sweep->add_option("--z-ue", sw.z_ue, "UE height for bs-position [m]");
        sweep->add_option("--time-model", sw.time_model, "literal or physical")
            ->check(CLI::IsMember({"literal", "physical"}));
        sweep->add_option("--symmetrize", sw.symmetrize, "Put every link on this link's bands first");
        sweep->add_option("-o,--out", sw.out_dir, "Output directory");

        FreqplanOptions fp;
        auto *freqplan = app.add_subcommand("freqplan", "Check retro-direction, FDMA overlap and PLL dividers");
        freqplan->add_option("scenario", fp.scenario, "Scenario JSON file");
        freqplan->add_option("--link", fp.links, "Inline link ID:F_DL:F_UL (repeatable)");
        freqplan->add_option("--bandwidth", fp.bandwidth, "Sub-band bandwidth [Hz]");
        freqplan->add_option("--f-ref", fp.f_ref, "PLL reference frequency [Hz]")->check(CLI::PositiveNumber);
        freqplan->add_option("--tol", fp.tol, "Retro-direction residual tolerance")->check(CLI::PositiveNumber);
        freqplan->add_option("--max-denominator", fp.max_denominator, "Divider denominator bound")
            ->check(CLI::PositiveNumber);

        OracleOptions orc;
        auto *oracle = app.add_subcommand("oracle", "Steady state from the spectrum of the round-trip operator");
        add_scenario_options(oracle, orc.scenario, true);
        oracle->add_option("--link", orc.link, "Only this link id");
        oracle->add_flag("--with-mode", orc.with_mode, "Include the BS eigenmode");
        oracle->add_flag("--compare", orc.compare, "Also run the engine and report the agreement");
        oracle->add_option("-o,--output", orc.output, "Write JSON here instead of stdout");

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitError;
        }

        if (threads > 0)
            omp_set_num_threads(threads);

        try
        {
            if (simulate->parsed())
                return cmd_simulate(sim, args, out);
            if (fieldmap->parsed())
                return cmd_fieldmap(fm, args, out);
            if (sweep->parsed())
                return cmd_sweep(sw, args, out);
            if (freqplan->parsed())
                return cmd_freqplan(fp, out);
            if (oracle->parsed())
                return cmd_oracle(orc, out);
        }
        catch (const DarkLinkError &e)
        {
            err << "error: " << e.what() << '\n';
            return kExitError;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return kExitError;
        }
        return kExitError;
    }
}
