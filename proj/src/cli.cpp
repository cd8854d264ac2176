/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/cli.hpp"
#include "splitkit/edge_pipeline.hpp"
#include "splitkit/errors.hpp"
#include "splitkit/image_io.hpp"
#include "splitkit/las_split.hpp"
#include "splitkit/metrics.hpp"
#include "splitkit/scene_io.hpp"
#include "splitkit/train2d.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace splitkit {

    namespace {

        struct EdgeMapArgs {
            std::string input;
            std::string output;
            double sigma = kDefaultBlurSigma;
            bool no_nms = false;
            bool no_median = false;
        };

        struct SplitArgs {
            std::string scene;
            std::string mask;
            std::string out;
            SplitConstants constants{};
            std::optional<std::size_t> budget;
        };

        struct TrainArgs {
            std::string target;
            std::int64_t iters = 3000;
            std::uint64_t seed = 0;
            std::optional<std::size_t> budget;
            bool no_densify = false;
            std::string policy = "product";
            std::string optimizer = "adam";
            std::string out_scene;
            std::string out_render;
            std::string trace;
            std::string events;

            std::optional<std::int64_t> densify_interval;
            std::optional<std::int64_t> densify_from;
            std::optional<std::int64_t> densify_until;
            std::optional<std::int64_t> warmup_steps;
            std::optional<double> scale_lr;
            std::optional<double> scale_lr_final;
            std::optional<double> pos_lr;
            std::optional<double> pos_lr_final;
            std::optional<double> grad_threshold;
            std::optional<std::size_t> initial_count;
            std::optional<double> blur_sigma;
        };

        struct MetricsArgs {
            std::string a;
            std::string b;
        };

        struct SynthArgs {
            std::string out;
            int width = 64;
            int height = 64;
        };

        std::string format(const char* fmt, double a, double b) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), fmt, a, b);
            return buf;
        }

        // "0,3,7" or a file holding the same (commas and whitespace both separate)
        std::vector<std::size_t> parse_indices(const std::string& spec) {
            std::string text = spec;
            if (std::filesystem::is_regular_file(spec)) {
                const auto bytes = read_file(spec);
                text.assign(bytes.begin(), bytes.end());
            }
            std::vector<std::size_t> out;
            std::size_t i = 0;
            while (i < text.size()) {
                const char c = text[i];
                if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                    ++i;
                    continue;
                }
                std::size_t v = 0;
                const auto [end, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
                if (ec != std::errc() || end == text.data() + i) {
                    throw DomainError("mask: expected a comma-separated list of indices, got '" + spec + "'");
                }
                out.push_back(v);
                i = std::size_t(end - text.data());
            }
            return out;
        }

        void run_edge_map(const EdgeMapArgs& a, std::ostream& out) {
            const RgbImage img = read_rgb(a.input);
            const GrayImage blurred = gaussian_blur_5x5(to_grayscale(img), a.sigma);
            const GradientField grad = sobel_gradients(blurred);
            GrayImage stage(grad.width, grad.height);
            stage.pixels = grad.magnitude;
            if (!a.no_nms) {
                stage = nms_thin(grad);
            }
            if (a.no_median) {
                for (auto& v : stage.pixels) {
                    v = std::clamp(v, 0.0f, 1.0f);
                }
            } else {
                stage = to_gray_image(median_normalize(stage));
            }
            write_pgm(stage, a.output);
            out << "wrote " << a.output << " (" << stage.width << "x" << stage.height << ")\n";
        }

        template <typename Scene>
        void split_scene(Scene& scene, const SplitArgs& a, std::ostream& out) {
            const auto indices = parse_indices(a.mask);
            const auto mask = mask_from_indices(indices, scene.size());
            const std::size_t before = scene.size();
            scene.set_capacity(a.budget.value_or(before + before));
            const std::size_t n = las_split_batch(scene, mask, a.constants);
            write_scene(scene, a.out);
            out << "split " << n << " of " << before << " primitives; count=" << scene.size() << "\n";
        }

        void run_split(const SplitArgs& a, std::ostream& out) {
            a.constants.validate();
            auto scene = read_scene(a.scene);
            std::visit([&](auto& s) { split_scene(s, a, out); }, scene);
        }

        TrainConfig build_train_config(const TrainArgs& a) {
            TrainConfig cfg = default_train_config(a.iters);
            cfg.seed = a.seed;
            cfg.densify_enabled = !a.no_densify;
            cfg.densify.policy = parse_policy(a.policy);
            if (a.optimizer == "adam") {
                cfg.optimizer = OptimizerKind::Adam;
            } else if (a.optimizer == "sgd") {
                cfg.optimizer = OptimizerKind::Sgd;
            } else {
                throw DomainError("unknown optimizer '" + a.optimizer + "' (expected adam or sgd)");
            }
            if (a.budget) {
                cfg.densify.budget = *a.budget;
            }
            if (a.densify_interval) {
                cfg.densify.interval = *a.densify_interval;
            }
            if (a.densify_from) {
                cfg.densify.window_start = *a.densify_from;
            }
            if (a.densify_until) {
                cfg.densify.window_end = *a.densify_until;
            }
            if (a.warmup_steps) {
                cfg.densify.warmup_steps = *a.warmup_steps;
            }
            if (a.grad_threshold) {
                cfg.densify.grad_threshold = *a.grad_threshold;
            }
            if (a.scale_lr || a.scale_lr_final) {
                cfg.schedules.scale = make_exp_schedule(a.scale_lr.value_or(kScaleLrInit),
                                                        a.scale_lr_final.value_or(kScaleLrFinal), 0, a.iters);
            }
            if (a.pos_lr || a.pos_lr_final) {
                cfg.schedules.position = make_exp_schedule(a.pos_lr.value_or(kPositionLrInit),
                                                           a.pos_lr_final.value_or(kPositionLrFinal), 0, a.iters);
            }
            if (a.initial_count) {
                cfg.initial_count = *a.initial_count;
            }
            if (a.blur_sigma) {
                cfg.blur_sigma = *a.blur_sigma;
            }
            cfg.validate();
            return cfg;
        }

        void run_train(const TrainArgs& a, std::ostream& out) {
            const RgbImage target = read_rgb(a.target);
            const TrainConfig cfg = build_train_config(a);
            const TrainResult r = train(target, cfg);

            if (!a.out_scene.empty()) {
                write_scene(r.scene, a.out_scene);
            }
            if (!a.out_render.empty()) {
                write_ppm(r.final_render, a.out_render);
            }
            if (!a.trace.empty()) {
                const std::string csv = trace_to_csv(r.trace);
                write_file_atomic(a.trace, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
            }
            if (!a.events.empty()) {
                const std::string csv = events_to_csv(r.events);
                write_file_atomic(a.events, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
            }
            out << format("psnr=%.3f ssim=%.3f", r.final_psnr, r.final_ssim) << " count=" << r.scene.size()
                << " splits=" << r.events.size() << "\n";
        }

        void run_metrics(const MetricsArgs& a, std::ostream& out) {
            const RgbImage x = read_rgb(a.a);
            const RgbImage y = read_rgb(a.b);
            out << format("psnr=%.3f ssim=%.3f", psnr(x, y), ssim(x, y)) << "\n";
        }

        void run_synth(const SynthArgs& a, std::ostream& out) {
            write_ppm(make_synthetic_target(a.width, a.height), a.out);
            out << "wrote " << a.out << " (" << a.width << "x" << a.height << ")\n";
        }

        std::string trim(const std::string& s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) {
                return {};
            }
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        // Expands "train2d --config FILE" into "--key=value" arguments for every
        // key in FILE that the command line does not already set. Lines are
        // "key = value"; '#' and ';' start comments, [section] headers are ignored
        // and underscores in keys read as dashes.
        std::vector<std::string> expand_config(const std::vector<std::string>& args) {
            const auto sub = std::find(args.begin(), args.end(), "train2d");
            if (sub == args.end()) {
                return args;
            }
            std::string path;
            for (auto it = sub + 1; it != args.end(); ++it) {
                if (*it == "--config" && it + 1 != args.end()) {
                    path = *(it + 1);
                } else if (it->rfind("--config=", 0) == 0) {
                    path = it->substr(9);
                }
            }
            if (path.empty()) {
                return args;
            }
            auto on_command_line = [&](const std::string& flag) {
                return std::any_of(sub + 1, args.end(), [&](const std::string& a) {
                    return a == flag || a.rfind(flag + "=", 0) == 0;
                });
            };

            const auto bytes = read_file(path);
            const std::string text(bytes.begin(), bytes.end());
            std::vector<std::string> extra;
            std::size_t pos = 0;
            int line_no = 0;
            while (pos <= text.size()) {
                auto nl = text.find('\n', pos);
                if (nl == std::string::npos) {
                    nl = text.size();
                }
                std::string line = text.substr(pos, nl - pos);
                pos = nl + 1;
                ++line_no;
                if (const auto c = line.find_first_of("#;"); c != std::string::npos) {
                    line.resize(c);
                }
                line = trim(line);
                if (line.empty() || line.front() == '[') {
                    continue;
                }
                const auto eq = line.find('=');
                if (eq == std::string::npos) {
                    throw FormatError(FormatError::Code::MalformedHeader,
                                      path + ":" + std::to_string(line_no) + ": expected key=value");
                }
                std::string key = trim(line.substr(0, eq));
                std::string value = trim(line.substr(eq + 1));
                if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
                    value = value.substr(1, value.size() - 2);
                }
                std::replace(key.begin(), key.end(), '_', '-');
                const std::string flag = "--" + key;
                if (!on_command_line(flag)) {
                    extra.push_back(flag + "=" + value);
                }
            }
            std::vector<std::string> out(args.begin(), sub + 1);
            out.insert(out.end(), extra.begin(), extra.end());
            out.insert(out.end(), sub + 1, args.end());
            return out;
        }

        int fail(std::ostream& err, int code, const std::string& what) {
            std::string line = what;
            std::replace(line.begin(), line.end(), '\n', ' ');
            err << "splitkit: error: " << line << "\n";
            return code;
        }

    } // namespace

    int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        CLI::App app{"Edge-aware Gaussian densification toolkit", "splitkit"};
        app.require_subcommand(1);

        EdgeMapArgs edge;
        auto* edge_cmd = app.add_subcommand("edge-map", "Write the edge-importance map of an image as PGM");
        edge_cmd->add_option("--input", edge.input, "Input PPM or PGM")->required();
        edge_cmd->add_option("--output", edge.output, "Output PGM")->required();
        edge_cmd->add_option("--sigma", edge.sigma, "Blur sigma")->capture_default_str();
        edge_cmd->add_flag("--no-nms", edge.no_nms, "Skip non-maximum suppression");
        edge_cmd->add_flag("--no-median", edge.no_median, "Skip median normalization (clamp to [0,1] instead)");

        SplitArgs split;
        auto* split_cmd = app.add_subcommand("split", "Long-axis split of selected primitives");
        split_cmd->add_option("--scene", split.scene, "Input scene file")->required();
        split_cmd->add_option("--mask", split.mask, "Indices to split, comma separated, or a file of them")->required();
        split_cmd->add_option("--out", split.out, "Output scene file")->required();
        split_cmd->add_option("--alpha", split.constants.alpha, "Long-axis shrink")->capture_default_str();
        split_cmd->add_option("--gamma", split.constants.gamma_axis, "Secondary-axis shrink")->capture_default_str();
        split_cmd->add_option("--beta", split.constants.beta, "Opacity factor")->capture_default_str();
        split_cmd->add_option("--budget", split.budget, "Maximum primitive count (default: twice the input)");

        TrainArgs tr;
        auto* train_cmd = app.add_subcommand("train2d", "Fit a 2D Gaussian scene to an image");
        std::string config_path;
        train_cmd->add_option("--config", config_path, "key=value file; command-line flags take precedence");
        train_cmd->add_option("--target", tr.target, "Target PPM or PGM")->required();
        train_cmd->add_option("--iters", tr.iters, "Iterations")->capture_default_str()->check(CLI::PositiveNumber);
        train_cmd->add_option("--seed", tr.seed, "Random seed")->capture_default_str();
        train_cmd->add_option("--budget", tr.budget, "Maximum primitive count");
        train_cmd->add_flag("--no-densify", tr.no_densify, "Disable densification");
        train_cmd->add_option("--policy", tr.policy, "Candidate scoring")
            ->capture_default_str()
            ->check(CLI::IsMember({"product", "edge", "grad"}));
        train_cmd->add_option("--optimizer", tr.optimizer, "adam or sgd")->capture_default_str();
        train_cmd->add_option("--out-scene", tr.out_scene, "Write the fitted scene");
        train_cmd->add_option("--out-render", tr.out_render, "Write the final render as PPM");
        train_cmd->add_option("--trace", tr.trace, "Write the per-iteration trace CSV");
        train_cmd->add_option("--events", tr.events, "Write the densify event CSV");
        train_cmd->add_option("--densify-interval", tr.densify_interval, "Iterations between densify steps");
        train_cmd->add_option("--densify-from", tr.densify_from, "First densify iteration");
        train_cmd->add_option("--densify-until", tr.densify_until, "Last densify iteration");
        train_cmd->add_option("--warmup-steps", tr.warmup_steps, "Edge-only densify steps");
        train_cmd->add_option("--scale-lr", tr.scale_lr, "Initial scale learning rate");
        train_cmd->add_option("--scale-lr-final", tr.scale_lr_final, "Final scale learning rate");
        train_cmd->add_option("--pos-lr", tr.pos_lr, "Initial position learning rate");
        train_cmd->add_option("--pos-lr-final", tr.pos_lr_final, "Final position learning rate");
        train_cmd->add_option("--grad-threshold", tr.grad_threshold, "Densify gradient threshold (inf allowed)");
        train_cmd->add_option("--initial-count", tr.initial_count, "Primitives at initialization");
        train_cmd->add_option("--blur-sigma", tr.blur_sigma, "Edge-map blur sigma");

        MetricsArgs met;
        auto* metrics_cmd = app.add_subcommand("metrics", "PSNR and SSIM between two images");
        metrics_cmd->add_option("--a", met.a, "First image")->required();
        metrics_cmd->add_option("--b", met.b, "Second image")->required();

        SynthArgs syn;
        auto* synth_cmd = app.add_subcommand("synth", "Write the synthetic square-on-gradient target");
        synth_cmd->add_option("--out", syn.out, "Output PPM")->required();
        synth_cmd->add_option("--width", syn.width)->capture_default_str()->check(CLI::PositiveNumber);
        synth_cmd->add_option("--height", syn.height)->capture_default_str()->check(CLI::PositiveNumber);

        std::vector<std::string> expanded;
        try {
            expanded = expand_config(args);
        } catch (const IoError& e) {
            return fail(err, kExitIo, e.what());
        } catch (const FormatError& e) {
            return fail(err, kExitIo, e.what());
        }

        try {
            // CLI11 consumes a vector in reverse order
            std::vector<std::string> rev(expanded.rbegin(), expanded.rend());
            app.parse(rev);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::ParseError& e) {
            err << app.help();
            return fail(err, kExitUsage, e.what());
        }

        try {
            if (edge_cmd->parsed()) {
                run_edge_map(edge, out);
            } else if (split_cmd->parsed()) {
                run_split(split, out);
            } else if (train_cmd->parsed()) {
                run_train(tr, out);
            } else if (metrics_cmd->parsed()) {
                run_metrics(met, out);
            } else if (synth_cmd->parsed()) {
                run_synth(syn, out);
            }
        } catch (const IoError& e) {
            return fail(err, kExitIo, e.what());
        } catch (const FormatError& e) {
            return fail(err, kExitIo, e.what());
        } catch (const BudgetError& e) {
            return fail(err, kExitInvalid, std::string("budget exceeded: ") + e.what());
        } catch (const DomainError& e) {
            return fail(err, kExitInvalid, e.what());
        } catch (const std::exception& e) {
            return fail(err, kExitInvalid, e.what());
        }
        return kExitOk;
    }

} // namespace splitkit
