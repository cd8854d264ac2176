/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

// Acceptance checks, one PASS/FAIL line each; exits non-zero if any fails.

#include "splitkit/edge_pipeline.hpp"
#include "splitkit/errors.hpp"
#include "splitkit/image_io.hpp"
#include "splitkit/las_split.hpp"
#include "splitkit/reference.hpp"
#include "splitkit/render2d.hpp"
#include "splitkit/scene_io.hpp"
#include "splitkit/schedule.hpp"
#include "splitkit/train2d.hpp"
#include "gradcheck.hpp"
#include "test_support.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace splitkit;

namespace {

    // Failures collect here; the first few are printed under the check.
    struct Check {
        std::vector<std::string> problems;

        void expect(bool ok, const std::string& what) {
            if (!ok) {
                problems.push_back(what);
            }
        }
        void near(double got, double want, double tol, const std::string& what) {
            if (!(std::abs(got - want) <= tol)) {
                std::ostringstream s;
                s.precision(12);
                s << what << ": got " << got << " want " << want << " tol " << tol;
                problems.push_back(s.str());
            }
        }
        void rel(double got, double want, double tol, const std::string& what) {
            near(got / want, 1.0, tol, what);
        }
    };

    struct Criterion {
        int id;
        const char* name;
        double time_limit_s; // <= 0 means untimed
        std::function<void(Check&)> body;
    };

    int failures = 0;

    void run(const Criterion& c) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(check);
        } catch (const std::exception& e) {
            check.problems.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
            std::ostringstream s;
            s << "took " << secs << " s, limit " << c.time_limit_s << " s";
            check.problems.push_back(s.str());
        }
        const bool ok = check.problems.empty();
        failures += ok ? 0 : 1;
        std::printf("%s [%d] %s (%.3f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, secs);
        for (std::size_t i = 0; i < std::min<std::size_t>(check.problems.size(), 5); ++i) {
            std::printf("    %s\n", check.problems[i].c_str());
        }
        if (check.problems.size() > 5) {
            std::printf("    ... %zu more\n", check.problems.size() - 5);
        }
        std::fflush(stdout);
    }

    void las_algebra(Check& c) {
        std::mt19937_64 rng(101);
        const SplitConstants k;
        for (int t = 0; t < 10000; ++t) {
            const Gaussian3 g = fixtures::random_gaussian3(rng);
            const auto [p, m] = las_split_one(g, k);
            const int axis = principal_axis(g.log_scale);
            const std::string tag = "primitive " + std::to_string(t);
            double d2 = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                c.near(0.5 * (double(p.position[i]) + m.position[i]), g.position[i], 1e-6, tag + " midpoint");
                const double d = 0.5 * (double(p.position[i]) - m.position[i]);
                d2 += d * d;
                const double want = int(i) == axis ? 0.5 : 0.85;
                c.rel(std::exp(double(p.log_scale[i])) / std::exp(double(g.log_scale[i])), want, 1e-6,
                      tag + " scale ratio");
                c.rel(std::exp(double(m.log_scale[i])) / std::exp(double(g.log_scale[i])), want, 1e-6,
                      tag + " scale ratio");
            }
            c.rel(std::sqrt(d2), 0.5 * std::exp(double(g.log_scale[std::size_t(axis)])), 1e-6, tag + " offset");
            c.rel(sigmoid(p.opacity_logit) / sigmoid(g.opacity_logit), 0.6, 1e-6, tag + " opacity ratio");
            c.rel(sigmoid(m.opacity_logit) / sigmoid(g.opacity_logit), 0.6, 1e-6, tag + " opacity ratio");
        }
    }

    void column_extraction(Check& c) {
        std::mt19937_64 rng(102);
        std::uniform_real_distribution<double> mag(0.01, 10.0);
        for (int t = 0; t < 10000; ++t) {
            const Mat3d r = quat_to_rotmat(fixtures::random_unit_quat(rng));
            const int axis = t % 3;
            const double s = mag(rng);
            Vec3d e{0.0, 0.0, 0.0};
            e[std::size_t(axis)] = s;
            const Vec3d got = axis_displacement(r, axis, s);
            for (std::size_t row = 0; row < 3; ++row) {
                double want = 0.0;
                for (std::size_t col = 0; col < 3; ++col) {
                    want += r[row * 3 + col] * e[col];
                }
                c.near(got[row], want, 1e-7, "matrix " + std::to_string(t));
            }
        }
    }

    void batch_vs_sequential(Check& c) {
        std::mt19937_64 rng(103);
        std::uniform_int_distribution<std::size_t> size(1, 64);
        std::bernoulli_distribution pick(0.4);
        for (int t = 0; t < 1000; ++t) {
            const std::size_t n = size(rng);
            SplitMask mask(n);
            for (auto& m : mask) {
                m = pick(rng) ? 1 : 0;
            }
            const std::string tag = "scene " + std::to_string(t);
            if (t % 2 == 0) {
                Scene3 a = fixtures::random_scene3(rng, n, 2 * n);
                Scene3 b = a;
                las_split_batch(a, mask);
                reference::las_split_sequential(b, mask, {});
                c.expect(encode_scene(a) == encode_scene(b), tag + " (3D) differs");
            } else {
                Scene2 a = fixtures::random_scene2(rng, n, 2 * n);
                Scene2 b = a;
                las_split_batch(a, mask);
                reference::las_split_sequential(b, mask, {});
                c.expect(encode_scene(a) == encode_scene(b), tag + " (2D) differs");
            }
        }
    }

    void edge_suite(Check& c) {
        constexpr int n = 128;
        for (double sigma : {0.5, 1.0, 1.4, 2.0}) {
            const auto k = blur_kernel_5x5(sigma);
            double sum = 0.0;
            for (double v : k) {
                sum += v;
            }
            c.near(sum, 1.0, 1e-7, "kernel sum");
        }

        GrayImage flat(n, n);
        std::fill(flat.pixels.begin(), flat.pixels.end(), 0.37f);
        const GrayImage blurred = gaussian_blur_5x5(flat, 1.0);
        for (float v : blurred.pixels) {
            c.near(v, 0.37, 1e-6, "constant image");
        }

        std::mt19937_64 rng(104);
        const GradientField f = sobel_gradients(gaussian_blur_5x5(fixtures::random_gray(rng, n, n), 1.0));
        const GrayImage once = nms_thin(f);
        GradientField again = f;
        again.magnitude = once.pixels;
        c.expect(nms_thin(again) == once, "nms not idempotent");
        for (std::size_t i = 0; i < once.size(); ++i) {
            if (once.pixels[i] != 0.0f && once.pixels[i] != f.magnitude[i]) {
                c.expect(false, "nms output not a subset at " + std::to_string(i));
            }
        }

        GrayImage step(n, n);
        for (int y = 0; y < n; ++y) {
            for (int x = n / 2; x < n; ++x) {
                step.at(x, y) = 1.0f;
            }
        }
        const GrayImage line = nms_thin(sobel_gradients(gaussian_blur_5x5(step, 1.0)));
        for (int y = 1; y < n - 1; ++y) {
            int width = 0;
            for (int x = 0; x < n; ++x) {
                width += line.at(x, y) > 0.0f ? 1 : 0;
            }
            c.expect(width == 1, "step edge row " + std::to_string(y) + " has " + std::to_string(width) + " px");
        }

        // square covers pixels [40, 88); its outline sits half a pixel outside
        const ImportanceMap m = importance_pipeline(fixtures::white_square(n, n, 40, 40, 88, 88));
        const double lo = 39.5, hi = 87.5;
        int on_outline = 0;
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                if (m.at(x, y) <= 0.0f) {
                    continue;
                }
                const bool inside = x >= lo && x <= hi && y >= lo && y <= hi;
                const double dist = inside ? std::min({x - lo, hi - x, y - lo, hi - y})
                                           : std::hypot(std::max({lo - x, 0.0, x - hi}), std::max({lo - y, 0.0, y - hi}));
                c.expect(dist <= 2.0, "edge pixel " + std::to_string(x) + "," + std::to_string(y) + " off the outline");
                ++on_outline;
            }
        }
        c.expect(on_outline >= 4 * 40, "outline too sparse: " + std::to_string(on_outline));
    }

    void scheduler_endpoints(Check& c) {
        const Schedules s = default_schedules(kDefaultTotalIterations);
        c.expect(lr_at(s.scale, 0) == 0.020, "scale lr at step 0 is not exactly 0.020");
        c.near(lr_at(s.scale, kDefaultTotalIterations), 0.002, 1e-9, "final scale lr");
        c.near(lr_at(s.position, 0), 0.000128, 1e-12, "initial position lr");
        c.near(lr_at(s.position, kDefaultTotalIterations), 0.0000128, 1e-12, "final position lr");

        const DensifyConfig d;
        int steps = 0, warmups = 0;
        for (std::int64_t t = 0; t <= kDefaultTotalIterations; ++t) {
            steps += is_densify_step(d, t) ? 1 : 0;
            warmups += is_warmup_step(d, t) ? 1 : 0;
        }
        c.expect(steps == 30, "densify steps: " + std::to_string(steps));
        c.expect(warmups == 3, "warm-up steps: " + std::to_string(warmups));
    }

    void gradient_check(Check& c) {
        RenderParams p;
        p.width = 16;
        p.height = 16;
        // wide cutoff so the truncation edge never lands inside a finite-difference step
        p.footprint_cutoff = 20.0;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            std::mt19937_64 rng(seed);
            const Scene2d s = fixtures::random_scene2(rng, 3, 3).cast<double>();
            const RgbImage target = fixtures::random_rgb(rng, 16, 16);
            const Gradients g = backward(s, target, p);
            const auto r = fixtures::grad_check(s, g, target, p, 1e-3);
            c.expect(r.max_rel_error < 1e-3,
                     "seed " + std::to_string(seed) + " rel error " + std::to_string(r.max_rel_error) + " at " + r.worst);
        }
    }

    // Smallest densify-over-baseline PSNR gain accepted for the paired run.
    // Calibration at seeds 0..4 gave gains between 8.4 and 9.6 dB.
    constexpr double kFrozenMarginDb = 3.0;

    void end_to_end(Check& c) {
        omp_set_num_threads(1);
        const RgbImage target = std::get<RgbImage>(decode_netpbm(encode_ppm(make_synthetic_target(64, 64))));

        TrainConfig densify = default_train_config(3000);
        densify.seed = 0;
        densify.densify.budget = 1000;
        TrainConfig baseline = densify;
        baseline.densify_enabled = false;

        const TrainResult a = train(target, densify);
        const TrainResult b = train(target, baseline);
        std::printf("    densify psnr %.3f (count %zu), no-densify psnr %.3f (count %zu)\n", a.final_psnr,
                    a.scene.size(), b.final_psnr, b.scene.size());
        c.expect(a.final_psnr >= b.final_psnr + kFrozenMarginDb,
                 "psnr gain " + std::to_string(a.final_psnr - b.final_psnr) + " dB below the frozen margin");
        c.expect(a.scene.size() <= densify.densify.budget, "densify run exceeded its budget");

        TrainConfig tight = densify;
        tight.densify.budget = 80;
        const TrainResult t = train(target, tight);
        c.expect(t.scene.size() <= 80, "tight budget exceeded: " + std::to_string(t.scene.size()));
        for (const auto& row : t.trace) {
            if (row.count > 80) {
                c.expect(false, "count " + std::to_string(row.count) + " over budget at iter " + std::to_string(row.iter));
                break;
            }
        }

        TrainConfig edge_only = densify;
        edge_only.densify.grad_threshold = std::numeric_limits<double>::infinity();
        const TrainResult w = train(target, edge_only);
        c.expect(w.events.size() == 30, "expected 30 densify events, got " + std::to_string(w.events.size()));
        for (std::size_t i = 0; i < w.events.size(); ++i) {
            const auto& e = w.events[i];
            if (i < 3) {
                c.expect(e.split > 0, "no split at warm-up step " + std::to_string(e.step));
            } else {
                c.expect(e.split == 0, "split after warm-up at step " + std::to_string(e.step));
            }
        }
        omp_set_num_threads(omp_get_num_procs());
    }

    void determinism(Check& c) {
        const fixtures::TempDir dir("acceptance");
        const RgbImage target = make_synthetic_target(32, 32);
        TrainConfig cfg = default_train_config(400);
        cfg.seed = 7;
        cfg.initial_count = 32;

        std::vector<std::uint8_t> trace[2], scene[2];
        for (int run = 0; run < 2; ++run) {
            const TrainResult r = train(target, cfg);
            const std::string csv = trace_to_csv(r.trace);
            const auto path = dir.file("trace" + std::to_string(run) + ".csv");
            write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(csv.data()), csv.size()));
            trace[run] = read_file(path);
            const auto scene_path = dir.file("scene" + std::to_string(run) + ".bin");
            write_scene(r.scene, scene_path);
            scene[run] = read_file(scene_path);
        }
        c.expect(!trace[0].empty() && trace[0] == trace[1], "trace CSVs differ");
        c.expect(!scene[0].empty() && scene[0] == scene[1], "scene files differ");

        std::mt19937_64 rng(108);
        const std::vector<std::uint8_t> bytes[2] = {encode_scene(fixtures::random_scene2(rng, 9, 9)),
                                                    encode_scene(fixtures::random_scene3(rng, 7, 7))};
        for (const auto& full : bytes) {
            for (std::size_t len = 0; len < full.size(); ++len) {
                try {
                    (void)decode_scene(std::span(full.data(), len));
                    c.expect(false, "truncation to " + std::to_string(len) + " bytes was accepted");
                } catch (const FormatError&) {
                }
            }
            std::uniform_int_distribution<std::size_t> at(0, full.size() - 1);
            std::uniform_int_distribution<int> byte(0, 255);
            for (int t = 0; t < 2000; ++t) {
                auto bad = full;
                bad.resize(at(rng) + 1);
                bad[at(rng) % bad.size()] = std::uint8_t(byte(rng));
                try {
                    (void)decode_scene(bad);
                } catch (const FormatError&) {
                } catch (const DomainError&) {
                }
            }
        }
    }

} // namespace

int main() {
    const Criterion criteria[] = {
        {1, "long-axis split algebra on 10000 random primitives", 1.0, las_algebra},
        {2, "column extraction matches the full matrix-vector product", 1.0, column_extraction},
        {3, "batch split matches the sequential reference bit for bit", 0.0, batch_vs_sequential},
        {4, "edge pipeline properties on 128x128 inputs", 5.0, edge_suite},
        {5, "schedule endpoints and densify timetable", 0.0, scheduler_endpoints},
        {6, "analytic gradients match finite differences", 10.0, gradient_check},
        {7, "64x64 densify vs no-densify, budget and warm-up", 120.0, end_to_end},
        {8, "seeded runs are byte-identical; truncated scenes are rejected", 0.0, determinism},
    };
    for (const auto& c : criteria) {
        run(c);
    }
    std::printf("%d of %zu checks failed\n", failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
