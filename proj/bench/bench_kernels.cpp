/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

// Parallel kernels against their serial reference versions.
//   ./splitkit_bench --benchmark_filter=Render

#include "splitkit/edge_pipeline.hpp"
#include "splitkit/las_split.hpp"
#include "splitkit/reference.hpp"
#include "splitkit/render2d.hpp"
#include "splitkit/train2d.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace splitkit;

namespace {

    GrayImage noise(int n) {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<float> u(0.0f, 1.0f);
        GrayImage img(n, n);
        for (auto& v : img.pixels) {
            v = u(rng);
        }
        return img;
    }

    Scene2 scene2(std::size_t count, int extent) {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<float> pos(0.0f, float(extent));
        std::uniform_real_distribution<float> ls(0.0f, 1.5f);
        std::uniform_real_distribution<float> ang(-1.5f, 1.5f);
        std::uniform_real_distribution<float> col(0.0f, 1.0f);
        Scene2 s(2 * count);
        for (std::size_t i = 0; i < count; ++i) {
            Gaussian2 g;
            g.position = {pos(rng), pos(rng)};
            g.log_scale = {ls(rng), ls(rng)};
            g.theta = ang(rng);
            g.opacity_logit = 1.0f;
            g.color = {col(rng), col(rng), col(rng)};
            s.push_back(g);
        }
        return s;
    }

    RenderParams params(int n) {
        RenderParams p;
        p.width = n;
        p.height = n;
        return p;
    }

    void Blur(benchmark::State& st) {
        const GrayImage img = noise(int(st.range(0)));
        for (auto _ : st) {
            benchmark::DoNotOptimize(gaussian_blur_5x5(img, 1.0));
        }
    }

    void BlurReference(benchmark::State& st) {
        const GrayImage img = noise(int(st.range(0)));
        for (auto _ : st) {
            benchmark::DoNotOptimize(reference::gaussian_blur_5x5(img, 1.0));
        }
    }

    void Sobel(benchmark::State& st) {
        const GrayImage img = noise(int(st.range(0)));
        for (auto _ : st) {
            benchmark::DoNotOptimize(sobel_gradients(img));
        }
    }

    void SobelReference(benchmark::State& st) {
        const GrayImage img = noise(int(st.range(0)));
        for (auto _ : st) {
            benchmark::DoNotOptimize(reference::sobel_gradients(img));
        }
    }

    void Nms(benchmark::State& st) {
        const GradientField f = sobel_gradients(noise(int(st.range(0))));
        for (auto _ : st) {
            benchmark::DoNotOptimize(nms_thin(f));
        }
    }

    void NmsReference(benchmark::State& st) {
        const GradientField f = sobel_gradients(noise(int(st.range(0))));
        for (auto _ : st) {
            benchmark::DoNotOptimize(reference::nms_thin(f));
        }
    }

    void Render(benchmark::State& st) {
        const Scene2 s = scene2(std::size_t(st.range(0)), 64);
        const RenderParams p = params(64);
        for (auto _ : st) {
            benchmark::DoNotOptimize(render(s, p));
        }
    }

    void RenderReference(benchmark::State& st) {
        const Scene2 s = scene2(std::size_t(st.range(0)), 64);
        const RenderParams p = params(64);
        for (auto _ : st) {
            benchmark::DoNotOptimize(reference::render(s, p));
        }
    }

    void Backward(benchmark::State& st) {
        const Scene2 s = scene2(std::size_t(st.range(0)), 64);
        const RenderParams p = params(64);
        const RgbImage target = make_synthetic_target(64, 64);
        for (auto _ : st) {
            benchmark::DoNotOptimize(backward(s, target, p));
        }
    }

    void BackwardReference(benchmark::State& st) {
        const Scene2 s = scene2(std::size_t(st.range(0)), 64);
        const RenderParams p = params(64);
        const RgbImage target = make_synthetic_target(64, 64);
        for (auto _ : st) {
            benchmark::DoNotOptimize(reference::backward(s, target, p));
        }
    }

    SplitMask every_other(std::size_t n) {
        SplitMask m(n);
        for (std::size_t i = 0; i < n; i += 2) {
            m[i] = 1;
        }
        return m;
    }

    void SplitBatch(benchmark::State& st) {
        const Scene2 base = scene2(std::size_t(st.range(0)), 64);
        const SplitMask mask = every_other(base.size());
        for (auto _ : st) {
            Scene2 s = base;
            benchmark::DoNotOptimize(las_split_batch(s, mask));
        }
    }

    void SplitSequential(benchmark::State& st) {
        const Scene2 base = scene2(std::size_t(st.range(0)), 64);
        const SplitMask mask = every_other(base.size());
        for (auto _ : st) {
            Scene2 s = base;
            reference::las_split_sequential(s, mask, {});
            benchmark::DoNotOptimize(s.size());
        }
    }

} // namespace

BENCHMARK(Blur)->Arg(128)->Arg(512);
BENCHMARK(BlurReference)->Arg(128)->Arg(512);
BENCHMARK(Sobel)->Arg(128)->Arg(512);
BENCHMARK(SobelReference)->Arg(128)->Arg(512);
BENCHMARK(Nms)->Arg(128)->Arg(512);
BENCHMARK(NmsReference)->Arg(128)->Arg(512);
BENCHMARK(Render)->Arg(64)->Arg(256);
BENCHMARK(RenderReference)->Arg(64)->Arg(256);
BENCHMARK(Backward)->Arg(64)->Arg(256);
BENCHMARK(BackwardReference)->Arg(64)->Arg(256);
BENCHMARK(SplitBatch)->Arg(1000)->Arg(100000);
BENCHMARK(SplitSequential)->Arg(1000)->Arg(100000);
BENCHMARK_MAIN();
