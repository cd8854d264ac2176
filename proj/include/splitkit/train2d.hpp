/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/densify.hpp"
#include "splitkit/gaussian.hpp"
#include "splitkit/image.hpp"
#include "splitkit/render2d.hpp"
#include "splitkit/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace splitkit {

    enum class OptimizerKind {
        Adam,
        Sgd, ///< plain gradient descent
    };

    struct TrainConfig {
        std::int64_t total_iters = 3000;
        Schedules schedules = default_schedules(3000);
        double color_lr = 0.01;
        double opacity_lr = 0.05;
        double theta_lr = 0.005;
        OptimizerKind optimizer = OptimizerKind::Adam;

        DensifyConfig densify = scaled_densify_config(3000);
        bool densify_enabled = true;

        std::size_t initial_count = 64;
        std::uint64_t seed = 0;
        double blur_sigma = 1.0;
        std::array<float, 3> background{0.0f, 0.0f, 0.0f};
        double footprint_cutoff = 4.0; // wider than the render default; fewer uncovered pixels

        void validate() const;
    };

    /// Desk-scale defaults for `iters` iterations: schedules span [0, iters]
    /// and the densify timetable is compressed to keep 30 steps.
    [[nodiscard]] TrainConfig default_train_config(std::int64_t iters);

    struct TraceRow {
        std::int64_t iter = 0;
        double loss = 0.0;
        double psnr = 0.0;
        std::size_t count = 0;
        double scale_lr = 0.0;
        double pos_lr = 0.0;
    };

    struct TrainResult {
        Scene2 scene;
        std::vector<TraceRow> trace;
        std::vector<DensifyEvent> events;
        double final_psnr = 0.0;
        double final_ssim = 0.0;
        RgbImage final_render;
    };

    /// Fits a 2D Gaussian scene to `target`.
    ///
    /// Each iteration renders, back-propagates the L2 loss and takes one
    /// optimizer step; the scale and position groups follow their exponential
    /// schedules. Position rates are in units of the image extent max(W, H).
    /// The target's importance map is built once; at densify steps the edge
    /// scores are sampled at the current centers and densify_step runs.
    [[nodiscard]] TrainResult train(const RgbImage& target, const TrainConfig& cfg);

    /// White square on a smooth color gradient.
    [[nodiscard]] RgbImage make_synthetic_target(int width = 64, int height = 64);

    /// `iter,loss,psnr,count,scale_lr,pos_lr` with a header line.
    [[nodiscard]] std::string trace_to_csv(std::span<const TraceRow> trace);

} // namespace splitkit
