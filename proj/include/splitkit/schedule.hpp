/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/las_split.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace splitkit {

    /// Exponential learning-rate schedule, lr(t) = lr_init * decay_gamma^t with
    /// t the position of `step` in [step_start, step_end] clamped to [0, 1].
    /// lr_final must equal lr_init * decay_gamma.
    struct ExpSchedule {
        double lr_init = 0.0;
        double lr_final = 0.0;
        double decay_gamma = 1.0;
        std::int64_t step_start = 0;
        std::int64_t step_end = 1;

        void validate() const;
    };

    /// Builds a schedule whose decay factor is lr_final / lr_init.
    [[nodiscard]] ExpSchedule make_exp_schedule(double lr_init, double lr_final,
                                                std::int64_t step_start, std::int64_t step_end);

    [[nodiscard]] double lr_at(const ExpSchedule& s, std::int64_t step);

    inline constexpr std::int64_t kDefaultTotalIterations = 30000;
    inline constexpr double kScaleLrInit = 0.020;
    inline constexpr double kScaleLrFinal = 0.002;
    inline constexpr double kPositionLrInit = 0.000128;
    inline constexpr double kPositionLrFinal = 0.0000128;

    struct Schedules {
        ExpSchedule scale;
        ExpSchedule position;
    };

    /// Scale (0.020 -> 0.002) and position (0.000128 -> 0.0000128) schedules,
    /// both decaying by 0.1 over [0, total_iterations].
    [[nodiscard]] Schedules default_schedules(std::int64_t total_iterations = kDefaultTotalIterations);

    /// How a non-warm-up densify step ranks eligible primitives.
    enum class SelectionPolicy {
        Product, ///< edge_score * grad_norm
        Edge,    ///< edge_score only
        Grad,    ///< grad_norm only
    };

    [[nodiscard]] SelectionPolicy parse_policy(const std::string& name);
    [[nodiscard]] const char* policy_name(SelectionPolicy p);

    /// Densification timetable and selection constants.
    struct DensifyConfig {
        std::int64_t interval = 500;
        std::int64_t window_start = 500;
        std::int64_t window_end = 15000;
        std::int64_t warmup_steps = 3;
        std::size_t budget = 1000000;
        SplitConstants split_constants{};
        double grad_threshold = 0.0002;
        double growth_cap = 0.05; ///< fraction of the current count that may split per step
        SelectionPolicy policy = SelectionPolicy::Product;

        void validate() const;
        /// floor((window_end - window_start) / interval) + 1
        [[nodiscard]] std::int64_t densify_step_count() const;
    };

    /// The default timetable compressed to `total_iterations` (e.g. 3000 gives
    /// interval 50 over [50, 1500]); the number of densify and warm-up steps is kept.
    [[nodiscard]] DensifyConfig scaled_densify_config(std::int64_t total_iterations);

    [[nodiscard]] bool is_densify_step(const DensifyConfig& cfg, std::int64_t step);
    [[nodiscard]] bool is_warmup_step(const DensifyConfig& cfg, std::int64_t step);

} // namespace splitkit
