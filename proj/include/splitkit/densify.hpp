/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/gaussian.hpp"
#include "splitkit/las_split.hpp"
#include "splitkit/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace splitkit {

    /// Per-primitive signals consumed at a densify step.
    ///
    /// Positional-gradient norms are summed between densify events and read
    /// back as a mean over the accumulation count. Edge scores are filled in
    /// by the caller right before selection.
    class DensifyStats {
    public:
        DensifyStats() = default;
        explicit DensifyStats(std::size_t count) { reset(count); }

        [[nodiscard]] std::size_t size() const noexcept { return grad_sum_.size(); }
        [[nodiscard]] std::size_t accum_count() const noexcept { return accum_count_; }

        /// Mean accumulated gradient norm of primitive i (0 before any accumulation).
        [[nodiscard]] double grad_norm(std::size_t i) const {
            return accum_count_ == 0 ? 0.0 : grad_sum_[i] / double(accum_count_);
        }
        [[nodiscard]] std::vector<double> grad_norms() const;

        [[nodiscard]] std::span<const float> edge_score() const { return edge_score_; }
        /// Throws DomainError on a length mismatch.
        void set_edge_scores(std::span<const float> scores);

        /// Adds one step worth of gradient norms. Throws DomainError on a length mismatch.
        void accumulate(std::span<const double> step_grad_norms);

        /// Zeroes everything and resizes to `count`.
        void reset(std::size_t count);

    private:
        std::vector<double> grad_sum_;
        std::vector<float> edge_score_;
        std::size_t accum_count_ = 0;
    };

    inline void accumulate_grads(DensifyStats& running, std::span<const double> step_grad_norms) {
        running.accumulate(step_grad_norms);
    }

    struct Selection {
        SplitMask mask;
        std::size_t eligible = 0;
        std::size_t selected = 0;
    };

    /// Chooses which primitives split at `step`.
    ///
    /// On warm-up steps every primitive is eligible and ranking uses the edge
    /// score alone. Otherwise a primitive is eligible when its mean gradient
    /// norm exceeds cfg.grad_threshold and ranking follows cfg.policy. The
    /// top min(#eligible, headroom, ceil(growth_cap * count)) are selected,
    /// ties going to the lower index.
    [[nodiscard]] Selection select_candidates(const DensifyStats& stats, const DensifyConfig& cfg,
                                              std::int64_t step, std::size_t headroom);

    struct DensifyEvent {
        std::int64_t step = 0;
        std::size_t eligible = 0;
        std::size_t split = 0;
        std::size_t count_after = 0;

        bool operator==(const DensifyEvent&) const = default;
    };

    struct DensifyResult {
        DensifyEvent event;
        SplitMask mask; ///< mask applied to the pre-split scene
    };

    /// select_candidates -> las_split_batch -> stats reset. Requires
    /// is_densify_step(cfg, step); throws DomainError otherwise.
    DensifyResult densify_step(Scene2& scene, DensifyStats& stats, const DensifyConfig& cfg, std::int64_t step);
    DensifyResult densify_step(Scene3& scene, DensifyStats& stats, const DensifyConfig& cfg, std::int64_t step);

    /// `step,eligible,split,count_after` with a header line.
    [[nodiscard]] std::string events_to_csv(std::span<const DensifyEvent> events);

} // namespace splitkit
