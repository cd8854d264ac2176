/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/schedule.hpp"
#include "splitkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace splitkit {

    void ExpSchedule::validate() const {
        if (!(lr_init > 0.0) || !(lr_final > 0.0)) {
            throw DomainError("learning rates must be positive");
        }
        if (!(decay_gamma > 0.0 && decay_gamma <= 1.0)) {
            throw DomainError("decay_gamma must lie in (0, 1]");
        }
        if (step_start >= step_end) {
            throw DomainError("schedule needs step_start < step_end");
        }
        if (std::abs(lr_init * decay_gamma - lr_final) > 1e-9 * lr_init) {
            throw DomainError("lr_final must equal lr_init * decay_gamma");
        }
    }

    ExpSchedule make_exp_schedule(double lr_init, double lr_final, std::int64_t step_start,
                                  std::int64_t step_end) {
        if (!(lr_init > 0.0)) {
            throw DomainError("lr_init must be positive");
        }
        ExpSchedule s{lr_init, lr_final, lr_final / lr_init, step_start, step_end};
        s.validate();
        return s;
    }

    double lr_at(const ExpSchedule& s, std::int64_t step) {
        const double t = std::clamp(double(step - s.step_start) / double(s.step_end - s.step_start), 0.0, 1.0);
        return s.lr_init * std::pow(s.decay_gamma, t);
    }

    Schedules default_schedules(std::int64_t total_iterations) {
        return {make_exp_schedule(kScaleLrInit, kScaleLrFinal, 0, total_iterations),
                make_exp_schedule(kPositionLrInit, kPositionLrFinal, 0, total_iterations)};
    }

    SelectionPolicy parse_policy(const std::string& name) {
        if (name == "product") {
            return SelectionPolicy::Product;
        }
        if (name == "edge") {
            return SelectionPolicy::Edge;
        }
        if (name == "grad") {
            return SelectionPolicy::Grad;
        }
        throw DomainError("unknown selection policy '" + name + "' (expected product|edge|grad)");
    }

    const char* policy_name(SelectionPolicy p) {
        switch (p) {
        case SelectionPolicy::Product: return "product";
        case SelectionPolicy::Edge: return "edge";
        case SelectionPolicy::Grad: return "grad";
        }
        return "product";
    }

    void DensifyConfig::validate() const {
        if (interval <= 0) {
            throw DomainError("densify interval must be positive");
        }
        if (window_start > window_end) {
            throw DomainError("densify window must satisfy start <= end");
        }
        if (warmup_steps < 0) {
            throw DomainError("warm-up step count must be non-negative");
        }
        if (budget == 0) {
            throw DomainError("budget must be positive");
        }
        if (!(grad_threshold >= 0.0)) {
            throw DomainError("grad_threshold must be non-negative");
        }
        if (!(growth_cap > 0.0)) {
            throw DomainError("growth cap must be positive");
        }
        split_constants.validate();
    }

    std::int64_t DensifyConfig::densify_step_count() const {
        return (window_end - window_start) / interval + 1;
    }

    DensifyConfig scaled_densify_config(std::int64_t total_iterations) {
        DensifyConfig cfg;
        const std::int64_t steps = cfg.densify_step_count();
        const std::int64_t factor = kDefaultTotalIterations / std::max<std::int64_t>(total_iterations, 1);
        if (factor > 1) {
            cfg.interval = std::max<std::int64_t>(cfg.interval / factor, 1);
            cfg.window_start = std::max<std::int64_t>(cfg.window_start / factor, 1);
            cfg.window_end = cfg.window_start + (steps - 1) * cfg.interval;
        }
        return cfg;
    }

    bool is_densify_step(const DensifyConfig& cfg, std::int64_t step) {
        return step >= cfg.window_start && step <= cfg.window_end &&
               (step - cfg.window_start) % cfg.interval == 0;
    }

    bool is_warmup_step(const DensifyConfig& cfg, std::int64_t step) {
        return is_densify_step(cfg, step) && (step - cfg.window_start) / cfg.interval < cfg.warmup_steps;
    }

} // namespace splitkit
