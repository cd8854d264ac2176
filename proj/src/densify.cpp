/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/densify.hpp"
#include "splitkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace splitkit {

    std::vector<double> DensifyStats::grad_norms() const {
        std::vector<double> out(size());
        for (std::size_t i = 0; i < size(); ++i) {
            out[i] = grad_norm(i);
        }
        return out;
    }

    void DensifyStats::set_edge_scores(std::span<const float> scores) {
        if (scores.size() != size()) {
            throw DomainError("edge score count " + std::to_string(scores.size()) +
                              " does not match stats size " + std::to_string(size()));
        }
        edge_score_.assign(scores.begin(), scores.end());
    }

    void DensifyStats::accumulate(std::span<const double> step_grad_norms) {
        if (step_grad_norms.size() != size()) {
            throw DomainError("gradient norm count " + std::to_string(step_grad_norms.size()) +
                              " does not match stats size " + std::to_string(size()));
        }
        for (std::size_t i = 0; i < size(); ++i) {
            grad_sum_[i] += step_grad_norms[i];
        }
        ++accum_count_;
    }

    void DensifyStats::reset(std::size_t count) {
        grad_sum_.assign(count, 0.0);
        edge_score_.assign(count, 0.0f);
        accum_count_ = 0;
    }

    Selection select_candidates(const DensifyStats& stats, const DensifyConfig& cfg, std::int64_t step,
                                std::size_t headroom) {
        const std::size_t n = stats.size();
        Selection sel{SplitMask(n, 0), 0, 0};
        const bool warmup = is_warmup_step(cfg, step);
        const auto edge = stats.edge_score();

        std::vector<std::size_t> eligible;
        std::vector<double> score(n, 0.0);
        eligible.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double g = stats.grad_norm(i);
            const double e = i < edge.size() ? double(edge[i]) : 0.0;
            if (warmup) {
                score[i] = e;
                eligible.push_back(i);
                continue;
            }
            if (!(g > cfg.grad_threshold)) {
                continue;
            }
            switch (cfg.policy) {
            case SelectionPolicy::Product: score[i] = e * g; break;
            case SelectionPolicy::Edge: score[i] = e; break;
            case SelectionPolicy::Grad: score[i] = g; break;
            }
            eligible.push_back(i);
        }
        sel.eligible = eligible.size();

        const auto cap = static_cast<std::size_t>(std::ceil(cfg.growth_cap * double(n)));
        const std::size_t take = std::min({eligible.size(), headroom, cap});
        if (take == 0) {
            return sel;
        }
        std::partial_sort(eligible.begin(), eligible.begin() + std::ptrdiff_t(take), eligible.end(),
                          [&score](std::size_t a, std::size_t b) {
                              if (score[a] != score[b]) {
                                  return score[a] > score[b];
                              }
                              return a < b;
                          });
        for (std::size_t k = 0; k < take; ++k) {
            sel.mask[eligible[k]] = 1;
        }
        sel.selected = take;
        return sel;
    }

    namespace {

        template <typename Scene>
        DensifyResult densify_impl(Scene& scene, DensifyStats& stats, const DensifyConfig& cfg, std::int64_t step) {
            if (!is_densify_step(cfg, step)) {
                throw DomainError("densify_step called at non-densify step " + std::to_string(step));
            }
            if (stats.size() != scene.size()) {
                throw DomainError("densify stats do not match the scene size");
            }
            auto sel = select_candidates(stats, cfg, step, scene.headroom());
            const std::size_t split = las_split_batch(scene, sel.mask, cfg.split_constants);
            stats.reset(scene.size());
            return {{step, sel.eligible, split, scene.size()}, std::move(sel.mask)};
        }

    } // namespace

    DensifyResult densify_step(Scene2& scene, DensifyStats& stats, const DensifyConfig& cfg, std::int64_t step) {
        return densify_impl(scene, stats, cfg, step);
    }

    DensifyResult densify_step(Scene3& scene, DensifyStats& stats, const DensifyConfig& cfg, std::int64_t step) {
        return densify_impl(scene, stats, cfg, step);
    }

    std::string events_to_csv(std::span<const DensifyEvent> events) {
        std::ostringstream os;
        os << "step,eligible,split,count_after\n";
        for (const auto& e : events) {
            os << e.step << ',' << e.eligible << ',' << e.split << ',' << e.count_after << '\n';
        }
        return os.str();
    }

} // namespace splitkit
