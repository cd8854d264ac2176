/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/las_split.hpp"
#include "splitkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace splitkit {

    namespace {

        // Keeps logit finite when sigmoid saturates to exactly 0 or 1 in double.
        double reduced_opacity_logit(float opacity_logit, double beta) {
            double p = sigmoid(double(opacity_logit)) * beta;
            p = std::clamp(p, std::numeric_limits<double>::denorm_min(),
                           std::nextafter(1.0, 0.0));
            return logit(p);
        }

        template <typename Scene>
        std::vector<std::size_t> append_slots(const Scene& scene, std::span<const std::uint8_t> mask) {
            if (mask.size() != scene.size()) {
                throw DomainError("split mask has " + std::to_string(mask.size()) +
                                  " entries for a scene of " + std::to_string(scene.size()));
            }
            // exclusive prefix sum: slot[i] is where parent i's second child goes
            std::vector<std::size_t> slot(mask.size());
            std::size_t next = scene.size();
            for (std::size_t i = 0; i < mask.size(); ++i) {
                slot[i] = next;
                next += mask[i] ? 1 : 0;
            }
            const std::size_t added = next - scene.size();
            if (added > scene.headroom()) {
                throw BudgetError("split of " + std::to_string(added) + " primitives exceeds budget: count " +
                                  std::to_string(scene.size()) + ", capacity " + std::to_string(scene.capacity()));
            }
            return slot;
        }

        template <typename Scene, typename SplitFn>
        std::size_t split_batch(Scene& scene, std::span<const std::uint8_t> mask, SplitFn split) {
            const auto slot = append_slots(scene, mask);
            const std::size_t before = scene.size();
            std::size_t added = 0;
            for (auto m : mask) {
                added += m ? 1 : 0;
            }
            if (added == 0) {
                return 0;
            }

            // Children are computed before the scene is touched so a failure leaves it intact.
            using Prim = decltype(scene.get(0));
            std::vector<std::pair<Prim, Prim>> children(before);
            const auto n = static_cast<std::ptrdiff_t>(before);
            std::ptrdiff_t failed = -1;
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                if (!mask[std::size_t(i)]) {
                    continue;
                }
                try {
                    children[std::size_t(i)] = split(scene.get(std::size_t(i)));
                } catch (...) {
#pragma omp critical(splitkit_split_failure)
                    failed = i;
                }
            }
            if (failed >= 0) {
                throw DomainError("long-axis split failed for primitive " + std::to_string(failed));
            }

            scene.grow(added);
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                if (mask[std::size_t(i)]) {
                    scene.set(std::size_t(i), children[std::size_t(i)].first);
                    scene.set(slot[std::size_t(i)], children[std::size_t(i)].second);
                }
            }
            return added;
        }

    } // namespace

    void SplitConstants::validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw DomainError("alpha must lie in (0, 1)");
        }
        if (!(gamma_axis > 0.0 && gamma_axis <= 1.0)) {
            throw DomainError("gamma_axis must lie in (0, 1]");
        }
        if (!(beta > 0.0 && beta <= 1.0)) {
            throw DomainError("beta must lie in (0, 1]");
        }
    }

    int principal_axis(std::span<const float> log_scale) {
        int best = 0;
        for (int i = 1; i < int(log_scale.size()); ++i) {
            if (log_scale[std::size_t(i)] > log_scale[std::size_t(best)]) {
                best = i;
            }
        }
        return best;
    }

    std::pair<Gaussian3, Gaussian3> las_split_one(const Gaussian3& g, const SplitConstants& c) {
        const int axis = principal_axis(g.log_scale);
        const double offset_mag = std::exp(double(g.log_scale[std::size_t(axis)])) * c.alpha;
        const double log_alpha = std::log(c.alpha);
        const double log_gamma = std::log(c.gamma_axis);

        Gaussian3 child = g;
        for (std::size_t k = 0; k < 3; ++k) {
            const double shift = int(k) == axis ? log_alpha : log_gamma;
            child.log_scale[k] = float(double(g.log_scale[k]) + shift);
        }
        child.opacity_logit = float(reduced_opacity_logit(g.opacity_logit, c.beta));

        const Vec3d d = axis_displacement(quat_to_rotmat(g.rotation), axis, offset_mag);
        Gaussian3 plus = child;
        Gaussian3 minus = child;
        for (std::size_t k = 0; k < 3; ++k) {
            plus.position[k] = float(double(g.position[k]) + d[k]);
            minus.position[k] = float(double(g.position[k]) - d[k]);
        }
        return {plus, minus};
    }

    std::pair<Gaussian2, Gaussian2> las_split_one_2d(const Gaussian2& g, const SplitConstants& c) {
        const int axis = principal_axis(g.log_scale);
        const double offset_mag = std::exp(double(g.log_scale[std::size_t(axis)])) * c.alpha;
        const double log_alpha = std::log(c.alpha);
        const double log_gamma = std::log(c.gamma_axis);

        Gaussian2 child = g;
        for (std::size_t k = 0; k < 2; ++k) {
            const double shift = int(k) == axis ? log_alpha : log_gamma;
            child.log_scale[k] = float(double(g.log_scale[k]) + shift);
        }
        child.opacity_logit = float(reduced_opacity_logit(g.opacity_logit, c.beta));

        // columns of [[cos, -sin], [sin, cos]]
        const double cs = std::cos(double(g.theta));
        const double sn = std::sin(double(g.theta));
        const double dx = (axis == 0 ? cs : -sn) * offset_mag;
        const double dy = (axis == 0 ? sn : cs) * offset_mag;

        Gaussian2 plus = child;
        Gaussian2 minus = child;
        plus.position = {float(double(g.position[0]) + dx), float(double(g.position[1]) + dy)};
        minus.position = {float(double(g.position[0]) - dx), float(double(g.position[1]) - dy)};
        return {plus, minus};
    }

    std::size_t las_split_batch(Scene3& scene, std::span<const std::uint8_t> mask, const SplitConstants& c) {
        c.validate();
        return split_batch(scene, mask, [&c](const Gaussian3& g) { return las_split_one(g, c); });
    }

    std::size_t las_split_batch(Scene2& scene, std::span<const std::uint8_t> mask, const SplitConstants& c) {
        c.validate();
        return split_batch(scene, mask, [&c](const Gaussian2& g) { return las_split_one_2d(g, c); });
    }

    SplitMask mask_from_indices(std::span<const std::size_t> indices, std::size_t count) {
        SplitMask mask(count, 0);
        for (auto i : indices) {
            if (i >= count) {
                throw DomainError("split index " + std::to_string(i) + " out of range for " +
                                  std::to_string(count) + " primitives");
            }
            mask[i] = 1;
        }
        return mask;
    }

} // namespace splitkit
