/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/gaussian.hpp"

#include <cmath>

namespace splitkit {

    namespace {

        template <typename Range>
        bool all_finite(const Range& r) {
            for (auto v : r) {
                if (!std::isfinite(v)) {
                    return false;
                }
            }
            return true;
        }

        void check_scales(std::span<const float> log_scale) {
            for (float s : log_scale) {
                const double phys = std::exp(double(s));
                if (!std::isfinite(phys) || !(phys > 0.0)) {
                    throw DomainError("physical scale must be finite and positive");
                }
            }
        }

    } // namespace

    void validate(const Gaussian3& g) {
        if (!all_finite(g.position) || !all_finite(g.log_scale) || !all_finite(g.rotation) ||
            !all_finite(g.color) || !std::isfinite(g.opacity_logit)) {
            throw DomainError("Gaussian3 has non-finite fields");
        }
        check_scales(g.log_scale);
        const double n = std::sqrt(double(g.rotation[0]) * g.rotation[0] +
                                   double(g.rotation[1]) * g.rotation[1] +
                                   double(g.rotation[2]) * g.rotation[2] +
                                   double(g.rotation[3]) * g.rotation[3]);
        if (std::abs(n - 1.0) > 1e-6) {
            throw DomainError("Gaussian3 rotation is not a unit quaternion");
        }
    }

    void validate(const Gaussian2& g) {
        if (!all_finite(g.position) || !all_finite(g.log_scale) || !all_finite(g.color) ||
            !std::isfinite(g.theta) || !std::isfinite(g.opacity_logit)) {
            throw DomainError("Gaussian2 has non-finite fields");
        }
        check_scales(g.log_scale);
    }

    void Scene3::set_capacity(std::size_t capacity) {
        if (capacity < size()) {
            throw BudgetError("capacity " + std::to_string(capacity) +
                              " is below the current count " + std::to_string(size()));
        }
        capacity_ = capacity;
    }

    void Scene3::push_back(const Gaussian3& g) {
        grow(1);
        set(size() - 1, g);
    }

    void Scene3::grow(std::size_t n) {
        if (n > headroom()) {
            throw BudgetError("scene budget exceeded: count " + std::to_string(size()) + " + " +
                              std::to_string(n) + " > capacity " + std::to_string(capacity_));
        }
        const std::size_t m = size() + n;
        position_.resize(m, {0.0f, 0.0f, 0.0f});
        log_scale_.resize(m, {0.0f, 0.0f, 0.0f});
        rotation_.resize(m, {1.0f, 0.0f, 0.0f, 0.0f});
        opacity_logit_.resize(m, 0.0f);
        color_.resize(m, {0.0f, 0.0f, 0.0f});
    }

} // namespace splitkit
