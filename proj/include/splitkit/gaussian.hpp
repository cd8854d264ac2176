/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/errors.hpp"
#include "splitkit/math.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace splitkit {

    /// A 3D Gaussian in storage space: log-scales, unit quaternion, opacity logit.
    struct Gaussian3 {
        Vec3f position{0.0f, 0.0f, 0.0f};
        Vec3f log_scale{0.0f, 0.0f, 0.0f};
        Quatf rotation{1.0f, 0.0f, 0.0f, 0.0f};
        float opacity_logit = 0.0f;
        Vec3f color{0.0f, 0.0f, 0.0f};

        bool operator==(const Gaussian3&) const = default;
    };

    /// 2D analogue of Gaussian3: the rotation is a single angle in radians.
    template <typename T>
    struct BasicGaussian2 {
        std::array<T, 2> position{T(0), T(0)};
        std::array<T, 2> log_scale{T(0), T(0)};
        T theta = T(0);
        T opacity_logit = T(0);
        std::array<T, 3> color{T(0), T(0), T(0)};

        bool operator==(const BasicGaussian2&) const = default;
    };

    using Gaussian2 = BasicGaussian2<float>;

    /// Throws DomainError when a primitive breaks its invariants
    /// (non-finite fields, non-unit quaternion).
    void validate(const Gaussian3& g);
    void validate(const Gaussian2& g);

    /// Column-wise collection of 2D Gaussians with a fixed capacity (the budget).
    ///
    /// Every attribute lives in its own array and all arrays share one length.
    /// Growing past the capacity throws BudgetError.
    template <typename T>
    class BasicScene2 {
    public:
        using Scalar = T;
        using Primitive = BasicGaussian2<T>;

        explicit BasicScene2(std::size_t capacity = 0) : capacity_(capacity) {}

        [[nodiscard]] std::size_t size() const noexcept { return theta_.size(); }
        [[nodiscard]] bool empty() const noexcept { return theta_.empty(); }
        [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
        [[nodiscard]] std::size_t headroom() const noexcept { return capacity_ - size(); }

        void set_capacity(std::size_t capacity) {
            if (capacity < size()) {
                throw BudgetError("capacity " + std::to_string(capacity) +
                                  " is below the current count " + std::to_string(size()));
            }
            capacity_ = capacity;
        }

        void push_back(const Primitive& g) {
            grow(1);
            set(size() - 1, g);
        }

        /// Appends `n` zero-initialized slots.
        void grow(std::size_t n) {
            if (n > headroom()) {
                throw BudgetError("scene budget exceeded: count " + std::to_string(size()) + " + " +
                                  std::to_string(n) + " > capacity " + std::to_string(capacity_));
            }
            const std::size_t m = size() + n;
            position_.resize(m, {T(0), T(0)});
            log_scale_.resize(m, {T(0), T(0)});
            theta_.resize(m, T(0));
            opacity_logit_.resize(m, T(0));
            color_.resize(m, {T(0), T(0), T(0)});
        }

        [[nodiscard]] Primitive get(std::size_t i) const {
            return {position_[i], log_scale_[i], theta_[i], opacity_logit_[i], color_[i]};
        }

        void set(std::size_t i, const Primitive& g) {
            position_[i] = g.position;
            log_scale_[i] = g.log_scale;
            theta_[i] = g.theta;
            opacity_logit_[i] = g.opacity_logit;
            color_[i] = g.color;
        }

        [[nodiscard]] std::span<const std::array<T, 2>> position() const { return position_; }
        [[nodiscard]] std::span<const std::array<T, 2>> log_scale() const { return log_scale_; }
        [[nodiscard]] std::span<const T> theta() const { return theta_; }
        [[nodiscard]] std::span<const T> opacity_logit() const { return opacity_logit_; }
        [[nodiscard]] std::span<const std::array<T, 3>> color() const { return color_; }

        [[nodiscard]] std::span<std::array<T, 2>> position() { return position_; }
        [[nodiscard]] std::span<std::array<T, 2>> log_scale() { return log_scale_; }
        [[nodiscard]] std::span<T> theta() { return theta_; }
        [[nodiscard]] std::span<T> opacity_logit() { return opacity_logit_; }
        [[nodiscard]] std::span<std::array<T, 3>> color() { return color_; }

        /// Element-wise conversion, e.g. to the 64-bit oracle representation.
        template <typename U>
        [[nodiscard]] BasicScene2<U> cast() const {
            BasicScene2<U> out(capacity_);
            out.grow(size());
            for (std::size_t i = 0; i < size(); ++i) {
                const auto g = get(i);
                out.set(i, {{U(g.position[0]), U(g.position[1])},
                            {U(g.log_scale[0]), U(g.log_scale[1])},
                            U(g.theta),
                            U(g.opacity_logit),
                            {U(g.color[0]), U(g.color[1]), U(g.color[2])}});
            }
            return out;
        }

        bool operator==(const BasicScene2&) const = default;

    private:
        std::size_t capacity_;
        std::vector<std::array<T, 2>> position_;
        std::vector<std::array<T, 2>> log_scale_;
        std::vector<T> theta_;
        std::vector<T> opacity_logit_;
        std::vector<std::array<T, 3>> color_;
    };

    using Scene2 = BasicScene2<float>;
    using Scene2d = BasicScene2<double>;
    using Gaussian2d = BasicGaussian2<double>;

    /// Column-wise collection of 3D Gaussians with a fixed capacity.
    class Scene3 {
    public:
        explicit Scene3(std::size_t capacity = 0) : capacity_(capacity) {}

        [[nodiscard]] std::size_t size() const noexcept { return opacity_logit_.size(); }
        [[nodiscard]] bool empty() const noexcept { return opacity_logit_.empty(); }
        [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
        [[nodiscard]] std::size_t headroom() const noexcept { return capacity_ - size(); }

        void set_capacity(std::size_t capacity);
        void push_back(const Gaussian3& g);
        void grow(std::size_t n);

        [[nodiscard]] Gaussian3 get(std::size_t i) const {
            return {position_[i], log_scale_[i], rotation_[i], opacity_logit_[i], color_[i]};
        }

        void set(std::size_t i, const Gaussian3& g) {
            position_[i] = g.position;
            log_scale_[i] = g.log_scale;
            rotation_[i] = g.rotation;
            opacity_logit_[i] = g.opacity_logit;
            color_[i] = g.color;
        }

        [[nodiscard]] std::span<const Vec3f> position() const { return position_; }
        [[nodiscard]] std::span<const Vec3f> log_scale() const { return log_scale_; }
        [[nodiscard]] std::span<const Quatf> rotation() const { return rotation_; }
        [[nodiscard]] std::span<const float> opacity_logit() const { return opacity_logit_; }
        [[nodiscard]] std::span<const Vec3f> color() const { return color_; }

        [[nodiscard]] std::span<Vec3f> position() { return position_; }
        [[nodiscard]] std::span<Vec3f> log_scale() { return log_scale_; }
        [[nodiscard]] std::span<Quatf> rotation() { return rotation_; }
        [[nodiscard]] std::span<float> opacity_logit() { return opacity_logit_; }
        [[nodiscard]] std::span<Vec3f> color() { return color_; }

        bool operator==(const Scene3&) const = default;

    private:
        std::size_t capacity_;
        std::vector<Vec3f> position_;
        std::vector<Vec3f> log_scale_;
        std::vector<Quatf> rotation_;
        std::vector<float> opacity_logit_;
        std::vector<Vec3f> color_;
    };

} // namespace splitkit
