/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <array>
#include <cmath>

namespace splitkit {

    using Vec2f = std::array<float, 2>;
    using Vec3f = std::array<float, 3>;
    using Vec3d = std::array<double, 3>;
    /// Quaternion in (w, x, y, z) order.
    using Quatf = std::array<float, 4>;
    /// 3x3 matrix, row-major flat: element (r, c) lives at index 3*r + c.
    using Mat3d = std::array<double, 9>;

    /// Logistic function, 1 / (1 + e^-x). Saturates instead of overflowing.
    [[nodiscard]] inline double sigmoid(double x) noexcept {
        if (x >= 0.0) {
            return 1.0 / (1.0 + std::exp(-x));
        }
        const double e = std::exp(x);
        return e / (1.0 + e);
    }

    /// Inverse of sigmoid, ln(p / (1 - p)). Throws DomainError unless 0 < p < 1.
    [[nodiscard]] double logit(double p);

    /// Returns q / |q|. Throws DomainError for the zero quaternion.
    [[nodiscard]] Quatf normalize_quat(const Quatf& q);

    /// Rotation matrix of a (w, x, y, z) quaternion. Inputs that are not unit
    /// length are normalized first; the zero quaternion is a DomainError.
    [[nodiscard]] Mat3d quat_to_rotmat(const Quatf& q);

} // namespace splitkit
