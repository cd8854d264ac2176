/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/math.hpp"
#include "splitkit/errors.hpp"

#include <string>

namespace splitkit {

    double logit(double p) {
        if (!(p > 0.0 && p < 1.0)) {
            throw DomainError("logit: p must lie in (0, 1), got " + std::to_string(p));
        }
        return std::log(p / (1.0 - p));
    }

    Quatf normalize_quat(const Quatf& q) {
        const double n2 = double(q[0]) * q[0] + double(q[1]) * q[1] +
                          double(q[2]) * q[2] + double(q[3]) * q[3];
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            throw DomainError("quaternion has zero or non-finite norm");
        }
        const double inv = 1.0 / std::sqrt(n2);
        return {float(q[0] * inv), float(q[1] * inv), float(q[2] * inv), float(q[3] * inv)};
    }

    Mat3d quat_to_rotmat(const Quatf& q) {
        double w = q[0], x = q[1], y = q[2], z = q[3];
        const double n2 = w * w + x * x + y * y + z * z;
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            throw DomainError("quat_to_rotmat: zero or non-finite quaternion");
        }
        const double inv = 1.0 / std::sqrt(n2);
        w *= inv;
        x *= inv;
        y *= inv;
        z *= inv;

        return {
            1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
            2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
            2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y),
        };
    }

} // namespace splitkit
