/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/gaussian.hpp"
#include "splitkit/math.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace splitkit {

    /// Shrink factors applied by a long-axis split.
    struct SplitConstants {
        double alpha = 0.5;      ///< long-axis shrink, also the offset fraction
        double gamma_axis = 0.85; ///< shrink of the remaining axes
        double beta = 0.6;       ///< physical opacity multiplier

        /// Throws DomainError unless 0 < alpha < 1, 0 < gamma_axis <= 1, 0 < beta <= 1.
        void validate() const;
    };

    /// One byte per primitive; non-zero marks it for splitting.
    using SplitMask = std::vector<std::uint8_t>;

    /// Index of the largest log-scale; the lowest index wins ties.
    [[nodiscard]] int principal_axis(std::span<const float> log_scale);

    /// Column `axis` of the row-major rotation matrix scaled by `s_phys`
    /// (three multiplications instead of a full matrix-vector product).
    [[nodiscard]] inline Vec3d axis_displacement(const Mat3d& rot, int axis, double s_phys) {
        return {rot[axis] * s_phys, rot[axis + 3] * s_phys, rot[axis + 6] * s_phys};
    }

    /// Long-axis split of one primitive. `first` carries the +offset child and
    /// `second` the -offset child; rotation and color are inherited.
    [[nodiscard]] std::pair<Gaussian3, Gaussian3> las_split_one(const Gaussian3& g,
                                                                const SplitConstants& c = {});
    [[nodiscard]] std::pair<Gaussian2, Gaussian2> las_split_one_2d(const Gaussian2& g,
                                                                   const SplitConstants& c = {});

    /// Splits every masked primitive in place. The parent slot receives the
    /// +offset child and the -offset child is appended; appended slots follow
    /// mask order. Returns the number of splits.
    ///
    /// Throws DomainError when the mask length differs from the scene size and
    /// BudgetError when count + popcount(mask) exceeds the capacity; the scene
    /// is left untouched in both cases.
    std::size_t las_split_batch(Scene3& scene, std::span<const std::uint8_t> mask,
                                const SplitConstants& c = {});
    std::size_t las_split_batch(Scene2& scene, std::span<const std::uint8_t> mask,
                                const SplitConstants& c = {});

    /// Builds a mask of length `count` from a list of indices. Out-of-range
    /// indices are a DomainError; duplicates collapse.
    [[nodiscard]] SplitMask mask_from_indices(std::span<const std::size_t> indices, std::size_t count);

} // namespace splitkit
