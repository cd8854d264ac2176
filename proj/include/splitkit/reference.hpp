/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

// Serial, straightforward versions of the parallel kernels. They favour the
// most literal formulation over speed and exist to cross-check and benchmark
// the production paths.

#include "splitkit/edge_pipeline.hpp"
#include "splitkit/gaussian.hpp"
#include "splitkit/las_split.hpp"
#include "splitkit/render2d.hpp"

namespace splitkit::reference {

    /// Direct 25-tap 2D convolution with clamped (edge-replicated) indices.
    [[nodiscard]] GrayImage gaussian_blur_5x5(const GrayImage& img, double sigma);

    [[nodiscard]] GradientField sobel_gradients(const GrayImage& img);

    /// NMS where the neighbour direction comes from rounding the unit vector
    /// of the angle snapped to a multiple of 45 degrees.
    [[nodiscard]] GrayImage nms_thin(const GradientField& field);

    /// Every pixel visits every primitive; the covariance is inverted explicitly.
    template <typename T>
    [[nodiscard]] RgbImage render(const BasicScene2<T>& scene, const RenderParams& p);

    /// Pixel-major accumulation of the analytic gradients.
    template <typename T>
    [[nodiscard]] Gradients backward(const BasicScene2<T>& scene, const RgbImage& target, const RenderParams& p);

    /// One primitive at a time, appending children in mask order.
    void las_split_sequential(Scene3& scene, std::span<const std::uint8_t> mask, const SplitConstants& c);
    void las_split_sequential(Scene2& scene, std::span<const std::uint8_t> mask, const SplitConstants& c);

} // namespace splitkit::reference
