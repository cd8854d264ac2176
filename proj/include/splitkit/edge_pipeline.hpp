/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/image.hpp"
#include "splitkit/math.hpp"

#include <array>
#include <span>
#include <vector>

namespace splitkit {

    /// Sobel output. Orientation is atan2(Gy, Gx) folded into [0, pi); y grows downwards.
    struct GradientField {
        int width = 0;
        int height = 0;
        std::vector<float> magnitude;
        std::vector<float> orientation;
    };

    /// Thinned, median-normalized structural scores in [0, 1].
    struct ImportanceMap {
        int width = 0;
        int height = 0;
        std::vector<float> scores;

        [[nodiscard]] float at(int x, int y) const { return scores[std::size_t(y) * width + x]; }
    };

    inline constexpr double kDefaultBlurSigma = 1.0;

    /// Rec.601 luma, clamped to [0, 1].
    [[nodiscard]] GrayImage to_grayscale(const RgbImage& image);

    /// Normalized 5x5 Gaussian kernel, row-major, k(i,j) ~ exp(-(i^2+j^2) / (2 sigma^2)).
    [[nodiscard]] std::array<double, 25> blur_kernel_5x5(double sigma);

    /// 5x5 Gaussian blur with edge replication. Runs as two separable 5-tap passes.
    [[nodiscard]] GrayImage gaussian_blur_5x5(const GrayImage& img, double sigma = kDefaultBlurSigma);

    /// 3x3 Sobel gradients with edge-replicated borders. Needs at least a 3x3 image.
    [[nodiscard]] GradientField sobel_gradients(const GrayImage& img);

    /// Non-maximum suppression along the gradient direction quantized to
    /// 0/45/90/135 degrees. A pixel survives when it is strictly greater than
    /// the neighbour that comes first in row-major order and not smaller than
    /// the other one, so a two-pixel plateau keeps its first pixel.
    /// Out-of-image neighbours count as 0.
    [[nodiscard]] GrayImage nms_thin(const GradientField& field);

    /// Divides by twice the median of the strictly positive values and clamps to 1.
    [[nodiscard]] ImportanceMap median_normalize(const GrayImage& thinned);

    /// grayscale -> blur -> Sobel -> NMS -> median normalization.
    [[nodiscard]] ImportanceMap importance_pipeline(const RgbImage& image,
                                                    double sigma = kDefaultBlurSigma);

    /// Bilinear lookup at pixel-unit positions; anything outside
    /// [0, W-1] x [0, H-1] scores 0.
    [[nodiscard]] std::vector<float> sample_scores(const ImportanceMap& map,
                                                   std::span<const Vec2f> positions);
    [[nodiscard]] float sample_score(const ImportanceMap& map, double x, double y);

    [[nodiscard]] GrayImage to_gray_image(const ImportanceMap& map);

} // namespace splitkit
