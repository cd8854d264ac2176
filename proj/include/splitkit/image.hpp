/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstddef>
#include <vector>

namespace splitkit {

    /// Single-channel row-major image. Pixel (x, y) sits at index y * width + x.
    struct GrayImage {
        int width = 0;
        int height = 0;
        std::vector<float> pixels;

        GrayImage() = default;
        GrayImage(int w, int h, float fill = 0.0f)
            : width(w),
              height(h),
              pixels(std::size_t(w) * std::size_t(h), fill) {}

        [[nodiscard]] float at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
        [[nodiscard]] float& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
        [[nodiscard]] std::size_t size() const noexcept { return pixels.size(); }

        bool operator==(const GrayImage&) const = default;
    };

    /// Interleaved RGB image, channels in [0, 1].
    struct RgbImage {
        int width = 0;
        int height = 0;
        std::vector<float> data;

        RgbImage() = default;
        RgbImage(int w, int h, float fill = 0.0f)
            : width(w),
              height(h),
              data(std::size_t(w) * std::size_t(h) * 3, fill) {}

        [[nodiscard]] float at(int x, int y, int c) const {
            return data[(std::size_t(y) * width + x) * 3 + c];
        }
        [[nodiscard]] float& at(int x, int y, int c) {
            return data[(std::size_t(y) * width + x) * 3 + c];
        }
        [[nodiscard]] std::size_t pixel_count() const noexcept {
            return std::size_t(width) * std::size_t(height);
        }

        bool operator==(const RgbImage&) const = default;
    };

    /// Replicates a gray image into three channels.
    [[nodiscard]] RgbImage to_rgb(const GrayImage& gray);

} // namespace splitkit
