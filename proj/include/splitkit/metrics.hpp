/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/image.hpp"

namespace splitkit {

    /// PSNR ceiling reported when the MSE falls below 1e-10.
    inline constexpr double kPsnrCap = 100.0;

    /// 10 log10(1 / MSE) for images in [0, 1]. Throws DomainError on a size mismatch.
    [[nodiscard]] double psnr(const RgbImage& a, const RgbImage& b);
    [[nodiscard]] double psnr(const GrayImage& a, const GrayImage& b);
    [[nodiscard]] double psnr_from_mse(double mse);

    /// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), C1 = 0.01^2,
    /// C2 = 0.03^2, averaged over every window that fits inside the image.
    /// RGB inputs are converted to Rec.601 luma first. Throws DomainError on
    /// a size mismatch or when the image is smaller than the window.
    [[nodiscard]] double ssim(const RgbImage& a, const RgbImage& b);
    [[nodiscard]] double ssim(const GrayImage& a, const GrayImage& b);

} // namespace splitkit
