/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/image.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace splitkit {

    using AnyImage = std::variant<GrayImage, RgbImage>;

    /// Binary netpbm (P5 gray or P6 RGB) with maxval 255; samples map to [0, 1]
    /// by /255. Header comments are skipped. Throws FormatError
    /// (MalformedHeader, UnsupportedMaxval, SizeMismatch).
    [[nodiscard]] AnyImage decode_netpbm(std::span<const std::uint8_t> bytes);

    /// Canonical "P5\n<w> <h>\n255\n" / "P6\n..." encodings, samples round(v*255) clamped.
    [[nodiscard]] std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
    [[nodiscard]] std::vector<std::uint8_t> encode_ppm(const RgbImage& img);

    [[nodiscard]] AnyImage read_image(const std::filesystem::path& path);
    /// Reads P5 or P6; gray input is replicated into three channels.
    [[nodiscard]] RgbImage read_rgb(const std::filesystem::path& path);
    [[nodiscard]] GrayImage read_pgm(const std::filesystem::path& path);

    void write_pgm(const GrayImage& img, const std::filesystem::path& path);
    void write_ppm(const RgbImage& img, const std::filesystem::path& path);

} // namespace splitkit
