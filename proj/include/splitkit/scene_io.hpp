/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/gaussian.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace splitkit {

    // Scene file layout, all little-endian:
    //
    //   offset 0   magic    "IGSP"
    //   offset 4   version  u16 (= 1)
    //   offset 6   dims     u8  (2 or 3)
    //   offset 7   count    u64
    //   offset 15  payload  f32 columns: position, log_scale, rotation
    //                       (quaternion wxyz in 3D, theta in 2D), opacity_logit, color
    //
    // The payload holds exactly count * record_width(dims) bytes.

    inline constexpr std::array<char, 4> kSceneMagic{'I', 'G', 'S', 'P'};
    inline constexpr std::uint16_t kSceneVersion = 1;
    inline constexpr std::size_t kSceneHeaderSize = 15;

    /// Bytes per primitive: 36 for 2D, 56 for 3D.
    [[nodiscard]] std::size_t record_width(int dims);

    using AnyScene = std::variant<Scene2, Scene3>;

    [[nodiscard]] std::vector<std::uint8_t> encode_scene(const Scene2& scene);
    [[nodiscard]] std::vector<std::uint8_t> encode_scene(const Scene3& scene);

    /// Parses a scene file image. The returned scene's capacity equals its count.
    /// Throws FormatError (BadMagic, UnsupportedVersion, BadDims, SizeMismatch).
    /// Quaternions are re-normalized on load.
    [[nodiscard]] AnyScene decode_scene(std::span<const std::uint8_t> bytes);

    /// Writes via a temporary file and rename. Throws IoError.
    void write_scene(const Scene2& scene, const std::filesystem::path& path);
    void write_scene(const Scene3& scene, const std::filesystem::path& path);

    [[nodiscard]] AnyScene read_scene(const std::filesystem::path& path);
    /// As read_scene, but a file of the other dimensionality is a BadDims FormatError.
    [[nodiscard]] Scene2 read_scene2(const std::filesystem::path& path);
    [[nodiscard]] Scene3 read_scene3(const std::filesystem::path& path);

    /// Whole-file helpers shared with the image codecs.
    [[nodiscard]] std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
    void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

} // namespace splitkit
