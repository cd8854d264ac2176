/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/errors.hpp"
#include "splitkit/scene_io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstring>

using namespace splitkit;

namespace {

    void put_f32(std::vector<std::uint8_t>& out, float f) {
        std::uint8_t b[4];
        std::memcpy(b, &f, 4);
        out.insert(out.end(), b, b + 4);
    }

    FormatError::Code decode_error(std::span<const std::uint8_t> bytes) {
        try {
            (void)decode_scene(bytes);
        } catch (const FormatError& e) {
            return e.code();
        }
        ADD_FAILURE() << "decode_scene accepted " << bytes.size() << " bytes";
        return FormatError::Code::InvalidValue;
    }

} // namespace

TEST(SceneFormat, RecordWidths) {
    // (3 + 3 + 4 + 1 + 3) floats and (2 + 2 + 1 + 1 + 3) floats
    EXPECT_EQ(record_width(3), 56u);
    EXPECT_EQ(record_width(2), 36u);
    EXPECT_EQ(kSceneHeaderSize, 15u);
    EXPECT_THROW((void)record_width(4), FormatError);
}

TEST(SceneFormat, GoldenBytesSingle2d) {
    static_assert(std::endian::native == std::endian::little);
    Scene2 s(1);
    Gaussian2 g;
    g.position = {1.5f, -2.0f};
    g.log_scale = {0.25f, 0.5f};
    g.theta = 0.75f;
    g.opacity_logit = -1.0f;
    g.color = {0.1f, 0.2f, 0.3f};
    s.push_back(g);

    std::vector<std::uint8_t> expected{'I', 'G', 'S', 'P', 1, 0, 2, 1, 0, 0, 0, 0, 0, 0, 0};
    for (float f : {1.5f, -2.0f, 0.25f, 0.5f, 0.75f, -1.0f, 0.1f, 0.2f, 0.3f}) {
        put_f32(expected, f);
    }
    EXPECT_EQ(encode_scene(s), expected);
}

TEST(SceneFormat, ColumnOrder3d) {
    Scene3 s(2);
    Gaussian3 a, b;
    a.position = {1, 2, 3};
    b.position = {4, 5, 6};
    a.opacity_logit = 7;
    b.opacity_logit = 8;
    s.push_back(a);
    s.push_back(b);
    const auto bytes = encode_scene(s);
    ASSERT_EQ(bytes.size(), 15u + 2 * 56u);
    auto f32_at = [&](std::size_t float_index) {
        float f;
        std::memcpy(&f, bytes.data() + 15 + 4 * float_index, 4);
        return f;
    };
    // positions column: 6 floats, then log-scales (6), rotations (8), opacities
    EXPECT_EQ(f32_at(3), 4.0f);
    EXPECT_EQ(f32_at(12), 1.0f); // first quaternion w
    EXPECT_EQ(f32_at(20), 7.0f);
    EXPECT_EQ(f32_at(21), 8.0f);
}

TEST(SceneFormat, EmptySceneIsHeaderOnly) {
    fixtures::TempDir dir("scene_empty");
    write_scene(Scene3{}, dir.file("e.igsp"));
    EXPECT_EQ(std::filesystem::file_size(dir.file("e.igsp")), kSceneHeaderSize);
    EXPECT_EQ(read_scene3(dir.file("e.igsp")).size(), 0u);
    EXPECT_FALSE(std::filesystem::exists(dir.file("e.igsp.tmp")));
}

TEST(SceneFormat, RoundTripSizes) {
    fixtures::TempDir dir("scene_rt");
    std::mt19937_64 rng(70);
    for (std::size_t n : {0u, 1u, 1000u}) {
        const Scene3 s3 = fixtures::random_scene3(rng, n, n);
        const Scene2 s2 = fixtures::random_scene2(rng, n, n, 64, 64);
        write_scene(s3, dir.file("a.igsp"));
        write_scene(s2, dir.file("b.igsp"));
        EXPECT_EQ(std::filesystem::file_size(dir.file("a.igsp")), kSceneHeaderSize + n * 56);
        const Scene3 r3 = read_scene3(dir.file("a.igsp"));
        const Scene2 r2 = read_scene2(dir.file("b.igsp"));
        ASSERT_EQ(r3.size(), n);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_EQ(r3.get(i), s3.get(i));
            EXPECT_EQ(r2.get(i), s2.get(i));
        }
        // rewrite is byte-identical
        EXPECT_EQ(encode_scene(r3), encode_scene(s3));
        EXPECT_EQ(encode_scene(r2), encode_scene(s2));
    }
}

TEST(SceneFormat, RejectsBadHeaders) {
    std::mt19937_64 rng(71);
    const auto good = encode_scene(fixtures::random_scene2(rng, 3, 3));

    auto bad = good;
    bad[0] = 'X';
    EXPECT_EQ(decode_error(bad), FormatError::Code::BadMagic);
    bad = good;
    bad[4] = 2;
    EXPECT_EQ(decode_error(bad), FormatError::Code::UnsupportedVersion);
    bad = good;
    bad[6] = 5;
    EXPECT_EQ(decode_error(bad), FormatError::Code::BadDims);
    bad = good;
    bad[7] = 4; // count 4, payload for 3
    EXPECT_EQ(decode_error(bad), FormatError::Code::SizeMismatch);
    bad = good;
    bad.push_back(0);
    EXPECT_EQ(decode_error(bad), FormatError::Code::SizeMismatch);
    bad = good;
    bad[14] = 0xff; // absurd count must not overflow the size check
    EXPECT_EQ(decode_error(bad), FormatError::Code::SizeMismatch);
}

TEST(SceneFormat, EveryTruncationFailsCleanly) {
    std::mt19937_64 rng(72);
    const auto bytes = encode_scene(fixtures::random_scene3(rng, 4, 4));
    for (std::size_t len = 0; len < bytes.size(); ++len) {
        const std::span<const std::uint8_t> cut(bytes.data(), len);
        const auto code = decode_error(cut);
        EXPECT_TRUE(code == FormatError::Code::SizeMismatch || code == FormatError::Code::BadMagic) << len;
    }
}

TEST(SceneFormat, RandomCorruptionNeverCrashes) {
    std::mt19937_64 rng(73);
    const auto good = encode_scene(fixtures::random_scene3(rng, 6, 6));
    std::uniform_int_distribution<std::size_t> pos(0, good.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int trial = 0; trial < 2000; ++trial) {
        auto bytes = good;
        for (int k = 0; k < 3; ++k) {
            bytes[pos(rng)] = std::uint8_t(byte(rng));
        }
        bytes.resize(pos(rng) + 1);
        try {
            const AnyScene s = decode_scene(bytes);
            const std::size_t n = std::visit([](const auto& sc) { return sc.size(); }, s);
            EXPECT_EQ(kSceneHeaderSize + n * record_width(std::holds_alternative<Scene2>(s) ? 2 : 3),
                      bytes.size());
        } catch (const FormatError&) {
        }
    }
}

TEST(SceneFormat, QuaternionsNormalizedOnLoad) {
    Scene3 s(1);
    s.push_back(Gaussian3{});
    auto bytes = encode_scene(s);
    const std::size_t q0 = kSceneHeaderSize + 6 * 4;
    const float two = 2.0f;
    std::memcpy(bytes.data() + q0, &two, 4);
    const Scene3 r = std::get<Scene3>(decode_scene(bytes));
    EXPECT_EQ(r.rotation()[0], (Quatf{1.0f, 0.0f, 0.0f, 0.0f}));

    const float zero = 0.0f;
    std::memcpy(bytes.data() + q0, &zero, 4);
    EXPECT_EQ(decode_error(bytes), FormatError::Code::InvalidValue);
}

TEST(SceneFormat, DimensionMismatchAndIoErrors) {
    fixtures::TempDir dir("scene_err");
    write_scene(Scene3{}, dir.file("three.igsp"));
    EXPECT_THROW((void)read_scene2(dir.file("three.igsp")), FormatError);
    EXPECT_THROW((void)read_scene(dir.file("missing.igsp")), IoError);
    EXPECT_THROW(write_scene(Scene2{}, dir.file("no/such/dir/x.igsp")), IoError);
}
