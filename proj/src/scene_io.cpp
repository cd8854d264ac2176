/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/scene_io.hpp"
#include "splitkit/errors.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>
#include <system_error>

namespace splitkit {

    namespace {

        class Writer {
        public:
            explicit Writer(std::size_t reserve) { buf_.reserve(reserve); }

            void u8(std::uint8_t v) { buf_.push_back(v); }
            void u16(std::uint16_t v) {
                for (int i = 0; i < 2; ++i) {
                    buf_.push_back(std::uint8_t(v >> (8 * i)));
                }
            }
            void u64(std::uint64_t v) {
                for (int i = 0; i < 8; ++i) {
                    buf_.push_back(std::uint8_t(v >> (8 * i)));
                }
            }
            void f32(float f) {
                const auto v = std::bit_cast<std::uint32_t>(f);
                for (int i = 0; i < 4; ++i) {
                    buf_.push_back(std::uint8_t(v >> (8 * i)));
                }
            }

            std::vector<std::uint8_t> take() { return std::move(buf_); }

        private:
            std::vector<std::uint8_t> buf_;
        };

        class Reader {
        public:
            explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

            std::uint8_t u8() { return bytes_[pos_++]; }
            std::uint16_t u16() {
                std::uint16_t v = 0;
                for (int i = 0; i < 2; ++i) {
                    v |= std::uint16_t(std::uint16_t(bytes_[pos_++]) << (8 * i));
                }
                return v;
            }
            std::uint64_t u64() {
                std::uint64_t v = 0;
                for (int i = 0; i < 8; ++i) {
                    v |= std::uint64_t(bytes_[pos_++]) << (8 * i);
                }
                return v;
            }
            float f32() {
                std::uint32_t v = 0;
                for (int i = 0; i < 4; ++i) {
                    v |= std::uint32_t(bytes_[pos_++]) << (8 * i);
                }
                return std::bit_cast<float>(v);
            }

        private:
            std::span<const std::uint8_t> bytes_;
            std::size_t pos_ = 0;
        };

        void header(Writer& w, int dims, std::size_t count) {
            for (char c : kSceneMagic) {
                w.u8(std::uint8_t(c));
            }
            w.u16(kSceneVersion);
            w.u8(std::uint8_t(dims));
            w.u64(count);
        }

    } // namespace

    std::size_t record_width(int dims) {
        switch (dims) {
        case 2: return (2 + 2 + 1 + 1 + 3) * sizeof(float);
        case 3: return (3 + 3 + 4 + 1 + 3) * sizeof(float);
        default: throw FormatError(FormatError::Code::BadDims, "unsupported scene dimensionality " + std::to_string(dims));
        }
    }

    std::vector<std::uint8_t> encode_scene(const Scene2& scene) {
        Writer w(kSceneHeaderSize + scene.size() * record_width(2));
        header(w, 2, scene.size());
        for (const auto& p : scene.position()) {
            w.f32(p[0]);
            w.f32(p[1]);
        }
        for (const auto& s : scene.log_scale()) {
            w.f32(s[0]);
            w.f32(s[1]);
        }
        for (float t : scene.theta()) {
            w.f32(t);
        }
        for (float o : scene.opacity_logit()) {
            w.f32(o);
        }
        for (const auto& c : scene.color()) {
            w.f32(c[0]);
            w.f32(c[1]);
            w.f32(c[2]);
        }
        return w.take();
    }

    std::vector<std::uint8_t> encode_scene(const Scene3& scene) {
        Writer w(kSceneHeaderSize + scene.size() * record_width(3));
        header(w, 3, scene.size());
        for (const auto& p : scene.position()) {
            for (float v : p) {
                w.f32(v);
            }
        }
        for (const auto& s : scene.log_scale()) {
            for (float v : s) {
                w.f32(v);
            }
        }
        for (const auto& q : scene.rotation()) {
            for (float v : q) {
                w.f32(v);
            }
        }
        for (float o : scene.opacity_logit()) {
            w.f32(o);
        }
        for (const auto& c : scene.color()) {
            for (float v : c) {
                w.f32(v);
            }
        }
        return w.take();
    }

    AnyScene decode_scene(std::span<const std::uint8_t> bytes) {
        using Code = FormatError::Code;
        if (bytes.size() < kSceneHeaderSize) {
            if (bytes.size() >= 4 && std::memcmp(bytes.data(), kSceneMagic.data(), 4) != 0) {
                throw FormatError(Code::BadMagic, "bad magic: not an IGSP scene file");
            }
            throw FormatError(Code::SizeMismatch, "size mismatch: file shorter than the scene header");
        }
        if (std::memcmp(bytes.data(), kSceneMagic.data(), 4) != 0) {
            throw FormatError(Code::BadMagic, "bad magic: not an IGSP scene file");
        }
        Reader r(bytes.subspan(4));
        const std::uint16_t version = r.u16();
        if (version != kSceneVersion) {
            throw FormatError(Code::UnsupportedVersion, "unsupported scene version " + std::to_string(version));
        }
        const int dims = r.u8();
        const std::size_t width = record_width(dims);
        const std::uint64_t count = r.u64();

        const std::size_t payload = bytes.size() - kSceneHeaderSize;
        if (count > std::numeric_limits<std::size_t>::max() / width || count * width != payload) {
            throw FormatError(Code::SizeMismatch, "size mismatch: header declares " + std::to_string(count) +
                                                      " primitives but payload holds " + std::to_string(payload) +
                                                      " bytes");
        }
        const auto n = std::size_t(count);

        if (dims == 2) {
            Scene2 scene(n);
            scene.grow(n);
            for (auto& p : scene.position()) {
                p = {r.f32(), r.f32()};
            }
            for (auto& s : scene.log_scale()) {
                s = {r.f32(), r.f32()};
            }
            for (auto& t : scene.theta()) {
                t = r.f32();
            }
            for (auto& o : scene.opacity_logit()) {
                o = r.f32();
            }
            for (auto& c : scene.color()) {
                c = {r.f32(), r.f32(), r.f32()};
            }
            return scene;
        }

        Scene3 scene(n);
        scene.grow(n);
        for (auto& p : scene.position()) {
            p = {r.f32(), r.f32(), r.f32()};
        }
        for (auto& s : scene.log_scale()) {
            s = {r.f32(), r.f32(), r.f32()};
        }
        for (auto& q : scene.rotation()) {
            q = {r.f32(), r.f32(), r.f32(), r.f32()};
            const double n2 = double(q[0]) * q[0] + double(q[1]) * q[1] + double(q[2]) * q[2] + double(q[3]) * q[3];
            // quaternions already unit within 1e-6 are kept bit-identical
            if (std::abs(n2 - 1.0) > 2e-6) {
                if (!(n2 > 0.0) || !std::isfinite(n2)) {
                    throw FormatError(Code::InvalidValue, "scene holds a zero or non-finite quaternion");
                }
                q = normalize_quat(q);
            }
        }
        for (auto& o : scene.opacity_logit()) {
            o = r.f32();
        }
        for (auto& c : scene.color()) {
            c = {r.f32(), r.f32(), r.f32()};
        }
        return scene;
    }

    std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw IoError("cannot open '" + path.string() + "' for reading");
        }
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (in.bad()) {
            throw IoError("failed reading '" + path.string() + "'");
        }
        return bytes;
    }

    void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw IoError("cannot open '" + tmp.string() + "' for writing");
            }
            out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
            out.flush();
            if (!out) {
                std::error_code ec;
                std::filesystem::remove(tmp, ec);
                throw IoError("short write to '" + tmp.string() + "'");
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec) {
            std::filesystem::remove(tmp, ec);
            throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "'");
        }
    }

    void write_scene(const Scene2& scene, const std::filesystem::path& path) {
        write_file_atomic(path, encode_scene(scene));
    }

    void write_scene(const Scene3& scene, const std::filesystem::path& path) {
        write_file_atomic(path, encode_scene(scene));
    }

    AnyScene read_scene(const std::filesystem::path& path) {
        return decode_scene(read_file(path));
    }

    Scene2 read_scene2(const std::filesystem::path& path) {
        auto any = read_scene(path);
        if (auto* s = std::get_if<Scene2>(&any)) {
            return std::move(*s);
        }
        throw FormatError(FormatError::Code::BadDims, "expected a 2D scene in '" + path.string() + "'");
    }

    Scene3 read_scene3(const std::filesystem::path& path) {
        auto any = read_scene(path);
        if (auto* s = std::get_if<Scene3>(&any)) {
            return std::move(*s);
        }
        throw FormatError(FormatError::Code::BadDims, "expected a 3D scene in '" + path.string() + "'");
    }

} // namespace splitkit
