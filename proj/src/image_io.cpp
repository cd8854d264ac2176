/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/image_io.hpp"
#include "splitkit/errors.hpp"
#include "splitkit/scene_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace splitkit {

    namespace {

        using Code = FormatError::Code;

        class HeaderParser {
        public:
            explicit HeaderParser(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

            void skip_space_and_comments() {
                while (pos_ < bytes_.size()) {
                    const auto c = bytes_[pos_];
                    if (c == '#') {
                        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
                            ++pos_;
                        }
                    } else if (std::isspace(c)) {
                        ++pos_;
                    } else {
                        break;
                    }
                }
            }

            long number() {
                skip_space_and_comments();
                long v = 0;
                std::size_t digits = 0;
                while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
                    v = v * 10 + (bytes_[pos_] - '0');
                    ++pos_;
                    if (++digits > 9) {
                        throw FormatError(Code::MalformedHeader, "malformed header: number too large");
                    }
                }
                if (digits == 0) {
                    throw FormatError(Code::MalformedHeader, "malformed header: expected a number");
                }
                return v;
            }

            // exactly one whitespace byte separates maxval from the raster
            void single_space() {
                if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
                    throw FormatError(Code::MalformedHeader, "malformed header: missing whitespace after maxval");
                }
                ++pos_;
            }

            [[nodiscard]] std::size_t pos() const { return pos_; }
            void advance(std::size_t n) { pos_ += n; }

        private:
            std::span<const std::uint8_t> bytes_;
            std::size_t pos_ = 0;
        };

        std::uint8_t quantize(float v) {
            const double s = std::round(std::clamp(double(v), 0.0, 1.0) * 255.0);
            return std::uint8_t(s);
        }

        std::vector<std::uint8_t> encode(const char* magic, int w, int h, std::span<const float> samples) {
            const std::string header = std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
            std::vector<std::uint8_t> out(header.begin(), header.end());
            out.reserve(header.size() + samples.size());
            for (float v : samples) {
                out.push_back(quantize(v));
            }
            return out;
        }

    } // namespace

    AnyImage decode_netpbm(std::span<const std::uint8_t> bytes) {
        if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
            throw FormatError(Code::MalformedHeader, "malformed header: expected binary P5 or P6");
        }
        const int channels = bytes[1] == '5' ? 1 : 3;
        HeaderParser p(bytes);
        p.advance(2);
        const long w = p.number();
        const long h = p.number();
        const long maxval = p.number();
        if (w < 1 || h < 1) {
            throw FormatError(Code::MalformedHeader, "malformed header: image size must be positive");
        }
        if (maxval < 1 || maxval > 65535) {
            throw FormatError(Code::MalformedHeader, "malformed header: maxval out of range");
        }
        if (maxval != 255) {
            throw FormatError(Code::UnsupportedMaxval, "unsupported maxval " + std::to_string(maxval));
        }
        p.single_space();

        const auto samples = std::size_t(w) * std::size_t(h) * std::size_t(channels);
        if (bytes.size() - p.pos() < samples) {
            throw FormatError(Code::SizeMismatch, "size mismatch: raster shorter than the header declares");
        }
        const auto raster = bytes.subspan(p.pos(), samples);

        if (channels == 1) {
            GrayImage img(static_cast<int>(w), static_cast<int>(h));
            for (std::size_t i = 0; i < samples; ++i) {
                img.pixels[i] = float(raster[i]) / 255.0f;
            }
            return img;
        }
        RgbImage img(static_cast<int>(w), static_cast<int>(h));
        for (std::size_t i = 0; i < samples; ++i) {
            img.data[i] = float(raster[i]) / 255.0f;
        }
        return img;
    }

    std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
        return encode("P5", img.width, img.height, img.pixels);
    }

    std::vector<std::uint8_t> encode_ppm(const RgbImage& img) {
        return encode("P6", img.width, img.height, img.data);
    }

    AnyImage read_image(const std::filesystem::path& path) {
        return decode_netpbm(read_file(path));
    }

    RgbImage read_rgb(const std::filesystem::path& path) {
        auto any = read_image(path);
        if (auto* gray = std::get_if<GrayImage>(&any)) {
            return to_rgb(*gray);
        }
        return std::get<RgbImage>(std::move(any));
    }

    GrayImage read_pgm(const std::filesystem::path& path) {
        auto any = read_image(path);
        if (auto* gray = std::get_if<GrayImage>(&any)) {
            return std::move(*gray);
        }
        throw FormatError(Code::MalformedHeader, "expected a P5 graymap in '" + path.string() + "'");
    }

    void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
        write_file_atomic(path, encode_pgm(img));
    }

    void write_ppm(const RgbImage& img, const std::filesystem::path& path) {
        write_file_atomic(path, encode_ppm(img));
    }

} // namespace splitkit
