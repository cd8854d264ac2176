/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/edge_pipeline.hpp"
#include "splitkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace splitkit {

    namespace {

        void require_valid(const GrayImage& img, const char* op) {
            if (img.width < 1 || img.height < 1 ||
                img.pixels.size() != std::size_t(img.width) * std::size_t(img.height)) {
                throw DomainError(std::string(op) + ": image must be non-empty and consistently sized");
            }
        }

        std::array<double, 5> blur_taps(double sigma) {
            std::array<double, 5> taps{};
            double sum = 0.0;
            for (int i = -2; i <= 2; ++i) {
                taps[i + 2] = std::exp(-double(i * i) / (2.0 * sigma * sigma));
                sum += taps[i + 2];
            }
            for (auto& t : taps) {
                t /= sum;
            }
            return taps;
        }

        void require_sigma(double sigma) {
            if (!(sigma > 0.0) || !std::isfinite(sigma)) {
                throw DomainError("blur sigma must be positive and finite");
            }
        }

        struct NeighbourPair {
            int before_dx, before_dy;
            int after_dx, after_dy;
        };

        NeighbourPair quantize(float orientation) {
            const double deg = double(orientation) * 180.0 / std::numbers::pi;
            if (deg < 22.5 || deg >= 157.5) {
                return {-1, 0, 1, 0};
            }
            if (deg < 67.5) {
                return {-1, -1, 1, 1};
            }
            if (deg < 112.5) {
                return {0, -1, 0, 1};
            }
            return {1, -1, -1, 1};
        }

    } // namespace

    GrayImage to_grayscale(const RgbImage& image) {
        if (image.width < 1 || image.height < 1 ||
            image.data.size() != image.pixel_count() * 3) {
            throw DomainError("to_grayscale: image must be non-empty and consistently sized");
        }
        GrayImage out(image.width, image.height);
        const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const float* px = &image.data[std::size_t(i) * 3];
            const double v = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
            out.pixels[std::size_t(i)] = float(std::clamp(v, 0.0, 1.0));
        }
        return out;
    }

    std::array<double, 25> blur_kernel_5x5(double sigma) {
        require_sigma(sigma);
        std::array<double, 25> k{};
        double sum = 0.0;
        for (int j = -2; j <= 2; ++j) {
            for (int i = -2; i <= 2; ++i) {
                const double v = std::exp(-double(i * i + j * j) / (2.0 * sigma * sigma));
                k[(j + 2) * 5 + (i + 2)] = v;
                sum += v;
            }
        }
        for (auto& v : k) {
            v /= sum;
        }
        return k;
    }

    GrayImage gaussian_blur_5x5(const GrayImage& img, double sigma) {
        require_sigma(sigma);
        require_valid(img, "gaussian_blur_5x5");
        const auto taps = blur_taps(sigma);
        const int w = img.width;
        const int h = img.height;

        // Horizontal pass kept in double so the second pass sees unrounded values.
        std::vector<double> tmp(img.size());
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int i = -2; i <= 2; ++i) {
                    acc += taps[i + 2] * img.at(std::clamp(x + i, 0, w - 1), y);
                }
                tmp[std::size_t(y) * w + x] = acc;
            }
        }

        GrayImage out(w, h);
#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int j = -2; j <= 2; ++j) {
                    acc += taps[j + 2] * tmp[std::size_t(std::clamp(y + j, 0, h - 1)) * w + x];
                }
                out.at(x, y) = float(std::clamp(acc, 0.0, 1.0));
            }
        }
        return out;
    }

    GradientField sobel_gradients(const GrayImage& img) {
        require_valid(img, "sobel_gradients");
        if (img.width < 3 || img.height < 3) {
            throw DomainError("sobel_gradients: image must be at least 3x3");
        }
        const int w = img.width;
        const int h = img.height;
        GradientField field{w, h, std::vector<float>(img.size()), std::vector<float>(img.size())};

#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            const int ym = std::max(y - 1, 0);
            const int yp = std::min(y + 1, h - 1);
            for (int x = 0; x < w; ++x) {
                const int xm = std::max(x - 1, 0);
                const int xp = std::min(x + 1, w - 1);
                const double a = img.at(xm, ym), b = img.at(x, ym), c = img.at(xp, ym);
                const double d = img.at(xm, y), f = img.at(xp, y);
                const double g = img.at(xm, yp), hh = img.at(x, yp), k = img.at(xp, yp);
                const double gx = (c + 2.0 * f + k) - (a + 2.0 * d + g);
                const double gy = (g + 2.0 * hh + k) - (a + 2.0 * b + c);

                double theta = std::atan2(gy, gx);
                if (theta < 0.0) {
                    theta += std::numbers::pi;
                }
                if (theta >= std::numbers::pi) {
                    theta -= std::numbers::pi;
                }
                const std::size_t idx = std::size_t(y) * w + x;
                field.magnitude[idx] = float(std::sqrt(gx * gx + gy * gy));
                // float rounding can push values just below pi up to pi
                field.orientation[idx] = std::min(float(theta), std::nextafter(float(std::numbers::pi), 0.0f));
            }
        }
        return field;
    }

    GrayImage nms_thin(const GradientField& field) {
        const int w = field.width;
        const int h = field.height;
        GrayImage out(w, h);
        auto mag = [&](int x, int y) -> float {
            if (x < 0 || y < 0 || x >= w || y >= h) {
                return 0.0f;
            }
            return field.magnitude[std::size_t(y) * w + x];
        };

#pragma omp parallel for schedule(static)
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const std::size_t idx = std::size_t(y) * w + x;
                const float m = field.magnitude[idx];
                if (m <= 0.0f) {
                    continue;
                }
                const auto nb = quantize(field.orientation[idx]);
                const float before = mag(x + nb.before_dx, y + nb.before_dy);
                const float after = mag(x + nb.after_dx, y + nb.after_dy);
                if (m > before && m >= after) {
                    out.pixels[idx] = m;
                }
            }
        }
        return out;
    }

    ImportanceMap median_normalize(const GrayImage& thinned) {
        std::vector<float> positives;
        positives.reserve(thinned.size() / 8);
        for (float v : thinned.pixels) {
            if (v > 0.0f) {
                positives.push_back(v);
            }
        }

        double median = 1.0;
        if (!positives.empty()) {
            const std::size_t n = positives.size();
            const auto mid = positives.begin() + std::ptrdiff_t(n / 2);
            std::nth_element(positives.begin(), mid, positives.end());
            median = *mid;
            if (n % 2 == 0) {
                const double lower = *std::max_element(positives.begin(), mid);
                median = 0.5 * (median + lower);
            }
        }

        ImportanceMap map{thinned.width, thinned.height, std::vector<float>(thinned.size(), 0.0f)};
        const double inv = 1.0 / (2.0 * median);
        const auto n = static_cast<std::ptrdiff_t>(thinned.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const float v = thinned.pixels[std::size_t(i)];
            if (v > 0.0f) {
                map.scores[std::size_t(i)] = float(std::min(double(v) * inv, 1.0));
            }
        }
        return map;
    }

    ImportanceMap importance_pipeline(const RgbImage& image, double sigma) {
        return median_normalize(nms_thin(sobel_gradients(gaussian_blur_5x5(to_grayscale(image), sigma))));
    }

    float sample_score(const ImportanceMap& map, double x, double y) {
        if (!(x >= 0.0 && y >= 0.0 && x <= double(map.width - 1) && y <= double(map.height - 1))) {
            return 0.0f;
        }
        const int x0 = int(std::floor(x));
        const int y0 = int(std::floor(y));
        const int x1 = std::min(x0 + 1, map.width - 1);
        const int y1 = std::min(y0 + 1, map.height - 1);
        const double fx = x - x0;
        const double fy = y - y0;
        const double top = (1.0 - fx) * map.at(x0, y0) + fx * map.at(x1, y0);
        const double bottom = (1.0 - fx) * map.at(x0, y1) + fx * map.at(x1, y1);
        return float((1.0 - fy) * top + fy * bottom);
    }

    std::vector<float> sample_scores(const ImportanceMap& map, std::span<const Vec2f> positions) {
        std::vector<float> out(positions.size());
        for (std::size_t i = 0; i < positions.size(); ++i) {
            out[i] = sample_score(map, positions[i][0], positions[i][1]);
        }
        return out;
    }

    GrayImage to_gray_image(const ImportanceMap& map) {
        GrayImage out(map.width, map.height);
        out.pixels = map.scores;
        return out;
    }

} // namespace splitkit
