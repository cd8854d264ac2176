/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/reference.hpp"
#include "splitkit/errors.hpp"
#include "splitkit/math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace splitkit::reference {

    GrayImage gaussian_blur_5x5(const GrayImage& img, double sigma) {
        const auto k = blur_kernel_5x5(sigma);
        GrayImage out(img.width, img.height);
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                double acc = 0.0;
                for (int j = -2; j <= 2; ++j) {
                    for (int i = -2; i <= 2; ++i) {
                        const int sx = std::clamp(x + i, 0, img.width - 1);
                        const int sy = std::clamp(y + j, 0, img.height - 1);
                        acc += k[std::size_t((j + 2) * 5 + (i + 2))] * img.at(sx, sy);
                    }
                }
                out.at(x, y) = float(std::clamp(acc, 0.0, 1.0));
            }
        }
        return out;
    }

    GradientField sobel_gradients(const GrayImage& img) {
        if (img.width < 3 || img.height < 3) {
            throw DomainError("sobel_gradients: image must be at least 3x3");
        }
        static constexpr int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
        static constexpr int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
        GradientField f{img.width, img.height, std::vector<float>(img.size()), std::vector<float>(img.size())};
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                double gx = 0.0, gy = 0.0;
                for (int j = -1; j <= 1; ++j) {
                    for (int i = -1; i <= 1; ++i) {
                        const double v = img.at(std::clamp(x + i, 0, img.width - 1), std::clamp(y + j, 0, img.height - 1));
                        gx += kx[j + 1][i + 1] * v;
                        gy += ky[j + 1][i + 1] * v;
                    }
                }
                double theta = std::atan2(gy, gx);
                if (theta < 0.0) {
                    theta += std::numbers::pi;
                }
                if (theta >= std::numbers::pi) {
                    theta -= std::numbers::pi;
                }
                const std::size_t idx = std::size_t(y) * img.width + x;
                f.magnitude[idx] = float(std::hypot(gx, gy));
                f.orientation[idx] = std::min(float(theta), std::nextafter(float(std::numbers::pi), 0.0f));
            }
        }
        return f;
    }

    GrayImage nms_thin(const GradientField& field) {
        GrayImage out(field.width, field.height);
        auto mag = [&](int x, int y) -> float {
            if (x < 0 || y < 0 || x >= field.width || y >= field.height) {
                return 0.0f;
            }
            return field.magnitude[std::size_t(y) * field.width + x];
        };
        for (int y = 0; y < field.height; ++y) {
            for (int x = 0; x < field.width; ++x) {
                const float m = mag(x, y);
                if (m <= 0.0f) {
                    continue;
                }
                const double deg = double(field.orientation[std::size_t(y) * field.width + x]) * 180.0 / std::numbers::pi;
                const double snapped = std::fmod(std::floor((deg + 22.5) / 45.0) * 45.0, 180.0) * std::numbers::pi / 180.0;
                int dx = int(std::lround(std::cos(snapped)));
                int dy = int(std::lround(std::sin(snapped)));
                // (dx, dy) points "forward"; the opposite neighbour is the one earlier in row-major order
                if (dy < 0 || (dy == 0 && dx < 0)) {
                    dx = -dx;
                    dy = -dy;
                }
                const float ahead = mag(x + dx, y + dy);
                const float behind = mag(x - dx, y - dy);
                if (m > behind && m >= ahead) {
                    out.at(x, y) = m;
                }
            }
        }
        return out;
    }

    template <typename T>
    RgbImage render(const BasicScene2<T>& scene, const RenderParams& p) {
        p.validate();
        RgbImage out(p.width, p.height);
        const double cut2 = p.footprint_cutoff * p.footprint_cutoff;
        for (int y = 0; y < p.height; ++y) {
            for (int x = 0; x < p.width; ++x) {
                double wsum = kBackgroundWeight;
                double acc[3];
                for (int k = 0; k < 3; ++k) {
                    acc[k] = kBackgroundWeight * p.background[std::size_t(k)];
                }
                for (std::size_t i = 0; i < scene.size(); ++i) {
                    const auto g = scene.get(i);
                    const double c = std::cos(double(g.theta));
                    const double s = std::sin(double(g.theta));
                    const double v0 = std::exp(2.0 * double(g.log_scale[0]));
                    const double v1 = std::exp(2.0 * double(g.log_scale[1]));
                    const double sxx = c * c * v0 + s * s * v1;
                    const double sxy = c * s * (v0 - v1);
                    const double syy = s * s * v0 + c * c * v1;
                    const double det = sxx * syy - sxy * sxy;
                    const double ixx = syy / det;
                    const double ixy = -sxy / det;
                    const double iyy = sxx / det;
                    const double dx = x - double(g.position[0]);
                    const double dy = y - double(g.position[1]);
                    const double q = ixx * dx * dx + 2.0 * ixy * dx * dy + iyy * dy * dy;
                    if (q > cut2) {
                        continue;
                    }
                    const double w = sigmoid(double(g.opacity_logit)) * std::exp(-0.5 * q);
                    wsum += w;
                    for (int k = 0; k < 3; ++k) {
                        acc[k] += w * double(g.color[std::size_t(k)]);
                    }
                }
                for (int k = 0; k < 3; ++k) {
                    out.at(x, y, k) = float(std::clamp(acc[k] / wsum, 0.0, 1.0));
                }
            }
        }
        return out;
    }

    template <typename T>
    Gradients backward(const BasicScene2<T>& scene, const RgbImage& target, const RenderParams& p) {
        p.validate();
        const std::size_t n = scene.size();
        Gradients g;
        g.resize(n);
        const double cut2 = p.footprint_cutoff * p.footprint_cutoff;
        const double norm = 2.0 / double(target.data.size());
        double loss = 0.0;

        std::vector<double> q(n), wgt(n), u0(n), u1(n);
        for (int y = 0; y < p.height; ++y) {
            for (int x = 0; x < p.width; ++x) {
                double wsum = kBackgroundWeight;
                double acc[3];
                for (int k = 0; k < 3; ++k) {
                    acc[k] = kBackgroundWeight * p.background[std::size_t(k)];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const auto gi = scene.get(i);
                    const double c = std::cos(double(gi.theta));
                    const double s = std::sin(double(gi.theta));
                    const double dx = x - double(gi.position[0]);
                    const double dy = y - double(gi.position[1]);
                    u0[i] = c * dx + s * dy;
                    u1[i] = -s * dx + c * dy;
                    q[i] = u0[i] * u0[i] * std::exp(-2.0 * double(gi.log_scale[0])) +
                           u1[i] * u1[i] * std::exp(-2.0 * double(gi.log_scale[1]));
                    wgt[i] = q[i] > cut2 ? 0.0 : sigmoid(double(gi.opacity_logit)) * std::exp(-0.5 * q[i]);
                    wsum += wgt[i];
                    for (int k = 0; k < 3; ++k) {
                        acc[k] += wgt[i] * double(gi.color[std::size_t(k)]);
                    }
                }
                double color[3], dl_dc[3];
                for (int k = 0; k < 3; ++k) {
                    color[k] = acc[k] / wsum;
                    const double d = std::clamp(color[k], 0.0, 1.0) - double(target.at(x, y, k));
                    loss += d * d;
                    dl_dc[k] = (color[k] < 0.0 || color[k] > 1.0) ? 0.0 : norm * (color[k] - double(target.at(x, y, k)));
                }
                for (std::size_t i = 0; i < n; ++i) {
                    if (q[i] > cut2) {
                        continue;
                    }
                    const auto gi = scene.get(i);
                    double dl_dw = 0.0;
                    for (int k = 0; k < 3; ++k) {
                        dl_dw += dl_dc[k] * (double(gi.color[std::size_t(k)]) - color[k]) / wsum;
                        g.color[i][std::size_t(k)] += dl_dc[k] * wgt[i] / wsum;
                    }
                    const double op = sigmoid(double(gi.opacity_logit));
                    g.opacity_logit[i] += dl_dw * wgt[i] * (1.0 - op);
                    const double is0 = std::exp(-2.0 * double(gi.log_scale[0]));
                    const double is1 = std::exp(-2.0 * double(gi.log_scale[1]));
                    const double c = std::cos(double(gi.theta));
                    const double s = std::sin(double(gi.theta));
                    const double dl_dq = -0.5 * dl_dw * wgt[i];
                    // q = u^T diag(is) u with u = R^T (x - mu)
                    g.position[i][0] += dl_dq * (-2.0 * u0[i] * is0 * c + 2.0 * u1[i] * is1 * s);
                    g.position[i][1] += dl_dq * (-2.0 * u0[i] * is0 * s - 2.0 * u1[i] * is1 * c);
                    g.log_scale[i][0] += dl_dq * (-2.0 * u0[i] * u0[i] * is0);
                    g.log_scale[i][1] += dl_dq * (-2.0 * u1[i] * u1[i] * is1);
                    g.theta[i] += dl_dq * (2.0 * u0[i] * u1[i] * (is0 - is1));
                }
            }
        }
        g.loss = loss / double(target.data.size());
        return g;
    }

    namespace {

        template <typename Scene, typename SplitFn>
        void sequential(Scene& scene, std::span<const std::uint8_t> mask, SplitFn split) {
            if (mask.size() != scene.size()) {
                throw DomainError("split mask length does not match the scene");
            }
            const std::size_t before = scene.size();
            std::size_t added = 0;
            for (auto m : mask) {
                added += m ? 1 : 0;
            }
            if (added > scene.headroom()) {
                throw BudgetError("split exceeds budget");
            }
            for (std::size_t i = 0; i < before; ++i) {
                if (!mask[i]) {
                    continue;
                }
                const auto [plus, minus] = split(scene.get(i));
                scene.set(i, plus);
                scene.push_back(minus);
            }
        }

    } // namespace

    void las_split_sequential(Scene3& scene, std::span<const std::uint8_t> mask, const SplitConstants& c) {
        sequential(scene, mask, [&c](const Gaussian3& g) { return las_split_one(g, c); });
    }

    void las_split_sequential(Scene2& scene, std::span<const std::uint8_t> mask, const SplitConstants& c) {
        sequential(scene, mask, [&c](const Gaussian2& g) { return las_split_one_2d(g, c); });
    }

    template RgbImage render<float>(const Scene2&, const RenderParams&);
    template RgbImage render<double>(const Scene2d&, const RenderParams&);
    template Gradients backward<float>(const Scene2&, const RgbImage&, const RenderParams&);
    template Gradients backward<double>(const Scene2d&, const RgbImage&, const RenderParams&);

} // namespace splitkit::reference
