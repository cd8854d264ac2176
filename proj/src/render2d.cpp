/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/render2d.hpp"
#include "splitkit/errors.hpp"
#include "splitkit/math.hpp"

#include <algorithm>
#include <cmath>

namespace splitkit {

    namespace {

        constexpr int kTile = 16;

        // Activated per-primitive quantities shared by forward and backward.
        struct Splat {
            double mx, my;
            double cs, sn;
            double inv_s0, inv_s1; // 1 / s^2 per local axis
            double opacity;
            double color[3];
            int x0, x1, y0, y1; // inclusive pixel bounds, empty when x0 > x1
        };

        template <typename T>
        std::vector<Splat> prepare(const BasicScene2<T>& scene, const RenderParams& p) {
            const std::size_t n = scene.size();
            std::vector<Splat> splats(n);
            const auto pos = scene.position();
            const auto ls = scene.log_scale();
            const auto th = scene.theta();
            const auto op = scene.opacity_logit();
            const auto col = scene.color();
            const double cut = p.footprint_cutoff;

            for (std::size_t i = 0; i < n; ++i) {
                Splat& s = splats[i];
                s.mx = double(pos[i][0]);
                s.my = double(pos[i][1]);
                s.cs = std::cos(double(th[i]));
                s.sn = std::sin(double(th[i]));
                const double s0 = std::exp(2.0 * double(ls[i][0]));
                const double s1 = std::exp(2.0 * double(ls[i][1]));
                s.inv_s0 = 1.0 / s0;
                s.inv_s1 = 1.0 / s1;
                s.opacity = sigmoid(double(op[i]));
                for (int k = 0; k < 3; ++k) {
                    s.color[k] = double(col[i][std::size_t(k)]);
                }
                // axis-aligned bounding box of the cutoff ellipse
                const double sxx = s.cs * s.cs * s0 + s.sn * s.sn * s1;
                const double syy = s.sn * s.sn * s0 + s.cs * s.cs * s1;
                const double rx = cut * std::sqrt(sxx);
                const double ry = cut * std::sqrt(syy);
                const double lo_x = std::max(std::ceil(s.mx - rx), 0.0);
                const double hi_x = std::min(std::floor(s.mx + rx), double(p.width - 1));
                const double lo_y = std::max(std::ceil(s.my - ry), 0.0);
                const double hi_y = std::min(std::floor(s.my + ry), double(p.height - 1));
                if (!(lo_x <= hi_x) || !(lo_y <= hi_y)) {
                    s.x0 = s.y0 = 1;
                    s.x1 = s.y1 = 0;
                } else {
                    s.x0 = int(lo_x);
                    s.x1 = int(hi_x);
                    s.y0 = int(lo_y);
                    s.y1 = int(hi_y);
                }
            }
            return splats;
        }

        struct Footprint {
            double q;  // squared Mahalanobis distance
            double u0; // local coordinates
            double u1;
        };

        inline Footprint footprint(const Splat& s, double px, double py) {
            const double dx = px - s.mx;
            const double dy = py - s.my;
            const double u0 = s.cs * dx + s.sn * dy;
            const double u1 = -s.sn * dx + s.cs * dy;
            return {u0 * u0 * s.inv_s0 + u1 * u1 * s.inv_s1, u0, u1};
        }

        // Unclamped blend per pixel: total weight and color.
        struct Forward {
            std::vector<double> weight;
            std::vector<double> color; // 3 per pixel
        };

        Forward forward(const std::vector<Splat>& splats, const RenderParams& p) {
            const int w = p.width;
            const int h = p.height;
            const int tiles_x = (w + kTile - 1) / kTile;
            const int tiles_y = (h + kTile - 1) / kTile;

            // Bins are filled in primitive order, which fixes the summation order per pixel.
            std::vector<std::vector<std::uint32_t>> bins(std::size_t(tiles_x) * tiles_y);
            for (std::size_t i = 0; i < splats.size(); ++i) {
                const Splat& s = splats[i];
                if (s.x0 > s.x1) {
                    continue;
                }
                for (int ty = s.y0 / kTile; ty <= s.y1 / kTile; ++ty) {
                    for (int tx = s.x0 / kTile; tx <= s.x1 / kTile; ++tx) {
                        bins[std::size_t(ty) * tiles_x + tx].push_back(std::uint32_t(i));
                    }
                }
            }

            Forward f{std::vector<double>(std::size_t(w) * h), std::vector<double>(std::size_t(w) * h * 3)};
            const double cut2 = p.footprint_cutoff * p.footprint_cutoff;
            const int tile_count = tiles_x * tiles_y;

#pragma omp parallel for schedule(dynamic, 1)
            for (int t = 0; t < tile_count; ++t) {
                const int tx = t % tiles_x;
                const int ty = t / tiles_x;
                const auto& bin = bins[std::size_t(t)];
                for (int y = ty * kTile; y < std::min((ty + 1) * kTile, h); ++y) {
                    for (int x = tx * kTile; x < std::min((tx + 1) * kTile, w); ++x) {
                        double wsum = kBackgroundWeight;
                        double acc[3] = {kBackgroundWeight * p.background[0], kBackgroundWeight * p.background[1],
                                         kBackgroundWeight * p.background[2]};
                        for (auto i : bin) {
                            const Splat& s = splats[i];
                            if (x < s.x0 || x > s.x1 || y < s.y0 || y > s.y1) {
                                continue;
                            }
                            const auto fp = footprint(s, x, y);
                            if (fp.q > cut2) {
                                continue;
                            }
                            const double wi = s.opacity * std::exp(-0.5 * fp.q);
                            wsum += wi;
                            acc[0] += wi * s.color[0];
                            acc[1] += wi * s.color[1];
                            acc[2] += wi * s.color[2];
                        }
                        const std::size_t idx = std::size_t(y) * w + x;
                        f.weight[idx] = wsum;
                        for (int k = 0; k < 3; ++k) {
                            f.color[idx * 3 + std::size_t(k)] = acc[k] / wsum;
                        }
                    }
                }
            }
            return f;
        }

        void require_target(const RgbImage& target, const RenderParams& p) {
            if (target.width != p.width || target.height != p.height ||
                target.data.size() != target.pixel_count() * 3) {
                throw DomainError("target image does not match the render size");
            }
        }

        double mse_clamped(const Forward& f, const RgbImage& target) {
            double acc = 0.0;
            for (std::size_t j = 0; j < f.color.size(); ++j) {
                const double d = std::clamp(f.color[j], 0.0, 1.0) - double(target.data[j]);
                acc += d * d;
            }
            return acc / double(f.color.size());
        }

    } // namespace

    void RenderParams::validate() const {
        if (width < 1 || height < 1) {
            throw DomainError("render size must be positive");
        }
        if (!(footprint_cutoff > 0.0)) {
            throw DomainError("footprint cutoff must be positive");
        }
    }

    void Gradients::resize(std::size_t n) {
        position.assign(n, {0.0, 0.0});
        log_scale.assign(n, {0.0, 0.0});
        theta.assign(n, 0.0);
        opacity_logit.assign(n, 0.0);
        color.assign(n, {0.0, 0.0, 0.0});
    }

    template <typename T>
    RgbImage render(const BasicScene2<T>& scene, const RenderParams& p) {
        p.validate();
        const auto f = forward(prepare(scene, p), p);
        RgbImage out(p.width, p.height);
        for (std::size_t j = 0; j < f.color.size(); ++j) {
            out.data[j] = float(std::clamp(f.color[j], 0.0, 1.0));
        }
        return out;
    }

    double loss_l2(const RgbImage& rendered, const RgbImage& target) {
        if (rendered.width != target.width || rendered.height != target.height ||
            rendered.data.size() != target.data.size()) {
            throw DomainError("loss_l2: image dimensions differ");
        }
        if (rendered.data.empty()) {
            return 0.0;
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < rendered.data.size(); ++j) {
            const double d = double(rendered.data[j]) - double(target.data[j]);
            acc += d * d;
        }
        return acc / double(rendered.data.size());
    }

    template <typename T>
    double render_loss(const BasicScene2<T>& scene, const RgbImage& target, const RenderParams& p) {
        p.validate();
        require_target(target, p);
        return mse_clamped(forward(prepare(scene, p), p), target);
    }

    template <typename T>
    Gradients backward(const BasicScene2<T>& scene, const RgbImage& target, const RenderParams& p) {
        p.validate();
        require_target(target, p);
        const auto splats = prepare(scene, p);
        const auto f = forward(splats, p);

        Gradients g;
        g.resize(scene.size());
        g.loss = mse_clamped(f, target);

        // dL/dC per pixel channel; zero where the output clamp is active
        const double norm = 2.0 / double(f.color.size());
        std::vector<double> dl_dc(f.color.size());
        for (std::size_t j = 0; j < f.color.size(); ++j) {
            const double c = f.color[j];
            dl_dc[j] = (c < 0.0 || c > 1.0) ? 0.0 : norm * (c - double(target.data[j]));
        }

        const double cut2 = p.footprint_cutoff * p.footprint_cutoff;
        const int w = p.width;
        const auto n = static_cast<std::ptrdiff_t>(splats.size());

#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
            const auto i = std::size_t(ii);
            const Splat& s = splats[i];
            double d_mx = 0.0, d_my = 0.0, d_l0 = 0.0, d_l1 = 0.0, d_th = 0.0, d_op = 0.0;
            double d_c[3] = {0.0, 0.0, 0.0};

            for (int y = s.y0; y <= s.y1; ++y) {
                for (int x = s.x0; x <= s.x1; ++x) {
                    const auto fp = footprint(s, x, y);
                    if (fp.q > cut2) {
                        continue;
                    }
                    const std::size_t idx = std::size_t(y) * w + x;
                    const double inv_w = 1.0 / f.weight[idx];
                    const double gauss = std::exp(-0.5 * fp.q);
                    const double wi = s.opacity * gauss;

                    double dl_dw = 0.0;
                    for (int k = 0; k < 3; ++k) {
                        const double g_c = dl_dc[idx * 3 + std::size_t(k)];
                        dl_dw += g_c * (s.color[k] - f.color[idx * 3 + std::size_t(k)]) * inv_w;
                        d_c[k] += g_c * wi * inv_w;
                    }
                    if (dl_dw == 0.0) {
                        continue;
                    }
                    d_op += dl_dw * wi * (1.0 - s.opacity);

                    const double dl_dq = -0.5 * dl_dw * wi;
                    const double dq_du0 = 2.0 * fp.u0 * s.inv_s0;
                    const double dq_du1 = 2.0 * fp.u1 * s.inv_s1;
                    d_mx += dl_dq * (-dq_du0 * s.cs + dq_du1 * s.sn);
                    d_my += dl_dq * (-dq_du0 * s.sn - dq_du1 * s.cs);
                    d_l0 += dl_dq * (-2.0 * fp.u0 * fp.u0 * s.inv_s0);
                    d_l1 += dl_dq * (-2.0 * fp.u1 * fp.u1 * s.inv_s1);
                    d_th += dl_dq * 2.0 * fp.u0 * fp.u1 * (s.inv_s0 - s.inv_s1);
                }
            }
            g.position[i] = {d_mx, d_my};
            g.log_scale[i] = {d_l0, d_l1};
            g.theta[i] = d_th;
            g.opacity_logit[i] = d_op;
            g.color[i] = {d_c[0], d_c[1], d_c[2]};
        }
        return g;
    }

    template RgbImage render<float>(const Scene2&, const RenderParams&);
    template RgbImage render<double>(const Scene2d&, const RenderParams&);
    template double render_loss<float>(const Scene2&, const RgbImage&, const RenderParams&);
    template double render_loss<double>(const Scene2d&, const RgbImage&, const RenderParams&);
    template Gradients backward<float>(const Scene2&, const RgbImage&, const RenderParams&);
    template Gradients backward<double>(const Scene2d&, const RgbImage&, const RenderParams&);

} // namespace splitkit
