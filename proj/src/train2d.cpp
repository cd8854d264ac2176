/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/train2d.hpp"
#include "splitkit/edge_pipeline.hpp"
#include "splitkit/errors.hpp"
#include "splitkit/metrics.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>

namespace splitkit {

    namespace {

        constexpr double kAdamBeta1 = 0.9;
        constexpr double kAdamBeta2 = 0.999;
        constexpr double kAdamEps = 1e-15;
        constexpr double kMinScale = 0.25; // pixels

        // position(2), log_scale(2), theta, opacity, color(3)
        constexpr std::size_t kParams = 9;
        using ParamVec = std::array<double, kParams>;

        ParamVec pack(const Gradients& g, std::size_t i) {
            return {g.position[i][0], g.position[i][1], g.log_scale[i][0], g.log_scale[i][1], g.theta[i],
                    g.opacity_logit[i], g.color[i][0], g.color[i][1], g.color[i][2]};
        }

        class Optimizer {
        public:
            Optimizer(OptimizerKind kind, std::size_t n) : kind_(kind), m_(n, ParamVec{}), v_(n, ParamVec{}) {}

            /// Returns the step to subtract from each parameter for unit learning rate.
            ParamVec direction(std::size_t i, const ParamVec& grad) {
                if (kind_ == OptimizerKind::Sgd) {
                    return grad;
                }
                ParamVec dir{};
                const double bc1 = 1.0 - std::pow(kAdamBeta1, double(t_));
                const double bc2 = 1.0 - std::pow(kAdamBeta2, double(t_));
                for (std::size_t k = 0; k < kParams; ++k) {
                    m_[i][k] = kAdamBeta1 * m_[i][k] + (1.0 - kAdamBeta1) * grad[k];
                    v_[i][k] = kAdamBeta2 * v_[i][k] + (1.0 - kAdamBeta2) * grad[k] * grad[k];
                    dir[k] = (m_[i][k] / bc1) / (std::sqrt(v_[i][k] / bc2) + kAdamEps);
                }
                return dir;
            }

            void tick() { ++t_; }

            /// Fresh moments for both children of every split parent.
            void on_split(const SplitMask& mask, std::size_t count_after) {
                for (std::size_t i = 0; i < mask.size(); ++i) {
                    if (mask[i]) {
                        m_[i] = ParamVec{};
                        v_[i] = ParamVec{};
                    }
                }
                m_.resize(count_after, ParamVec{});
                v_.resize(count_after, ParamVec{});
            }

        private:
            OptimizerKind kind_;
            std::vector<ParamVec> m_;
            std::vector<ParamVec> v_;
            std::int64_t t_ = 0;
        };

        Scene2 initial_scene(const RgbImage& target, const TrainConfig& cfg) {
            Scene2 scene(cfg.densify.budget);
            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> ux(0.0, double(target.width));
            std::uniform_real_distribution<double> uy(0.0, double(target.height));
            const float log_s = float(std::log(double(target.width) / 16.0));
            for (std::size_t i = 0; i < cfg.initial_count; ++i) {
                const double x = ux(rng);
                const double y = uy(rng);
                const int px = std::clamp(int(x), 0, target.width - 1);
                const int py = std::clamp(int(y), 0, target.height - 1);
                Gaussian2 g;
                g.position = {float(x), float(y)};
                g.log_scale = {log_s, log_s};
                g.theta = 0.0f;
                g.opacity_logit = float(logit(0.5));
                g.color = {target.at(px, py, 0), target.at(px, py, 1), target.at(px, py, 2)};
                scene.push_back(g);
            }
            return scene;
        }

    } // namespace

    void TrainConfig::validate() const {
        if (total_iters <= 0) {
            throw DomainError("total_iters must be positive");
        }
        schedules.scale.validate();
        schedules.position.validate();
        if (!(color_lr > 0.0) || !(opacity_lr > 0.0) || !(theta_lr > 0.0)) {
            throw DomainError("learning rates must be positive");
        }
        densify.validate();
        if (initial_count == 0) {
            throw DomainError("initial Gaussian count must be positive");
        }
        if (initial_count > densify.budget) {
            throw BudgetError("initial Gaussian count exceeds the budget");
        }
    }

    TrainConfig default_train_config(std::int64_t iters) {
        TrainConfig cfg;
        cfg.total_iters = iters;
        cfg.schedules = default_schedules(iters);
        cfg.densify = scaled_densify_config(iters);
        return cfg;
    }

    TrainResult train(const RgbImage& target, const TrainConfig& cfg) {
        cfg.validate();
        if (target.width < 1 || target.height < 1 || target.data.size() != target.pixel_count() * 3) {
            throw DomainError("train: invalid target image");
        }

        RenderParams rp;
        rp.width = target.width;
        rp.height = target.height;
        rp.background = cfg.background;
        rp.footprint_cutoff = cfg.footprint_cutoff;
        rp.validate();

        const double extent = double(std::max(target.width, target.height));
        const double max_log_scale = std::log(extent);
        const double min_log_scale = std::log(kMinScale);
        const ImportanceMap importance = importance_pipeline(target, cfg.blur_sigma);

        TrainResult result;
        result.scene = initial_scene(target, cfg);
        Scene2& scene = result.scene;
        Optimizer opt(cfg.optimizer, scene.size());
        DensifyStats stats(scene.size());
        result.trace.reserve(std::size_t(cfg.total_iters));

        // Position rates are per unit of image extent; SGD also sees the
        // gradient in those units, hence the second factor.
        const double pos_unit = cfg.optimizer == OptimizerKind::Adam ? extent : extent * extent;

        std::vector<double> grad_norms;
        for (std::int64_t it = 1; it <= cfg.total_iters; ++it) {
            const Gradients g = backward(scene, target, rp);
            const double scale_lr = lr_at(cfg.schedules.scale, it);
            const double pos_lr = lr_at(cfg.schedules.position, it);
            result.trace.push_back({it, g.loss, psnr_from_mse(g.loss), scene.size(), scale_lr, pos_lr});

            grad_norms.resize(scene.size());
            for (std::size_t i = 0; i < scene.size(); ++i) {
                grad_norms[i] = std::hypot(g.position[i][0], g.position[i][1]) * extent;
            }
            stats.accumulate(grad_norms);

            opt.tick();
            auto pos = scene.position();
            auto ls = scene.log_scale();
            auto th = scene.theta();
            auto op = scene.opacity_logit();
            auto col = scene.color();
            for (std::size_t i = 0; i < scene.size(); ++i) {
                const ParamVec d = opt.direction(i, pack(g, i));
                pos[i][0] = float(pos[i][0] - pos_lr * pos_unit * d[0]);
                pos[i][1] = float(pos[i][1] - pos_lr * pos_unit * d[1]);
                ls[i][0] = float(std::clamp(ls[i][0] - scale_lr * d[2], min_log_scale, max_log_scale));
                ls[i][1] = float(std::clamp(ls[i][1] - scale_lr * d[3], min_log_scale, max_log_scale));
                th[i] = float(th[i] - cfg.theta_lr * d[4]);
                op[i] = float(op[i] - cfg.opacity_lr * d[5]);
                for (std::size_t k = 0; k < 3; ++k) {
                    col[i][k] = float(std::clamp(col[i][k] - cfg.color_lr * d[6 + k], 0.0, 1.0));
                }
            }

            if (cfg.densify_enabled && is_densify_step(cfg.densify, it)) {
                stats.set_edge_scores(sample_scores(importance, scene.position()));
                const auto res = densify_step(scene, stats, cfg.densify, it);
                opt.on_split(res.mask, scene.size());
                result.events.push_back(res.event);
            }
        }

        result.final_render = render(scene, rp);
        result.final_psnr = psnr(result.final_render, target);
        result.final_ssim = ssim(result.final_render, target);
        return result;
    }

    RgbImage make_synthetic_target(int width, int height) {
        if (width < 1 || height < 1) {
            throw DomainError("synthetic target size must be positive");
        }
        RgbImage img(width, height);
        const int x0 = width * 5 / 16;
        const int x1 = width * 11 / 16;
        const int y0 = height * 5 / 16;
        const int y1 = height * 11 / 16;
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const bool inside = x >= x0 && x < x1 && y >= y0 && y < y1;
                const float fx = width > 1 ? float(x) / float(width - 1) : 0.0f;
                const float fy = height > 1 ? float(y) / float(height - 1) : 0.0f;
                img.at(x, y, 0) = inside ? 1.0f : 0.1f + 0.5f * fx;
                img.at(x, y, 1) = inside ? 1.0f : 0.2f + 0.3f * fy;
                img.at(x, y, 2) = inside ? 1.0f : 0.3f + 0.2f * (1.0f - fx);
            }
        }
        return img;
    }

    std::string trace_to_csv(std::span<const TraceRow> trace) {
        std::string out = "iter,loss,psnr,count,scale_lr,pos_lr\n";
        char line[256];
        for (const auto& r : trace) {
            std::snprintf(line, sizeof(line), "%" PRId64 ",%.9g,%.6f,%zu,%.9g,%.9g\n", r.iter, r.loss, r.psnr,
                          r.count, r.scale_lr, r.pos_lr);
            out += line;
        }
        return out;
    }

} // namespace splitkit
