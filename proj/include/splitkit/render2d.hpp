/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "splitkit/gaussian.hpp"
#include "splitkit/image.hpp"

#include <array>
#include <vector>

namespace splitkit {

    /// Weight of the background term in the normalized blend.
    inline constexpr double kBackgroundWeight = 1e-4;

    struct RenderParams {
        int width = 0;
        int height = 0;
        std::array<float, 3> background{0.0f, 0.0f, 0.0f};
        double footprint_cutoff = 3.0; ///< Mahalanobis radius beyond which a Gaussian contributes nothing

        void validate() const;
    };

    /// Normalized weighted-sum splatting:
    ///   w_i(x)  = sigmoid(opacity_i) * exp(-0.5 (x - mu_i)^T Sigma_i^-1 (x - mu_i)),
    ///   color(x) = (sum w_i c_i + w_bg * background) / (sum w_i + w_bg),
    /// with Sigma_i = R(theta) diag(exp(2 log_scale)) R(theta)^T and pixel (x, y)
    /// sampled at integer coordinates. Output is clamped to [0, 1].
    template <typename T>
    [[nodiscard]] RgbImage render(const BasicScene2<T>& scene, const RenderParams& p);

    /// Mean squared error over all pixels and channels. Throws DomainError on a size mismatch.
    [[nodiscard]] double loss_l2(const RgbImage& rendered, const RgbImage& target);

    /// loss_l2(render(scene), target) evaluated entirely in double precision.
    template <typename T>
    [[nodiscard]] double render_loss(const BasicScene2<T>& scene, const RgbImage& target, const RenderParams& p);

    /// d loss_l2 / d parameter for every primitive, plus the loss itself.
    struct Gradients {
        double loss = 0.0;
        std::vector<std::array<double, 2>> position;
        std::vector<std::array<double, 2>> log_scale;
        std::vector<double> theta;
        std::vector<double> opacity_logit;
        std::vector<std::array<double, 3>> color;

        void resize(std::size_t n);
    };

    /// Analytic gradients of render_loss. Parallel over primitives; each one
    /// gathers over the pixels of its own footprint, so no reduction is shared.
    template <typename T>
    [[nodiscard]] Gradients backward(const BasicScene2<T>& scene, const RgbImage& target, const RenderParams& p);

} // namespace splitkit
