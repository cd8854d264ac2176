/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/edge_pipeline.hpp"
#include "splitkit/errors.hpp"
#include "splitkit/reference.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace splitkit;

namespace {

    GrayImage vertical_step(int w, int h, int edge_x) {
        GrayImage img(w, h);
        for (int y = 0; y < h; ++y) {
            for (int x = edge_x; x < w; ++x) {
                img.at(x, y) = 1.0f;
            }
        }
        return img;
    }

    // Distance from pixel center (x, y) to the outline of [lo, hi] x [lo, hi].
    double outline_distance(double x, double y, double lo, double hi) {
        const bool inside = x >= lo && x <= hi && y >= lo && y <= hi;
        if (inside) {
            return std::min({x - lo, hi - x, y - lo, hi - y});
        }
        const double dx = std::max({lo - x, 0.0, x - hi});
        const double dy = std::max({lo - y, 0.0, y - hi});
        return std::hypot(dx, dy);
    }

} // namespace

TEST(BlurKernel, SumsToOne) {
    for (double sigma : {0.5, 1.0, 1.4, 3.0}) {
        const auto k = blur_kernel_5x5(sigma);
        double sum = 0.0;
        for (double v : k) {
            sum += v;
        }
        EXPECT_NEAR(sum, 1.0, 1e-7) << "sigma " << sigma;
    }
}

TEST(BlurKernel, MatchesClosedForm) {
    // sigma = 1: normalizer is (sum_{i=-2..2} exp(-i^2/2))^2
    double z1 = 0.0;
    for (int i = -2; i <= 2; ++i) {
        z1 += std::exp(-0.5 * i * i);
    }
    const auto k = blur_kernel_5x5(1.0);
    EXPECT_NEAR(k[12], 1.0 / (z1 * z1), 1e-12);
    EXPECT_NEAR(k[0], std::exp(-4.0) / (z1 * z1), 1e-12);
    EXPECT_NEAR(k[1], k[5], 1e-15);
}

TEST(BlurKernel, RejectsBadSigma) {
    EXPECT_THROW((void)blur_kernel_5x5(0.0), DomainError);
    EXPECT_THROW((void)blur_kernel_5x5(-1.0), DomainError);
    EXPECT_THROW((void)blur_kernel_5x5(std::nan("")), DomainError);
}

TEST(Blur, PreservesConstantImage) {
    const GrayImage flat(33, 17, 0.37f);
    const GrayImage out = gaussian_blur_5x5(flat, 1.0);
    for (float v : out.pixels) {
        EXPECT_NEAR(v, 0.37f, 1e-6);
    }
}

TEST(Blur, SeparableMatchesDirectConvolution) {
    std::mt19937_64 rng(21);
    for (auto [w, h] : {std::pair{1, 1}, {3, 7}, {64, 48}}) {
        const GrayImage img = fixtures::random_gray(rng, w, h);
        const GrayImage fast = gaussian_blur_5x5(img, 1.3);
        const GrayImage slow = reference::gaussian_blur_5x5(img, 1.3);
        for (std::size_t i = 0; i < img.size(); ++i) {
            EXPECT_NEAR(fast.pixels[i], slow.pixels[i], 1e-6);
        }
    }
}

TEST(Grayscale, Rec601Weights) {
    RgbImage img(2, 1);
    img.at(0, 0, 0) = 1.0f;
    img.at(1, 0, 0) = 0.2f;
    img.at(1, 0, 1) = 0.4f;
    img.at(1, 0, 2) = 0.6f;
    const GrayImage g = to_grayscale(img);
    EXPECT_NEAR(g.at(0, 0), 0.299f, 1e-6);
    EXPECT_NEAR(g.at(1, 0), 0.299 * 0.2 + 0.587 * 0.4 + 0.114 * 0.6, 1e-6);
}

TEST(Sobel, LinearRampGradient) {
    // f = a x: the 1-2-1 weighted central differences give 8a in the interior
    const double a = 0.01;
    GrayImage ramp(10, 6);
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 10; ++x) {
            ramp.at(x, y) = float(a * x);
        }
    }
    const GradientField f = sobel_gradients(ramp);
    for (int y = 0; y < 6; ++y) {
        for (int x = 1; x < 9; ++x) {
            EXPECT_NEAR(f.magnitude[std::size_t(y) * 10 + x], 8.0 * a, 1e-6);
            EXPECT_NEAR(f.orientation[std::size_t(y) * 10 + x], 0.0, 1e-6);
        }
    }

    GrayImage vramp(6, 10);
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 6; ++x) {
            vramp.at(x, y) = float(a * y);
        }
    }
    const GradientField v = sobel_gradients(vramp);
    EXPECT_NEAR(v.orientation[3 * 6 + 2], std::numbers::pi / 2, 1e-6);
}

TEST(Sobel, OrientationFoldedIntoHalfOpenRange) {
    std::mt19937_64 rng(4);
    const GradientField f = sobel_gradients(fixtures::random_gray(rng, 40, 30));
    for (float t : f.orientation) {
        EXPECT_GE(t, 0.0f);
        EXPECT_LT(t, float(std::numbers::pi));
    }
}

TEST(Sobel, MatchesExplicitKernels) {
    std::mt19937_64 rng(8);
    const GrayImage img = fixtures::random_gray(rng, 37, 23);
    const GradientField a = sobel_gradients(img);
    const GradientField b = reference::sobel_gradients(img);
    for (std::size_t i = 0; i < img.size(); ++i) {
        EXPECT_NEAR(a.magnitude[i], b.magnitude[i], 1e-5);
        if (a.magnitude[i] > 1e-3f) {
            const double d = std::abs(double(a.orientation[i]) - b.orientation[i]);
            EXPECT_LT(std::min(d, std::numbers::pi - d), 1e-5);
        }
    }
}

TEST(Sobel, RejectsTinyImages) {
    EXPECT_THROW((void)sobel_gradients(GrayImage(2, 5)), DomainError);
}

TEST(Nms, OutputIsSubsetOfMagnitude) {
    std::mt19937_64 rng(12);
    const GradientField f = sobel_gradients(gaussian_blur_5x5(fixtures::random_gray(rng, 64, 64), 1.0));
    const GrayImage thin = nms_thin(f);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < thin.size(); ++i) {
        if (thin.pixels[i] != 0.0f) {
            EXPECT_EQ(thin.pixels[i], f.magnitude[i]);
            ++kept;
        }
    }
    EXPECT_GT(kept, 0u);
    EXPECT_LT(kept, thin.size());
}

TEST(Nms, Idempotent) {
    std::mt19937_64 rng(13);
    const GradientField f = sobel_gradients(gaussian_blur_5x5(fixtures::random_gray(rng, 64, 64), 1.0));
    const GrayImage once = nms_thin(f);
    GradientField again = f;
    again.magnitude = once.pixels;
    EXPECT_EQ(nms_thin(again), once);
}

TEST(Nms, MatchesAngleVectorReference) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 5; ++trial) {
        const GradientField f = sobel_gradients(gaussian_blur_5x5(fixtures::random_gray(rng, 48, 40), 1.0));
        EXPECT_EQ(nms_thin(f), reference::nms_thin(f));
    }
}

TEST(Nms, PlateauKeepsOnePixel) {
    GradientField f{4, 1, {0.0f, 2.0f, 2.0f, 0.0f}, {0.0f, 0.0f, 0.0f, 0.0f}};
    const GrayImage thin = nms_thin(f);
    EXPECT_EQ(thin.pixels, (std::vector<float>{0.0f, 2.0f, 0.0f, 0.0f}));
}

TEST(Nms, StepEdgeIsOnePixelWide) {
    const GrayImage step = vertical_step(128, 128, 64);
    const GrayImage thin = nms_thin(sobel_gradients(gaussian_blur_5x5(step, 1.0)));
    for (int y = 1; y < 127; ++y) {
        int count = 0;
        int where = -1;
        for (int x = 0; x < 128; ++x) {
            if (thin.at(x, y) > 0.0f) {
                ++count;
                where = x;
            }
        }
        EXPECT_EQ(count, 1) << "row " << y;
        EXPECT_NEAR(where, 63.5, 0.5) << "row " << y;
    }
}

TEST(MedianNormalize, EvenCountAveragesMiddles) {
    GrayImage t(5, 1);
    t.pixels = {0.0f, 1.0f, 2.0f, 3.0f, 4.0f};
    // positives {1,2,3,4}: median 2.5, scale 1/5
    const ImportanceMap m = median_normalize(t);
    EXPECT_FLOAT_EQ(m.scores[0], 0.0f);
    EXPECT_FLOAT_EQ(m.scores[1], 0.2f);
    EXPECT_FLOAT_EQ(m.scores[2], 0.4f);
    EXPECT_FLOAT_EQ(m.scores[4], 0.8f);
}

TEST(MedianNormalize, OddCountAndClamp) {
    GrayImage t(4, 1);
    t.pixels = {0.5f, 1.0f, 9.0f, 0.0f};
    // median 1 -> v / 2, capped at 1
    const ImportanceMap m = median_normalize(t);
    EXPECT_FLOAT_EQ(m.scores[0], 0.25f);
    EXPECT_FLOAT_EQ(m.scores[1], 0.5f);
    EXPECT_FLOAT_EQ(m.scores[2], 1.0f);
    EXPECT_FLOAT_EQ(m.scores[3], 0.0f);
}

TEST(MedianNormalize, AllZeroStaysZero) {
    const ImportanceMap m = median_normalize(GrayImage(6, 6));
    for (float v : m.scores) {
        EXPECT_EQ(v, 0.0f);
    }
}

TEST(Pipeline, WhiteSquarePerimeterLocalization) {
    const RgbImage img = fixtures::white_square(128, 128, 40, 40, 88, 88);
    const ImportanceMap m = importance_pipeline(img);
    int per_side[4] = {0, 0, 0, 0};
    for (int y = 0; y < 128; ++y) {
        for (int x = 0; x < 128; ++x) {
            if (m.at(x, y) <= 0.0f) {
                continue;
            }
            EXPECT_LE(outline_distance(x, y, 39.5, 87.5), 2.0) << x << "," << y;
            if (std::abs(x - 39.5) <= 2.0) ++per_side[0];
            if (std::abs(x - 87.5) <= 2.0) ++per_side[1];
            if (std::abs(y - 39.5) <= 2.0) ++per_side[2];
            if (std::abs(y - 87.5) <= 2.0) ++per_side[3];
        }
    }
    for (int s = 0; s < 4; ++s) {
        EXPECT_GE(per_side[s], 40) << "side " << s;
    }
}

TEST(Pipeline, ScoresInUnitInterval) {
    std::mt19937_64 rng(31);
    const ImportanceMap m = importance_pipeline(fixtures::random_rgb(rng, 50, 40));
    for (float v : m.scores) {
        EXPECT_GE(v, 0.0f);
        EXPECT_LE(v, 1.0f);
    }
}

TEST(Sampling, BilinearMatchesHandComputation) {
    ImportanceMap m{3, 3, {0.0f, 0.1f, 0.2f, 0.3f, 0.4f, 0.5f, 0.6f, 0.7f, 0.8f}};
    // (1.25, 0.5): rows 0 and 1 at x=1.25 are 0.125 and 0.425, mean 0.275
    EXPECT_NEAR(sample_score(m, 1.25, 0.5), 0.275, 1e-6);
    EXPECT_NEAR(sample_score(m, 2.0, 2.0), 0.8, 1e-6);
    EXPECT_NEAR(sample_score(m, 0.0, 0.0), 0.0, 1e-6);
    EXPECT_EQ(sample_score(m, -0.01, 1.0), 0.0f);
    EXPECT_EQ(sample_score(m, 2.01, 1.0), 0.0f);
    EXPECT_EQ(sample_score(m, 1.0, 3.0), 0.0f);

    const std::vector<Vec2f> pts{{1.25f, 0.5f}, {5.0f, 5.0f}};
    const auto s = sample_scores(m, pts);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(s[0], 0.275f, 1e-6);
    EXPECT_EQ(s[1], 0.0f);
}
