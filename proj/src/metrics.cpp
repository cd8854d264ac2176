/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/metrics.hpp"
#include "splitkit/edge_pipeline.hpp"
#include "splitkit/errors.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace splitkit {

    namespace {

        constexpr int kWin = 11;
        constexpr double kSigma = 1.5;
        constexpr double kC1 = 0.01 * 0.01;
        constexpr double kC2 = 0.03 * 0.03;

        std::array<double, kWin * kWin> ssim_window() {
            std::array<double, kWin * kWin> w{};
            double sum = 0.0;
            for (int j = 0; j < kWin; ++j) {
                for (int i = 0; i < kWin; ++i) {
                    const double dx = i - kWin / 2;
                    const double dy = j - kWin / 2;
                    w[std::size_t(j * kWin + i)] = std::exp(-(dx * dx + dy * dy) / (2.0 * kSigma * kSigma));
                    sum += w[std::size_t(j * kWin + i)];
                }
            }
            for (auto& v : w) {
                v /= sum;
            }
            return w;
        }

        double mse(const std::vector<float>& a, const std::vector<float>& b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = double(a[i]) - double(b[i]);
                acc += d * d;
            }
            return a.empty() ? 0.0 : acc / double(a.size());
        }

    } // namespace

    double psnr_from_mse(double m) {
        if (m < 1e-10) {
            return kPsnrCap;
        }
        return 10.0 * std::log10(1.0 / m);
    }

    double psnr(const RgbImage& a, const RgbImage& b) {
        if (a.width != b.width || a.height != b.height || a.data.size() != b.data.size()) {
            throw DomainError("psnr: image dimensions differ");
        }
        return psnr_from_mse(mse(a.data, b.data));
    }

    double psnr(const GrayImage& a, const GrayImage& b) {
        if (a.width != b.width || a.height != b.height || a.pixels.size() != b.pixels.size()) {
            throw DomainError("psnr: image dimensions differ");
        }
        return psnr_from_mse(mse(a.pixels, b.pixels));
    }

    double ssim(const GrayImage& a, const GrayImage& b) {
        if (a.width != b.width || a.height != b.height || a.pixels.size() != b.pixels.size()) {
            throw DomainError("ssim: image dimensions differ");
        }
        if (a.width < kWin || a.height < kWin) {
            throw DomainError("ssim: image is smaller than the 11x11 window");
        }
        static const auto win = ssim_window();
        const int nx = a.width - kWin + 1;
        const int ny = a.height - kWin + 1;
        std::vector<double> row_sum(std::size_t(ny), 0.0);

#pragma omp parallel for schedule(static)
        for (int y = 0; y < ny; ++y) {
            double acc = 0.0;
            for (int x = 0; x < nx; ++x) {
                double ma = 0.0, mb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
                for (int j = 0; j < kWin; ++j) {
                    for (int i = 0; i < kWin; ++i) {
                        const double wt = win[std::size_t(j * kWin + i)];
                        const double va = a.at(x + i, y + j);
                        const double vb = b.at(x + i, y + j);
                        ma += wt * va;
                        mb += wt * vb;
                        saa += wt * va * va;
                        sbb += wt * vb * vb;
                        sab += wt * va * vb;
                    }
                }
                const double var_a = saa - ma * ma;
                const double var_b = sbb - mb * mb;
                const double cov = sab - ma * mb;
                acc += ((2.0 * ma * mb + kC1) * (2.0 * cov + kC2)) /
                       ((ma * ma + mb * mb + kC1) * (var_a + var_b + kC2));
            }
            row_sum[std::size_t(y)] = acc;
        }

        double total = 0.0;
        for (double r : row_sum) {
            total += r;
        }
        return total / (double(nx) * double(ny));
    }

    double ssim(const RgbImage& a, const RgbImage& b) {
        if (a.width != b.width || a.height != b.height || a.data.size() != b.data.size()) {
            throw DomainError("ssim: image dimensions differ");
        }
        return ssim(to_grayscale(a), to_grayscale(b));
    }

} // namespace splitkit
