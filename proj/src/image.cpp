/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#include "splitkit/image.hpp"

namespace splitkit {

    RgbImage to_rgb(const GrayImage& gray) {
        RgbImage out(gray.width, gray.height);
        for (std::size_t i = 0; i < gray.size(); ++i) {
            out.data[3 * i + 0] = gray.pixels[i];
            out.data[3 * i + 1] = gray.pixels[i];
            out.data[3 * i + 2] = gray.pixels[i];
        }
        return out;
    }

} // namespace splitkit
