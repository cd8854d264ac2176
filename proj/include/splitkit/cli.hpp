/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splitkit {

    inline constexpr int kExitOk = 0;
    inline constexpr int kExitUsage = 1;
    inline constexpr int kExitIo = 2;
    inline constexpr int kExitInvalid = 3;

    /// Runs the `splitkit` command line. `args` excludes the program name.
    /// Results go to `out`; usage text and the one-line diagnostic go to `err`.
    int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace splitkit
