/* SPDX-FileCopyrightText: 2026 splitkit authors
 *
 * SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <stdexcept>
#include <string>

namespace splitkit {

    /// Invalid argument or precondition violation (bad sigma, p outside (0,1), ...).
    class DomainError : public std::domain_error {
    public:
        using std::domain_error::domain_error;
    };

    /// A split or growth request that would exceed the scene capacity.
    class BudgetError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Filesystem failures: missing file, unwritable path, short write.
    class IoError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Malformed scene or image file. `code()` tells the failure classes apart.
    class FormatError : public std::runtime_error {
    public:
        enum class Code {
            BadMagic,
            UnsupportedVersion,
            BadDims,
            SizeMismatch,
            MalformedHeader,
            UnsupportedMaxval,
            InvalidValue,
        };

        FormatError(Code code, const std::string& what)
            : std::runtime_error(what),
              code_(code) {}

        [[nodiscard]] Code code() const noexcept { return code_; }

    private:
        Code code_;
    };

} // namespace splitkit
