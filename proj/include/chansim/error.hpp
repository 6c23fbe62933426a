// SPDX-License-Identifier: Apache-2.0
//
// chansim: stochastic UWB air-to-ground channel simulator
// Copyright (C) 2026 The chansim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CHANSIM_ERROR_HPP
#define CHANSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace chansim
{
    enum class ErrorCode
    {
        UnknownCell,
        InvalidGeometry,
        InvalidRate,
        WindowTooSmall,
        EmptyRealization,
        NonPositivePower,
        DelayOutOfWindow,
        ZeroTemplate,
        EmptyInput,
        InsufficientData,
        InvalidConfig,
        ParseError,
        IoError
    };

    const char *to_string(ErrorCode code) noexcept;

    // All library failures are reported through this exception type; the code
    // lets callers (the CLI in particular) map failures onto exit statuses.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message)
            : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    inline const char *to_string(ErrorCode code) noexcept
    {
        switch (code)
        {
        case ErrorCode::UnknownCell:
            return "UnknownCell";
        case ErrorCode::InvalidGeometry:
            return "InvalidGeometry";
        case ErrorCode::InvalidRate:
            return "InvalidRate";
        case ErrorCode::WindowTooSmall:
            return "WindowTooSmall";
        case ErrorCode::EmptyRealization:
            return "EmptyRealization";
        case ErrorCode::NonPositivePower:
            return "NonPositivePower";
        case ErrorCode::DelayOutOfWindow:
            return "DelayOutOfWindow";
        case ErrorCode::ZeroTemplate:
            return "ZeroTemplate";
        case ErrorCode::EmptyInput:
            return "EmptyInput";
        case ErrorCode::InsufficientData:
            return "InsufficientData";
        case ErrorCode::InvalidConfig:
            return "InvalidConfig";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::IoError:
            return "IoError";
        }
        return "Unknown";
    }
}

#endif
