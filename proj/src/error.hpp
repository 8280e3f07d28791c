// SPDX-License-Identifier: Apache-2.0
//
// subthz-sense  sub-THz link blockage sensing and passive localization
// Copyright (C) 2026 subthz-sense developers
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

#ifndef SUBTHZ_ERROR_HPP
#define SUBTHZ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace subthz
{

// Malformed file content. Carries the offending path and 1-based line number
// (line 0 when the error is not tied to a particular line).
class parse_error : public std::runtime_error
{
  public:
    parse_error(std::string path, int line, const std::string &message)
        : std::runtime_error(path + (line > 0 ? ":" + std::to_string(line) : "") + ": " + message),
          path_(std::move(path)), line_(line)
    {
    }

    const std::string &path() const { return path_; }
    int line() const { return line_; }

  private:
    std::string path_;
    int line_;
};

// Filesystem failure (cannot open / create / write).
class io_error : public std::runtime_error
{
  public:
    explicit io_error(const std::string &message) : std::runtime_error(message) {}
};

// Two inputs that must share a grid or band configuration do not.
class mismatch_error : public std::runtime_error
{
  public:
    explicit mismatch_error(const std::string &message) : std::runtime_error(message) {}
};

// Model or numerical failure on valid inputs (no feature above threshold,
// unphysical path length, non-finite intermediate, ...).
class numeric_error : public std::runtime_error
{
  public:
    explicit numeric_error(const std::string &message) : std::runtime_error(message) {}
};

} // namespace subthz

#endif
