// SPDX-License-Identifier: Apache-2.0
//
// resbeam: resonant-beam SWIPT link simulator
// Copyright (C) 2026 The resbeam authors
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

#ifndef RESBEAM_ERRORS_HPP
#define RESBEAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace resbeam
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Schema or invariant violation while building a Scenario. `path` is the
    // dotted location inside the document, e.g. "control.alpha" or "ues[1].rx".
    class ScenarioError : public Error
    {
    public:
        ScenarioError(std::string path, const std::string &message)
            : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

        const std::string &path() const noexcept { return path_; }

    private:
        std::string path_;
    };

    // No power came back to the base station, so the amplifier has nothing to scale.
    class DarkLinkError : public Error
    {
    public:
        DarkLinkError() : Error("link dark: no return power") {}
    };
}

#endif
