// Copyright 2026 The SetPush Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SETPUSH_CLI_HPP_
#define SETPUSH_CLI_HPP_

#include <iosfwd>

namespace setpush::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalid = 1,  // bad flags, bad input, failed validation
    kIo = 2,       // unreadable or unwritable files
    kInternal = 3, // broken internal contract
};

/// Entry point of the setpush tool. Reports go to @a out, diagnostics to
/// @a err; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace setpush::cli

#endif // SETPUSH_CLI_HPP_
