// Copyright 2026 The hoidiag Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>

namespace hoidiag::cli {

/// Runs one subcommand. Returns 0 on success, 1 on input errors (bad flags,
/// unreadable or malformed files) and 2 when an internal invariant fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hoidiag::cli
