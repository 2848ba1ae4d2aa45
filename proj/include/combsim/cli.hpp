/*
 * Copyright 2026 The combsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef COMBSIM_CLI_HPP
#define COMBSIM_CLI_HPP

#include <ostream>

namespace combsim {

// exit codes
inline constexpr int kExitHolds = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;
inline constexpr int kExitExhausted = 4;

/**
 * Entry point of the combsim tool, with the output streams passed in so
 * that tests can drive it in-process.
 */
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}

#endif
