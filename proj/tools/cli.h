// Copyright 2026 The odo25 Authors.
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

#ifndef ODO25_TOOLS_CLI_H_
#define ODO25_TOOLS_CLI_H_

#include <ostream>

namespace odo25::cli {

// Entry point for the `odo25` command. Usage text and results go to `out`,
// error messages to `err`. Returns the process exit code.
//
//   odo25 simulate --maneuver M.json [--config C.json] [--noise N.json]
//                  [--seed S] [--calibration CAL.txt] [--out DIR]
//   odo25 estimate LOG [--config C.json] [--calibration CAL.txt]
//                  [--planar-only] [--out DIR]
//   odo25 evaluate ESTIMATE.csv REFERENCE.csv [--out DIR]
//
// Log verbosity comes from the ODO25_LOG_LEVEL environment variable
// (trace, debug, info, warn, error, off; default warn).
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace odo25::cli

#endif  // ODO25_TOOLS_CLI_H_
