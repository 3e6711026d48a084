// Copyright 2026 The vsdstruct Authors.
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

#ifndef VSD_ERROR_H_
#define VSD_ERROR_H_

#include <stdexcept>
#include <string>

namespace vsd {

// Raised for malformed input, contract violations and I/O failures. The
// message is meant to be shown to an operator as-is.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace vsd

#endif  // VSD_ERROR_H_
