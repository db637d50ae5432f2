// Copyright 2026 The DataCollab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DATACOLLAB_ERRORS_HPP_
#define DATACOLLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace datacollab {

// Precondition violated by the caller (shape mismatch, out-of-range count).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but mathematically degenerate for the requested
// operation (zero variance, rank too low, zero-norm sample).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A factorization or solve failed to produce finite output.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file content (IDX, bundle, config).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace datacollab

#endif  // DATACOLLAB_ERRORS_HPP_
