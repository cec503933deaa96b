// Copyright 2026 The embcompress Authors.
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

#ifndef EMBCOMPRESS_COMMON_HPP_
#define EMBCOMPRESS_COMMON_HPP_

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace embcompress {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a documented precondition (shapes, ranges, flags).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents: bad magic, truncated payload, ragged rows.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure while opening, reading or writing.
class IoError : public Error {
 public:
  using Error::Error;
};

// Solver failure: no convergence, divergence, insufficient spectrum.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace embcompress

#endif  // EMBCOMPRESS_COMMON_HPP_
