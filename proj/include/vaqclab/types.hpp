// Copyright 2026 The vaqclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VAQCLAB_TYPES_HPP
#define VAQCLAB_TYPES_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace vaqclab {

template <typename Real>
using VectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real>
using MatrixT = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using Vector = VectorT<double>;
using Matrix = MatrixT<double>;
using ComplexVector = ComplexVectorT<double>;
using ComplexMatrix = MatrixT<std::complex<double>>;

/// Pseudo-random stream used for all sampling. One stream per trial; never
/// shared across threads.
using Rng = std::mt19937_64;

/// Largest register the dense simulator and eigensolver accept.
inline constexpr int kMaxQubits = 16;

/// Raised for malformed user input (files, configs). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation produces a non-physical result. Maps to CLI
/// exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vaqclab

#endif  // VAQCLAB_TYPES_HPP
