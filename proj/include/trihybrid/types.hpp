// SPDX-License-Identifier: Apache-2.0
//
// trihybrid - tri-hybrid multi-user MIMO precoding with pattern-reconfigurable antennas
// Copyright (C) 2026 The trihybrid Authors
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

#ifndef TRIHYBRID_TYPES_HPP
#define TRIHYBRID_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trihybrid
{
    using cplx = std::complex<double>;
    using CMat = Eigen::MatrixXcd;
    using CVec = Eigen::VectorXcd;
    using RMat = Eigen::MatrixXd;
    using RVec = Eigen::VectorXd;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double four_pi = 4.0 * std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0;

    // Out-of-range argument to a mathematical function (degree/order, beamwidth, rho, ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Quadrature grid cannot resolve the requested harmonic degree.
    class ResolutionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Inconsistent dimensions or invalid user configuration.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Geometry that cannot produce a channel (coincident points, empty path lists).
    class GenerationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Singular system encountered where the math says it should not be.
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed input file (pattern table, manifest, results CSV, ...).
    class SchemaError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // dBm <-> mW; every power quantity in the library is linear milliwatts.
    inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
    inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

} // namespace trihybrid

#endif
