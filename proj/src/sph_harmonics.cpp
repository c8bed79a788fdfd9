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

#include "trihybrid/sph_harmonics.hpp"
#include "trihybrid/kernels.hpp"

#include <cmath>
#include <istream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace trihybrid
{
    SHIndex SHIndex::from_flat(int t)
    {
        if (t < 1)
            throw DomainError("SHIndex::from_flat: flat index must be >= 1");
        int u = static_cast<int>(std::sqrt(static_cast<double>(t - 1)));
        while (u * u > t - 1)
            --u;
        while ((u + 1) * (u + 1) <= t - 1)
            ++u;
        return SHIndex{u, t - 1 - u * u - u};
    }

    int sh_degree_for_count(int count)
    {
        int u = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count)))) - 1;
        if (u < 0 || sh_count(u) != count)
            throw DomainError("coefficient count " + std::to_string(count) + " is not a perfect square");
        return u;
    }

    double assoc_legendre(int degree, int order, double x)
    {
        if (order < 0 || order > degree)
            throw DomainError("assoc_legendre: order must satisfy 0 <= q <= u");
        if (!(x >= -1.0 && x <= 1.0))
            throw DomainError("assoc_legendre: argument outside [-1, 1]");

        // P_q^q = (2q-1)!! (1-x^2)^{q/2}
        double pmm = 1.0;
        const double s = std::sqrt((1.0 - x) * (1.0 + x));
        for (int i = 1; i <= order; ++i)
            pmm *= static_cast<double>(2 * i - 1) * s;
        if (degree == order)
            return pmm;

        double pm1 = x * static_cast<double>(2 * order + 1) * pmm;
        for (int l = order + 2; l <= degree; ++l)
        {
            const double pl = (static_cast<double>(2 * l - 1) * x * pm1 - static_cast<double>(l + order - 1) * pmm) /
                              static_cast<double>(l - order);
            pmm = pm1;
            pm1 = pl;
        }
        return pm1;
    }

    namespace
    {
        // N_u^q = sqrt((2u+1)/(4 pi) * (u-q)!/(u+q)!), product form avoids factorial overflow.
        double sh_normalization(int degree, int order)
        {
            double ratio = 1.0;
            for (int i = degree - order + 1; i <= degree + order; ++i)
                ratio /= static_cast<double>(i);
            return std::sqrt((2.0 * degree + 1.0) / four_pi * ratio);
        }
    }

    double real_sh(int degree, int order, double theta, double phi)
    {
        if (degree < 0 || std::abs(order) > degree)
            throw DomainError("real_sh: order must satisfy |q| <= u");
        const int m = std::abs(order);
        const double plm = sh_normalization(degree, m) * assoc_legendre(degree, m, std::cos(theta));
        if (order > 0)
            return std::sqrt(2.0) * plm * std::cos(m * phi);
        if (order < 0)
            return std::sqrt(2.0) * plm * std::sin(m * phi);
        return plm;
    }

    void basis_vector_into(double theta, double phi, int degree, double *out)
    {
        if (degree < 0)
            throw DomainError("basis_vector: degree must be >= 0");

        const double x = std::cos(theta);
        const double s = std::sin(theta) < 0.0 ? -std::sin(theta) : std::sin(theta);
        const double sqrt2 = std::sqrt(2.0);

        // Fully normalized Legendre recurrence, column by column in the order q.
        double pqq = std::sqrt(1.0 / four_pi);
        for (int q = 0; q <= degree; ++q)
        {
            if (q > 0)
                pqq *= std::sqrt((2.0 * q + 1.0) / (2.0 * q)) * s;

            const double c = std::cos(q * phi);
            const double sn = std::sin(q * phi);
            auto store = [&](int u, double pbar)
            {
                if (q == 0)
                    out[u * u + u] = pbar;
                else
                {
                    out[u * u + u + q] = sqrt2 * pbar * c;
                    out[u * u + u - q] = sqrt2 * pbar * sn;
                }
            };

            store(q, pqq);
            if (q == degree)
                break;

            double p_prev = pqq;
            double p_cur = x * std::sqrt(2.0 * q + 3.0) * pqq;
            store(q + 1, p_cur);
            for (int l = q + 2; l <= degree; ++l)
            {
                const double l2 = static_cast<double>(l) * l;
                const double q2 = static_cast<double>(q) * q;
                const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - q2));
                const double lm1 = static_cast<double>(l - 1);
                const double b = std::sqrt((lm1 * lm1 - q2) / (4.0 * lm1 * lm1 - 1.0));
                const double p_next = a * (x * p_cur - b * p_prev);
                p_prev = p_cur;
                p_cur = p_next;
                store(l, p_cur);
            }
        }
    }

    RVec basis_vector(double theta, double phi, int degree)
    {
        if (degree < 0)
            throw DomainError("basis_vector: degree must be >= 0");
        RVec out(sh_count(degree));
        basis_vector_into(theta, phi, degree, out.data());
        return out;
    }

    void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights)
    {
        if (n < 1)
            throw DomainError("gauss_legendre: need at least one node");
        nodes.assign(n, 0.0);
        weights.assign(n, 0.0);
        const int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i)
        {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter)
            {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 1; j <= n; ++j)
                {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
                }
                dp = n * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16)
                    break;
            }
            // Recompute the derivative at the converged node for the weight.
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j)
            {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);

            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
            weights[n - 1 - i] = weights[i];
        }
    }

    SphereGrid::SphereGrid(int n_theta, int n_phi)
    {
        if (n_theta < 1 || n_phi < 1)
            throw DomainError("SphereGrid: node counts must be positive");
        std::vector<double> x;
        gauss_legendre(n_theta, x, theta_weight_);
        theta_.resize(n_theta);
        for (int i = 0; i < n_theta; ++i)
            theta_[i] = std::acos(x[i]);
        phi_.resize(n_phi);
        for (int j = 0; j < n_phi; ++j)
            phi_[j] = 2.0 * pi * j / n_phi;
        phi_weight_ = 2.0 * pi / n_phi;
    }

    const SphereGrid &SphereGrid::default_grid()
    {
        static const SphereGrid grid(64, 128);
        return grid;
    }

    int SphereGrid::max_resolvable_degree() const
    {
        return std::min(n_theta() / 2, n_phi() / 4) - 1;
    }

    double SphereGrid::integrate(const std::function<double(double, double)> &f) const
    {
        double total = 0.0;
        for (int i = 0; i < n_theta(); ++i)
        {
            double row = 0.0;
            for (int j = 0; j < n_phi(); ++j)
                row += f(theta_[i], phi_[j]);
            total += theta_weight_[i] * row;
        }
        return total * phi_weight_;
    }

    SHCoefficients::SHCoefficients(int degree_, RVec values_) : degree(degree_), values(std::move(values_))
    {
        if (degree < 0 || values.size() != sh_count(degree))
            throw DomainError("SHCoefficients: length must be (U+1)^2");
    }

    SHCoefficients SHCoefficients::isotropic(int degree)
    {
        RVec c = RVec::Zero(sh_count(degree));
        c(0) = 2.0 * std::sqrt(pi);
        return SHCoefficients(degree, c);
    }

    SHCoefficients SHCoefficients::energy_normalized() const
    {
        const double e = energy();
        if (!(e > 0.0))
            throw DomainError("cannot normalize a zero coefficient vector");
        return SHCoefficients(degree, values * std::sqrt(four_pi / e));
    }

    GridSamples sample_on_grid(const std::function<double(double, double)> &gain, const SphereGrid &grid)
    {
        GridSamples s;
        s.values.resize(grid.n_theta(), grid.n_phi());
        for (int i = 0; i < grid.n_theta(); ++i)
            for (int j = 0; j < grid.n_phi(); ++j)
                s.values(i, j) = gain(grid.theta(i), grid.phi(j));
        return s;
    }

    double synthesize_gain(const SHCoefficients &coeffs, double theta, double phi)
    {
        return basis_vector(theta, phi, coeffs.degree).dot(coeffs.values);
    }

    SHCoefficients decompose_pattern(const GridSamples &samples, const SphereGrid &grid, int degree)
    {
        if (degree < 0)
            throw DomainError("decompose_pattern: degree must be >= 0");
        if (grid.n_theta() < 2 * (degree + 1) || grid.n_phi() < 4 * (degree + 1))
            throw ResolutionError("decompose_pattern: grid " + std::to_string(grid.n_theta()) + "x" +
                                  std::to_string(grid.n_phi()) + " cannot resolve degree " + std::to_string(degree));
        if (samples.values.rows() != grid.n_theta() || samples.values.cols() != grid.n_phi())
            throw ConfigError("decompose_pattern: sample matrix does not match the grid");
        return SHCoefficients(degree, kernels::sh_project_parallel(samples.values, grid, degree));
    }

    double pattern_energy(const GridSamples &samples, const SphereGrid &grid)
    {
        if (samples.values.rows() != grid.n_theta() || samples.values.cols() != grid.n_phi())
            throw ConfigError("pattern_energy: sample matrix does not match the grid");
        double total = 0.0;
        for (int i = 0; i < grid.n_theta(); ++i)
        {
            double row = 0.0;
            for (int j = 0; j < grid.n_phi(); ++j)
                row += samples.values(i, j) * samples.values(i, j);
            total += grid.weight(i, 0) * row;
        }
        return total;
    }

    double pattern_energy(const std::function<double(double, double)> &gain, const SphereGrid &grid)
    {
        return grid.integrate([&](double t, double p)
                              { const double g = gain(t, p); return g * g; });
    }

    void write_coefficients(std::ostream &os, const SHCoefficients &coeffs)
    {
        os << "U " << coeffs.degree << '\n';
        os << std::setprecision(17);
        for (int t = 1; t <= coeffs.count(); ++t)
            os << t << ' ' << coeffs.values(t - 1) << '\n';
    }

    SHCoefficients read_coefficients(std::istream &is)
    {
        std::string line, key;
        int degree = -1;
        while (std::getline(is, line))
        {
            std::istringstream ls(line);
            if (!(ls >> key) || key[0] == '#')
                continue;
            if (key != "U" || !(ls >> degree) || degree < 0)
                throw SchemaError("coefficient file must start with 'U <degree>'");
            break;
        }
        if (degree < 0)
            throw SchemaError("coefficient file is empty");

        RVec values = RVec::Zero(sh_count(degree));
        std::vector<bool> seen(values.size(), false);
        int row = 1;
        while (std::getline(is, line))
        {
            ++row;
            std::istringstream ls(line);
            int t = 0;
            double c = 0.0;
            if (!(ls >> t))
                continue;
            if (!(ls >> c))
                throw SchemaError("coefficient row " + std::to_string(row) + ": expected 't c_t'");
            if (t < 1 || t > values.size())
                throw SchemaError("coefficient row " + std::to_string(row) + ": index out of range");
            values(t - 1) = c;
            seen[t - 1] = true;
        }
        for (bool s : seen)
            if (!s)
                throw SchemaError("coefficient file is missing entries for degree " + std::to_string(degree));
        return SHCoefficients(degree, values);
    }

    void write_pattern_table(std::ostream &os, const PatternTable &table)
    {
        os << "theta phi gain\n" << std::setprecision(17);
        for (size_t i = 0; i < table.gain.size(); ++i)
            os << table.theta[i] << ' ' << table.phi[i] << ' ' << table.gain[i] << '\n';
    }

    PatternTable read_pattern_table(std::istream &is)
    {
        std::string line;
        if (!std::getline(is, line))
            throw SchemaError("pattern table is empty");
        {
            std::istringstream hs(line);
            std::string a, b, c;
            hs >> a >> b >> c;
            if (a != "theta" || b != "phi" || c != "gain")
                throw SchemaError("pattern table header must be 'theta phi gain'");
        }
        PatternTable t;
        int row = 1;
        while (std::getline(is, line))
        {
            ++row;
            std::istringstream ls(line);
            double th, ph, g;
            if (!(ls >> th))
                continue;
            if (!(ls >> ph >> g))
                throw SchemaError("pattern table row " + std::to_string(row) + ": expected three numbers");
            t.theta.push_back(th);
            t.phi.push_back(ph);
            t.gain.push_back(g);
        }
        return t;
    }

} // namespace trihybrid
