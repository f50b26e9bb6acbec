// SPDX-License-Identifier: Apache-2.0
//
// wsms - terahertz widely-spaced multi-subarray link simulation
// Copyright (C) 2026 The wsms authors
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

// Independent reference implementations used as test oracles. They follow the
// model definitions directly (per-entry loops, bisection, log-det) and share no
// code paths with the library kernels they check.

#ifndef WSMS_TEST_ORACLES_HPP
#define WSMS_TEST_ORACLES_HPP

#include "wsms/channel.hpp"
#include "wsms/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle
{
    using cd = std::complex<double>;
    constexpr double pi = std::numbers::pi;

    inline cd steering_entry(int n_l, int n_w, double d_a, double lambda, const wsms::Direction &dir)
    {
        const double phase = 2.0 * pi / lambda * d_a *
                             (n_l * std::sin(dir.elevation) * std::cos(dir.azimuth) + n_w * std::cos(dir.elevation));
        return {std::cos(phase), std::sin(phase)};
    }

    // Reference-point distance straight from coordinates.
    inline double reference_distance(const wsms::PropagationPath &p, const wsms::ArrayLayout &tx,
                                     const wsms::ArrayLayout &rx, const wsms::LinkGeometry &link, int m, int n)
    {
        const double xt = tx.ref_indices[n].x * tx.subarray_spacing;
        const double zt = tx.ref_indices[n].z * tx.subarray_spacing;
        const double xr = rx.ref_indices[m].x * rx.subarray_spacing;
        const double zr = rx.ref_indices[m].z * rx.subarray_spacing;
        const double y = link.distance;
        switch (p.kind)
        {
        case wsms::PathKind::line_of_sight:
            return std::sqrt((xr - xt) * (xr - xt) + y * y + (zr - zt) * (zr - zt));
        case wsms::PathKind::ground_reflection:
        {
            const double ht = link.tx_height + zt;
            const double hr = link.rx_height + zr;
            return std::sqrt((xr - xt) * (xr - xt) + y * y + (ht + hr) * (ht + hr));
        }
        case wsms::PathKind::wall_reflection:
        {
            const double xi = 2.0 * p.wall_offset - xr;
            return std::sqrt((xi - xt) * (xi - xt) + y * y + (zr - zt) * (zr - zt));
        }
        }
        return 0.0;
    }

    // Per-entry triple loop: H[r, t] = sum_i alpha_i G_i[m, n] a_ri[r'] conj(a_ti[t']).
    inline Eigen::MatrixXcd naive_wsms_channel(const wsms::PathSet &paths, const wsms::ArrayLayout &tx,
                                               const wsms::ArrayLayout &rx, const wsms::LinkGeometry &link)
    {
        const int pt = tx.subarray_rows * tx.subarray_cols;
        const int pr = rx.subarray_rows * rx.subarray_cols;
        Eigen::MatrixXcd h(rx.n_antennas, tx.n_antennas);
        for (int r = 0; r < rx.n_antennas; ++r)
            for (int t = 0; t < tx.n_antennas; ++t)
            {
                const int m = r / pr;
                const int n = t / pt;
                const int rl = (r % pr) / rx.subarray_cols;
                const int rw = (r % pr) % rx.subarray_cols;
                const int tl = (t % pt) / tx.subarray_cols;
                const int tw = (t % pt) % tx.subarray_cols;
                cd sum = 0.0;
                for (const auto &p : paths.paths)
                {
                    const double d = reference_distance(p, tx, rx, link, m, n);
                    const double phase = 2.0 * pi * std::fmod(d / link.wavelength, 1.0);
                    sum += p.gain * cd(std::cos(phase), std::sin(phase)) *
                           steering_entry(rl, rw, rx.element_spacing, link.wavelength, p.arrival) *
                           std::conj(steering_entry(tl, tw, tx.element_spacing, link.wavelength, p.departure));
                }
                h(r, t) = sum;
            }
        return h;
    }

    // Water level by bisection on sum (level - noise / r_i^2)^+ = total.
    inline std::vector<double> bisection_water_fill(const std::vector<double> &r, double total, double noise,
                                                    double *level_out = nullptr)
    {
        double lo = 0.0;
        double hi = total;
        for (double x : r)
            if (x > 0.0)
                hi = std::max(hi, total + noise / (x * x));
        const auto used = [&](double level) {
            double s = 0.0;
            for (double x : r)
                if (x > 0.0)
                    s += std::max(0.0, level - noise / (x * x));
            return s;
        };
        for (int it = 0; it < 400; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (used(mid) < total ? lo : hi) = mid;
        }
        const double level = 0.5 * (lo + hi);
        if (level_out)
            *level_out = level;
        std::vector<double> out;
        for (double x : r)
            out.push_back(x > 0.0 ? std::max(0.0, level - noise / (x * x)) : 0.0);
        return out;
    }

    // log2 det(I + H Q H^H / noise) with Q = V diag(rho) V^H from the eigen-decomposition of H^H H.
    inline double logdet_capacity(const Eigen::MatrixXcd &h, double total, double noise)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h.adjoint() * h);
        std::vector<double> r;
        const Eigen::VectorXd ev = eig.eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            r.push_back(std::sqrt(std::max(0.0, ev[i])));
        const std::vector<double> rho = bisection_water_fill(r, total, noise);
        Eigen::VectorXcd diag(ev.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            diag[i] = rho[static_cast<std::size_t>(i)];
        const Eigen::MatrixXcd q = eig.eigenvectors() * diag.asDiagonal() * eig.eigenvectors().adjoint();
        const Eigen::MatrixXcd m =
            Eigen::MatrixXcd::Identity(h.rows(), h.rows()) + h * q * h.adjoint() / noise;
        return std::log2(std::abs(m.determinant()));
    }

    // || G1 G1^H - k I ||_F^2 with G1 from exact LoS distances.
    inline double exact_orthogonality_residual(const wsms::ArrayLayout &tx, const wsms::ArrayLayout &rx,
                                               double lambda, double distance)
    {
        const int k = tx.k;
        Eigen::MatrixXcd g(k, k);
        wsms::PropagationPath los;
        wsms::LinkGeometry link{lambda, distance, 30.0, 30.0};
        for (int m = 0; m < k; ++m)
            for (int n = 0; n < k; ++n)
            {
                const double phase = 2.0 * pi * std::fmod(reference_distance(los, tx, rx, link, m, n) / lambda, 1.0);
                g(m, n) = cd(std::cos(phase), std::sin(phase));
            }
        return (g * g.adjoint() - static_cast<double>(k) * Eigen::MatrixXcd::Identity(k, k)).squaredNorm();
    }

    inline Eigen::MatrixXcd random_complex(int rows, int cols, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        Eigen::MatrixXcd m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m(i, j) = cd(n(rng), n(rng));
        return m;
    }
}

#endif
