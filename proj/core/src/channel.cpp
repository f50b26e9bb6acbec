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

#include "wsms/channel.hpp"

#include "wsms/errors.hpp"

#include <cmath>
#include <numbers>

namespace wsms
{
    namespace
    {
        // exp(j 2 pi d / lambda) with the integer number of cycles removed first.
        cdouble propagation_phasor(double length, double wavelength)
        {
            const double cycles = std::fmod(length / wavelength, 1.0);
            return std::polar(1.0, 2.0 * std::numbers::pi * cycles);
        }

        void require_shared_k(const ArrayLayout &tx, const ArrayLayout &rx)
        {
            if (tx.k != rx.k)
                throw DomainError("channel: transmit and receive layouts must share the subarray count");
        }
    }

    Eigen::VectorXcd steering_vector(int rows, int cols, double element_spacing, double wavelength, const Direction &dir)
    {
        if (rows < 1 || cols < 1)
            throw DomainError("steering_vector: array dimensions must be positive");
        const double kd = 2.0 * std::numbers::pi / wavelength * element_spacing;
        const double ux = std::sin(dir.elevation) * std::cos(dir.azimuth);
        const double uz = std::cos(dir.elevation);
        Eigen::VectorXcd a(rows * cols);
        for (int n_l = 0; n_l < rows; ++n_l)
            for (int n_w = 0; n_w < cols; ++n_w)
                a(n_l * cols + n_w) = std::polar(1.0, kd * (n_l * ux + n_w * uz));
        return a;
    }

    double path_reference_distance(const PropagationPath &path, const ArrayLayout &tx, const ArrayLayout &rx,
                                   const LinkGeometry &link, int m, int n)
    {
        switch (path.kind)
        {
        case PathKind::line_of_sight:
            return reference_distance_los(tx, rx, link.distance, m, n);
        case PathKind::ground_reflection:
            return reference_distance_reflected(tx, rx, link.distance, link.tx_height, link.rx_height, m, n);
        case PathKind::wall_reflection:
            return reference_distance_wall(tx, rx, link.distance, path.wall_offset, m, n);
        }
        throw DomainError("path_reference_distance: unknown path kind");
    }

    Eigen::MatrixXcd phase_matrix(const ArrayLayout &tx, const ArrayLayout &rx, const PropagationPath &path,
                                  const LinkGeometry &link)
    {
        require_shared_k(tx, rx);
        const int k = tx.k;
        Eigen::MatrixXcd g(k, k);
        for (int m = 0; m < k; ++m)
            for (int n = 0; n < k; ++n)
                g(m, n) = propagation_phasor(path_reference_distance(path, tx, rx, link, m, n), link.wavelength);
        return g;
    }

    namespace
    {
        void require_valid_paths(const PathSet &paths)
        {
            for (const auto &p : paths.paths)
            {
                if (!std::isfinite(p.gain.real()) || !std::isfinite(p.gain.imag()) || std::abs(p.gain) == 0.0)
                    throw DomainError("channel: path gains must be finite and nonzero");
            }
        }
    }

    ChannelMatrix assemble_wsms_channel(const PathSet &paths, const ArrayLayout &tx, const ArrayLayout &rx,
                                        const LinkGeometry &link)
    {
        require_shared_k(tx, rx);
        require_valid_paths(paths);
        const int k = tx.k;
        const int per_t = tx.antennas_per_subarray();
        const int per_r = rx.antennas_per_subarray();

        Eigen::MatrixXcd los = Eigen::MatrixXcd::Zero(rx.n_antennas, tx.n_antennas);
        Eigen::MatrixXcd nlos = Eigen::MatrixXcd::Zero(rx.n_antennas, tx.n_antennas);

        for (std::size_t i = 0; i < paths.size(); ++i)
        {
            const PropagationPath &p = paths.paths[i];
            const Eigen::MatrixXcd g = phase_matrix(tx, rx, p, link);
            const Eigen::VectorXcd a_t = steering_vector(tx.subarray_rows, tx.subarray_cols, tx.element_spacing,
                                                         link.wavelength, p.departure);
            const Eigen::VectorXcd a_r = steering_vector(rx.subarray_rows, rx.subarray_cols, rx.element_spacing,
                                                         link.wavelength, p.arrival);
            const Eigen::MatrixXcd outer = a_r * a_t.adjoint();
            Eigen::MatrixXcd &target = (i == 0) ? los : nlos;
            for (int m = 0; m < k; ++m)
                for (int n = 0; n < k; ++n)
                    target.block(m * per_r, n * per_t, per_r, per_t) += (p.gain * g(m, n)) * outer;
        }

        ChannelMatrix h;
        h.entries = los + nlos;
        h.model = ChannelModel::wsms;
        h.tx = tx;
        h.rx = rx;
        h.paths = paths;
        h.los_part = std::move(los);
        h.nlos_part = std::move(nlos);
        return h;
    }

    ChannelMatrix assemble_planar_channel(const PathSet &paths, const ArrayShape &tx_shape, const ArrayShape &rx_shape,
                                          double wavelength)
    {
        require_valid_paths(paths);
        const double d_a = wavelength / 2.0;
        ChannelMatrix h;
        h.entries = Eigen::MatrixXcd::Zero(rx_shape.size(), tx_shape.size());
        for (const auto &p : paths.paths)
        {
            const Eigen::VectorXcd a_t = steering_vector(tx_shape.rows, tx_shape.cols, d_a, wavelength, p.departure);
            const Eigen::VectorXcd a_r = steering_vector(rx_shape.rows, rx_shape.cols, d_a, wavelength, p.arrival);
            h.entries += p.gain * (a_r * a_t.adjoint());
        }
        h.model = ChannelModel::planar;
        h.paths = paths;
        return h;
    }

    ChannelMatrix assemble_los_mimo_channel(double gain_magnitude, const Eigen::Matrix3Xd &tx_positions,
                                            const Eigen::Matrix3Xd &rx_positions, double wavelength)
    {
        ChannelMatrix h;
        h.entries.resize(rx_positions.cols(), tx_positions.cols());
        for (Eigen::Index m = 0; m < rx_positions.cols(); ++m)
            for (Eigen::Index n = 0; n < tx_positions.cols(); ++n)
                h.entries(m, n) = gain_magnitude *
                                  propagation_phasor((rx_positions.col(m) - tx_positions.col(n)).norm(), wavelength);
        h.model = ChannelModel::los_mimo;
        return h;
    }

    Eigen::Matrix3Xd uniform_grid_positions(int n_antennas, double aperture, double origin_y)
    {
        const auto [nz, nx] = near_square_factors(n_antennas);
        const double diag_steps = std::hypot(nx - 1.0, nz - 1.0);
        const double spacing = diag_steps > 0.0 ? aperture / diag_steps : 0.0;
        Eigen::Matrix3Xd pos(3, n_antennas);
        for (int ix = 0; ix < nx; ++ix)
            for (int iz = 0; iz < nz; ++iz)
                pos.col(ix * nz + iz) = Eigen::Vector3d(ix * spacing, origin_y, iz * spacing);
        return pos;
    }

    WsmsFactors factor_wsms_channel(const PathSet &paths, const ArrayLayout &tx, const ArrayLayout &rx,
                                    const LinkGeometry &link)
    {
        require_shared_k(tx, rx);
        require_valid_paths(paths);
        const int k = tx.k;
        const int np = static_cast<int>(paths.size());
        WsmsFactors f;
        f.k = k;
        f.n_paths = np;
        f.tx_steering.resize(tx.antennas_per_subarray(), np);
        f.rx_steering.resize(rx.antennas_per_subarray(), np);
        f.core = Eigen::MatrixXcd::Zero(k * np, k * np);
        for (int i = 0; i < np; ++i)
        {
            const PropagationPath &p = paths.paths[static_cast<std::size_t>(i)];
            f.tx_steering.col(i) = steering_vector(tx.subarray_rows, tx.subarray_cols, tx.element_spacing,
                                                   link.wavelength, p.departure);
            f.rx_steering.col(i) = steering_vector(rx.subarray_rows, rx.subarray_cols, rx.element_spacing,
                                                   link.wavelength, p.arrival);
            const Eigen::MatrixXcd g = phase_matrix(tx, rx, p, link);
            for (int m = 0; m < k; ++m)
                for (int n = 0; n < k; ++n)
                    f.core(m * np + i, n * np + i) = p.gain * g(m, n);
        }
        return f;
    }

    PathSet path_gains_backhaul(const LinkBudget &budget)
    {
        const LinkGeometry &link = budget.link;
        if (!(link.distance > 0.0))
            throw DomainError("path_gains_backhaul: link distance must be positive");
        if (!(link.wavelength > 0.0))
            throw DomainError("path_gains_backhaul: wavelength must be positive");
        if (budget.absorption < 0.0)
            throw DomainError("path_gains_backhaul: absorption must be non-negative");

        const double pi = std::numbers::pi;
        const auto free_space = [&](double d) {
            return link.wavelength / (4.0 * pi * d) * std::exp(-0.5 * budget.absorption * d);
        };
        const double bounce = -std::pow(10.0, -budget.reflection_loss_db / 20.0);

        PathSet set;
        PropagationPath los;
        los.kind = PathKind::line_of_sight;
        los.gain = free_space(link.distance);
        los.departure = {pi / 2.0, pi / 2.0};
        los.arrival = {pi / 2.0, pi / 2.0};
        set.paths.push_back(los);

        if (budget.ground_reflection)
        {
            if (!(link.tx_height > 0.0) || !(link.rx_height > 0.0))
                throw DomainError("path_gains_backhaul: mounting heights must be positive");
            const double drop = link.tx_height + link.rx_height;
            const double d = std::hypot(link.distance, drop);
            PropagationPath g;
            g.kind = PathKind::ground_reflection;
            g.gain = bounce * free_space(d);
            g.departure = {pi / 2.0, std::acos(-drop / d)};
            g.arrival = {pi / 2.0, std::acos(drop / d)};
            set.paths.push_back(g);
        }

        for (double w : budget.wall_offsets)
        {
            if (w == 0.0)
                throw DomainError("path_gains_backhaul: wall offset must be nonzero");
            const double d = std::hypot(link.distance, 2.0 * w);
            PropagationPath p;
            p.kind = PathKind::wall_reflection;
            p.wall_offset = w;
            p.gain = bounce * free_space(d);
            p.departure = {std::atan2(link.distance, 2.0 * w), pi / 2.0};
            p.arrival = {std::atan2(link.distance, -2.0 * w), pi / 2.0};
            set.paths.push_back(p);
        }
        return set;
    }
}
