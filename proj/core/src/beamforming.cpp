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

#include "wsms/beamforming.hpp"

#include "wsms/errors.hpp"
#include "wsms/numerics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace wsms
{
    namespace
    {
        struct ThinQr
        {
            Eigen::MatrixXcd q; // rows x cols, orthonormal columns
            Eigen::MatrixXcd r; // cols x cols, upper triangular
        };

        ThinQr thin_qr(const Eigen::MatrixXcd &a)
        {
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
            const Eigen::Index n = a.cols();
            ThinQr out;
            out.q = qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), n);
            out.r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
            return out;
        }

        // (I_k kron a) * m, where m has k * a.cols() rows
        Eigen::MatrixXcd kron_identity_times(int k, const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &m)
        {
            const Eigen::Index br = a.rows(), bc = a.cols();
            Eigen::MatrixXcd out(k * br, m.cols());
            for (int j = 0; j < k; ++j)
                out.middleRows(j * br, br).noalias() = a * m.middleRows(j * bc, bc);
            return out;
        }

        Eigen::MatrixXcd kron_identity(int k, const Eigen::MatrixXcd &a)
        {
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(k * a.rows(), k * a.cols());
            for (int j = 0; j < k; ++j)
                out.block(j * a.rows(), j * a.cols(), a.rows(), a.cols()) = a;
            return out;
        }

        // (I_k kron a)^H * m
        Eigen::MatrixXcd kron_identity_adjoint_times(int k, const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &m)
        {
            const Eigen::Index br = a.rows(), bc = a.cols();
            Eigen::MatrixXcd out(k * bc, m.cols());
            for (int j = 0; j < k; ++j)
                out.middleRows(j * bc, bc).noalias() = a.adjoint() * m.middleRows(j * br, br);
            return out;
        }
    }

    ThinSvd wsms_thin_svd(const WsmsFactors &f)
    {
        const int k = f.k;
        if (f.tx_steering.rows() < f.n_paths || f.rx_steering.rows() < f.n_paths)
            throw DomainError("wsms_thin_svd: each subarray needs at least N_p antennas");
        const ThinQr qt = thin_qr(f.tx_steering);
        const ThinQr qr = thin_qr(f.rx_steering);

        // H = (I kron Q_r) [(I kron R_r) core (I kron R_t)^H] (I kron Q_t)^H
        const Eigen::MatrixXcd left = kron_identity_times(k, qr.r, f.core);
        const Eigen::MatrixXcd small = kron_identity_times(k, qt.r, left.adjoint()).adjoint();

        Eigen::JacobiSVD<Eigen::MatrixXcd> dec(small, Eigen::ComputeFullU | Eigen::ComputeFullV);
        ThinSvd out;
        out.singular_values = dec.singularValues();
        out.u = kron_identity_times(k, qr.q, dec.matrixU());
        out.v = kron_identity_times(k, qt.q, dec.matrixV());
        return out;
    }

    BeamformerSet closed_form_wsms(const PathSet &paths, const ArrayLayout &tx, const ArrayLayout &rx,
                                   const LinkGeometry &link, double transmit_power, double noise_power)
    {
        const int k = tx.k;
        const int np = static_cast<int>(paths.size());
        const int ns = k * np;
        if (np < 1)
            throw DomainError("closed_form_wsms: at least one path is required");
        if (ns > tx.n_antennas || ns > rx.n_antennas)
            throw DomainError("closed_form_wsms: k N_p = " + std::to_string(ns) + " exceeds the antenna count");

        const WsmsFactors f = factor_wsms_channel(paths, tx, rx, link);
        const ThinSvd sv = wsms_thin_svd(f);

        const Eigen::VectorXd sigma = sv.singular_values.head(ns);
        if (!(sigma(ns - 1) > 1e-12 * sigma(0)))
        {
            std::ostringstream msg;
            msg << "closed_form_wsms: singular value " << ns << " is " << sigma(ns - 1) << " against " << sigma(0)
                << "; degenerate geometry";
            throw NumericalError(msg.str());
        }
        const Eigen::MatrixXcd u_ns = sv.u.leftCols(ns);
        const Eigen::MatrixXcd v_ns = sv.v.leftCols(ns);
        const Eigen::VectorXd sigma_inv = sigma.cwiseInverse();

        // T_Ns = B^H U_Ns Sigma^-1, B = (I kron A_r) core
        const Eigen::MatrixXcd b = kron_identity_times(k, f.rx_steering, f.core);
        Eigen::MatrixXcd t_ns = b.adjoint() * u_ns;
        t_ns *= sigma_inv.asDiagonal();

        // R_Ns = D V_Ns Sigma^-1, D = core (I kron A_t)^H
        Eigen::MatrixXcd r_ns = f.core * kron_identity_adjoint_times(k, f.tx_steering, v_ns);
        r_ns *= sigma_inv.asDiagonal();

        const WaterFillResult wf = water_fill(std::span<const double>(sigma.data(), static_cast<std::size_t>(ns)),
                                              transmit_power, noise_power);
        Eigen::VectorXd gamma(ns);
        for (int i = 0; i < ns; ++i)
            gamma(i) = std::sqrt(wf.allocations[static_cast<std::size_t>(i)] * ns / transmit_power);

        BeamformerSet bf;
        bf.k = k;
        bf.tx_rf_per_subarray = np;
        bf.rx_rf_per_subarray = np;
        bf.streams = ns;
        bf.analog_precoder = kron_identity(k, f.tx_steering);
        bf.analog_combiner = kron_identity(k, f.rx_steering);
        bf.digital_precoder = t_ns * gamma.asDiagonal();
        bf.digital_combiner = std::move(r_ns);

        const double norm = kron_identity_times(k, f.tx_steering, bf.digital_precoder).norm();
        bf.digital_precoder *= std::sqrt(static_cast<double>(ns)) / norm;
        return bf;
    }

    double evaluate_se(const Eigen::MatrixXcd &h, const BeamformerSet &bf, double transmit_power, double noise_power)
    {
        if (h.cols() != bf.analog_precoder.rows() || h.rows() != bf.analog_combiner.rows() ||
            bf.analog_precoder.cols() != bf.digital_precoder.rows() ||
            bf.analog_combiner.cols() != bf.digital_combiner.rows() ||
            bf.digital_precoder.cols() != bf.digital_combiner.cols())
            throw DomainError("evaluate_se: beamformer dimensions do not match the channel");
        if (!(noise_power > 0.0))
            throw DomainError("evaluate_se: noise power must be positive");

        const Eigen::MatrixXcd combiner = bf.analog_combiner * bf.digital_combiner;
        const Eigen::MatrixXcd precoder = bf.analog_precoder * bf.digital_precoder;
        const Eigen::MatrixXcd effective = combiner.adjoint() * (h * precoder);
        const Eigen::MatrixXcd noise_cov = noise_power * (combiner.adjoint() * combiner);

        Eigen::LLT<Eigen::MatrixXcd> chol(noise_cov);
        const Eigen::VectorXd diag = chol.matrixL().toDenseMatrix().diagonal().real();
        if (chol.info() != Eigen::Success || diag.minCoeff() <= 1e-10 * diag.maxCoeff())
            throw NumericalError("evaluate_se: combined noise covariance is singular");

        // whitened effective channel L^-1 E shares the determinant with R_n^-1 E E^H
        const Eigen::MatrixXcd whitened = chol.matrixL().solve(effective);
        const Eigen::Index ns = effective.rows();
        const double scale = transmit_power / static_cast<double>(bf.digital_precoder.cols());
        const Eigen::MatrixXcd gram =
            Eigen::MatrixXcd::Identity(ns, ns) + scale * (whitened * whitened.adjoint());
        Eigen::LLT<Eigen::MatrixXcd> gram_chol(gram);
        if (gram_chol.info() != Eigen::Success)
            throw NumericalError("evaluate_se: log-det factorization failed");
        const Eigen::VectorXd g = gram_chol.matrixL().toDenseMatrix().diagonal().real();
        double se = 0.0;
        for (Eigen::Index i = 0; i < g.size(); ++i)
            se += 2.0 * std::log2(g(i));
        return se;
    }

    std::string to_string(ConstraintViolation::Kind kind)
    {
        switch (kind)
        {
        case ConstraintViolation::Kind::block_support:
            return "block_support";
        case ConstraintViolation::Kind::unit_modulus:
            return "unit_modulus";
        case ConstraintViolation::Kind::power_normalization:
            return "power_normalization";
        case ConstraintViolation::Kind::dimensions:
            return "dimensions";
        }
        return "unknown";
    }

    namespace
    {
        void check_analog(const Eigen::MatrixXcd &a, int k, int per_block, const std::string &name,
                          std::vector<ConstraintViolation> &out)
        {
            using Kind = ConstraintViolation::Kind;
            if (k < 1 || per_block < 1 || a.rows() % k != 0 || a.cols() != static_cast<Eigen::Index>(k) * per_block)
            {
                out.push_back({Kind::dimensions, name, "shape incompatible with k and RF chains per subarray",
                               static_cast<double>(a.cols())});
                return;
            }
            const Eigen::Index block_rows = a.rows() / k;
            int off_support = 0, bad_modulus = 0;
            double worst_off = 0.0, worst_mod = 0.0;
            for (Eigen::Index c = 0; c < a.cols(); ++c)
            {
                const Eigen::Index block = c / per_block;
                for (Eigen::Index r = 0; r < a.rows(); ++r)
                {
                    const double mag = std::abs(a(r, c));
                    if (r / block_rows == block)
                    {
                        const double err = std::abs(mag - 1.0);
                        if (err > 1e-12)
                        {
                            ++bad_modulus;
                            worst_mod = std::max(worst_mod, err);
                        }
                    }
                    else if (a(r, c) != std::complex<double>(0.0, 0.0))
                    {
                        ++off_support;
                        worst_off = std::max(worst_off, mag);
                    }
                }
            }
            if (off_support > 0)
                out.push_back({Kind::block_support, name,
                               std::to_string(off_support) + " nonzero entries outside the block-diagonal support",
                               worst_off});
            if (bad_modulus > 0)
                out.push_back({Kind::unit_modulus, name,
                               std::to_string(bad_modulus) + " on-support entries violate unit modulus", worst_mod});
        }
    }

    std::vector<ConstraintViolation> validate_constraints(const BeamformerSet &bf)
    {
        using Kind = ConstraintViolation::Kind;
        std::vector<ConstraintViolation> out;
        check_analog(bf.analog_precoder, bf.k, bf.tx_rf_per_subarray, "P_A", out);
        check_analog(bf.analog_combiner, bf.k, bf.rx_rf_per_subarray, "C_A", out);
        if (bf.analog_precoder.cols() != bf.digital_precoder.rows())
        {
            out.push_back({Kind::dimensions, "P_D", "row count differs from the RF chain count",
                           static_cast<double>(bf.digital_precoder.rows())});
            return out;
        }
        const double power = (bf.analog_precoder * bf.digital_precoder).squaredNorm();
        const double target = static_cast<double>(bf.streams);
        if (std::abs(power - target) > 1e-9 * target)
        {
            std::ostringstream msg;
            msg << "||P_A P_D||_F^2 = " << power << ", expected " << target;
            out.push_back({Kind::power_normalization, "P_A P_D", msg.str(), power});
        }
        return out;
    }
}
