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

#ifndef WSMS_BEAMFORMING_HPP
#define WSMS_BEAMFORMING_HPP

#include "wsms/channel.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace wsms
{
    // Hybrid precoder/combiner pair. Analog matrices are block diagonal with one
    // block of rf_per_subarray columns per subarray, constant-modulus on the support.
    struct BeamformerSet
    {
        Eigen::MatrixXcd analog_precoder;   // P_A, N_t x L_t
        Eigen::MatrixXcd digital_precoder;  // P_D, L_t x N_s
        Eigen::MatrixXcd analog_combiner;   // C_A, N_r x L_r
        Eigen::MatrixXcd digital_combiner;  // C_D, L_r x N_s
        int k = 1;
        int tx_rf_per_subarray = 1; // l_t
        int rx_rf_per_subarray = 1; // l_r
        int streams = 1;            // N_s

        int tx_rf_chains() const { return k * tx_rf_per_subarray; }
        int rx_rf_chains() const { return k * rx_rf_per_subarray; }
    };

    // Optimal hybrid beamformers for the WSMS channel with N_s = L_t = L_r = k N_p:
    //   P_A = I_k kron A_t, P_D = T_Ns Gamma (power-normalized), C_A = I_k kron A_r, C_D = R_Ns,
    // with T = B^H U Sigma^-1 and R = D V Sigma^-1 from the channel's block factorizations
    // H = B (I_k kron A_t^H) = (I_k kron A_r) D. The SVD is taken through the factored form,
    // so the cost is linear in N_t + N_r for fixed N_s.
    // Throws DomainError if k N_p exceeds either antenna count and NumericalError when one of
    // the first N_s singular values falls below 1e-12 of the largest.
    BeamformerSet closed_form_wsms(const PathSet &paths, const ArrayLayout &tx, const ArrayLayout &rx,
                                   const LinkGeometry &link, double transmit_power, double noise_power);

    // Leading singular triplets of the WSMS channel computed through its factored form.
    struct ThinSvd
    {
        Eigen::MatrixXcd u;
        Eigen::VectorXd singular_values;
        Eigen::MatrixXcd v;
    };

    ThinSvd wsms_thin_svd(const WsmsFactors &factors);

    // log2 |I + rho / N_s R_n^-1 (C^H H P)(C^H H P)^H| with R_n = noise C^H C, C = C_A C_D, P = P_A P_D.
    // R_n is handled through a Cholesky factor; NumericalError if it is singular.
    double evaluate_se(const Eigen::MatrixXcd &h, const BeamformerSet &bf, double transmit_power, double noise_power);

    struct ConstraintViolation
    {
        enum class Kind
        {
            block_support,
            unit_modulus,
            power_normalization,
            dimensions
        };
        Kind kind;
        std::string matrix;
        std::string detail;
        double measured = 0.0;
    };

    // Empty result means the set satisfies block support (exact zeros), unit modulus
    // (1e-12) and ||P_A P_D||_F^2 = N_s (1e-9 relative).
    std::vector<ConstraintViolation> validate_constraints(const BeamformerSet &bf);

    std::string to_string(ConstraintViolation::Kind kind);
}

#endif
