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

#ifndef TRIHYBRID_WMMSE_HPP
#define TRIHYBRID_WMMSE_HPP

#include "trihybrid/channel.hpp"
#include "trihybrid/hybrid_decomp.hpp"
#include "trihybrid/manifold.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace trihybrid
{
    /// Everything the solvers need to know about one scenario. Powers are in mW.
    struct WmmseProblem
    {
        EffectiveChannel channels; // lifted per user, block width S (sel) or T (cof)
        std::vector<int> streams;  // D_k
        RVec beta;                 // K weights
        RVec noise;                // K noise powers
        RVec budget;               // N per-antenna budgets

        int K() const { return channels.K(); }
        int N() const { return channels.N; }
        int W() const { return channels.width; }
        int total_streams() const;
        std::vector<int> offsets() const; // first column of each user's streams in F_D

        /// Throws ConfigError on any inconsistency.
        void validate() const;
    };

    /// Convenience constructor with equal weights 1/K and scalar noise/budget.
    WmmseProblem make_problem(EffectiveChannel channels, int streams_per_user, double noise_mw, double budget_mw);

    /// Digital precoder, antenna vectors and WMMSE auxiliaries.
    struct PrecoderState
    {
        CMat F_D;           // N x D
        RMat V;             // W x N antenna vectors: one-hot (sel) or SH coefficients (cof)
        std::vector<int> states; // selected candidate per antenna (sel only)
        std::vector<CMat> U;     // M_k x D_k
        std::vector<CMat> Wt;    // D_k x D_k
    };

    // ---- rate and MSE --------------------------------------------------------

    /// Plain M x N channel H_l * blockdiag(v_1, ..., v_N).
    CMat apply_antenna_vectors(const CMat &H_lifted, const RMat &V);
    std::vector<CMat> apply_antenna_vectors(const EffectiveChannel &channels, const RMat &V);

    /// Weighted sum-rate in bps/Hz; per_user (optional) receives R_k.
    double sum_rate(const std::vector<CMat> &H, const CMat &F, const std::vector<int> &streams, const RVec &noise,
                    const RVec &beta, RVec *per_user = nullptr);

    /// E_k for user k given its receiver U_k.
    CMat mse_matrix(int k, const CMat &H_k, const CMat &F, const std::vector<int> &streams, const CMat &U_k,
                    double noise);

    std::vector<CMat> update_U(const std::vector<CMat> &H, const CMat &F, const std::vector<int> &streams,
                               const RVec &noise);

    /// (I - U^H H F_k)^{-1}, symmetrized; NumericalError if singular.
    CMat update_W(const CMat &U_k, const CMat &H_k, const CMat &F_k);

    /// sum_k beta_k (Re Tr(W_k E_k) - ln det W_k); DomainError if some W_k is not PD.
    double wmmse_objective(const std::vector<CMat> &W, const std::vector<CMat> &E, const RVec &beta);

    /// Objective of a full state (uses the state's U and W).
    double state_objective(const WmmseProblem &problem, const PrecoderState &state);

    // ---- per-antenna subproblem --------------------------------------------

    struct PerAntennaTerms
    {
        CMat B; // W x W, Hermitian PSD
        CMat Q; // D x W
        CMat D; // D x W
    };

    /// Terms for antenna n via the aggregated identity Q_n = sum_k beta_k (H_k F_D - h_n f_n^H)^H U W U^H H_(n).
    PerAntennaTerms per_antenna_terms(int n, const WmmseProblem &problem, const PrecoderState &state);

    /// Same terms from the explicit pairwise blocks B_qn (reference implementation).
    PerAntennaTerms per_antenna_terms_reference(int n, const WmmseProblem &problem, const PrecoderState &state);

    /// ||f||^2 v^T B v + 2 Re(f^H (Q - D) v): the part of the objective that depends on (f_n, v_n).
    double antenna_objective(const PerAntennaTerms &terms, const CVec &f, const RVec &v);

    /// argmin_f of antenna_objective over ||f||^2 <= P.
    CVec solve_f_closed_form(const PerAntennaTerms &terms, const RVec &v, double budget);

    struct Model1Update
    {
        int state = 0;
        CVec f;
        double value = 0.0;
    };

    /// Exhaustive search over the S one-hot vectors; ties go to the lowest index.
    Model1Update model1_antenna_update(const PerAntennaTerms &terms, double budget);

    struct Model2Update
    {
        RVec c;
        CVec f;
        double value = 0.0;
        bool manifold_converged = true;
    };

    /// f-update for the current c, then a manifold step on the trailing coefficients.
    Model2Update model2_antenna_update(const PerAntennaTerms &terms, const RVec &c, double budget, double rho,
                                       const ManifoldOptions &options);

    /// [2 sqrt(rho pi), 2 sqrt((1 - rho) pi) x] for a unit x of length T - 1.
    RVec lift_coefficients(const RVec &x, double rho);

    // ---- algorithms --------------------------------------------------------

    struct SolverOptions
    {
        int max_iterations = 50;
        double tolerance = 1e-6; // relative objective decrease for early stopping
        bool early_stop = true;
        double rho = 0.8;
        ManifoldOptions manifold;
        int n_rf = 0; // 0 skips the hybrid decomposition
        int init_rf = 0; // RF chains of the random initial factorization; 0 means D
        int decomposition_iterations = 30;
        std::uint64_t seed = 1;
        bool audit_blocks = false; // check the objective after every block update
    };

    struct TraceEntry
    {
        int iter = 0;
        double objective = 0.0;
        double sum_rate = 0.0;
        double max_power_violation = 0.0;
    };

    /// Worst observations over all block updates of a run (audit_blocks only).
    struct BlockAudit
    {
        long updates = 0;
        double max_relative_increase = 0.0;
        double max_power_violation = 0.0;
        double max_constraint_deviation = 0.0; // one-hot or ||c||^2 = 4 pi
    };

    struct SolverResult
    {
        PrecoderState state;
        std::vector<TraceEntry> trace;
        std::vector<double> iteration_seconds;
        BlockAudit audit;
        int iterations = 0;
        bool stopped_early = false;
        int manifold_failures = 0;

        bool decomposed = false;
        DecompositionResult decomposition;
        double rate_digital = 0.0;
        double rate_hybrid = 0.0;
    };

    /// Seeded starting point shared by every method: random-phase F_RF times Gaussian
    /// F_BB scaled onto the per-antenna budget, first candidate (sel) or the
    /// rho-split isotropic-plus-first-harmonic start (cof).
    PrecoderState initial_state(const WmmseProblem &problem, const SolverOptions &options);

    /// Pattern selection. A warm start replaces initial_state().
    SolverResult algorithm1(const WmmseProblem &problem, const SolverOptions &options,
                            const PrecoderState *warm_start = nullptr);

    /// Spherical-harmonics pattern synthesis.
    SolverResult algorithm2(const WmmseProblem &problem, const SolverOptions &options,
                            const PrecoderState *warm_start = nullptr);

    /// Rate of the hybrid factorization F_RF F_BB with the state's antenna vectors.
    double hybrid_rate(const WmmseProblem &problem, const RMat &V, const CMat &F_RF, const CMat &F_BB);

    /// CSV: iter,objective,sum_rate_bps_hz,max_power_violation
    void write_trace_csv(std::ostream &os, const std::vector<TraceEntry> &trace);

} // namespace trihybrid

#endif
