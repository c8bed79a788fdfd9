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

#include "trihybrid/wmmse.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <chrono>
#include <iomanip>
#include <ostream>

namespace trihybrid
{
    int WmmseProblem::total_streams() const
    {
        int d = 0;
        for (int s : streams)
            d += s;
        return d;
    }

    std::vector<int> WmmseProblem::offsets() const
    {
        std::vector<int> off(streams.size(), 0);
        for (size_t k = 1; k < streams.size(); ++k)
            off[k] = off[k - 1] + streams[k - 1];
        return off;
    }

    void WmmseProblem::validate() const
    {
        const int k = K();
        if (k < 1)
            throw ConfigError("problem has no users");
        if (N() < 1 || W() < 1)
            throw ConfigError("problem needs at least one antenna and a positive block width");
        for (const auto &h : channels.H)
            if (h.cols() != static_cast<Eigen::Index>(N()) * W() || h.rows() < 1)
                throw ConfigError("lifted channel width does not match N * block width");
        if (static_cast<int>(streams.size()) != k || beta.size() != k || noise.size() != k)
            throw ConfigError("streams, beta and noise need one entry per user");
        for (int s : streams)
            if (s < 1)
                throw ConfigError("every user needs at least one stream");
        if (budget.size() != N())
            throw ConfigError("one power budget per antenna is required");
        if ((beta.array() < 0.0).any())
            throw ConfigError("user weights must be non-negative");
        if (!(noise.array() > 0.0).all())
            throw ConfigError("noise powers must be positive");
        if (!(budget.array() > 0.0).all())
            throw ConfigError("power budgets must be positive");
    }

    WmmseProblem make_problem(EffectiveChannel channels, int streams_per_user, double noise_mw, double budget_mw)
    {
        WmmseProblem p;
        const int K = channels.K();
        p.streams.assign(static_cast<size_t>(K), streams_per_user);
        p.beta = RVec::Constant(K, 1.0 / std::max(K, 1));
        p.noise = RVec::Constant(K, noise_mw);
        p.budget = RVec::Constant(channels.N, budget_mw);
        p.channels = std::move(channels);
        return p;
    }

    // ---- rate and MSE --------------------------------------------------------

    CMat apply_antenna_vectors(const CMat &H_lifted, const RMat &V)
    {
        const Eigen::Index W = V.rows(), N = V.cols();
        if (H_lifted.cols() != W * N)
            throw ConfigError("apply_antenna_vectors: width mismatch");
        CMat H(H_lifted.rows(), N);
        for (Eigen::Index n = 0; n < N; ++n)
            H.col(n) = H_lifted.middleCols(n * W, W) * V.col(n).cast<cplx>();
        return H;
    }

    std::vector<CMat> apply_antenna_vectors(const EffectiveChannel &channels, const RMat &V)
    {
        std::vector<CMat> H;
        H.reserve(channels.H.size());
        for (const auto &h : channels.H)
            H.push_back(apply_antenna_vectors(h, V));
        return H;
    }

    namespace
    {
        double log_det_hpd(const CMat &A, const char *what)
        {
            Eigen::LLT<CMat> llt(A);
            if (llt.info() != Eigen::Success)
                throw NumericalError(std::string(what) + ": matrix is not positive definite");
            double s = 0.0;
            for (Eigen::Index i = 0; i < A.rows(); ++i)
                s += std::log(llt.matrixLLT()(i, i).real());
            return 2.0 * s;
        }

        CMat hermitian_part(const CMat &A) { return 0.5 * (A + A.adjoint()); }
    } // namespace

    double sum_rate(const std::vector<CMat> &H, const CMat &F, const std::vector<int> &streams, const RVec &noise,
                    const RVec &beta, RVec *per_user)
    {
        const int K = static_cast<int>(H.size());
        if (static_cast<int>(streams.size()) != K || noise.size() != K || beta.size() != K)
            throw ConfigError("sum_rate: per-user vectors do not match the user count");
        RVec r(K);
        int off = 0;
        for (int k = 0; k < K; ++k)
        {
            const CMat G = H[static_cast<size_t>(k)] * F;
            const CMat Gk = G.middleCols(off, streams[static_cast<size_t>(k)]);
            const Eigen::Index M = G.rows();
            const CMat total = hermitian_part(G * G.adjoint()) + noise(k) * CMat::Identity(M, M);
            const CMat interf = hermitian_part(total - Gk * Gk.adjoint());
            r(k) = (log_det_hpd(total, "sum_rate") - log_det_hpd(interf, "sum_rate")) / std::numbers::ln2;
            off += streams[static_cast<size_t>(k)];
        }
        if (per_user)
            *per_user = r;
        return beta.dot(r);
    }

    CMat mse_matrix(int k, const CMat &H_k, const CMat &F, const std::vector<int> &streams, const CMat &U_k,
                    double noise)
    {
        int off = 0;
        for (int i = 0; i < k; ++i)
            off += streams[static_cast<size_t>(i)];
        const int Dk = streams[static_cast<size_t>(k)];
        const CMat Phi = U_k.adjoint() * (H_k * F);
        const CMat own = Phi.middleCols(off, Dk);
        CMat E = Phi * Phi.adjoint() - own - own.adjoint() + CMat::Identity(Dk, Dk) + noise * (U_k.adjoint() * U_k);
        return hermitian_part(E);
    }

    std::vector<CMat> update_U(const std::vector<CMat> &H, const CMat &F, const std::vector<int> &streams,
                               const RVec &noise)
    {
        std::vector<CMat> U;
        U.reserve(H.size());
        int off = 0;
        for (size_t k = 0; k < H.size(); ++k)
        {
            const CMat G = H[k] * F;
            const Eigen::Index M = G.rows();
            const CMat C = hermitian_part(G * G.adjoint()) + noise(static_cast<Eigen::Index>(k)) * CMat::Identity(M, M);
            Eigen::LLT<CMat> llt(C);
            if (llt.info() != Eigen::Success)
                throw NumericalError("update_U: receive covariance is not positive definite");
            U.push_back(llt.solve(G.middleCols(off, streams[k])));
            off += streams[k];
        }
        return U;
    }

    CMat update_W(const CMat &U_k, const CMat &H_k, const CMat &F_k)
    {
        const Eigen::Index D = F_k.cols();
        const CMat X = CMat::Identity(D, D) - U_k.adjoint() * H_k * F_k;
        Eigen::FullPivLU<CMat> lu(X);
        if (!lu.isInvertible())
            throw NumericalError("update_W: I - U^H H F is singular");
        return hermitian_part(lu.inverse());
    }

    double wmmse_objective(const std::vector<CMat> &W, const std::vector<CMat> &E, const RVec &beta)
    {
        if (W.size() != E.size() || static_cast<Eigen::Index>(W.size()) != beta.size())
            throw ConfigError("wmmse_objective: size mismatch");
        double obj = 0.0;
        for (size_t k = 0; k < W.size(); ++k)
        {
            Eigen::LLT<CMat> llt(W[k]);
            if (llt.info() != Eigen::Success)
                throw DomainError("wmmse_objective: W_k is not positive definite");
            double ld = 0.0;
            for (Eigen::Index i = 0; i < W[k].rows(); ++i)
                ld += std::log(llt.matrixLLT()(i, i).real());
            obj += beta(static_cast<Eigen::Index>(k)) * ((W[k] * E[k]).trace().real() - 2.0 * ld);
        }
        return obj;
    }

    double state_objective(const WmmseProblem &problem, const PrecoderState &state)
    {
        const auto H = apply_antenna_vectors(problem.channels, state.V);
        std::vector<CMat> E;
        for (int k = 0; k < problem.K(); ++k)
            E.push_back(mse_matrix(k, H[static_cast<size_t>(k)], state.F_D, problem.streams,
                                   state.U[static_cast<size_t>(k)], problem.noise(k)));
        return wmmse_objective(state.Wt, E, problem.beta);
    }

    // ---- per-antenna subproblem --------------------------------------------

    namespace
    {
        // Quantities that stay fixed during one antenna sweep, plus the running H_k F_D.
        struct SweepCache
        {
            std::vector<CMat> H;      // M_k x N, current antenna vectors applied
            std::vector<CMat> G;      // H_k F_D
            std::vector<CMat> Lambda; // beta_k U_k W_k U_k^H
            std::vector<CMat> WUh;    // beta_k W_k U_k^H
        };

        SweepCache make_cache(const WmmseProblem &problem, const PrecoderState &state)
        {
            SweepCache c;
            c.H = apply_antenna_vectors(problem.channels, state.V);
            for (int k = 0; k < problem.K(); ++k)
            {
                const auto &U = state.U[static_cast<size_t>(k)];
                const auto &W = state.Wt[static_cast<size_t>(k)];
                c.G.push_back(c.H[static_cast<size_t>(k)] * state.F_D);
                c.WUh.push_back(problem.beta(k) * (W * U.adjoint()));
                c.Lambda.push_back(U * c.WUh.back());
            }
            return c;
        }

        PerAntennaTerms terms_from_cache(int n, const WmmseProblem &problem, const PrecoderState &state,
                                         const SweepCache &c)
        {
            const int W = problem.W(), D = problem.total_streams();
            const auto off = problem.offsets();
            PerAntennaTerms t;
            t.B = CMat::Zero(W, W);
            t.Q = CMat::Zero(D, W);
            t.D = CMat::Zero(D, W);
            for (int k = 0; k < problem.K(); ++k)
            {
                const size_t ks = static_cast<size_t>(k);
                const auto Hn = problem.channels.H[ks].middleCols(static_cast<Eigen::Index>(n) * W, W);
                const CMat X = c.Lambda[ks] * Hn;
                t.B.noalias() += Hn.adjoint() * X;
                const CMat others = c.G[ks] - c.H[ks].col(n) * state.F_D.row(n);
                t.Q.noalias() += others.adjoint() * X;
                t.D.middleRows(off[ks], problem.streams[ks]) = c.WUh[ks] * Hn;
            }
            t.B = hermitian_part(t.B);
            return t;
        }

        struct ClosedForm
        {
            CVec f;
            double value;
        };

        ClosedForm closed_form(double a, const CVec &d, double budget)
        {
            const double dn = d.norm();
            if (!(dn > 0.0))
                return {CVec::Zero(d.size()), 0.0};
            const double boundary = std::sqrt(budget) / dn;
            const double x = a <= 1e-12 ? boundary : std::min(1.0 / a, boundary);
            return {-x * d, a * x * x * dn * dn - 2.0 * x * dn * dn};
        }
    } // namespace

    PerAntennaTerms per_antenna_terms(int n, const WmmseProblem &problem, const PrecoderState &state)
    {
        if (n < 0 || n >= problem.N())
            throw ConfigError("per_antenna_terms: antenna index out of range");
        return terms_from_cache(n, problem, state, make_cache(problem, state));
    }

    PerAntennaTerms per_antenna_terms_reference(int n, const WmmseProblem &problem, const PrecoderState &state)
    {
        if (n < 0 || n >= problem.N())
            throw ConfigError("per_antenna_terms_reference: antenna index out of range");
        const int W = problem.W(), D = problem.total_streams(), N = problem.N();
        const auto off = problem.offsets();

        auto block = [&](int k, int q) -> CMat
        { return problem.channels.H[static_cast<size_t>(k)].middleCols(static_cast<Eigen::Index>(q) * W, W); };

        auto B_qp = [&](int q, int p)
        {
            CMat B = CMat::Zero(W, W);
            for (int k = 0; k < problem.K(); ++k)
            {
                const auto &U = state.U[static_cast<size_t>(k)];
                const auto &Wk = state.Wt[static_cast<size_t>(k)];
                B += problem.beta(k) * (block(k, q).adjoint() * U * Wk * U.adjoint() * block(k, p));
            }
            return B;
        };

        PerAntennaTerms t;
        t.B = hermitian_part(B_qp(n, n));
        t.Q = CMat::Zero(D, W);
        for (int q = 0; q < N; ++q)
        {
            if (q == n)
                continue;
            const CVec fq = state.F_D.row(q).adjoint();
            const RVec vq = state.V.col(q);
            t.Q += fq * (vq.transpose().cast<cplx>() * B_qp(q, n));
        }
        t.D = CMat::Zero(D, W);
        for (int k = 0; k < problem.K(); ++k)
        {
            const auto &U = state.U[static_cast<size_t>(k)];
            const auto &Wk = state.Wt[static_cast<size_t>(k)];
            t.D.middleRows(off[static_cast<size_t>(k)], problem.streams[static_cast<size_t>(k)]) =
                problem.beta(k) * (Wk * U.adjoint() * block(k, n));
        }
        return t;
    }

    double antenna_objective(const PerAntennaTerms &terms, const CVec &f, const RVec &v)
    {
        const CVec vc = v.cast<cplx>();
        const double quad = v.dot(terms.B.real() * v);
        const cplx lin = f.dot((terms.Q - terms.D) * vc); // f^H (Q - D) v
        return f.squaredNorm() * quad + 2.0 * lin.real();
    }

    CVec solve_f_closed_form(const PerAntennaTerms &terms, const RVec &v, double budget)
    {
        const double a = v.dot(terms.B.real() * v);
        const CVec d = (terms.Q - terms.D) * v.cast<cplx>();
        return closed_form(a, d, budget).f;
    }

    Model1Update model1_antenna_update(const PerAntennaTerms &terms, double budget)
    {
        const Eigen::Index S = terms.B.rows();
        const CMat QD = terms.Q - terms.D;
        Model1Update best;
        best.value = std::numeric_limits<double>::infinity();
        for (Eigen::Index s = 0; s < S; ++s)
        {
            ClosedForm cf = closed_form(terms.B(s, s).real(), QD.col(s), budget);
            if (cf.value < best.value)
            {
                best.state = static_cast<int>(s);
                best.f = std::move(cf.f);
                best.value = cf.value;
            }
        }
        return best;
    }

    RVec lift_coefficients(const RVec &x, double rho)
    {
        RVec c(x.size() + 1);
        c(0) = 2.0 * std::sqrt(rho * pi);
        c.tail(x.size()) = 2.0 * std::sqrt((1.0 - rho) * pi) * x;
        return c;
    }

    Model2Update model2_antenna_update(const PerAntennaTerms &terms, const RVec &c, double budget, double rho,
                                       const ManifoldOptions &options)
    {
        if (!(rho > 0.0 && rho <= 1.0))
            throw DomainError("model2_antenna_update: rho must lie in (0, 1]");
        const Eigen::Index T = c.size();
        if (terms.B.rows() != T)
            throw ConfigError("model2_antenna_update: coefficient length does not match the terms");

        Model2Update out;
        out.f = solve_f_closed_form(terms, c, budget);
        out.c = c;
        out.value = antenna_objective(terms, out.f, c);
        if (rho >= 1.0 || T == 1)
            return out;

        RVec x0 = c.tail(T - 1);
        if (x0.norm() > 0.0)
            x0.normalize();
        const SphereProblem p = build_reduced_problem(terms.B, terms.Q, terms.D, out.f, rho, x0);
        const SphereSolution s = solve_sphere(p, options);
        out.manifold_converged = s.converged;

        const RVec c_new = lift_coefficients(s.x, rho);
        const double v_new = antenna_objective(terms, out.f, c_new);
        if (v_new <= out.value)
        {
            out.c = c_new;
            out.value = v_new;
        }
        return out;
    }

    // ---- algorithms --------------------------------------------------------

    namespace
    {
        double effective_rho(const WmmseProblem &problem, double rho) { return problem.W() == 1 ? 1.0 : rho; }

        double max_power_violation(const CMat &F, const RVec &budget)
        {
            const RVec p = antenna_powers(F);
            double v = 0.0;
            for (Eigen::Index n = 0; n < p.size(); ++n)
                v = std::max(v, p(n) / budget(n) - 1.0);
            return v;
        }

        double antenna_constraint_deviation(const RMat &V, ChannelMode mode)
        {
            double dev = 0.0;
            for (Eigen::Index n = 0; n < V.cols(); ++n)
            {
                if (mode == ChannelMode::cof)
                    dev = std::max(dev, std::abs(V.col(n).squaredNorm() - four_pi) / four_pi);
                else
                {
                    int ones = 0;
                    for (Eigen::Index s = 0; s < V.rows(); ++s)
                    {
                        const double b = V(s, n);
                        if (b == 1.0)
                            ++ones;
                        else if (b != 0.0)
                            dev = std::max(dev, 1.0);
                    }
                    if (ones != 1)
                        dev = std::max(dev, 1.0);
                }
            }
            return dev;
        }

        std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b)
        {
            std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (a + 1) + 0xBF58476D1CE4E5B9ULL * (b + 1);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            return z ^ (z >> 31);
        }

        SolverResult run_bcd(const WmmseProblem &problem, const SolverOptions &options, int model,
                             const PrecoderState *warm)
        {
            problem.validate();
            const ChannelMode want = model == 1 ? ChannelMode::sel : ChannelMode::cof;
            if (problem.channels.mode != want)
                throw ConfigError(model == 1 ? "algorithm1 needs selection-lifted channels"
                                             : "algorithm2 needs harmonic-lifted channels");
            if (options.max_iterations < 0)
                throw ConfigError("max_iterations must be non-negative");
            if (model == 2 && !(options.rho > 0.0 && options.rho <= 1.0))
                throw DomainError("rho must lie in (0, 1]");

            const int K = problem.K(), N = problem.N(), W = problem.W();
            const double rho = effective_rho(problem, options.rho);

            SolverResult res;
            PrecoderState &st = res.state;
            st = warm ? *warm : initial_state(problem, options);
            if (st.F_D.rows() != N || st.F_D.cols() != problem.total_streams() || st.V.rows() != W || st.V.cols() != N)
                throw ConfigError("warm start does not match the problem dimensions");
            if (model == 1 && static_cast<int>(st.states.size()) != N)
            {
                st.states.assign(static_cast<size_t>(N), 0);
                for (int n = 0; n < N; ++n)
                    for (int s = 0; s < W; ++s)
                        if (st.V(s, n) == 1.0)
                            st.states[static_cast<size_t>(n)] = s;
            }

            auto objective_now = [&]() { return state_objective(problem, st); };
            auto record = [&](int iter)
            {
                const auto H = apply_antenna_vectors(problem.channels, st.V);
                TraceEntry e;
                e.iter = iter;
                e.objective = objective_now();
                e.sum_rate = sum_rate(H, st.F_D, problem.streams, problem.noise, problem.beta);
                e.max_power_violation = max_power_violation(st.F_D, problem.budget);
                res.trace.push_back(e);
            };

            double audit_last = 0.0;
            auto audit = [&]()
            {
                if (!options.audit_blocks)
                    return;
                const double obj = objective_now();
                res.audit.max_relative_increase =
                    std::max(res.audit.max_relative_increase, (obj - audit_last) / std::max(std::abs(audit_last), 1.0));
                res.audit.max_power_violation =
                    std::max(res.audit.max_power_violation, max_power_violation(st.F_D, problem.budget));
                res.audit.max_constraint_deviation =
                    std::max(res.audit.max_constraint_deviation, antenna_constraint_deviation(st.V, problem.channels.mode));
                ++res.audit.updates;
                audit_last = obj;
            };

            // Iteration 0: MMSE receivers for the start point, W = I.
            {
                const auto H = apply_antenna_vectors(problem.channels, st.V);
                st.U = update_U(H, st.F_D, problem.streams, problem.noise);
                st.Wt.clear();
                for (int k = 0; k < K; ++k)
                    st.Wt.push_back(CMat::Identity(problem.streams[static_cast<size_t>(k)],
                                                   problem.streams[static_cast<size_t>(k)]));
                record(0);
                audit_last = res.trace.back().objective;
            }

            const auto off = problem.offsets();
            double prev = res.trace.back().objective;
            for (int it = 1; it <= options.max_iterations; ++it)
            {
                const auto t0 = std::chrono::steady_clock::now();

                {
                    const auto H = apply_antenna_vectors(problem.channels, st.V);
                    st.U = update_U(H, st.F_D, problem.streams, problem.noise);
                    audit();
                    for (int k = 0; k < K; ++k)
                    {
                        const size_t ks = static_cast<size_t>(k);
                        st.Wt[ks] = update_W(st.U[ks], H[ks], st.F_D.middleCols(off[ks], problem.streams[ks]));
                    }
                    audit();
                }

                SweepCache cache = make_cache(problem, st);
                for (int n = 0; n < N; ++n)
                {
                    const PerAntennaTerms terms = terms_from_cache(n, problem, st, cache);
                    const Eigen::RowVectorXcd old_row = st.F_D.row(n);

                    if (model == 1)
                    {
                        const Model1Update u = model1_antenna_update(terms, problem.budget(n));
                        st.F_D.row(n) = u.f.adjoint();
                        st.V.col(n).setZero();
                        st.V(u.state, n) = 1.0;
                        st.states[static_cast<size_t>(n)] = u.state;
                    }
                    else
                    {
                        ManifoldOptions mo = options.manifold;
                        mo.seed = mix_seed(options.manifold.seed ^ options.seed, static_cast<std::uint64_t>(it),
                                           static_cast<std::uint64_t>(n));
                        const Model2Update u = model2_antenna_update(terms, st.V.col(n), problem.budget(n), rho, mo);
                        st.F_D.row(n) = u.f.adjoint();
                        st.V.col(n) = u.c;
                        if (!u.manifold_converged)
                            ++res.manifold_failures;
                    }

                    for (int k = 0; k < K; ++k)
                    {
                        const size_t ks = static_cast<size_t>(k);
                        const CVec h_new = problem.channels.H[ks].middleCols(static_cast<Eigen::Index>(n) * W, W) *
                                           st.V.col(n).cast<cplx>();
                        cache.G[ks] += h_new * st.F_D.row(n) - cache.H[ks].col(n) * old_row;
                        cache.H[ks].col(n) = h_new;
                    }
                    audit();
                }

                record(it);
                res.iteration_seconds.push_back(
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
                res.iterations = it;

                const double cur = res.trace.back().objective;
                if (options.early_stop && prev - cur <= options.tolerance * std::max(std::abs(prev), 1.0))
                {
                    res.stopped_early = true;
                    break;
                }
                prev = cur;
            }

            res.rate_digital = res.trace.back().sum_rate;
            res.rate_hybrid = res.rate_digital;
            if (options.n_rf > 0)
            {
                res.decomposition = decompose(st.F_D, options.n_rf, problem.budget, options.decomposition_iterations,
                                              mix_seed(options.seed, 0xD5, 0));
                res.decomposed = true;
                res.rate_hybrid = hybrid_rate(problem, st.V, res.decomposition.F_RF, res.decomposition.F_BB);
            }
            return res;
        }
    } // namespace

    PrecoderState initial_state(const WmmseProblem &problem, const SolverOptions &options)
    {
        problem.validate();
        const int N = problem.N(), D = problem.total_streams(), W = problem.W();
        const int nrf = options.init_rf > 0 ? options.init_rf : D;

        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> uphase(0.0, 2.0 * pi);
        std::normal_distribution<double> gauss;

        CMat F_RF(N, nrf);
        const double amp = 1.0 / std::sqrt(static_cast<double>(N));
        for (int j = 0; j < nrf; ++j)
            for (int n = 0; n < N; ++n)
                F_RF(n, j) = amp * std::polar(1.0, uphase(rng));
        CMat F_BB(nrf, D);
        for (int d = 0; d < D; ++d)
            for (int j = 0; j < nrf; ++j)
            {
                const double re = gauss(rng);
                const double im = gauss(rng);
                F_BB(j, d) = cplx(re, im) / std::sqrt(2.0);
            }

        PrecoderState st;
        st.F_D = F_RF * F_BB;
        const RVec p = antenna_powers(st.F_D);
        double scale = std::numeric_limits<double>::infinity();
        for (int n = 0; n < N; ++n)
            if (p(n) > 0.0)
                scale = std::min(scale, std::sqrt(problem.budget(n) / p(n)));
        if (std::isfinite(scale))
            st.F_D *= scale;

        st.V = RMat::Zero(W, N);
        if (problem.channels.mode == ChannelMode::cof)
        {
            const double rho = effective_rho(problem, options.rho);
            RVec x = RVec::Zero(W - 1);
            if (W > 1)
                x(0) = 1.0;
            for (int n = 0; n < N; ++n)
                st.V.col(n) = lift_coefficients(x, rho);
        }
        else
        {
            st.V.row(0).setOnes();
            st.states.assign(static_cast<size_t>(N), 0);
        }

        for (int k = 0; k < problem.K(); ++k)
        {
            const int Dk = problem.streams[static_cast<size_t>(k)];
            st.U.push_back(CMat::Zero(problem.channels.H[static_cast<size_t>(k)].rows(), Dk));
            st.Wt.push_back(CMat::Identity(Dk, Dk));
        }
        return st;
    }

    SolverResult algorithm1(const WmmseProblem &problem, const SolverOptions &options, const PrecoderState *warm_start)
    {
        return run_bcd(problem, options, 1, warm_start);
    }

    SolverResult algorithm2(const WmmseProblem &problem, const SolverOptions &options, const PrecoderState *warm_start)
    {
        return run_bcd(problem, options, 2, warm_start);
    }

    double hybrid_rate(const WmmseProblem &problem, const RMat &V, const CMat &F_RF, const CMat &F_BB)
    {
        return sum_rate(apply_antenna_vectors(problem.channels, V), F_RF * F_BB, problem.streams, problem.noise,
                        problem.beta);
    }

    void write_trace_csv(std::ostream &os, const std::vector<TraceEntry> &trace)
    {
        os << "iter,objective,sum_rate_bps_hz,max_power_violation\n" << std::setprecision(15);
        for (const auto &e : trace)
            os << e.iter << ',' << e.objective << ',' << e.sum_rate << ',' << e.max_power_violation << '\n';
    }

} // namespace trihybrid
