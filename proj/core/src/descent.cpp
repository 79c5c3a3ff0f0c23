#include "framecomp/descent.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <thread>

#include "framecomp/errors.hpp"

namespace framecomp {

namespace {

using Complex = std::complex<double>;

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;
constexpr double kKickScale = 1e-4;
constexpr int kMaxReinits = 4;
constexpr double kMachineEps = 2.220446049250313e-16;

void require_descent_phi(const ConvexFn& phi) {
    if (!phi.strictly_convex())
        throw PreconditionError("descent requires a strictly convex potential");
    if (!phi.differentiable())
        throw PreconditionError("descent requires a differentiable potential");
}

/// phi'(A) through the functional calculus; well defined across
/// eigenvalue crossings. Tiny negative eigenvalues of PSD inputs are
/// clamped to zero before phi' is applied.
Eigen::MatrixXcd derivative_calculus(const HermitianMatrix& A, const ConvexFn& phi) {
    const Eigendecomposition& e = A.eig();
    const double clamp = 1e-10 * std::max(1.0, A.frobenius_norm());
    Eigen::VectorXd fd(e.values.size());
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
        double x = e.values(i);
        if (x < 0.0 && x >= -clamp) x = 0.0;
        if (phi.kind() == ConvexFn::Kind::Mse && x <= 1e-12)
            throw DomainError("spectrum left the differentiable domain of mse");
        if (!phi.in_domain(x))
            throw DomainError("spectrum left the domain of " + phi.name());
        fd(i) = phi.derivative(x);
    }
    return e.vectors * fd.asDiagonal() * e.vectors.adjoint();
}

Eigen::MatrixXcd sphere_retract(const Eigen::MatrixXcd& W, const Spectrum& a) {
    Eigen::MatrixXcd out = W;
    for (Eigen::Index j = 0; j < out.cols(); ++j)
        out.col(j) *= std::sqrt(a[static_cast<std::size_t>(j)]) / out.col(j).norm();
    return out;
}

/// exp of a (skew-Hermitian) step: 10-term series with a norm guard
/// (scaling and squaring when the step is large).
Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& A) {
    const double n = A.norm();
    int squarings = 0;
    Eigen::MatrixXcd B = A;
    if (n > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(n / 0.5)));
        B /= std::pow(2.0, squarings);
    }
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Identity(A.rows(), A.cols());
    Eigen::MatrixXcd term = E;
    for (int j = 1; j <= 10; ++j) {
        term = term * B / static_cast<double>(j);
        E += term;
    }
    for (int i = 0; i < squarings; ++i) E = E * E;
    return E;
}

Eigen::MatrixXcd reunitarize(const Eigen::MatrixXcd& U) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(U);
    Eigen::MatrixXcd Q = qr.householderQ();
    const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < U.cols(); ++j) {
        const Complex rjj = R(j, j);
        if (std::abs(rjj) > 0.0) Q.col(j) *= rjj / std::abs(rjj);
    }
    return Q;
}

struct RestartOutput {
    RestartResult result;
    Eigen::MatrixXcd final_state;
    std::vector<TrajectoryPoint> trajectory;
};

template <typename Worker>
std::vector<RestartOutput> run_restarts(int restarts, Worker worker) {
    std::vector<RestartOutput> results(static_cast<std::size_t>(restarts));
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        std::min<unsigned>(hw, static_cast<unsigned>(std::max(restarts, 1)));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1))
                results[static_cast<std::size_t>(r)] = worker(r);
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

DescentReport merge_reports(std::vector<RestartOutput> outputs, double global,
                            bool record_trajectory) {
    DescentReport report;
    report.global_value = global;
    report.final_value = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < outputs.size(); ++r) {
        report.restarts.push_back(outputs[r].result);
        if (outputs[r].result.final_value < report.final_value) {
            report.final_value = outputs[r].result.final_value;
            report.iters = outputs[r].result.iters;
            report.converged = outputs[r].result.converged;
            report.best_state = outputs[r].final_state;
        }
        if (record_trajectory)
            report.trajectory.insert(report.trajectory.end(),
                                     outputs[r].trajectory.begin(),
                                     outputs[r].trajectory.end());
    }
    report.gap = report.final_value - report.global_value;
    return report;
}

/// Point operations for one descent geometry, so the sphere-product and
/// unitary-orbit loops share a single control flow.
struct LoopOps {
    std::function<double(const Eigen::MatrixXcd&)> value; // may throw DomainError
    std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)> gradient;
    std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&, const Eigen::MatrixXcd&,
                                   double)>
        step; // retracted move along -eta * grad
    std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&, std::mt19937_64&)> kick;
    std::function<Eigen::MatrixXcd(std::uint64_t)> draw;
};

/// Backtracking descent with Barzilai-Borwein trial steps. Convergence
/// is declared at a gradient below grad_tol * max(1, |value|) (the
/// attainable floor scales with the objective) or at a floating-point
/// stall next to it; a saddle kick then re-tests the point. Runs whose
/// iteration slice expires without convergence are re-drawn, so a
/// restart spends its budget on fresh starts instead of degenerate
/// crawls.
RestartOutput descend_one(const DescentConfig& cfg, int restart_index,
                          const LoopOps& ops, bool record_trajectory) {
    RestartOutput out;
    const std::uint64_t sub_seed =
        cfg.seed + static_cast<std::uint64_t>(restart_index);
    std::mt19937_64 kick_rng(sub_seed ^ 0x9e3779b97f4a7c15ULL);

    Eigen::MatrixXcd x = ops.draw(sub_seed);
    double value;
    for (std::uint64_t tries = 0;; ++tries) {
        try {
            value = ops.value(x);
            break;
        } catch (const DomainError&) {
            if (tries > 32) throw;
            x = ops.draw(sub_seed + (tries + 1) * 104729);
        }
    }

    const int slice = std::max(200, cfg.max_iters / (kMaxReinits + 1));
    // Best point seen across re-draws; what the restart reports.
    Eigen::MatrixXcd best_x = x;
    double best_value = value;
    bool best_converged = false;
    double step = cfg.step_init;
    int kicks_left = cfg.saddle_kicks;
    int reinits_left = kMaxReinits;
    int stall = 0;
    int slice_start = 0;
    bool have_prev = false;
    double eta_prev = 0.0;
    Eigen::MatrixXcd g_prev;

    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        const Eigen::MatrixXcd grad = ops.gradient(x);
        const double gn2 = grad.squaredNorm();
        const double gn = std::sqrt(gn2);
        if (record_trajectory)
            out.trajectory.push_back({restart_index, iter, value});

        const double vscale = std::max(1.0, std::abs(value));
        const bool grad_done = gn <= cfg.grad_tol * vscale;
        const bool stalled = stall >= 5;
        if (grad_done || (stalled && gn <= 1e3 * cfg.grad_tol * vscale)) {
            if (kicks_left > 0) {
                // Certify a minimum rather than a saddle: bump the point
                // and require the descent to come back.
                if (value < best_value) {
                    best_value = value;
                    best_x = x;
                }
                --kicks_left;
                x = ops.kick(x, kick_rng);
                value = ops.value(x);
                step = cfg.step_init;
                stall = 0;
                have_prev = false;
                continue;
            }
            best_converged = true;
            if (value < best_value) {
                best_value = value;
                best_x = x;
            }
            break;
        }
        const bool slice_up = iter - slice_start >= slice;
        if (slice_up) {
            // A draw within striking distance of the gradient test
            // keeps its budget; anything else is replaced.
            const bool nearly_certified = gn <= 1e4 * cfg.grad_tol * vscale;
            if (nearly_certified) slice_start = iter;
        }
        if (stalled || (slice_up && iter - slice_start >= slice)) {
            if (reinits_left > 0) {
                // Slice exhausted or stuck off the floor: spend the rest
                // of the budget on a fresh deterministic draw.
                if (value < best_value) {
                    best_value = value;
                    best_x = x;
                }
                --reinits_left;
                x = ops.draw(sub_seed + 7919 * static_cast<std::uint64_t>(
                                            kMaxReinits - reinits_left));
                value = ops.value(x);
                step = cfg.step_init;
                stall = 0;
                slice_start = iter;
                have_prev = false;
                kicks_left = cfg.saddle_kicks;
                continue;
            }
            if (stalled) break; // stuck far from critical: give up honestly
        }

        // Barzilai-Borwein trial step from the last taken step
        // -eta_prev * g_prev (valid in both the ambient sphere-product
        // space and the skew-Hermitian orbit algebra), safeguarded by
        // the monotone backtracking below.
        double eta = step;
        if (have_prev) {
            const Eigen::MatrixXcd y = grad - g_prev;
            const double sy = -eta_prev * (g_prev.adjoint() * y).trace().real();
            const double yy = y.squaredNorm();
            const double ss = eta_prev * eta_prev * g_prev.squaredNorm();
            if (sy > 0.0 && yy > 0.0) {
                // Alternate the long and short spectral steps; the long
                // one moves much faster through narrow valleys.
                const double trial = (iter % 2 == 0) ? ss / sy : sy / yy;
                eta = std::clamp(trial, 1e-12, 1e6);
            }
        }
        g_prev = grad;

        bool accepted = false;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            Eigen::MatrixXcd cand = ops.step(x, grad, eta);
            double cand_value;
            try {
                cand_value = ops.value(cand);
            } catch (const DomainError&) {
                eta *= cfg.step_shrink;
                continue;
            }
            if (cand_value <= value - kArmijo * eta * gn2) {
                stall = (value - cand_value <= 8.0 * kMachineEps * vscale)
                            ? stall + 1
                            : 0;
                x = std::move(cand);
                value = cand_value;
                accepted = true;
                break;
            }
            eta *= cfg.step_shrink;
        }
        if (!accepted) {
            ++stall;
            have_prev = false;
            continue;
        }
        step = eta;
        eta_prev = eta;
        have_prev = true;
    }

    if (value < best_value) {
        best_value = value;
        best_x = std::move(x);
    }
    out.result.converged = best_converged;
    out.result.final_value = best_value;
    out.result.iters = iter;
    out.final_state = std::move(best_x);
    return out;
}

} // namespace

Eigen::MatrixXcd riemannian_grad(const HermitianMatrix& S0, const FrameSeq& G,
                                 const ConvexFn& phi) {
    if (S0.dim() != G.dim())
        throw LengthMismatchError("dimension mismatch between S0 and G");
    const HermitianMatrix S(S0.matrix() + frame_operator(G).matrix());
    const Eigen::MatrixXcd dphi = derivative_calculus(S, phi);
    Eigen::MatrixXcd grad = 2.0 * dphi * G.synthesis();
    for (Eigen::Index j = 0; j < grad.cols(); ++j) {
        const Eigen::VectorXcd g = G.synthesis().col(j);
        const double radial = grad.col(j).dot(g).real() / g.squaredNorm();
        grad.col(j) -= radial * g;
    }
    return grad;
}

DescentReport descend_Ta(const HermitianMatrix& S0, const Spectrum& a_desc,
                         const ConvexFn& phi, const DescentConfig& cfg,
                         bool record_trajectory) {
    require_descent_phi(phi);
    const Eigen::Index d = S0.dim();
    const OptimalSpectrum opt = optimal_spectrum(S0.eigenvalues_asc(), a_desc);
    const double global = trace_phi(sort_desc(opt.nu_op), phi);

    LoopOps ops;
    ops.value = [&S0, &phi](const Eigen::MatrixXcd& W) {
        return potential(S0, FrameSeq(W), phi);
    };
    ops.gradient = [&S0, &phi](const Eigen::MatrixXcd& W) {
        return riemannian_grad(S0, FrameSeq(W), phi);
    };
    ops.step = [&a_desc](const Eigen::MatrixXcd& W, const Eigen::MatrixXcd& grad,
                         double eta) {
        return sphere_retract(W - eta * grad, a_desc);
    };
    ops.kick = [&a_desc, d](const Eigen::MatrixXcd& W, std::mt19937_64& rng) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXcd noise(d, W.cols());
        for (Eigen::Index j = 0; j < noise.cols(); ++j)
            for (Eigen::Index i = 0; i < d; ++i)
                noise(i, j) = Complex(gauss(rng), gauss(rng));
        return sphere_retract(W + kKickScale * noise, a_desc);
    };
    ops.draw = [&a_desc, d](std::uint64_t seed) {
        return random_completion(d, a_desc, seed).synthesis();
    };

    auto worker = [&](int r) {
        RestartOutput out = descend_one(cfg, r, ops, record_trajectory);
        out.result.gap = out.result.final_value - global;
        return out;
    };
    return merge_reports(run_restarts(cfg.restarts, worker), global,
                         record_trajectory);
}

DescentReport descend_orbit(const HermitianMatrix& S, const Spectrum& mu_desc,
                            const ConvexFn& phi, const DescentConfig& cfg,
                            bool record_trajectory) {
    require_descent_phi(phi);
    if (static_cast<std::size_t>(S.dim()) != mu_desc.size())
        throw LengthMismatchError("mu length must match dim(S)");
    if (mu_desc.order() != Order::Descending)
        throw PreconditionError("mu must be tagged descending");
    const Eigen::Index d = S.dim();

    const Spectrum lam_asc = S.eigenvalues_asc();
    double global = 0.0;
    for (std::size_t i = 0; i < mu_desc.size(); ++i)
        global += phi(lam_asc[i] + mu_desc[i]);

    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        D(i, i) = mu_desc[static_cast<std::size_t>(i)];

    LoopOps ops; // the state is the unitary U with G = U D U^*
    ops.value = [&S, &phi, D](const Eigen::MatrixXcd& U) {
        return trace_phi(HermitianMatrix(S.matrix() + U * D * U.adjoint()), phi);
    };
    ops.gradient = [&S, &phi, D](const Eigen::MatrixXcd& U) {
        const Eigen::MatrixXcd G = U * D * U.adjoint();
        const HermitianMatrix M(S.matrix() + G);
        const Eigen::MatrixXcd P = derivative_calculus(M, phi);
        return Eigen::MatrixXcd(P * G - G * P); // skew-Hermitian
    };
    ops.step = [](const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& grad,
                  double eta) {
        // Re-unitarize after the truncated exponential: cheap at these
        // sizes and stops drift from accumulating over many steps.
        return reunitarize(expm_series(-eta * grad) * U);
    };
    ops.kick = [d](const Eigen::MatrixXcd& U, std::mt19937_64& rng) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXcd N(d, d);
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index i = 0; i < d; ++i)
                N(i, j) = Complex(gauss(rng), gauss(rng));
        const Eigen::MatrixXcd K = (N - N.adjoint()) / 2.0;
        return Eigen::MatrixXcd(expm_series(kKickScale * K) * U);
    };
    ops.draw = [d](std::uint64_t seed) { return random_unitary(d, seed); };

    auto worker = [&](int r) {
        RestartOutput out = descend_one(cfg, r, ops, record_trajectory);
        out.result.gap = out.result.final_value - global;
        return out;
    };
    return merge_reports(run_restarts(cfg.restarts, worker), global,
                         record_trajectory);
}

} // namespace framecomp
