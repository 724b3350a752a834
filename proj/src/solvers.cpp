#include "lstmcs/solvers.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "lstmcs/errors.hpp"
#include "lstmcs/linalg.hpp"

namespace lstmcs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_solver_inputs(const Matrix& a, std::size_t y_rows, const SolverConfig& cfg) {
    if (a.rows() == 0 || a.cols() == 0) throw ShapeError("solver: empty measurement matrix");
    if (y_rows != a.rows())
        throw ShapeError("solver: measurements of length " + std::to_string(y_rows) + " vs matrix " +
                         a.shape_str());
    if (cfg.k_max == 0 || cfg.k_max > a.rows())
        throw ConfigError("k_max must be in [1, m]; got " + std::to_string(cfg.k_max) + " with m=" +
                          std::to_string(a.rows()));
    if (cfg.k_max > a.cols())
        throw ConfigError("k_max=" + std::to_string(cfg.k_max) + " exceeds the number of atoms " +
                          std::to_string(a.cols()));
    if (cfg.res_min < 0.0) throw ConfigError("res_min must be >= 0");
}

// refits the channel on its support and writes the estimate and fresh residual
void refit_channel(const Matrix& a, const Vector& y, const std::vector<std::size_t>& support,
                   Matrix& shat, Matrix& residual, std::size_t j) {
    const Matrix sub = select_columns(a, support);
    const Vector coef = least_squares_solve(sub, y);
    for (std::size_t i = 0; i < shat.rows(); ++i) shat(i, j) = 0.0;
    for (std::size_t t = 0; t < support.size(); ++t) shat(support[t], j) = coef[t];
    const Vector fit = matvec(sub, coef);
    for (std::size_t i = 0; i < residual.rows(); ++i) residual(i, j) = y[i] - fit[i];
}

std::size_t masked_argmax(const Vector& score, const std::vector<bool>& used) {
    std::size_t best = score.size();
    for (std::size_t i = 0; i < score.size(); ++i) {
        if (used[i]) continue;
        if (best == score.size() || score[i] > score[best]) best = i;
    }
    if (best == score.size()) throw Error("no unused atom left to select");
    return best;
}

}  // namespace

SolverResult lstm_cs_solve(const Matrix& a, const Matrix& y, const LstmParams& model,
                           const SolverConfig& cfg) {
    const auto t0 = Clock::now();
    check_solver_inputs(a, y.rows(), cfg);
    if (model.dims.m != a.rows() || model.dims.n != a.cols())
        throw ConfigError("model dims " + std::to_string(model.dims.m) + "x" + std::to_string(model.dims.n) +
                          " do not match measurement matrix " + a.shape_str());
    const std::size_t n = a.cols(), l = y.cols();

    SolverResult out;
    out.shat = Matrix(n, l);
    out.supports.assign(l, {});
    Matrix residual = y;

    std::vector<std::size_t> shared;
    std::vector<bool> shared_used(n, false);
    std::vector<std::vector<bool>> used(l, std::vector<bool>(n, false));

    while (out.iterations < cfg.k_max && residual.frobenius_norm() > cfg.res_min) {
        // in shared mode the budget counts the union support
        if (cfg.shared_support && shared.size() >= cfg.k_max) break;
        auto state = zero_state(model.dims.ncell);
        for (std::size_t j = 0; j < l; ++j) {
            Vector x = residual.col(j);
            const double scale = max_abs(x);
            if (scale > 0.0)
                for (double& t : x) t /= scale;
            const StepCache cache = forward_step(model, x, state);

            auto& mask = cfg.shared_support ? shared_used : used[j];
            if (cfg.shared_support && shared.size() >= cfg.k_max) continue;
            const std::size_t pick = masked_argmax(cache.p, mask);
            mask[pick] = true;
            if (cfg.shared_support)
                shared.push_back(pick);
            else
                out.supports[j].push_back(pick);
            const auto& support = cfg.shared_support ? shared : out.supports[j];
            refit_channel(a, y.col(j), support, out.shat, residual, j);
        }
        ++out.iterations;
        out.residual_norms.push_back(residual.frobenius_norm());
    }
    if (cfg.shared_support) {
        // channels picked early in a sweep were fit on a smaller union; refit
        // everyone on the final support so estimate and supports agree
        if (!shared.empty()) {
            for (std::size_t j = 0; j < l; ++j) refit_channel(a, y.col(j), shared, out.shat, residual, j);
            if (!out.residual_norms.empty()) out.residual_norms.back() = residual.frobenius_norm();
        }
        out.supports.assign(l, shared);
    }
    out.wall_seconds = seconds_since(t0);
    return out;
}

SolverResult omp_solve(const Matrix& a, const Vector& y, const SolverConfig& cfg) {
    const auto t0 = Clock::now();
    check_solver_inputs(a, y.size(), cfg);
    const std::size_t n = a.cols();

    SolverResult out;
    out.shat = Matrix(n, 1);
    out.supports.assign(1, {});
    Matrix residual(a.rows(), 1);
    residual.set_col(0, y);
    std::vector<bool> used(n, false);

    while (out.iterations < cfg.k_max && residual.frobenius_norm() > cfg.res_min) {
        Vector corr = matvec_t(a, residual.col(0));
        for (double& c : corr) c = std::abs(c);
        const std::size_t pick = masked_argmax(corr, used);
        used[pick] = true;
        out.supports[0].push_back(pick);
        refit_channel(a, y, out.supports[0], out.shat, residual, 0);
        ++out.iterations;
        out.residual_norms.push_back(residual.frobenius_norm());
    }
    out.wall_seconds = seconds_since(t0);
    return out;
}

SolverResult omp_solve_mmv(const Matrix& a, const Matrix& y, const SolverConfig& cfg) {
    const auto t0 = Clock::now();
    SolverResult out;
    out.shat = Matrix(a.cols(), y.cols());
    out.supports.assign(y.cols(), {});
    for (std::size_t j = 0; j < y.cols(); ++j) {
        SolverResult one = omp_solve(a, y.col(j), cfg);
        out.shat.set_col(j, one.shat.col(0));
        out.supports[j] = one.supports[0];
        out.iterations = std::max(out.iterations, one.iterations);
    }
    Matrix residual = y;
    const Matrix fit = matmul(a, out.shat);
    for (std::size_t i = 0; i < residual.size(); ++i) residual.data()[i] -= fit.data()[i];
    out.residual_norms.push_back(residual.frobenius_norm());
    out.wall_seconds = seconds_since(t0);
    return out;
}

SolverResult somp_solve(const Matrix& a, const Matrix& y, const SolverConfig& cfg) {
    const auto t0 = Clock::now();
    check_solver_inputs(a, y.rows(), cfg);
    const std::size_t n = a.cols(), l = y.cols();

    SolverResult out;
    out.shat = Matrix(n, l);
    out.supports.assign(l, {});
    Matrix residual = y;
    std::vector<std::size_t> shared;
    std::vector<bool> used(n, false);

    while (out.iterations < cfg.k_max && residual.frobenius_norm() > cfg.res_min) {
        Vector score(n, 0.0);
        for (std::size_t j = 0; j < l; ++j) {
            const Vector corr = matvec_t(a, residual.col(j));
            for (std::size_t i = 0; i < n; ++i) score[i] += std::abs(corr[i]);
        }
        const std::size_t pick = masked_argmax(score, used);
        used[pick] = true;
        shared.push_back(pick);
        for (std::size_t j = 0; j < l; ++j) refit_channel(a, y.col(j), shared, out.shat, residual, j);
        ++out.iterations;
        out.residual_norms.push_back(residual.frobenius_norm());
    }
    out.supports.assign(l, shared);
    out.wall_seconds = seconds_since(t0);
    return out;
}

OracleResult exhaustive_oracle(const Matrix& a, const Vector& y, std::size_t k) {
    if (y.size() != a.rows())
        throw ShapeError("oracle: measurements of length " + std::to_string(y.size()) + " vs matrix " +
                         a.shape_str());
    const std::size_t n = a.cols();
    if (k > a.rows() || k > n)
        throw ConfigError("oracle sparsity k=" + std::to_string(k) + " infeasible for " + a.shape_str());

    double subsets = 1.0;
    for (std::size_t i = 0; i < k; ++i) subsets = subsets * static_cast<double>(n - i) / (i + 1);
    if (subsets > 1e6)
        throw ConfigError("oracle would enumerate " + std::to_string(static_cast<long long>(subsets)) +
                          " subsets, above the 1e6 guard");

    OracleResult best;
    best.residual_norm = norm2(y);
    if (k == 0) return best;

    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    bool done = false;
    bool found = false;
    while (!done) {
        bool usable = true;
        Vector coef;
        try {
            coef = least_squares_solve(select_columns(a, comb), y);
        } catch (const SingularError&) {
            usable = false;
        }
        if (usable) {
            Vector r = y;
            axpy(-1.0, matvec(select_columns(a, comb), coef), r);
            const double rn = norm2(r);
            // strict improvement keeps the lexicographically first subset on ties
            if (!found || rn < best.residual_norm) {
                found = true;
                best.support = comb;
                best.coeffs = coef;
                best.residual_norm = rn;
            }
        }
        // next combination in lexicographic order
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (comb[i] != i + n - k) {
                ++comb[i];
                for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
                break;
            }
            if (i == 0) done = true;
        }
    }
    if (!found) throw Error("every " + std::to_string(k) + "-subset was rank-deficient");
    return best;
}

}  // namespace lstmcs
