#include "kato/fields/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "kato/errors.hpp"

namespace kato {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

using cplx = std::complex<double>;

}  // namespace

struct SeparableSolver::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~Plans() {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

SeparableSolver::SeparableSolver(const Grid& grid, WallClosure closure, SolverOptions options)
    : grid_(grid), closure_(closure), options_(options), plans_(std::make_unique<Plans>()) {
    const int nx = grid_.nx;
    const int modes = nx / 2 + 1;
    eig_x_.resize(modes);
    for (int m = 0; m < modes; ++m) {
        const double s = std::sin(std::numbers::pi * m / nx);
        eig_x_[m] = -4.0 * s * s / (grid_.dx * grid_.dx);
    }

    std::vector<double> real(nx);
    std::vector<cplx> spec(modes);
    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->forward = fftw_plan_dft_r2c_1d(nx, real.data(), reinterpret_cast<fftw_complex*>(spec.data()), flags);
    plans_->backward = fftw_plan_dft_c2r_1d(nx, reinterpret_cast<fftw_complex*>(spec.data()), real.data(), flags);
    if (!plans_->forward || !plans_->backward) throw NumericalError("FFTW planning failed");
}

SeparableSolver::~SeparableSolver() = default;

int SeparableSolver::first_row() const { return closure_ == WallClosure::dirichlet_node ? 1 : 0; }

int SeparableSolver::row_count() const {
    return closure_ == WallClosure::dirichlet_node ? grid_.ny - 1 : grid_.ny;
}

ScalarField SeparableSolver::solve(double alpha, double beta, const ScalarField& rhs, SolveStats* stats) const {
    const int expected_rows = closure_ == WallClosure::dirichlet_node ? grid_.ny + 1 : grid_.ny;
    if (!(rhs.grid() == grid_) || rhs.rows() != expected_rows)
        throw ConfigError("SeparableSolver: right-hand side does not match the solver layout");
    if (options_.kind == SolverKind::iterative) return solve_iterative(alpha, beta, rhs, stats);
    if (stats) *stats = SolveStats{SolverKind::direct, 0, 0.0};
    return solve_direct(alpha, beta, rhs);
}

ScalarField SeparableSolver::solve_direct(double alpha, double beta, const ScalarField& rhs) const {
    const int nx = grid_.nx;
    const int modes = nx / 2 + 1;
    const int j0 = first_row();
    const int n = row_count();
    const double idy2 = 1.0 / (grid_.dy * grid_.dy);
    const bool singular = alpha == 0.0 && closure_ == WallClosure::neumann_cell;

    // spectrum[m * n + k] holds wavenumber m of unknown row k
    std::vector<cplx> spectrum(static_cast<std::size_t>(modes) * n);

#pragma omp parallel
    {
        std::vector<double> real(nx);
        std::vector<cplx> spec(modes);
#pragma omp for schedule(static)
        for (int k = 0; k < n; ++k) {
            const double* src = rhs.row(j0 + k);
            for (int i = 0; i < nx; ++i) real[i] = src[i];
            fftw_execute_dft_r2c(plans_->forward, real.data(), reinterpret_cast<fftw_complex*>(spec.data()));
            for (int m = 0; m < modes; ++m) spectrum[static_cast<std::size_t>(m) * n + k] = spec[m];
        }
    }

    if (singular) {
        // Compatibility: the zero mode must sum to zero over rows.
        cplx mean = 0.0;
        for (int k = 0; k < n; ++k) mean += spectrum[k];
        mean /= static_cast<double>(n);
        for (int k = 0; k < n; ++k) spectrum[k] -= mean;
    }

#pragma omp parallel
    {
        std::vector<double> sub(n), diag(n), sup(n);
        std::vector<cplx> work(n);
#pragma omp for schedule(static)
        for (int m = 0; m < modes; ++m) {
            cplx* b = spectrum.data() + static_cast<std::size_t>(m) * n;
            const double off = -beta * idy2;
            for (int k = 0; k < n; ++k) {
                double dyy = -2.0;
                if (k == 0 || k == n - 1) {
                    if (closure_ == WallClosure::neumann_cell) dyy = -1.0;
                    if (closure_ == WallClosure::dirichlet_cell) dyy = -3.0;
                }
                diag[k] = alpha - beta * eig_x_[m] - beta * dyy * idy2;
                sub[k] = k > 0 ? off : 0.0;
                sup[k] = k + 1 < n ? off : 0.0;
            }
            if (singular && m == 0) {
                // pin the first unknown; the dropped equation is implied by compatibility
                diag[0] = 1.0;
                sup[0] = 0.0;
                b[0] = 0.0;
            }
            // Thomas algorithm
            work[0] = sup[0] / diag[0];
            b[0] /= diag[0];
            for (int k = 1; k < n; ++k) {
                const double denom = diag[k] - sub[k] * work[k - 1].real();
                work[k] = sup[k] / denom;
                b[k] = (b[k] - sub[k] * b[k - 1]) / denom;
            }
            for (int k = n - 2; k >= 0; --k) b[k] -= work[k].real() * b[k + 1];
        }
    }

    ScalarField out(grid_, rhs.stagger());
    const double norm = 1.0 / nx;
#pragma omp parallel
    {
        std::vector<double> real(nx);
        std::vector<cplx> spec(modes);
#pragma omp for schedule(static)
        for (int k = 0; k < n; ++k) {
            for (int m = 0; m < modes; ++m) spec[m] = spectrum[static_cast<std::size_t>(m) * n + k];
            // c2r ignores the imaginary parts of the DC and Nyquist bins
            fftw_execute_dft_c2r(plans_->backward, reinterpret_cast<fftw_complex*>(spec.data()), real.data());
            double* dst = out.row(j0 + k);
            for (int i = 0; i < nx; ++i) dst[i] = real[i] * norm;
        }
    }

    if (singular) {
        double mean = 0.0;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < nx; ++i) mean += out(i, j0 + k);
        mean /= static_cast<double>(n) * nx;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < nx; ++i) out(i, j0 + k) -= mean;
    }
    return out;
}

ScalarField SeparableSolver::apply(double alpha, double beta, const ScalarField& x) const {
    const int nx = grid_.nx;
    const int j0 = first_row();
    const int n = row_count();
    const double idx2 = 1.0 / (grid_.dx * grid_.dx), idy2 = 1.0 / (grid_.dy * grid_.dy);
    ScalarField out(grid_, x.stagger());

#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        const int j = j0 + k;
        const double* c = x.row(j);
        const double* s = k > 0 ? x.row(j - 1) : nullptr;
        const double* no = k + 1 < n ? x.row(j + 1) : nullptr;
        double* o = out.row(j);
        for (int i = 0; i < nx; ++i) {
            const int l = i == 0 ? nx - 1 : i - 1;
            const int r = i == nx - 1 ? 0 : i + 1;
            const double lx = (c[r] - 2.0 * c[i] + c[l]) * idx2;
            double below = 0.0, above = 0.0;
            switch (closure_) {
                case WallClosure::neumann_cell:
                    below = s ? s[i] : c[i];
                    above = no ? no[i] : c[i];
                    break;
                case WallClosure::dirichlet_cell:
                    below = s ? s[i] : -c[i];
                    above = no ? no[i] : -c[i];
                    break;
                case WallClosure::dirichlet_node:
                    below = s ? s[i] : 0.0;
                    above = no ? no[i] : 0.0;
                    break;
            }
            const double ly = (above - 2.0 * c[i] + below) * idy2;
            o[i] = alpha * c[i] - beta * (lx + ly);
        }
    }
    return out;
}

ScalarField SeparableSolver::solve_iterative(double alpha, double beta, const ScalarField& rhs,
                                             SolveStats* stats) const {
    const int j0 = first_row();
    const int n = row_count();
    const int nx = grid_.nx;
    const bool singular = alpha == 0.0 && closure_ == WallClosure::neumann_cell;

    auto active_dot = [&](const ScalarField& a, const ScalarField& b) {
        double total = 0.0;
        for (int k = 0; k < n; ++k) {
            const double* x = a.row(j0 + k);
            const double* y = b.row(j0 + k);
            double s = 0.0;
            for (int i = 0; i < nx; ++i) s += x[i] * y[i];
            total += s;
        }
        return total;
    };
    auto remove_mean = [&](ScalarField& f) {
        double mean = 0.0;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < nx; ++i) mean += f(i, j0 + k);
        mean /= static_cast<double>(n) * nx;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < nx; ++i) f(i, j0 + k) -= mean;
    };

    ScalarField b(grid_, rhs.stagger());
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < nx; ++i) b(i, j0 + k) = rhs(i, j0 + k);
    if (singular) remove_mean(b);

    ScalarField x(grid_, rhs.stagger());
    ScalarField r = b;
    ScalarField p = r;
    const double bnorm = std::sqrt(active_dot(b, b));
    double rr = active_dot(r, r);
    const double target = options_.tolerance * (bnorm > 0.0 ? bnorm : 1.0);

    // The operator is alpha I - beta L, which is positive (semi)definite for beta > 0.
    const double sign = beta < 0.0 ? -1.0 : 1.0;
    int it = 0;
    while (std::sqrt(rr) > target && it < options_.max_iterations) {
        ScalarField ap = apply(alpha * sign, beta * sign, p);
        const double pap = active_dot(p, ap);
        if (!(pap > 0.0)) break;
        const double step = rr / pap;
        x.axpy(step, p);
        r.axpy(-step, ap);
        if (singular) remove_mean(r);
        const double rr_new = active_dot(r, r);
        const double ratio = rr_new / rr;
        rr = rr_new;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < nx; ++i) p(i, j0 + k) = r(i, j0 + k) + ratio * p(i, j0 + k);
        ++it;
    }
    const double res = std::sqrt(rr) / (bnorm > 0.0 ? bnorm : 1.0);
    if (stats) *stats = SolveStats{SolverKind::iterative, it, res};
    if (std::sqrt(rr) > target)
        throw NumericalError("conjugate gradients did not converge after " + std::to_string(it) +
                                 " iterations (relative residual " + std::to_string(res) + ")",
                             it, res);
    if (sign < 0.0) x *= -1.0;
    if (singular) remove_mean(x);
    return x;
}

}  // namespace kato
