#include "delaybeam/resolvent.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace delaybeam {

namespace {

// z - sinh z, stable near zero.
double z_minus_sinh(double z) {
    if (std::abs(z) < 0.25) {
        const double z2 = z * z;
        // -(z^3/3! + z^5/5! + z^7/7! + z^9/9!)
        return -z * z2 *
               (1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 * (1.0 / 5040.0 + z2 / 362880.0)));
    }
    return z - std::sinh(z);
}

// 1 - cosh z, stable near zero.
double one_minus_cosh(double z) {
    if (std::abs(z) < 0.25) {
        const double z2 = z * z;
        return -z2 * (0.5 + z2 * (1.0 / 24.0 + z2 * (1.0 / 720.0 + z2 / 40320.0)));
    }
    return 1.0 - std::cosh(z);
}

// 3-point Gauss-Legendre on [-1, 1].
constexpr double kGlNode = 0.7745966692414834;  // sqrt(3/5)
constexpr double kGlW0 = 8.0 / 9.0;
constexpr double kGlW1 = 5.0 / 9.0;

}  // namespace

StaticData StaticData::zero(const SpaceGrid& grid, int n_s) {
    StaticData d;
    d.f = VectorXd::Zero(grid.n_cells() + 1);
    d.g = VectorXd::Zero(grid.n_cells() + 1);
    d.h = MatrixXd::Zero(grid.n_cells() + 1, n_s + 1);
    return d;
}

StaticData StaticData::smooth(const SpaceGrid& grid, int n_s) {
    StaticData d = zero(grid, n_s);
    const int n = grid.n_cells();
    for (int j = 0; j <= n; ++j) {
        const double x = grid.nodes()[j];
        d.f[j] = x * x * std::exp(-x);
        d.g[j] = 1.0 + std::sin(3.0 * x);
        for (int k = 0; k <= n_s; ++k) {
            const double s = static_cast<double>(k) / n_s;
            d.h(j, k) = (1.0 + x) * s * (1.0 - s);
        }
    }
    return d;
}

StaticData StaticData::random_smooth(const SpaceGrid& grid, unsigned seed, int n_s) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double b0 = u(rng), b1 = u(rng), b2 = u(rng);
    const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng);
    const double d0 = u(rng), d1 = u(rng), d2 = u(rng), d3 = u(rng);

    StaticData d = zero(grid, n_s);
    const int n = grid.n_cells();
    const double l = grid.length();
    for (int j = 0; j <= n; ++j) {
        const double x = grid.nodes()[j];
        d.f[j] = x * x * (b0 + b1 * x + b2 * std::sin(M_PI * x / l));
        d.g[j] = c0 + c1 * x + c2 * std::sin(2.0 * M_PI * x / l) +
                 c3 * std::cos(M_PI * x / l);
        for (int k = 0; k <= n_s; ++k) {
            const double s = static_cast<double>(k) / n_s;
            d.h(j, k) = (d0 + d1 * x) * (1.0 + d2 * s + d3 * s * s);
        }
    }
    return d;
}

VectorXd source_psi(const StaticData& d, const BeamParameters& p) {
    const auto rows = d.f.size();
    if (d.g.size() != rows || d.h.rows() != rows)
        throw std::invalid_argument("source_psi: field dimensions disagree");
    const int ms = static_cast<int>(d.h.cols()) - 1;
    if (ms < 1) throw std::invalid_argument("source_psi: h needs at least 2 s-samples");

    VectorXd h_int(rows);
    const double ds = 1.0 / ms;
    for (Eigen::Index j = 0; j < rows; ++j) {
        double acc = 0.5 * (d.h(j, 0) + d.h(j, ms));
        for (int k = 1; k < ms; ++k) acc += d.h(j, k);
        h_int[j] = acc * ds;
    }
    return d.g + p.alpha * (d.f - p.delay * h_int);
}

double wronskian(double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("wronskian: rho must be positive");
    return -2.0 * std::pow(rho, 5);
}

Eigen::Matrix4d fundamental_matrix(double x, double rho) {
    const double ep = std::exp(rho * x);
    const double em = std::exp(-rho * x);
    Eigen::Matrix4d w;
    w << 1.0, x, ep, em,                                              //
        0.0, 1.0, rho * ep, -rho * em,                                //
        0.0, 0.0, rho * rho * ep, rho * rho * em,                     //
        0.0, 0.0, rho * rho * rho * ep, -rho * rho * rho * em;
    return w;
}

Eigen::Vector4d cramer_derivatives(double x, double rho, double psi) {
    const double r2 = rho * rho;
    const double r3 = r2 * rho;
    Eigen::Vector4d c;
    c << -x * psi / r2, psi / r2, -std::exp(-rho * x) * psi / (2.0 * r3),
        std::exp(rho * x) * psi / (2.0 * r3);
    return c;
}

ParticularSolution::ParticularSolution(const VectorXd& psi, double rho,
                                       const SpaceGrid& g)
    : psi_(psi), rho_(rho), dx_(g.dx()), ell_(g.length()), n_(g.n_cells()) {
    if (!(rho > 0.0))
        throw std::invalid_argument("particular_solution: rho must be positive");
    if (psi.size() != n_ + 1)
        throw std::invalid_argument("particular_solution: psi does not match the grid");
}

std::array<double, 4> ParticularSolution::evaluate(double x) const {
    if (x < -1e-12 * ell_ || x > ell_ * (1.0 + 1e-12))
        throw std::invalid_argument("particular_solution: x outside [0, length]");
    x = std::min(std::max(x, 0.0), ell_);

    const double r2 = rho_ * rho_;
    const double r3 = r2 * rho_;
    std::array<double, 4> acc{0.0, 0.0, 0.0, 0.0};

    // Cubic Lagrange value of psi at point t inside cell i.
    auto psi_at = [&](int i, double t) {
        int base = std::clamp(i - 1, 0, n_ - 3);
        if (n_ < 3) base = 0;  // degenerate tiny grids fall back to low order
        const int pts = std::min(4, n_ + 1);
        double val = 0.0;
        for (int a = 0; a < pts; ++a) {
            const double xa = (base + a) * dx_;
            double lag = 1.0;
            for (int b = 0; b < pts; ++b) {
                if (b == a) continue;
                const double xb = (base + b) * dx_;
                lag *= (t - xb) / (xa - xb);
            }
            val += lag * psi_[base + a];
        }
        return val;
    };

    auto add_segment = [&](int cell, double lo, double hi) {
        const double half = 0.5 * (hi - lo);
        if (half <= 0.0) return;
        const double mid = 0.5 * (hi + lo);
        const double nodes[3] = {mid, mid - half * kGlNode, mid + half * kGlNode};
        const double wts[3] = {kGlW0 * half, kGlW1 * half, kGlW1 * half};
        for (int q = 0; q < 3; ++q) {
            const double t = nodes[q];
            const double p = psi_at(cell, t);
            const double z = rho_ * (x - t);
            // kernels of y_P and its derivatives
            const double k0 = z_minus_sinh(z) / r3;  // (x-t)/r2 - sinh(z)/r3
            const double k1 = one_minus_cosh(z) / r2;
            const double k2 = -std::sinh(z) / rho_;
            const double k3 = -std::cosh(z);
            acc[0] += wts[q] * k0 * p;
            acc[1] += wts[q] * k1 * p;
            acc[2] += wts[q] * k2 * p;
            acc[3] += wts[q] * k3 * p;
        }
    };

    const int full = std::min(static_cast<int>(std::floor(x / dx_)), n_);
    for (int i = 0; i < full; ++i) add_segment(i, i * dx_, (i + 1) * dx_);
    if (full < n_) add_segment(full, full * dx_, x);
    return acc;
}

std::array<double, 4> ClosedFormSolution::evaluate(double x) const {
    const auto p = part_.evaluate(x);
    const double c = std::cosh(rho_ * x);
    const double s = std::sinh(rho_ * x);
    const double r2 = rho_ * rho_;
    std::array<double, 4> out;
    out[0] = a_[0] + a_[1] * x + a_[2] * c + a_[3] * s + p[0];
    out[1] = a_[1] + rho_ * (a_[2] * s + a_[3] * c) + p[1];
    out[2] = r2 * (a_[2] * c + a_[3] * s) + p[2];
    out[3] = r2 * rho_ * (a_[2] * s + a_[3] * c) + p[3];
    return out;
}

ClosedFormSolution solve_coefficients(const VectorXd& psi, const BeamParameters& p,
                                      const StaticData& d, const SpaceGrid& g) {
    if (!(p.tension > 0.0))
        throw std::invalid_argument("solve_coefficients: requires positive tension");
    if (d.f.size() != g.n_cells() + 1)
        throw std::invalid_argument("solve_coefficients: data do not match the grid");

    ClosedFormSolution sol;
    sol.rho_ = std::sqrt(p.tension);
    sol.psi_ = psi;
    sol.part_ = ParticularSolution(psi, sol.rho_, g);

    const double rho = sol.rho_;
    const double l = g.length();
    const double ch = std::cosh(rho * l);
    const double sh = std::sinh(rho * l);
    const double pi_rho = rho * rho * rho - p.tension * rho;  // 0 when rho^2 = T

    const auto yp = sol.part_.evaluate(l);
    const double phi1 = -yp[2] / (rho * rho);
    const double phi2 = p.gain * d.f[g.n_cells()] - (yp[3] - p.tension * yp[1]);

    // Unknowns (a1, a2, a3, a4) of y_H = a1 + a2 x + a3 cosh + a4 sinh.
    Eigen::Matrix4d A;
    A << 1.0, 0.0, 1.0, 0.0,          // y(0) = 0
        0.0, 1.0, 0.0, rho,           // y'(0) = 0
        0.0, 0.0, ch, sh,             // y''(l) = 0
        0.0, -p.tension, pi_rho * sh, pi_rho * ch;  // y'''(l) - T y'(l) = kappa f(l)
    Eigen::Vector4d b(0.0, 0.0, phi1, phi2);

    Eigen::PartialPivLU<Eigen::Matrix4d> lu(A);
    sol.boundary_det_ = lu.determinant();
    double scale = 1.0;
    for (int r = 0; r < 4; ++r) scale *= std::max(A.row(r).cwiseAbs().maxCoeff(), 1e-30);
    if (std::abs(sol.boundary_det_) <= 1e-12 * scale) {
        std::ostringstream msg;
        msg << "solve_coefficients: boundary system numerically singular, det = "
            << sol.boundary_det_;
        throw std::runtime_error(msg.str());
    }
    Eigen::Vector4d a = lu.solve(b);
    sol.a_ = {a[0], a[1], a[2], a[3]};
    // exponential basis: c3 e^{rho x} + c4 e^{-rho x} = a3 cosh + a4 sinh
    sol.c_ = {a[0], a[1], 0.5 * (a[2] + a[3]), 0.5 * (a[2] - a[3])};
    return sol;
}

VectorXd bvp_oracle(const VectorXd& psi, const BeamParameters& p,
                    const SpaceGrid& g, double f_tip) {
    const int n = g.n_cells();
    if (psi.size() != n + 1)
        throw std::invalid_argument("bvp_oracle: psi does not match the grid");
    SpatialOperator op(p, g);

    // Weak form: K y = -(M .* psi) - kappa f(l) e_N, clamped node eliminated.
    VectorXd rhs = -op.mass().cwiseProduct(psi);
    rhs[n] -= p.gain * f_tip;

    const MatrixXd k_r = op.stiffness().block(1, 1, n, n);
    Eigen::LLT<MatrixXd> llt(k_r);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("bvp_oracle: singular discrete system");
    VectorXd y = VectorXd::Zero(n + 1);
    y.tail(n) = llt.solve(rhs.tail(n));
    return y;
}

}  // namespace delaybeam
