#pragma once

#include <array>

#include "delaybeam/discretization.hpp"
#include "delaybeam/model.hpp"

namespace delaybeam {

/// Right-hand-side data (f, g, h) of the static equation, sampled on the
/// space grid; h additionally on an s-grid over (0, 1).
struct StaticData {
    VectorXd f;
    VectorXd g;
    MatrixXd h;  ///< (N+1) x (Ms+1), h(x_j, s_k)

    static StaticData zero(const SpaceGrid& grid, int n_s = 16);
    /// Smooth deterministic preset with f in the clamped class
    /// (f(0) = f'(0) = 0).
    static StaticData smooth(const SpaceGrid& grid, int n_s = 16);
    /// Random low-order trigonometric/polynomial mix, seeded.
    static StaticData random_smooth(const SpaceGrid& grid, unsigned seed, int n_s = 16);
};

/// psi_alpha = g + alpha (f - tau int_0^1 h(., r) dr), s-integral by trapezoid.
VectorXd source_psi(const StaticData& d, const BeamParameters& p);

/// Wronskian of the fundamental system {1, x, e^{rho x}, e^{-rho x}}: -2 rho^5.
double wronskian(double rho);

/// The 4x4 fundamental matrix W(x) in the exponential basis (diagnostics).
Eigen::Matrix4d fundamental_matrix(double x, double rho);

/// Variation-of-constants derivatives c_i'(x) for a pointwise source value
/// psi; satisfy W(x) C'(x) = (0, 0, 0, -psi) (diagnostics).
Eigen::Vector4d cramer_derivatives(double x, double rho, double psi);

/// Particular solution with zero Cauchy data at x = 0:
/// y_P = (1/rho^2) int_0^x (x-r) psi dr - (1/rho^3) int_0^x sinh(rho (x-r)) psi dr,
/// derivative kernels (1 - cosh)/rho^2, -sinh/rho, -cosh. The convolutions use
/// 3-point Gauss-Legendre per grid cell on a local cubic interpolant of psi,
/// accurate past the O(dx^2) cross-check floor.
class ParticularSolution {
  public:
    ParticularSolution() = default;
    ParticularSolution(const VectorXd& psi, double rho, const SpaceGrid& g);

    /// y_P, y_P', y_P'', y_P''' at x in [0, length].
    std::array<double, 4> evaluate(double x) const;

  private:
    VectorXd psi_;
    double rho_ = 1.0;
    double dx_ = 1.0;
    double ell_ = 1.0;
    int n_ = 0;
};

inline ParticularSolution particular_solution(const VectorXd& psi, double rho,
                                              const SpaceGrid& g) {
    return ParticularSolution(psi, rho, g);
}

/// Closed-form solution y = c1 + c2 x + c3 e^{rho x} + c4 e^{-rho x} + y_P(x)
/// of y'''' - T y'' = -psi with the clamped-free boundary conditions
/// y(0) = y'(0) = 0, y''(l) = 0, y'''(l) - T y'(l) = kappa f(l).
/// Internally the homogeneous part is carried in the {1, x, cosh, sinh}
/// basis for conditioning; the exponential-basis coefficients are derived.
class ClosedFormSolution {
  public:
    /// Coefficients (c1, c2, c3, c4) in the exponential basis.
    const std::array<double, 4>& coefficients() const { return c_; }
    double rho() const { return rho_; }
    const VectorXd& psi() const { return psi_; }

    /// y and its first three derivatives at any x in [0, length].
    std::array<double, 4> evaluate(double x) const;
    double y(double x) const { return evaluate(x)[0]; }
    double dy(double x) const { return evaluate(x)[1]; }
    double d2y(double x) const { return evaluate(x)[2]; }
    double d3y(double x) const { return evaluate(x)[3]; }

    /// Determinant of the assembled boundary system (diagnostic).
    double boundary_determinant() const { return boundary_det_; }

  private:
    friend ClosedFormSolution solve_coefficients(const VectorXd&, const BeamParameters&,
                                                 const StaticData&, const SpaceGrid&);

    double rho_ = 0.0;
    VectorXd psi_;
    ParticularSolution part_;
    std::array<double, 4> c_{};  // exponential basis
    std::array<double, 4> a_{};  // {1, x, cosh, sinh} basis
    double boundary_det_ = 0.0;
};

/// Solves the 4x4 boundary system for the closed-form solution. The tip data
/// enter through phi1 = -y_P''(l)/rho^2 and
/// phi2 = kappa f(l) - (y_P'''(l) - T y_P'(l)), both taken from the
/// particular-solution evaluator itself so the reconstructed boundary
/// residuals sit at roundoff. Requires T > 0. Throws std::runtime_error when
/// the assembled system is numerically singular (|det| <= 1e-12 scale); the
/// message carries the computed determinant.
ClosedFormSolution solve_coefficients(const VectorXd& psi, const BeamParameters& p,
                                      const StaticData& d, const SpaceGrid& g);

/// Independent finite-difference solve of y'''' - T y'' = -psi with the same
/// boundary conditions, kappa f(l) entering the tip row as data.
VectorXd bvp_oracle(const VectorXd& psi, const BeamParameters& p,
                    const SpaceGrid& g, double f_tip);

}  // namespace delaybeam
