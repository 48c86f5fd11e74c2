#pragma once

#include <Eigen/Dense>

#include "delaybeam/model.hpp"

namespace delaybeam {

using Eigen::MatrixXd;

/// Discrete realization of y -> y_xxxx - T y_xx on the grid with the
/// clamped-free boundary closures.
///
/// The operator is built variationally: the stiffness matrix is
/// K = B^T W_b B + T G^T W_g G, where B samples the curvature (ghost-node
/// row at the clamped end, central rows inside, a one-sided second-order row
/// at the tip) under trapezoid weights, and G takes cell differences under
/// midpoint weights. Interior rows of M^{-1} K reduce exactly to the standard
/// 5-point fourth difference minus T times the central second difference.
/// K is symmetric positive semi-definite by construction, which makes the
/// discrete energy identity exact in semi-discrete time.
///
/// The kappa-dependent velocity coupling is not part of K; it enters the tip
/// velocity equation as -kappa v(l) e_N (exposed via tip_coupling()).
class SpatialOperator {
  public:
    SpatialOperator(const BeamParameters& p, const SpaceGrid& g);

    /// A y = M^{-1} K y with the clamped row zeroed (node 0 is pinned).
    VectorXd apply(const VectorXd& y) const;

    const MatrixXd& stiffness() const { return stiffness_; }          ///< K = K_bend + T K_tens
    const MatrixXd& bending_stiffness() const { return bending_; }    ///< B^T W_b B
    const MatrixXd& tension_stiffness() const { return tension_; }    ///< G^T W_g G (without T)
    const VectorXd& mass() const { return mass_; }                    ///< trapezoid weights

    /// Coefficient multiplying y_t(l, t) in the discrete tip equation,
    /// 2 kappa / dx (the boundary load divided by the tip mass weight).
    double tip_coupling() const { return tip_coupling_; }

    /// Quadratic forms matching the energy quadratures exactly.
    double bending_form(const VectorXd& y) const;   ///< discrete int y_xx^2
    double tension_form(const VectorXd& y) const;   ///< discrete int y_x^2
    double mass_form(const VectorXd& v) const;      ///< discrete int v^2

    int n_cells() const { return n_; }
    double dx() const { return dx_; }
    double tension() const { return tension_value_; }

  private:
    int n_;
    double dx_;
    double tension_value_;
    double tip_coupling_;
    MatrixXd bending_;
    MatrixXd tension_;
    MatrixXd stiffness_;
    VectorXd mass_;
};

/// One-sided second-order approximation of y_x(l).
double discrete_tip_slope(const VectorXd& y, const SpaceGrid& g);

}  // namespace delaybeam
