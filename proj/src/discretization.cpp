#include "delaybeam/discretization.hpp"

#include <stdexcept>

namespace delaybeam {

SpatialOperator::SpatialOperator(const BeamParameters& p, const SpaceGrid& g)
    : n_(g.n_cells()), dx_(g.dx()), tension_value_(p.tension) {
    const int n = n_;
    const double dx = dx_;
    const double inv_dx2 = 1.0 / (dx * dx);

    // Curvature samples: ghost row at the clamped end (y[-1] = y[1]),
    // central rows inside, one-sided second-order row at the tip.
    MatrixXd curv = MatrixXd::Zero(n + 1, n + 1);
    curv(0, 0) = -2.0 * inv_dx2;
    curv(0, 1) = 2.0 * inv_dx2;
    for (int j = 1; j < n; ++j) {
        curv(j, j - 1) = inv_dx2;
        curv(j, j) = -2.0 * inv_dx2;
        curv(j, j + 1) = inv_dx2;
    }
    curv(n, n) = 2.0 * inv_dx2;
    curv(n, n - 1) = -5.0 * inv_dx2;
    curv(n, n - 2) = 4.0 * inv_dx2;
    curv(n, n - 3) = -inv_dx2;

    VectorXd trap = VectorXd::Constant(n + 1, dx);
    trap(0) = dx / 2.0;
    trap(n) = dx / 2.0;
    mass_ = trap;

    bending_ = curv.transpose() * trap.asDiagonal() * curv;

    // Cell differences under midpoint weights.
    MatrixXd diff = MatrixXd::Zero(n, n + 1);
    for (int j = 0; j < n; ++j) {
        diff(j, j) = -1.0 / dx;
        diff(j, j + 1) = 1.0 / dx;
    }
    tension_ = dx * diff.transpose() * diff;

    stiffness_ = bending_ + tension_value_ * tension_;
    tip_coupling_ = 2.0 * p.gain / dx;
}

VectorXd SpatialOperator::apply(const VectorXd& y) const {
    if (y.size() != n_ + 1)
        throw std::invalid_argument("SpatialOperator::apply: field length mismatch");
    VectorXd out = stiffness_ * y;
    out.array() /= mass_.array();
    out(0) = 0.0;  // clamped node is pinned
    return out;
}

double SpatialOperator::bending_form(const VectorXd& y) const {
    return y.dot(bending_ * y);
}

double SpatialOperator::tension_form(const VectorXd& y) const {
    return y.dot(tension_ * y);
}

double SpatialOperator::mass_form(const VectorXd& v) const {
    return v.dot(mass_.cwiseProduct(v));
}

double discrete_tip_slope(const VectorXd& y, const SpaceGrid& g) {
    const int n = g.n_cells();
    if (y.size() != n + 1)
        throw std::invalid_argument("discrete_tip_slope: field length mismatch");
    return (3.0 * y(n) - 4.0 * y(n - 1) + y(n - 2)) / (2.0 * g.dx());
}

}  // namespace delaybeam
