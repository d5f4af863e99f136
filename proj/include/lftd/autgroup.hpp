#pragma once

#include <optional>
#include <vector>

#include "lftd/lftdom.hpp"

namespace lftd {

/// Z -> offset + left (Z - anchor) right. Kept in factored form so affinity and
/// invertibility are structural.
struct AffineMap {
  Matrix left;    // dim_k x dim_k
  Matrix right;   // dim_h x dim_h
  Matrix anchor;  // dim_k x dim_h
  Matrix offset;  // dim_k x dim_h

  static AffineMap identity(Eigen::Index dim_k, Eigen::Index dim_h);

  Matrix apply(const Matrix& z) const { return offset + left * (z - anchor) * right; }
  Matrix translation() const { return offset - left * anchor * right; }
  /// next(this(Z)).
  AffineMap then(const AffineMap& next) const;
};

/// The symmetry at Y: Z -> Y - (Z - Y)(CZ + D)^-1 (CY + D). An involution of the
/// domain fixing Y with derivative -I there.
LFTMap symmetry_U(const DomainSpec& dom, const Matrix& y, const Tolerance& tol);

/// U_Y(Z) evaluated as Y - (Z - Y)(C Z + D)^-1 (C Y + D).
Matrix symmetry_apply(const DomainSpec& dom, const Matrix& y, const Matrix& z, const Tolerance& tol);

/// [[-(I - YX), 2Y - YXY], [X, I - XY]] with X = (CY + D)^-1 C. Squares to I.
Matrix symmetry_coeff_matrix(const DomainSpec& dom, const Matrix& y, const Tolerance& tol);

/// Central difference (U_Y(Y + tZ) - U_Y(Y - tZ)) / 2t. Steps below 1e-8 are rejected.
Matrix derivative_at_fixed_point(const DomainSpec& dom, const Matrix& y, const Matrix& direction, double step,
                                 const Tolerance& tol);

/// Y with U_Y(Z) = W, for ||X (W - Z)|| < 1 where X = (CZ + D)^-1 C.
/// Y = Z + R (I + Q)^-1 with R = W - Z and Q the principal root of I + X R.
Matrix find_midpoint_Y(const DomainSpec& dom, const Matrix& z, const Matrix& w, const Tolerance& tol);

/// ||(C Z + D)^-1 C (W - Z)||, the quantity every chain step must keep below 1.
double step_norm(const DomainSpec& dom, const Matrix& z, const Matrix& w, const Tolerance& tol);

inline constexpr double kChainStepMargin = 0.9;
inline constexpr int kChainMaxDoublings = 14;

struct AutomorphismChain {
  std::vector<LFTMap> factors;   // applied first to last
  std::vector<Matrix> centers;   // the Y of each symmetry factor
  std::vector<Matrix> waypoints; // factors[k] maps waypoints[k] to waypoints[k + 1]
  std::vector<double> step_norms;
  Matrix source;
  Matrix target;
  AffineMap folded;              // pairwise affine fold of the factors
  double residual = 0.0;         // ||composite(source) - target||
  bool padded = false;           // a symmetry at the source was prepended
  Matrix c;                      // the domain's C and D, for evaluating the factors
  Matrix d;

  Matrix apply(const Matrix& z, const Tolerance& tol) const;
};

/// Chain of symmetries carrying the base point to w0. Without a path the straight
/// segment is used; if it leaves the domain the call fails rather than searching.
/// Each path segment is bisected where a piece breaks the step bound, down to
/// 2^-kChainMaxDoublings of its length.
AutomorphismChain transitive_chain(const DomainSpec& dom, const Matrix& w0,
                                   const std::optional<std::vector<Matrix>>& path, const Tolerance& tol);

/// Affine automorphism W0 + (I + (W0 - Z0) X0)^1/2 (Z - Z0) (I + X0 (W0 - Z0))^1/2.
AffineMap affine_phi(const DomainSpec& dom, const Matrix& w0, const Tolerance& tol);

/// || I + X0 (phi(Z) - Z0) - R^1/2 (I + X0 (Z - Z0)) R^1/2 || with R = I + X0 (W0 - Z0).
double affine_phi_identity_residual(const DomainSpec& dom, const AffineMap& phi, const Matrix& z);

/// V(Z) = Z0 - T_A(Z - Z0) with A = W0 - Z0 and
/// T_A(Z) = (I + A X0)^-1/2 (Z - A)(I + X0 Z)^-1 (I + X0 A)^1/2, returned as an LFT.
LFTMap involution_V(const DomainSpec& dom, const Matrix& w0, const Tolerance& tol);

/// U_W o U_Y = U_W(Y) + (I + (W - Y) X)(Z - Y)(I + X (W - Y)), X = (CY + D)^-1 C.
AffineMap compose_UU_affine(const DomainSpec& dom, const Matrix& w, const Matrix& y, const Tolerance& tol);

/// Potapov-Ginzburg transform U_E(Z) = ((E - I) Z + E)(E Z + I - E)^-1 for a projection E.
LFTMap potapov_ginzburg(const OperatorSpace& space, const Matrix& e, const Tolerance& tol);

/// J - Z* J Z positive definite with the given margin.
bool in_contractive_set(const Matrix& j, const Matrix& z, double margin);
/// I - Z* Z positive definite with the given margin.
bool in_unit_ball(const Matrix& z, double margin);

/// The entire curve f(lambda) = Z0 + (Z - Z0) sum_{n>=1} binom(lambda, n) W^(n-1),
/// W = X0 (Z - Z0), with f(0) = Z0, f(1) = Z, and f(lambda) in the domain for all lambda.
class LiouvilleCurve {
 public:
  LiouvilleCurve(const DomainSpec& dom, const Matrix& z, const Tolerance& tol);

  Matrix operator()(Complex lambda) const;
  /// (C Z0 + D)^-1 (C f(lambda) + D); equals b_lambda(W).
  Matrix denominator_ratio(Complex lambda) const;
  const Matrix& w() const { return w_; }

 private:
  Matrix z0_;
  Matrix delta_;
  Matrix w_;
  Matrix c_;
  Matrix d_;
  Matrix base_den_inv_;
  Tolerance tol_;
};

LiouvilleCurve liouville_curve(const DomainSpec& dom, const Matrix& z, const Tolerance& tol);

/// Z2 + R^-1 (Z - Z1)(C1 Z1 + D1)^-1 (C2 Z2 + D2), mapping dom1 onto dom2 when C2 = C1 R.
AffineMap affine_equivalence(const DomainSpec& dom1, const DomainSpec& dom2, const Matrix& r, const Matrix& z1,
                             const Matrix& z2, const Tolerance& tol);

}  // namespace lftd
