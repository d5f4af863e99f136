#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lftd/lftdom.hpp"
#include "lftd/opspace.hpp"

namespace lftd {

/// Shape data for operators H -> K x H, written Z = [Z1; Z2], and the
/// signature J = diag(I_K, -I_H).
struct SiegelSpec {
  Eigen::Index dim_h;
  Eigen::Index dim_k;

  SiegelSpec(Eigen::Index dim_h, Eigen::Index dim_k);
  Matrix j() const;
  Matrix upper(const Matrix& z) const { return z.topRows(dim_k); }
  Matrix lower(const Matrix& z) const { return z.bottomRows(dim_h); }
  void require_shape(const Matrix& z) const;
};

/// I + Z1* Z1 < Z2* Z2.
bool siegel_member(const SiegelSpec& spec, const Matrix& z, const Tolerance& tol);

/// h(Z) = L Z U with L* J L = J and U unitary.
struct SiegelMap {
  Matrix l;
  Matrix u;
  Matrix l_inv;

  Matrix apply(const Matrix& z) const { return l * z * u; }
  Matrix apply_inverse(const Matrix& z) const { return l_inv * z * u.adjoint(); }
};

SiegelMap siegel_linear_auto(const SiegelSpec& spec, const Matrix& l, const Matrix& u, const Tolerance& tol);

/// T(Z1, Z2) = (Z1 Z2^-1, Z2^-1); its own inverse. Carries the Siegel-type
/// domain onto the part of the unit ball where the lower block is invertible.
Matrix cayley_T(const SiegelSpec& spec, const Matrix& z, const Tolerance& tol);

/// Z invertible with I < Z* Z, i.e. smallest singular value above 1.
bool exterior_member(const OperatorSpace& space, const Matrix& z, const Tolerance& tol);

/// A linear map of a space into itself, stored as the images of the basis.
class SpaceLinearMap {
 public:
  SpaceLinearMap(OperatorSpace space, std::vector<Matrix> images);
  static SpaceLinearMap from_function(const OperatorSpace& space, const std::function<Matrix(const Matrix&)>& f);

  const OperatorSpace& space() const { return space_; }
  Matrix apply(const Matrix& z) const;
  bool invertible(const Tolerance& tol) const;

 private:
  OperatorSpace space_;
  std::vector<Matrix> images_;
};

struct IsometryReport {
  int samples = 0;
  double isometry_residual = 0.0;  // max | ||L Z|| - ||Z|| | on the pre-check sample
  double identity_residual = 0.0;  // max ||L(Z^-1) - U L(Z)^-1 U|| / (1 + ||Z^-1||)
  double unitary_residual = 0.0;   // ||U* U - I||
  Matrix u;                        // L(I)
};

/// Checks L(Z^-1) = U L(Z)^-1 U with U = L(I) on random invertible members,
/// after a sampled isometry pre-check (a necessary condition, not a proof).
IsometryReport isometry_inverse_identity_check(const SpaceLinearMap& l, const Tolerance& tol, std::uint64_t seed,
                                               int samples = 100);

struct ExteriorReport {
  int samples = 0;
  int preserved = 0;
  double min_image_margin = 0.0;  // min over samples of sigma_min(L Z) - 1
  bool passed() const { return samples > 0 && preserved == samples; }
};

/// Confirms on samples that I < Z* Z implies I < L(Z)* L(Z).
ExteriorReport exterior_linear_auto_check(const SpaceLinearMap& l, const Tolerance& tol, std::uint64_t seed,
                                          int samples = 100);

/// Coefficient matrix of the ball automorphism T_B:
/// [[(I - BB*)^-1/2, B (I - B*B)^-1/2], [(I - B*B)^-1/2 B*, (I - B*B)^-1/2]].
Matrix ball_coefficient(const Matrix& b);

/// T_B(Z) = (I - BB*)^-1/2 (Z + B)(I + B* Z)^-1 (I - B*B)^1/2 for ||B|| < 1.
LFTMap mobius_TB(const Matrix& b, const Tolerance& tol);

/// Z1* Z1 < Z2* Z2 with Z2 invertible.
bool product_member(const SiegelSpec& spec, const Matrix& z, const Tolerance& tol);

/// L(Z) = M Z R carrying [0; I] to W, with M* J M = J.
struct ProductTransitive {
  Matrix b;
  Matrix m;
  Matrix r;
  Matrix m_inv;
  Matrix r_inv;

  Matrix apply(const Matrix& z) const { return m * z * r; }
  Matrix apply_inverse(const Matrix& z) const { return m_inv * z * r_inv; }
};

ProductTransitive product_domain_transitive(const SiegelSpec& spec, const Matrix& w, const Tolerance& tol);

/// (Z1 Z2^-1, Z2^-1): the product domain onto (unit ball) x (invertibles).
std::pair<Matrix, Matrix> product_h(const SiegelSpec& spec, const Matrix& z, const Tolerance& tol);

/// A Hermitian J with eigenvalues +1 and -1, split as C e + K + C f.
class HyperbolicSpec {
 public:
  /// Without explicit e, f: e is the first +1 eigenvector and f the last -1
  /// eigenvector in the eigensolver's ascending order.
  static HyperbolicSpec make(const Matrix& j, const Tolerance& tol, std::optional<Vector> e = std::nullopt,
                             std::optional<Vector> f = std::nullopt);

  const Matrix& j() const { return j_; }
  const Vector& e() const { return e_; }
  const Vector& f() const { return f_; }
  /// Unitary frame [e, K basis, f]; J is diag(1, B, -1) in these coordinates.
  const Matrix& frame() const { return frame_; }
  const Matrix& b_block() const { return b_; }
  Eigen::Index dim() const { return j_.rows(); }

 private:
  Matrix j_;
  Vector e_;
  Vector f_;
  Matrix frame_;
  Matrix b_;
};

/// (J z, z) < -tol.
bool hyperbolic_member(const HyperbolicSpec& spec, const Vector& z, const Tolerance& tol);

/// Frame-coordinate matrix L_w = [[1 - q/2, -w* B, -q/2], [w, I, w], [q/2, w* B, 1 + q/2]], q = (Bw, w).
Matrix hyperbolic_lw(const Matrix& b, const Vector& w);

struct HyperbolicTransitive {
  Matrix l;         // L with L f = z1, in the original coordinates
  Matrix l1;        // frame coordinates
  Matrix lw;
  Matrix l2;
  Matrix pre;       // L_{-w1} on the degenerate branch, else I
  double scale;     // c in L* J L = c J
  bool degenerate;
  double a;
  double b;
};

HyperbolicTransitive hyperbolic_transitive(const HyperbolicSpec& spec, const Vector& z1, const Tolerance& tol);

}  // namespace lftd
