#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lftd/linalg.hpp"
#include "lftd/opspace.hpp"

namespace lftd {

/// Z -> (A Z + B)(C Z + D)^-1 acting on dim_k x dim_h matrices.
struct LFTMap {
  Matrix a;  // dim_k x dim_k
  Matrix b;  // dim_k x dim_h
  Matrix c;  // dim_h x dim_k
  Matrix d;  // dim_h x dim_h

  LFTMap(Matrix a, Matrix b, Matrix c, Matrix d);

  static LFTMap identity(Eigen::Index dim_k, Eigen::Index dim_h);
  /// Splits a (dim_k + dim_h)-square coefficient matrix into blocks.
  static LFTMap from_coefficients(const Matrix& m, Eigen::Index dim_k);

  Eigen::Index dim_k() const { return a.rows(); }
  Eigen::Index dim_h() const { return d.rows(); }
  Matrix coefficient_matrix() const;

  Matrix apply(const Matrix& z, const Tolerance& tol) const;
};

Matrix lft_apply(const LFTMap& t, const Matrix& z, const Tolerance& tol);

/// outer(inner(Z)); the coefficient matrix is the product.
LFTMap compose(const LFTMap& outer, const LFTMap& inner);

enum class Verdict { Member, NotInSpace, Singular };
std::string_view to_string(Verdict v);

/// The component through Z0 of {Z in space : (CZ + D)^-1 exists}, together with
/// X0 = (C Z0 + D)^-1 C. Instances only exist in a validated state.
class DomainSpec {
 public:
  const OperatorSpace& space() const { return space_; }
  const Matrix& c() const { return c_; }
  const Matrix& d() const { return d_; }
  const Matrix& base_point() const { return base_point_; }
  const Matrix& x0() const { return x0_; }
  Eigen::Index dim_k() const { return space_.dim_k(); }
  Eigen::Index dim_h() const { return space_.dim_h(); }
  const std::string& label() const { return label_; }

  /// C Z + D.
  Matrix denominator(const Matrix& z) const { return c_ * z + d_; }
  /// (C Y + D)^-1 C; throws SingularDenominator when C Y + D is not invertible.
  Matrix x_at(const Matrix& y, const Tolerance& tol) const;

  /// Same C, D and space around another base point.
  DomainSpec rebased(const Matrix& z0, const Tolerance& tol) const;

  friend DomainSpec new_domain(OperatorSpace space, Matrix c, Matrix d, Matrix z0, const Tolerance& tol,
                               std::string label);

 private:
  DomainSpec(OperatorSpace space, Matrix c, Matrix d, Matrix z0, Matrix x0, std::string label);

  OperatorSpace space_;
  Matrix c_;
  Matrix d_;
  Matrix base_point_;
  Matrix x0_;
  std::string label_;
};

DomainSpec new_domain(OperatorSpace space, Matrix c, Matrix d, Matrix z0, const Tolerance& tol,
                      std::string label = "custom");

/// Member iff Z is in the space and C Z + D is invertible.
Verdict member(const DomainSpec& dom, const Matrix& z, const Tolerance& tol);
inline bool is_member(const DomainSpec& dom, const Matrix& z, const Tolerance& tol) {
  return member(dom, z, tol) == Verdict::Member;
}

/// Which of the four sufficient conditions for connectedness of the
/// invertibility set hold.
struct ConnectivityReport {
  bool compact_range = false;       // C applied to the space has only compact operators
  bool polynomial = false;          // each X0 Z satisfies a polynomial equation
  bool closed_range = false;        // full space and ran C closed
  bool range_inclusion = false;     // full space and ran D inside ran C
};

ConnectivityReport connectivity_class(const DomainSpec& dom, const Tolerance& tol);

/// f(Z) = det(I + D^-1 C Z). Zero exactly on the complement of the domain.
Complex det_membership(const DomainSpec& dom, const Matrix& z, const Tolerance& tol);

/// |f(Z)| / |grad f(Z)| measured in the variable M = CZ + D: |det M| / ||adj M||_F,
/// with the adjugate built from minor determinants. Lies in
/// [sigma_min(M) / sqrt(dim_h), sigma_min(M)], so it is a first-order distance
/// from CZ + D to the singular matrices.
double det_distance(const DomainSpec& dom, const Matrix& z, const Tolerance& tol);

/// det_distance(Z) <= inv_tol.
bool det_says_singular(const DomainSpec& dom, const Matrix& z, const Tolerance& tol);

// Constructors for the standard examples.

/// C = 0, D = I. Every point of the space belongs to the domain.
DomainSpec example0(const OperatorSpace& space, std::optional<Matrix> z0 = std::nullopt);

/// Identity component of the invertibles of a power algebra: C = I, D = 0, Z0 = I.
DomainSpec example1_gi(const OperatorSpace& space, const Tolerance& tol, std::optional<Matrix> z0 = std::nullopt);

/// C = E, D = I - E, Z0 = E for a projection E with Z E Z in the space.
DomainSpec example2_projection(const OperatorSpace& space, const Matrix& e, const Tolerance& tol);

/// Complement of the hyperplane (z, c) = -d in C^n, with vectors as n x 1 matrices.
DomainSpec example4_hyperplane(const Vector& c, Complex d, const Tolerance& tol);

/// {Z : (Z x, y) != -d} with C = x y*, D = d I and Z0 = (1 - d) y x*.
DomainSpec example5_rank_one(const OperatorSpace& space, const Vector& x, const Vector& y, Complex d,
                             const Tolerance& tol);

/// The quadric complement {z in C^n : (z, conj z) != 0}, realized on the spin
/// factor z -> A_z = sum z_i G_i where the G_i are anticommuting Hermitian
/// involutions. A_z^2 = (sum z_i^2) I, so C = I, D = 0 gives exactly this set.
struct QuadricDomain {
  DomainSpec domain;
  std::vector<Matrix> generators;

  Eigen::Index n() const { return static_cast<Eigen::Index>(generators.size()); }
  Matrix embed(const Vector& z) const;
  Vector coords(const Matrix& a) const;
  /// (z, conj z) = sum z_i^2.
  static Complex bilinear(const Vector& z, const Vector& w);
  /// Closed form of the symmetry at y: (2 (z, conj y) y - (y, conj y) z) / (z, conj z).
  static Vector symmetry_closed_form(const Vector& y, const Vector& z);
};

QuadricDomain example6_quadric(Eigen::Index n, const Tolerance& tol);

}  // namespace lftd
