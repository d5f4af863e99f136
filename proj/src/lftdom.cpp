#include "lftd/lftdom.hpp"

#include <cmath>
#include <string>

namespace lftd {

LFTMap::LFTMap(Matrix a_, Matrix b_, Matrix c_, Matrix d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  const auto k = a.rows();
  const auto h = d.rows();
  if (a.cols() != k || d.cols() != h || b.rows() != k || b.cols() != h || c.rows() != h || c.cols() != k) {
    throw Error(ErrorKind::ShapeMismatch, "LFT blocks must be A: k x k, B: k x h, C: h x k, D: h x h");
  }
}

LFTMap LFTMap::identity(Eigen::Index dim_k, Eigen::Index dim_h) {
  return LFTMap(Matrix::Identity(dim_k, dim_k), Matrix::Zero(dim_k, dim_h), Matrix::Zero(dim_h, dim_k),
                Matrix::Identity(dim_h, dim_h));
}

LFTMap LFTMap::from_coefficients(const Matrix& m, Eigen::Index dim_k) {
  if (m.rows() != m.cols() || dim_k <= 0 || dim_k >= m.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "coefficient matrix must be square with dim_k < size");
  }
  const auto h = m.rows() - dim_k;
  return LFTMap(m.topLeftCorner(dim_k, dim_k), m.topRightCorner(dim_k, h), m.bottomLeftCorner(h, dim_k),
                m.bottomRightCorner(h, h));
}

Matrix LFTMap::coefficient_matrix() const { return block2x2(a, b, c, d); }

Matrix LFTMap::apply(const Matrix& z, const Tolerance& tol) const {
  if (z.rows() != dim_k() || z.cols() != dim_h()) {
    throw Error(ErrorKind::ShapeMismatch, "LFT argument must be " + std::to_string(dim_k()) + "x" +
                                              std::to_string(dim_h()));
  }
  const Matrix den = c * z + d;
  auto inv = try_invert(den, tol);
  if (!inv) throw Error(ErrorKind::SingularDenominator, "CZ + D is not invertible");
  return (a * z + b) * *inv;
}

Matrix lft_apply(const LFTMap& t, const Matrix& z, const Tolerance& tol) { return t.apply(z, tol); }

LFTMap compose(const LFTMap& outer, const LFTMap& inner) {
  if (outer.dim_k() != inner.dim_k() || outer.dim_h() != inner.dim_h()) {
    throw Error(ErrorKind::ShapeMismatch, "composed LFTs act on different shapes");
  }
  return LFTMap::from_coefficients(outer.coefficient_matrix() * inner.coefficient_matrix(), outer.dim_k());
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "Member";
    case Verdict::NotInSpace: return "NotInSpace";
    case Verdict::Singular: return "Singular";
  }
  return "?";
}

DomainSpec::DomainSpec(OperatorSpace space, Matrix c, Matrix d, Matrix z0, Matrix x0, std::string label)
    : space_(std::move(space)),
      c_(std::move(c)),
      d_(std::move(d)),
      base_point_(std::move(z0)),
      x0_(std::move(x0)),
      label_(std::move(label)) {}

Matrix DomainSpec::x_at(const Matrix& y, const Tolerance& tol) const {
  auto inv = try_invert(denominator(y), tol);
  if (!inv) throw Error(ErrorKind::SingularDenominator, "CY + D is not invertible");
  return *inv * c_;
}

DomainSpec DomainSpec::rebased(const Matrix& z0, const Tolerance& tol) const {
  return new_domain(space_, c_, d_, z0, tol, label_);
}

DomainSpec new_domain(OperatorSpace space, Matrix c, Matrix d, Matrix z0, const Tolerance& tol, std::string label) {
  const auto k = space.dim_k();
  const auto h = space.dim_h();
  if (c.rows() != h || c.cols() != k) throw Error(ErrorKind::ShapeMismatch, "C must be dim_h x dim_k");
  if (d.rows() != h || d.cols() != h) throw Error(ErrorKind::ShapeMismatch, "D must be dim_h x dim_h");
  space.require_shape(z0, "base point");
  require_finite(c, "C entries");
  require_finite(d, "D entries");
  require_finite(z0, "Z0 entries");
  if (!contains(space, z0, tol)) {
    throw Error(ErrorKind::MembershipViolation, "base point is not in space '" + space.label() + "'");
  }
  auto inv = try_invert(c * z0 + d, tol);
  if (!inv) throw Error(ErrorKind::BaseSingular, "C Z0 + D is not invertible");
  Matrix x0 = *inv * c;
  if (!closed_under_quadratic(space, x0, tol)) {
    throw Error(ErrorKind::ClosureViolation, "Z X0 Z leaves space '" + space.label() + "'");
  }
  return DomainSpec(std::move(space), std::move(c), std::move(d), std::move(z0), std::move(x0), std::move(label));
}

Verdict member(const DomainSpec& dom, const Matrix& z, const Tolerance& tol) {
  if (z.rows() != dom.dim_k() || z.cols() != dom.dim_h() || !all_finite(z)) return Verdict::NotInSpace;
  if (!contains(dom.space(), z, tol)) return Verdict::NotInSpace;
  if (min_singular_value(dom.denominator(z)) <= tol.inv_tol) return Verdict::Singular;
  return Verdict::Member;
}

ConnectivityReport connectivity_class(const DomainSpec& dom, const Tolerance& tol) {
  ConnectivityReport r;
  r.compact_range = true;
  r.polynomial = true;
  r.closed_range = dom.space().is_full();
  if (r.closed_range) {
    Matrix cd(dom.c().rows(), dom.c().cols() + dom.d().cols());
    cd << dom.c(), dom.d();
    r.range_inclusion = numerical_rank(cd, tol.inv_tol) == numerical_rank(dom.c(), tol.inv_tol);
  }
  return r;
}

Complex det_membership(const DomainSpec& dom, const Matrix& z, const Tolerance& tol) {
  dom.space().require_shape(z, "det_membership argument");
  auto d_inv = try_invert(dom.d(), tol);
  if (!d_inv) throw Error(ErrorKind::SingularDenominator, "det_membership needs D invertible");
  const Matrix m = identity(dom.dim_h()) + *d_inv * dom.c() * z;
  return m.determinant();
}

namespace {

/// Cofactor matrix transposed, every entry a minor determinant.
Matrix adjugate(const Matrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return Matrix::Ones(1, 1);
  Matrix adj(n, n);
  Matrix minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c)
          if (c != j) minor(rr, cc++) = m(r, c);
        ++rr;
      }
      adj(j, i) = ((i + j) % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
    }
  }
  return adj;
}

}  // namespace

double det_distance(const DomainSpec& dom, const Matrix& z, const Tolerance& tol) {
  const double f = std::abs(det_membership(dom, z, tol)) * std::abs(dom.d().determinant());
  const double grad = adjugate(dom.denominator(z)).norm();
  return grad > 0.0 ? f / grad : 0.0;
}

bool det_says_singular(const DomainSpec& dom, const Matrix& z, const Tolerance& tol) {
  return det_distance(dom, z, tol) <= tol.inv_tol;
}

DomainSpec example0(const OperatorSpace& space, std::optional<Matrix> z0) {
  Matrix base = z0 ? *z0 : Matrix::Zero(space.dim_k(), space.dim_h());
  return new_domain(space, Matrix::Zero(space.dim_h(), space.dim_k()), identity(space.dim_h()), std::move(base),
                    Tolerance{}, "example0");
}

DomainSpec example1_gi(const OperatorSpace& space, const Tolerance& tol, std::optional<Matrix> z0) {
  if (!make_power_algebra_check(space, tol)) {
    throw Error(ErrorKind::HypothesisViolation, "space '" + space.label() + "' is not a power algebra");
  }
  const auto n = space.dim_h();
  Matrix base = z0 ? *z0 : identity(n);
  return new_domain(space, identity(n), Matrix::Zero(n, n), std::move(base), tol, "example1");
}

DomainSpec example2_projection(const OperatorSpace& space, const Matrix& e, const Tolerance& tol) {
  if (!space.is_square()) throw Error(ErrorKind::NotSquare, "projection example needs square operators");
  space.require_shape(e, "projection");
  if ((e * e - e).norm() > tol.eq_tol * (1.0 + e.norm())) {
    throw Error(ErrorKind::NotIdempotent, "E^2 != E");
  }
  const auto n = space.dim_h();
  return new_domain(space, e, identity(n) - e, e, tol, "example2");
}

DomainSpec example4_hyperplane(const Vector& c, Complex d, const Tolerance& tol) {
  const auto n = c.size();
  if (n == 0 || c.norm() == 0.0) throw Error(ErrorKind::InvalidArgument, "hyperplane normal c must be nonzero");
  Matrix cm = c.adjoint();
  Matrix dm(1, 1);
  dm(0, 0) = d;
  Matrix z0 = Matrix::Zero(n, 1);
  if (std::abs(d) <= tol.inv_tol) z0 = c / c.squaredNorm();
  return new_domain(OperatorSpace::full(n, 1), std::move(cm), std::move(dm), std::move(z0), tol, "example4");
}

DomainSpec example5_rank_one(const OperatorSpace& space, const Vector& x, const Vector& y, Complex d,
                             const Tolerance& tol) {
  if (x.size() != space.dim_h() || y.size() != space.dim_k()) {
    throw Error(ErrorKind::ShapeMismatch, "x must live in H (dim_h) and y in K (dim_k)");
  }
  if (std::abs(x.norm() - 1.0) > tol.eq_tol || std::abs(y.norm() - 1.0) > tol.eq_tol) {
    throw Error(ErrorKind::InvalidArgument, "x and y must be unit vectors");
  }
  if (std::abs(d) <= tol.inv_tol) throw Error(ErrorKind::InvalidArgument, "d must be nonzero");
  const Matrix yx = y * x.adjoint();
  if (!contains(space, yx, tol)) {
    throw Error(ErrorKind::MembershipViolation, "space does not contain the rank-one operator y x*");
  }
  const auto h = space.dim_h();
  return new_domain(space, x * y.adjoint(), d * identity(h), (1.0 - d) * yx, tol, "example5");
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// Jordan-Wigner construction of n anticommuting Hermitian involutions.
std::vector<Matrix> clifford_generators(Eigen::Index n) {
  const Complex i1(0.0, 1.0);
  Matrix px(2, 2), py(2, 2), pz(2, 2);
  px << 0.0, 1.0, 1.0, 0.0;
  py << 0.0, -i1, i1, 0.0;
  pz << 1.0, 0.0, 0.0, -1.0;
  const Eigen::Index qubits = (n + 1) / 2;
  std::vector<Matrix> gens;
  for (Eigen::Index j = 0; j < qubits; ++j) {
    for (const Matrix* p : {&px, &py}) {
      if (static_cast<Eigen::Index>(gens.size()) == n) break;
      Matrix g = Matrix::Identity(1, 1);
      for (Eigen::Index q = 0; q < qubits; ++q) {
        g = kron(g, q < j ? pz : (q == j ? *p : Matrix(identity(2))));
      }
      gens.push_back(std::move(g));
    }
  }
  return gens;
}

}  // namespace

Matrix QuadricDomain::embed(const Vector& z) const {
  if (z.size() != n()) throw Error(ErrorKind::ShapeMismatch, "vector length does not match the quadric dimension");
  Matrix out = Matrix::Zero(generators.front().rows(), generators.front().cols());
  for (Eigen::Index i = 0; i < n(); ++i) out += z(i) * generators[static_cast<std::size_t>(i)];
  return out;
}

Vector QuadricDomain::coords(const Matrix& a) const {
  Vector z(n());
  const double size = static_cast<double>(a.rows());
  for (Eigen::Index i = 0; i < n(); ++i) z(i) = (generators[static_cast<std::size_t>(i)] * a).trace() / size;
  return z;
}

Complex QuadricDomain::bilinear(const Vector& z, const Vector& w) { return (z.array() * w.array()).sum(); }

Vector QuadricDomain::symmetry_closed_form(const Vector& y, const Vector& z) {
  return (2.0 * bilinear(z, y) * y - bilinear(y, y) * z) / bilinear(z, z);
}

QuadricDomain example6_quadric(Eigen::Index n, const Tolerance& tol) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "quadric dimension must be positive");
  auto gens = clifford_generators(n);
  const auto size = gens.front().rows();
  OperatorSpace space(size, size, gens, "spin-factor");
  Matrix z0 = gens.front();
  DomainSpec dom = new_domain(std::move(space), identity(size), Matrix::Zero(size, size), std::move(z0), tol,
                              "example6");
  return QuadricDomain{std::move(dom), std::move(gens)};
}

}  // namespace lftd
