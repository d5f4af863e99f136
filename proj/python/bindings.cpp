#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lftd/autgroup.hpp"
#include "lftd/circular.hpp"
#include "lftd/io.hpp"
#include "lftd/lftdom.hpp"
#include "lftd/verify.hpp"

namespace py = pybind11;
using namespace lftd;

namespace {

Tolerance tolerance(double eq_tol) { return Tolerance::from_eq(eq_tol); }

OperatorSpace space_from(py::object space, Eigen::Index dim_k, Eigen::Index dim_h) {
  if (space.is_none()) return OperatorSpace::full(dim_k, dim_h);
  auto basis = space.cast<std::vector<Matrix>>();
  if (basis.empty()) throw Error(ErrorKind::InvalidArgument, "empty basis");
  return OperatorSpace(basis.front().rows(), basis.front().cols(), std::move(basis), "basis");
}

}  // namespace

PYBIND11_MODULE(_lftd, m) {
  m.doc() = "Domains of linear fractional transformations";
  py::register_exception<Error>(m, "LftdError", PyExc_ValueError);

  py::class_<OperatorSpace>(m, "OperatorSpace")
      .def_static("full", &OperatorSpace::full, py::arg("dim_k"), py::arg("dim_h"))
      .def_static("diagonal", &OperatorSpace::diagonal, py::arg("n"))
      .def_static("upper_triangular", &OperatorSpace::upper_triangular, py::arg("n"))
      .def_static("symmetric", &OperatorSpace::symmetric, py::arg("n"))
      .def_property_readonly("dim_k", &OperatorSpace::dim_k)
      .def_property_readonly("dim_h", &OperatorSpace::dim_h)
      .def_property_readonly("dimension", &OperatorSpace::dimension)
      .def_property_readonly("basis", &OperatorSpace::basis)
      .def("project", &OperatorSpace::project)
      .def("residual", &OperatorSpace::residual);

  py::class_<LFTMap>(m, "LFTMap")
      .def(py::init<Matrix, Matrix, Matrix, Matrix>(), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_readonly("a", &LFTMap::a)
      .def_readonly("b", &LFTMap::b)
      .def_readonly("c", &LFTMap::c)
      .def_readonly("d", &LFTMap::d)
      .def("coefficient_matrix", &LFTMap::coefficient_matrix)
      .def(
          "__call__", [](const LFTMap& t, const Matrix& z, double eq_tol) { return t.apply(z, tolerance(eq_tol)); },
          py::arg("z"), py::arg("eq_tol") = 1e-9);

  py::class_<AffineMap>(m, "AffineMap")
      .def_readonly("left", &AffineMap::left)
      .def_readonly("right", &AffineMap::right)
      .def_readonly("anchor", &AffineMap::anchor)
      .def_readonly("offset", &AffineMap::offset)
      .def("__call__", &AffineMap::apply, py::arg("z"));

  py::class_<DomainSpec>(m, "Domain")
      .def_property_readonly("c", &DomainSpec::c)
      .def_property_readonly("d", &DomainSpec::d)
      .def_property_readonly("base_point", &DomainSpec::base_point)
      .def_property_readonly("x0", &DomainSpec::x0)
      .def_property_readonly("space", &DomainSpec::space)
      .def_property_readonly("label", &DomainSpec::label)
      .def(
          "contains",
          [](const DomainSpec& dom, const Matrix& z, double eq_tol) { return is_member(dom, z, tolerance(eq_tol)); },
          py::arg("z"), py::arg("eq_tol") = 1e-9)
      .def(
          "verdict",
          [](const DomainSpec& dom, const Matrix& z, double eq_tol) {
            return std::string(to_string(member(dom, z, tolerance(eq_tol))));
          },
          py::arg("z"), py::arg("eq_tol") = 1e-9)
      .def(
          "det_membership",
          [](const DomainSpec& dom, const Matrix& z, double eq_tol) {
            return det_membership(dom, z, tolerance(eq_tol));
          },
          py::arg("z"), py::arg("eq_tol") = 1e-9)
      .def(
          "rebased", [](const DomainSpec& dom, const Matrix& z0, double eq_tol) { return dom.rebased(z0, tolerance(eq_tol)); },
          py::arg("z0"), py::arg("eq_tol") = 1e-9)
      .def("to_json", [](const DomainSpec& dom) { return domain_to_json(dom).dump(); });

  m.def(
      "new_domain",
      [](const Matrix& c, const Matrix& d, const Matrix& z0, py::object space, double eq_tol) {
        return new_domain(space_from(space, z0.rows(), z0.cols()), c, d, z0, tolerance(eq_tol));
      },
      py::arg("c"), py::arg("d"), py::arg("z0"), py::arg("space") = py::none(), py::arg("eq_tol") = 1e-9,
      "Domain {Z in space : CZ + D invertible} through z0; space is a list of basis matrices or None for all.");
  m.def(
      "domain_from_json", [](const std::string& text, double eq_tol) {
        return domain_from_json(parse_json(text, "domain"), tolerance(eq_tol));
      },
      py::arg("text"), py::arg("eq_tol") = 1e-9);
  m.def("example0", [](Eigen::Index dim_k, Eigen::Index dim_h) { return example0(OperatorSpace::full(dim_k, dim_h)); },
        py::arg("dim_k"), py::arg("dim_h"));
  m.def(
      "example1", [](Eigen::Index n, double eq_tol) { return example1_gi(OperatorSpace::full(n, n), tolerance(eq_tol)); },
      py::arg("n"), py::arg("eq_tol") = 1e-9);
  m.def(
      "example2", [](const Matrix& e, double eq_tol) {
        return example2_projection(OperatorSpace::full(e.rows(), e.rows()), e, tolerance(eq_tol));
      },
      py::arg("e"), py::arg("eq_tol") = 1e-9);
  m.def(
      "example4", [](const Vector& c, Complex d, double eq_tol) { return example4_hyperplane(c, d, tolerance(eq_tol)); },
      py::arg("c"), py::arg("d"), py::arg("eq_tol") = 1e-9);
  m.def(
      "example5",
      [](const Vector& x, const Vector& y, Complex d, double eq_tol) {
        return example5_rank_one(OperatorSpace::full(x.size(), y.size()), x, y, d, tolerance(eq_tol));
      },
      py::arg("x"), py::arg("y"), py::arg("d"), py::arg("eq_tol") = 1e-9);

  m.def("lft_apply", [](const LFTMap& t, const Matrix& z, double eq_tol) { return lft_apply(t, z, tolerance(eq_tol)); },
        py::arg("t"), py::arg("z"), py::arg("eq_tol") = 1e-9);
  m.def("compose", &compose, py::arg("outer"), py::arg("inner"));

  m.def(
      "symmetry", [](const DomainSpec& dom, const Matrix& y, double eq_tol) { return symmetry_U(dom, y, tolerance(eq_tol)); },
      py::arg("dom"), py::arg("y"), py::arg("eq_tol") = 1e-9, "The involution of the domain with isolated fixed point y.");
  m.def(
      "symmetry_apply",
      [](const DomainSpec& dom, const Matrix& y, const Matrix& z, double eq_tol) {
        return symmetry_apply(dom, y, z, tolerance(eq_tol));
      },
      py::arg("dom"), py::arg("y"), py::arg("z"), py::arg("eq_tol") = 1e-9);
  m.def(
      "midpoint",
      [](const DomainSpec& dom, const Matrix& z, const Matrix& w, double eq_tol) {
        return find_midpoint_Y(dom, z, w, tolerance(eq_tol));
      },
      py::arg("dom"), py::arg("z"), py::arg("w"), py::arg("eq_tol") = 1e-9);

  py::class_<AutomorphismChain>(m, "Chain")
      .def_readonly("factors", &AutomorphismChain::factors)
      .def_readonly("centers", &AutomorphismChain::centers)
      .def_readonly("waypoints", &AutomorphismChain::waypoints)
      .def_readonly("step_norms", &AutomorphismChain::step_norms)
      .def_readonly("folded", &AutomorphismChain::folded)
      .def_readonly("residual", &AutomorphismChain::residual)
      .def_readonly("padded", &AutomorphismChain::padded)
      .def(
          "__call__",
          [](const AutomorphismChain& c, const Matrix& z, double eq_tol) { return c.apply(z, tolerance(eq_tol)); },
          py::arg("z"), py::arg("eq_tol") = 1e-9)
      .def("to_json", [](const AutomorphismChain& c) { return chain_to_json(c).dump(); });
  m.def(
      "transitive_chain",
      [](const DomainSpec& dom, const Matrix& w0, std::optional<std::vector<Matrix>> path, double eq_tol) {
        return transitive_chain(dom, w0, std::move(path), tolerance(eq_tol));
      },
      py::arg("dom"), py::arg("w0"), py::arg("path") = py::none(), py::arg("eq_tol") = 1e-9);
  m.def(
      "affine_phi", [](const DomainSpec& dom, const Matrix& w0, double eq_tol) { return affine_phi(dom, w0, tolerance(eq_tol)); },
      py::arg("dom"), py::arg("w0"), py::arg("eq_tol") = 1e-9);
  m.def(
      "involution_v",
      [](const DomainSpec& dom, const Matrix& w0, double eq_tol) { return involution_V(dom, w0, tolerance(eq_tol)); },
      py::arg("dom"), py::arg("w0"), py::arg("eq_tol") = 1e-9);
  m.def(
      "potapov_ginzburg",
      [](const Matrix& e, double eq_tol) {
        return potapov_ginzburg(OperatorSpace::full(e.rows(), e.rows()), e, tolerance(eq_tol));
      },
      py::arg("e"), py::arg("eq_tol") = 1e-9);

  py::class_<LiouvilleCurve>(m, "LiouvilleCurve")
      .def("__call__", &LiouvilleCurve::operator(), py::arg("lam"))
      .def("denominator_ratio", &LiouvilleCurve::denominator_ratio, py::arg("lam"))
      .def_property_readonly("w", &LiouvilleCurve::w);
  m.def(
      "liouville_curve",
      [](const DomainSpec& dom, const Matrix& z, double eq_tol) { return liouville_curve(dom, z, tolerance(eq_tol)); },
      py::arg("dom"), py::arg("z"), py::arg("eq_tol") = 1e-9);

  m.def(
      "cayley",
      [](Eigen::Index dim_h, Eigen::Index dim_k, const Matrix& z, double eq_tol) {
        return cayley_T(SiegelSpec(dim_h, dim_k), z, tolerance(eq_tol));
      },
      py::arg("dim_h"), py::arg("dim_k"), py::arg("z"), py::arg("eq_tol") = 1e-9);
  m.def(
      "siegel_member",
      [](Eigen::Index dim_h, Eigen::Index dim_k, const Matrix& z, double eq_tol) {
        return siegel_member(SiegelSpec(dim_h, dim_k), z, tolerance(eq_tol));
      },
      py::arg("dim_h"), py::arg("dim_k"), py::arg("z"), py::arg("eq_tol") = 1e-9);
  m.def(
      "mobius_ball", [](const Matrix& b, double eq_tol) { return mobius_TB(b, tolerance(eq_tol)); }, py::arg("b"),
      py::arg("eq_tol") = 1e-9);

  py::class_<ProductTransitive>(m, "ProductTransitive")
      .def_readonly("b", &ProductTransitive::b)
      .def_readonly("m", &ProductTransitive::m)
      .def_readonly("r", &ProductTransitive::r)
      .def("__call__", &ProductTransitive::apply, py::arg("z"));
  m.def(
      "product_transitive",
      [](Eigen::Index dim_h, Eigen::Index dim_k, const Matrix& w, double eq_tol) {
        return product_domain_transitive(SiegelSpec(dim_h, dim_k), w, tolerance(eq_tol));
      },
      py::arg("dim_h"), py::arg("dim_k"), py::arg("w"), py::arg("eq_tol") = 1e-9);

  py::class_<HyperbolicTransitive>(m, "HyperbolicTransitive")
      .def_readonly("l", &HyperbolicTransitive::l)
      .def_readonly("scale", &HyperbolicTransitive::scale)
      .def_readonly("degenerate", &HyperbolicTransitive::degenerate)
      .def_readonly("a", &HyperbolicTransitive::a)
      .def_readonly("b", &HyperbolicTransitive::b);
  m.def(
      "hyperbolic_transitive",
      [](const Matrix& j, const Vector& z1, double eq_tol) {
        const Tolerance tol = tolerance(eq_tol);
        const auto spec = HyperbolicSpec::make(j, tol);
        return py::make_tuple(hyperbolic_transitive(spec, z1, tol), spec.f());
      },
      py::arg("j"), py::arg("z1"), py::arg("eq_tol") = 1e-9, "Returns (map, f) with map.l @ f = z1.");

  m.def(
      "report",
      [](std::uint64_t seed, int trials, Eigen::Index dim_h, Eigen::Index dim_k, std::optional<std::string> group) {
        RunConfig cfg;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.dim_h = dim_h;
        cfg.dim_k = dim_k;
        validate(cfg);
        py::gil_scoped_release release;
        const Report r = group ? run_group(cfg, *group) : run_verification(cfg);
        return report_to_json(r, false).dump(2);
      },
      py::arg("seed") = 42, py::arg("trials") = 100, py::arg("dim_h") = 2, py::arg("dim_k") = 2,
      py::arg("group") = py::none(), "JSON report body of the invariant suites.");
  m.def("suite_groups", &suite_groups);
}
