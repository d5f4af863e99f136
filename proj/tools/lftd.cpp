#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lftd/autgroup.hpp"
#include "lftd/circular.hpp"
#include "lftd/io.hpp"
#include "lftd/lftdom.hpp"
#include "lftd/random.hpp"
#include "lftd/verify.hpp"

using namespace lftd;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string fmt(Complex z) {
  std::ostringstream os;
  os << std::setprecision(6);
  const double re = std::abs(z.real()) < 5e-13 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag();
  if (im == 0.0) os << re;
  else if (re == 0.0) os << im << "i";
  else os << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
  return os.str();
}

void show(std::ostream& os, const std::string& name, const Matrix& m) {
  os << "  " << name << " =";
  if (m.size() == 1) {
    os << " " << fmt(m(0, 0)) << '\n';
    return;
  }
  os << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << "    [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << fmt(m(r, c));
    os << "]\n";
  }
}

void show_norm(std::ostream& os, const std::string& name, double v) {
  os << "  " << name << " = " << std::scientific << std::setprecision(3) << v << std::defaultfloat << '\n';
}

Matrix mat(Eigen::Index rows, Eigen::Index cols, std::initializer_list<Complex> entries) {
  return make_matrix(rows, cols, std::span<const Complex>(entries.begin(), entries.size()));
}

void symmetry_lines(std::ostream& os, const DomainSpec& dom, const Matrix& y, const Matrix& z,
                    const Tolerance& tol) {
  const LFTMap u = symmetry_U(dom, y, tol);
  const Matrix m = symmetry_coeff_matrix(dom, y, tol);
  const Matrix uz = u.apply(z, tol);
  show(os, "Y", y);
  show(os, "Z", z);
  show(os, "U_Y(Z)", uz);
  show_norm(os, "||U_Y(U_Y(Z)) - Z||", operator_norm(u.apply(uz, tol) - z));
  show_norm(os, "||U_Y(Y) - Y||", operator_norm(u.apply(y, tol) - y));
  show_norm(os, "||M^2 - I||", operator_norm(m * m - identity(m.rows())));
}

int demo(const std::string& id, const RunConfig& cfg, std::ostream& os) {
  const Tolerance& tol = cfg.tol;
  Sampler rng(cfg.seed);
  const Complex i(0.0, 1.0);
  if (id == "0") {
    os << "example 0: C = 0, D = I on full 2x2; U_Y(Z) = 2Y - Z\n";
    const auto dom = example0(OperatorSpace::full(2, 2));
    const Matrix y = rng.matrix(2, 2), z = rng.matrix(2, 2);
    symmetry_lines(os, dom, y, z, tol);
    show(os, "2Y - Z", 2.0 * y - z);
    show_norm(os, "||U_Y(Z) - (2Y - Z)||", operator_norm(symmetry_U(dom, y, tol).apply(z, tol) - (2.0 * y - z)));
    show(os, "M at Y = 0", symmetry_coeff_matrix(dom, Matrix::Zero(2, 2), tol));
    return kExitPass;
  }
  if (id == "1") {
    os << "example 1: invertibles of full 2x2, C = I, D = 0; U_Y(Z) = Y Z^-1 Y\n";
    const auto dom = example1_gi(OperatorSpace::full(2, 2), tol);
    const Matrix y = identity(2) + 0.4 * rng.matrix(2, 2), z = identity(2) + 0.4 * rng.matrix(2, 2);
    symmetry_lines(os, dom, y, z, tol);
    show(os, "Y Z^-1 Y", y * z.inverse() * y);
    show_norm(os, "||U_Y(Z) - Y Z^-1 Y||",
              operator_norm(symmetry_U(dom, y, tol).apply(z, tol) - y * z.inverse() * y));
    const auto scalar = example1_gi(OperatorSpace::full(1, 1), tol);
    show(os, "1x1, Y = 2: M", symmetry_coeff_matrix(scalar, mat(1, 1, {2.0}), tol));
    return kExitPass;
  }
  if (id == "2") {
    os << "example 2: E = diag(1, 0), C = E, D = I - E, Z0 = E on full 2x2\n";
    const Matrix e = mat(2, 2, {1.0, 0.0, 0.0, 0.0});
    const auto dom = example2_projection(OperatorSpace::full(2, 2), e, tol);
    show(os, "X0", dom.x0());
    symmetry_lines(os, dom, dom.base_point(), dom.base_point() + 0.3 * rng.matrix(2, 2), tol);
    const LFTMap pg = potapov_ginzburg(dom.space(), e, tol);
    const Matrix j = identity(2) - 2.0 * e;
    const Matrix z = mat(2, 2, {1.5, 0.1, 0.2, 0.3});
    os << "  Potapov-Ginzburg U_E(Z) = ((E - I)Z + E)(EZ + I - E)^-1, J = I - 2E\n";
    show(os, "Z", z);
    os << "  Z in {J - Z* J Z > 0}: " << (in_contractive_set(j, z, 0.0) ? "yes" : "no") << '\n';
    const Matrix w = pg.apply(z, tol);
    show(os, "U_E(Z)", w);
    show_norm(os, "||U_E(Z)||", operator_norm(w));
    show_norm(os, "||U_E(U_E(Z)) - Z||", operator_norm(pg.apply(w, tol) - z));
    return kExitPass;
  }
  if (id == "4") {
    os << "example 4: complement of the hyperplane (z, c) = -d, c = (1, 0), d = 1\n";
    Vector c(2);
    c << 1.0, 0.0;
    const auto dom = example4_hyperplane(c, 1.0, tol);
    const Matrix a = mat(2, 1, {0.0, 5.0}), b = mat(2, 1, {-1.0, 0.0});
    os << "  z = (0, 5): " << to_string(member(dom, a, tol)) << '\n';
    os << "  z = (-1, 0): " << to_string(member(dom, b, tol)) << '\n';
    symmetry_lines(os, dom, mat(2, 1, {0.5, i}), mat(2, 1, {2.0, -1.0}), tol);
    return kExitPass;
  }
  if (id == "5") {
    os << "example 5: {Z : (Zx, y) != -d}, C = x y*, D = d I on full 2x2\n";
    const Vector x = rng.unit_vector(2), y = rng.unit_vector(2);
    const Complex d = 0.5 + 0.5 * i;
    const auto dom = example5_rank_one(OperatorSpace::full(2, 2), x, y, d, tol);
    show(os, "Z0 = (1 - d) y x*", dom.base_point());
    const Matrix z = rng.matrix(2, 2);
    const Complex s = d + y.dot(z * x);
    os << "  d + (Zx, y) = " << fmt(s) << ", CZ + D invertible: "
       << (try_invert(dom.denominator(z), tol) ? "yes" : "no") << '\n';
    symmetry_lines(os, dom, dom.base_point(), z, tol);
    return kExitPass;
  }
  if (id == "6") {
    os << "example 6: quadric complement (z, conj z) != 0 in C^3 on the spin factor\n";
    const auto q = example6_quadric(3, tol);
    Vector yv(3), zv(3), bad(3);
    yv << 1.0, 0.5 * i, 0.2;
    zv << 0.3, -1.0, 0.4 * i;
    bad << 1.0, i, 0.0;
    os << "  (1, i, 0): " << to_string(member(q.domain, q.embed(bad), tol)) << '\n';
    symmetry_lines(os, q.domain, q.embed(yv), q.embed(zv), tol);
    const Vector lft = q.coords(symmetry_U(q.domain, q.embed(yv), tol).apply(q.embed(zv), tol));
    const Vector closed = QuadricDomain::symmetry_closed_form(yv, zv);
    show(os, "U_y(z) via the LFT", lft);
    show(os, "(2(z, y)y - (y, y)z) / (z, z)", closed);
    show_norm(os, "difference", (lft - closed).norm());
    return kExitPass;
  }
  if (id == "siegel") {
    os << "Siegel-type domain I + Z1* Z1 < Z2* Z2, dim_h = dim_k = 1\n";
    const SiegelSpec spec(1, 1);
    const double t = 0.5;
    const Matrix l = mat(2, 2, {std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t)});
    const Matrix u = mat(1, 1, {std::polar(1.0, 0.7)});
    const SiegelMap h = siegel_linear_auto(spec, l, u, tol);
    const Matrix z = mat(2, 1, {0.0, 2.0});
    show(os, "L", l);
    show_norm(os, "||L* J L - J||", operator_norm(l.adjoint() * spec.j() * l - spec.j()));
    show(os, "h(Z) = L Z U at (0, 2)", h.apply(z));
    os << "  h(Z) in domain: " << (siegel_member(spec, h.apply(z), tol) ? "yes" : "no") << '\n';
    const Matrix tz = cayley_T(spec, z, tol);
    show(os, "T(Z)", tz);
    show_norm(os, "||T(Z)||", operator_norm(tz));
    show_norm(os, "||T(T(Z)) - Z||", operator_norm(cayley_T(spec, tz, tol) - z));
    return kExitPass;
  }
  if (id == "exterior") {
    os << "exterior domain I < Z* Z and L(Z) = P Z Q on full 2x2\n";
    const auto space = OperatorSpace::full(2, 2);
    const Matrix p = rng.unitary(2), q = rng.unitary(2);
    const auto l = SpaceLinearMap::from_function(space, [&](const Matrix& z) { return Matrix(p * z * q); });
    const Matrix z = mat(2, 2, {1.5, 0.0, 0.0, 2.0});
    os << "  Z = diag(1.5, 2) member: " << (exterior_member(space, z, tol) ? "yes" : "no")
       << ", L(Z) member: " << (exterior_member(space, l.apply(z), tol) ? "yes" : "no") << '\n';
    const auto rep = isometry_inverse_identity_check(l, tol, cfg.seed, 100);
    show_norm(os, "max ||L(Z^-1) - U L(Z)^-1 U|| / (1 + ||Z^-1||)", rep.identity_residual);
    show_norm(os, "||U* U - I||", rep.unitary_residual);
    const auto ext = exterior_linear_auto_check(l, tol, cfg.seed, 100);
    os << "  membership preserved on " << ext.preserved << " of " << ext.samples << " samples\n";
    return kExitPass;
  }
  if (id == "product") {
    os << "product-type domain Z1* Z1 < Z2* Z2, W = (0.5, 2)\n";
    const SiegelSpec spec(1, 1);
    const Matrix w = mat(2, 1, {0.5, 2.0});
    const auto l = product_domain_transitive(spec, w, tol);
    show(os, "B = W1 W2^-1", l.b);
    show(os, "M", l.m);
    show(os, "R = (I - B* B)^1/2 W2", l.r);
    show(os, "L([0; I])", l.apply(mat(2, 1, {0.0, 1.0})));
    show_norm(os, "||M* J M - J||", operator_norm(l.m.adjoint() * spec.j() * l.m - spec.j()));
    return kExitPass;
  }
  if (id == "hyperbolic") {
    os << "hyperbolic domain (Jz, z) < 0, J = diag(1, -1, -1), z1 = (0, 1, 0)\n";
    const Matrix j = mat(3, 3, {1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0});
    const auto spec = HyperbolicSpec::make(j, tol);
    Vector z1(3);
    z1 << 0.0, 1.0, 0.0;
    const auto l = hyperbolic_transitive(spec, z1, tol);
    os << "  degenerate branch: " << (l.degenerate ? "yes" : "no") << ", a = " << l.a << ", b = " << l.b
       << ", c = " << l.scale << '\n';
    show(os, "pre = L_-w1", l.pre);
    show(os, "L2", l.l2);
    show(os, "L_w", l.lw);
    show(os, "L1", l.l1);
    show(os, "L", l.l);
    show_norm(os, "||L f - z1||", (l.l * spec.f() - z1).norm());
    show_norm(os, "||L* J L - c J||", operator_norm(l.l.adjoint() * j * l.l - l.scale * j));
    return kExitPass;
  }
  std::cerr << "unknown demo id '" << id << "' (expected 0, 1, 2, 4, 5, 6, siegel, exterior, product, hyperbolic)\n";
  return kExitUsage;
}

void write_out(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domains of linear fractional transformations: verification, demos and transitive chains"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  long long trials = cfg.trials;
  long long dim_h = cfg.dim_h, dim_k = cfg.dim_k;
  double tol_eq = cfg.tol.eq_tol;
  std::string out;
  app.add_option("--seed", cfg.seed, "seed of the pseudo-random generator");
  app.add_option("--trials", trials, "trials per suite");
  app.add_option("--dim-h", dim_h, "dimension of H (1..8)");
  app.add_option("--dim-k", dim_k, "dimension of K (1..8)");
  app.add_option("--tol", tol_eq, "equality tolerance; the invertibility tolerance is a tenth of it");
  app.add_option("--out", out, "write the JSON document to this file");

  auto* verify = app.add_subcommand("verify", "run every invariant suite and print one line per suite");
  std::string group;
  verify->add_option("--suite", group, "run one suite group only")->check(CLI::IsMember(suite_groups()));
  bool json = false;
  verify->add_flag("--json", json, "print the JSON report instead of the table");

  auto* report = app.add_subcommand("report", "print the JSON report body (no timing fields)");
  bool timing = false;
  report->add_flag("--timing", timing, "include elapsed times");

  auto* demo_cmd = app.add_subcommand("demo", "evaluate an example at small dimensions");
  std::string demo_id;
  demo_cmd->add_option("id", demo_id, "0, 1, 2, 4, 5, 6, siegel, exterior, product or hyperbolic")->required();

  auto* transit = app.add_subcommand("transit", "build a chain of symmetries carrying Z0 to a target");
  std::string domain_file, target_file, path_file;
  transit->add_option("domain", domain_file, "domain JSON file")->required();
  transit->add_option("target", target_file, "target matrix JSON file")->required();
  transit->add_option("--path", path_file, "path JSON file (array of matrices from Z0 to the target)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (trials < 1 || trials > kMaxTrials) throw Error(ErrorKind::InvalidArgument, "--trials must lie in [1, 1000000]");
    if (dim_h < 1 || dim_h > kMaxDim || dim_k < 1 || dim_k > kMaxDim)
      throw Error(ErrorKind::InvalidArgument, "--dim-h and --dim-k must lie in [1, 8]");
    if (!(tol_eq > 0.0) || !std::isfinite(tol_eq)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
    cfg.trials = static_cast<int>(trials);
    cfg.dim_h = dim_h;
    cfg.dim_k = dim_k;
    cfg.tol = Tolerance::from_eq(tol_eq);
    validate(cfg);
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify->parsed() || report->parsed()) {
      cfg.scenario = verify->parsed() ? Scenario::Verify : Scenario::Report;
      const Report r = group.empty() ? run_verification(cfg) : run_group(cfg, group);
      const bool with_timing = verify->parsed() || timing;
      const std::string body = report_to_json(r, with_timing).dump(2) + "\n";
      if (!out.empty()) write_out(out, body);
      if (report->parsed() || json) std::cout << body;
      else std::cout << report_to_text(r, true);
      return r.passed() ? kExitPass : kExitFail;
    }
    if (demo_cmd->parsed()) {
      cfg.scenario = Scenario::Demo;
      return demo(demo_id, cfg, std::cout);
    }
    if (transit->parsed()) {
      cfg.scenario = Scenario::Transit;
      std::optional<DomainSpec> dom;
      Matrix target;
      std::optional<std::vector<Matrix>> path;
      try {
        dom.emplace(domain_from_json(read_json_file(domain_file), cfg.tol));
        target = matrix_from_json(read_json_file(target_file));
        if (!path_file.empty()) path = path_from_json(read_json_file(path_file));
      } catch (const Error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitUsage;
      }
      const AutomorphismChain chain = transitive_chain(*dom, target, path, cfg.tol);
      const std::string body = chain_to_json(chain).dump(2) + "\n";
      if (!out.empty()) {
        write_out(out, body);
        std::cout << chain.factors.size() << " factors, residual " << chain.residual << '\n';
      } else {
        std::cout << body;
      }
      return chain.residual <= 1e-8 * (1.0 + operator_norm(target)) ? kExitPass : kExitFail;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
