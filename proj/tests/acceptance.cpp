#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "lftd/autgroup.hpp"
#include "lftd/circular.hpp"
#include "lftd/corpus.hpp"
#include "lftd/random.hpp"
#include "lftd/verify.hpp"
#include "oracles.hpp"

using namespace lftd;

namespace {

// Pinned tolerances and counts.
constexpr double kSymInvolution = 1e-8;
constexpr double kSymFixed = 1e-10;
constexpr double kSymSquare = 1e-10;
constexpr double kSymDerivative = 1e-6;
constexpr double kSymSeconds = 10.0;
constexpr int kSymTrials = 200;

constexpr double kChainComposite = 1e-8;
constexpr double kChainStep = 0.9;
constexpr double kChainFold = 1e-9;
constexpr int kChainPairsPerDomain = 50;
constexpr int kChainProbes = 20;

constexpr double kAffine = 1e-9;
constexpr int kAffineTrials = 100;

constexpr double kPgInvolution = 1e-9;
constexpr int kPgPointsPerE = 100;
constexpr int kPgProjections = 3;

constexpr double kLiouvilleEnd = 1e-8;
constexpr double kLiouvilleIdentity = 1e-8;
constexpr double kLiouvilleInverse = 1e-9;
constexpr int kLiouvilleGrid = 100;

constexpr int kDetPerDomain = 500;
constexpr int kDetDomains = 4;

constexpr double kCayley = 1e-10;
constexpr double kIsometryIdentity = 1e-10;
constexpr double kTbZero = 1e-12;
constexpr double kTbInverse = 1e-8;
constexpr double kProduct = 1e-10;
constexpr double kHyperEndpoint = 1e-9;
constexpr int kCircularSamples = 100;
constexpr int kHyperCases = 200;
constexpr int kHyperDegenerate = 20;

constexpr double kVerifySeconds = 60.0;

struct Outcome {
  bool ok = true;
  std::vector<std::string> problems;
  std::vector<std::string> facts;

  void fail(const std::string& why) {
    ok = false;
    problems.push_back(why);
  }
  void fact(const std::string& s) { facts.push_back(s); }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Checks a suite record against a pinned bound and a minimum trial count.
void require(Outcome& out, const Report& r, const std::string& name, double bound, int min_trials,
             const std::string& label = "") {
  const SuiteRecord* rec = r.find(name);
  const std::string tag = label.empty() ? name : name + "@" + label;
  if (rec == nullptr) {
    out.fail(tag + " missing");
    return;
  }
  if (!rec->passed) out.fail(tag + " failed: " + rec->note);
  if (!(rec->max_residual <= bound)) out.fail(tag + " residual " + sci(rec->max_residual) + " > " + sci(bound));
  if (rec->trials < min_trials)
    out.fail(tag + " ran " + std::to_string(rec->trials) + " < " + std::to_string(min_trials) + " trials");
}

RunConfig config(int trials, Eigen::Index dim_k, Eigen::Index dim_h, std::uint64_t seed = 42) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.dim_k = dim_k;
  cfg.dim_h = dim_h;
  return cfg;
}

Outcome criterion_symmetry() {
  Outcome out;
  const std::vector<std::pair<Eigen::Index, Eigen::Index>> dims = {{1, 1}, {2, 2}, {2, 3}, {4, 4}};
  double slowest = 0.0;
  for (auto [k, h] : dims) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = run_group(config(kSymTrials, k, h), "symmetry");
    const double s = seconds_since(t0);
    slowest = std::max(slowest, s);
    const std::string label = std::to_string(k) + "x" + std::to_string(h);
    require(out, r, "symmetry.involution", kSymInvolution, kSymTrials, label);
    require(out, r, "symmetry.fixed_point", kSymFixed, kSymTrials, label);
    require(out, r, "symmetry.coefficient_square", kSymSquare, kSymTrials, label);
    require(out, r, "symmetry.derivative", kSymDerivative, kSymTrials, label);
    if (s >= kSymSeconds) out.fail("symmetry run at " + label + " took " + std::to_string(s) + " s");
  }
  out.fact("slowest run " + std::to_string(slowest).substr(0, 5) + " s");

  // Closed forms: 2Y - Z on Example 0 and Y Z^-1 Y on Example 1.
  Sampler rng(2024);
  const Tolerance tol;
  double worst = 0.0;
  for (int i = 0; i < kSymTrials; ++i) {
    const Eigen::Index n = rng.integer(1, 4);
    const bool zero = i % 2 == 0;
    const auto ex = random_example(zero ? ExampleKind::Zero : ExampleKind::Invertibles, n, n, rng, tol);
    const Matrix y = sample_member(ex.dom, rng, tol);
    const Matrix z = sample_member(ex.dom, rng, tol);
    const Matrix expected = zero ? Matrix(2.0 * y - z) : Matrix(y * oracle::gauss_jordan_inverse(z) * y);
    const Matrix got = symmetry_U(ex.dom, y, tol).apply(z, tol);
    worst = std::max(worst, oracle::power_norm(got - expected) / (1.0 + oracle::power_norm(expected)));
  }
  if (worst > kSymInvolution) out.fail("closed-form symmetry residual " + sci(worst));
  out.fact("closed-form residual " + sci(worst));
  return out;
}

Outcome criterion_transitivity() {
  Outcome out;
  const int pairs = kChainPairsPerDomain * static_cast<int>(std::size(kAllExamples));
  for (auto [k, h] : std::vector<std::pair<Eigen::Index, Eigen::Index>>{{1, 1}, {2, 2}, {1, 3}, {4, 4}}) {
    const Report r = run_group(config(2 * kChainPairsPerDomain, k, h), "chain");
    const std::string label = std::to_string(k) + "x" + std::to_string(h);
    require(out, r, "chain.composite", kChainComposite, pairs, label);
    require(out, r, "chain.step_bound", kChainStep, pairs, label);
    require(out, r, "chain.fold", kChainFold, pairs * kChainProbes, label);
    if (const auto* rec = r.find("chain.composite")) out.fact(label + ": " + rec->note);
  }
  return out;
}

Outcome criterion_affine() {
  Outcome out;
  const Report r = run_group(config(kAffineTrials, 2, 2), "affine");
  require(out, r, "affine.compose_UU", kAffine, kAffineTrials);
  require(out, r, "affine.phi", kAffine, kAffineTrials);
  require(out, r, "affine.phi_members", 0.0, kAffineTrials);
  require(out, r, "affine.involution_V", kAffine, kAffineTrials);
  require(out, r, "affine.equivalence", kAffine, kAffineTrials);
  require(out, r, "affine.equivalence_members", 0.0, kAffineTrials);
  return out;
}

Outcome criterion_potapov() {
  Outcome out;
  const Report r = run_group(config(kPgPointsPerE, 2, 2), "potapov");
  require(out, r, "pg.image_in_ball", 0.0, kPgPointsPerE * kPgProjections);
  require(out, r, "pg.involution", kPgInvolution, kPgPointsPerE * kPgProjections);
  if (const auto* rec = r.find("pg.image_in_ball")) out.fact(rec->note);

  // Ball membership rechecked with power iteration.
  const Tolerance tol;
  const auto full = OperatorSpace::full(2, 2);
  Sampler rng(77);
  const std::vector<Matrix> projections = {Matrix::Zero(2, 2), oracle::mat(2, 2, {1.0, 0.0, 0.0, 0.0}),
                                           identity(2)};
  for (const Matrix& e : projections) {
    const LFTMap u = potapov_ginzburg(full, e, tol);
    const Matrix j = identity(2) - 2.0 * e;
    int hits = 0;
    for (int i = 0; i < 100000 && hits < kPgPointsPerE; ++i) {
      const Matrix x = Sampler::with_norm(rng.matrix(2, 2), rng.uniform(0.0, 3.0));
      if (!in_contractive_set(j, x, 1e-9)) continue;
      ++hits;
      if (!(oracle::power_norm(u.apply(x, tol)) < 1.0)) out.fail("image outside the ball");
    }
    if (hits < kPgPointsPerE) out.fail("too few contractive samples");
  }
  return out;
}

Outcome criterion_liouville() {
  Outcome out;
  const Report r = run_group(config(100, 2, 2), "liouville");
  require(out, r, "liouville.endpoints", kLiouvilleEnd, 1);
  require(out, r, "liouville.invertible", 0.0, kLiouvilleGrid);
  require(out, r, "liouville.identity", kLiouvilleIdentity, kLiouvilleGrid);
  require(out, r, "liouville.binomial_inverse", kLiouvilleInverse, kLiouvilleGrid);

  // Scalar Example 1 from 1 to 1.5: f(l) = 1.5^l.
  const Tolerance tol;
  const DomainSpec dom = example1_gi(OperatorSpace::full(1, 1), tol);
  const LiouvilleCurve curve = liouville_curve(dom, oracle::mat(1, 1, {1.5}), tol);
  double worst = 0.0;
  for (int i = 0; i < kLiouvilleGrid; ++i) {
    const Complex lambda = std::polar(0.2 + 1.8 * (i / 10) / 9.0, 0.628 * (i % 10));
    const Complex expected = std::exp(lambda * std::log(1.5));
    worst = std::max(worst, std::abs(curve(lambda)(0, 0) - expected));
  }
  if (worst > kLiouvilleIdentity) out.fail("scalar curve residual " + sci(worst));
  out.fact("scalar curve residual " + sci(worst));
  return out;
}

Outcome criterion_det() {
  Outcome out;
  for (auto [k, h] : std::vector<std::pair<Eigen::Index, Eigen::Index>>{{1, 1}, {2, 2}, {3, 3}, {4, 4}}) {
    const Report r = run_group(config(kDetPerDomain / 5, k, h), "lftdom");
    const std::string label = std::to_string(k) + "x" + std::to_string(h);
    require(out, r, "lftdom.det_membership", 0.0, kDetPerDomain * kDetDomains, label);
    if (const auto* rec = r.find("lftdom.det_membership")) out.fact(label + " " + rec->note);
  }
  return out;
}

Outcome criterion_circular() {
  Outcome out;
  const Report r = run_group(config(kCircularSamples, 2, 2), "circular");
  require(out, r, "circular.cayley_involution", kCayley, kCircularSamples);
  require(out, r, "circular.siegel_maps", 0.0, kCircularSamples);
  require(out, r, "circular.isometry_identity", kIsometryIdentity, 2);
  require(out, r, "circular.tb_ball", 0.0, kCircularSamples);
  require(out, r, "circular.tb_zero", kTbZero, kCircularSamples);
  require(out, r, "circular.tb_inverse", kTbInverse, kCircularSamples);
  require(out, r, "circular.product_endpoint", kProduct, kCircularSamples);
  require(out, r, "circular.product_j_unitary", kProduct, kCircularSamples);
  require(out, r, "circular.hyperbolic_endpoint", kHyperEndpoint, 1);
  require(out, r, "circular.hyperbolic_certificate", kHyperEndpoint, kHyperCases);
  require(out, r, "circular.hyperbolic_degenerate", kHyperEndpoint, kHyperDegenerate);

  // Independent J-unitarity recheck of the hyperbolic maps, including the degenerate branch.
  const Tolerance tol;
  Sampler rng(99);
  int cases = 0, degenerate = 0;
  double worst = 0.0;
  while (cases < kHyperCases) {
    const Eigen::Index n = rng.integer(3, 4);
    Vector eig(n);
    for (Eigen::Index i = 0; i < n; ++i) eig(i) = i == 0 ? 1.0 : (i == n - 1 ? -1.0 : rng.uniform(-2.0, 2.0));
    const Matrix q = rng.unitary(n);
    const Matrix j = q * eig.asDiagonal() * q.adjoint();
    const auto spec = HyperbolicSpec::make(Matrix(0.5 * (j + j.adjoint())), tol);
    Vector z1 = rng.vector(n) * 2.0;
    if (cases % 5 == 0) {
      // zero e and f components, remaining part along a negative direction of the middle block
      Eigen::SelfAdjointEigenSolver<Matrix> es(spec.b_block());
      if (es.eigenvalues()(0) >= 0.0) continue;
      Vector frame_coords = Vector::Zero(n);
      frame_coords.segment(1, n - 2) = es.eigenvectors().col(0);
      z1 = spec.frame() * frame_coords;
    }
    if (!hyperbolic_member(spec, z1, tol)) continue;
    const auto l = hyperbolic_transitive(spec, z1, tol);
    ++cases;
    if (l.degenerate) ++degenerate;
    const Matrix lhs = l.l.adjoint() * spec.j() * l.l;
    worst = std::max(worst, (lhs - l.scale * spec.j()).norm() / (1.0 + std::abs(l.scale)));
    worst = std::max(worst, (l.l * spec.f() - z1).norm());
    if (!(l.scale > 0.0)) out.fail("non-positive J-scale");
  }
  if (worst > kHyperEndpoint) out.fail("hyperbolic recheck residual " + sci(worst));
  if (degenerate < kHyperDegenerate) out.fail("only " + std::to_string(degenerate) + " degenerate cases");
  out.fact("recheck " + std::to_string(cases) + " cases, " + std::to_string(degenerate) + " degenerate, residual " +
           sci(worst));
  if (const auto* rec = r.find("circular.hyperbolic_degenerate")) out.fact("suite " + rec->note);
  return out;
}

int run_cli(const std::string& cli, const std::string& args, const std::string& out_file) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out_file + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_cli(const std::string& cli, const std::string& scratch) {
  Outcome out;
  if (cli.empty()) {
    out.fail("no CLI path given");
    return out;
  }
  const std::string a = scratch + "/acceptance_report_a.json";
  const std::string b = scratch + "/acceptance_report_b.json";
  const int ca = run_cli(cli, "--seed 7 report", a);
  const int cb = run_cli(cli, "--seed 7 report", b);
  if (ca != 0 || cb != 0) out.fail("report exit codes " + std::to_string(ca) + ", " + std::to_string(cb));
  const std::string body = slurp(a);
  if (body.empty()) out.fail("empty report body");
  if (body != slurp(b)) out.fail("report bodies differ");
  out.fact("report body " + std::to_string(body.size()) + " bytes identical");

  const auto t0 = std::chrono::steady_clock::now();
  const int cv = run_cli(cli, "verify", scratch + "/acceptance_verify.txt");
  const double s = seconds_since(t0);
  if (cv != 0) out.fail("default verify exit code " + std::to_string(cv));
  if (s >= kVerifySeconds) out.fail("default verify took " + std::to_string(s) + " s");
  out.fact("default verify " + std::to_string(s).substr(0, 5) + " s");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string scratch = argc > 2 ? argv[2] : ".";

  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "symmetry suite", criterion_symmetry},
      {2, "transitivity chains", criterion_transitivity},
      {3, "affine formulas", criterion_affine},
      {4, "Potapov-Ginzburg transform", criterion_potapov},
      {5, "Liouville curve", criterion_liouville},
      {6, "determinant membership", criterion_det},
      {7, "circular domains", criterion_circular},
      {8, "CLI determinism and runtime", [&] { return criterion_cli(cli, scratch); }},
  };

  int failures = 0;
  for (const auto& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    if (!o.ok) ++failures;
    std::string line = std::string(o.ok ? "PASS" : "FAIL") + "  criterion " + std::to_string(e.id) + ": " + e.title;
    const auto& extra = o.ok ? o.facts : o.problems;
    for (std::size_t i = 0; i < extra.size(); ++i) line += (i == 0 ? "  [" : "; ") + extra[i];
    if (!extra.empty()) line += "]";
    std::cout << line << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
