#include <doctest.h>

#include <limits>

#include "lftd/io.hpp"
#include "lftd/random.hpp"
#include "oracles.hpp"

using namespace lftd;
using oracle::mat;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("matrix round trip is exact") {
  Sampler rng(1);
  for (int i = 0; i < 50; ++i) {
    const Matrix m = rng.matrix(rng.integer(1, 4), rng.integer(1, 4)) * std::pow(10.0, rng.uniform(-20.0, 20.0));
    const Json j = matrix_to_json(m);
    const Matrix back = matrix_from_json(parse_json(j.dump(), "matrix"));
    CHECK((back - m).norm() == 0.0);
  }
  const Matrix third = mat(1, 1, {1.0 / 3.0});
  CHECK(matrix_to_json(third).dump().find("0.3333333333333333") != std::string::npos);
}

TEST_CASE("matrix parsing") {
  const Matrix m = matrix_from_json(parse_json(R"({"rows":1,"cols":2,"re":[[1,2]],"im":[[0,-1]]})", "m"));
  CHECK(m(0, 0) == Complex(1.0, 0.0));
  CHECK(m(0, 1) == Complex(2.0, -1.0));
  CHECK(kind_of([] { matrix_from_json(parse_json(R"({"rows":1,"cols":2,"re":[[1]],"im":[[0]]})", "m")); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { matrix_from_json(parse_json(R"({"rows":1,"cols":1,"re":[["x"]],"im":[[0]]})", "m")); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_json(R"({"rows":1,"cols":1,"re":[[NaN]],"im":[[0]]})", "m"); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_json(R"({"rows":1,"cols":1,"re":[[Infinity]],"im":[[0]]})", "m"); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_json("{", "m"); }) == ErrorKind::InvalidArgument);
  Json j = matrix_to_json(mat(1, 1, {1.0}));
  j["re"][0][0] = std::numeric_limits<double>::infinity();
  CHECK(kind_of([&] { matrix_from_json(j); }) == ErrorKind::NonFinite);
}

TEST_CASE("domain and path parsing") {
  const Tolerance tol;
  const Json j = parse_json(R"({"space":"full",
    "C":{"rows":1,"cols":1,"re":[[1]],"im":[[0]]},
    "D":{"rows":1,"cols":1,"re":[[0]],"im":[[0]]},
    "Z0":{"rows":1,"cols":1,"re":[[1]],"im":[[0]]}})",
                            "domain");
  const DomainSpec dom = domain_from_json(j, tol);
  CHECK(dom.space().is_full());
  CHECK(std::abs(dom.x0()(0, 0) - 1.0) == 0.0);
  const DomainSpec again = domain_from_json(parse_json(domain_to_json(dom).dump(), "domain"), tol);
  CHECK((again.x0() - dom.x0()).norm() == 0.0);
  CHECK(again.space().dimension() == 1);

  Json bad = j;
  bad["space"] = "diagonal";
  CHECK(kind_of([&] { domain_from_json(bad, tol); }) == ErrorKind::InvalidArgument);
  Json basis = j;
  basis["space"] = Json{{"basis", Json::array({matrix_to_json(mat(1, 1, {1.0}))})}};
  CHECK(domain_from_json(basis, tol).space().dimension() == 1);

  const Json p = Json::array({matrix_to_json(mat(1, 1, {1.0})), matrix_to_json(mat(1, 1, {2.0}))});
  CHECK(path_from_json(p).size() == 2);
  CHECK(path_from_json(Json{{"path", p}}).size() == 2);
  CHECK(kind_of([] { path_from_json(Json{{"x", 1}}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("chain serialization") {
  const Tolerance tol;
  const auto dom = new_domain(OperatorSpace::full(1, 1), mat(1, 1, {1.0}), mat(1, 1, {0.0}), mat(1, 1, {1.0}), tol);
  const auto chain = transitive_chain(dom, mat(1, 1, {1.2}), std::nullopt, tol);
  const Json j = chain_to_json(chain);
  CHECK(j["factors"].size() == chain.factors.size());
  CHECK(j["residual"].get<double>() == chain.residual);
  CHECK(j.contains("waypoints"));
}
