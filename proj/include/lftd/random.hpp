#pragma once

#include <cstdint>
#include <random>

#include "lftd/linalg.hpp"
#include "lftd/opspace.hpp"

namespace lftd {

/// Seeded source of random matrices. Entries have independent real and
/// imaginary parts uniform on [-1, 1]; anything needing a norm bound rescales.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive
  Complex complex_uniform();
  Complex unit_phase();
  Matrix matrix(Eigen::Index rows, Eigen::Index cols);
  Vector vector(Eigen::Index n);
  Vector unit_vector(Eigen::Index n);
  Matrix unitary(Eigen::Index n);
  /// Random combination of the basis with uniform complex coefficients.
  Matrix member_of(const OperatorSpace& space);
  /// m rescaled so its operator norm equals target (m unchanged if zero).
  static Matrix with_norm(const Matrix& m, double target);

  /// Independent child generator, derived from this one's stream.
  Sampler split();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lftd
