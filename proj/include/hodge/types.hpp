#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hodge {

using Index = Eigen::Index;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;
using SpMatI = Eigen::SparseMatrix<std::int64_t>;
using Triplet = Eigen::Triplet<double>;
using TripletI = Eigen::Triplet<std::int64_t>;

/// Failure categories surfaced to the CLI as exit codes / error objects.
enum class ErrorKind {
  InvalidInput,     // rejected preconditions, malformed files
  SolverFailure,    // factorization or iteration failure
  NotExact,         // minimal_primitive residual above tolerance
  SubspacesTooFar,  // rank-deficient eigenspace overlap
  KernelMismatch,   // float kernel count disagrees with exact arithmetic
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

/// A real-valued p-cochain (discrete p-form) on some carrier complex.
struct Cochain {
  int degree = 0;
  VecX values;
};

/// Integer power f^k for signed k; conformal weights are always of this form.
inline double int_pow(double f, int k) {
  double r = 1.0;
  int a = k < 0 ? -k : k;
  for (int i = 0; i < a; ++i) r *= f;
  return k < 0 ? 1.0 / r : r;
}

}  // namespace hodge
