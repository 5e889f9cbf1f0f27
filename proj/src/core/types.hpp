#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>

namespace stpe {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Compressed column storage throughout; UMFPACK consumes it directly.
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

}  // namespace stpe
