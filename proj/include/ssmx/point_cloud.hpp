#pragma once

#include <Eigen/Dense>

namespace ssmx {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// N time-indexed samples in R^d, one sample per row.
struct TimeOrderedPointCloud {
  Matrix points;      // N x d
  Vector timestamps;  // N, seconds, strictly increasing

  Index size() const { return points.rows(); }
  Index dim() const { return points.cols(); }
};

/// Throws std::invalid_argument if the cloud violates its invariants
/// (N >= 2, d >= 1, timestamps strictly increasing and matching N).
void validate(const TimeOrderedPointCloud& topc);

/// n equally spaced timestamps 0, dt, 2*dt, ...
Vector uniform_timestamps(Index n, double dt);

}  // namespace ssmx
