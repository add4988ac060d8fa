#include "ssmx/point_cloud.hpp"

#include <stdexcept>
#include <string>

namespace ssmx {

void validate(const TimeOrderedPointCloud& topc) {
  if (topc.points.rows() < 2) {
    throw std::invalid_argument("point cloud needs at least 2 samples, got " +
                                std::to_string(topc.points.rows()));
  }
  if (topc.points.cols() < 1) {
    throw std::invalid_argument("point cloud needs dimension >= 1");
  }
  if (topc.timestamps.size() != topc.points.rows()) {
    throw std::invalid_argument("timestamp count does not match sample count");
  }
  for (Index i = 1; i < topc.timestamps.size(); ++i) {
    if (!(topc.timestamps[i] > topc.timestamps[i - 1])) {
      throw std::invalid_argument("timestamps must be strictly increasing");
    }
  }
}

Vector uniform_timestamps(Index n, double dt) {
  return Vector::LinSpaced(n, 0.0, dt * static_cast<double>(n - 1));
}

}  // namespace ssmx
