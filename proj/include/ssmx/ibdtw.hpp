#pragma once

#include <utility>
#include <vector>

#include "ssmx/ssm.hpp"

namespace ssmx {

/// Monotone index correspondence between the rows of two SSMs.
struct WarpingPath {
  std::vector<std::pair<Index, Index>> pairs;  // (0,0) ... (M-1,N-1)
  double total_cost = 0.0;
  double normalized_cost = 0.0;  // total_cost / pairs.size()
};

/// M x N matrix of per-row DTW alignment costs between two SSMs.
struct CrossSimilarityWarpMatrix {
  Matrix values;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

/// Classic boundary-anchored DTW cost with local cost |a_i - b_j| and steps
/// {(+1,0),(0,+1),(+1,+1)}.
double dtw_row_cost(const Eigen::Ref<const Vector>& row_a,
                    const Eigen::Ref<const Vector>& row_b);

/// values(i,j) = dtw_row_cost(row i of a, row j of b). Every row of one SSM
/// is tried against every row of the other.
CrossSimilarityWarpMatrix build_cswm(const SelfSimilarityMatrix& ssm_a,
                                     const SelfSimilarityMatrix& ssm_b);

/// Minimum node-sum path from the upper-left to the lower-right corner under
/// the DTW step set. Ties prefer the diagonal step, then the down step.
WarpingPath extract_warping_path(const CrossSimilarityWarpMatrix& cswm);

/// Length-normalized warping-path cost of the CSWM: the isometry-blind DTW
/// distance between the underlying point clouds.
double ibdtw_distance(const SelfSimilarityMatrix& ssm_a,
                      const SelfSimilarityMatrix& ssm_b);

}  // namespace ssmx
