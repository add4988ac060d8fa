#pragma once

#include <vector>

#include "ssmx/point_cloud.hpp"

namespace ssmx {

/// Symmetric N x N matrix of pairwise distances with zero diagonal.
/// Conditioning steps (smoothing, resampling) reuse this carrier even when
/// they relax the zero-diagonal property; see the individual operations.
struct SelfSimilarityMatrix {
  Matrix values;  // N x N

  Index size() const { return values.rows(); }
};

/// Pairwise Euclidean distances between the samples of a point cloud.
SelfSimilarityMatrix build_ssm(const TimeOrderedPointCloud& topc);

/// Divides every entry by the population standard deviation of the full
/// matrix, leaving the result with unit std. Throws on an all-zero matrix
/// ("degenerate SSM").
SelfSimilarityMatrix znorm_ssm(const SelfSimilarityMatrix& ssm);

struct HistogramMatchResult {
  SelfSimilarityMatrix ssm;
  bool degenerate = false;  // a single-valued input; ssm is the source, unchanged
};

/// Remaps the entries of `source` through a monotone CDF lookup so that its
/// discretized histogram approximates `target`'s. Both histograms use
/// `bins` equal-width bins spanning each matrix's own [min, max]. Mapped
/// values are target bin lower edges, which keeps the minimum (and hence a
/// zero diagonal) fixed when both matrices share their minimum.
HistogramMatchResult histogram_match(const SelfSimilarityMatrix& source,
                                     const SelfSimilarityMatrix& target,
                                     int bins);

/// 2-D Gaussian convolution with a truncated kernel (radius ceil(3*sigma))
/// and reflected boundaries, then re-symmetrized by averaging with the
/// transpose. The diagonal is not forced back to zero: this is a
/// conditioning step for persistence, not an SSM rebuild.
SelfSimilarityMatrix gaussian_smooth(const SelfSimilarityMatrix& ssm, double sigma);

/// Entrywise arithmetic mean. All inputs must share one size.
SelfSimilarityMatrix average_ssms(const std::vector<SelfSimilarityMatrix>& ssms);

/// Bilinear resampling to target_size x target_size on the corner-aligned
/// sample grid, re-symmetrized, diagonal forced to zero.
SelfSimilarityMatrix resize_ssm(const SelfSimilarityMatrix& ssm, Index target_size);

/// Population standard deviation over all coefficients.
double population_std(const Eigen::Ref<const Matrix>& m);

}  // namespace ssmx
