#pragma once

#include <vector>

#include "ssmx/ssm.hpp"

namespace ssmx {

struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;  // >= birth
  bool essential = false;
};

/// Multiset of (birth, death) pairs from a 0-dimensional level-set
/// filtration. Zero-persistence pairs are dropped; the one essential class
/// of a connected domain is kept as (global min, global max).
struct PersistenceDiagram {
  std::vector<DiagramPoint> points;
};

enum class Filtration { Sublevel, Superlevel };

/// Union-find sweep over the samples of a 1-D signal in increasing value
/// order. Components appear at local minima and merge at local maxima;
/// the elder rule breaks age ties by smaller index.
PersistenceDiagram sublevel_persistence_1d(const Eigen::Ref<const Vector>& signal);

/// Pixel union-find with 8-connectivity; Superlevel runs the sweep on the
/// negated image and reports births/deaths in the original sign convention.
PersistenceDiagram image_persistence(const SelfSimilarityMatrix& image,
                                     Filtration direction);

/// Optimal-matching distance between diagrams with L-infinity ground metric
/// and the diagonal available to finite classes; essential classes match
/// among themselves (extras fall back to the diagonal). p may be infinity,
/// giving the bottleneck distance.
double wasserstein_distance(const PersistenceDiagram& d1,
                            const PersistenceDiagram& d2, double p);

/// Sum of the Wasserstein distances between sublevel diagrams and between
/// superlevel diagrams, after smoothing each image by a Gaussian of
/// std 3 pixels.
double tda_ssm_distance(const SelfSimilarityMatrix& ssm_a,
                        const SelfSimilarityMatrix& ssm_b, double p);

}  // namespace ssmx
