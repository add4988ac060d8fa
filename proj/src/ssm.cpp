#include "ssmx/ssm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssmx {

double population_std(const Eigen::Ref<const Matrix>& m) {
  const double mean = m.mean();
  const double var = (m.array() - mean).square().mean();
  return std::sqrt(var);
}

SelfSimilarityMatrix build_ssm(const TimeOrderedPointCloud& topc) {
  validate(topc);
  const Index n = topc.size();
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double dist = (topc.points.row(i) - topc.points.row(j)).norm();
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return {std::move(d)};
}

SelfSimilarityMatrix znorm_ssm(const SelfSimilarityMatrix& ssm) {
  const double sd = population_std(ssm.values);
  if (sd <= 0.0) {
    throw std::runtime_error("degenerate SSM");
  }
  return {ssm.values / sd};
}

HistogramMatchResult histogram_match(const SelfSimilarityMatrix& source,
                                     const SelfSimilarityMatrix& target,
                                     int bins) {
  if (bins < 2) {
    throw std::invalid_argument("histogram_match needs bins >= 2");
  }
  const double src_min = source.values.minCoeff();
  const double src_max = source.values.maxCoeff();
  const double tgt_min = target.values.minCoeff();
  const double tgt_max = target.values.maxCoeff();
  if (src_max <= src_min || tgt_max <= tgt_min) {
    return {source, true};
  }

  const auto cdf = [bins](const Matrix& m, double lo, double hi) {
    const double width = (hi - lo) / bins;
    std::vector<double> counts(static_cast<size_t>(bins), 0.0);
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = 0; i < m.rows(); ++i) {
        auto bin = static_cast<long>((m(i, j) - lo) / width);
        bin = std::clamp(bin, 0L, static_cast<long>(bins - 1));
        counts[static_cast<size_t>(bin)] += 1.0;
      }
    }
    const double total = static_cast<double>(m.size());
    double acc = 0.0;
    for (auto& c : counts) {
      acc += c;
      c = acc / total;
    }
    return counts;
  };

  const std::vector<double> src_cdf = cdf(source.values, src_min, src_max);
  const std::vector<double> tgt_cdf = cdf(target.values, tgt_min, tgt_max);

  const double src_width = (src_max - src_min) / bins;
  const double tgt_width = (tgt_max - tgt_min) / bins;

  // Monotone lookup: source bin -> first target bin whose CDF reaches the
  // source CDF, emitted as that bin's lower edge.
  std::vector<double> mapped(static_cast<size_t>(bins));
  int j = 0;
  for (int i = 0; i < bins; ++i) {
    while (j < bins - 1 && tgt_cdf[static_cast<size_t>(j)] < src_cdf[static_cast<size_t>(i)] - 1e-12) {
      ++j;
    }
    mapped[static_cast<size_t>(i)] = tgt_min + tgt_width * j;
  }

  Matrix out(source.values.rows(), source.values.cols());
  for (Index c = 0; c < out.cols(); ++c) {
    for (Index r = 0; r < out.rows(); ++r) {
      auto bin = static_cast<long>((source.values(r, c) - src_min) / src_width);
      bin = std::clamp(bin, 0L, static_cast<long>(bins - 1));
      out(r, c) = mapped[static_cast<size_t>(bin)];
    }
  }
  return {{std::move(out)}, false};
}

namespace {

// Half-sample symmetric reflection: ..., 2, 1, 0 | 0, 1, 2, ... | n-1, n-1, n-2, ...
Index reflect_index(Index i, Index n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

}  // namespace

SelfSimilarityMatrix gaussian_smooth(const SelfSimilarityMatrix& ssm, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian_smooth needs sigma > 0");
  }
  const auto radius = static_cast<Index>(std::ceil(3.0 * sigma));
  Vector kernel(2 * radius + 1);
  for (Index i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * static_cast<double>(i * i) / (sigma * sigma));
  }
  kernel /= kernel.sum();

  const Index n = ssm.values.rows();
  const Index m = ssm.values.cols();

  // Separable passes: columns, then rows.
  Matrix tmp(n, m);
  for (Index c = 0; c < m; ++c) {
    for (Index r = 0; r < n; ++r) {
      double acc = 0.0;
      for (Index k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * ssm.values(reflect_index(r + k, n), c);
      }
      tmp(r, c) = acc;
    }
  }
  Matrix out(n, m);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < m; ++c) {
      double acc = 0.0;
      for (Index k = -radius; k <= radius; ++k) {
        acc += kernel[k + radius] * tmp(r, reflect_index(c + k, m));
      }
      out(r, c) = acc;
    }
  }
  out = ((out + out.transpose()) / 2.0).eval();
  return {std::move(out)};
}

SelfSimilarityMatrix average_ssms(const std::vector<SelfSimilarityMatrix>& ssms) {
  if (ssms.empty()) {
    throw std::invalid_argument("average_ssms needs a nonempty list");
  }
  const Index n = ssms.front().size();
  Matrix acc = Matrix::Zero(n, n);
  for (const auto& s : ssms) {
    if (s.values.rows() != n || s.values.cols() != n) {
      throw std::invalid_argument("average_ssms: size mismatch, expected " +
                                  std::to_string(n) + ", got " +
                                  std::to_string(s.values.rows()));
    }
    acc += s.values;
  }
  acc /= static_cast<double>(ssms.size());
  return {std::move(acc)};
}

SelfSimilarityMatrix resize_ssm(const SelfSimilarityMatrix& ssm, Index target_size) {
  if (target_size < 2) {
    throw std::invalid_argument("resize_ssm needs target_size >= 2");
  }
  const Index n = ssm.values.rows();
  const double scale = static_cast<double>(n - 1) / static_cast<double>(target_size - 1);

  Matrix out(target_size, target_size);
  for (Index i = 0; i < target_size; ++i) {
    const double sr = static_cast<double>(i) * scale;
    const Index r0 = std::min<Index>(static_cast<Index>(sr), n - 2);
    const double fr = sr - static_cast<double>(r0);
    for (Index j = 0; j < target_size; ++j) {
      const double sc = static_cast<double>(j) * scale;
      const Index c0 = std::min<Index>(static_cast<Index>(sc), n - 2);
      const double fc = sc - static_cast<double>(c0);
      out(i, j) = (1.0 - fr) * (1.0 - fc) * ssm.values(r0, c0) +
                  (1.0 - fr) * fc * ssm.values(r0, c0 + 1) +
                  fr * (1.0 - fc) * ssm.values(r0 + 1, c0) +
                  fr * fc * ssm.values(r0 + 1, c0 + 1);
    }
  }
  out = ((out + out.transpose()) / 2.0).eval();
  out.diagonal().setZero();
  return {std::move(out)};
}

}  // namespace ssmx
