#include "ssmx/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ssmx/ibdtw.hpp"
#include "ssmx/manifold.hpp"
#include "ssmx/parallel.hpp"
#include "ssmx/persistence.hpp"

namespace ssmx {

const char* to_string(Fusion f) {
  switch (f) {
    case Fusion::Ind: return "Ind";
    case Fusion::IndAvg: return "IndAvg";
    case Fusion::Joint: return "Joint";
    case Fusion::Isomap: return "Isomap";
  }
  return "Unknown";
}

const char* to_string(Normalization n) {
  return n == Normalization::Std ? "Std" : "HistMatch";
}

const char* to_string(Metric m) { return m == Metric::IBDTW ? "IBDTW" : "TDA"; }

std::string method_name(const MethodConfig& m) {
  return std::string(to_string(m.fusion)) + "-" + to_string(m.normalization) +
         "-" + to_string(m.metric);
}

MethodConfig method_from_string(const std::string& name) {
  const auto first = name.find('-');
  const auto second = name.find('-', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::invalid_argument("method name must look like Joint-Std-IBDTW, got: " + name);
  }
  const std::string fusion = name.substr(0, first);
  const std::string norm = name.substr(first + 1, second - first - 1);
  const std::string metric = name.substr(second + 1);

  MethodConfig m;
  if (fusion == "Ind") m.fusion = Fusion::Ind;
  else if (fusion == "IndAvg") m.fusion = Fusion::IndAvg;
  else if (fusion == "Joint") m.fusion = Fusion::Joint;
  else if (fusion == "Isomap") m.fusion = Fusion::Isomap;
  else throw std::invalid_argument("unknown fusion: " + fusion);

  if (norm == "Std") m.normalization = Normalization::Std;
  else if (norm == "HistMatch") m.normalization = Normalization::HistMatch;
  else throw std::invalid_argument("unknown normalization: " + norm);

  if (metric == "IBDTW") m.metric = Metric::IBDTW;
  else if (metric == "TDA") m.metric = Metric::TDA;
  else throw std::invalid_argument("unknown metric: " + metric);
  return m;
}

std::vector<MethodConfig> all_methods() {
  std::vector<MethodConfig> out;
  for (Metric metric : {Metric::IBDTW, Metric::TDA}) {
    for (Fusion fusion : {Fusion::Ind, Fusion::IndAvg, Fusion::Joint, Fusion::Isomap}) {
      for (Normalization norm : {Normalization::Std, Normalization::HistMatch}) {
        out.push_back({fusion, norm, metric});
      }
    }
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
  const auto splitmix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  };
  std::uint64_t state = splitmix(master);
  for (std::uint64_t tag : tags) {
    state = splitmix(state ^ splitmix(tag));
  }
  return state;
}

namespace {

struct DiagramPair {
  PersistenceDiagram sub;
  PersistenceDiagram super;
};

DiagramPair smoothed_diagrams(const SelfSimilarityMatrix& ssm) {
  const SelfSimilarityMatrix smooth = gaussian_smooth(ssm, 3.0);
  return {image_persistence(smooth, Filtration::Sublevel),
          image_persistence(smooth, Filtration::Superlevel)};
}

// One Doppler draw reduced to its comparison-ready SSMs (already resized).
struct DrawData {
  std::vector<SelfSimilarityMatrix> ind;  // one per receiver
  SelfSimilarityMatrix ind_avg;
  SelfSimilarityMatrix joint;
  SelfSimilarityMatrix isomap;
  std::vector<double> psnr_db;  // one per receiver
};

const SelfSimilarityMatrix& fused_ssm(const DrawData& draw, Fusion fusion) {
  switch (fusion) {
    case Fusion::IndAvg: return draw.ind_avg;
    case Fusion::Joint: return draw.joint;
    case Fusion::Isomap: return draw.isomap;
    default: throw std::logic_error("fused_ssm does not cover Ind");
  }
}

struct ScoredPair {
  double score = 0.0;
  int hist_direction = 0;
};

// Metric evaluation on already-normalized SSMs.
double metric_score(const SelfSimilarityMatrix& a, const SelfSimilarityMatrix& b,
                    Metric metric, double p) {
  if (metric == Metric::IBDTW) return ibdtw_distance(a, b);
  return tda_ssm_distance(a, b, p);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.draws_per_action < 1) {
    throw std::invalid_argument("draws_per_action must be >= 1");
  }
  if (config.receivers.empty()) {
    throw std::invalid_argument("at least one receiver required");
  }
  if (config.methods.empty()) {
    throw std::invalid_argument("method list must be nonempty");
  }

  const int draws = config.draws_per_action;
  const auto n_actions = static_cast<int>(std::size(kMotionClasses));
  const auto n_rx = config.receivers.size();
  const Index sample_count =
      static_cast<Index>(std::llround(config.duration_s * config.sample_rate_hz));
  const int k = config.isomap_k > 0 ? config.isomap_k : default_knn(sample_count);

  // Canonical trajectory per action; draws reuse it so that targets differ
  // from the query templates only by rigid motion and receiver noise.
  std::vector<Trajectory> base_trajectories;
  std::vector<SelfSimilarityMatrix> templates;  // resized speed SSMs
  base_trajectories.reserve(static_cast<size_t>(n_actions));
  for (int a = 0; a < n_actions; ++a) {
    const auto seed = derive_seed(config.master_seed, {0x7261331, static_cast<std::uint64_t>(a)});
    base_trajectories.push_back(generate_trajectory(
        kMotionClasses[a], config.duration_s, config.sample_rate_hz, seed));
    templates.push_back(resize_ssm(build_ssm(speed_profile(base_trajectories.back())),
                                   config.resize_side));
  }

  const double global_noise_std =
      config.noise_relative_std * config.carrier_hz * config.reference_speed / kSpeedOfLight;

  // Phase 1: simulate all draws.
  std::vector<DrawData> draw_data(static_cast<size_t>(n_actions * draws));
  parallel_for(draw_data.size(), config.jobs, [&](std::size_t slot) {
    const int a = static_cast<int>(slot) / draws;
    const int d = static_cast<int>(slot) % draws;

    std::mt19937_64 xf_rng(derive_seed(config.master_seed,
                                       {0x7866, static_cast<std::uint64_t>(a),
                                        static_cast<std::uint64_t>(d)}));
    const RigidTransform xf = sample_rigid_transform(xf_rng);
    const Trajectory traj = apply_rigid_transform(base_trajectories[static_cast<size_t>(a)], xf);

    DrawData data;
    std::vector<DopplerTrace> noisy;
    noisy.reserve(n_rx);
    for (size_t r = 0; r < n_rx; ++r) {
      const DopplerTrace clean = simulate_doppler(traj, config.receivers[r],
                                                  config.carrier_hz, config.apply_delay);
      const auto noise_seed = derive_seed(config.master_seed,
                                          {0x6e6f697365, static_cast<std::uint64_t>(a),
                                           static_cast<std::uint64_t>(d),
                                           static_cast<std::uint64_t>(r)});
      DopplerTrace with_noise =
          config.noise_base == NoiseBase::PerTraceMax
              ? add_receiver_noise(clean, {config.noise_relative_std, noise_seed})
              : add_noise_absolute(clean, global_noise_std, noise_seed);
      data.psnr_db.push_back(compute_psnr(clean, with_noise, config.reference_speed));
      noisy.push_back(std::move(with_noise));
    }

    std::vector<SelfSimilarityMatrix> ind_native;
    ind_native.reserve(n_rx);
    for (size_t r = 0; r < n_rx; ++r) {
      ind_native.push_back(build_ssm(build_joint_topc({noisy[r]})));
    }
    for (const auto& ssm : ind_native) {
      data.ind.push_back(resize_ssm(ssm, config.resize_side));
    }
    data.ind_avg = resize_ssm(average_ssms(ind_native), config.resize_side);

    const TimeOrderedPointCloud joint = build_joint_topc(noisy);
    data.joint = resize_ssm(build_ssm(joint), config.resize_side);
    data.isomap = resize_ssm(build_ssm(isomap_embed(joint, 1, k)), config.resize_side);

    draw_data[slot] = std::move(data);
  });

  // Phase 2: cache the Std-normalized variants and their diagrams.
  const bool need_std = std::any_of(config.methods.begin(), config.methods.end(),
                                    [](const MethodConfig& m) {
                                      return m.normalization == Normalization::Std;
                                    });
  const bool need_std_tda = std::any_of(config.methods.begin(), config.methods.end(),
                                        [](const MethodConfig& m) {
                                          return m.normalization == Normalization::Std &&
                                                 m.metric == Metric::TDA;
                                        });

  std::vector<SelfSimilarityMatrix> templates_z(templates.size());
  std::vector<DiagramPair> template_diagrams(templates.size());
  struct DrawStdCache {
    std::vector<SelfSimilarityMatrix> ind;
    SelfSimilarityMatrix ind_avg, joint, isomap;
    std::vector<DiagramPair> ind_diagrams;
    DiagramPair ind_avg_diagrams, joint_diagrams, isomap_diagrams;
  };
  std::vector<DrawStdCache> std_cache(draw_data.size());

  if (need_std) {
    for (size_t a = 0; a < templates.size(); ++a) {
      templates_z[a] = znorm_ssm(templates[a]);
      if (need_std_tda) template_diagrams[a] = smoothed_diagrams(templates_z[a]);
    }
    parallel_for(draw_data.size(), config.jobs, [&](std::size_t slot) {
      const DrawData& data = draw_data[slot];
      DrawStdCache cache;
      for (const auto& ssm : data.ind) {
        cache.ind.push_back(znorm_ssm(ssm));
        if (need_std_tda) cache.ind_diagrams.push_back(smoothed_diagrams(cache.ind.back()));
      }
      cache.ind_avg = znorm_ssm(data.ind_avg);
      cache.joint = znorm_ssm(data.joint);
      cache.isomap = znorm_ssm(data.isomap);
      if (need_std_tda) {
        cache.ind_avg_diagrams = smoothed_diagrams(cache.ind_avg);
        cache.joint_diagrams = smoothed_diagrams(cache.joint);
        cache.isomap_diagrams = smoothed_diagrams(cache.isomap);
      }
      std_cache[slot] = std::move(cache);
    });
  }

  // Phase 3: score every (method, query, target) combination.
  const double p = config.wasserstein_p;
  const int bins = config.histogram_bins;

  const auto score_std_cached = [&](const MethodConfig& m, size_t query,
                                    const SelfSimilarityMatrix& target_z,
                                    const DiagramPair* target_diagrams) {
    if (m.metric == Metric::IBDTW) {
      return ibdtw_distance(templates_z[query], target_z);
    }
    const DiagramPair& q = template_diagrams[query];
    return wasserstein_distance(q.sub, target_diagrams->sub, p) +
           wasserstein_distance(q.super, target_diagrams->super, p);
  };

  const auto score_histmatch = [&](const MethodConfig& m, size_t query,
                                   const SelfSimilarityMatrix& target) {
    const SelfSimilarityMatrix& q = templates[query];
    const SelfSimilarityMatrix q_on_t = histogram_match(q, target, bins).ssm;
    const SelfSimilarityMatrix t_on_q = histogram_match(target, q, bins).ssm;
    const double s1 = metric_score(q_on_t, target, m.metric, p);
    const double s2 = metric_score(q, t_on_q, m.metric, p);
    return s1 <= s2 ? ScoredPair{s1, 1} : ScoredPair{s2, 2};
  };

  struct Task {
    size_t method_idx, query, slot;
  };
  std::vector<Task> tasks;
  tasks.reserve(config.methods.size() * templates.size() * draw_data.size());
  for (size_t mi = 0; mi < config.methods.size(); ++mi) {
    for (size_t q = 0; q < templates.size(); ++q) {
      for (size_t slot = 0; slot < draw_data.size(); ++slot) {
        tasks.push_back({mi, q, slot});
      }
    }
  }

  struct TaskResult {
    ScoredPair pair;
    std::vector<ScoredPair> per_receiver;  // Ind only
  };
  std::vector<TaskResult> results(tasks.size());

  parallel_for(tasks.size(), config.jobs, [&](std::size_t ti) {
    const Task& task = tasks[ti];
    const MethodConfig& m = config.methods[task.method_idx];
    const DrawData& data = draw_data[task.slot];
    TaskResult result;

    if (m.fusion == Fusion::Ind) {
      double sum = 0.0;
      for (size_t r = 0; r < data.ind.size(); ++r) {
        ScoredPair sp;
        if (m.normalization == Normalization::Std) {
          const DiagramPair* diagrams =
              need_std_tda ? &std_cache[task.slot].ind_diagrams[r] : nullptr;
          sp.score = score_std_cached(m, task.query, std_cache[task.slot].ind[r], diagrams);
        } else {
          sp = score_histmatch(m, task.query, data.ind[r]);
        }
        sum += sp.score;
        result.per_receiver.push_back(sp);
      }
      result.pair.score = sum / static_cast<double>(data.ind.size());
      result.pair.hist_direction = 0;
    } else {
      if (m.normalization == Normalization::Std) {
        const DrawStdCache& cache = std_cache[task.slot];
        const SelfSimilarityMatrix* target = nullptr;
        const DiagramPair* diagrams = nullptr;
        switch (m.fusion) {
          case Fusion::IndAvg: target = &cache.ind_avg; diagrams = &cache.ind_avg_diagrams; break;
          case Fusion::Joint: target = &cache.joint; diagrams = &cache.joint_diagrams; break;
          default: target = &cache.isomap; diagrams = &cache.isomap_diagrams; break;
        }
        result.pair.score = score_std_cached(m, task.query, *target, diagrams);
      } else {
        result.pair = score_histmatch(m, task.query, fused_ssm(data, m.fusion));
      }
    }
    results[ti] = std::move(result);
  });

  // Assemble record lists in task order (deterministic, job-count independent).
  ExperimentResult out;
  out.records.reserve(tasks.size());
  for (size_t ti = 0; ti < tasks.size(); ++ti) {
    const Task& task = tasks[ti];
    const MethodConfig& m = config.methods[task.method_idx];
    const int a = static_cast<int>(task.slot) / draws;
    const int d = static_cast<int>(task.slot) % draws;

    ComparisonRecord rec;
    rec.method = m;
    rec.query_class = kMotionClasses[task.query];
    rec.target_class = kMotionClasses[a];
    rec.draw_id = d;
    rec.score = results[ti].pair.score;
    rec.hist_direction = results[ti].pair.hist_direction;
    out.records.push_back(rec);

    for (size_t r = 0; r < results[ti].per_receiver.size(); ++r) {
      ReceiverScoreRecord rr;
      rr.method = m;
      rr.query_class = rec.query_class;
      rr.target_class = rec.target_class;
      rr.draw_id = d;
      rr.receiver_id = config.receivers[r].id;
      rr.score = results[ti].per_receiver[r].score;
      rr.hist_direction = results[ti].per_receiver[r].hist_direction;
      out.receiver_records.push_back(rr);
    }
  }

  double psnr_sum = 0.0;
  size_t psnr_count = 0;
  for (size_t slot = 0; slot < draw_data.size(); ++slot) {
    const int a = static_cast<int>(slot) / draws;
    const int d = static_cast<int>(slot) % draws;
    for (size_t r = 0; r < draw_data[slot].psnr_db.size(); ++r) {
      out.psnr_samples.push_back({kMotionClasses[a], d, config.receivers[r].id,
                                  draw_data[slot].psnr_db[r]});
      if (std::isfinite(draw_data[slot].psnr_db[r])) {
        psnr_sum += draw_data[slot].psnr_db[r];
        ++psnr_count;
      }
    }
  }
  out.mean_psnr_db = psnr_count > 0 ? psnr_sum / static_cast<double>(psnr_count)
                                    : std::numeric_limits<double>::infinity();
  return out;
}

PRCurve precision_recall_curve(const std::vector<ComparisonRecord>& query_records) {
  size_t relevant_total = 0;
  for (const auto& r : query_records) {
    if (r.target_class == r.query_class) ++relevant_total;
  }
  if (relevant_total == 0 || relevant_total == query_records.size()) {
    throw std::invalid_argument(
        "precision_recall_curve needs at least one relevant and one irrelevant record");
  }

  std::vector<const ComparisonRecord*> sorted;
  sorted.reserve(query_records.size());
  for (const auto& r : query_records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ComparisonRecord* a, const ComparisonRecord* b) {
                     return a->score < b->score;
                   });

  PRCurve curve;
  size_t hits = 0;
  double precision_sum = 0.0;
  for (size_t rank = 0; rank < sorted.size(); ++rank) {
    if (sorted[rank]->target_class == sorted[rank]->query_class) {
      ++hits;
      precision_sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
    curve.precision.push_back(static_cast<double>(hits) / static_cast<double>(rank + 1));
    curve.recall.push_back(static_cast<double>(hits) / static_cast<double>(relevant_total));
  }
  curve.average_precision = precision_sum / static_cast<double>(relevant_total);
  return curve;
}

double mean_average_precision(const std::vector<PRCurve>& curves) {
  if (curves.empty()) {
    throw std::invalid_argument("mean_average_precision needs at least one curve");
  }
  double sum = 0.0;
  for (const auto& c : curves) sum += c.average_precision;
  return sum / static_cast<double>(curves.size());
}

}  // namespace ssmx
