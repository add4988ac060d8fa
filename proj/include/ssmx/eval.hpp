#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssmx/doppler.hpp"
#include "ssmx/ssm.hpp"
#include "ssmx/trajectory.hpp"

namespace ssmx {

enum class Fusion { Ind, IndAvg, Joint, Isomap };
enum class Normalization { Std, HistMatch };
enum class Metric { IBDTW, TDA };

const char* to_string(Fusion f);
const char* to_string(Normalization n);
const char* to_string(Metric m);

struct MethodConfig {
  Fusion fusion = Fusion::Joint;
  Normalization normalization = Normalization::Std;
  Metric metric = Metric::IBDTW;
};

/// "Joint-Std-IBDTW" and friends.
std::string method_name(const MethodConfig& m);
MethodConfig method_from_string(const std::string& name);

/// The eight fusion x normalization combinations, under both metrics.
std::vector<MethodConfig> all_methods();

struct ComparisonRecord {
  MethodConfig method;
  MotionClass query_class = MotionClass::Straight;
  MotionClass target_class = MotionClass::Straight;
  int draw_id = 0;
  double score = 0.0;
  // 0: not a histogram-matched comparison (or averaged over receivers),
  // 1: query remapped onto target's histogram, 2: the reverse.
  int hist_direction = 0;
};

/// Per-receiver scores behind the Ind records.
struct ReceiverScoreRecord {
  MethodConfig method;
  MotionClass query_class = MotionClass::Straight;
  MotionClass target_class = MotionClass::Straight;
  int draw_id = 0;
  std::string receiver_id;
  double score = 0.0;
  int hist_direction = 0;
};

struct PsnrSample {
  MotionClass action = MotionClass::Straight;
  int draw_id = 0;
  std::string receiver_id;
  double psnr_db = 0.0;
};

/// Base for the noise std: 3% of this trace's own max shift, or 3% of the
/// shift a 50 m/s head-on approach would produce.
enum class NoiseBase { PerTraceMax, GlobalMax };

struct ExperimentConfig {
  std::uint64_t master_seed = 42;
  int draws_per_action = 100;
  std::vector<Receiver> receivers = corner_receivers(4000.0);
  double carrier_hz = 2e9;
  double noise_relative_std = 0.03;
  NoiseBase noise_base = NoiseBase::PerTraceMax;
  double reference_speed = 50.0;  // m/s, the PSNR MAX reference
  int resize_side = 100;
  int isomap_k = 0;  // 0 -> max(5, round(N/20))
  double wasserstein_p = 2.0;
  int histogram_bins = 64;
  double duration_s = 40.0;
  double sample_rate_hz = 5.0;
  bool apply_delay = true;
  std::vector<MethodConfig> methods = all_methods();
  int jobs = 0;  // 0 -> hardware concurrency
};

struct ExperimentResult {
  std::vector<ComparisonRecord> records;
  std::vector<ReceiverScoreRecord> receiver_records;
  std::vector<PsnrSample> psnr_samples;
  double mean_psnr_db = 0.0;
};

/// Runs the full query-by-speed-template experiment: per action and draw a
/// random rigid motion, Doppler simulation at every receiver, calibrated
/// noise, then every configured method scored against the three ideal speed
/// templates. Deterministic in the master seed, independent of job count.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct PRCurve {
  std::vector<double> recall;
  std::vector<double> precision;
  double average_precision = 0.0;
};

/// Records must all share one query class and hold at least one relevant
/// and one irrelevant target. Sorted ascending by score (ties keep input
/// order); AP is the mean precision at the relevant ranks.
PRCurve precision_recall_curve(const std::vector<ComparisonRecord>& query_records);

double mean_average_precision(const std::vector<PRCurve>& curves);

/// Deterministic seed derivation for per-(action, draw, receiver) streams.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

inline constexpr MotionClass kMotionClasses[] = {
    MotionClass::Straight, MotionClass::TakeExit, MotionClass::UTurn};

}  // namespace ssmx
