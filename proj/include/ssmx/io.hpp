#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ssmx/doppler.hpp"
#include "ssmx/eval.hpp"
#include "ssmx/ibdtw.hpp"
#include "ssmx/persistence.hpp"
#include "ssmx/ssm.hpp"
#include "ssmx/trajectory.hpp"

namespace ssmx::io {

using Path = std::filesystem::path;

// SSM matrix, CSV: N rows of N comma-separated decimals, no header.
void write_ssm_csv(const Path& path, const SelfSimilarityMatrix& ssm);
SelfSimilarityMatrix read_ssm_csv(const Path& path);

// Binary sidecar: magic "SSM1", two little-endian uint32 sizes (rows, cols),
// then rows*cols little-endian float64, row-major. Also carries CSWMs.
void write_matrix_binary(const Path& path, const Matrix& matrix);
Matrix read_matrix_binary(const Path& path);

/// Reads an SSM from .csv or the binary sidecar, keyed on the extension.
SelfSimilarityMatrix read_ssm_any(const Path& path);

// Trajectory, CSV header `t,x,y`.
void write_trajectory_csv(const Path& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const Path& path, MotionClass motion_class);

// Doppler trace, CSV header `t,f_recvd`.
void write_trace_csv(const Path& path, const DopplerTrace& trace);

// Receiver layout, CSV header `id,x,y`.
void write_receivers_csv(const Path& path, const std::vector<Receiver>& receivers);
std::vector<Receiver> read_receivers_csv(const Path& path);

// Point cloud, CSV header `t,c1..cd`.
void write_topc_csv(const Path& path, const TimeOrderedPointCloud& topc);

// Persistence diagram, CSV header `birth,death,essential`.
void write_diagram_csv(const Path& path, const PersistenceDiagram& diagram);

// Warping path, CSV header `i,j`.
void write_path_csv(const Path& path, const WarpingPath& path_data);

// Experiment outputs.
void write_records_csv(const Path& path, const std::vector<ComparisonRecord>& records);
void write_receiver_records_csv(const Path& path,
                                const std::vector<ReceiverScoreRecord>& records);
void write_pr_csv(const Path& path,
                  const std::vector<std::pair<std::string, MotionClass>>& keys,
                  const std::vector<PRCurve>& curves);
void write_map_csv(const Path& path,
                   const std::vector<std::pair<std::string, double>>& maps);
void write_psnr_csv(const Path& path, const std::vector<PsnrSample>& samples);

/// Serializes records exactly as write_records_csv writes them.
std::string records_to_csv(const std::vector<ComparisonRecord>& records);

/// Shortest decimal form that round-trips a double.
std::string format_double(double v);

}  // namespace ssmx::io
