#include "ssmx/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ssmx::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary SSM format assumes a little-endian host");

[[noreturn]] void fail(const Path& path, const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

std::ofstream open_out(const Path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) fail(path, "cannot open for writing");
  return out;
}

std::ifstream open_in(const Path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) fail(path, "cannot open for reading");
  return in;
}

double parse_double(const Path& path, const std::string& token) {
  double v = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) fail(path, "bad number: '" + token + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  // %.17g round-trips any double; trim to the shortest form that still does.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void write_ssm_csv(const Path& path, const SelfSimilarityMatrix& ssm) {
  auto out = open_out(path);
  for (Index i = 0; i < ssm.values.rows(); ++i) {
    for (Index j = 0; j < ssm.values.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(ssm.values(i, j));
    }
    out << '\n';
  }
}

SelfSimilarityMatrix read_ssm_csv(const Path& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split_csv_line(line)) row.push_back(parse_double(path, cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(path, "ragged rows in SSM CSV");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(path, "empty SSM CSV");
  if (rows.size() != rows.front().size()) fail(path, "SSM CSV must be square");
  const auto n = static_cast<Index>(rows.size());
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return {std::move(m)};
}

void write_matrix_binary(const Path& path, const Matrix& matrix) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out.write("SSM1", 4);
  const auto rows = static_cast<std::uint32_t>(matrix.rows());
  const auto cols = static_cast<std::uint32_t>(matrix.cols());
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  for (Index i = 0; i < matrix.rows(); ++i) {
    for (Index j = 0; j < matrix.cols(); ++j) {
      const double v = matrix(i, j);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  }
  if (!out) fail(path, "write failed");
}

Matrix read_matrix_binary(const Path& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "SSM1", 4) != 0) fail(path, "bad magic, expected SSM1");
  std::uint32_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  if (!in || rows == 0 || cols == 0) fail(path, "bad matrix dimensions");
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::uint32_t i = 0; i < rows; ++i) {
    for (std::uint32_t j = 0; j < cols; ++j) {
      double v = 0.0;
      in.read(reinterpret_cast<char*>(&v), 8);
      m(static_cast<Index>(i), static_cast<Index>(j)) = v;
    }
  }
  if (!in) fail(path, "truncated matrix data");
  return m;
}

SelfSimilarityMatrix read_ssm_any(const Path& path) {
  if (path.extension() == ".csv") return read_ssm_csv(path);
  Matrix m = read_matrix_binary(path);
  if (m.rows() != m.cols()) fail(path, "binary SSM must be square");
  return {std::move(m)};
}

void write_trajectory_csv(const Path& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "t,x,y\n";
  for (Index i = 0; i < traj.size(); ++i) {
    out << format_double(traj.timestamps[i]) << ','
        << format_double(traj.positions(i, 0)) << ','
        << format_double(traj.positions(i, 1)) << '\n';
  }
}

Trajectory read_trajectory_csv(const Path& path, MotionClass motion_class) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "t,x,y") fail(path, "expected header t,x,y");
  std::vector<double> t, x, y;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3) fail(path, "expected 3 columns");
    t.push_back(parse_double(path, cells[0]));
    x.push_back(parse_double(path, cells[1]));
    y.push_back(parse_double(path, cells[2]));
  }
  if (t.size() < 2) fail(path, "trajectory needs at least 2 samples");
  Trajectory traj;
  traj.positions.resize(static_cast<Index>(t.size()), 2);
  traj.timestamps.resize(static_cast<Index>(t.size()));
  for (size_t i = 0; i < t.size(); ++i) {
    traj.timestamps[static_cast<Index>(i)] = t[i];
    traj.positions(static_cast<Index>(i), 0) = x[i];
    traj.positions(static_cast<Index>(i), 1) = y[i];
  }
  traj.motion_class = motion_class;
  return traj;
}

void write_trace_csv(const Path& path, const DopplerTrace& trace) {
  auto out = open_out(path);
  out << "t,f_recvd\n";
  for (Index i = 0; i < trace.size(); ++i) {
    out << format_double(trace.times[i]) << ',' << format_double(trace.frequencies[i]) << '\n';
  }
}

void write_receivers_csv(const Path& path, const std::vector<Receiver>& receivers) {
  auto out = open_out(path);
  out << "id,x,y\n";
  for (const auto& rx : receivers) {
    out << rx.id << ',' << format_double(rx.position.x()) << ','
        << format_double(rx.position.y()) << '\n';
  }
}

std::vector<Receiver> read_receivers_csv(const Path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "id,x,y") fail(path, "expected header id,x,y");
  std::vector<Receiver> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 3) fail(path, "expected 3 columns");
    Receiver rx;
    rx.id = cells[0];
    rx.position.x() = parse_double(path, cells[1]);
    rx.position.y() = parse_double(path, cells[2]);
    out.push_back(std::move(rx));
  }
  if (out.empty()) fail(path, "no receivers listed");
  return out;
}

void write_topc_csv(const Path& path, const TimeOrderedPointCloud& topc) {
  auto out = open_out(path);
  out << 't';
  for (Index d = 0; d < topc.dim(); ++d) out << ",c" << (d + 1);
  out << '\n';
  for (Index i = 0; i < topc.size(); ++i) {
    out << format_double(topc.timestamps[i]);
    for (Index d = 0; d < topc.dim(); ++d) out << ',' << format_double(topc.points(i, d));
    out << '\n';
  }
}

void write_diagram_csv(const Path& path, const PersistenceDiagram& diagram) {
  auto out = open_out(path);
  out << "birth,death,essential\n";
  for (const auto& pt : diagram.points) {
    out << format_double(pt.birth) << ',' << format_double(pt.death) << ','
        << (pt.essential ? 1 : 0) << '\n';
  }
}

void write_path_csv(const Path& path, const WarpingPath& path_data) {
  auto out = open_out(path);
  out << "i,j\n";
  for (const auto& [i, j] : path_data.pairs) out << i << ',' << j << '\n';
}

std::string records_to_csv(const std::vector<ComparisonRecord>& records) {
  std::string out = "method,fusion,norm,metric,query_class,target_class,draw,score\n";
  for (const auto& r : records) {
    out += method_name(r.method);
    out += ',';
    out += to_string(r.method.fusion);
    out += ',';
    out += to_string(r.method.normalization);
    out += ',';
    out += to_string(r.method.metric);
    out += ',';
    out += to_string(r.query_class);
    out += ',';
    out += to_string(r.target_class);
    out += ',';
    out += std::to_string(r.draw_id);
    out += ',';
    out += format_double(r.score);
    out += '\n';
  }
  return out;
}

void write_records_csv(const Path& path, const std::vector<ComparisonRecord>& records) {
  auto out = open_out(path);
  out << records_to_csv(records);
}

void write_receiver_records_csv(const Path& path,
                                const std::vector<ReceiverScoreRecord>& records) {
  auto out = open_out(path);
  out << "method,query_class,target_class,draw,receiver,score,hist_direction\n";
  for (const auto& r : records) {
    out << method_name(r.method) << ',' << to_string(r.query_class) << ','
        << to_string(r.target_class) << ',' << r.draw_id << ',' << r.receiver_id
        << ',' << format_double(r.score) << ',' << r.hist_direction << '\n';
  }
}

void write_pr_csv(const Path& path,
                  const std::vector<std::pair<std::string, MotionClass>>& keys,
                  const std::vector<PRCurve>& curves) {
  if (keys.size() != curves.size()) {
    throw std::invalid_argument("write_pr_csv: keys and curves must align");
  }
  auto out = open_out(path);
  out << "method,query_class,recall,precision\n";
  for (size_t c = 0; c < curves.size(); ++c) {
    for (size_t i = 0; i < curves[c].recall.size(); ++i) {
      out << keys[c].first << ',' << to_string(keys[c].second) << ','
          << format_double(curves[c].recall[i]) << ','
          << format_double(curves[c].precision[i]) << '\n';
    }
  }
}

void write_map_csv(const Path& path,
                   const std::vector<std::pair<std::string, double>>& maps) {
  auto out = open_out(path);
  out << "method,map\n";
  for (const auto& [name, value] : maps) {
    out << name << ',' << format_double(value) << '\n';
  }
}

void write_psnr_csv(const Path& path, const std::vector<PsnrSample>& samples) {
  auto out = open_out(path);
  out << "action,draw,receiver,psnr_db\n";
  for (const auto& s : samples) {
    out << to_string(s.action) << ',' << s.draw_id << ',' << s.receiver_id << ','
        << format_double(s.psnr_db) << '\n';
  }
}

}  // namespace ssmx::io
