#include "gsav/core/serial.hpp"

#include <fstream>
#include <sstream>

namespace gsav {

void write_f32_matrix(std::ostream& out, const MatX& m) {
  std::vector<float> buf(static_cast<size_t>(m.size()));
  // Row-major element order on disk.
  size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) buf[k++] = static_cast<float>(m(r, c));
  write_raw(out, buf.data(), buf.size());
}

void read_f32_matrix(std::istream& in, MatX& m, Eigen::Index rows, Eigen::Index cols,
                     const std::string& what) {
  std::vector<float> buf(static_cast<size_t>(rows) * static_cast<size_t>(cols));
  read_raw(in, buf.data(), buf.size(), what);
  m.resize(rows, cols);
  size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = buf[k++];
}

void write_f64_array(std::ostream& out, const double* data, size_t count) {
  write_raw(out, data, count);
}

void read_f64_array(std::istream& in, double* data, size_t count, const std::string& what) {
  read_raw(in, data, count, what);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Io, "cannot write " + path);
  out << text;
  require(out.good(), ErrorKind::Io, "write failed: " + path);
}

}  // namespace gsav
