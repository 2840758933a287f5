#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gsav/core/error.hpp"
#include "gsav/core/types.hpp"

namespace gsav {

static_assert(std::endian::native == std::endian::little,
              "binary formats are little-endian; big-endian hosts are unsupported");

template <typename T>
void write_raw(std::ostream& out, const T* data, size_t count) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
void read_raw(std::istream& in, T* data, size_t count, const std::string& what) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
  require(static_cast<size_t>(in.gcount()) == count * sizeof(T), ErrorKind::Format,
          "truncated file while reading " + what);
}

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  write_raw(out, &v, 1);
}

template <typename T>
T read_pod(std::istream& in, const std::string& what) {
  T v{};
  read_raw(in, &v, 1, what);
  return v;
}

// Float32 on disk, double in memory.
void write_f32_matrix(std::ostream& out, const MatX& m);
void read_f32_matrix(std::istream& in, MatX& m, Eigen::Index rows, Eigen::Index cols,
                     const std::string& what);

void write_f64_array(std::ostream& out, const double* data, size_t count);
void read_f64_array(std::istream& in, double* data, size_t count, const std::string& what);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gsav
