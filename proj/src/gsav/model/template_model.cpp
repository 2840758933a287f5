#include "gsav/model/template_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gsav/core/error.hpp"
#include "gsav/core/serial.hpp"

namespace gsav::model {

namespace {

constexpr const char* kMagic = "GSAVMODEL 1";
constexpr double kWeightSumTol = 1e-6;

void write_u32(std::ostream& out, const Eigen::Ref<const Eigen::Matrix<int, Eigen::Dynamic,
                                                                       Eigen::Dynamic>>& m) {
  std::vector<std::uint32_t> buf(static_cast<size_t>(m.size()));
  size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) buf[k++] = static_cast<std::uint32_t>(m(r, c));
  write_raw(out, buf.data(), buf.size());
}

void read_u32(std::istream& in, Eigen::Ref<Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>> m,
              const std::string& what) {
  std::vector<std::uint32_t> buf(static_cast<size_t>(m.size()));
  read_raw(in, buf.data(), buf.size(), what);
  size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = static_cast<int>(buf[k++]);
}

void write_i32(std::ostream& out, const std::vector<int>& v) {
  std::vector<std::int32_t> buf(v.begin(), v.end());
  write_raw(out, buf.data(), buf.size());
}

std::vector<int> read_i32(std::istream& in, size_t n, const std::string& what) {
  std::vector<std::int32_t> buf(n);
  read_raw(in, buf.data(), n, what);
  return std::vector<int>(buf.begin(), buf.end());
}

}  // namespace

std::vector<int> TemplateModel::face_vertex_indices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (part_labels[static_cast<size_t>(v)] == PartLabel::Face) out.push_back(v);
  return out;
}

void TemplateModel::validate() {
  const int V = vertex_count(), F = face_count(), J = joint_count();
  require(V > 0, ErrorKind::Format, "vertices: model has no vertices");
  require(J > 0, ErrorKind::Format, "joints: model has no joints");

  for (Eigen::Index f = 0; f < faces.rows(); ++f)
    for (int k = 0; k < 3; ++k)
      require(faces(f, k) >= 0 && faces(f, k) < V, ErrorKind::Format,
              "faces: face " + std::to_string(f) + " references invalid vertex " +
                  std::to_string(faces(f, k)));

  require(static_cast<int>(parents.size()) == J, ErrorKind::Format,
          "parents: length does not match joint count");
  int roots = 0;
  for (int j = 0; j < J; ++j) {
    int p = parents[static_cast<size_t>(j)];
    if (p < 0) {
      roots++;
      continue;
    }
    require(p < j, ErrorKind::Format,
            "parents: joint " + std::to_string(j) + " has parent " + std::to_string(p) +
                " violating topological order");
  }
  require(roots == 1, ErrorKind::Format,
          "parents: expected exactly one root, found " + std::to_string(roots));

  require(skin_weights.rows() == V, ErrorKind::Format,
          "skin_weights: row count does not match vertex count");
  for (Eigen::Index v = 0; v < V; ++v) {
    double sum = 0.0;
    for (int k = 0; k < SkinWeights::kMaxInfluences; ++k) {
      double w = skin_weights.weights(v, k);
      require(w >= 0.0, ErrorKind::Format,
              "skin_weights: vertex " + std::to_string(v) + " has negative weight");
      int j = skin_weights.joints(v, k);
      require(j >= 0 && j < J, ErrorKind::Format,
              "skin_weights: vertex " + std::to_string(v) + " references invalid joint");
      sum += w;
    }
    require(std::abs(sum - 1.0) <= kWeightSumTol, ErrorKind::Format,
            "skin_weights: vertex " + std::to_string(v) + " weights sum to " +
                std::to_string(sum) + " (expected 1 within 1e-6)");
  }
  skin_weights.normalize_rows();

  require(static_cast<int>(part_labels.size()) == V, ErrorKind::Format,
          "part_labels: length does not match vertex count");

  for (size_t e = 0; e < expr_dirs.size(); ++e) {
    require(expr_dirs[e].rows() == V, ErrorKind::Format,
            "expr_dirs: basis " + std::to_string(e) + " row count mismatch");
    for (Eigen::Index v = 0; v < V; ++v) {
      if (part_labels[static_cast<size_t>(v)] == PartLabel::Face) continue;
      require(expr_dirs[e].row(v).isZero(0.0), ErrorKind::Format,
              "expr_dirs: basis " + std::to_string(e) + " is nonzero on non-face vertex " +
                  std::to_string(v));
    }
  }
  for (size_t s = 0; s < shape_dirs.size(); ++s)
    require(shape_dirs[s].rows() == V, ErrorKind::Format,
            "shape_dirs: basis " + std::to_string(s) + " row count mismatch");

  require(big_pose.rows() == J, ErrorKind::Format, "big_pose: row count does not match joints");

  if (has_regressor)
    require(joint_regressor.rows() == J && joint_regressor.cols() == V, ErrorKind::Format,
            "joint_regressor: shape does not match (J x V)");
  if (has_uv)
    require(face_uv.rows() == 3 * F, ErrorKind::Format,
            "face_uv: row count does not match 3 * face count");
  if (has_mirror) {
    require(static_cast<int>(mirror_joints.size()) == J, ErrorKind::Format,
            "mirror_joints: length does not match joint count");
    require(static_cast<int>(mirror_vertices.size()) == V, ErrorKind::Format,
            "mirror_vertices: length does not match vertex count");
    for (int j = 0; j < J; ++j) {
      int m = mirror_joints[static_cast<size_t>(j)];
      require(m >= 0 && m < J && mirror_joints[static_cast<size_t>(m)] == j, ErrorKind::Format,
              "mirror_joints: entry " + std::to_string(j) + " is not an involution");
    }
    for (int v = 0; v < V; ++v) {
      int m = mirror_vertices[static_cast<size_t>(v)];
      require(m >= 0 && m < V && mirror_vertices[static_cast<size_t>(m)] == v, ErrorKind::Format,
              "mirror_vertices: entry " + std::to_string(v) + " is not an involution");
    }
  }
  for (const auto& [name, def] : landmarks) {
    int limit = def.kind == LandmarkDef::Kind::Joint ? J : V;
    require(def.index >= 0 && def.index < limit, ErrorKind::Format,
            "landmark " + name + ": index out of range");
  }

  // Per-joint normalized vertex weights, used to displace stored joints by
  // the mean shape displacement of their skinned vertices.
  joint_vertex_weights.assign(static_cast<size_t>(J), {});
  std::vector<double> totals(static_cast<size_t>(J), 0.0);
  for (Eigen::Index v = 0; v < V; ++v)
    for (int k = 0; k < SkinWeights::kMaxInfluences; ++k) {
      double w = skin_weights.weights(v, k);
      if (w > 0.0) {
        joint_vertex_weights[static_cast<size_t>(skin_weights.joints(v, k))].emplace_back(
            static_cast<int>(v), w);
        totals[static_cast<size_t>(skin_weights.joints(v, k))] += w;
      }
    }
  for (int j = 0; j < J; ++j)
    if (totals[static_cast<size_t>(j)] > 0.0)
      for (auto& [v, w] : joint_vertex_weights[static_cast<size_t>(j)])
        w /= totals[static_cast<size_t>(j)];
}

void save_model(const std::string& path, const TemplateModel& m) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Io, "cannot write " + path);

  out << kMagic << "\n";
  out << "verts " << m.vertex_count() << "\n";
  out << "faces " << m.face_count() << "\n";
  out << "joints " << m.joint_count() << "\n";
  out << "shape_dims " << m.shape_dim() << "\n";
  out << "expr_dims " << m.expr_dim() << "\n";
  out << "has_regressor " << (m.has_regressor ? 1 : 0) << "\n";
  out << "has_uv " << (m.has_uv ? 1 : 0) << "\n";
  out << "has_mirror " << (m.has_mirror ? 1 : 0) << "\n";
  for (const auto& [name, def] : m.landmarks)
    out << "landmark " << name << " " << (def.kind == LandmarkDef::Kind::Joint ? "joint" : "vertex")
        << " " << def.index << "\n";
  out << "end_header\n";

  write_f32_matrix(out, m.vertices);
  write_u32(out, m.faces);
  write_f32_matrix(out, m.joints);
  write_i32(out, m.parents);
  write_u32(out, m.skin_weights.joints);
  write_f32_matrix(out, m.skin_weights.weights);
  for (const auto& d : m.shape_dirs) write_f32_matrix(out, d);
  for (const auto& d : m.expr_dirs) write_f32_matrix(out, d);
  {
    std::vector<std::uint32_t> labels(m.part_labels.size());
    for (size_t i = 0; i < labels.size(); ++i)
      labels[i] = static_cast<std::uint32_t>(m.part_labels[i]);
    write_raw(out, labels.data(), labels.size());
  }
  write_f32_matrix(out, m.big_pose);
  if (m.has_regressor) write_f32_matrix(out, m.joint_regressor);
  if (m.has_uv) write_f32_matrix(out, m.face_uv);
  if (m.has_mirror) {
    write_i32(out, m.mirror_joints);
    write_i32(out, m.mirror_vertices);
  }
  require(out.good(), ErrorKind::Io, "write failed: " + path);
}

TemplateModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Io, "cannot open " + path);

  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::Format, "empty model file");
  require(line == kMagic, ErrorKind::Format, "bad magic line: expected '" + std::string(kMagic) +
                                                 "', got '" + line + "'");

  long V = -1, F = -1, J = -1, S = -1, E = -1;
  int has_regressor = 0, has_uv = 0, has_mirror = 0;
  TemplateModel m;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line == "end_header") {
      header_done = true;
      break;
    }
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "verts") ls >> V;
    else if (key == "faces") ls >> F;
    else if (key == "joints") ls >> J;
    else if (key == "shape_dims") ls >> S;
    else if (key == "expr_dims") ls >> E;
    else if (key == "has_regressor") ls >> has_regressor;
    else if (key == "has_uv") ls >> has_uv;
    else if (key == "has_mirror") ls >> has_mirror;
    else if (key == "landmark") {
      std::string name, kind;
      int idx = -1;
      ls >> name >> kind >> idx;
      require(!ls.fail() && (kind == "joint" || kind == "vertex"), ErrorKind::Format,
              "malformed landmark line: " + line);
      m.landmarks[name] = {kind == "joint" ? LandmarkDef::Kind::Joint : LandmarkDef::Kind::Vertex,
                           idx};
    } else {
      fail(ErrorKind::Format, "unknown header key: " + key);
    }
    require(!ls.fail(), ErrorKind::Format, "malformed header line: " + line);
  }
  require(header_done, ErrorKind::Format, "missing end_header");
  require(V >= 0 && F >= 0 && J >= 0 && S >= 0 && E >= 0, ErrorKind::Format,
          "header is missing one of verts/faces/joints/shape_dims/expr_dims");

  MatX tmp;
  read_f32_matrix(in, tmp, V, 3, "vertices");
  m.vertices = tmp;
  m.faces.resize(F, 3);
  read_u32(in, m.faces, "faces");
  read_f32_matrix(in, tmp, J, 3, "joints");
  m.joints = tmp;
  m.parents = read_i32(in, static_cast<size_t>(J), "parents");
  m.skin_weights.resize(V);
  read_u32(in, m.skin_weights.joints, "skin joint indices");
  read_f32_matrix(in, tmp, V, SkinWeights::kMaxInfluences, "skin weights");
  m.skin_weights.weights = tmp;
  m.shape_dirs.resize(static_cast<size_t>(S));
  for (long s = 0; s < S; ++s) {
    read_f32_matrix(in, tmp, V, 3, "shape_dirs[" + std::to_string(s) + "]");
    m.shape_dirs[static_cast<size_t>(s)] = tmp;
  }
  m.expr_dirs.resize(static_cast<size_t>(E));
  for (long e = 0; e < E; ++e) {
    read_f32_matrix(in, tmp, V, 3, "expr_dirs[" + std::to_string(e) + "]");
    m.expr_dirs[static_cast<size_t>(e)] = tmp;
  }
  {
    std::vector<std::uint32_t> labels(static_cast<size_t>(V));
    read_raw(in, labels.data(), labels.size(), "part_labels");
    m.part_labels.resize(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
      require(labels[i] <= 3, ErrorKind::Format,
              "part_labels: vertex " + std::to_string(i) + " has invalid label " +
                  std::to_string(labels[i]));
      m.part_labels[i] = static_cast<PartLabel>(labels[i]);
    }
  }
  read_f32_matrix(in, tmp, J, 3, "big_pose");
  m.big_pose = tmp;
  if (has_regressor) {
    m.has_regressor = true;
    read_f32_matrix(in, m.joint_regressor, J, V, "joint_regressor");
  }
  if (has_uv) {
    m.has_uv = true;
    read_f32_matrix(in, tmp, 3 * F, 2, "face_uv");
    m.face_uv = tmp;
  }
  if (has_mirror) {
    m.has_mirror = true;
    m.mirror_joints = read_i32(in, static_cast<size_t>(J), "mirror_joints");
    m.mirror_vertices = read_i32(in, static_cast<size_t>(V), "mirror_vertices");
  }
  char extra;
  in.read(&extra, 1);
  require(in.gcount() == 0, ErrorKind::Format, "trailing bytes after declared arrays");

  m.validate();
  return m;
}

}  // namespace gsav::model
