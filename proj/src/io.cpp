#include "kinchain/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace kinchain {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ParseError("invalid number '" + std::string(field) + "'", line);
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Index MotionSequence::index_of(std::string_view label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw LookupError("unknown point label '" + std::string(label) + "'");
  return it - labels.begin();
}

Eigen::VectorXd MotionSequence::coordinate(Index point, int axis) const {
  Eigen::VectorXd out(frames());
  for (Index t = 0; t < frames(); ++t) out(t) = positions[t](point, axis);
  return out;
}

bool MotionSequence::operator==(const MotionSequence& other) const {
  if (frame_rate != other.frame_rate || labels != other.labels || positions.size() != other.positions.size())
    return false;
  for (std::size_t t = 0; t < positions.size(); ++t)
    if (positions[t].rows() != other.positions[t].rows() || positions[t] != other.positions[t]) return false;
  return true;
}

void validate(const MotionSequence& seq) {
  if (seq.frames() < 2) throw DataError("motion needs at least 2 frames, got " + std::to_string(seq.frames()));
  if (!(seq.frame_rate > 0.0) || !std::isfinite(seq.frame_rate)) throw DataError("frame rate must be positive");
  std::set<std::string> seen;
  for (const auto& l : seq.labels)
    if (!seen.insert(l).second) throw DataError("duplicate point label '" + l + "'");
  for (Index t = 0; t < seq.frames(); ++t) {
    if (seq.positions[t].rows() != seq.points())
      throw ShapeError("frame " + std::to_string(t) + " has " + std::to_string(seq.positions[t].rows()) +
                       " points, expected " + std::to_string(seq.points()));
    if (!seq.positions[t].allFinite()) throw DataError("non-finite coordinate in frame " + std::to_string(t));
  }
}

MotionFormat motion_format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return MotionFormat::csv;
  if (ext == ".json") return MotionFormat::json;
  throw DataError("cannot infer motion format from extension '" + ext + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

MotionSequence parse_motion_json(std::string_view text, std::optional<double> frame_rate) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("motion JSON: ") + e.what());
  }
  MotionSequence seq;
  try {
    if (doc.contains("frame_rate")) seq.frame_rate = doc.at("frame_rate").get<double>();
    seq.labels = doc.at("labels").get<Labels>();
    const auto& frames = doc.at("frames");
    if (!frames.is_array()) throw ParseError("motion JSON: 'frames' must be an array");
    seq.positions.reserve(frames.size());
    for (std::size_t t = 0; t < frames.size(); ++t) {
      const auto& rows = frames[t];
      if (!rows.is_array()) throw ParseError("motion JSON: frame " + std::to_string(t) + " is not an array");
      if (static_cast<Index>(rows.size()) != seq.points())
        throw ShapeError("frame " + std::to_string(t) + " has " + std::to_string(rows.size()) +
                         " points, expected " + std::to_string(seq.points()));
      Eigen::MatrixX3d block(seq.points(), 3);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != 3)
          throw ShapeError("frame " + std::to_string(t) + ", point " + std::to_string(i) + " is not an [x,y,z] triple");
        for (int a = 0; a < 3; ++a) block(static_cast<Index>(i), a) = rows[i][a].get<double>();
      }
      seq.positions.push_back(std::move(block));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("motion JSON: ") + e.what());
  }
  if (frame_rate) seq.frame_rate = *frame_rate;
  validate(seq);
  return seq;
}

std::string format_motion_json(const MotionSequence& seq) {
  json frames = json::array();
  for (const auto& block : seq.positions) {
    json rows = json::array();
    for (Index i = 0; i < block.rows(); ++i) rows.push_back({block(i, 0), block(i, 1), block(i, 2)});
    frames.push_back(std::move(rows));
  }
  json doc = {{"frame_rate", seq.frame_rate}, {"labels", seq.labels}, {"frames", std::move(frames)}};
  return doc.dump() + "\n";
}

// Wide CSV: optional "# frame_rate: <hz>" line, header of label_x,label_y,label_z
// triples, then one row per frame.
MotionSequence parse_motion_csv(std::string_view text, std::optional<double> frame_rate) {
  MotionSequence seq;
  std::optional<double> header_rate;
  std::vector<std::string_view> lines = split(text, '\n');
  std::size_t line_no = 0;
  bool have_header = false;
  for (auto raw : lines) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      constexpr std::string_view key = "frame_rate:";
      if (body.substr(0, key.size()) == key) header_rate = parse_double(body.substr(key.size()), line_no);
      continue;
    }
    const auto fields = split(line, ',');
    if (!have_header) {
      if (fields.size() % 3 != 0 || fields.empty())
        throw ParseError("CSV header must have label_x,label_y,label_z triples", line_no);
      for (std::size_t c = 0; c < fields.size(); c += 3) {
        const char* suffix[] = {"_x", "_y", "_z"};
        std::string label;
        for (int a = 0; a < 3; ++a) {
          const auto f = trim(fields[c + a]);
          if (f.size() < 3 || f.substr(f.size() - 2) != suffix[a])
            throw ParseError("CSV column '" + std::string(f) + "' should end in " + suffix[a], line_no);
          const auto stem = std::string(f.substr(0, f.size() - 2));
          if (a == 0) label = stem;
          else if (stem != label)
            throw ParseError("CSV columns for '" + label + "' are not an x,y,z triple", line_no);
        }
        seq.labels.push_back(label);
      }
      have_header = true;
      continue;
    }
    const auto t = seq.frames();
    if (static_cast<Index>(fields.size()) != 3 * seq.points())
      throw ShapeError("frame " + std::to_string(t) + " has " + std::to_string(fields.size()) + " values, expected " +
                       std::to_string(3 * seq.points()) + " (line " + std::to_string(line_no) + ")");
    Eigen::MatrixX3d block(seq.points(), 3);
    for (Index i = 0; i < seq.points(); ++i)
      for (int a = 0; a < 3; ++a) block(i, a) = parse_double(fields[3 * i + a], line_no);
    seq.positions.push_back(std::move(block));
  }
  if (!have_header) throw ParseError("CSV motion file has no header");
  if (frame_rate) seq.frame_rate = *frame_rate;
  else if (header_rate) seq.frame_rate = *header_rate;
  else throw ParseError("CSV motion file has no frame_rate header and none was given");
  validate(seq);
  return seq;
}

std::string format_motion_csv(const MotionSequence& seq) {
  std::string out = "# frame_rate: " + format_double(seq.frame_rate) + "\n";
  for (Index i = 0; i < seq.points(); ++i) {
    if (i) out += ',';
    out += seq.labels[i] + "_x," + seq.labels[i] + "_y," + seq.labels[i] + "_z";
  }
  out += '\n';
  for (const auto& block : seq.positions) {
    for (Index i = 0; i < block.rows(); ++i)
      for (int a = 0; a < 3; ++a) {
        if (i || a) out += ',';
        out += format_double(block(i, a));
      }
    out += '\n';
  }
  return out;
}

MotionSequence load_motion(const std::filesystem::path& path, MotionFormat format, std::optional<double> frame_rate) {
  const auto text = read_text_file(path);
  return format == MotionFormat::json ? parse_motion_json(text, frame_rate) : parse_motion_csv(text, frame_rate);
}

void save_motion(const MotionSequence& seq, const std::filesystem::path& path, MotionFormat format) {
  write_text_file(path, format == MotionFormat::json ? format_motion_json(seq) : format_motion_csv(seq));
}

MotionSequence select_points(const MotionSequence& seq, std::span<const std::string> names) {
  std::vector<Index> idx;
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw DataError("duplicate label '" + n + "' in selection");
    idx.push_back(seq.index_of(n));
  }
  MotionSequence out;
  out.frame_rate = seq.frame_rate;
  out.labels.assign(names.begin(), names.end());
  out.positions.reserve(seq.positions.size());
  for (const auto& block : seq.positions) out.positions.push_back(block(idx, Eigen::all));
  return out;
}

Index Skeleton::index_of(std::string_view joint) const {
  const auto it = std::find(joints.begin(), joints.end(), joint);
  if (it == joints.end()) throw LookupError("unknown joint '" + std::string(joint) + "'");
  return it - joints.begin();
}

bool Skeleton::is_bone(std::string_view a, std::string_view b) const {
  return std::any_of(bones.begin(), bones.end(), [&](const auto& e) {
    return (e.first == a && e.second == b) || (e.first == b && e.second == a);
  });
}

Skeleton default_skeleton() {
  Skeleton s;
  s.joints = {"pelvis",        "spine",          "neck",          "head",
              "left_collar",   "right_collar",   "left_shoulder", "right_shoulder",
              "left_elbow",    "right_elbow",    "left_wrist",    "right_wrist",
              "left_hip",      "right_hip",      "left_knee",     "right_knee",
              "left_ankle",    "right_ankle",    "left_foot",     "right_foot"};
  s.bones = {{"pelvis", "spine"},
             {"spine", "neck"},
             {"neck", "head"}};
  for (const std::string side : {"left", "right"}) {
    s.bones.emplace_back("neck", side + "_collar");
    s.bones.emplace_back(side + "_collar", side + "_shoulder");
    s.bones.emplace_back(side + "_shoulder", side + "_elbow");
    s.bones.emplace_back(side + "_elbow", side + "_wrist");
    s.bones.emplace_back("pelvis", side + "_hip");
    s.bones.emplace_back(side + "_hip", side + "_knee");
    s.bones.emplace_back(side + "_knee", side + "_ankle");
    s.bones.emplace_back(side + "_ankle", side + "_foot");
  }
  s.striking_wrist = "right_wrist";
  s.reference_joint = "pelvis";
  return s;
}

void validate(const Skeleton& skeleton) {
  std::set<std::string> seen;
  for (const auto& j : skeleton.joints)
    if (!seen.insert(j).second) throw DataError("duplicate joint '" + j + "'");
  for (const auto& [a, b] : skeleton.bones) {
    if (!seen.count(a) || !seen.count(b)) throw LookupError("bone (" + a + ", " + b + ") references an unknown joint");
    if (a == b) throw DataError("bone (" + a + ", " + b + ") is a self loop");
  }
  if (!seen.count(skeleton.reference_joint))
    throw LookupError("reference joint '" + skeleton.reference_joint + "' is not a joint");
  if (!seen.count(skeleton.striking_wrist))
    throw LookupError("striking wrist '" + skeleton.striking_wrist + "' is not a joint");
}

Skeleton parse_skeleton_json(std::string_view text) {
  Skeleton s;
  try {
    const auto doc = json::parse(text);
    s.joints = doc.at("joints").get<Labels>();
    for (const auto& b : doc.at("bones")) {
      if (!b.is_array() || b.size() != 2) throw ParseError("skeleton JSON: bones must be [a, b] pairs");
      s.bones.emplace_back(b[0].get<std::string>(), b[1].get<std::string>());
    }
    s.striking_wrist = doc.at("striking_wrist").get<std::string>();
    s.reference_joint = doc.value("reference_joint", std::string("pelvis"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("skeleton JSON: ") + e.what());
  }
  validate(s);
  return s;
}

std::string format_skeleton_json(const Skeleton& skeleton) {
  json bones = json::array();
  for (const auto& [a, b] : skeleton.bones) bones.push_back({a, b});
  json doc = {{"joints", skeleton.joints},
              {"bones", std::move(bones)},
              {"striking_wrist", skeleton.striking_wrist},
              {"reference_joint", skeleton.reference_joint}};
  return doc.dump(2) + "\n";
}

Skeleton load_skeleton(const std::filesystem::path& path) { return parse_skeleton_json(read_text_file(path)); }

}  // namespace kinchain
