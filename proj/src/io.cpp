#include "trismooth/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

namespace trismooth {

namespace {

struct Line {
  int number = 0;  // 1-based
  std::vector<std::string_view> tokens;
};

// Splits into whitespace tokens, dropping '#' comments and blank lines.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    ++number;
    std::string_view raw(text.data() + pos, eol - pos);
    if (size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > start) line.tokens.push_back(raw.substr(start, i - start));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return lines;
}

long parse_int(const Line& line, size_t tok, const char* kind, const char* what) {
  std::string_view s = line.tokens[tok];
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(kind, line.number, std::string("expected integer ") + what + ", got '" +
                                            std::string(s) + "'");
  return value;
}

double parse_double(const Line& line, size_t tok, const char* kind, const char* what) {
  std::string_view s = line.tokens[tok];
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(kind, line.number, std::string("expected number ") + what + ", got '" +
                                            std::string(s) + "'");
  return value;
}

void require_tokens(const Line& line, size_t expected, const char* kind) {
  if (line.tokens.size() != expected)
    throw ParseError(kind, line.number,
                     "expected " + std::to_string(expected) + " fields, got " +
                         std::to_string(line.tokens.size()));
}

int detect_base(const Line& first_body, const char* kind) {
  long first = parse_int(first_body, 0, kind, "index");
  if (first != 0 && first != 1)
    throw ParseError(kind, first_body.number,
                     "first index must be 0 or 1, got " + std::to_string(first));
  return static_cast<int>(first);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

Mesh read_triangle_format(const std::string& node_text, const std::string& ele_text,
                          Layout layout) {
  constexpr const char* kNode = "node";
  constexpr const char* kEle = "ele";

  // .node
  std::vector<Line> node_lines = tokenize(node_text);
  if (node_lines.empty()) throw ParseError(kNode, 1, "empty file");
  const Line& nh = node_lines[0];
  if (nh.tokens.size() != 4) throw ParseError(kNode, nh.number, "header must be '<#points> <dim> <#attrs> <#markers>'");
  long n_points = parse_int(nh, 0, kNode, "point count");
  long dim = parse_int(nh, 1, kNode, "dimension");
  long n_attrs = parse_int(nh, 2, kNode, "attribute count");
  long n_markers = parse_int(nh, 3, kNode, "marker count");
  if (dim != 2) throw ParseError(kNode, nh.number, "only 2-dimensional points are supported");
  if (n_points < 1) throw ParseError(kNode, nh.number, "point count must be positive");
  if (n_attrs < 0 || n_markers < 0 || n_markers > 1)
    throw ParseError(kNode, nh.number, "invalid attribute/marker counts");
  if (static_cast<long>(node_lines.size()) - 1 != n_points) {
    const Line& at = node_lines.size() > 1 ? node_lines.back() : nh;
    throw ParseError(kNode, at.number,
                     "header declares " + std::to_string(n_points) + " points, file has " +
                         std::to_string(node_lines.size() - 1));
  }

  const int node_base = detect_base(node_lines[1], kNode);
  const size_t node_fields = 3 + static_cast<size_t>(n_attrs) + static_cast<size_t>(n_markers);
  std::vector<Point> points(n_points);
  for (long i = 0; i < n_points; ++i) {
    const Line& line = node_lines[1 + i];
    require_tokens(line, node_fields, kNode);
    long idx = parse_int(line, 0, kNode, "index");
    if (idx != i + node_base)
      throw ParseError(kNode, line.number,
                       "expected index " + std::to_string(i + node_base) + ", got " +
                           std::to_string(idx));
    points[i].x = parse_double(line, 1, kNode, "x coordinate");
    points[i].y = parse_double(line, 2, kNode, "y coordinate");
  }

  // .ele
  std::vector<Line> ele_lines = tokenize(ele_text);
  if (ele_lines.empty()) throw ParseError(kEle, 1, "empty file");
  const Line& eh = ele_lines[0];
  if (eh.tokens.size() != 3) throw ParseError(kEle, eh.number, "header must be '<#triangles> <nodes-per-tri> <#attrs>'");
  long n_tris = parse_int(eh, 0, kEle, "triangle count");
  long nodes_per = parse_int(eh, 1, kEle, "nodes per triangle");
  long e_attrs = parse_int(eh, 2, kEle, "attribute count");
  if (nodes_per != 3) throw ParseError(kEle, eh.number, "only 3-node triangles are supported");
  if (n_tris < 1) throw ParseError(kEle, eh.number, "triangle count must be positive");
  if (e_attrs < 0) throw ParseError(kEle, eh.number, "invalid attribute count");
  if (static_cast<long>(ele_lines.size()) - 1 != n_tris) {
    const Line& at = ele_lines.size() > 1 ? ele_lines.back() : eh;
    throw ParseError(kEle, at.number,
                     "header declares " + std::to_string(n_tris) + " triangles, file has " +
                         std::to_string(ele_lines.size() - 1));
  }

  const int ele_base = detect_base(ele_lines[1], kEle);
  const size_t ele_fields = 4 + static_cast<size_t>(e_attrs);
  std::vector<std::array<int, 3>> triangles(n_tris);
  for (long t = 0; t < n_tris; ++t) {
    const Line& line = ele_lines[1 + t];
    require_tokens(line, ele_fields, kEle);
    long idx = parse_int(line, 0, kEle, "index");
    if (idx != t + ele_base)
      throw ParseError(kEle, line.number,
                       "expected index " + std::to_string(t + ele_base) + ", got " +
                           std::to_string(idx));
    for (int k = 0; k < 3; ++k) {
      long v = parse_int(line, 1 + k, kEle, "vertex index") - ele_base;
      if (v < 0 || v >= n_points)
        throw ParseError(kEle, line.number,
                         "vertex reference " + std::to_string(v + ele_base) + " out of range");
      triangles[t][k] = static_cast<int>(v);
    }
  }

  try {
    return build_mesh(points, triangles, layout);
  } catch (const StructuralError& e) {
    throw ParseError(kEle, eh.number, e.what());
  }
}

std::pair<std::string, std::string> write_triangle_format(const Mesh& mesh) {
  std::string node, ele;
  const int nv = mesh.vertex_count();
  const int nt = mesh.triangle_count();
  node.reserve(static_cast<size_t>(nv) * 48 + 32);
  ele.reserve(static_cast<size_t>(nt) * 24 + 16);

  node += std::to_string(nv) + " 2 0 0\n";
  mesh.visit([&](const auto& m) {
    for (int v = 0; v < nv; ++v) {
      Point p = m.position(v);
      node += std::to_string(v);
      node += ' ';
      node += format_double(p.x);
      node += ' ';
      node += format_double(p.y);
      node += '\n';
    }
  });

  ele += std::to_string(nt) + " 3 0\n";
  mesh.visit([&](const auto& m) {
    for (int t = 0; t < nt; ++t) {
      auto tv = m.tri(t);
      ele += std::to_string(t);
      for (int k = 0; k < 3; ++k) {
        ele += ' ';
        ele += std::to_string(tv[k]);
      }
      ele += '\n';
    }
  });
  return {std::move(node), std::move(ele)};
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Mesh read_mesh_files(const std::string& node_path, const std::string& ele_path, Layout layout) {
  return read_triangle_format(slurp(node_path), slurp(ele_path), layout);
}

void write_mesh_files(const Mesh& mesh, const std::string& prefix) {
  auto [node, ele] = write_triangle_format(mesh);
  std::ofstream nf(prefix + ".node", std::ios::binary);
  if (!nf) throw Error("cannot write '" + prefix + ".node'");
  nf << node;
  std::ofstream ef(prefix + ".ele", std::ios::binary);
  if (!ef) throw Error("cannot write '" + prefix + ".ele'");
  ef << ele;
}

}  // namespace trismooth
