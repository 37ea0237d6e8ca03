#pragma once

#include <string>
#include <utility>

#include "trismooth/mesh.hpp"

namespace trismooth {

/// Malformed .node/.ele input. `line` is 1-based within the offending file.
class ParseError : public Error {
 public:
  ParseError(std::string file_kind, int line, const std::string& what)
      : Error(file_kind + ":" + std::to_string(line) + ": " + what),
        file_kind_(std::move(file_kind)),
        line_(line) {}

  const std::string& file_kind() const { return file_kind_; }
  int line() const { return line_; }

 private:
  std::string file_kind_;
  int line_;
};

/// Parses a planar .node/.ele pair. Headers follow the Triangle conventions:
///   .node: "<#points> <dim> <#attrs> <#markers>" then "<i> <x> <y> [attrs] [marker]"
///   .ele:  "<#triangles> <nodes-per-tri> <#attrs>" then "<i> <v1> <v2> <v3> [attrs]"
/// Indices may start at 0 or 1 (detected from the first body line of each
/// file; vertex references follow the .ele base). Attributes and markers are
/// parsed and discarded; '#' comments are ignored.
Mesh read_triangle_format(const std::string& node_text, const std::string& ele_text,
                          Layout layout);

/// Emits a 0-based .node/.ele pair. Coordinates use shortest round-trip
/// formatting, so read-back is exact.
std::pair<std::string, std::string> write_triangle_format(const Mesh& mesh);

/// File conveniences for the prefix.node/prefix.ele pair.
Mesh read_mesh_files(const std::string& node_path, const std::string& ele_path, Layout layout);
void write_mesh_files(const Mesh& mesh, const std::string& prefix);

}  // namespace trismooth
