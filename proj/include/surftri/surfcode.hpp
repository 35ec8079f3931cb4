#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surftri/cycles.hpp"
#include "surftri/surface_map.hpp"

namespace surftri {

/// One line, no terminator:
///   T <n> <o|x><g>: 1>2,3,-4; 2>...;
/// Vertices are numbered 1..n by the canonical traversal; a leading '-'
/// marks an edge of signature -1.  Framed records append
///   | H u1,u2,u3 v1,v2,v3      or      | C hub u1,u2,u3,v1,v2,v3
std::string to_surfcode(const Triangulation& t);
std::string to_surfcode(const Triangulation& t, const FrameLabels& frame);

/// Writes t exactly as labelled, without canonical relabelling.
std::string to_surfcode_raw(const Triangulation& t, const FrameLabels* frame = nullptr);

struct SurfcodeRecord {
  Triangulation t;
  std::optional<FrameLabels> frame;
};

/// Throws Error(Parse) on malformed input or when the stated signatures or
/// surface do not match the rotations.
SurfcodeRecord parse_surfcode(std::string_view line);

/// Marks a file as fully written.
inline constexpr std::string_view kCompleteTrailer = "# complete";

struct SurfcodeFile {
  std::vector<SurfcodeRecord> records;
  bool complete = false;
};

/// Blank lines and lines starting with '#' are skipped.  Errors carry the line number.
SurfcodeFile read_surfcode_file(const std::string& path);

class SurfcodeWriter {
 public:
  /// Empty path writes to stdout.
  explicit SurfcodeWriter(const std::string& path);
  void comment(std::string_view text);
  void write(const Triangulation& t);
  void write(const Triangulation& t, const FrameLabels& frame);
  void write_line(std::string_view line);
  void finish();

 private:
  std::ofstream file_;
  std::ostream* out_;
};

}  // namespace surftri
