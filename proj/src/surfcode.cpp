#include "surftri/surfcode.hpp"

#include <charconv>
#include <iostream>

#include "surftri/canon.hpp"

namespace surftri {

namespace {

void append_int(std::string& s, int x) { s += std::to_string(x); }

std::string body(const Triangulation& t) {
  const SurfaceClass sc = surface_class(t);
  std::string s = "T ";
  append_int(s, t.num_vertices());
  s += ' ';
  s += sc.orientable ? 'o' : 'x';
  append_int(s, sc.genus);
  s += ':';
  for (VertexId v = 0; v < t.num_vertices(); ++v) {
    s += ' ';
    append_int(s, v + 1);
    s += '>';
    bool first = true;
    for (VertexId w : t.rotation(v)) {
      if (!first) s += ',';
      first = false;
      if (t.signature(v, w) < 0) s += '-';
      append_int(s, w + 1);
    }
    s += ';';
  }
  return s;
}

std::string frame_text(const FrameLabels& f) {
  std::string s = (f.kind == FrameKind::Handle) ? " | H " : " | C ";
  if (f.kind == FrameKind::Crosscap) {
    append_int(s, f.hub + 1);
    s += ' ';
  }
  for (int i = 0; i < 3; ++i) {
    if (i) s += ',';
    append_int(s, f.u[i] + 1);
  }
  s += (f.kind == FrameKind::Handle) ? ' ' : ',';
  for (int i = 0; i < 3; ++i) {
    if (i) s += ',';
    append_int(s, f.v[i] + 1);
  }
  return s;
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  void skip_spaces() {
    while (!done() && s_[i_] == ' ') ++i_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "' at column " + std::to_string(i_ + 1));
    ++i_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  int integer() {
    int x = 0;
    const auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), x);
    if (ec != std::errc{}) fail("expected a number at column " + std::to_string(i_ + 1));
    i_ = static_cast<std::size_t>(p - s_.data());
    return x;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

// Signature of edge ab in raw (possibly unnormalised) rotations.
int raw_signature(const std::vector<std::vector<VertexId>>& rot, VertexId a, VertexId b) {
  const auto& ra = rot[a];
  const auto& rb = rot[b];
  const int da = static_cast<int>(ra.size()), db = static_cast<int>(rb.size());
  int k = -1, j = -1;
  for (int x = 0; x < da; ++x) {
    if (ra[x] == b) k = x;
  }
  for (int x = 0; x < db; ++x) {
    if (rb[x] == a) j = x;
  }
  if (k < 0 || j < 0) fail("edge " + std::to_string(a + 1) + "-" + std::to_string(b + 1) + " is not symmetric");
  const VertexId prev = ra[(k + da - 1) % da];
  return rb[(j + 1) % db] == prev ? 1 : -1;
}

}  // namespace

std::string to_surfcode(const Triangulation& t) { return body(canonical_triangulation(t)); }

std::string to_surfcode(const Triangulation& t, const FrameLabels& frame) {
  const CanonicalFramed c = canonical_framed(t, frame);
  return body(c.t) + frame_text(c.frame);
}

std::string to_surfcode_raw(const Triangulation& t, const FrameLabels* frame) {
  std::string s = body(t);
  if (frame) s += frame_text(*frame);
  return s;
}

SurfcodeRecord parse_surfcode(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  Cursor c(line);
  c.expect('T');
  c.expect(' ');
  const int n = c.integer();
  if (n < 4 || n > kMaxVertices) fail("vertex count out of range");
  c.expect(' ');
  bool orientable = true;
  if (c.accept('x')) {
    orientable = false;
  } else {
    c.expect('o');
  }
  const int genus = c.integer();
  c.expect(':');
  std::vector<std::vector<VertexId>> rot(n);
  std::vector<std::vector<int>> sig(n);
  for (int v = 0; v < n; ++v) {
    c.expect(' ');
    if (c.integer() != v + 1) fail("vertex groups out of order at vertex " + std::to_string(v + 1));
    c.expect('>');
    do {
      const int s = c.accept('-') ? -1 : 1;
      const int w = c.integer();
      if (w < 1 || w > n) fail("neighbour out of range at vertex " + std::to_string(v + 1));
      rot[v].push_back(w - 1);
      sig[v].push_back(s);
    } while (c.accept(','));
    c.expect(';');
  }
  for (int v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < rot[v].size(); ++k) {
      if (raw_signature(rot, v, rot[v][k]) != sig[v][k]) {
        fail("signature of edge " + std::to_string(v + 1) + "-" + std::to_string(rot[v][k] + 1) +
             " does not match the rotations");
      }
    }
  }
  SurfcodeRecord rec;
  try {
    rec.t = Triangulation::from_rotations(std::move(rot));
  } catch (const Error& e) {
    fail(std::string("invalid triangulation: ") + e.what());
  }
  if (surface_class(rec.t) != SurfaceClass{orientable, genus}) fail("surface tag does not match the rotations");
  c.skip_spaces();
  if (c.done()) return rec;
  c.expect('|');
  c.expect(' ');
  FrameLabels f;
  auto read3 = [&](std::array<VertexId, 3>& out) {
    for (int i = 0; i < 3; ++i) {
      if (i) c.expect(',');
      out[i] = c.integer() - 1;
    }
  };
  if (c.accept('H')) {
    f.kind = FrameKind::Handle;
    c.expect(' ');
    read3(f.u);
    c.expect(' ');
    read3(f.v);
  } else {
    c.expect('C');
    f.kind = FrameKind::Crosscap;
    c.expect(' ');
    f.hub = c.integer() - 1;
    c.expect(' ');
    read3(f.u);
    c.expect(',');
    read3(f.v);
  }
  c.skip_spaces();
  if (!c.done()) fail("trailing characters");
  if (!frame_valid(rec.t, f)) fail("frame does not match the triangulation");
  rec.frame = f;
  return rec;
}

SurfcodeFile read_surfcode_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  SurfcodeFile file;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') {
      if (line == kCompleteTrailer) file.complete = true;
      continue;
    }
    try {
      file.records.push_back(parse_surfcode(line));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return file;
}

SurfcodeWriter::SurfcodeWriter(const std::string& path) : out_(&std::cout) {
  if (!path.empty()) {
    file_.open(path);
    if (!file_) throw Error(ErrorKind::Parse, "cannot write " + path);
    out_ = &file_;
  }
}

void SurfcodeWriter::comment(std::string_view text) { *out_ << "# " << text << '\n'; }

void SurfcodeWriter::write(const Triangulation& t) { write_line(to_surfcode(t)); }

void SurfcodeWriter::write(const Triangulation& t, const FrameLabels& frame) { write_line(to_surfcode(t, frame)); }

void SurfcodeWriter::write_line(std::string_view line) { *out_ << line << '\n'; }

void SurfcodeWriter::finish() {
  *out_ << kCompleteTrailer << '\n';
  out_->flush();
}

}  // namespace surftri
