#pragma once

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "divcurl/mesh.hpp"

namespace divcurl {

namespace detail {

/// Line reader for the whitespace formats: skips blank lines and '#'
/// comments and remembers the current line number for diagnostics.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  }
  int line() const { return lineno_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse, source_ + ":" + std::to_string(lineno_) + ": " + what, "file_format",
                lineno_);
  }

  /// Reads "$name N" and returns N.
  int header(const std::string& name) {
    std::string line;
    if (!next(line)) fail("expected section $" + name + ", found end of file");
    std::istringstream ss(line);
    std::string tag;
    long long n = -1;
    std::string rest;
    if (!(ss >> tag >> n) || tag != "$" + name || n < 0 || (ss >> rest)) {
      fail("expected '$" + name + " <count>'");
    }
    if (n > std::numeric_limits<int>::max()) fail("section count too large");
    return static_cast<int>(n);
  }

  template <class... T>
  void record(T&... out) {
    std::string line;
    if (!next(line)) fail("unexpected end of file");
    std::istringstream ss(line);
    std::string rest;
    if (!((ss >> out) && ...) || (ss >> rest)) fail("malformed record '" + line + "'");
  }

  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  int lineno_ = 0;
};

}  // namespace detail

inline Mesh read_mesh(std::istream& in, const std::string& source = "<mesh>") {
  detail::LineReader r(in, source);
  const int nv = r.header("vertices");
  std::vector<Vec2> v(static_cast<std::size_t>(nv));
  std::vector<int> vline(static_cast<std::size_t>(nv));
  for (int i = 0; i < nv; ++i) {
    r.record(v[static_cast<std::size_t>(i)].x, v[static_cast<std::size_t>(i)].y);
    vline[static_cast<std::size_t>(i)] = r.line();
  }
  const int nt = r.header("triangles");
  std::vector<Triangle> t(static_cast<std::size_t>(nt));
  std::vector<int> tline(static_cast<std::size_t>(nt));
  for (int i = 0; i < nt; ++i) {
    auto& tri = t[static_cast<std::size_t>(i)];
    r.record(tri[0], tri[1], tri[2]);
    for (int k : tri)
      if (k < 0 || k >= nv) r.fail("vertex index " + std::to_string(k) + " out of range");
    tline[static_cast<std::size_t>(i)] = r.line();
  }
  const int nb = r.header("boundary_edges");
  std::vector<BoundaryEdge> b(static_cast<std::size_t>(nb));
  std::vector<int> bline(static_cast<std::size_t>(nb));
  for (int i = 0; i < nb; ++i) {
    auto& e = b[static_cast<std::size_t>(i)];
    int tag = 0;
    r.record(e.a, e.b, e.loop, tag);
    if (e.a < 0 || e.a >= nv || e.b < 0 || e.b >= nv) r.fail("boundary edge vertex out of range");
    if (tag < 0 || tag > 2) r.fail("region tag must be 0, 1 or 2");
    e.tag = static_cast<RegionTag>(tag);
    bline[static_cast<std::size_t>(i)] = r.line();
  }
  std::string extra;
  if (r.next(extra)) r.fail("unexpected content after the boundary edge section");
  try {
    return Mesh(std::move(v), std::move(t), std::move(b));
  } catch (const MeshError& e) {
    int line = -1;
    if (e.index() >= 0) {
      const auto i = static_cast<std::size_t>(e.index());
      switch (e.entity()) {
        case MeshEntity::Vertex: line = vline[i]; break;
        case MeshEntity::Triangle: line = tline[i]; break;
        case MeshEntity::BoundaryEdge: line = bline[i]; break;
        case MeshEntity::None: break;
      }
    }
    const std::string where = line >= 0 ? source + ":" + std::to_string(line) + ": " : source + ": ";
    throw MeshError(e.code(), where + e.what(), e.entity(), e.index());
  }
}

inline Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open mesh file '" + path + "'", "io");
  return read_mesh(in, path);
}

inline void write_mesh(std::ostream& out, const Mesh& m) {
  out << std::setprecision(17);
  out << "$vertices " << m.num_vertices() << '\n';
  for (const auto& p : m.vertices()) out << p.x << ' ' << p.y << '\n';
  out << "$triangles " << m.num_triangles() << '\n';
  for (const auto& t : m.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "$boundary_edges " << m.num_boundary_edges() << '\n';
  for (const auto& e : m.boundary_edges())
    out << e.a << ' ' << e.b << ' ' << e.loop << ' ' << static_cast<int>(e.tag) << '\n';
}

inline void save_mesh(const Mesh& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write mesh file '" + path + "'", "io");
  write_mesh(out, m);
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'", "io");
}

}  // namespace divcurl
