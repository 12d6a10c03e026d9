#pragma once

#include <fstream>
#include <iomanip>
#include <string>

#include "divcurl/fem.hpp"
#include "divcurl/mesh_io.hpp"

namespace divcurl {

// $scalar N / $vector M / $boundary K, same comment and line rules as meshes.

inline ScalarField read_scalar(std::istream& in, const Mesh& m, const std::string& source = "<scalar>") {
  detail::LineReader r(in, source);
  const int n = r.header("scalar");
  if (n != m.num_vertices()) {
    r.fail("scalar field has " + std::to_string(n) + " values, mesh has " + std::to_string(m.num_vertices()) +
           " vertices");
  }
  Vector c(static_cast<std::size_t>(n));
  for (auto& x : c) r.record(x);
  return {m, std::move(c)};
}

inline VectorField read_vector(std::istream& in, const Mesh& m, const std::string& source = "<vector>") {
  detail::LineReader r(in, source);
  const int n = r.header("vector");
  if (n != m.num_triangles()) {
    r.fail("vector field has " + std::to_string(n) + " values, mesh has " + std::to_string(m.num_triangles()) +
           " triangles");
  }
  std::vector<Vec2> v(static_cast<std::size_t>(n));
  for (auto& x : v) r.record(x.x, x.y);
  return {m, std::move(v)};
}

/// Boundary entries are `vertex_index value`; vertices not listed get 0.
inline BoundaryFunction read_boundary(std::istream& in, const Mesh& m, const std::string& source = "<boundary>") {
  detail::LineReader r(in, source);
  const int n = r.header("boundary");
  BoundaryFunction g = BoundaryFunction::zero(m);
  std::vector<char> seen(g.values.size(), 0);
  for (int i = 0; i < n; ++i) {
    int v = -1;
    double x = 0.0;
    r.record(v, x);
    if (v < 0 || v >= m.num_vertices() || !m.is_boundary_vertex(v)) {
      r.fail("vertex " + std::to_string(v) + " is not a boundary vertex");
    }
    const auto k = static_cast<std::size_t>(m.boundary_index(v));
    if (seen[k]++) r.fail("vertex " + std::to_string(v) + " listed twice");
    if (!std::isfinite(x)) r.fail("value is not finite");
    g.values[k] = x;
  }
  return g;
}

inline void write_scalar(std::ostream& out, const ScalarField& f) {
  out << std::setprecision(17) << "$scalar " << f.coeffs.size() << '\n';
  for (double x : f.coeffs) out << x << '\n';
}

inline void write_vector(std::ostream& out, const VectorField& v) {
  out << std::setprecision(17) << "$vector " << v.values.size() << '\n';
  for (const auto& x : v.values) out << x.x << ' ' << x.y << '\n';
}

inline void write_boundary(std::ostream& out, const BoundaryFunction& g) {
  out << std::setprecision(17) << "$boundary " << g.values.size() << '\n';
  const auto bv = g.mesh->boundary_vertices();
  for (std::size_t i = 0; i < bv.size(); ++i) out << bv[i] << ' ' << g.values[i] << '\n';
}

namespace detail {
template <class F>
auto with_input(const std::string& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'", "io");
  return f(in);
}
template <class F>
void with_output(const std::string& path, F&& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'", "io");
  f(out);
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'", "io");
}
}  // namespace detail

inline ScalarField load_scalar(const std::string& path, const Mesh& m) {
  return detail::with_input(path, [&](std::istream& in) { return read_scalar(in, m, path); });
}
inline VectorField load_vector(const std::string& path, const Mesh& m) {
  return detail::with_input(path, [&](std::istream& in) { return read_vector(in, m, path); });
}
inline BoundaryFunction load_boundary(const std::string& path, const Mesh& m) {
  return detail::with_input(path, [&](std::istream& in) { return read_boundary(in, m, path); });
}
inline void save_scalar(const ScalarField& f, const std::string& path) {
  detail::with_output(path, [&](std::ostream& o) { write_scalar(o, f); });
}
inline void save_vector(const VectorField& v, const std::string& path) {
  detail::with_output(path, [&](std::ostream& o) { write_vector(o, v); });
}
inline void save_boundary(const BoundaryFunction& g, const std::string& path) {
  detail::with_output(path, [&](std::ostream& o) { write_boundary(o, g); });
}

}  // namespace divcurl
