#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "divcurl/error.hpp"

namespace divcurl {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
  Vec2& operator+=(Vec2 b) {
    x += b.x;
    y += b.y;
    return *this;
  }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// (g1, g2) -> (g2, -g1); maps a gradient to the corresponding Curl.
constexpr Vec2 perp(Vec2 g) { return {g.y, -g.x}; }

enum class RegionTag : int { None = 0, Nu = 1, Tau = 2 };

using Triangle = std::array<int, 3>;

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  int loop = 0;
  RegionTag tag = RegionTag::None;
  friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

/// Undirected mesh edge, a < b. `triangles[1]` is -1 on the boundary.
struct Edge {
  int a = 0;
  int b = 0;
  std::array<int, 2> triangles{-1, -1};
  int boundary_edge = -1;
  bool on_boundary() const { return triangles[1] < 0; }
};

struct EdgeFrame {
  Vec2 nu;
  Vec2 tau;
};

enum class MeshEntity { None, Vertex, Triangle, BoundaryEdge };

class MeshError : public Error {
 public:
  MeshError(ErrorCode code, const std::string& message, MeshEntity entity = MeshEntity::None,
            int index = -1)
      : Error(code, message, "mesh"), entity_(entity), index_(index) {}
  MeshEntity entity() const noexcept { return entity_; }
  int index() const noexcept { return index_; }

 private:
  MeshEntity entity_;
  int index_;
};

namespace detail {
inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}
}  // namespace detail

/// Conforming triangulation of a bounded planar region whose boundary is a
/// finite union of disjoint simple polygonal loops.
///
/// Triangles are counter-clockwise. Boundary edges are oriented so that the
/// region lies to their left; with ν the outward normal this gives
/// τ = (-ν₂, ν₁) along the edge. Loop 0 is the outer loop (positive signed
/// area); loops 1..J bound holes and run clockwise. The mesh is validated on
/// construction and immutable afterwards.
class Mesh {
 public:
  Mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles,
       std::vector<BoundaryEdge> boundary_edges)
      : vertices_(std::move(vertices)),
        triangles_(std::move(triangles)),
        boundary_edges_(std::move(boundary_edges)) {
    build();
  }

  /// Derives boundary edges and loops from the triangle list.
  static Mesh from_triangles(std::vector<Vec2> vertices, std::vector<Triangle> triangles);

  std::span<const Vec2> vertices() const { return vertices_; }
  const Vec2& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  std::span<const Triangle> triangles() const { return triangles_; }
  const Triangle& triangle(int t) const { return triangles_[static_cast<std::size_t>(t)]; }
  std::span<const BoundaryEdge> boundary_edges() const { return boundary_edges_; }
  const BoundaryEdge& boundary_edge(int e) const {
    return boundary_edges_[static_cast<std::size_t>(e)];
  }
  std::span<const Edge> edges() const { return edges_; }
  const std::vector<std::vector<int>>& loops() const { return loops_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_boundary_edges() const { return static_cast<int>(boundary_edges_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_loops() const { return static_cast<int>(loops_.size()); }
  /// J, the number of holes.
  int num_holes() const { return num_loops() - 1; }

  /// Sorted list of vertices lying on the boundary.
  std::span<const int> boundary_vertices() const { return boundary_vertices_; }
  int num_boundary_vertices() const { return static_cast<int>(boundary_vertices_.size()); }
  /// Position of `v` in boundary_vertices(), or -1 for interior vertices.
  int boundary_index(int v) const { return boundary_index_[static_cast<std::size_t>(v)]; }
  bool is_boundary_vertex(int v) const { return boundary_index(v) >= 0; }

  double signed_area(int t) const {
    const auto& tri = triangle(t);
    return 0.5 * cross(vertex(tri[1]) - vertex(tri[0]), vertex(tri[2]) - vertex(tri[0]));
  }
  Vec2 centroid(int t) const {
    const auto& tri = triangle(t);
    return (vertex(tri[0]) + vertex(tri[1]) + vertex(tri[2])) / 3.0;
  }
  double total_area() const {
    double s = 0.0;
    for (int t = 0; t < num_triangles(); ++t) s += signed_area(t);
    return s;
  }
  double boundary_edge_length(int e) const {
    const auto& be = boundary_edge(e);
    return norm(vertex(be.b) - vertex(be.a));
  }
  double perimeter() const {
    double s = 0.0;
    for (int e = 0; e < num_boundary_edges(); ++e) s += boundary_edge_length(e);
    return s;
  }
  /// Shoelace area of one boundary loop; negative for holes.
  double loop_signed_area(int loop) const {
    double s = 0.0;
    for (int e : loops_[static_cast<std::size_t>(loop)]) {
      const auto& be = boundary_edge(e);
      s += cross(vertex(be.a), vertex(be.b));
    }
    return 0.5 * s;
  }
  double max_edge_length() const {
    double h = 0.0;
    for (const auto& e : edges_) h = std::max(h, norm(vertex(e.b) - vertex(e.a)));
    return h;
  }

  /// Index into edges() of the edge joining a and b, or -1.
  int edge_between(int a, int b) const {
    auto it = edge_lookup_.find(detail::edge_key(a, b));
    return it == edge_lookup_.end() ? -1 : it->second;
  }

  /// Outward normal and positive tangent of a boundary edge (index into
  /// boundary_edges()).
  EdgeFrame boundary_frame(int e) const {
    if (e < 0 || e >= num_boundary_edges()) {
      throw Error(ErrorCode::InvalidArgument, "boundary edge index out of range");
    }
    const auto& be = boundary_edge(e);
    const Vec2 d = vertex(be.b) - vertex(be.a);
    const Vec2 tau = d / norm(d);
    return {{tau.y, -tau.x}, tau};
  }

  /// Same as boundary_frame but indexed by edges(); interior edges have no frame.
  EdgeFrame edge_frame(int edge) const {
    if (edge < 0 || edge >= num_edges()) {
      throw Error(ErrorCode::InvalidArgument, "edge index out of range");
    }
    const auto& e = edges_[static_cast<std::size_t>(edge)];
    if (!e.on_boundary()) {
      throw Error(ErrorCode::InvalidArgument,
                  "edge " + std::to_string(edge) + " is interior and has no normal frame");
    }
    return boundary_frame(e.boundary_edge);
  }

  /// Copy with boundary tags replaced; `tags` is indexed by boundary edge.
  Mesh with_tags(std::span<const RegionTag> tags) const {
    if (static_cast<int>(tags.size()) != num_boundary_edges()) {
      throw Error(ErrorCode::InvalidArgument, "tag list length differs from boundary edge count");
    }
    auto be = boundary_edges_;
    for (std::size_t i = 0; i < be.size(); ++i) be[i].tag = tags[i];
    return Mesh(vertices_, triangles_, std::move(be));
  }

  /// Copy with every vertex mapped through `f` and the same connectivity.
  /// Orientation-reversing maps are rejected by validation.
  template <class F>
  Mesh mapped(F&& f) const {
    std::vector<Vec2> v;
    v.reserve(vertices_.size());
    for (const auto& p : vertices_) v.push_back(f(p));
    return Mesh(std::move(v), triangles_, boundary_edges_);
  }

 private:
  void build();

  std::vector<Vec2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<BoundaryEdge> boundary_edges_;

  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
  std::vector<std::vector<int>> loops_;
  std::vector<int> boundary_vertices_;
  std::vector<int> boundary_index_;
};

inline void Mesh::build() {
  const int nv = num_vertices();
  const int nt = num_triangles();
  if (nv < 3 || nt < 1) {
    throw MeshError(ErrorCode::Topology, "mesh needs at least 3 vertices and 1 triangle");
  }
  for (int i = 0; i < nv; ++i) {
    if (!std::isfinite(vertex(i).x) || !std::isfinite(vertex(i).y)) {
      throw MeshError(ErrorCode::InvalidArgument, "vertex " + std::to_string(i) + " is not finite",
                      MeshEntity::Vertex, i);
    }
  }

  // Edges from triangles. The directed edge (a -> b) of a CCW triangle has
  // the triangle on its left; a consistently oriented manifold sees each
  // undirected edge once in each direction.
  edges_.clear();
  edge_lookup_.clear();
  edge_lookup_.reserve(static_cast<std::size_t>(3 * nt));
  std::vector<std::array<int, 2>> directed_owner;  // per edge: triangle with a->b, with b->a
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangle(t);
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= nv) {
        throw MeshError(ErrorCode::Topology,
                        "triangle " + std::to_string(t) + " references a vertex out of range",
                        MeshEntity::Triangle, t);
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw MeshError(ErrorCode::Topology,
                      "triangle " + std::to_string(t) + " repeats a vertex", MeshEntity::Triangle, t);
    }
    if (!(signed_area(t) > 0.0)) {
      throw MeshError(ErrorCode::Orientation,
                      "triangle " + std::to_string(t) + " has non-positive signed area",
                      MeshEntity::Triangle, t);
    }
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      const auto key = detail::edge_key(a, b);
      auto [it, inserted] = edge_lookup_.try_emplace(key, static_cast<int>(edges_.size()));
      if (inserted) {
        edges_.push_back(Edge{std::min(a, b), std::max(a, b), {t, -1}, -1});
        directed_owner.push_back({-1, -1});
      } else {
        auto& e = edges_[static_cast<std::size_t>(it->second)];
        if (e.triangles[1] >= 0) {
          throw MeshError(ErrorCode::Topology,
                          "edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") is shared by more than two triangles",
                          MeshEntity::Triangle, t);
        }
        e.triangles[1] = t;
      }
      auto& owner = directed_owner[static_cast<std::size_t>(it->second)];
      const int dir = a < b ? 0 : 1;
      if (owner[static_cast<std::size_t>(dir)] >= 0) {
        throw MeshError(ErrorCode::Orientation,
                        "triangles " + std::to_string(owner[static_cast<std::size_t>(dir)]) +
                            " and " + std::to_string(t) + " traverse edge (" + std::to_string(a) +
                            "," + std::to_string(b) + ") in the same direction",
                        MeshEntity::Triangle, t);
      }
      owner[static_cast<std::size_t>(dir)] = t;
    }
  }

  // Boundary edges must match the one-triangle edges exactly, with the
  // triangle's orientation.
  for (auto& e : edges_) e.boundary_edge = -1;
  const int nb = num_boundary_edges();
  int max_loop = -1;
  for (int i = 0; i < nb; ++i) {
    const auto& be = boundary_edge(i);
    if (be.a < 0 || be.a >= nv || be.b < 0 || be.b >= nv || be.a == be.b) {
      throw MeshError(ErrorCode::Topology,
                      "boundary edge " + std::to_string(i) + " references invalid vertices",
                      MeshEntity::BoundaryEdge, i);
    }
    if (be.loop < 0) {
      throw MeshError(ErrorCode::Topology, "boundary edge " + std::to_string(i) + " has negative loop id",
                      MeshEntity::BoundaryEdge, i);
    }
    if (be.tag != RegionTag::None && be.tag != RegionTag::Nu && be.tag != RegionTag::Tau) {
      throw MeshError(ErrorCode::InvalidArgument,
                      "boundary edge " + std::to_string(i) + " has an unknown region tag",
                      MeshEntity::BoundaryEdge, i);
    }
    max_loop = std::max(max_loop, be.loop);
    const int ei = edge_between(be.a, be.b);
    if (ei < 0) {
      throw MeshError(ErrorCode::Topology,
                      "boundary edge " + std::to_string(i) + " is not an edge of any triangle",
                      MeshEntity::BoundaryEdge, i);
    }
    auto& e = edges_[static_cast<std::size_t>(ei)];
    if (!e.on_boundary()) {
      throw MeshError(ErrorCode::Topology,
                      "boundary edge " + std::to_string(i) + " is used by two triangles",
                      MeshEntity::BoundaryEdge, i);
    }
    if (e.boundary_edge >= 0) {
      throw MeshError(ErrorCode::Topology, "boundary edge " + std::to_string(i) + " is listed twice",
                      MeshEntity::BoundaryEdge, i);
    }
    const auto& owner = directed_owner[static_cast<std::size_t>(ei)];
    const int dir = be.a < be.b ? 0 : 1;
    if (owner[static_cast<std::size_t>(dir)] < 0) {
      throw MeshError(ErrorCode::Orientation,
                      "boundary edge " + std::to_string(i) +
                          " runs against its triangle (region must lie to its left)",
                      MeshEntity::BoundaryEdge, i);
    }
    e.boundary_edge = i;
  }
  for (const auto& e : edges_) {
    if (e.on_boundary() && e.boundary_edge < 0) {
      throw MeshError(ErrorCode::Topology,
                      "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                          ") has one triangle but is missing from the boundary edge list",
                      MeshEntity::Triangle, e.triangles[0]);
    }
  }

  // Loops: each loop id forms one closed simple cycle, loops are vertex-disjoint.
  const int nloops = max_loop + 1;
  std::vector<std::vector<int>> per_loop(static_cast<std::size_t>(nloops));
  for (int i = 0; i < nb; ++i) per_loop[static_cast<std::size_t>(boundary_edge(i).loop)].push_back(i);
  std::vector<int> out_edge(static_cast<std::size_t>(nv), -1);
  std::vector<int> in_count(static_cast<std::size_t>(nv), 0);
  for (int i = 0; i < nb; ++i) {
    const auto& be = boundary_edge(i);
    if (out_edge[static_cast<std::size_t>(be.a)] >= 0) {
      throw MeshError(ErrorCode::Topology,
                      "boundary vertex " + std::to_string(be.a) +
                          " starts two boundary edges (loops touch or self-intersect)",
                      MeshEntity::BoundaryEdge, i);
    }
    out_edge[static_cast<std::size_t>(be.a)] = i;
    if (++in_count[static_cast<std::size_t>(be.b)] > 1) {
      throw MeshError(ErrorCode::Topology,
                      "boundary vertex " + std::to_string(be.b) + " ends two boundary edges",
                      MeshEntity::BoundaryEdge, i);
    }
  }
  loops_.assign(static_cast<std::size_t>(nloops), {});
  for (int l = 0; l < nloops; ++l) {
    const auto& members = per_loop[static_cast<std::size_t>(l)];
    if (members.empty()) {
      throw MeshError(ErrorCode::Topology, "loop id " + std::to_string(l) + " has no edges");
    }
    auto& order = loops_[static_cast<std::size_t>(l)];
    int e = members.front();
    do {
      order.push_back(e);
      const int next = out_edge[static_cast<std::size_t>(boundary_edge(e).b)];
      if (next < 0 || boundary_edge(next).loop != l) {
        throw MeshError(ErrorCode::Topology,
                        "boundary edges of loop " + std::to_string(l) + " do not close into a cycle",
                        MeshEntity::BoundaryEdge, e);
      }
      e = next;
      if (order.size() > members.size()) break;
    } while (e != members.front());
    if (order.size() != members.size()) {
      throw MeshError(ErrorCode::Topology,
                      "boundary edges of loop " + std::to_string(l) + " form more than one cycle",
                      MeshEntity::BoundaryEdge, members.front());
    }
  }
  if (!(loop_signed_area(0) > 0.0)) {
    throw MeshError(ErrorCode::Topology, "loop 0 must be the outer, counter-clockwise loop",
                    MeshEntity::BoundaryEdge, loops_[0].front());
  }
  for (int l = 1; l < nloops; ++l) {
    if (!(loop_signed_area(l) < 0.0)) {
      throw MeshError(ErrorCode::Topology,
                      "loop " + std::to_string(l) + " must bound a hole (clockwise)",
                      MeshEntity::BoundaryEdge, loops_[static_cast<std::size_t>(l)].front());
    }
  }

  // Connectivity of the triangle adjacency graph.
  {
    std::vector<char> seen(static_cast<std::size_t>(nt), 0);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nt));
    for (const auto& e : edges_) {
      if (!e.on_boundary()) {
        adj[static_cast<std::size_t>(e.triangles[0])].push_back(e.triangles[1]);
        adj[static_cast<std::size_t>(e.triangles[1])].push_back(e.triangles[0]);
      }
    }
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int u : adj[static_cast<std::size_t>(t)]) {
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          ++count;
          stack.push_back(u);
        }
      }
    }
    if (count != nt) throw MeshError(ErrorCode::Topology, "mesh is not connected");
  }
  {
    std::vector<char> used(static_cast<std::size_t>(nv), 0);
    for (const auto& tri : triangles_)
      for (int v : tri) used[static_cast<std::size_t>(v)] = 1;
    for (int i = 0; i < nv; ++i) {
      if (!used[static_cast<std::size_t>(i)]) {
        throw MeshError(ErrorCode::Topology, "vertex " + std::to_string(i) + " belongs to no triangle",
                        MeshEntity::Vertex, i);
      }
    }
  }

  boundary_vertices_.clear();
  for (const auto& be : boundary_edges_) boundary_vertices_.push_back(be.a);
  std::sort(boundary_vertices_.begin(), boundary_vertices_.end());
  boundary_index_.assign(static_cast<std::size_t>(nv), -1);
  for (std::size_t i = 0; i < boundary_vertices_.size(); ++i) {
    boundary_index_[static_cast<std::size_t>(boundary_vertices_[i])] = static_cast<int>(i);
  }
}

inline Mesh Mesh::from_triangles(std::vector<Vec2> vertices, std::vector<Triangle> triangles) {
  // Directed boundary edges are the triangle edges whose reverse never occurs.
  std::unordered_map<std::uint64_t, int> count;
  for (const auto& tri : triangles)
    for (int k = 0; k < 3; ++k) ++count[detail::edge_key(tri[k], tri[(k + 1) % 3])];
  std::vector<std::pair<int, int>> directed;
  for (const auto& tri : triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      if (count[detail::edge_key(a, b)] == 1) directed.emplace_back(a, b);
    }
  }
  std::unordered_map<int, int> out;
  for (std::size_t i = 0; i < directed.size(); ++i) {
    if (!out.try_emplace(directed[i].first, static_cast<int>(i)).second) {
      throw MeshError(ErrorCode::Topology, "boundary vertex " + std::to_string(directed[i].first) +
                                               " starts two boundary edges");
    }
  }

  // Walk cycles, each started from its smallest vertex.
  std::vector<int> starts;
  for (const auto& d : directed) starts.push_back(d.first);
  std::sort(starts.begin(), starts.end());
  std::vector<char> taken(directed.size(), 0);
  std::vector<std::vector<std::pair<int, int>>> cycles;
  for (int s : starts) {
    int e = out.at(s);
    if (taken[static_cast<std::size_t>(e)]) continue;
    std::vector<std::pair<int, int>> cyc;
    while (!taken[static_cast<std::size_t>(e)]) {
      taken[static_cast<std::size_t>(e)] = 1;
      cyc.push_back(directed[static_cast<std::size_t>(e)]);
      auto it = out.find(directed[static_cast<std::size_t>(e)].second);
      if (it == out.end()) throw MeshError(ErrorCode::Topology, "boundary does not close");
      e = it->second;
    }
    cycles.push_back(std::move(cyc));
  }
  auto area = [&](const std::vector<std::pair<int, int>>& c) {
    double s = 0.0;
    for (auto [a, b] : c)
      s += cross(vertices[static_cast<std::size_t>(a)], vertices[static_cast<std::size_t>(b)]);
    return 0.5 * s;
  };
  std::size_t outer = 0;
  for (std::size_t i = 1; i < cycles.size(); ++i)
    if (area(cycles[i]) > area(cycles[outer])) outer = i;

  std::vector<BoundaryEdge> be;
  auto emit = [&](const std::vector<std::pair<int, int>>& c, int loop) {
    for (auto [a, b] : c) be.push_back({a, b, loop, RegionTag::None});
  };
  if (!cycles.empty()) emit(cycles[outer], 0);
  int loop = 1;
  for (std::size_t i = 0; i < cycles.size(); ++i)
    if (i != outer) emit(cycles[i], loop++);
  return Mesh(std::move(vertices), std::move(triangles), std::move(be));
}

/// Crossed-diagonal triangulation of [0,w]x[0,h]: every cell gets a center
/// vertex and four triangles.
inline Mesh generate_rectangle(int nx, int ny, double w, double h) {
  if (nx < 1 || ny < 1) throw Error(ErrorCode::InvalidArgument, "rectangle needs nx, ny >= 1");
  if (!(w > 0.0) || !(h > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rectangle needs positive width and height");
  }
  std::vector<Vec2> v;
  const int npx = nx + 1;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) v.push_back({w * i / nx, h * j / ny});
  auto grid = [&](int i, int j) { return j * npx + i; };
  std::vector<Triangle> t;
  t.reserve(static_cast<std::size_t>(4 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c = static_cast<int>(v.size());
      v.push_back({w * (i + 0.5) / nx, h * (j + 0.5) / ny});
      const int v00 = grid(i, j), v10 = grid(i + 1, j), v11 = grid(i + 1, j + 1), v01 = grid(i, j + 1);
      t.push_back({v00, v10, c});
      t.push_back({v10, v11, c});
      t.push_back({v11, v01, c});
      t.push_back({v01, v00, c});
    }
  }
  return Mesh::from_triangles(std::move(v), std::move(t));
}

inline Mesh generate_square(int n) { return generate_rectangle(n, n, 1.0, 1.0); }

/// Polygonal disk of radius r. Ring i (1..n_rings) carries about
/// n_sectors*i/n_rings vertices so triangles stay roughly isotropic; the
/// boundary ring has exactly n_sectors vertices.
inline Mesh generate_disk(int n_rings, int n_sectors, double r) {
  if (n_rings < 1 || n_sectors < 3) {
    throw Error(ErrorCode::InvalidArgument, "disk needs n_rings >= 1 and n_sectors >= 3");
  }
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "disk radius must be positive");
  std::vector<Vec2> v{{0.0, 0.0}};
  std::vector<std::vector<int>> rings{{0}};
  for (int i = 1; i <= n_rings; ++i) {
    const int count =
        i == n_rings ? n_sectors
                     : std::max(3, static_cast<int>(std::lround(double(n_sectors) * i / n_rings)));
    const double rad = r * i / n_rings;
    std::vector<int> ring;
    for (int k = 0; k < count; ++k) {
      const double th = 2.0 * std::numbers::pi * k / count;
      ring.push_back(static_cast<int>(v.size()));
      v.push_back({rad * std::cos(th), rad * std::sin(th)});
    }
    rings.push_back(std::move(ring));
  }
  std::vector<Triangle> t;
  for (int k = 0; k < static_cast<int>(rings[1].size()); ++k) {
    const int n1 = static_cast<int>(rings[1].size());
    t.push_back({0, rings[1][static_cast<std::size_t>(k)], rings[1][static_cast<std::size_t>((k + 1) % n1)]});
  }
  for (int i = 2; i <= n_rings; ++i) {
    const auto& in = rings[static_cast<std::size_t>(i - 1)];
    const auto& out = rings[static_cast<std::size_t>(i)];
    const int ni = static_cast<int>(in.size());
    const int no = static_cast<int>(out.size());
    // Zip the two rings by angle.
    int a = 0, b = 0;
    while (a < ni || b < no) {
      const double next_in = double(a + 1) / ni;
      const double next_out = double(b + 1) / no;
      if (b < no && (a >= ni || next_out <= next_in)) {
        t.push_back({in[static_cast<std::size_t>(a % ni)], out[static_cast<std::size_t>(b)],
                     out[static_cast<std::size_t>((b + 1) % no)]});
        ++b;
      } else {
        t.push_back({in[static_cast<std::size_t>(a)], out[static_cast<std::size_t>(b % no)],
                     in[static_cast<std::size_t>((a + 1) % ni)]});
        ++a;
      }
    }
  }
  return Mesh::from_triangles(std::move(v), std::move(t));
}

/// Polygonal annulus r_in < |x| < r_out centred at the origin (J = 1).
inline Mesh generate_annulus(double r_in, double r_out, int n_rings, int n_sectors) {
  if (!(r_in > 0.0) || !(r_in < r_out)) {
    throw Error(ErrorCode::InvalidArgument, "annulus needs 0 < r_in < r_out");
  }
  if (n_rings < 1 || n_sectors < 3) {
    throw Error(ErrorCode::InvalidArgument, "annulus needs n_rings >= 1 and n_sectors >= 3");
  }
  std::vector<Vec2> v;
  for (int i = 0; i <= n_rings; ++i) {
    const double rad = r_in + (r_out - r_in) * i / n_rings;
    for (int k = 0; k < n_sectors; ++k) {
      const double th = 2.0 * std::numbers::pi * k / n_sectors;
      v.push_back({rad * std::cos(th), rad * std::sin(th)});
    }
  }
  auto id = [&](int i, int k) { return i * n_sectors + (k % n_sectors); };
  std::vector<Triangle> t;
  for (int i = 0; i < n_rings; ++i) {
    for (int k = 0; k < n_sectors; ++k) {
      t.push_back({id(i, k), id(i + 1, k), id(i + 1, k + 1)});
      t.push_back({id(i, k), id(i + 1, k + 1), id(i, k + 1)});
    }
  }
  return Mesh::from_triangles(std::move(v), std::move(t));
}

/// Splits every triangle into four through its edge midpoints. Loop ids and
/// region tags carry over to both halves of each boundary edge.
inline Mesh refine_uniform(const Mesh& m) {
  std::vector<Vec2> v(m.vertices().begin(), m.vertices().end());
  const int nv = m.num_vertices();
  for (const auto& e : m.edges()) v.push_back(0.5 * (m.vertex(e.a) + m.vertex(e.b)));
  auto mid = [&](int a, int b) { return nv + m.edge_between(a, b); };
  std::vector<Triangle> t;
  t.reserve(static_cast<std::size_t>(4 * m.num_triangles()));
  for (const auto& tri : m.triangles()) {
    const int a = tri[0], b = tri[1], c = tri[2];
    const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    t.push_back({a, ab, ca});
    t.push_back({ab, b, bc});
    t.push_back({ca, bc, c});
    t.push_back({ab, bc, ca});
  }
  std::vector<BoundaryEdge> be;
  be.reserve(static_cast<std::size_t>(2 * m.num_boundary_edges()));
  for (const auto& e : m.boundary_edges()) {
    const int mm = mid(e.a, e.b);
    be.push_back({e.a, mm, e.loop, e.tag});
    be.push_back({mm, e.b, e.loop, e.tag});
  }
  return Mesh(std::move(v), std::move(t), std::move(be));
}

// ---------------------------------------------------------------------------
// Boundary partitions for the mixed problem.

/// Split of the boundary edges into the normal-data piece Γ_ν and the
/// tangential-data piece Γ_τ. Both lists are sorted boundary edge indices.
struct BoundaryPartition {
  std::vector<int> gamma_nu;
  std::vector<int> gamma_tau;
};

/// Sorted, de-duplicated vertex set of a list of boundary edges.
inline std::vector<int> edge_vertices(const Mesh& m, std::span<const int> edges) {
  std::vector<int> out;
  for (int e : edges) {
    out.push_back(m.boundary_edge(e).a);
    out.push_back(m.boundary_edge(e).b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<int> complement_edges(const Mesh& m, std::span<const int> edges) {
  std::vector<char> in(static_cast<std::size_t>(m.num_boundary_edges()), 0);
  for (int e : edges) in[static_cast<std::size_t>(e)] = 1;
  std::vector<int> out;
  for (int e = 0; e < m.num_boundary_edges(); ++e)
    if (!in[static_cast<std::size_t>(e)]) out.push_back(e);
  return out;
}

inline std::vector<int> all_boundary_edges(const Mesh& m) {
  std::vector<int> out(static_cast<std::size_t>(m.num_boundary_edges()));
  for (int e = 0; e < m.num_boundary_edges(); ++e) out[static_cast<std::size_t>(e)] = e;
  return out;
}

/// Checks disjointness and coverage; throws on violation.
inline void validate_partition(const Mesh& m, const BoundaryPartition& p) {
  std::vector<int> mark(static_cast<std::size_t>(m.num_boundary_edges()), 0);
  for (const auto* piece : {&p.gamma_nu, &p.gamma_tau}) {
    for (int e : *piece) {
      if (e < 0 || e >= m.num_boundary_edges()) {
        throw Error(ErrorCode::InvalidArgument, "partition references a non-boundary edge",
                    "partition");
      }
      if (mark[static_cast<std::size_t>(e)]++) {
        throw Error(ErrorCode::InvalidArgument,
                    "boundary edge " + std::to_string(e) + " lies in both Γ_ν and Γ_τ", "partition");
      }
    }
  }
  for (int e = 0; e < m.num_boundary_edges(); ++e) {
    if (!mark[static_cast<std::size_t>(e)]) {
      throw Error(ErrorCode::InvalidArgument,
                  "boundary edge " + std::to_string(e) + " lies in neither Γ_ν nor Γ_τ", "partition");
    }
  }
}

inline BoundaryPartition make_partition(const Mesh& m, std::vector<int> gamma_nu) {
  std::sort(gamma_nu.begin(), gamma_nu.end());
  gamma_nu.erase(std::unique(gamma_nu.begin(), gamma_nu.end()), gamma_nu.end());
  BoundaryPartition p{gamma_nu, complement_edges(m, gamma_nu)};
  validate_partition(m, p);
  return p;
}

/// Edges tagged NU form Γ_ν; every other edge (TAU or NONE) goes to Γ_τ.
inline BoundaryPartition partition_from_tags(const Mesh& m) {
  std::vector<int> nu;
  for (int e = 0; e < m.num_boundary_edges(); ++e)
    if (m.boundary_edge(e).tag == RegionTag::Nu) nu.push_back(e);
  return make_partition(m, std::move(nu));
}

/// Parses a comma-separated arc list into boundary edge indices.
///
/// Tokens: `bottom|right|top|left` (edges whose outward normal is the
/// matching axis direction), `loopK` (every edge of loop K), `half` (first
/// half of loop 0), `all`, a single index `7`, or an inclusive range `3-9`.
inline std::vector<int> parse_arc_list(const Mesh& m, const std::string& spec) {
  std::vector<int> out;
  std::size_t pos = 0;
  auto side = [&](Vec2 dir) {
    for (int e = 0; e < m.num_boundary_edges(); ++e)
      if (dot(m.boundary_frame(e).nu, dir) > 1.0 - 1e-12) out.push_back(e);
  };
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? spec.size() + 1 : comma + 1;
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    if (tok.empty()) continue;
    if (tok == "bottom") side({0.0, -1.0});
    else if (tok == "right") side({1.0, 0.0});
    else if (tok == "top") side({0.0, 1.0});
    else if (tok == "left") side({-1.0, 0.0});
    else if (tok == "all") {
      auto all = all_boundary_edges(m);
      out.insert(out.end(), all.begin(), all.end());
    } else if (tok == "half") {
      const auto& l0 = m.loops()[0];
      out.insert(out.end(), l0.begin(), l0.begin() + static_cast<std::ptrdiff_t>(l0.size() / 2));
    } else if (tok.rfind("loop", 0) == 0) {
      int l = -1;
      try {
        l = std::stoi(tok.substr(4));
      } catch (...) {
      }
      if (l < 0 || l >= m.num_loops()) {
        throw Error(ErrorCode::InvalidArgument, "arc list: unknown loop '" + tok + "'", "arc_list");
      }
      const auto& lp = m.loops()[static_cast<std::size_t>(l)];
      out.insert(out.end(), lp.begin(), lp.end());
    } else {
      const auto dash = tok.find('-');
      try {
        std::size_t used = 0;
        const int lo = std::stoi(tok.substr(0, dash), &used);
        const int hi = dash == std::string::npos ? lo : std::stoi(tok.substr(dash + 1));
        if (lo < 0 || hi >= m.num_boundary_edges() || lo > hi) throw std::out_of_range("range");
        for (int e = lo; e <= hi; ++e) out.push_back(e);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "arc list: cannot parse '" + tok + "'", "arc_list");
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace divcurl
