#pragma once

// Batch front end. Every subcommand emits a JSON report on stdout (and to
// <out>/report.json when --out is given); tables go to CSV files in <out>.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divcurl/divcurl.hpp"

namespace divcurl::cli {

using json = nlohmann::json;

struct RunConfig {
  std::string mesh_path;
  std::string gen;
  std::string rho, omega, eta_nu, eta_tau;
  std::string gamma_nu = "half";
  std::string gamma;
  std::string field;
  std::string out;
  double tol = 1e-12;
  double eig_tol = 1e-10;
  int steklov_terms = 0;
  int levels = 4;
  int draws = 20;
  std::uint64_t seed = 1;
  int k = 7;
  std::string which = "lambda1";
  std::string test_case = "poisson";
  std::string mesh_action;
};

// ---------------------------------------------------------------------------
// Generator specs: square:n=32, rect:nx=4,ny=2,w=2,h=1, disk:rings=8,sectors=64,r=1,
// annulus:rin=0.5,rout=1,rings=4,sectors=64. Any spec accepts refine=K.

inline Mesh generate_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "generator spec item '" + item + "' is not key=value", "generator_spec");
      }
      try {
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "generator spec value in '" + item + "' is not a number", "generator_spec");
      }
    }
  }
  std::vector<std::string> allowed;
  auto get = [&](const std::string& key, double def) {
    allowed.push_back(key);
    auto it = kv.find(key);
    return it == kv.end() ? def : it->second;
  };
  auto count = [&](const std::string& key, int def) {
    const double v = get(key, def);
    if (v != std::floor(v)) throw Error(ErrorCode::InvalidArgument, "generator count '" + key + "' must be an integer", "generator_spec");
    return static_cast<int>(v);
  };
  std::optional<Mesh> m;
  const int refine = count("refine", 0);
  if (kind == "square") {
    m = generate_square(count("n", 16));
  } else if (kind == "rect") {
    m = generate_rectangle(count("nx", 16), count("ny", 16), get("w", 1.0), get("h", 1.0));
  } else if (kind == "disk") {
    m = generate_disk(count("rings", 8), count("sectors", 64), get("r", 1.0));
  } else if (kind == "annulus") {
    m = generate_annulus(get("rin", 0.5), get("rout", 1.0), count("rings", 4), count("sectors", 64));
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown generator '" + kind + "'", "generator_spec");
  }
  for (const auto& [k, v] : kv) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw Error(ErrorCode::InvalidArgument, "generator '" + kind + "' has no parameter '" + k + "'", "generator_spec");
    }
  }
  for (int i = 0; i < refine; ++i) m = refine_uniform(*m);
  return *m;
}

inline Mesh mesh_from_config(const RunConfig& c, const std::string& fallback = "square:n=16") {
  if (!c.mesh_path.empty() && !c.gen.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give either --mesh or --gen, not both", "config");
  }
  if (!c.mesh_path.empty()) return load_mesh(c.mesh_path);
  return generate_from_spec(c.gen.empty() ? fallback : c.gen);
}

// ---------------------------------------------------------------------------
// Data inputs: a file path or const:<value>.

inline std::optional<double> const_value(const std::string& src) {
  if (src.rfind("const:", 0) != 0) return std::nullopt;
  try {
    return std::stod(src.substr(6));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse '" + src + "'", "config");
  }
}

inline ScalarField scalar_input(const std::string& src, const Mesh& m) {
  if (src.empty()) return ScalarField::zero(m);
  if (auto v = const_value(src)) return {m, Vector(static_cast<std::size_t>(m.num_vertices()), *v)};
  return load_scalar(src, m);
}

inline std::optional<BoundaryFunction> boundary_input(const std::string& src, const Mesh& m) {
  if (src.empty()) return std::nullopt;
  if (auto v = const_value(src)) return BoundaryFunction::constant(m, *v);
  return load_boundary(src, m);
}

// ---------------------------------------------------------------------------
// JSON helpers.

inline json to_json(const BoundReport& r) {
  json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["satisfied"] = r.satisfied;
  j["terms"] = r.terms;
  if (!r.extra.empty()) j["extra"] = r.extra;
  return j;
}

inline json mesh_json(const Mesh& m) {
  return {{"vertices", m.num_vertices()},
          {"triangles", m.num_triangles()},
          {"boundary_edges", m.num_boundary_edges()},
          {"loops", m.num_loops()},
          {"holes", m.num_holes()},
          {"area", m.total_area()},
          {"perimeter", m.perimeter()},
          {"h", m.max_edge_length()}};
}

inline std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

inline std::filesystem::path out_dir(const RunConfig& c) {
  std::filesystem::path p(c.out);
  if (!c.out.empty()) std::filesystem::create_directories(p);
  return p;
}

inline void write_csv(const RunConfig& c, const std::string& name, const std::string& header,
                      const std::vector<std::vector<std::string>>& rows) {
  if (c.out.empty()) return;
  detail::with_output((out_dir(c) / name).string(), [&](std::ostream& o) {
    o << header << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << r[i];
      o << '\n';
    }
  });
}

inline std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

inline EigenOptions eig_options(const RunConfig& c) {
  EigenOptions e;
  e.tol = c.eig_tol;
  return e;
}

// ---------------------------------------------------------------------------
// Random data for bound verification.

struct Draw {
  std::mt19937_64 gen;
  explicit Draw(std::uint64_t seed) : gen(seed) {}
  double uniform() { return 2.0 * detail::uniform01(gen) - 1.0; }
  ScalarField scalar(const Mesh& m) {
    Vector v(static_cast<std::size_t>(m.num_vertices()));
    for (double& x : v) x = uniform();
    return {m, std::move(v)};
  }
  BoundaryFunction boundary(const Mesh& m) {
    Vector v(static_cast<std::size_t>(m.num_boundary_vertices()));
    for (double& x : v) x = uniform();
    return {m, std::move(v)};
  }
};

/// η shifted by a constant so that ∫source = ∫η ds holds.
inline BoundaryFunction compatible_boundary(const ScalarField& source, BoundaryFunction eta) {
  const double shift = (integral(source) - boundary_integral(eta)) / eta.mesh->perimeter();
  for (double& x : eta.values) x += shift;
  return eta;
}

struct BoundTally {
  int total = 0;
  int satisfied = 0;
  double min_relative_slack = std::numeric_limits<double>::infinity();
  json draws = json::array();

  void add(const BoundReport& r) {
    ++total;
    if (r.satisfied) ++satisfied;
    const double rel = r.rhs > 0.0 ? r.slack / r.rhs : r.slack;
    min_relative_slack = std::min(min_relative_slack, rel);
    draws.push_back({{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack}, {"satisfied", r.satisfied}});
  }
  json to_json() const {
    return {{"checks", total},
            {"satisfied", satisfied},
            {"all_satisfied", total == satisfied},
            {"min_relative_slack", min_relative_slack},
            {"reports", draws}};
  }
};

inline json verify_mesh(const std::string& spec, std::size_t index, const Mesh& m, const RunConfig& c,
                        bool& all_ok) {
  const auto eig = eig_options(c);
  const auto k = discrete_constants(m, eig);
  const auto partition = make_partition(m, parse_arc_list(m, c.gamma_nu));
  const auto mk = mixed_constants(m, partition, eig);
  BvpOptions opt;
  opt.tol = c.tol;
  opt.constants = &k;
  opt.eig = eig;

  std::map<std::string, BoundTally> tally;
  // Independent stream per mesh so that one mesh's draws do not depend on another's.
  Draw draw(c.seed + 1000003ULL * index);
  for (int d = 0; d < c.draws; ++d) {
    const ScalarField rho = draw.scalar(m), omega = draw.scalar(m);
    for (const auto& r : dirichlet_bounds(rho, solve_dirichlet_poisson(rho, c.tol), k.lambda1)) tally["dirichlet"].add(r);

    BoundaryFunction eta = draw.boundary(m);
    eta = compatible_boundary(ScalarField::zero(m), eta);
    tally["neumann"].add(neumann_bound(eta, solve_neumann_fem(eta, c.tol), k.delta1));

    DivCurlData nd{rho, omega, compatible_boundary(rho, draw.boundary(m)), std::nullopt, std::nullopt};
    tally["normal"].add(solve_normal(nd, opt).report);

    DivCurlData td{rho, omega, std::nullopt, compatible_boundary(omega, draw.boundary(m)), std::nullopt};
    tally["tangential"].add(solve_tangential(td, opt).report);

    DivCurlData md{rho, omega, draw.boundary(m), draw.boundary(m), partition};
    const auto ms = solve_mixed(md, opt, &mk);
    tally["mixed"].add(ms.report);
    for (const auto& r : ms.sub_reports) tally["mixed_pieces"].add(r);
  }
  json problems;
  for (const auto& [name, t] : tally) {
    problems[name] = t.to_json();
    all_ok = all_ok && t.total == t.satisfied;
  }
  return {{"mesh", spec},
          {"geometry", mesh_json(m)},
          {"constants", {{"lambda1", k.lambda1}, {"delta1", k.delta1}, {"C0", k.c0}, {"M2_gamma_tau", mk.m2_tau}, {"M2_gamma_nu", mk.m2_nu}}},
          {"gamma_nu", c.gamma_nu},
          {"problems", problems}};
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns the report body.

inline void save_solution(const RunConfig& c, const DivCurlSolution& s, const std::string& psi_name,
                          const std::string& phi_name) {
  if (c.out.empty()) return;
  const auto dir = out_dir(c);
  save_vector(s.v, (dir / "v.txt").string());
  save_scalar(s.psi, (dir / (psi_name + ".txt")).string());
  save_scalar(s.phi, (dir / (phi_name + ".txt")).string());
  save_scalar(s.chi, (dir / "chi.txt").string());
}

inline json solution_json(const DivCurlSolution& s) {
  json subs = json::array();
  for (const auto& r : s.sub_reports) subs.push_back(to_json(r));
  json j = to_json(s.report);
  j["compat_residual"] = s.compat_residual;
  j["sub_reports"] = subs;
  j["norm_v"] = l2_norm(s.v);
  return j;
}

inline json cmd_mesh(const RunConfig& c) {
  if (c.mesh_action == "gen") {
    const Mesh m = generate_from_spec(c.gen.empty() ? "square:n=16" : c.gen);
    if (!c.out.empty()) save_mesh(m, (out_dir(c) / "mesh.txt").string());
    return {{"mesh", mesh_json(m)}};
  }
  if (c.mesh_action == "refine") {
    const Mesh m = refine_uniform(mesh_from_config(c));
    if (!c.out.empty()) save_mesh(m, (out_dir(c) / "mesh.txt").string());
    return {{"mesh", mesh_json(m)}};
  }
  const Mesh m = mesh_from_config(c);
  json loops = json::array();
  for (int l = 0; l < m.num_loops(); ++l)
    loops.push_back({{"loop", l}, {"edges", m.loops()[static_cast<std::size_t>(l)].size()}, {"signed_area", m.loop_signed_area(l)}});
  return {{"mesh", mesh_json(m)}, {"loops", loops}};
}

inline json cmd_eig(const RunConfig& c) {
  const Mesh m = mesh_from_config(c);
  const auto eig = eig_options(c);
  const double h = m.max_edge_length();
  std::vector<std::vector<std::string>> rows;
  json values = json::array();
  auto add = [&](const std::string& name, double v, int k) {
    rows.push_back({name, num(v), num(h), std::to_string(k)});
    values.push_back({{"name", name}, {"value", v}, {"mesh_h", h}, {"k", k}});
  };
  if (c.which == "lambda1") {
    add("lambda1", dirichlet_lambda1(m, eig), 1);
  } else if (c.which == "lambda_m") {
    add("lambda_m", neumann_lambda_m(m, eig), 1);
  } else if (c.which == "steklov") {
    const auto b = steklov_basis(m, c.k, eig);
    for (int j = 0; j < b.size(); ++j) add("delta" + std::to_string(j), b.delta(j), j);
  } else if (c.which == "mixed") {
    const auto gamma = parse_arc_list(m, c.gamma.empty() ? "bottom" : c.gamma);
    const double l = mixed_lambda1(m, gamma, eig);
    add("lambda1_mixed", l, 1);
    add("M2", 1.0 / l, 1);
  } else if (c.which == "arcs") {
    // Shrinking Dirichlet arcs: the first n edges of loop 0 for n halving down to 1.
    const auto& l0 = m.loops()[0];
    for (std::size_t n = l0.size() / 2; n >= 1; n /= 2) {
      std::vector<int> gamma(l0.begin(), l0.begin() + static_cast<std::ptrdiff_t>(n));
      add("M2_arc_edges_" + std::to_string(n), m2_gamma(m, gamma, eig), static_cast<int>(n));
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown eigenvalue selection '" + c.which + "'", "config");
  }
  write_csv(c, "eig.csv", "name,value,mesh_h,k", rows);
  return {{"which", c.which}, {"mesh", mesh_json(m)}, {"values", values}};
}

inline VectorField field_input(const RunConfig& c, const Mesh& m) {
  if (c.field.empty() || c.field == "gen:circulation") return circulation_field(m);
  if (c.field == "gen:rotation") return sample_centroids(m, [](Vec2 p) { return Vec2{-p.y, p.x}; });
  if (c.field == "gen:random") {
    Draw d(c.seed);
    std::vector<Vec2> v(static_cast<std::size_t>(m.num_triangles()));
    for (auto& x : v) x = {d.uniform(), d.uniform()};
    return {m, std::move(v)};
  }
  return load_vector(c.field, m);
}

inline json cmd_decompose(const RunConfig& c) {
  const Mesh m = mesh_from_config(c);
  const VectorField v = field_input(c, m);
  const auto d = harmonic_decompose(v, c.tol);
  const VectorField cp = d.curl_part(), gp = d.grad_part();
  const auto harm = is_harmonic(d.h, 1e-8);
  if (!c.out.empty()) {
    const auto dir = out_dir(c);
    save_scalar(d.psi0, (dir / "psi0.txt").string());
    save_scalar(d.phi0, (dir / "phi0.txt").string());
    save_vector(d.h, (dir / "h.txt").string());
  }
  const double vv = l2_inner(v, v);
  return {{"mesh", mesh_json(m)},
          {"norms", {{"v", std::sqrt(vv)}, {"curl_part", l2_norm(cp)}, {"grad_part", l2_norm(gp)}, {"h", l2_norm(d.h)}}},
          {"inner_products", {{"curl_grad", l2_inner(cp, gp)}, {"curl_h", l2_inner(cp, d.h)}, {"grad_h", l2_inner(gp, d.h)}}},
          {"energy_fraction_h", vv > 0.0 ? l2_inner(d.h, d.h) / vv : 0.0},
          {"harmonicity", {{"harmonic", harm.harmonic}, {"div_residual", harm.div_residual}, {"curl_residual", harm.curl_residual}}}};
}

inline BvpOptions bvp_options(const RunConfig& c) {
  BvpOptions o;
  o.tol = c.tol;
  o.eig = eig_options(c);
  o.steklov_terms = c.steklov_terms;
  return o;
}

inline json cmd_solve(const RunConfig& c, const std::string& kind) {
  const Mesh m = mesh_from_config(c);
  DivCurlData data{scalar_input(c.rho, m), scalar_input(c.omega, m), boundary_input(c.eta_nu, m),
                   boundary_input(c.eta_tau, m), std::nullopt};
  const auto opt = bvp_options(c);
  DivCurlSolution s;
  if (kind == "normal") {
    if (!data.eta_nu) data.eta_nu = BoundaryFunction::zero(m);
    s = solve_normal(data, opt);
    save_solution(c, s, "psi0", "phi0");
  } else if (kind == "tangential") {
    if (!data.eta_tau) data.eta_tau = BoundaryFunction::zero(m);
    s = solve_tangential(data, opt);
    save_solution(c, s, "psi0", "phi0");
  } else {
    data.partition = make_partition(m, parse_arc_list(m, c.gamma_nu));
    s = solve_mixed(data, opt);
    save_solution(c, s, "psi_tilde", "phi_tilde");
  }
  json j = {{"problem", kind}, {"mesh", mesh_json(m)}, {"report", solution_json(s)}};
  if (kind == "mixed") j["gamma_nu"] = c.gamma_nu;
  if (kind == "normal" && m.num_holes() > 0) {
    const auto le = least_energy_check(s.v, {circulation_field(m)});
    j["least_energy"] = {{"cosines", le.cosines}, {"energy_increases", le.increases}};
  }
  return j;
}

inline json cmd_verify(const RunConfig& c) {
  std::vector<std::string> specs;
  if (!c.mesh_path.empty()) specs.push_back("file:" + c.mesh_path);
  else if (!c.gen.empty()) specs.push_back(c.gen);
  else specs = {"square:n=16", "disk:rings=8,sectors=48", "annulus:rin=0.5,rout=1,rings=4,sectors=48"};
  bool all_ok = true;
  json meshes = json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    const Mesh m = s.rfind("file:", 0) == 0 ? load_mesh(s.substr(5)) : generate_from_spec(s);
    meshes.push_back(verify_mesh(s, i, m, c, all_ok));
  }
  return {{"draws", c.draws}, {"seed", c.seed}, {"all_satisfied", all_ok}, {"meshes", meshes}};
}

inline json cmd_convergence(const RunConfig& c) {
  const Mesh base = mesh_from_config(c, "square:n=8");
  const auto rows = convergence_study(base, c.test_case, c.levels, c.tol);
  std::vector<std::vector<std::string>> csv;
  json table = json::array();
  for (const auto& r : rows) {
    csv.push_back({std::to_string(r.level), num(r.h), num(r.error), std::isnan(r.rate) ? "" : num(r.rate)});
    table.push_back({{"level", r.level}, {"h", r.h}, {"error", r.error}, {"rate", std::isnan(r.rate) ? json(nullptr) : json(r.rate)}});
  }
  write_csv(c, "convergence.csv", "level,h,error,rate", csv);
  return {{"case", c.test_case}, {"levels", c.levels}, {"rows", table}};
}

// ---------------------------------------------------------------------------

inline json error_json(const Error& e) {
  json j = {{"code", to_string(e.code())}, {"condition", e.condition()}, {"message", e.what()}};
  j["value"] = std::isnan(e.value()) ? json(nullptr) : json(e.value());
  return {{"error", j}};
}

/// Parses argv and runs one subcommand. Exit status: 0 success, 1 domain
/// error (structured JSON on `out`), 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Planar div-curl solver and field-decomposition toolkit"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_mesh = [&](CLI::App* s) {
    s->add_option("--mesh", c.mesh_path, "mesh file");
    s->add_option("--gen", c.gen, "generator spec, e.g. square:n=32 or annulus:rin=0.5,rout=1,rings=4,sectors=64");
    s->add_option("--out", c.out, "output directory");
    s->add_option("--tol", c.tol, "linear solver tolerance")->check(CLI::PositiveNumber);
    s->add_option("--eig-tol", c.eig_tol, "eigen-residual tolerance")->check(CLI::PositiveNumber);
  };
  auto add_data = [&](CLI::App* s) {
    s->add_option("--rho", c.rho, "divergence ρ: scalar file or const:<v>");
    s->add_option("--omega", c.omega, "curl ω: scalar file or const:<v>");
    s->add_option("--eta-nu", c.eta_nu, "normal boundary data: boundary file or const:<v>");
    s->add_option("--eta-tau", c.eta_tau, "tangential boundary data: boundary file or const:<v>");
    s->add_option("--steklov-terms", c.steklov_terms, "use an M-term Steklov series for the Neumann step")
        ->check(CLI::NonNegativeNumber);
  };

  auto* mesh = app.add_subcommand("mesh", "generate, refine or describe a mesh");
  mesh->add_option("action", c.mesh_action, "gen | refine | info")->required()->check(CLI::IsMember({"gen", "refine", "info"}));
  add_mesh(mesh);

  auto* eig = app.add_subcommand("eig", "spectral constants");
  add_mesh(eig);
  eig->add_option("--which", c.which, "lambda1 | lambda_m | steklov | mixed | arcs")
      ->check(CLI::IsMember({"lambda1", "lambda_m", "steklov", "mixed", "arcs"}));
  eig->add_option("-k,--count", c.k, "number of Steklov pairs")->check(CLI::PositiveNumber);
  eig->add_option("--gamma", c.gamma, "Dirichlet arc list for --which mixed");

  auto* dec = app.add_subcommand("decompose", "harmonic decomposition of a vector field");
  add_mesh(dec);
  dec->add_option("--field", c.field, "vector field file or gen:circulation | gen:rotation | gen:random");
  dec->add_option("--seed", c.seed, "seed for gen:random");

  auto* sn = app.add_subcommand("solve-normal", "div-curl system with v·ν prescribed");
  add_mesh(sn);
  add_data(sn);
  auto* st = app.add_subcommand("solve-tangential", "div-curl system with v·τ prescribed");
  add_mesh(st);
  add_data(st);
  auto* sm = app.add_subcommand("solve-mixed", "div-curl system with v·ν on Γ_ν and v·τ on the rest");
  add_mesh(sm);
  add_data(sm);
  sm->add_option("--gamma-nu", c.gamma_nu, "arc list for Γ_ν (bottom,right,top,left,loopK,half,all,a-b)");

  auto* vb = app.add_subcommand("verify-bounds", "check every energy bound on random data");
  add_mesh(vb);
  vb->add_option("--draws", c.draws, "random draws per problem and mesh")->check(CLI::PositiveNumber);
  vb->add_option("--seed", c.seed, "random seed");
  vb->add_option("--gamma-nu", c.gamma_nu, "arc list for Γ_ν in the mixed problem");

  auto* cv = app.add_subcommand("convergence", "manufactured-solution refinement study");
  add_mesh(cv);
  cv->add_option("--levels", c.levels, "number of meshes")->check(CLI::PositiveNumber);
  cv->add_option("--case", c.test_case, "normal | tangential | mixed | poisson")
      ->check(CLI::IsMember({"normal", "tangential", "mixed", "poisson"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    json body;
    std::string name;
    if (mesh->parsed()) { body = cmd_mesh(c); name = "mesh"; }
    else if (eig->parsed()) { body = cmd_eig(c); name = "eig"; }
    else if (dec->parsed()) { body = cmd_decompose(c); name = "decompose"; }
    else if (sn->parsed()) { body = cmd_solve(c, "normal"); name = "solve-normal"; }
    else if (st->parsed()) { body = cmd_solve(c, "tangential"); name = "solve-tangential"; }
    else if (sm->parsed()) { body = cmd_solve(c, "mixed"); name = "solve-mixed"; }
    else if (vb->parsed()) { body = cmd_verify(c); name = "verify-bounds"; }
    else { body = cmd_convergence(c); name = "convergence"; }
    body["command"] = name;
    body["generated_at"] = timestamp();
    const std::string text = body.dump(2);
    out << text << '\n';
    if (!c.out.empty()) {
      detail::with_output((out_dir(c) / "report.json").string(), [&](std::ostream& o) { o << text << '\n'; });
    }
    return 0;
  } catch (const Error& e) {
    out << error_json(e).dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    out << error_json(Error(ErrorCode::Io, e.what(), "io")).dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace divcurl::cli
