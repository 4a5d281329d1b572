#include "ncpflow/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ncpflow {

void SimulationConfig::validate() const {
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("config: mesh dims must be >= 1");
  for (double h : cell_size)
    if (!(h > 0.0)) throw std::invalid_argument("config: cell sizes must be positive");
  if (permeability_values.empty() && permeability_file.empty() && !(permeability > 0.0))
    throw std::invalid_argument("config: permeability (constant, raster file, or values) is required");
  if (porosity_values.empty() && porosity_file.empty() && !(porosity > 0.0 && porosity <= 1.0))
    throw std::invalid_argument("config: porosity (constant, raster file, or values) is required");
  fluid.validate();
  vg.validate();
  if (!(time.dt_initial > 0.0) || !(time.end_time > 0.0))
    throw std::invalid_argument("config: dt_initial and end_time must be positive");
  if (!(newton.tolerance > 0.0) || newton.max_iterations < 1)
    throw std::invalid_argument("config: invalid nonlinear solver settings");
  for (const auto& f : {permeability_file, porosity_file}) {
    if (f.empty()) continue;
    std::ifstream in(f);
    if (!in) throw std::invalid_argument("config: cannot open raster file " + f);
  }
}

RockField build_rock(const SimulationConfig& config, const CartesianMesh& mesh) {
  const std::size_t n = mesh.num_cells();
  RockField rock;
  if (!config.permeability_values.empty())
    rock.permeability = config.permeability_values;
  else if (!config.permeability_file.empty())
    rock.permeability = read_raster(config.permeability_file, n);
  else
    rock.permeability.assign(n, config.permeability);
  if (!config.porosity_values.empty())
    rock.porosity = config.porosity_values;
  else if (!config.porosity_file.empty())
    rock.porosity = read_raster(config.porosity_file, n);
  else
    rock.porosity.assign(n, config.porosity);
  rock.validate(n);
  return rock;
}

std::vector<BoundaryCondition> build_boundary_conditions(const SimulationConfig& config,
                                                         const CartesianMesh& mesh) {
  const auto& faces = mesh.boundary_faces();
  std::vector<BoundaryCondition> bcs(faces.size(), BoundaryCondition::impervious());
  for (const BoundaryRegionSpec& region : config.regions) {
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (faces[i].side != region.side) continue;
      bool inside = true;
      for (int d = 0; d < 3; ++d)
        inside = inside && faces[i].center[d] >= region.lo[d] && faces[i].center[d] <= region.hi[d];
      if (inside) bcs[i] = region.bc;
    }
  }
  return bcs;
}

CFunctionKind parse_method(const std::string& name) {
  if (name == "min") return CFunctionKind::Min;
  if (name == "fb") return CFunctionKind::FischerBurmeister;
  if (name == "sfb") return CFunctionKind::SmoothFischerBurmeister;
  if (name == "smin") return CFunctionKind::SmoothMin;
  throw std::invalid_argument("unknown method '" + name + "' (expected min, fb, sfb, smin)");
}

std::string method_name(CFunctionKind kind) {
  switch (kind) {
    case CFunctionKind::Min: return "min";
    case CFunctionKind::FischerBurmeister: return "fb";
    case CFunctionKind::SmoothFischerBurmeister: return "sfb";
    case CFunctionKind::SmoothMin: return "smin";
  }
  return "?";
}

namespace {

using Section = std::map<std::string, std::string>;
using IniData = std::vector<std::pair<std::string, Section>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

IniData parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  IniData data;
  data.push_back({"", {}});
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      data.push_back({trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    data.back().second[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return data;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad numeric value for '" + key + "': " + v);
  }
}

int to_int(const std::string& key, const std::string& v) {
  return static_cast<int>(to_double(key, v));
}

BoundarySide parse_side(const std::string& v) {
  if (v == "xmin") return BoundarySide::XMin;
  if (v == "xmax") return BoundarySide::XMax;
  if (v == "ymin") return BoundarySide::YMin;
  if (v == "ymax") return BoundarySide::YMax;
  if (v == "zmin") return BoundarySide::ZMin;
  if (v == "zmax") return BoundarySide::ZMax;
  throw std::runtime_error("config: unknown boundary side '" + v + "'");
}

// Fetch helpers: get(section, key) with optional default.
struct SectionView {
  const Section* s = nullptr;
  std::string name;
  bool has(const std::string& k) const { return s && s->count(k); }
  std::string str(const std::string& k, const std::string& def = "") const {
    return has(k) ? s->at(k) : def;
  }
  double num(const std::string& k, double def) const {
    return has(k) ? to_double(name + "." + k, s->at(k)) : def;
  }
  double req(const std::string& k) const {
    if (!has(k)) throw std::runtime_error("config: missing required key " + name + "." + k);
    return to_double(name + "." + k, s->at(k));
  }
  int integer(const std::string& k, int def) const {
    return has(k) ? to_int(name + "." + k, s->at(k)) : def;
  }
};

}  // namespace

SimulationConfig load_config(const std::string& path) {
  const IniData ini = parse_ini(path);
  auto view = [&](const std::string& name) {
    for (const auto& [sec, kv] : ini)
      if (sec == name) return SectionView{&kv, name};
    return SectionView{nullptr, name};
  };

  SimulationConfig cfg;
  const SectionView mesh = view("mesh");
  cfg.dims = {mesh.integer("nx", 1), mesh.integer("ny", 1), mesh.integer("nz", 1)};
  cfg.cell_size = {mesh.num("dx", 1.0), mesh.num("dy", 1.0), mesh.num("dz", 1.0)};
  cfg.origin = {mesh.num("ox", 0.0), mesh.num("oy", 0.0), mesh.num("oz", 0.0)};

  const SectionView rock = view("rock");
  cfg.permeability = rock.num("permeability", -1.0);
  cfg.permeability_file = rock.str("permeability_file");
  cfg.porosity = rock.num("porosity", -1.0);
  cfg.porosity_file = rock.str("porosity_file");

  const SectionView fluid = view("fluid");
  cfg.fluid.mu_l = fluid.num("mu_l", cfg.fluid.mu_l);
  cfg.fluid.mu_g = fluid.num("mu_g", cfg.fluid.mu_g);
  cfg.fluid.henry = fluid.num("henry", cfg.fluid.henry);
  cfg.fluid.molar_mass_h = fluid.num("molar_mass_h", cfg.fluid.molar_mass_h);
  cfg.fluid.molar_mass_w = fluid.num("molar_mass_w", cfg.fluid.molar_mass_w);
  cfg.fluid.diffusion = fluid.num("diffusion", cfg.fluid.diffusion);
  cfg.fluid.rho_w_std = fluid.num("rho_w_std", cfg.fluid.rho_w_std);
  cfg.fluid.temperature = fluid.num("temperature", cfg.fluid.temperature);

  const SectionView vg = view("van_genuchten");
  cfg.vg.entry_pressure = vg.num("entry_pressure", cfg.vg.entry_pressure);
  cfg.vg.n = vg.num("n", cfg.vg.n);
  cfg.vg.s_lr = vg.num("s_lr", cfg.vg.s_lr);
  cfg.vg.s_gr = vg.num("s_gr", cfg.vg.s_gr);
  cfg.vg.eps = vg.num("eps", cfg.vg.eps);

  const SectionView grav = view("gravity");
  cfg.gravity = {grav.num("gx", 0.0), grav.num("gy", 0.0), grav.num("gz", 0.0)};

  const SectionView init = view("initial");
  cfg.initial_p_l = init.num("p_l", cfg.initial_p_l);
  cfg.initial_s_l = init.num("s_l", cfg.initial_s_l);
  cfg.initial_rho_lh = init.num("rho_lh", cfg.initial_rho_lh);

  for (const auto& [sec, kv] : ini) {
    if (sec.rfind("boundary", 0) != 0) continue;
    SectionView b{&kv, sec};
    BoundaryRegionSpec region;
    region.side = parse_side(b.str("side"));
    region.lo = {b.num("x_lo", region.lo[0]), b.num("y_lo", region.lo[1]),
                 b.num("z_lo", region.lo[2])};
    region.hi = {b.num("x_hi", region.hi[0]), b.num("y_hi", region.hi[1]),
                 b.num("z_hi", region.hi[2])};
    const std::string kind = b.str("kind", "neumann");
    if (kind == "neumann") {
      region.bc = BoundaryCondition::neumann(b.num("water_flux", 0.0), b.num("hydrogen_flux", 0.0));
    } else if (kind == "dirichlet") {
      region.bc = BoundaryCondition::dirichlet(b.req("p_l"), b.req("s_l"), b.req("rho_lh"));
    } else {
      throw std::runtime_error("config: boundary kind must be neumann or dirichlet");
    }
    cfg.regions.push_back(region);
  }

  const SectionView solver = view("solver");
  if (solver.has("method")) cfg.newton.kind = parse_method(solver.str("method"));
  cfg.newton.tolerance = solver.num("tolerance", cfg.newton.tolerance);
  cfg.newton.max_iterations = solver.integer("max_iterations", cfg.newton.max_iterations);
  cfg.newton.tau0 = solver.num("tau0", cfg.newton.tau0);
  cfg.newton.tau_reduction = solver.num("tau_reduction", cfg.newton.tau_reduction);
  cfg.newton.tau_floor = solver.num("tau_floor", cfg.newton.tau_floor);
  cfg.newton.raw_norm = solver.integer("raw_norm", 0) != 0;

  const SectionView lin = view("linear");
  cfg.gmres.restart = lin.integer("restart", cfg.gmres.restart);
  cfg.gmres.max_iterations = lin.integer("max_iterations", cfg.gmres.max_iterations);
  cfg.gmres.rel_tol = lin.num("tolerance", cfg.gmres.rel_tol);

  const SectionView time = view("time");
  cfg.time.dt_initial = time.num("dt_initial", 0.0);
  cfg.time.dt_min = time.num("dt_min", -1.0);
  cfg.time.dt_max = time.num("dt_max", -1.0);
  cfg.time.end_time = time.num("end_time", 0.0);

  const SectionView out = view("output");
  cfg.output.directory = out.str("directory");
  cfg.output.ledger_name = out.str("ledger", "ledger.csv");
  cfg.output.write_vtk = out.integer("write_vtk", 1) != 0;
  if (out.has("snapshot_times")) {
    std::istringstream ss(out.str("snapshot_times"));
    std::string tok;
    while (std::getline(ss, tok, ',')) cfg.output.snapshot_times.push_back(to_double("snapshot_times", trim(tok)));
  }
  cfg.name = view("run").str("name", "simulation");

  cfg.validate();
  return cfg;
}

}  // namespace ncpflow
