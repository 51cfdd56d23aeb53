// Command-line entry points: mesh generation, single spectrum runs, and the
// experiment runners (squeeze, floor, kunneth, duality), file-based I/O only.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "hodge/io.hpp"

namespace {

using hodge::Error;
using hodge::ErrorKind;
using hodge::Index;
using hodge::io::Json;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidInput:
      return 3;
    default:
      return 2;
  }
}

void emit_error(const Error& e, const std::string& out_path) {
  Json j;
  j["error"] = Json{{"kind", static_cast<int>(e.kind())}, {"message", e.what()}};
  std::cout << j.dump() << std::endl;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (out) out << j.dump(2) << "\n";
  }
}

std::string derive_path(const std::string& base, const std::string& suffix) {
  auto dot = base.rfind(".json");
  if (dot != std::string::npos && dot == base.size() - 5)
    return base.substr(0, dot) + suffix;
  return base + suffix;
}

int threads_default() {
  if (const char* env = std::getenv("HODGE_SPECTRA_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

struct CommonOpts {
  int threads = threads_default();
  unsigned long long seed = 0;
  double tol_cluster = 1e-6;
  Index dense_threshold = 1200;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--threads", c.threads, "worker threads (default 1; env HODGE_SPECTRA_THREADS)");
  cmd->add_option("--seed", c.seed, "solver seed");
  cmd->add_option("--tol-cluster", c.tol_cluster, "relative clustering tolerance");
  cmd->add_option("--dense-threshold", c.dense_threshold, "max size for the dense eigensolver");
}

hodge::experiments::RunOptions run_options(const CommonOpts& c) {
  hodge::experiments::RunOptions o;
  o.seed = c.seed;
  o.threads = c.threads;
  o.tol_cluster = c.tol_cluster;
  o.solver.seed = c.seed;
  o.solver.dense_threshold = c.dense_threshold;
  return o;
}

hodge::meshgen::Realized load_realized(const std::string& mesh_path,
                                       const std::string& metric_path) {
  hodge::meshgen::Mesh mesh = hodge::io::load_mesh(mesh_path);
  if (!metric_path.empty()) hodge::io::apply_metric_file(mesh, metric_path);
  return hodge::meshgen::realize(mesh);
}

std::vector<Index> region_cells(const hodge::meshgen::Realized& real, const std::string& name) {
  auto it = real.regions.find(name);
  if (it == real.regions.end())
    throw Error(ErrorKind::InvalidInput, "mesh has no region '" + name + "'");
  return it->second;
}

hodge::io::RunManifest make_manifest(const std::string& command,
                                     const std::vector<std::string>& inputs, Json config_echo,
                                     const CommonOpts& c) {
  hodge::io::RunManifest m;
  m.command = command;
  m.tool_version = hodge::io::kToolVersion;
  for (const auto& path : inputs)
    if (!path.empty()) m.input_hashes[path] = hodge::io::file_hash(path);
  m.config_echo = std::move(config_echo);
  m.seed = c.seed;
  m.threads = c.threads;
  return m;
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open config " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed config: ") + e.what());
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hodge-spectra: Hodge Laplacian spectra on metrized simplicial complexes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hodge::io::kToolVersion);

  // ---- mesh-gen ----
  auto* gen = app.add_subcommand("mesh-gen", "generate a mesh file (plus metric file if needed)");
  std::string gen_kind, gen_out, gen_metric_out, gen_dims = "16,16", gen_box;
  int gen_n = 16, gen_level = 2;
  double gen_radius = 0.3, gen_band = 0.3;
  gen->add_option("--kind", gen_kind,
                  "circle | torus2 | torus-tensor | sphere-ico | disk-in-torus | point")
      ->required();
  gen->add_option("--n", gen_n, "circle edges / torus grid size");
  gen->add_option("--dims", gen_dims, "torus-tensor factor sizes, comma separated");
  gen->add_option("--box", gen_box, "torus-tensor region box, comma separated cell counts");
  gen->add_option("--level", gen_level, "icosahedral subdivision level");
  gen->add_option("--band", gen_band, "sphere region half-width in |z|");
  gen->add_option("--radius", gen_radius, "disk radius");
  gen->add_option("--out", gen_out, "mesh file")->required();
  gen->add_option("--metric-out", gen_metric_out, "metric file (default <out>.metric.json)");

  // ---- spectrum ----
  auto* spec = app.add_subcommand("spectrum", "coexact spectrum of one (degree, bc, mesh)");
  std::string sp_mesh, sp_metric, sp_conformal, sp_out, sp_bc = "absolute";
  int sp_degree = 0;
  Index sp_k = 6;
  CommonOpts sp_common;
  spec->add_option("--mesh", sp_mesh)->required();
  spec->add_option("--metric", sp_metric);
  spec->add_option("--conformal", sp_conformal, "conformal field file {\"factor\": [...]}");
  spec->add_option("--degree", sp_degree)->required();
  spec->add_option("--bc", sp_bc, "absolute | relative");
  spec->add_option("--k", sp_k);
  spec->add_option("--out", sp_out, "report JSON (CSV written alongside)")->required();
  add_common(spec, sp_common);

  // ---- experiments ----
  struct ExpArgs {
    std::string config, out, mesh, metric, region = "U", eps_list;
    int degree = 0;
    Index k = 5;
    CommonOpts common;
  };
  auto add_experiment = [&](const char* name, const char* desc) {
    auto* cmd = app.add_subcommand(name, desc);
    auto args = std::make_shared<ExpArgs>();
    cmd->add_option("--config", args->config, "experiment config JSON");
    cmd->add_option("--out", args->out, "output prefix / JSON path")->required();
    cmd->add_option("--mesh", args->mesh);
    cmd->add_option("--metric", args->metric);
    cmd->add_option("--region", args->region);
    cmd->add_option("--eps-list", args->eps_list, "comma-separated decreasing epsilons");
    cmd->add_option("--degree", args->degree);
    cmd->add_option("--k", args->k);
    add_common(cmd, args->common);
    return std::make_pair(cmd, args);
  };
  auto [squeeze_cmd, squeeze_args] =
      add_experiment("squeeze", "conformal squeezing toward a subdomain spectrum");
  auto [floor_cmd, floor_args] =
      add_experiment("floor", "middle-degree conformal floor with degree-0 contrast");
  auto [kunneth_cmd, kunneth_args] = add_experiment("kunneth", "product spectrum calculus");
  auto [duality_cmd, duality_args] = add_experiment("duality", "Poincare duality under refinement");

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  std::string out_for_errors;
  try {
    if (gen->parsed()) {
      out_for_errors = gen_out;
      hodge::meshgen::Mesh mesh;
      if (gen_kind == "circle") {
        mesh = hodge::meshgen::circle(gen_n);
      } else if (gen_kind == "torus2") {
        mesh = hodge::meshgen::torus2(gen_n);
      } else if (gen_kind == "torus-tensor") {
        std::vector<int> dims, box;
        for (const auto& tok : CLI::detail::split(gen_dims, ',')) dims.push_back(std::stoi(tok));
        if (!gen_box.empty())
          for (const auto& tok : CLI::detail::split(gen_box, ',')) box.push_back(std::stoi(tok));
        mesh = hodge::meshgen::torus_tensor(dims, box);
      } else if (gen_kind == "sphere-ico") {
        mesh = hodge::meshgen::sphere_ico(gen_level, gen_band);
      } else if (gen_kind == "disk-in-torus") {
        mesh = hodge::meshgen::disk_in_torus(gen_n, gen_radius);
      } else if (gen_kind == "point") {
        mesh = hodge::meshgen::point();
      } else {
        throw Error(ErrorKind::InvalidInput, "unknown mesh kind '" + gen_kind + "'");
      }
      // metric goes to its own file for simplicial meshes
      if (!mesh.is_product() && !mesh.edge_lengths.empty()) {
        const std::string mpath =
            gen_metric_out.empty() ? derive_path(gen_out, ".metric.json") : gen_metric_out;
        hodge::io::save_metric(mesh.edge_lengths, mpath);
        mesh.edge_lengths.clear();
      }
      hodge::io::save_mesh(mesh, gen_out);
    } else if (spec->parsed()) {
      out_for_errors = sp_out;
      auto real = load_realized(sp_mesh, sp_metric);
      hodge::ConformalField f = sp_conformal.empty()
                                    ? hodge::unit_field(real.cc)
                                    : hodge::ConformalField{hodge::io::load_conformal(sp_conformal)};
      hodge::spectra::BoundaryCondition bc = sp_bc == "relative"
                                                 ? hodge::spectra::BoundaryCondition::Relative
                                                 : hodge::spectra::BoundaryCondition::Absolute;
      auto opts = run_options(sp_common);
      auto prob = hodge::spectra::assemble(real.cc, f, sp_degree, bc);
      hodge::spectra::ReportMetadata meta;
      meta.epsilon = 1.0;
      meta.volume = hodge::volume(real.cc, f);
      meta.mesh_id = sp_mesh;
      auto rep = hodge::spectra::coexact_spectrum(prob, sp_k, sp_common.tol_cluster, opts.solver,
                                                  meta);
      Json echo{{"mesh", sp_mesh}, {"degree", sp_degree}, {"bc", sp_bc}, {"k", sp_k}};
      auto manifest = make_manifest("spectrum", {sp_mesh, sp_metric, sp_conformal}, echo,
                                    sp_common);
      hodge::io::save_spectrum_report(rep, manifest, sp_out, derive_path(sp_out, ".csv"));
    } else {
      // experiment commands share config handling
      ExpArgs* args = nullptr;
      std::string name;
      if (squeeze_cmd->parsed()) {
        args = squeeze_args.get();
        name = "squeeze";
      } else if (floor_cmd->parsed()) {
        args = floor_args.get();
        name = "floor";
      } else if (kunneth_cmd->parsed()) {
        args = kunneth_args.get();
        name = "kunneth";
      } else {
        args = duality_args.get();
        name = "duality";
      }
      out_for_errors = args->out;
      Json cfg = args->config.empty() ? Json::object() : load_config(args->config);
      auto get_str = [&](const char* key, const std::string& cli_val) {
        return !cli_val.empty() ? cli_val : cfg.value(key, std::string());
      };
      auto get_eps = [&]() {
        std::vector<double> eps;
        if (!args->eps_list.empty())
          for (const auto& tok : CLI::detail::split(args->eps_list, ','))
            eps.push_back(std::stod(tok));
        else if (cfg.contains("epsilons"))
          eps = cfg.at("epsilons").get<std::vector<double>>();
        return eps;
      };
      if (cfg.contains("seed")) args->common.seed = cfg.at("seed").get<unsigned long long>();
      if (cfg.contains("threads")) args->common.threads = cfg.at("threads").get<int>();
      if (cfg.contains("tol_cluster")) args->common.tol_cluster = cfg.at("tol_cluster").get<double>();
      auto opts = run_options(args->common);

      Json report;
      std::string csv;
      std::vector<std::string> inputs{args->config};
      bool passed = false;

      if (name == "squeeze") {
        const std::string mesh_path = get_str("mesh", args->mesh);
        const std::string metric_path = get_str("metric", args->metric);
        auto real = load_realized(mesh_path, metric_path);
        inputs.push_back(mesh_path);
        if (!metric_path.empty()) inputs.push_back(metric_path);
        hodge::experiments::SqueezeSchedule schedule;
        schedule.epsilons = get_eps();
        schedule.k = cfg.value("k", args->k);
        schedule.degrees = cfg.contains("degrees")
                               ? cfg.at("degrees").get<std::vector<int>>()
                               : std::vector<int>{args->degree};
        if (cfg.contains("smoothing_j")) schedule.smoothing_j = cfg.at("smoothing_j").get<int>();
        auto rep = hodge::experiments::run_squeeze(
            real.cc, region_cells(real, get_str("region", args->region)), schedule, opts);
        rep.mesh_id = mesh_path;
        report = hodge::io::to_json(rep);
        csv = hodge::io::squeeze_csv(rep);
        passed = rep.ok();
      } else if (name == "floor") {
        const std::string mesh_path = get_str("mesh", args->mesh);
        auto real = load_realized(mesh_path, get_str("metric", args->metric));
        inputs.push_back(mesh_path);
        auto rep = hodge::experiments::run_conformal_floor(
            real.cc, region_cells(real, get_str("region", args->region)), get_eps(),
            cfg.value("k", Index(1)), opts);
        report = hodge::io::to_json(rep);
        csv = hodge::io::floor_csv(rep);
        passed = rep.ok();
      } else if (name == "kunneth") {
        const std::string pa = cfg.value("factor_a", std::string());
        const std::string pb = cfg.value("factor_b", std::string());
        if (pa.empty() || pb.empty())
          throw Error(ErrorKind::InvalidInput, "kunneth config needs factor_a and factor_b");
        inputs.push_back(pa);
        inputs.push_back(pb);
        auto a = load_realized(pa, "");
        auto b = load_realized(pb, "");
        auto rep = hodge::experiments::run_kunneth(a.cc, b.cc, cfg.value("k", args->k), opts);
        report = hodge::io::to_json(rep);
        csv = hodge::io::kunneth_csv(rep);
        passed = rep.ok();
      } else {
        if (!cfg.contains("meshes"))
          throw Error(ErrorKind::InvalidInput, "duality config needs a 'meshes' list");
        std::vector<hodge::CochainComplex> levels;
        for (const auto& path : cfg.at("meshes").get<std::vector<std::string>>()) {
          inputs.push_back(path);
          levels.push_back(load_realized(path, "").cc);
        }
        auto rep = hodge::experiments::run_duality(levels, cfg.value("degree", args->degree),
                                                   cfg.value("k", args->k), opts);
        report = hodge::io::to_json(rep);
        csv = hodge::io::duality_csv(rep);
        passed = rep.ok();
      }

      auto manifest = make_manifest(name, inputs, cfg, args->common);
      hodge::io::save_experiment(report, manifest, csv, args->out,
                                 derive_path(args->out, ".csv"));
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      std::cerr << name << ": elapsed_ms=" << ms << (passed ? " ok" : " FAILED") << "\n";
      return passed ? 0 : 1;
    }
  } catch (const Error& e) {
    emit_error(e, out_for_errors);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    emit_error(Error(ErrorKind::InvalidInput, e.what()), out_for_errors);
    return 3;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::cerr << "elapsed_ms=" << ms << "\n";
  return 0;
}
