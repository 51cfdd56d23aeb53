#include "hodge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hodge::io {

const char* kToolVersion = "0.1.0";

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::InvalidInput, "malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

Json vec_to_json(const VecX& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json dvec_to_json(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(std::isnan(x) ? Json() : Json(x));
  return a;
}

}  // namespace

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::uint64_t h = 1469598103934665603ull;
  char buf[8192];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (!in) break;
  }
  char hex[32];
  std::snprintf(hex, sizeof(hex), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return hex;
}

Json to_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["inputs"] = m.input_hashes;
  j["config"] = m.config_echo;
  j["seed"] = m.seed;
  j["threads"] = m.threads;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- meshes ----

namespace {

Json mesh_to_json(const meshgen::Mesh& mesh) {
  Json j;
  j["dimension"] = mesh.dimension;
  if (mesh.is_product()) {
    Json factors = Json::array();
    for (const auto& f : mesh.factors) factors.push_back(mesh_to_json(f));
    j["product_factors"] = factors;
  } else {
    j["top_cells"] = mesh.top_cells;
    if (mesh.vertex_coords) {
      Json verts = Json::array();
      for (Index i = 0; i < mesh.vertex_coords->rows(); ++i) {
        Json row = Json::array();
        for (Index c = 0; c < mesh.vertex_coords->cols(); ++c)
          row.push_back((*mesh.vertex_coords)(i, c));
        verts.push_back(row);
      }
      j["vertices"] = verts;
    }
    if (!mesh.edge_lengths.empty()) {
      Json lens = Json::array();
      for (const auto& [e, l] : mesh.edge_lengths) lens.push_back(Json::array({e.first, e.second, l}));
      j["edge_lengths"] = lens;
    }
  }
  if (!mesh.regions.empty()) {
    Json regions;
    for (const auto& [name, cells] : mesh.regions) regions[name] = cells;
    j["regions"] = regions;
  }
  return j;
}

meshgen::Mesh mesh_from_json(const Json& j) {
  meshgen::Mesh mesh;
  if (!j.contains("dimension"))
    throw Error(ErrorKind::InvalidInput, "mesh file missing 'dimension'");
  mesh.dimension = j.at("dimension").get<int>();
  if (j.contains("product_factors")) {
    for (const auto& f : j.at("product_factors")) mesh.factors.push_back(mesh_from_json(f));
  } else {
    if (!j.contains("top_cells"))
      throw Error(ErrorKind::InvalidInput, "mesh file missing 'top_cells'");
    mesh.top_cells = j.at("top_cells").get<std::vector<std::vector<int>>>();
    if (j.contains("vertices")) {
      const auto rows = j.at("vertices").get<std::vector<std::vector<double>>>();
      if (!rows.empty()) {
        MatX coords(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
        for (size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != rows[0].size())
            throw Error(ErrorKind::InvalidInput, "ragged vertex coordinates");
          for (size_t c = 0; c < rows[i].size(); ++c)
            coords(static_cast<Index>(i), static_cast<Index>(c)) = rows[i][c];
        }
        mesh.vertex_coords = coords;
      }
    }
    if (j.contains("edge_lengths"))
      for (const auto& entry : j.at("edge_lengths")) {
        int u = entry.at(0).get<int>(), v = entry.at(1).get<int>();
        if (u > v) std::swap(u, v);
        mesh.edge_lengths[{u, v}] = entry.at(2).get<double>();
      }
  }
  if (j.contains("regions"))
    for (const auto& [name, cells] : j.at("regions").items())
      mesh.regions[name] = cells.get<std::vector<Index>>();
  return mesh;
}

}  // namespace

void save_mesh(const meshgen::Mesh& mesh, const std::string& path) {
  write_text(path, mesh_to_json(mesh).dump(2) + "\n");
}

meshgen::Mesh load_mesh(const std::string& path) { return mesh_from_json(read_json(path)); }

void save_metric(const std::map<std::pair<int, int>, double>& edge_lengths,
                 const std::string& path) {
  Json lens = Json::array();
  for (const auto& [e, l] : edge_lengths) lens.push_back(Json::array({e.first, e.second, l}));
  Json j;
  j["edge_lengths"] = lens;
  write_text(path, j.dump(2) + "\n");
}

void apply_metric_file(meshgen::Mesh& mesh, const std::string& path) {
  Json j = read_json(path);
  if (!j.contains("edge_lengths"))
    throw Error(ErrorKind::InvalidInput, "metric file missing 'edge_lengths'");
  for (const auto& entry : j.at("edge_lengths")) {
    int u = entry.at(0).get<int>(), v = entry.at(1).get<int>();
    if (u > v) std::swap(u, v);
    mesh.edge_lengths[{u, v}] = entry.at(2).get<double>();
  }
}

void save_conformal(const VecX& factor, const std::string& path) {
  Json j;
  j["factor"] = std::vector<double>(factor.data(), factor.data() + factor.size());
  write_text(path, j.dump(2) + "\n");
}

VecX load_conformal(const std::string& path) {
  Json j = read_json(path);
  auto v = j.at("factor").get<std::vector<double>>();
  return Eigen::Map<const VecX>(v.data(), static_cast<Index>(v.size()));
}

// ---- reports ----

Json to_json(const spectra::SpectrumReport& rep, const RunManifest& manifest) {
  Json j;
  j["degree"] = rep.degree;
  j["bc"] = spectra::to_string(rep.bc);
  j["eigenvalues"] = vec_to_json(rep.eigenvalues);
  Json clusters = Json::array();
  for (const auto& c : rep.clusters)
    clusters.push_back(Json{{"value", c.value}, {"multiplicity", c.multiplicity}});
  j["clusters"] = clusters;
  j["kernel_dim"] = rep.kernel_dim;
  j["truncated"] = rep.truncated;
  j["metadata"] = Json{{"epsilon", rep.metadata.epsilon},
                       {"volume", rep.metadata.volume},
                       {"mesh_id", rep.metadata.mesh_id}};
  j["manifest"] = to_json(manifest);
  return j;
}

void save_spectrum_report(const spectra::SpectrumReport& rep, const RunManifest& manifest,
                          const std::string& json_path, const std::string& csv_path) {
  write_text(json_path, to_json(rep, manifest).dump(2) + "\n");
  std::ostringstream csv;
  csv << "degree,bc,index,eigenvalue,cluster_id,multiplicity,epsilon,volume\n";
  Index idx = 0;
  for (size_t c = 0; c < rep.clusters.size(); ++c)
    for (int m = 0; m < rep.clusters[c].multiplicity; ++m, ++idx)
      csv << rep.degree << ',' << spectra::to_string(rep.bc) << ',' << (idx + 1) << ','
          << format_double(rep.eigenvalues[idx]) << ',' << c << ',' << rep.clusters[c].multiplicity
          << ',' << format_double(rep.metadata.epsilon) << ','
          << format_double(rep.metadata.volume) << '\n';
  write_text(csv_path, csv.str());
}

Json to_json(const experiments::SqueezeReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["mesh_id"] = rep.mesh_id;
  j["epsilons"] = rep.epsilons;
  j["volumes"] = dvec_to_json(rep.volumes);
  j["volume_identity_error"] = dvec_to_json(rep.volume_identity_error);
  j["vol_u"] = rep.vol_u;
  j["vol_complement"] = rep.vol_complement;
  j["volume_identity_ok"] = rep.volume_identity_ok;
  Json degrees = Json::array();
  for (const auto& d : rep.degrees) {
    Json dj;
    dj["degree"] = d.degree;
    dj["d_p"] = d.d_p;
    dj["outside_theorem_range"] = d.outside_theorem_range;
    dj["target"] = vec_to_json(d.target);
    dj["target_kernel_dim"] = d.target_kernel_dim;
    Json sq = Json::array(), col = Json::array(), dev = Json::array();
    for (const auto& v : d.squeezed) sq.push_back(vec_to_json(v));
    for (const auto& v : d.collapsing) col.push_back(vec_to_json(v));
    for (const auto& v : d.deviations) dev.push_back(vec_to_json(v));
    dj["squeezed"] = sq;
    dj["collapsing"] = col;
    dj["deviations"] = dev;
    dj["max_deviation"] = dvec_to_json(d.max_deviation);
    dj["n_gap"] = dvec_to_json(d.gaps);
    dj["n_gap_aligned"] = d.gap_aligned;
    dj["deviations_monotone"] = d.deviations_monotone;
    dj["failures"] = d.failures;
    degrees.push_back(dj);
  }
  j["degrees"] = degrees;
  j["ok"] = rep.ok();
  return j;
}

Json to_json(const experiments::FloorReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["degree_mid"] = rep.degree_mid;
  j["epsilons"] = rep.epsilons;
  j["volumes"] = dvec_to_json(rep.volumes);
  j["f_mid"] = dvec_to_json(rep.f_mid);
  j["f_zero"] = dvec_to_json(rep.f_zero);
  j["floor_threshold"] = rep.floor_threshold;
  j["floor_ok"] = rep.floor_ok;
  j["contrast_ok"] = rep.contrast_ok;
  j["failures"] = rep.failures;
  j["ok"] = rep.ok();
  return j;
}

Json to_json(const experiments::DualityReport& rep) {
  Json j;
  j["p"] = rep.p;
  j["q"] = rep.q;
  Json levels = Json::array();
  for (const auto& l : rep.levels)
    levels.push_back(Json{{"size", l.level_size},
                          {"mu_p", vec_to_json(l.mu_p)},
                          {"mu_q", vec_to_json(l.mu_q)},
                          {"max_rel_deviation", l.max_rel_deviation}});
  j["levels"] = levels;
  j["nonincreasing"] = rep.nonincreasing;
  j["ok"] = rep.ok();
  return j;
}

Json to_json(const experiments::KunnethReport& rep) {
  Json j;
  Json degrees = Json::array();
  for (const auto& d : rep.degrees)
    degrees.push_back(Json{{"degree", d.degree},
                           {"zeros_product", d.zeros_product},
                           {"zeros_sums", d.zeros_sums},
                           {"product_values", vec_to_json(d.product_values)},
                           {"sum_values", vec_to_json(d.sum_values)},
                           {"max_rel_deviation", d.max_rel_deviation},
                           {"match", d.match}});
  j["degrees"] = degrees;
  j["ok"] = rep.ok();
  return j;
}

Json to_json(const experiments::SmoothingReport& rep) {
  Json j;
  j["epsilon"] = rep.epsilon;
  j["degree"] = rep.degree;
  j["js"] = rep.js;
  j["n_gap"] = dvec_to_json(rep.gaps);
  j["gaps_monotone"] = rep.gaps_monotone;
  j["domination_ok"] = rep.domination_ok;
  j["fields_equal_at_large_j"] = rep.fields_equal_at_large_j;
  j["ok"] = rep.ok();
  return j;
}

void save_experiment(const Json& report, const RunManifest& manifest, const std::string& csv,
                     const std::string& json_path, const std::string& csv_path) {
  Json j = report;
  j["manifest"] = to_json(manifest);
  write_text(json_path, j.dump(2) + "\n");
  write_text(csv_path, csv);
}

std::string squeeze_csv(const experiments::SqueezeReport& rep) {
  std::ostringstream csv;
  csv << "epsilon,volume,degree,index,squeezed,target,deviation,collapsing\n";
  for (const auto& d : rep.degrees)
    for (size_t e = 0; e < rep.epsilons.size(); ++e) {
      const VecX& sq = e < d.squeezed.size() ? d.squeezed[e] : VecX();
      for (Index i = 0; i < sq.size(); ++i) {
        const bool collapsing = i < d.d_p;
        const Index ti = i - d.d_p;
        csv << format_double(rep.epsilons[e]) << ',' << format_double(rep.volumes[e]) << ','
            << d.degree << ',' << (i + 1) << ',' << format_double(sq[i]) << ',';
        if (!collapsing && ti < d.target.size()) csv << format_double(d.target[ti]);
        csv << ',';
        if (!collapsing && e < d.deviations.size() && ti < d.deviations[e].size())
          csv << format_double(d.deviations[e][ti]);
        csv << ',' << (collapsing ? 1 : 0) << '\n';
      }
    }
  return csv.str();
}

std::string floor_csv(const experiments::FloorReport& rep) {
  std::ostringstream csv;
  csv << "epsilon,volume,f_mid,f_zero\n";
  for (size_t e = 0; e < rep.epsilons.size(); ++e)
    csv << format_double(rep.epsilons[e]) << ',' << format_double(rep.volumes[e]) << ','
        << format_double(rep.f_mid[e]) << ',' << format_double(rep.f_zero[e]) << '\n';
  return csv.str();
}

std::string duality_csv(const experiments::DualityReport& rep) {
  std::ostringstream csv;
  csv << "level_size,index,mu_p,mu_q,rel_deviation\n";
  for (const auto& l : rep.levels) {
    const Index kk = std::min(l.mu_p.size(), l.mu_q.size());
    for (Index i = 0; i < kk; ++i)
      csv << l.level_size << ',' << (i + 1) << ',' << format_double(l.mu_p[i]) << ','
          << format_double(l.mu_q[i]) << ','
          << format_double(std::abs(l.mu_p[i] - l.mu_q[i]) / l.mu_p[i]) << '\n';
  }
  return csv.str();
}

std::string kunneth_csv(const experiments::KunnethReport& rep) {
  std::ostringstream csv;
  csv << "degree,index,product_value,sum_value\n";
  for (const auto& d : rep.degrees)
    for (Index i = 0; i < d.product_values.size(); ++i)
      csv << d.degree << ',' << (i + 1) << ',' << format_double(d.product_values[i]) << ','
          << format_double(d.sum_values[i]) << '\n';
  return csv.str();
}

}  // namespace hodge::io
