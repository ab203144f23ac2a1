#pragma once

// File formats: CSV emitters (fixed %.17g formatting so identical inputs
// produce byte-identical files) and JSON sidecars.

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "elastocald/closed_ops.hpp"
#include "elastocald/spectra.hpp"

namespace elastocald::io {

using nlohmann::json;

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
}

inline json material_json(const Material& m) {
  return json{{"lambda", m.lambda}, {"mu", m.mu},       {"mu_tilde", m.mu_tilde},
              {"rho", m.rho},       {"omega", m.omega}};
}

/// Spectrum CSV: re, im, dist_to_cluster.
inline void write_spectrum_csv(const std::string& path, const SpectrumReport& rep) {
  std::string out = "re,im,dist_to_cluster\n";
  for (const auto& e : rep.eigenvalues) {
    out += fmt(e.real()) + "," + fmt(e.imag()) + "," + fmt(std::abs(e - rep.cluster_point)) + "\n";
  }
  write_text(path, out);
}

inline json spectrum_sidecar(const SpectrumReport& rep, const OperatorConstants& c, int n_inf) {
  json j;
  j["cluster_point"] = {rep.cluster_point.real(), rep.cluster_point.imag()};
  json linf = json::array();
  for (const auto& z : lambda_inf(c, n_inf)) linf.push_back(z.real());
  j["lambda_inf"] = linf;
  j["lambda_s"] = {{"flat_cluster", c.flat_cluster},
                   {"max_modulus", spectrum_max_modulus(c)},
                   {"min_modulus", std::abs(c.flat_cluster)}};
  json fr = json::array();
  for (size_t i = 0; i < rep.radii.size(); ++i)
    fr.push_back({{"radius", rep.radii[i]}, {"fraction", rep.fraction_within[i]}});
  j["fraction_within"] = fr;
  return j;
}

/// Operator dump: CSV of interleaved real/imag entries, row-major, plus a
/// JSON header file at path + ".json".
inline void write_operator(const std::string& path, const OperatorMatrix& op) {
  std::string out;
  out.reserve(static_cast<size_t>(op.mat.size()) * 40);
  for (Eigen::Index i = 0; i < op.mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.mat.cols(); ++j) {
      if (j) out += ",";
      out += fmt(op.mat(i, j).real()) + "," + fmt(op.mat(i, j).imag());
    }
    out += "\n";
  }
  write_text(path, out);
  json hdr{{"n", op.meta.n},
           {"omega", op.meta.omega},
           {"curve", op.meta.curve},
           {"material", material_json(op.meta.material)},
           {"rows", op.mat.rows()},
           {"cols", op.mat.cols()}};
  write_text(path + ".json", hdr.dump(2) + "\n");
}

inline MatXc read_operator(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<Complex> row;
    size_t pos = 0;
    std::vector<double> nums;
    while (pos < line.size()) {
      size_t next = line.find(',', pos);
      nums.push_back(std::stod(line.substr(pos, next - pos)));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    for (size_t k = 0; k + 1 < nums.size(); k += 2) row.emplace_back(nums[k], nums[k + 1]);
    rows.push_back(std::move(row));
  }
  MatXc m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

/// Field CSV: x, y, re_u1, im_u1, re_u2, im_u2.
inline void write_field_csv(const std::string& path, const std::vector<Vec2>& pts,
                            const std::vector<Vec2c>& vals) {
  std::string out = "x,y,re_u1,im_u1,re_u2,im_u2\n";
  for (size_t i = 0; i < pts.size(); ++i) {
    out += fmt(pts[i].x()) + "," + fmt(pts[i].y()) + "," + fmt(vals[i][0].real()) + "," +
           fmt(vals[i][0].imag()) + "," + fmt(vals[i][1].real()) + "," + fmt(vals[i][1].imag()) +
           "\n";
  }
  write_text(path, out);
}

}  // namespace elastocald::io
