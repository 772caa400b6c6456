#include "wigmod/serialize.hpp"

#include <fstream>
#include <sstream>

namespace wigmod {

json to_json(const CMatrix& m) {
  json data = json::array();
  for (const auto& e : m.data()) data.push_back({e.real(), e.imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix cmatrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    fail(Errc::io_error, "matrix JSON needs rows/cols/data");
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 ||
      data.size() != static_cast<std::size_t>(rows) * cols)
    fail(Errc::io_error, "matrix JSON entry count mismatch");
  std::vector<cplx> entries;
  entries.reserve(data.size());
  for (const auto& e : data) {
    if (!e.is_array() || e.size() != 2)
      fail(Errc::io_error, "matrix entries are [re, im] pairs");
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return {rows, cols, std::move(entries)};
}

json to_json(const RMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix rmatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    fail(Errc::io_error, "real matrix JSON must be a nonempty nested array");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      fail(Errc::io_error, "ragged real matrix JSON");
    for (int c = 0; c < cols; ++c) m.at(i, c) = j[i][c].get<double>();
  }
  return m;
}

json to_json(const ModVec& v) {
  return json{{"d", v.space.d}, {"m", v.space.m}, {"mat", to_json(v.mat)}};
}

ModVec modvec_from_json(const json& j) {
  ModuleSpace s{j.at("d").get<int>(), j.at("m").get<int>()};
  return {s, cmatrix_from_json(j.at("mat"))};
}

json to_json(const ALinOp& op) {
  return json{{"d", op.space.d}, {"m", op.space.m}, {"rf", to_json(op.rf)}};
}

ALinOp alinop_from_json(const json& j) {
  ModuleSpace s{j.at("d").get<int>(), j.at("m").get<int>()};
  return {s, cmatrix_from_json(j.at("rf"))};
}

json to_json(const std::vector<ModVec>& family) {
  json arr = json::array();
  for (const auto& v : family) arr.push_back(to_json(v));
  return arr;
}

json to_json(const VerificationReport& rep) {
  json offending = json::array();
  for (const auto& [i, j] : rep.offending) offending.push_back({i, j});
  return json{{"pass", rep.pass},
              {"tol", rep.tol},
              {"pair_count", rep.pair_count},
              {"max_residual", rep.max_residual},
              {"offending", std::move(offending)}};
}

namespace {

json phase_pair(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json to_json(const WignerFactorization& f) {
  json phases = json::array();
  for (std::size_t k = 0; k < f.phases.size(); ++k)
    phases.push_back(json{{"vec", to_json(f.phase_samples[k])},
                          {"phase", phase_pair(f.phases[k])}});
  return json{
      {"parity", f.parity == Parity::antiautomorphism ? "anti" : "auto"},
      {"conjugate_linear", f.conjugate_linear},
      {"W", to_json(f.w)},
      {"phases", std::move(phases)},
      {"residuals",
       json{{"welldef", f.residuals.welldef},
            {"unitarity", f.residuals.unitarity},
            {"readoff", f.residuals.readoff},
            {"uni", f.residuals.uni},
            {"reconstruction", f.residuals.reconstruction}}}};
}

json to_json(const CstarFactorization& f) {
  json phases = json::array();
  for (std::size_t k = 0; k < f.phases.size(); ++k)
    phases.push_back(json{{"A", to_json(f.phase_samples[k])},
                          {"phase", phase_pair(f.phases[k])}});
  return json{{"U", to_json(f.u)},
              {"phases", std::move(phases)},
              {"residuals",
               json{{"unitarity", f.residuals.unitarity},
                    {"reconstruction", f.residuals.reconstruction}}}};
}

json to_json(const RealFactorization& f) {
  json signs = json::array();
  for (std::size_t k = 0; k < f.signs.size(); ++k)
    signs.push_back(json{{"x", f.sign_samples[k]}, {"sign", f.signs[k]}});
  return json{{"U", to_json(f.u)},
              {"signs", std::move(signs)},
              {"residuals",
               json{{"orthogonality", f.residuals.orthogonality},
                    {"reconstruction", f.residuals.reconstruction}}}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path);
  out << content;
}

}  // namespace wigmod
