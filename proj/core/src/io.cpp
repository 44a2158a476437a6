#include "psdmom/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "psdmom/errors.hpp"

namespace psdmom {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json must_parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::bad_input, std::string("JSON parse failure: ") + e.what());
  }
}

HermitianMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    fail(Errc::bad_input, "matrix must be a nonempty list of rows");
  const std::size_t s = j.size();
  std::vector<Complex> entries;
  entries.reserve(s * s);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != s)
      fail(Errc::bad_input, "matrix rows must all have length size");
    for (const auto& cell : row) {
      if (!cell.is_array() || cell.size() != 2)
        fail(Errc::bad_input, "matrix entries must be [re, im] pairs");
      entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return HermitianMatrix::from_entries(s, entries);
}

}  // namespace

OperatorVariant parse_operator_json(const std::string& text) {
  const json root = must_parse(text);
  const std::string type = root.value("type", "");
  if (type == "tensor_sum") {
    TensorSumOperator op;
    const auto& sites = root.at("sites");
    for (const auto& site : sites) {
      std::vector<HermitianMatrix> mats;
      for (const auto& m : site) mats.push_back(matrix_from_json(m));
      op.sites.push_back(std::move(mats));
    }
    if (root.contains("n") && root.at("n").get<int>() != op.factors())
      fail(Errc::bad_input, "declared n does not match sites");
    if (root.contains("d") && root.at("d").get<int>() != op.summands())
      fail(Errc::bad_input, "declared d does not match sites");
    op.validate();
    return op;
  }
  if (type == "mpo_ring") {
    MpoRingOperator op;
    op.sites = root.at("n").get<int>();
    for (const auto& row : root.at("blocks")) {
      std::vector<HermitianMatrix> mats;
      for (const auto& m : row) mats.push_back(matrix_from_json(m));
      op.blocks.push_back(std::move(mats));
    }
    if (root.contains("d") && root.at("d").get<int>() != op.bond_labels())
      fail(Errc::bad_input, "declared d does not match blocks");
    op.validate();
    return op;
  }
  if (type == "dense") {
    return DenseOperator{matrix_from_json(root.at("matrix"))};
  }
  if (type == "spectrum") {
    return SpectralOperator{
        Spectrum(root.at("eigenvalues").get<std::vector<double>>())};
  }
  fail(Errc::bad_input, "operator type must be one of tensor_sum, mpo_ring, "
                        "dense, spectrum");
}

OperatorVariant read_operator_file(const std::string& path) {
  return parse_operator_json(read_text_file(path));
}

std::string engine_name(const OperatorVariant& op) {
  if (std::holds_alternative<TensorSumOperator>(op)) return "tensor";
  if (std::holds_alternative<MpoRingOperator>(op)) return "mpo";
  if (std::holds_alternative<DenseOperator>(op)) return "dense";
  return "spectrum";
}

std::optional<double> operator_size(const OperatorVariant& op) {
  if (const auto* t = std::get_if<TensorSumOperator>(&op))
    return std::exp(t->log_dimension());
  if (const auto* r = std::get_if<MpoRingOperator>(&op))
    return std::pow(static_cast<double>(r->block_size()), r->sites);
  if (const auto* d = std::get_if<DenseOperator>(&op))
    return static_cast<double>(d->matrix.size());
  if (const auto* s = std::get_if<SpectralOperator>(&op))
    return static_cast<double>(s->spectrum.size());
  return std::nullopt;
}

MomentVector compute_moments(const OperatorVariant& op, int max_order,
                             const MomentOptions& options) {
  if (const auto* t = std::get_if<TensorSumOperator>(&op))
    return moments_tensor_sum(*t, max_order, options);
  if (const auto* r = std::get_if<MpoRingOperator>(&op))
    return moments_mpo_ring(*r, max_order, options);
  if (const auto* d = std::get_if<DenseOperator>(&op))
    return moments_dense(*d, max_order);
  return moments_spectrum(std::get<SpectralOperator>(op), max_order);
}

MomentFile parse_moment_json(const std::string& text) {
  const json root = must_parse(text);
  MomentFile file;
  auto values = root.at("values").get<std::vector<double>>();
  if (root.contains("m") &&
      root.at("m").get<int>() != static_cast<int>(values.size()))
    fail(Errc::bad_input, "declared m does not match values length");
  const double scale = root.value("scale", 1.0);
  file.mv = make_moment_vector(std::move(values), scale, "file");
  if (root.contains("size")) file.size = root.at("size").get<double>();
  return file;
}

MomentFile read_moment_file(const std::string& path) {
  return parse_moment_json(read_text_file(path));
}

std::string moment_file_to_json(const MomentVector& mv,
                                std::optional<double> size) {
  ordered_json root;
  root["m"] = mv.order();
  root["values"] = mv.values;
  root["scale"] = mv.scale;
  if (size) {
    // exact integer form when it fits
    if (*size <= 9.0e15 && *size == std::floor(*size))
      root["size"] = static_cast<std::uint64_t>(*size);
    else
      root["size"] = *size;
  }
  return root.dump();
}

std::vector<HermitianMatrix> parse_matrix_list_json(const std::string& text) {
  const json root = must_parse(text);
  const json& arr = root.is_array() ? root : root.at("matrices");
  std::vector<HermitianMatrix> out;
  for (const auto& m : arr) out.push_back(matrix_from_json(m));
  if (out.empty()) fail(Errc::bad_input, "matrix list is empty");
  return out;
}

std::vector<HermitianMatrix> read_matrix_list_file(const std::string& path) {
  return parse_matrix_list_json(read_text_file(path));
}

std::string report_to_json(const BoundsReport& report, bool include_wall_time) {
  ordered_json root;
  root["method"] = report.method;
  root["p"] = report.p;
  root["m"] = report.m;
  root["scale"] = report.scale;
  ordered_json bounds;
  bounds["lowerP"] = report.bounds.lower_p;
  bounds["upperP"] = report.bounds.upper_p;
  bounds["lower"] = report.bounds.lower;
  bounds["upper"] = report.bounds.upper;
  bounds["rawLower"] = report.bounds.raw_lower;
  bounds["rawUpper"] = report.bounds.raw_upper;
  root["bounds"] = std::move(bounds);
  root["notPsd"] = report.not_psd;
  root["psdCertified"] = report.psd_certified;
  ordered_json certs;
  ordered_json lower;
  lower["q"] = report.lower_certificate.q;
  lower["objective"] = report.lower_certificate.objective;
  lower["slack"] = report.lower_certificate.slack;
  ordered_json upper;
  upper["q"] = report.upper_certificate.q;
  upper["objective"] = report.upper_certificate.objective;
  upper["slack"] = report.upper_certificate.slack;
  certs["lower"] = std::move(lower);
  certs["upper"] = std::move(upper);
  root["certificates"] = std::move(certs);
  ordered_json diag;
  for (const auto& [k, v] : report.labels) diag[k] = v;
  for (const auto& [k, v] : report.diagnostics) diag[k] = v;
  root["diagnostics"] = std::move(diag);
  if (include_wall_time) root["wallTimeMs"] = report.wall_time_ms;
  return root.dump();
}

std::string bench_result_to_json(const BenchResult& result) {
  ordered_json root;
  root["epsilon"] = result.epsilon;
  root["count"] = result.count;
  root["method"] = to_string(result.method);
  root["p"] = result.p;
  root["maxOrder"] = result.max_order;
  root["seed"] = result.seed;
  if (result.detection_order)
    root["detectionOrder"] = *result.detection_order;
  else
    root["detectionOrder"] = nullptr;
  root["note"] = result.note;
  ordered_json trace = ordered_json::array();
  for (const auto& [m, raw] : result.raw_lower_trace) {
    ordered_json row;
    row["m"] = m;
    row["rawLower"] = raw;
    trace.push_back(std::move(row));
  }
  root["rawLowerTrace"] = std::move(trace);
  return root.dump();
}

std::string plot_rows_to_csv(const std::vector<PlotRow>& rows) {
  std::ostringstream out;
  out << "p,m,supnorm\n";
  out.precision(17);
  for (const auto& row : rows)
    out << row.p << "," << row.m << "," << row.supnorm << "\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(Errc::bad_input, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(Errc::bad_input, "write failure on '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::bad_input, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace psdmom
