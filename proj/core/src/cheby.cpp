#include "psdmom/cheby.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "psdmom/errors.hpp"

namespace psdmom {

std::vector<double> cheb_nodes(int m) {
  if (m < 0) fail(Errc::bad_input, "node count requires m >= 0");
  std::vector<double> nodes(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k)
    nodes[static_cast<std::size_t>(k)] =
        std::cos(M_PI * (k + 0.5) / static_cast<double>(m + 1));
  return nodes;
}

ChebyshevCertificate cheb_interpolant(int p, int m) {
  if (p < 1) fail(Errc::bad_input, "interpolant requires p >= 1");
  if (m > kChebDegreeCeiling)
    fail(Errc::cheb_degree_ceiling,
         "interpolant degree exceeds ceiling " + std::to_string(kChebDegreeCeiling));
  const auto nodes = cheb_nodes(m);
  std::vector<double> fvals(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) fvals[j] = eval_fp(p, nodes[j]);

  // c_k = 2/(m+1) sum_j f_p(a_j) t_k(a_j), with t_k(a_j) evaluated through
  // the cosine form for stability.
  std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
  for (int k = 0; k <= m; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= m; ++j)
      acc += fvals[static_cast<std::size_t>(j)] *
             std::cos(k * M_PI * (j + 0.5) / static_cast<double>(m + 1));
    c[static_cast<std::size_t>(k)] = 2.0 * acc / static_cast<double>(m + 1);
  }

  ChebyshevCertificate cert;
  cert.p = p;
  cert.m = m;
  cert.cheb_coefficients = c;
  cert.q = cheb_to_monomial(c) - Polynomial::constant(c[0] / 2.0);
  const SupNormReport sup = sup_norm_vs_fp(cert.q, p);
  cert.sup_plus = sup.plus;
  cert.sup_minus = sup.minus;
  return cert;
}

double minimax_gap_envelope(int p, int m) {
  if (p < 1 || m < 1) fail(Errc::bad_input, "envelope requires p, m >= 1");
  return 6.0 * (1.0 - std::pow(1.0 - 1.0 / static_cast<double>(m),
                               static_cast<double>(p)));
}

ChebyshevCache::ChebyshevCache(std::string directory)
    : directory_(std::move(directory)) {}

std::string ChebyshevCache::path_for(int p) const {
  return directory_ + "/cheby_p" + std::to_string(p) + ".json";
}

std::string ChebyshevCache::serialize_records(
    int p, const std::vector<ChebyshevCertificate>& records) {
  nlohmann::ordered_json root;
  root["format"] = "psdmom-cheby-cache";
  root["version"] = 1;
  root["p"] = p;
  auto& recs = root["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json item;
    item["m"] = r.m;
    item["cheb"] = r.cheb_coefficients;
    item["monomial"] = r.q.coefficients();
    item["supPlus"] = r.sup_plus;
    item["supMinus"] = r.sup_minus;
    recs.push_back(std::move(item));
  }
  return root.dump();
}

std::vector<ChebyshevCertificate> ChebyshevCache::parse_records(
    const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::bad_input, std::string("cache parse: ") + e.what());
  }
  if (root.value("format", "") != "psdmom-cheby-cache" ||
      root.value("version", 0) != 1)
    fail(Errc::bad_input, "unrecognized cache header");
  std::vector<ChebyshevCertificate> out;
  const int p = root.at("p").get<int>();
  for (const auto& item : root.at("records")) {
    ChebyshevCertificate cert;
    cert.p = p;
    cert.m = item.at("m").get<int>();
    cert.cheb_coefficients = item.at("cheb").get<std::vector<double>>();
    cert.q = Polynomial(item.at("monomial").get<std::vector<double>>());
    cert.sup_plus = item.at("supPlus").get<double>();
    cert.sup_minus = item.at("supMinus").get<double>();
    out.push_back(std::move(cert));
  }
  return out;
}

void ChebyshevCache::load_file(int p) {
  if (directory_.empty() || loaded_[p]) return;
  loaded_[p] = true;
  std::ifstream in(path_for(p));
  if (!in) return;
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    for (auto& cert : parse_records(buf.str()))
      records_.emplace(std::make_pair(p, cert.m), std::move(cert));
  } catch (const Error&) {
    // A stale or foreign file is ignored; certificates are recomputed.
  }
}

void ChebyshevCache::store_file(int p) {
  if (directory_.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) return;
  std::vector<ChebyshevCertificate> recs;
  for (const auto& [key, cert] : records_)
    if (key.first == p) recs.push_back(cert);
  std::ofstream out(path_for(p), std::ios::trunc);
  if (out) out << serialize_records(p, recs);
}

const ChebyshevCertificate& ChebyshevCache::get(int p, int m) {
  std::lock_guard<std::mutex> lock(mutex_);
  load_file(p);
  const auto key = std::make_pair(p, m);
  auto it = records_.find(key);
  if (it == records_.end()) {
    it = records_.emplace(key, cheb_interpolant(p, m)).first;
    store_file(p);
  }
  return it->second;
}

ChebyBoundsResult cheby_bounds(const MomentVector& mv, int p, int m,
                               ChebyshevCache* cache) {
  if (m > mv.order())
    fail(Errc::insufficient_moments,
         "Chebyshev level " + std::to_string(m) + " needs m moments");
  ChebyBoundsResult result;
  result.certificate = cache ? cache->get(p, m) : cheb_interpolant(p, m);
  const double tr = pair_with_moments(result.certificate.q, mv);
  result.bounds = make_bounds(tr - result.certificate.sup_plus,
                              tr + result.certificate.sup_minus, p);
  return result;
}

}  // namespace psdmom
