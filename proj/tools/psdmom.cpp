// psdmom: certified bounds on the Schatten p-distance to the psd cone from a
// few normalized operator moments.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psdmom/driver.hpp"
#include "psdmom/errors.hpp"
#include "psdmom/io.hpp"

namespace {

using namespace psdmom;

std::string default_cache_dir() {
  if (const char* env = std::getenv("PSDMOM_CACHE_DIR")) return env;
  if (const char* home = std::getenv("HOME"))
    return std::string(home) + "/.cache/psdmom";
  return "";
}

std::optional<ChebyshevCache>& cache_slot() {
  static std::optional<ChebyshevCache> cache;
  return cache;
}

ChebyshevCache* open_cache(const std::string& dir) {
  if (dir == "none") return nullptr;
  cache_slot().emplace(dir);
  return &*cache_slot();
}

struct MomentsArgs {
  std::string input, out, engine = "auto";
  int max_order = 8;
};

struct BoundArgs {
  std::string moments, operator_file, scale = "auto", ansatz = "full4";
  std::string method = "sos";
  std::string cache_dir = default_cache_dir();
  int p = 2;
  int order = 2;
};

struct CertifyArgs {
  std::string moments;
  std::string method = "sos";
  std::string ansatz = "full4";
  std::string cache_dir = default_cache_dir();
  int p = 2;
  int order = 2;
  double epsilon = 0.1;
  double size = 0.0;
};

struct SpectraArgs {
  std::string a_file, b_file, scale = "auto", ansatz = "full4";
  std::string method = "sos";
  std::string cache_dir = default_cache_dir();
  int p = 2;
  int order = 2;
};

struct BenchArgs {
  double epsilon = 0.5;
  int count = 1000;
  std::string method = "sos";
  std::string cache_dir = default_cache_dir();
  int p = 2;
  int max_order = 16;
  std::uint64_t seed = 1;
};

struct PlotArgs {
  std::string p_list = "1,2";
  std::string orders = "1..20";
  std::string out;
  std::string cache_dir = default_cache_dir();
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stoi(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (out.empty()) fail(Errc::bad_input, "empty p list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    fail(Errc::bad_input, "order range must look like A..B");
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

int run(int argc, char** argv) {
  CLI::App app{"Certified bounds on the Schatten p-distance to the psd cone "
               "from normalized operator moments"};
  app.require_subcommand(1);

  MomentsArgs margs;
  auto* moments_cmd =
      app.add_subcommand("moments", "Compute normalized moments of an operator file");
  moments_cmd->add_option("--input", margs.input, "operator JSON file")->required();
  moments_cmd->add_option("--max-order", margs.max_order, "highest moment order");
  moments_cmd->add_option("--engine", margs.engine,
                          "auto|tensor|mpo|dense|spectrum");
  moments_cmd->add_option("--out", margs.out, "output moment file (default stdout)");

  BoundArgs bargs;
  auto* bound_cmd = app.add_subcommand("bound", "Two-sided bounds on d_p(M)^p");
  bound_cmd->add_option("--moments", bargs.moments, "moment JSON file");
  bound_cmd->add_option("--operator", bargs.operator_file,
                        "operator JSON file (moments computed on the fly)");
  bound_cmd->add_option("--method", bargs.method, "sos|handelman|cheby")->required();
  bound_cmd->add_option("--p", bargs.p, "Schatten exponent")->required();
  bound_cmd->add_option("--order", bargs.order, "moment order m")->required();
  bound_cmd->add_option("--scale", bargs.scale, "auto|none|C");
  bound_cmd->add_option("--ansatz", bargs.ansatz, "full4|reduced2");
  bound_cmd->add_option("--cache-dir", bargs.cache_dir,
                        "Chebyshev certificate cache ('none' disables)");

  CertifyArgs cargs;
  auto* certify_cmd =
      app.add_subcommand("certify-psd", "Positivity certificate via the eps-shift");
  certify_cmd->add_option("--moments", cargs.moments, "moment JSON file")->required();
  certify_cmd->add_option("--p", cargs.p, "Schatten exponent")->required();
  certify_cmd->add_option("--order", cargs.order, "moment order m")->required();
  certify_cmd->add_option("--epsilon", cargs.epsilon, "shift parameter")->required();
  certify_cmd->add_option("--size", cargs.size, "operator size s")->required();
  certify_cmd->add_option("--method", cargs.method, "sos|handelman|cheby");
  certify_cmd->add_option("--ansatz", cargs.ansatz, "full4|reduced2");
  certify_cmd->add_option("--cache-dir", cargs.cache_dir, "certificate cache");

  SpectraArgs sargs;
  auto* spectra_cmd = app.add_subcommand(
      "spectrahedron", "Free-spectrahedron membership via sum A_i x B_i");
  spectra_cmd->add_option("--a", sargs.a_file, "matrix tuple file A")->required();
  spectra_cmd->add_option("--b", sargs.b_file, "matrix tuple file B")->required();
  spectra_cmd->add_option("--method", sargs.method, "sos|handelman|cheby")->required();
  spectra_cmd->add_option("--p", sargs.p, "Schatten exponent")->required();
  spectra_cmd->add_option("--order", sargs.order, "moment order m")->required();
  spectra_cmd->add_option("--scale", sargs.scale, "auto|none|C");
  spectra_cmd->add_option("--ansatz", sargs.ansatz, "full4|reduced2");
  spectra_cmd->add_option("--cache-dir", sargs.cache_dir, "certificate cache");

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Detection-order experiment on random spectra in [-eps, 1]");
  bench_cmd->add_option("--epsilon", bn.epsilon, "negative tail width")->required();
  bench_cmd->add_option("--count", bn.count, "eigenvalue count");
  bench_cmd->add_option("--method", bn.method, "sos|handelman|cheby")->required();
  bench_cmd->add_option("--p", bn.p, "Schatten exponent");
  bench_cmd->add_option("--max-order", bn.max_order, "sweep ceiling");
  bench_cmd->add_option("--seed", bn.seed, "PRNG seed (xoshiro256**)");
  bench_cmd->add_option("--cache-dir", bn.cache_dir, "certificate cache");

  PlotArgs pargs;
  auto* plot_cmd = app.add_subcommand(
      "plotdata", "CSV of ||q_m - f_p||_inf over an order range");
  plot_cmd->add_option("--p", pargs.p_list, "comma-separated p values");
  plot_cmd->add_option("--orders", pargs.orders, "range A..B");
  plot_cmd->add_option("--out", pargs.out, "output CSV (default stdout)");
  plot_cmd->add_option("--cache-dir", pargs.cache_dir, "certificate cache");

  CLI11_PARSE(app, argc, argv);

  if (moments_cmd->parsed()) {
    const OperatorVariant op = read_operator_file(margs.input);
    if (margs.engine != "auto" && margs.engine != engine_name(op))
      fail(Errc::bad_input, "operator file is of type '" + engine_name(op) +
                                "', not '" + margs.engine + "'");
    const MomentVector mv = compute_moments(op, margs.max_order);
    const std::string text = moment_file_to_json(mv, operator_size(op));
    if (margs.out.empty())
      std::cout << text << "\n";
    else
      write_text_file(margs.out, text);
    return 0;
  }

  if (bound_cmd->parsed()) {
    if (bargs.moments.empty() == bargs.operator_file.empty())
      fail(Errc::bad_input, "give exactly one of --moments or --operator");
    MomentFile file;
    if (!bargs.moments.empty()) {
      file = read_moment_file(bargs.moments);
    } else {
      const OperatorVariant op = read_operator_file(bargs.operator_file);
      file.mv = compute_moments(op, bargs.order);
      file.size = operator_size(op);
    }
    BoundOptions opt;
    opt.method = parse_method(bargs.method);
    opt.p = bargs.p;
    opt.m = bargs.order;
    opt.scale = ScalePolicy::parse(bargs.scale);
    opt.ansatz = (bargs.ansatz == "reduced2") ? SosAnsatz::reduced2 : SosAnsatz::full4;
    opt.cache = open_cache(bargs.cache_dir);
    const BoundsReport report = bound_from_moments(file.mv, file.size, opt);
    std::cout << report_to_json(report) << "\n";
    return 0;
  }

  if (certify_cmd->parsed()) {
    const MomentFile file = read_moment_file(cargs.moments);
    BoundOptions opt;
    opt.method = parse_method(cargs.method);
    opt.p = cargs.p;
    opt.m = cargs.order;
    opt.ansatz = (cargs.ansatz == "reduced2") ? SosAnsatz::reduced2 : SosAnsatz::full4;
    opt.cache = open_cache(cargs.cache_dir);
    const BoundsReport report =
        certify_psd(file.mv, cargs.epsilon, cargs.size, opt);
    std::cout << report_to_json(report) << "\n";
    return 0;
  }

  if (spectra_cmd->parsed()) {
    BoundOptions opt;
    opt.method = parse_method(sargs.method);
    opt.p = sargs.p;
    opt.m = sargs.order;
    opt.scale = ScalePolicy::parse(sargs.scale);
    opt.ansatz = (sargs.ansatz == "reduced2") ? SosAnsatz::reduced2 : SosAnsatz::full4;
    opt.cache = open_cache(sargs.cache_dir);
    const BoundsReport report = spectrahedron_check(
        read_matrix_list_file(sargs.a_file), read_matrix_list_file(sargs.b_file), opt);
    std::cout << report_to_json(report) << "\n";
    return 0;
  }

  if (bench_cmd->parsed()) {
    const BenchResult result =
        bench_table3(bn.epsilon, bn.count, parse_method(bn.method), bn.p,
                     bn.max_order, bn.seed, open_cache(bn.cache_dir));
    std::cout << bench_result_to_json(result) << "\n";
    return 0;
  }

  if (plot_cmd->parsed()) {
    const auto [lo, hi] = parse_range(pargs.orders);
    const auto rows =
        plotdata_fig3(parse_int_list(pargs.p_list), lo, hi, open_cache(pargs.cache_dir));
    const std::string csv = plot_rows_to_csv(rows);
    if (pargs.out.empty())
      std::cout << csv;
    else
      write_text_file(pargs.out, csv);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const psdmom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
