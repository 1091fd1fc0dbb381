// Command line front end: signal generation, noise injection, WVD/CCTFD
// grids, adaptive filtering, denoising, experiment sweeps, and a quick
// invariant check. Exit codes: 0 ok, 2 validation error, 3 numerical guard.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tfd/tfd.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(const tfd::Error& e) { return e.is_numerical_guard() ? 3 : 2; }

tfd::KernelSpec kernel_from_options(const std::string& name, const std::string& file) {
  if (!file.empty()) return tfd::KernelSpec::custom(tfd::read_tfdg(file));
  return tfd::KernelSpec::fixed(tfd::parse_kernel_kind(name));
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw tfd::Error(tfd::errc::io_failure, "cannot open for write: " + path);
  os << body;
  if (!os) throw tfd::Error(tfd::errc::io_failure, "failed writing: " + path);
}

struct VerifyCheck {
  std::string name;
  bool pass;
  std::string detail;
};

// Fast invariant suite: Parseval, integral/convolution form equivalence,
// perfect deconvolution, and the Wiener-Hopf residual.
std::vector<VerifyCheck> run_verify() {
  using namespace tfd;
  std::vector<VerifyCheck> checks;
  char buf[160];

  {  // Parseval / Moyal on the four test signals
    bool ok = true;
    std::string detail;
    const SignalKind kinds[] = {SignalKind::LFM, SignalKind::GELFM, SignalKind::QFM,
                                SignalKind::SFM};
    for (SignalKind k : kinds) {
      Signal f = gen_signal(k, default_sample_rate(k, NoiseKind::White), -5.0, 5.0);
      const double e = wvd_energy(wvd(f));
      const double ref = signal_l2sq(f) * signal_l2sq(f);
      const double rel = std::abs(e - ref) / ref;
      ok = ok && rel <= 1e-3;
      std::snprintf(buf, sizeof(buf), "%s %.3e ", signal_kind_name(k), rel);
      detail += buf;
    }
    checks.push_back({"parseval-moyal", ok, detail});
  }

  {  // Form equivalence on a truncated LFM
    Signal f = gen_signal(SignalKind::LFM, 80.0, -5.0, 5.0);
    f.samples.resize(32);
    KernelSpec mh = KernelSpec::fixed(KernelKind::MargenauHill);
    Grid2D a = cctfd_convolution(f, mh);
    Grid2D b = cctfd_integral(f, mh);
    double max_dev = 0.0, max_c = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      max_dev = std::max(max_dev, std::abs(a.values[i] - b.values[i]));
      max_c = std::max(max_c, std::abs(a.values[i]));
    }
    std::snprintf(buf, sizeof(buf), "max|conv-integral| = %.3e (max|C| = %.3e)", max_dev, max_c);
    checks.push_back({"form-equivalence", max_dev <= 1e-6 * max_c, buf});
  }

  {  // Perfect deconvolution: noiseless adaptive CCTFD equals the clean WVD
    Signal f = gen_signal(SignalKind::LFM, 80.0, -5.0, 5.0);
    Grid2D w = wvd(f);
    Grid2D c = adaptive_cctfd(f, f, 0.0);
    const double rel = grid_l2(grid_sub(c, w)) / grid_l2(w);
    FilterDesign d = design_lsaf(w, w, 0.0);
    const double mm = min_mse(w, w, d);
    const double e4 = wvd_energy(w);
    std::snprintf(buf, sizeof(buf), "rel err %.3e, min_mse/||f||^4 %.3e", rel, std::abs(mm) / e4);
    checks.push_back({"zero-min-mse", rel <= 1e-8 && std::abs(mm) <= 1e-8 * e4, buf});
  }

  {  // Wiener-Hopf residual on a noisy case
    Signal f = gen_signal(SignalKind::LFM, 80.0, -5.0, 5.0);
    f.samples.resize(64);
    Signal g = awgn(f, 0.0, 7);
    Grid2D wf = wvd(f), wg = wvd(g);
    FilterDesign d = design_lsaf(wf, wg, 0.0);
    const double resid = wiener_hopf_residual(wf, wg, d);
    Grid2D eps = cross_psd(wf, wg);
    const double scale = grid_l2(eps);
    std::snprintf(buf, sizeof(buf), "relative residual %.3e", resid / scale);
    checks.push_back({"wiener-hopf", resid <= 1e-8 * scale, buf});
  }

  return checks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-frequency denoising toolkit"};
  app.require_subcommand(1);

  // gen-signal
  auto* gen = app.add_subcommand("gen-signal", "generate a test signal CSV");
  std::string gen_kind, gen_out;
  double gen_fs = 0.0, gen_t0 = -5.0, gen_t1 = 5.0;
  gen->add_option("--kind", gen_kind, "lfm|gelfm|qfm|sfm")->required();
  gen->add_option("--fs", gen_fs, "sample rate Hz")->required();
  gen->add_option("--t0", gen_t0, "interval start (s)");
  gen->add_option("--t1", gen_t1, "interval end (s), right-open");
  gen->add_option("--out", gen_out, "output CSV path")->required();

  // add-noise
  auto* noise = app.add_subcommand("add-noise", "add white or colored noise at an exact SNR");
  std::string noise_in, noise_out, noise_color = "white";
  double noise_snr = 0.0;
  std::uint64_t noise_seed = 1;
  noise->add_option("--in", noise_in)->required();
  noise->add_option("--color", noise_color, "white|pink|blue|red");
  noise->add_option("--snr-db", noise_snr)->required();
  noise->add_option("--seed", noise_seed);
  noise->add_option("--out", noise_out)->required();

  // wvd
  auto* wvd_cmd = app.add_subcommand("wvd", "Wigner-Ville distribution to a TFDG grid");
  std::string wvd_in, wvd_out;
  unsigned wvd_pad = 1;
  wvd_cmd->add_option("--in", wvd_in)->required();
  wvd_cmd->add_option("--out", wvd_out)->required();
  wvd_cmd->add_option("--pad", wvd_pad, "frequency zero-pad factor (plots only)");

  // cctfd
  auto* cctfd_cmd = app.add_subcommand("cctfd", "fixed-kernel Cohen distribution to a TFDG grid");
  std::string cctfd_in, cctfd_out, cctfd_kernel = "margenau-hill", cctfd_kernel_file;
  cctfd_cmd->add_option("--in", cctfd_in)->required();
  cctfd_cmd->add_option("--kernel", cctfd_kernel, "margenau-hill|kirkwood-rihaczek|born-jordan|page");
  cctfd_cmd->add_option("--kernel-file", cctfd_kernel_file, "custom kernel TFDG file");
  cctfd_cmd->add_option("--out", cctfd_out)->required();

  // adaptive-cctfd
  auto* ad = app.add_subcommand("adaptive-cctfd", "least-squares adaptive filter-based CCTFD");
  std::string ad_clean, ad_noisy, ad_out, ad_transfer_out;
  double ad_delta = 1e-12;
  ad->add_option("--clean", ad_clean)->required();
  ad->add_option("--noisy", ad_noisy)->required();
  ad->add_option("--delta", ad_delta, "relative regularization");
  ad->add_option("--out", ad_out)->required();
  ad->add_option("--transfer-out", ad_transfer_out, "also dump the filter transfer as TFDG");

  // denoise
  auto* dn = app.add_subcommand("denoise", "denoise a signal, write CSV + metrics JSON to stdout");
  std::string dn_clean, dn_noisy, dn_method = "adaptive-cctfd", dn_out;
  double dn_delta = 1e-12;
  dn->add_option("--clean", dn_clean)->required();
  dn->add_option("--noisy", dn_noisy)->required();
  dn->add_option("--method", dn_method,
                 "margenau-hill|kirkwood-rihaczek|born-jordan|page|wiener-1d|adaptive-cctfd");
  dn->add_option("--delta", dn_delta);
  dn->add_option("--out", dn_out)->required();

  // experiment
  auto* ex = app.add_subcommand("experiment", "run a config sweep into an output directory");
  std::string ex_config, ex_outdir;
  unsigned ex_threads = 0;
  ex->add_option("--config", ex_config, "experiment config JSON")->required();
  ex->add_option("--out-dir", ex_outdir)->required();
  ex->add_option("--threads", ex_threads, "worker cap (0 = hardware)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the quick invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      tfd::Signal f = tfd::gen_signal(tfd::parse_signal_kind(gen_kind), gen_fs, gen_t0, gen_t1);
      tfd::write_signal_csv(f, gen_out);
    } else if (*noise) {
      tfd::Signal f = tfd::read_signal_csv(noise_in);
      tfd::Signal g = tfd::colored_noise(f, tfd::parse_noise_kind(noise_color), noise_snr, noise_seed);
      tfd::write_signal_csv(g, noise_out);
    } else if (*wvd_cmd) {
      tfd::Signal f = tfd::read_signal_csv(wvd_in);
      tfd::Warnings warn;
      tfd::Grid2D w = tfd::wvd(f, &warn, wvd_pad);
      tfd::write_tfdg(w, wvd_out);
      if (warn.aliasing)
        std::cerr << "warning: more than 1% of signal energy above fs/4 (aliased WVD)\n";
    } else if (*cctfd_cmd) {
      tfd::Signal f = tfd::read_signal_csv(cctfd_in);
      tfd::KernelSpec spec = kernel_from_options(cctfd_kernel, cctfd_kernel_file);
      tfd::write_tfdg(tfd::cctfd_convolution(f, spec), cctfd_out);
    } else if (*ad) {
      tfd::Signal f = tfd::read_signal_csv(ad_clean);
      tfd::Signal g = tfd::read_signal_csv(ad_noisy);
      if (!ad_transfer_out.empty()) {
        tfd::Grid2D wf = tfd::wvd(f), wg = tfd::wvd(g);
        tfd::FilterDesign d = tfd::design_lsaf(wf, wg, ad_delta);
        tfd::write_tfdg(d.transfer, ad_transfer_out);
        tfd::write_tfdg(tfd::apply_filter(wg, d), ad_out);
      } else {
        tfd::write_tfdg(tfd::adaptive_cctfd(f, g, ad_delta), ad_out);
      }
    } else if (*dn) {
      tfd::Signal f = tfd::read_signal_csv(dn_clean);
      tfd::Signal g = tfd::read_signal_csv(dn_noisy);
      tfd::Warnings warn;
      tfd::Signal est;
      if (dn_method == "adaptive-cctfd") {
        est = tfd::denoise_lsaf(f, g, dn_delta, &warn);
      } else if (dn_method == "wiener-1d") {
        est = tfd::wiener_1d(f, g, dn_delta);
      } else {
        est = tfd::denoise_via_kernel(g, tfd::KernelSpec::fixed(tfd::parse_kernel_kind(dn_method)),
                                      f, &warn);
      }
      est = tfd::align_phase(est, f);
      tfd::write_signal_csv(est, dn_out);
      json meta;
      meta["method"] = dn_method;
      meta["mse_log10"] = tfd::mse_log10(est, f);
      meta["psnr_db"] = tfd::psnr_avg(est, f);
      meta["warnings"] = json::array();
      if (warn.aliasing) meta["warnings"].push_back("aliasing");
      if (warn.not_rank_one) meta["warnings"].push_back("not-rank-one");
      if (warn.non_psd) meta["warnings"].push_back("non-psd");
      std::cout << meta.dump() << "\n";
    } else if (*ex) {
      std::ifstream is(ex_config);
      if (!is) throw tfd::Error(tfd::errc::io_failure, "cannot open config: " + ex_config);
      json j;
      try {
        is >> j;
      } catch (const json::exception& e) {
        throw tfd::Error(tfd::errc::parse_failure, std::string("config JSON: ") + e.what());
      }
      tfd::ExperimentConfig cfg = tfd::config_from_json(j);
      cfg.threads = ex_threads;
      fs::create_directories(ex_outdir);
      tfd::MetricReport report = tfd::run_experiment(cfg);
      write_text(ex_outdir + "/report.csv", tfd::report_to_csv(report));
      write_text(ex_outdir + "/summary.csv", tfd::summary_to_csv(tfd::summarize(report)));
      const int fig = tfd::figure_index(report.config.signal);
      write_text(ex_outdir + "/fig" + std::to_string(fig) + ".csv", tfd::figure_to_csv(report));
      write_text(ex_outdir + "/run_meta.json", tfd::config_to_json(report.config).dump(2) + "\n");
    } else if (*verify) {
      bool all = true;
      for (const VerifyCheck& c : run_verify()) {
        std::printf("[%s] %-18s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        all = all && c.pass;
      }
      if (!all) return 3;
    }
  } catch (const tfd::Error& e) {
    std::cerr << "error (" << tfd::errc_name(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
