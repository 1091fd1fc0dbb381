#pragma once

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "tfd/lsaf.hpp"
#include "tfd/metrics.hpp"
#include "tfd/siggen.hpp"

namespace tfd {

inline const std::vector<std::string>& all_method_names() {
  static const std::vector<std::string> names = {
      "margenau-hill", "kirkwood-rihaczek", "born-jordan",
      "page",          "wiener-1d",         "adaptive-cctfd"};
  return names;
}

// Declarative description of one experiment: one signal, one noise model,
// a grid of SNRs x seeds, and the set of methods to compare.
struct ExperimentConfig {
  SignalKind signal = SignalKind::LFM;
  NoiseKind noise = NoiseKind::White;
  std::vector<double> snr_db;
  double sample_rate_hz = 0.0;
  double t0 = -5.0;
  double t1 = 5.0;
  std::vector<std::string> methods;
  std::vector<std::uint64_t> seeds;
  double delta = 1e-12;
  unsigned threads = 0;  // 0 = hardware concurrency

  bool snr_defaulted = false;
  bool rate_defaulted = false;
};

// White-noise sweeps and colored-noise comparisons use different sampling
// rates (80/100/150/175 Hz vs 30/50/150/150 Hz for lfm/gelfm/qfm/sfm).
inline double default_sample_rate(SignalKind signal, NoiseKind noise) {
  const bool white = noise == NoiseKind::White;
  switch (signal) {
    case SignalKind::LFM: return white ? 80.0 : 30.0;
    case SignalKind::GELFM: return white ? 100.0 : 50.0;
    case SignalKind::QFM: return white ? 150.0 : 150.0;
    case SignalKind::SFM: return white ? 175.0 : 150.0;
  }
  return 0.0;
}

// Fills the values the protocol pins when they are left unset: the per-signal
// sampling rate and the SNR grid (colored noise defaults to 0 dB, flagged in
// the output metadata). Lists that are present but empty stay empty and fail
// validation.
inline void apply_config_defaults(ExperimentConfig& cfg) {
  if (cfg.sample_rate_hz <= 0.0) {
    cfg.sample_rate_hz = default_sample_rate(cfg.signal, cfg.noise);
    cfg.rate_defaulted = true;
  }
  if (cfg.snr_db.empty()) {
    if (cfg.noise == NoiseKind::White) {
      for (int s = -5; s <= 5; ++s) cfg.snr_db.push_back(static_cast<double>(s));
    } else {
      cfg.snr_db.push_back(0.0);  // the colored-noise SNR is not otherwise pinned
    }
    cfg.snr_defaulted = true;
  }
}

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.snr_db.empty() || cfg.methods.empty() || cfg.seeds.empty())
    throw Error(errc::invalid_config, "config lists must be non-empty");
  if (!(cfg.t0 < cfg.t1)) throw Error(errc::invalid_config, "interval start must precede end");
  if (!(cfg.sample_rate_hz > 0.0)) throw Error(errc::invalid_config, "sample rate must be positive");
  if (cfg.delta < 0.0) throw Error(errc::invalid_config, "delta must be >= 0");
  for (const std::string& m : cfg.methods) {
    bool known = false;
    for (const std::string& k : all_method_names()) known |= (k == m);
    if (!known) throw Error(errc::invalid_config, "unknown method: " + m);
  }
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.signal = parse_signal_kind(j.at("signal").get<std::string>());
    if (j.contains("noise")) cfg.noise = parse_noise_kind(j["noise"].get<std::string>());
    if (j.contains("snr_db")) cfg.snr_db = j["snr_db"].get<std::vector<double>>();
    if (j.contains("sample_rate_hz")) cfg.sample_rate_hz = j["sample_rate_hz"].get<double>();
    if (j.contains("interval")) {
      const auto iv = j["interval"].get<std::vector<double>>();
      if (iv.size() != 2) throw Error(errc::invalid_config, "interval must be [start, end]");
      cfg.t0 = iv[0];
      cfg.t1 = iv[1];
    }
    if (j.contains("methods"))
      cfg.methods = j["methods"].get<std::vector<std::string>>();
    else
      cfg.methods = all_method_names();
    if (j.contains("seeds"))
      cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    else
      for (std::uint64_t s = 1; s <= 10; ++s) cfg.seeds.push_back(s);
    if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::invalid_config, std::string("bad config JSON: ") + e.what());
  }
  apply_config_defaults(cfg);
  validate_config(cfg);
  return cfg;
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["signal"] = signal_kind_name(cfg.signal);
  j["noise"] = noise_kind_name(cfg.noise);
  j["snr_db"] = cfg.snr_db;
  j["sample_rate_hz"] = cfg.sample_rate_hz;
  j["interval"] = {cfg.t0, cfg.t1};
  j["methods"] = cfg.methods;
  j["seeds"] = cfg.seeds;
  j["delta"] = cfg.delta;
  j["snr_defaulted"] = cfg.snr_defaulted;
  j["sample_rate_defaulted"] = cfg.rate_defaulted;
  return j;
}

struct MetricRow {
  std::string method;
  std::string signal;
  std::string noise;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  double mse_log10 = 0.0;
  double psnr_db = 0.0;
  std::string status;  // "ok" or "error:<kind>"
};

struct MetricReport {
  ExperimentConfig config;
  std::vector<MetricRow> rows;  // ordered by (snr, seed, method) as listed
};

namespace detail {

// Per-geometry state shared read-only by all rows of one experiment.
struct ExperimentContext {
  Signal clean;
  TfdGeometry geom;
  std::vector<cplx> spec_f;                     // D2[W_f]
  std::map<std::string, std::vector<cplx>> phi_rev;  // reversed kernel samples
};

inline Signal denoise_one(const ExperimentContext& ctx, const ExperimentConfig& cfg,
                          const std::string& method, const Signal& noisy) {
  if (method == "wiener-1d") return wiener_1d(ctx.clean, noisy, cfg.delta);
  const std::vector<cplx> lag_g = lag_wrapped(noisy, ctx.geom);
  std::vector<cplx> spec_g = spectrum_from_lag(lag_g, ctx.geom);
  if (method == "adaptive-cctfd") {
    const std::vector<cplx> t = transfer_from_dfts(ctx.spec_f, spec_g, cfg.delta);
    for (std::size_t i = 0; i < spec_g.size(); ++i) spec_g[i] *= t[i];
  } else {
    const std::vector<cplx>& phi = ctx.phi_rev.at(method);
    for (std::size_t i = 0; i < spec_g.size(); ++i) spec_g[i] *= phi[i];
  }
  const std::vector<cplx> lag_hat = lag_from_spectrum(std::move(spec_g), ctx.geom);
  Rank1Result r = rank1_from_lag(lag_hat, ctx.geom, &ctx.clean);
  return std::move(r.signal);
}

}  // namespace detail

// Run the full (method x snr x seed) grid. Per-row failures become error
// rows and the run continues. Rows are computed in parallel across
// (snr, seed) tasks and assembled in listed order, so the output is
// byte-deterministic regardless of thread count.
inline MetricReport run_experiment(ExperimentConfig cfg) {
  apply_config_defaults(cfg);
  validate_config(cfg);

  detail::ExperimentContext ctx;
  ctx.clean = gen_signal(cfg.signal, cfg.sample_rate_hz, cfg.t0, cfg.t1);
  ctx.geom = detail::geometry_for(ctx.clean);
  ctx.spec_f = detail::spectrum_from_lag(detail::lag_wrapped(ctx.clean, ctx.geom), ctx.geom);
  for (const std::string& m : cfg.methods) {
    if (m == "wiener-1d" || m == "adaptive-cctfd") continue;
    ctx.phi_rev[m] = detail::sample_kernel_reversed(KernelSpec::fixed(parse_kernel_kind(m)), ctx.geom);
  }

  const std::size_t n_tasks = cfg.snr_db.size() * cfg.seeds.size();
  const std::size_t n_methods = cfg.methods.size();
  std::vector<MetricRow> rows(n_tasks * n_methods);

  auto run_task = [&](std::size_t task) {
    const std::size_t snr_idx = task / cfg.seeds.size();
    const std::size_t seed_idx = task % cfg.seeds.size();
    const double snr = cfg.snr_db[snr_idx];
    const std::uint64_t seed = cfg.seeds[seed_idx];
    Signal noisy;
    bool noise_ok = true;
    std::string noise_status;
    try {
      noisy = cfg.noise == NoiseKind::White ? awgn(ctx.clean, snr, seed)
                                            : colored_noise(ctx.clean, cfg.noise, snr, seed);
    } catch (const Error& e) {
      noise_ok = false;
      noise_status = std::string("error:") + errc_name(e.code());
    }
    for (std::size_t m = 0; m < n_methods; ++m) {
      MetricRow& row = rows[task * n_methods + m];
      row.method = cfg.methods[m];
      row.signal = signal_kind_name(cfg.signal);
      row.noise = noise_kind_name(cfg.noise);
      row.snr_db = snr;
      row.seed = seed;
      if (!noise_ok) {
        row.status = noise_status;
        continue;
      }
      try {
        Signal est = detail::denoise_one(ctx, cfg, cfg.methods[m], noisy);
        est = align_phase(est, ctx.clean);
        row.mse_log10 = mse_log10(est, ctx.clean);
        row.psnr_db = psnr_avg(est, ctx.clean);
        row.ok = true;
        row.status = "ok";
      } catch (const Error& e) {
        row.status = std::string("error:") + errc_name(e.code());
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n_tasks));
  if (threads <= 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t t = next.fetch_add(1);
          if (t >= n_tasks) return;
          run_task(t);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  MetricReport report;
  report.config = std::move(cfg);
  report.rows = std::move(rows);
  return report;
}

struct SummaryRow {
  std::string method;
  double snr_db = 0.0;
  std::size_t n = 0;
  double mse_mean = 0.0, mse_sd = 0.0;
  double psnr_mean = 0.0, psnr_sd = 0.0;
};

// Per (method, snr): mean and sample standard deviation over the ok rows.
inline std::vector<SummaryRow> summarize(const MetricReport& report) {
  std::vector<SummaryRow> out;
  for (const std::string& method : report.config.methods) {
    for (double snr : report.config.snr_db) {
      SummaryRow s;
      s.method = method;
      s.snr_db = snr;
      double mse_acc = 0.0, psnr_acc = 0.0;
      for (const MetricRow& r : report.rows) {
        if (!r.ok || r.method != method || r.snr_db != snr) continue;
        ++s.n;
        mse_acc += r.mse_log10;
        psnr_acc += r.psnr_db;
      }
      if (s.n > 0) {
        s.mse_mean = mse_acc / static_cast<double>(s.n);
        s.psnr_mean = psnr_acc / static_cast<double>(s.n);
        if (s.n > 1) {
          double v1 = 0.0, v2 = 0.0;
          for (const MetricRow& r : report.rows) {
            if (!r.ok || r.method != method || r.snr_db != snr) continue;
            v1 += (r.mse_log10 - s.mse_mean) * (r.mse_log10 - s.mse_mean);
            v2 += (r.psnr_db - s.psnr_mean) * (r.psnr_db - s.psnr_mean);
          }
          s.mse_sd = std::sqrt(v1 / static_cast<double>(s.n - 1));
          s.psnr_sd = std::sqrt(v2 / static_cast<double>(s.n - 1));
        }
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace detail

inline std::string report_to_csv(const MetricReport& report) {
  std::ostringstream os;
  os << "method,signal,noise,snr_db,seed,mse_log10,psnr_db,status\n";
  for (const MetricRow& r : report.rows) {
    os << r.method << ',' << r.signal << ',' << r.noise << ',' << detail::fmt_double(r.snr_db)
       << ',' << r.seed << ',';
    if (r.ok)
      os << detail::fmt_double(r.mse_log10) << ',' << detail::fmt_double(r.psnr_db);
    else
      os << ',';
    os << ',' << r.status << '\n';
  }
  return os.str();
}

inline std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  os << "method,snr_db,n,mse_log10_mean,mse_log10_sd,psnr_db_mean,psnr_db_sd\n";
  for (const SummaryRow& s : rows) {
    os << s.method << ',' << detail::fmt_double(s.snr_db) << ',' << s.n << ','
       << detail::fmt_double(s.mse_mean) << ',' << detail::fmt_double(s.mse_sd) << ','
       << detail::fmt_double(s.psnr_mean) << ',' << detail::fmt_double(s.psnr_sd) << '\n';
  }
  return os.str();
}

// Wide per-figure plot data: one row per SNR, mean metrics per method.
inline std::string figure_to_csv(const MetricReport& report) {
  const std::vector<SummaryRow> summary = summarize(report);
  std::ostringstream os;
  os << "snr_db";
  for (const std::string& m : report.config.methods) os << ",mse:" << m;
  for (const std::string& m : report.config.methods) os << ",psnr:" << m;
  os << '\n';
  for (std::size_t i = 0; i < report.config.snr_db.size(); ++i) {
    const double snr = report.config.snr_db[i];
    os << detail::fmt_double(snr);
    for (const std::string& m : report.config.methods) {
      for (const SummaryRow& s : summary)
        if (s.method == m && s.snr_db == snr) os << ',' << detail::fmt_double(s.mse_mean);
    }
    for (const std::string& m : report.config.methods) {
      for (const SummaryRow& s : summary)
        if (s.method == m && s.snr_db == snr) os << ',' << detail::fmt_double(s.psnr_mean);
    }
    os << '\n';
  }
  return os.str();
}

inline int figure_index(SignalKind k) {
  switch (k) {
    case SignalKind::LFM: return 1;
    case SignalKind::GELFM: return 2;
    case SignalKind::QFM: return 3;
    case SignalKind::SFM: return 4;
  }
  return 0;
}

}  // namespace tfd
