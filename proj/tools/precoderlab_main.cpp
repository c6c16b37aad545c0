// precoderlab: MU-MIMO linear-precoding experiment runner.
//
// Subcommands:
//   sumrate  mean Shannon sum rate vs SNR per precoding method
//   ber      Monte-Carlo QPSK bit error rate vs SNR per method
//   equiv    SLNR / RZF equivalence certification over random channels
//
// All outputs are CSV, byte-identical across reruns with the same flags.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "precoderlab/experiment.hpp"

namespace {

using namespace precoderlab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitEquivFailed = 3;

std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    // start:step:stop, inclusive endpoints
    double start = 0.0, step = 0.0, stop = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' ||
        !(in >> std::ws).eof())
      throw ConfigError("snrs: expected start:step:stop, got '" + text + "'");
    if (!(step > 0.0)) throw ConfigError("snrs: step must be > 0");
    for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) throw ConfigError("snrs: empty entry in '" + text + "'");
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw ConfigError("snrs: bad number '" + tok + "'");
  }
  return out;
}

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto m = parse_method(tok);
    if (!m) throw ConfigError("methods: unknown method '" + tok + "'");
    out.push_back(*m);
  }
  return out;
}

void write_output(const std::string& csv, const std::string& path) {
  if (path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + path);
  f << csv;
  if (!f) throw Error("failed writing output file: " + path);
}

struct CliOptions {
  ExperimentConfig cfg;
  std::string out_path;
};

int run(Command command, const CliOptions& opt) {
  ExperimentConfig cfg = opt.cfg;
  cfg.command = command;
  switch (command) {
    case Command::SumRate:
      write_output(sumrate_csv(run_sumrate(cfg)), opt.out_path);
      return kExitOk;
    case Command::Ber:
      write_output(ber_csv(run_ber(cfg)), opt.out_path);
      return kExitOk;
    case Command::Equiv: {
      const auto [rows, summary] = run_equiv(cfg);
      write_output(equiv_csv(rows), opt.out_path);
      std::fprintf(stderr,
                   "equiv: trials=%lld users=%zu min_alignment_slnr_rzf=%.17g "
                   "min_alignment_eig_closed=%.17g max_lambda_rel_err=%.17g\n",
                   static_cast<long long>(cfg.trials), cfg.k_users,
                   summary.min_alignment_slnr_rzf,
                   summary.min_alignment_eig_closed, summary.max_lambda_rel_err);
      if (!summary.pass) {
        std::fprintf(stderr,
                     "equiv: FAILED at seed=%llu trial=%lld user=%zu "
                     "(alignment=%.17g)\n",
                     static_cast<unsigned long long>(summary.worst.seed),
                     static_cast<long long>(summary.worst.trial),
                     summary.worst.user, summary.worst.alignment_slnr_rzf);
        return kExitEquivFailed;
      }
      return kExitOk;
    }
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MU-MIMO linear precoding studies (ZF / RZF / SLNR)"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string snrs_text;
  std::string methods_text;
  std::string alpha_text = "sigma2";
  std::string preset_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--nt", opt.cfg.nt, "Transmit antennas");
    sub->add_option("--users", opt.cfg.k_users, "Single-antenna users");
    sub->add_option("--snrs", snrs_text,
                    "SNR sweep in dB: start:step:stop or comma list");
    sub->add_option("--methods", methods_text,
                    "Comma list from zf,rzf,slnr,slnr_eig");
    sub->add_option("--alpha", alpha_text,
                    "RZF regularization: 'sigma2' or a fixed value");
    sub->add_option("--sigma2", opt.cfg.sigma2, "Noise variance");
    sub->add_option("--seed", opt.cfg.master_seed, "Master seed");
    sub->add_option("--out", opt.out_path, "Output CSV path (default stdout)");
    sub->add_option("--preset", preset_name,
                    "fig1a (4x4), fig1b (2x2), fig2a (4x4 BER), fig2b (6x4 BER)");
    sub->add_option("--threads", opt.cfg.threads, "Worker threads");
  };

  CLI::App* sumrate = app.add_subcommand("sumrate", "Mean sum rate vs SNR");
  add_common(sumrate);
  sumrate->add_option("--trials", opt.cfg.trials, "Channel draws per point");

  CLI::App* ber = app.add_subcommand("ber", "QPSK bit error rate vs SNR");
  add_common(ber);
  ber->add_option("--min-bits", opt.cfg.min_bits, "Minimum bits per point");
  ber->add_option("--max-bits", opt.cfg.max_bits, "Bit cap per point");

  CLI::App* equiv = app.add_subcommand(
      "equiv", "Certify SLNR == RZF(alpha=sigma2) over random channels");
  add_common(equiv);
  equiv->add_option("--trials", opt.cfg.trials, "Random channels to certify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    // Preset first, then explicit flags override it.
    if (!preset_name.empty()) {
      const auto preset = preset_by_name(preset_name);
      if (!preset) throw ConfigError("preset: unknown preset '" + preset_name + "'");
      CLI::App* sub = app.get_subcommands().front();
      if (sub->count("--nt") == 0) opt.cfg.nt = preset->nt;
      if (sub->count("--users") == 0) opt.cfg.k_users = preset->k_users;
      if (sub->count("--snrs") == 0) opt.cfg.snr_db_list = preset->snr_db_list;
    }
    if (!snrs_text.empty()) opt.cfg.snr_db_list = parse_snr_list(snrs_text);
    if (!methods_text.empty()) opt.cfg.methods = parse_methods(methods_text);
    if (alpha_text != "sigma2") {
      std::size_t used = 0;
      const double a = std::stod(alpha_text, &used);
      if (used != alpha_text.size())
        throw ConfigError("alpha: expected 'sigma2' or a number, got '" +
                          alpha_text + "'");
      opt.cfg.fixed_alpha = a;
    }

    if (app.got_subcommand(sumrate)) return run(Command::SumRate, opt);
    if (app.got_subcommand(ber)) return run(Command::Ber, opt);
    return run(Command::Equiv, opt);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
