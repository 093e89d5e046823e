#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "dataset.hpp"
#include "lgof/errors.hpp"
#include "lgof/logistic.hpp"
#include "lgof/montecarlo.hpp"
#include "lgof/table.hpp"

namespace lgof::cli {
namespace {

struct CommonMc {
  std::size_t reps = 10000;
  std::uint64_t seed = 20240601;
  unsigned workers = 0;
  std::string method = "moments";
};

void add_mc_options(CLI::App* cmd, CommonMc& mc) {
  cmd->add_option("--reps", mc.reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", mc.seed, "64-bit seed");
  cmd->add_option("--workers", mc.workers, "Worker threads (default: $LGOF_WORKERS or all cores)");
  cmd->add_option("--method", mc.method, "Estimator: moments or ml");
}

std::string upper(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

// "T" and "R" without a tuning take theirs from --a / --v; "all" expands to
// the standard battery.
std::vector<StatisticId> resolve_statistics(const std::vector<std::string>& names, const std::vector<double>& a_list,
                                            const std::vector<int>& v_list) {
  std::vector<StatisticId> ids;
  auto push = [&ids](const StatisticId& id) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  };
  for (const auto& raw : names) {
    const std::string name = upper(raw);
    if (name == "ALL") {
      for (const auto& id : standard_battery()) push(id);
    } else if (name == "T" && !a_list.empty()) {
      for (const double a : a_list) {
        WeightSpec{a}.validate();
        push(StatisticId::t(a));
      }
    } else if (name == "R" && !v_list.empty()) {
      for (const int v : v_list) {
        if (v < 1) throw DomainError("R_{n,v}: v must be a positive integer");
        push(StatisticId::r(v));
      }
    } else {
      push(StatisticId::parse(raw));
    }
  }
  if (ids.empty()) throw InputError("no statistic selected; valid: " + valid_statistic_names());
  return ids;
}

McConfig make_config(const CommonMc& mc, std::size_t n, std::vector<double> alphas) {
  McConfig cfg;
  cfg.reps = mc.reps;
  cfg.n = n;
  cfg.alphas = std::move(alphas);
  cfg.seed = mc.seed;
  cfg.workers = mc.workers;
  cfg.fit.method = parse_fit_method(mc.method);
  return cfg;
}

// Writes to `path`, or to `out` when the path is empty or "-".
template <class Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError(path + ": cannot open for writing");
  write(file);
  if (!file) throw InputError(path + ": write failed");
}

void write_grid(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    os << line << '\n';
  }
}

int cmd_fit(const std::string& input, bool log, const std::string& method, std::ostream& out) {
  const Dataset d = read_dataset(input, log ? Transform::Log : Transform::None);
  FitOptions opt;
  opt.method = parse_fit_method(method);
  const FitResult f = fit(d.values, opt);
  write_grid(out, {{"n", std::to_string(d.values.size())},
                   {"method", std::string(to_string(f.method))},
                   {"mu", format_number(f.mu_hat)},
                   {"sigma", format_number(f.sigma_hat)}});
  return kSuccess;
}

struct TestArgs {
  std::string input;
  bool log = false;
  std::vector<std::string> stats{"T"};
  std::vector<double> a;
  std::vector<int> v;
  std::string plot_data;
  CommonMc mc;
};

int cmd_test(const TestArgs& args, std::ostream& out) {
  const Dataset d = read_dataset(args.input, args.log ? Transform::Log : Transform::None);
  const auto ids = resolve_statistics(args.stats, args.a, args.v);
  McConfig cfg = make_config(args.mc, d.values.size(), {0.05});
  const ScaledResiduals res = scaled_residuals(d.values, cfg.fit);

  if (!args.plot_data.empty()) {
    emit(args.plot_data, out, [&](std::ostream& os) {
      std::vector<double> y(res.values().begin(), res.values().end());
      std::sort(y.begin(), y.end());
      const double n1 = static_cast<double>(y.size() + 1);
      os << "k,logistic_quantile,residual\n";
      for (std::size_t k = 1; k <= y.size(); ++k) {
        os << k << ',' << format_number(quantile(static_cast<double>(k) / n1)) << ',' << format_number(y[k - 1])
           << '\n';
      }
    });
    if (args.plot_data == "-") return kSuccess;
  }

  std::vector<double> observed(ids.size());
  bool clamped = false;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const TestOutcome o = evaluate(ids[i], res.values());
    observed[i] = o.value;
    clamped = clamped || o.clamped;
  }
  const auto nulls = simulate_null(ids, cfg);

  std::vector<std::vector<std::string>> rows{{"statistic", "value", "p_value", "reps", "excluded"}};
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const PValueResult p = pvalue_from_null(nulls[i], observed[i]);
    rows.push_back({ids[i].name(), format_number(observed[i]), format_number(p.pvalue), std::to_string(p.reps),
                    std::to_string(p.excluded)});
  }
  out << "data: " << d.source << (args.log ? " (log)" : "") << ", n = " << d.values.size() << '\n';
  out << "fit: " << to_string(res.fit().method) << ", mu = " << format_number(res.fit().mu_hat)
      << ", sigma = " << format_number(res.fit().sigma_hat) << '\n';
  out << "seed: " << cfg.seed << '\n';
  write_grid(out, rows);
  if (clamped) out << "note: some F(Y) were clamped to [1e-15, 1 - 1e-15] for the EDF statistics\n";
  return kSuccess;
}

struct CalibrateArgs {
  std::vector<std::string> stats{"T"};
  std::vector<double> a;
  std::vector<int> v;
  std::vector<std::size_t> sizes{20};
  std::vector<double> alphas{0.01, 0.05, 0.10};
  std::string out_path;
  std::string format = "csv";
  CommonMc mc;
};

int cmd_calibrate(const CalibrateArgs& args, std::ostream& out) {
  const auto ids = resolve_statistics(args.stats, args.a, args.v);
  CriticalTable table;
  for (const std::size_t n : args.sizes) {
    table.merge(critical_values(ids, make_config(args.mc, n, args.alphas)));
  }
  emit(args.out_path, out, [&](std::ostream& os) {
    if (args.format == "text") {
      write_critical_text(os, table);
    } else {
      write_critical_csv(os, table);
    }
  });
  return kSuccess;
}

struct PowerArgs {
  std::string config;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> calibration_reps;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string out_path;
  std::string format = "csv";
};

int cmd_power(const PowerArgs& args, std::ostream& out) {
  PowerConfig pc = read_power_config(args.config);
  if (args.reps) pc.reps = *args.reps;
  if (args.calibration_reps) pc.calibration_reps = *args.calibration_reps;
  if (args.seed) pc.seed = *args.seed;

  std::vector<PowerCell> cells;
  for (const std::size_t n : pc.sizes) {
    McConfig cfg;
    cfg.n = n;
    cfg.alphas = pc.alphas;
    cfg.seed = pc.seed;
    cfg.workers = args.workers;
    cfg.fit.method = pc.method;
    cfg.reps = pc.calibration_reps;
    const CriticalTable table = critical_values(pc.statistics, cfg);
    cfg.reps = pc.reps;
    auto part = pc.contaminant ? local_power_curve(*pc.contaminant, pc.mixing_p, pc.statistics, cfg, table)
                               : power_study(pc.statistics, pc.alternatives, cfg, table);
    cells.insert(cells.end(), part.begin(), part.end());
  }
  emit(args.out_path, out, [&](std::ostream& os) {
    if (args.format == "text") {
      write_power_text(os, cells);
    } else {
      write_power_csv(os, cells);
    }
  });
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goodness-of-fit tests for the logistic distribution"};
  app.name("lgof");
  app.require_subcommand(1);
  app.set_version_flag("--version", "lgof 0.3.0");

  std::string input, method = "moments";
  bool log = false;
  auto* fit_cmd = app.add_subcommand("fit", "Estimate (mu, sigma) of a logistic law");
  fit_cmd->add_option("input", input, "Data file: one number per line")->required();
  fit_cmd->add_option("--method", method, "Estimator: moments or ml");
  fit_cmd->add_flag("--log", log, "Analyse log(x)");

  TestArgs targs;
  auto* test_cmd = app.add_subcommand("test", "Test statistics with simulated p-values");
  test_cmd->add_option("input", targs.input, "Data file: one number per line")->required();
  test_cmd->add_option("--stat", targs.stats, "Statistic(s): T, T3, S, R, R2, KS, CM, AD, WA or all")
      ->delimiter(',');
  test_cmd->add_option("--a", targs.a, "Weight rate(s) for T")->delimiter(',');
  test_cmd->add_option("--v", targs.v, "Tuning(s) for R")->delimiter(',');
  test_cmd->add_flag("--log", targs.log, "Analyse log(x)");
  test_cmd->add_option("--plot-data", targs.plot_data,
                       "Write probability-plot coordinates as CSV to a file ('-': stdout only)");
  add_mc_options(test_cmd, targs.mc);

  CalibrateArgs cargs;
  auto* cal_cmd = app.add_subcommand("calibrate", "Monte Carlo critical values");
  cal_cmd->add_option("--stat", cargs.stats, "Statistic(s)")->delimiter(',');
  cal_cmd->add_option("--a", cargs.a, "Weight rate(s) for T")->delimiter(',');
  cal_cmd->add_option("--v", cargs.v, "Tuning(s) for R")->delimiter(',');
  cal_cmd->add_option("--n", cargs.sizes, "Sample size(s)")->delimiter(',');
  cal_cmd->add_option("--alpha-list", cargs.alphas, "Significance levels")->delimiter(',');
  cal_cmd->add_option("--out", cargs.out_path, "Output file (default: stdout)");
  cal_cmd->add_option("--format", cargs.format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
  add_mc_options(cal_cmd, cargs.mc);
  cargs.mc.reps = 100000;

  PowerArgs pargs;
  auto* pow_cmd = app.add_subcommand("power", "Power study described by a config file");
  pow_cmd->add_option("--config", pargs.config, "Study description")->required();
  pow_cmd->add_option("--reps", pargs.reps, "Override replications per alternative");
  pow_cmd->add_option("--calibration-reps", pargs.calibration_reps, "Override null replications");
  pow_cmd->add_option("--seed", pargs.seed, "Override seed");
  pow_cmd->add_option("--workers", pargs.workers, "Worker threads (default: $LGOF_WORKERS or all cores)");
  pow_cmd->add_option("--out", pargs.out_path, "Output file (default: stdout)");
  pow_cmd->add_option("--format", pargs.format, "csv or text")->check(CLI::IsMember({"csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << "lgof 0.3.0\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "lgof: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(input, log, method, out);
    if (*test_cmd) return cmd_test(targs, out);
    if (*cal_cmd) return cmd_calibrate(cargs, out);
    if (*pow_cmd) return cmd_power(pargs, out);
  } catch (const InputError& e) {
    err << "lgof: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateSampleError& e) {
    err << "lgof: degenerate data: " << e.what() << '\n';
    return kDegenerate;
  } catch (const SizeError& e) {
    err << "lgof: degenerate data: " << e.what() << '\n';
    return kDegenerate;
  } catch (const NumericError& e) {
    err << "lgof: numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "lgof: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace lgof::cli
