#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrplab/errors.h"
#include "mrplab/experiments.h"
#include "mrplab/io.h"
#include "mrplab/model_estimators.h"
#include "mrplab/mrp.h"
#include "mrplab/mvu.h"
#include "mrplab/rng.h"
#include "mrplab/sampled_estimators.h"
#include "mrplab/sufficient_stats.h"

namespace {

using namespace mrplab;

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitInfeasible = 4;

std::string fmt(double x) { return format_number(x, 12); }

struct Common {
  unsigned threads = 0;
};

struct SampleOpts {
  std::string mrp;
  std::size_t n = 1;
  std::uint64_t seed = 1;
  double gamma_override = -1.0;
  std::size_t max_length = kDefaultMaxPathLength;
  std::string stat_out;
};

struct EstimateOpts {
  SampleOpts sample;
  std::string estimator = "ml";
  double td_lambda = 0.0;
  std::string td_trace = "accumulating";
  bool td_modified = true;
  std::string td_mode = "offline";
  double td_alpha = 0.0;
  double td_init = 0.0;
  std::uint64_t limit_vectors = EnumerationLimits{}.max_vectors;
  double limit_seconds = EnumerationLimits{}.max_seconds;
};

struct EnumerateOpts {
  std::string stat;
  std::string mrp;
  double gamma_override = -1.0;
  std::uint64_t limit_vectors = EnumerationLimits{}.max_vectors;
  double limit_seconds = EnumerationLimits{}.max_seconds;
  std::size_t print_limit = 1000;
};

struct ExperimentOpts {
  std::string name;
  std::string out;
  bool gnuplot = false;
  std::vector<std::string> estimators;
  std::size_t blocks = ReplicateConfig{}.blocks;
  std::size_t per_block = ReplicateConfig{}.per_block;
  std::uint64_t seed = 1;

  LayeredConfig layered;
  std::vector<std::size_t> n_grid{1, 2, 5, 10, 20, 50, 100};
  std::vector<unsigned> x_grid{0, 1, 2, 3, 4, 5, 6};
  std::size_t target_starts = 10;

  TimeConfig time;
  std::string clock = "wall";

  CyclicConfig cyclic;
  std::string reward = "exit";

  ContractionConfig contraction;
  std::vector<double> gamma;
};

MrpSpec load_with_override(const std::string& path, double gamma_override) {
  MrpSpec spec = load_mrp(path);
  if (gamma_override >= 0.0) {
    spec.discount = gamma_override;
    require_valid(spec);
  }
  return spec;
}

std::vector<PathSample> draw(const MrpSpec& spec, const SampleOpts& o) {
  PathSampler sampler(spec, o.max_length);
  Rng rng(o.seed);
  std::vector<PathSample> paths;
  paths.reserve(o.n);
  for (std::size_t k = 0; k < o.n; ++k) paths.push_back(sampler.sample(rng));
  return paths;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + p.string());
  f << text;
  if (!f) throw ValidationError("failed writing " + p.string());
}

void print_estimate(const PerStateEstimate& e, const std::string& column) {
  std::cout << "state," << column << ",defined\n";
  for (std::size_t s = 0; s < e.values.size(); ++s)
    std::cout << s << ',' << (e.defined[s] ? fmt(e.values[s]) : "nan") << ',' << (e.defined[s] ? 1 : 0)
              << '\n';
}

std::string path_text(const PathSample& p) {
  std::string out = "(";
  for (std::size_t t = 0; t < p.states.size(); ++t) {
    if (t) out += ' ';
    out += std::to_string(p.states[t]);
  }
  return out + ")";
}

int cmd_validate(const std::string& path) {
  load_mrp(path);
  std::cout << "ok\n";
  return 0;
}

int cmd_value(const std::string& path) {
  const MrpSpec spec = load_mrp(path);
  const auto v = exact_value(spec);
  std::cout << "state,value\n";
  for (std::size_t s = 0; s < v.size(); ++s) std::cout << s << ',' << fmt(v[s]) << '\n';
  return 0;
}

int cmd_sample(const SampleOpts& o) {
  const MrpSpec spec = load_with_override(o.mrp, o.gamma_override);
  const auto paths = draw(spec, o);
  for (const auto& p : paths) {
    std::cout << "states";
    for (StateIndex s : p.states) std::cout << ' ' << s;
    std::cout << " | rewards";
    for (double r : p.rewards) std::cout << ' ' << fmt(r);
    std::cout << '\n';
  }
  if (!o.stat_out.empty()) write_file(o.stat_out, suffstat_to_json(accumulate(paths, spec)));
  return 0;
}

int cmd_estimate(const EstimateOpts& o, const Common& c) {
  const MrpSpec spec = load_with_override(o.sample.mrp, o.sample.gamma_override);
  const auto paths = draw(spec, o.sample);
  const double g = spec.discount;
  const std::size_t n = spec.num_states;
  const Estimator kind = parse_estimator(o.estimator);
  PerStateEstimate e;
  switch (kind) {
    case Estimator::mc_first:
      e = mc_first_visit(paths, g, n);
      break;
    case Estimator::mc_every:
      e = mc_every_visit(paths, g, n);
      break;
    case Estimator::td:
    case Estimator::td_standard: {
      TdConfig cfg;
      cfg.lambda = o.td_lambda;
      if (o.td_trace == "accumulating") cfg.trace = TraceKind::accumulating;
      else if (o.td_trace == "replacing") cfg.trace = TraceKind::replacing;
      else throw ValidationError("--td-trace must be accumulating or replacing");
      if (o.td_mode == "offline") cfg.mode = UpdateMode::offline;
      else if (o.td_mode == "online") cfg.mode = UpdateMode::online;
      else throw ValidationError("--td-mode must be offline or online");
      if (o.td_alpha > 0.0) cfg.rate = LearningRate::constant(o.td_alpha);
      cfg.modified = kind == Estimator::td && o.td_modified;
      cfg.initial_value = o.td_init;
      cfg.check();
      e = td_run(paths, cfg, g, n).estimate();
      break;
    }
    case Estimator::iml: {
      IterativeMl iml(spec, g);
      for (const auto& p : paths) iml.observe(p);
      e = iml.estimate();
      break;
    }
    case Estimator::ml:
    case Estimator::lstd: {
      const auto stat = accumulate(paths, spec);
      const auto params = ml_params(stat);
      e.values = kind == Estimator::ml ? ml_value(params, g) : lstd_value(params, g);
      e.defined.assign(n, false);
      for (StateIndex s = 0; s < n; ++s) e.defined[s] = stat.visit_counts[s] > 0;
      break;
    }
    case Estimator::mvu: {
      EnumerationLimits lim;
      lim.max_vectors = o.limit_vectors;
      lim.max_seconds = o.limit_seconds;
      lim.threads = c.threads;
      e = mvu_estimate(accumulate(paths, spec), spec, g, lim);
      break;
    }
  }
  print_estimate(e, "estimate");
  return 0;
}

int cmd_enumerate(const EnumerateOpts& o, const Common& c) {
  const MrpSpec spec = load_with_override(o.mrp, o.gamma_override);
  const SuffStat stat = load_suffstat(o.stat);
  EnumerationLimits lim;
  lim.max_vectors = o.limit_vectors;
  lim.max_seconds = o.limit_seconds;
  lim.threads = c.threads;
  const auto fam = enumerate_consistent(stat, spec, lim);
  std::cout << "vectors " << fam.total_ordered_count << '\n';
  std::cout << "multisets " << fam.multiset_count << '\n';
  std::size_t shown = 0;
  for (const auto& m : fam.multisets) {
    if (shown++ == o.print_limit) {
      std::cout << "... " << fam.multisets.size() - o.print_limit << " more\n";
      break;
    }
    std::cout << 'x' << m.multiplicity;
    for (const auto& p : m.paths) std::cout << ' ' << path_text(p);
    std::cout << '\n';
  }
  print_estimate(mvu_estimate(stat, spec, spec.discount, lim), "mvu");
  return 0;
}

std::vector<Estimator> estimators_or(const std::vector<std::string>& names,
                                     std::vector<Estimator> fallback) {
  if (names.empty()) return fallback;
  std::vector<Estimator> out;
  for (const auto& n : names) out.push_back(parse_estimator(n));
  return out;
}

int cmd_experiment(ExperimentOpts o, const Common& c) {
  const auto names = experiment_names();
  if (std::find(names.begin(), names.end(), o.name) == names.end()) {
    std::string list;
    for (const auto& n : names) list += "\n  " + n;
    throw ValidationError("unknown experiment \"" + o.name + "\"; valid names:" + list);
  }
  const ReplicateConfig reps{o.blocks, o.per_block, o.seed, c.threads};
  if (reps.blocks == 0 || reps.per_block == 0) throw ValidationError("--blocks and --per-block must be positive");
  ExperimentResult res;
  using E = Estimator;
  if (o.name == "mse-vs-paths") {
    const auto ests = estimators_or(o.estimators, {E::mc_first, E::td, E::td_standard, E::iml, E::ml});
    res = exp_mse_vs_paths(o.layered, ests, o.n_grid, reps);
  } else if (o.name == "mse-vs-startprob") {
    const auto ests = estimators_or(o.estimators, {E::mc_first, E::td, E::ml});
    res = exp_mse_vs_startprob(o.layered, ests, o.x_grid, reps, o.target_starts);
  } else if (o.name == "mse-vs-time") {
    const auto ests = estimators_or(o.estimators, {E::mc_first, E::td, E::iml, E::ml});
    if (o.clock == "wall") o.time.clock = ClockKind::wall;
    else if (o.clock == "work") o.time.clock = ClockKind::work;
    else throw ValidationError("--clock must be wall or work");
    res = exp_mse_vs_time(o.layered, ests, o.time, reps);
  } else if (o.name == "cyclic-mvu-ml") {
    if (o.reward == "exit") o.cyclic.reward = RewardConvention::exit;
    else if (o.reward == "cycle") o.cyclic.reward = RewardConvention::cycle;
    else throw ValidationError("--reward must be exit or cycle");
    if (!o.gamma.empty()) o.cyclic.gamma_grid = o.gamma;
    res = exp_cyclic_mvu_ml(o.cyclic, reps);
  } else {
    if (!o.gamma.empty()) o.contraction.gamma_grid = o.gamma;
    res = exp_contraction(o.contraction, reps);
  }

  const std::string csv = res.csv();
  if (o.out.empty()) {
    if (o.gnuplot) throw ValidationError("--gnuplot needs --out");
    std::cout << csv;
    return 0;
  }
  const std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  write_file(dir / (res.id + ".csv"), csv);
  if (o.gnuplot)
    for (const auto& [file, text] : res.gnuplot()) write_file(dir / file, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value estimation for Markov reward processes", "mrplab"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)");

  std::string mrp_path;
  auto* validate = app.add_subcommand("validate", "Check an MRP file");
  validate->add_option("mrp", mrp_path, "MRP JSON file")->required();

  auto* value = app.add_subcommand("value", "Print exact state values");
  value->add_option("mrp", mrp_path, "MRP JSON file")->required();

  SampleOpts so;
  auto add_sample_opts = [](CLI::App* cmd, SampleOpts& s) {
    cmd->add_option("mrp", s.mrp, "MRP JSON file")->required();
    cmd->add_option("--n", s.n, "Number of paths")->capture_default_str();
    cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
    cmd->add_option("--gamma-override", s.gamma_override, "Replace the file's discount");
    cmd->add_option("--max-length", s.max_length, "Path length guard")->capture_default_str();
  };
  auto* sample = app.add_subcommand("sample", "Sample paths");
  add_sample_opts(sample, so);
  sample->add_option("--stat-out", so.stat_out, "Write the count statistic as JSON");

  EstimateOpts eo;
  auto* estimate = app.add_subcommand("estimate", "Sample paths and run an estimator");
  add_sample_opts(estimate, eo.sample);
  estimate->add_option("--estimator", eo.estimator, "mc-first|mc-every|td|td-standard|iml|ml|lstd|mvu")
      ->capture_default_str();
  estimate->add_option("--td-lambda", eo.td_lambda)->capture_default_str();
  estimate->add_option("--td-trace", eo.td_trace, "accumulating|replacing")->capture_default_str();
  estimate->add_option("--td-modified", eo.td_modified, "Unbiased initialization for td")
      ->capture_default_str();
  estimate->add_option("--td-mode", eo.td_mode, "offline|online")->capture_default_str();
  estimate->add_option("--td-alpha", eo.td_alpha, "Constant learning rate (default harmonic)");
  estimate->add_option("--td-init", eo.td_init, "Initial value")->capture_default_str();
  estimate->add_option("--limit-vectors", eo.limit_vectors)->capture_default_str();
  estimate->add_option("--limit-seconds", eo.limit_seconds)->capture_default_str();

  EnumerateOpts no;
  auto* enumerate = app.add_subcommand("enumerate", "List path multisets consistent with a count statistic");
  enumerate->add_option("stat", no.stat, "Statistic JSON file")->required();
  enumerate->add_option("mrp", no.mrp, "MRP JSON file")->required();
  enumerate->add_option("--gamma-override", no.gamma_override);
  enumerate->add_option("--limit-vectors", no.limit_vectors)->capture_default_str();
  enumerate->add_option("--limit-seconds", no.limit_seconds)->capture_default_str();
  enumerate->add_option("--print-limit", no.print_limit)->capture_default_str();

  ExperimentOpts xo;
  auto* experiment = app.add_subcommand("experiment", "Run a named experiment");
  experiment->add_option("name", xo.name, "mse-vs-paths|mse-vs-startprob|mse-vs-time|cyclic-mvu-ml|contraction")
      ->required();
  experiment->add_option("--out", xo.out, "Output directory (stdout when absent)");
  experiment->add_flag("--gnuplot", xo.gnuplot, "Also write plot tables");
  experiment->add_option("--estimators", xo.estimators)->delimiter(',');
  experiment->add_option("--blocks", xo.blocks)->capture_default_str();
  experiment->add_option("--per-block", xo.per_block)->capture_default_str();
  experiment->add_option("--seed", xo.seed)->capture_default_str();
  experiment->add_option("--layers", xo.layered.num_layers)->capture_default_str();
  experiment->add_option("--states-per-layer", xo.layered.max_states_per_layer)->capture_default_str();
  experiment->add_option("--start-layers", xo.layered.start_layers)->capture_default_str();
  experiment->add_option("--target-start-prob", xo.layered.start_prob_target_state)->capture_default_str();
  experiment->add_option("--high-fraction", xo.layered.high_reward_fraction)->capture_default_str();
  experiment->add_option("--high-value", xo.layered.high_reward_value)->capture_default_str();
  experiment->add_option("--discount", xo.layered.discount)->capture_default_str();
  experiment->add_option("--mrp-seed", xo.layered.seed)->capture_default_str();
  experiment->add_option("--n-grid", xo.n_grid)->delimiter(',');
  experiment->add_option("--x-grid", xo.x_grid)->delimiter(',');
  experiment->add_option("--target-starts", xo.target_starts)->capture_default_str();
  experiment->add_option("--time-n-grid", xo.time.n_grid)->delimiter(',');
  experiment->add_option("--ml-n-grid", xo.time.ml_n_grid)->delimiter(',');
  experiment->add_option("--per-path-cost", xo.time.per_path_cost)->capture_default_str();
  experiment->add_option("--repetitions", xo.time.repetitions)->capture_default_str();
  experiment->add_option("--clock", xo.clock, "wall|work")->capture_default_str();
  experiment->add_option("--p", xo.cyclic.p_grid)->delimiter(',');
  experiment->add_option("--gamma", xo.gamma)->delimiter(',');
  experiment->add_option("--n", xo.cyclic.n)->capture_default_str();
  experiment->add_option("--reward", xo.reward, "exit|cycle")->capture_default_str();
  experiment->add_option("--bias-p", xo.cyclic.bias_p)->capture_default_str();
  experiment->add_option("--bias-gamma", xo.cyclic.bias_gamma)->capture_default_str();
  experiment->add_option("--bias-n-grid", xo.cyclic.bias_n_grid)->delimiter(',');
  experiment->add_option("--size", xo.contraction.size)->capture_default_str();
  experiment->add_option("--c", xo.contraction.c_grid)->delimiter(',');
  experiment->add_option("--iterations", xo.contraction.iterations)->capture_default_str();
  experiment->add_option("--matrices", xo.contraction.matrices)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*validate) return cmd_validate(mrp_path);
    if (*value) return cmd_value(mrp_path);
    if (*sample) return cmd_sample(so);
    if (*estimate) return cmd_estimate(eo, common);
    if (*enumerate) return cmd_enumerate(no, common);
    if (*experiment) return cmd_experiment(xo, common);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << " (" << e.cap() << ")\n";
    return kExitResource;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
