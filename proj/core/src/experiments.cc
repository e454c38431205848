#include "mrplab/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mrplab/catalog.h"
#include "mrplab/errors.h"
#include "mrplab/io.h"
#include "mrplab/model_estimators.h"
#include "mrplab/mvu.h"
#include "mrplab/parallel.h"
#include "mrplab/sampled_estimators.h"
#include "mrplab/special_functions.h"
#include "mrplab/stats.h"
#include "mrplab/sufficient_stats.h"

namespace mrplab {
namespace {

using Clock = std::chrono::steady_clock;
using Estimate = std::optional<double>;

std::string num(double x) { return format_number(x, 12); }

void shuffle(std::vector<PathSample>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

double dirichlet_weight(Rng& rng) { return -std::log1p(-rng.uniform()); }

// Runs blocks * per_block replicates of fn and returns values[estimator][replicate].
template <class Fn>
std::vector<std::vector<Estimate>> run_replicates(const ReplicateConfig& reps, std::size_t width,
                                                  std::uint64_t cell, Fn fn) {
  const std::size_t total = reps.blocks * reps.per_block;
  std::vector<std::vector<Estimate>> out(width, std::vector<Estimate>(total));
  parallel_for(total, reps.threads, [&](std::size_t r) {
    Rng rng = Rng::substream(reps.seed, cell, r);
    auto vals = fn(rng);
    for (std::size_t e = 0; e < width; ++e) out[e][r] = vals[e];
  });
  return out;
}

// One row per block, conditioning on replicates where the estimate exists.
void block_rows(ExperimentResult& res, const std::string& estimator, const std::string& sweep,
                double x, const std::vector<Estimate>& values, const ReplicateConfig& reps,
                double truth, double time_s = 0.0) {
  std::vector<double> defined;
  for (std::size_t b = 0; b < reps.blocks; ++b) {
    defined.clear();
    for (std::size_t k = 0; k < reps.per_block; ++k)
      if (const auto& v = values[b * reps.per_block + k]) defined.push_back(*v);
    if (defined.empty()) continue;
    auto d = mse_decompose(defined, truth);
    res.rows.push_back({res.id, estimator, sweep, std::int64_t(b), d.mse, d.bias, d.variance, time_s, x});
  }
}

Estimate at(const PerStateEstimate& e, StateIndex s) {
  if (!e.defined[s]) return std::nullopt;
  return e.values[s];
}

Estimate run_estimator(Estimator kind, const MrpSpec& spec, std::span<const PathSample> paths,
                       StateIndex s) {
  const double g = spec.discount;
  const std::size_t n = spec.num_states;
  switch (kind) {
    case Estimator::mc_first:
      return at(mc_first_visit(paths, g, n), s);
    case Estimator::mc_every:
      return at(mc_every_visit(paths, g, n), s);
    case Estimator::td:
    case Estimator::td_standard: {
      TdConfig cfg;
      cfg.modified = kind == Estimator::td;
      return at(td_run(paths, cfg, g, n).estimate(), s);
    }
    case Estimator::iml: {
      IterativeMl iml(spec, g);
      for (const auto& p : paths) iml.observe(p);
      return at(iml.estimate(), s);
    }
    case Estimator::ml:
    case Estimator::lstd: {
      auto stat = accumulate(paths, spec);
      if (stat.visit_counts[s] == 0) return std::nullopt;
      auto params = ml_params(stat);
      return (kind == Estimator::ml ? ml_value(params, g) : lstd_value(params, g))[s];
    }
    case Estimator::mvu: {
      auto stat = accumulate(paths, spec);
      return at(mvu_estimate(stat, spec, g), s);
    }
  }
  return std::nullopt;
}

// Deterministic operation count standing in for compute time.
double work_units(Estimator kind, const MrpSpec& spec, std::span<const PathSample> paths) {
  double transitions = 0.0, succ = 0.0;
  std::vector<bool> seen(spec.num_states, false);
  double visited = 0.0;
  std::vector<double> degree(spec.num_states, 0.0);
  for (StateIndex i = 0; i < spec.num_states; ++i)
    for (StateIndex j = 0; j < spec.num_states; ++j) degree[i] += spec.has_edge(i, j) ? 1.0 : 0.0;
  for (const auto& p : paths) {
    transitions += double(p.transitions());
    for (std::size_t t = 0; t + 1 < p.states.size(); ++t) succ += degree[p.states[t]];
    for (StateIndex x : p.states)
      if (!seen[x]) seen[x] = true, visited += 1.0;
  }
  switch (kind) {
    case Estimator::iml:
      return transitions + succ;
    case Estimator::ml:
    case Estimator::lstd:
    case Estimator::mvu:
      return transitions + visited * visited + visited * visited * visited / 3.0;
    default:
      return transitions;
  }
}

std::string sweep_key(const std::string& key, double v) { return key + "=" + num(v); }

}  // namespace

std::string estimator_name(Estimator e) {
  switch (e) {
    case Estimator::mc_first: return "mc-first";
    case Estimator::mc_every: return "mc-every";
    case Estimator::td: return "td";
    case Estimator::td_standard: return "td-standard";
    case Estimator::iml: return "iml";
    case Estimator::ml: return "ml";
    case Estimator::lstd: return "lstd";
    case Estimator::mvu: return "mvu";
  }
  return "?";
}

Estimator parse_estimator(const std::string& name) {
  for (auto e : {Estimator::mc_first, Estimator::mc_every, Estimator::td, Estimator::td_standard,
                 Estimator::iml, Estimator::ml, Estimator::lstd, Estimator::mvu})
    if (estimator_name(e) == name) return e;
  throw ValidationError("unknown estimator \"" + name +
                        "\" (expected mc-first, mc-every, td, td-standard, iml, ml, lstd or mvu)");
}

std::vector<std::string> experiment_names() {
  return {"mse-vs-paths", "mse-vs-startprob", "mse-vs-time", "cyclic-mvu-ml", "contraction"};
}

void LayeredConfig::check() const {
  if (num_layers < 2) throw ValidationError("layered config needs at least 2 layers");
  if (max_states_per_layer < 1) throw ValidationError("layers need at least one state");
  if (start_layers < 1) throw ValidationError("start_layers must be positive");
  if (!(start_prob_target_state >= 0.0 && start_prob_target_state <= 1.0))
    throw ValidationError("start probability of the target must lie in [0, 1]");
  if (!(high_reward_fraction >= 0.01 && high_reward_fraction <= 0.05))
    throw ValidationError("high reward fraction must lie in [0.01, 0.05]");
  if (!(base_reward_low <= base_reward_high)) throw ValidationError("base reward range is empty");
  if (!(discount > 0.0 && discount <= 1.0)) throw ValidationError("discount must lie in (0, 1]");
}

LayeredMrp gen_layered_acyclic(const LayeredConfig& cfg) {
  Rng rng(cfg.seed);
  return gen_layered_acyclic(cfg, rng);
}

LayeredMrp gen_layered_acyclic(const LayeredConfig& cfg, Rng& rng) {
  cfg.check();
  const std::size_t lo = (cfg.max_states_per_layer + 1) / 2;
  const std::size_t span = cfg.max_states_per_layer - lo + 1;
  std::vector<std::vector<StateIndex>> layers(cfg.num_layers + 1);
  layers[0] = {0};
  StateIndex next = 1;
  for (std::size_t l = 1; l <= cfg.num_layers; ++l) {
    const std::size_t size = lo + static_cast<std::size_t>(rng() % span);
    for (std::size_t k = 0; k < size; ++k) layers[l].push_back(next++);
  }
  const StateIndex terminal = next++;

  LayeredMrp out;
  out.spec = MrpSpec::empty(next, cfg.discount);
  out.target = 0;
  out.layer_of.assign(next, 0);
  for (std::size_t l = 0; l <= cfg.num_layers; ++l)
    for (StateIndex x : layers[l]) out.layer_of[x] = l;
  out.layer_of[terminal] = cfg.num_layers + 1;
  auto& spec = out.spec;
  spec.terminal[terminal] = true;

  std::vector<std::pair<StateIndex, StateIndex>> edges;
  for (std::size_t l = 0; l <= cfg.num_layers; ++l)
    for (StateIndex x : layers[l]) {
      if (l == cfg.num_layers) {
        edges.emplace_back(x, terminal);
        spec.transitions[x * next + terminal] = 1.0;
        continue;
      }
      const auto& succ = layers[l + 1];
      std::vector<double> w(succ.size());
      double tot = 0.0;
      for (auto& v : w) tot += (v = dirichlet_weight(rng));
      for (std::size_t k = 0; k < succ.size(); ++k) {
        spec.transitions[x * next + succ[k]] = w[k] / tot;
        edges.emplace_back(x, succ[k]);
      }
    }
  for (const auto& [i, j] : edges)
    spec.rewards[i * next + j] = EdgeReward::deterministic(
        cfg.base_reward_low + (cfg.base_reward_high - cfg.base_reward_low) * rng.uniform());
  std::size_t high = static_cast<std::size_t>(std::llround(cfg.high_reward_fraction * double(edges.size())));
  high = std::clamp<std::size_t>(high, 1, edges.size());
  for (std::size_t k = 0; k < high; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng() % (edges.size() - k));
    std::swap(edges[k], edges[pick]);
    spec.rewards[edges[k].first * next + edges[k].second] =
        EdgeReward::deterministic(cfg.high_reward_value);
  }

  const std::size_t start_layers = std::min(cfg.start_layers, cfg.num_layers);
  for (std::size_t l = 1; l <= start_layers; ++l)
    for (StateIndex x : layers[l]) out.subgraph_starts.push_back(x);
  spec.start_probs[0] = cfg.start_prob_target_state;
  const double rest = (1.0 - cfg.start_prob_target_state) / double(out.subgraph_starts.size());
  for (StateIndex x : out.subgraph_starts) spec.start_probs[x] = rest;
  // Renormalize so the start vector sums to 1 to the last bit that matters.
  double tot = 0.0;
  for (double p : spec.start_probs) tot += p;
  for (double& p : spec.start_probs) p /= tot;
  require_valid(spec);
  return out;
}

ExperimentResult exp_mse_vs_paths(const LayeredConfig& cfg, std::span<const Estimator> estimators,
                                  std::span<const std::size_t> n_grid,
                                  const ReplicateConfig& reps) {
  ExperimentResult res{"mse-vs-paths", {}};
  const LayeredMrp mrp = gen_layered_acyclic(cfg);
  const double truth = exact_value(mrp.spec)[mrp.target];
  const PathSampler sampler(mrp.spec);
  for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
    const std::size_t n = n_grid[gi];
    auto values = run_replicates(reps, estimators.size(), gi, [&](Rng& rng) {
      std::vector<PathSample> paths(n);
      for (auto& p : paths) sampler.sample_into(sampler.sample_start(rng), rng, p);
      std::vector<Estimate> out;
      for (auto e : estimators) out.push_back(run_estimator(e, mrp.spec, paths, mrp.target));
      return out;
    });
    for (std::size_t e = 0; e < estimators.size(); ++e)
      block_rows(res, estimator_name(estimators[e]), sweep_key("n", double(n)), double(n), values[e],
                 reps, truth);
  }
  return res;
}

std::size_t subgraph_starts_at(unsigned x, std::size_t base) {
  if (x == 0) return 0;
  if (x > 40) throw ValidationError("subgraph start exponent too large");
  return base << (x - 1);
}

ExperimentResult exp_mse_vs_startprob(const LayeredConfig& cfg,
                                      std::span<const Estimator> estimators,
                                      std::span<const unsigned> x_grid,
                                      const ReplicateConfig& reps, std::size_t target_starts) {
  ExperimentResult res{"mse-vs-startprob", {}};
  const LayeredMrp mrp = gen_layered_acyclic(cfg);
  const double truth = exact_value(mrp.spec)[mrp.target];
  const PathSampler sampler(mrp.spec);
  for (std::size_t gi = 0; gi < x_grid.size(); ++gi) {
    const std::size_t extra = subgraph_starts_at(x_grid[gi]);
    auto values = run_replicates(reps, estimators.size(), gi, [&](Rng& rng) {
      std::vector<PathSample> paths(target_starts + extra);
      for (std::size_t k = 0; k < paths.size(); ++k) {
        const StateIndex start =
            k < target_starts
                ? mrp.target
                : mrp.subgraph_starts[static_cast<std::size_t>(rng() % mrp.subgraph_starts.size())];
        sampler.sample_into(start, rng, paths[k]);
      }
      shuffle(paths, rng);
      std::vector<Estimate> out;
      for (auto e : estimators) out.push_back(run_estimator(e, mrp.spec, paths, mrp.target));
      return out;
    });
    for (std::size_t e = 0; e < estimators.size(); ++e)
      block_rows(res, estimator_name(estimators[e]), sweep_key("x", x_grid[gi]), x_grid[gi],
                 values[e], reps, truth);
  }
  return res;
}

ExperimentResult exp_mse_vs_time(const LayeredConfig& cfg, std::span<const Estimator> estimators,
                                 const TimeConfig& tcfg, const ReplicateConfig& reps) {
  ExperimentResult res{"mse-vs-time", {}};
  const LayeredMrp mrp = gen_layered_acyclic(cfg);
  const double truth = exact_value(mrp.spec)[mrp.target];
  const PathSampler sampler(mrp.spec);
  const std::size_t timing_reps = std::min<std::size_t>(reps.per_block, 50);
  std::uint64_t cell = 0;
  for (auto est : estimators) {
    const auto& grid = (est == Estimator::ml || est == Estimator::lstd) ? tcfg.ml_n_grid : tcfg.n_grid;
    const Estimator one[] = {est};
    for (std::size_t n : grid) {
      const std::uint64_t this_cell = cell++;
      auto draw = [&](Rng& rng) {
        std::vector<PathSample> paths(n);
        for (auto& p : paths) sampler.sample_into(sampler.sample_start(rng), rng, p);
        return paths;
      };
      auto values = run_replicates(reps, 1, this_cell, [&](Rng& rng) {
        auto paths = draw(rng);
        return std::vector<Estimate>{run_estimator(est, mrp.spec, paths, mrp.target)};
      });

      // Timing on a fixed subset of replicates, median over repetitions.
      std::vector<std::vector<PathSample>> subset;
      for (std::size_t r = 0; r < timing_reps; ++r) {
        Rng rng = Rng::substream(reps.seed, this_cell, r);
        subset.push_back(draw(rng));
      }
      double per_rep = 0.0;
      if (tcfg.clock == ClockKind::work) {
        double units = 0.0;
        for (const auto& paths : subset) units += work_units(est, mrp.spec, paths);
        per_rep = units * 1e-9 / double(subset.size());
      } else {
        std::vector<double> runs;
        for (std::size_t k = 0; k < std::max<std::size_t>(tcfg.repetitions, 1); ++k) {
          const auto t0 = Clock::now();
          double sink = 0.0;
          for (const auto& paths : subset)
            if (auto v = run_estimator(one[0], mrp.spec, paths, mrp.target)) sink += *v;
          const auto t1 = Clock::now();
          volatile double keep = sink;
          (void)keep;
          runs.push_back(std::chrono::duration<double>(t1 - t0).count() / double(subset.size()));
        }
        std::sort(runs.begin(), runs.end());
        per_rep = runs[runs.size() / 2];
      }
      const std::string name = estimator_name(est);
      block_rows(res, name, "n=" + num(double(n)) + ";time=pure", double(n), values[0], reps, truth,
                 per_rep);
      block_rows(res, name, "n=" + num(double(n)) + ";time=synthetic", double(n), values[0], reps,
                 truth, per_rep + tcfg.per_path_cost * double(n));
    }
  }
  return res;
}

TwoStateAnalytic two_state_single_path(double p, double g, RewardConvention reward) {
  const bool cyc = reward == RewardConvention::cycle;
  const auto spec = catalog::two_state_cycle(p, g, cyc ? 1.0 : 0.0, cyc ? 0.0 : 1.0);
  const double v = exact_value(spec)[0];
  TwoStateAnalytic a;
  double w = 1.0 - p, gi = 1.0, geo = 0.0;  // gi = g^i, geo = sum_{t<i} g^t
  double ml_mean = 0.0;
  for (std::uint64_t i = 0; i < 50'000'000; ++i) {
    const double mc = cyc ? geo : gi;
    const double pb = double(i) / double(i + 1);
    const double ml = cyc ? pb / (1.0 - g * pb) : (1.0 - pb) / (1.0 - g * pb);
    a.mvu_mse += w * (mc - v) * (mc - v);
    a.ml_mse += w * (ml - v) * (ml - v);
    ml_mean += w * ml;
    w *= p;
    geo = 1.0 + g * geo;
    gi *= g;
    if (w * (1.0 + double(i) * double(i)) < 1e-20 * (1.0 + a.mvu_mse)) break;
  }
  a.ml_bias = ml_mean - v;
  // Closed forms where they exist.
  if (!cyc) {
    a.mvu_mse = mvu_two_state_mse(p, g);
    const double m = 1.0 / (1.0 - g);
    if (g < 1.0 && p > 0.0 && std::abs(m - std::round(m)) < 1e-12 && std::round(m) >= 2.0)
      a.ml_mse = ml_two_state_mse(p, static_cast<unsigned>(std::round(m)));
  }
  return a;
}

ExperimentResult exp_cyclic_mvu_ml(const CyclicConfig& ccfg, const ReplicateConfig& reps) {
  ExperimentResult res{"cyclic-mvu-ml", {}};
  const bool cyc = ccfg.reward == RewardConvention::cycle;
  if (ccfg.n == 0) throw ValidationError("need at least one path per replicate");

  auto simulate = [&](double p, double g, std::size_t n, std::uint64_t cell) {
    const auto spec = catalog::two_state_cycle(p, g, cyc ? 1.0 : 0.0, cyc ? 0.0 : 1.0);
    require_valid(spec);
    const PathSampler sampler(spec);
    return run_replicates(reps, 2, cell, [&](Rng& rng) {
      SuffStat stat(2);
      PathSample path;
      for (std::size_t k = 0; k < n; ++k) {
        sampler.sample_into(0, rng, path);
        stat.add(path, spec);
      }
      const double ml = ml_value(ml_params(stat), g)[0];
      const double cycle_mvu = mvu_two_state_closed(stat.mu(0, 0), n, g);
      const double mvu = cyc ? cycle_mvu : (g == 1.0 ? 1.0 : 1.0 - (1.0 - g) * cycle_mvu);
      return std::vector<Estimate>{mvu, ml};
    });
  };

  std::uint64_t cell = 0;
  for (double p : ccfg.p_grid)
    for (double g : ccfg.gamma_grid) {
      if (!(p >= 0.0 && p < 1.0)) throw ValidationError("p must lie in [0, 1)");
      const auto spec = catalog::two_state_cycle(p, g, cyc ? 1.0 : 0.0, cyc ? 0.0 : 1.0);
      const double truth = exact_value(spec)[0];
      const std::string sweep = "p=" + num(p) + ";gamma=" + num(g) + ";n=" + num(double(ccfg.n));
      auto values = simulate(p, g, ccfg.n, cell++);
      if (ccfg.n == 1) {
        const auto a = two_state_single_path(p, g, ccfg.reward);
        res.rows.push_back({res.id, "mvu-analytic", sweep, 0, a.mvu_mse, 0.0, a.mvu_mse, 0.0, p});
        res.rows.push_back({res.id, "ml-analytic", sweep, 0, a.ml_mse, a.ml_bias,
                            a.ml_mse - a.ml_bias * a.ml_bias, 0.0, p});
      }
      block_rows(res, "mvu", sweep, p, values[0], reps, truth);
      block_rows(res, "ml", sweep, p, values[1], reps, truth);
    }

  const auto bias_spec =
      catalog::two_state_cycle(ccfg.bias_p, ccfg.bias_gamma, cyc ? 1.0 : 0.0, cyc ? 0.0 : 1.0);
  const double bias_truth = exact_value(bias_spec)[0];
  for (std::size_t n : ccfg.bias_n_grid) {
    auto values = simulate(ccfg.bias_p, ccfg.bias_gamma, n, 1'000'000 + cell++);
    block_rows(res, "ml-bias",
               "p=" + num(ccfg.bias_p) + ";gamma=" + num(ccfg.bias_gamma) + ";n=" + num(double(n)),
               double(n), values[1], reps, bias_truth);
  }
  return res;
}

RandomModel random_model(std::size_t n, Rng& rng) {
  RandomModel m;
  m.n = n;
  m.p.assign(n * n, 0.0);
  m.r.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double tot = 0.0;
    for (std::size_t j = 0; j < n; ++j) tot += (m.p[i * n + j] = dirichlet_weight(rng));
    for (std::size_t j = 0; j < n; ++j) m.p[i * n + j] /= tot;
    for (std::size_t j = 0; j < n; ++j) m.r[i * n + j] = rng.uniform();
  }
  return m;
}

ExperimentResult exp_contraction(const ContractionConfig& ccfg, const ReplicateConfig& reps) {
  ExperimentResult res{"contraction", {}};
  const std::size_t n = ccfg.size;
  if (n == 0) throw ValidationError("contraction experiment needs a positive size");
  std::vector<std::vector<ExperimentRow>> per_matrix(ccfg.matrices);
  parallel_for(ccfg.matrices, reps.threads, [&](std::size_t mi) {
    Rng rng = Rng::substream(reps.seed, 0, mi);
    const auto model = random_model(n, rng);
    const auto params = MlParams::from_model(n, model.p, model.r);
    auto& rows = per_matrix[mi];
    auto emit = [&](const std::string& est, double g, std::size_t k, double d) {
      rows.push_back({res.id, est, "gamma=" + num(g) + ";iter=" + num(double(k)),
                      std::int64_t(mi), d * d, d, 0.0, 0.0, double(k)});
    };
    // Error vectors e = V - V* evolve through the linear part of each operator.
    auto propagate = [&](const std::vector<double>& e, double g) {
      std::vector<double> out(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += model.p[i * n + j] * e[j];
        out[i] = g * acc;
      }
      return out;
    };
    for (std::size_t gi = 0; gi < ccfg.gamma_grid.size(); ++gi) {
      const double g = ccfg.gamma_grid[gi];
      const auto fixed = ml_value(params, g);
      std::vector<double> e0(n);
      for (std::size_t i = 0; i < n; ++i) e0[i] = -fixed[i];
      const double d0 = sup_norm(e0);

      auto eb = e0, et = e0;
      double bound_b = 1.0, bound_t = 1.0;
      for (std::size_t k = 0; k <= ccfg.iterations; ++k) {
        if (k > 0) {
          eb = propagate(eb, g);
          auto te = propagate(et, g);
          const double keep = double(k - 1) / double(k);
          for (std::size_t i = 0; i < n; ++i) et[i] = keep * et[i] + te[i] / double(k);
          bound_b *= g;
          bound_t *= (double(k - 1) + g) / double(k);
        }
        emit("bellman", g, k, sup_norm(eb) / d0);
        emit("bellman-bound", g, k, bound_b);
        emit("td", g, k, sup_norm(et) / d0);
        emit("td-bound", g, k, bound_t);
      }
      for (std::size_t ci = 0; ci < ccfg.c_grid.size(); ++ci) {
        const double c = ccfg.c_grid[ci];
        const auto prior = contraction_prior(n, c);
        std::vector<double> cum(n);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) cum[i] = acc += prior[i];
        Rng srng = Rng::substream(reps.seed, 1 + gi * 1000 + ci, mi);
        auto es = e0;
        const std::string name = "statewise-c=" + num(c);
        for (std::size_t k = 0; k <= ccfg.iterations; ++k) {
          if (k > 0)
            for (std::size_t u = 0; u < n; ++u) {
              const StateIndex s = srng.pick(cum);
              double a = 0.0;
              for (std::size_t j = 0; j < n; ++j) a += model.p[s * n + j] * es[j];
              es[s] = g * a;
            }
          emit(name, g, k, sup_norm(es) / d0);
        }
      }
    }
  });
  for (auto& rows : per_matrix)
    for (auto& r : rows) res.rows.push_back(std::move(r));
  return res;
}

std::string ExperimentResult::csv() const {
  std::ostringstream os;
  os << "experiment,estimator,sweep,block,mse,bias,variance,time_s\n";
  for (const auto& r : rows)
    os << r.experiment << ',' << r.estimator << ',' << r.sweep << ',' << r.block << ','
       << num(r.mse) << ',' << num(r.bias) << ',' << num(r.variance) << ',' << num(r.time_s) << '\n';
  return os.str();
}

std::map<std::string, std::string> ExperimentResult::gnuplot() const {
  struct Cell {
    std::string sweep;
    double x = 0.0;
    std::vector<double> mse, bias, var, time;
  };
  std::vector<std::string> order;
  std::map<std::string, std::vector<Cell>> by_est;
  for (const auto& r : rows) {
    auto& cells = by_est[r.estimator];
    if (cells.empty()) order.push_back(r.estimator);
    if (cells.empty() || cells.back().sweep != r.sweep) cells.push_back({r.sweep, r.x, {}, {}, {}, {}});
    auto& c = cells.back();
    c.mse.push_back(r.mse);
    c.bias.push_back(r.bias);
    c.var.push_back(r.variance);
    c.time.push_back(r.time_s);
  }
  std::map<std::string, std::string> files;
  for (const auto& est : order) {
    std::ostringstream os;
    os << "# x mse_mean mse_std bias_mean variance_mean time_mean sweep\n";
    for (const auto& c : by_est[est]) {
      const auto m = mean_with_error(c.mse);
      const double sd = m.std_error * std::sqrt(double(std::max<std::size_t>(m.count, 1)));
      os << num(c.x) << ' ' << num(m.mean) << ' ' << num(sd) << ' '
         << num(mean_with_error(c.bias).mean) << ' ' << num(mean_with_error(c.var).mean) << ' '
         << num(mean_with_error(c.time).mean) << " \"" << c.sweep << "\"\n";
    }
    files[id + "_" + est + ".dat"] = os.str();
  }
  if (by_est.count("ml") && by_est.count("mvu")) {
    std::ostringstream os;
    os << "# x mse_ml_minus_mse_mvu sweep\n";
    const auto& ml = by_est["ml"];
    const auto& mvu = by_est["mvu"];
    for (std::size_t k = 0; k < std::min(ml.size(), mvu.size()); ++k)
      os << num(ml[k].x) << ' '
         << num(mean_with_error(ml[k].mse).mean - mean_with_error(mvu[k].mse).mean) << " \""
         << ml[k].sweep << "\"\n";
    files[id + "_ml-minus-mvu.dat"] = os.str();
  }
  return files;
}

}  // namespace mrplab
