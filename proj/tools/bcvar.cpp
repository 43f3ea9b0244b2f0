// Command-line surface: train ensembles, sweep alpha into CVaR curves,
// evaluate saved models, and run the self-check suite.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bcvar/artifact.hpp"
#include "bcvar/boost.hpp"
#include "bcvar/cvar.hpp"
#include "bcvar/data.hpp"
#include "bcvar/learner.hpp"
#include "bcvar/lp.hpp"

namespace {

using namespace bcvar;

constexpr int kExitFlag = 2;
constexpr int kExitData = 3;
constexpr int kExitSolver = 4;
constexpr int kExitCheck = 5;

// ---------------------------------------------------------------------------
// Shared dataset plumbing
// ---------------------------------------------------------------------------

struct DataOptions {
  std::string data_path;
  std::string label = "y";
  bool no_header = false;
  std::string synth;  // e.g. "n=2000,d=5,groups=0.9:0.1,noise=0.0:0.3"
  double val_fraction = 0.1;
  bool reuse_train_as_val = false;
  std::uint64_t seed = 0;
};

void add_data_flags(CLI::App* cmd, DataOptions& opt) {
  cmd->add_option("--data", opt.data_path, "input CSV file");
  cmd->add_option("--label", opt.label,
                  "label column: header name or zero-based index (default y)");
  cmd->add_flag("--no-header", opt.no_header, "CSV has no header row");
  cmd->add_option("--synth", opt.synth,
                  "synthetic data spec, e.g. n=2000,d=5,groups=0.9:0.1,noise=0.0:0.3");
  cmd->add_option("--val-fraction", opt.val_fraction,
                  "fraction of samples held out for validation (default 0.1)");
  cmd->add_flag("--reuse-train-as-val", opt.reuse_train_as_val,
                "use the full training set as the validation set");
  cmd->add_option("--seed", opt.seed, "random seed (default 0)");
}

std::vector<double> parse_list(const std::string& s, char sep, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("cannot parse ") + what + " entry '" +
                                  item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what);
  return out;
}

Dataset resolve_dataset(const DataOptions& opt) {
  if (!opt.synth.empty() && !opt.data_path.empty()) {
    throw std::invalid_argument("pass either --data or --synth, not both");
  }
  if (!opt.synth.empty()) {
    int n = 1000, d = 5;
    std::vector<double> groups{1.0}, noise{0.0};
    std::stringstream ss(opt.synth);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      const size_t eq = kv.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("--synth entries must look like key=value");
      }
      const std::string key = kv.substr(0, eq);
      const std::string val = kv.substr(eq + 1);
      if (key == "n") {
        n = std::stoi(val);
      } else if (key == "d") {
        d = std::stoi(val);
      } else if (key == "groups") {
        groups = parse_list(val, ':', "groups");
      } else if (key == "noise") {
        noise = parse_list(val, ':', "noise");
      } else {
        throw std::invalid_argument("unknown --synth key '" + key + "'");
      }
    }
    return synth_subpop(n, groups, noise, d, opt.seed).data;
  }
  if (opt.data_path.empty()) {
    throw std::invalid_argument("one of --data or --synth is required");
  }
  return load_csv(opt.data_path, opt.label, !opt.no_header);
}

std::pair<Dataset, Dataset> resolve_split(const DataOptions& opt) {
  Dataset all = resolve_dataset(opt);
  SplitSpec spec;
  spec.val_fraction = opt.val_fraction;
  spec.seed = opt.seed;
  spec.reuse_train_as_val = opt.reuse_train_as_val;
  return split(all, spec);
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOptions {
  DataOptions data;
  std::string algo;
  double alpha = 0.1;
  int rounds = 100;
  double eta = 0.0;
  double beta = 0.0;  // 0 -> unregularized dual for reglp
  double delta = 0.0; // > 0 derives beta and rounds from the rate schedule
  std::string out;
  bool lambda_on_train = false;
  int warmup = 0;
  std::string learner = "stump";
  int tree_depth = 3;
  int batch_size = 64;
  int inner_iters = 8;
};

std::unique_ptr<Learner> make_learner(const TrainOptions& opt) {
  if (opt.learner == "stump") return std::make_unique<StumpLearner>();
  if (opt.learner == "tree") return std::make_unique<TreeLearner>(opt.tree_depth);
  if (opt.learner == "resampled-stump" || opt.learner == "resampled-tree") {
    LearnerSpec spec;
    spec.kind = opt.learner == "resampled-tree" ? LearnerSpec::Kind::ResampledTree
                                                : LearnerSpec::Kind::ResampledStump;
    spec.tree_depth = opt.tree_depth;
    spec.batch_size = opt.batch_size;
    spec.inner_iterations = opt.inner_iters;
    spec.seed = opt.data.seed;
    return std::make_unique<ResampledLearner>(spec);
  }
  throw std::invalid_argument("unknown --learner '" + opt.learner + "'");
}

void print_report(const TrainReport& r) {
  for (const RoundRecord& rec : r.rounds) {
    std::printf("round %4d  weighted_loss %.6f", rec.round, rec.weighted_loss);
    if (std::isfinite(rec.dual_objective)) {
      std::printf("  dual_objective %.6f", rec.dual_objective);
    }
    std::printf("\n");
  }
  std::printf("alpha          %.6g\n", r.alpha);
  std::printf("train_cvar     %.10g\n", r.train_cvar);
  std::printf("val_cvar       %.10g\n", r.val_cvar);
  std::printf("train_avg_loss %.10g\n", r.train_avg_loss);
  std::printf("val_avg_loss   %.10g\n", r.val_avg_loss);
  std::printf("seconds        %.3f\n", r.seconds);
}

int cmd_train(const TrainOptions& opt) {
  auto [train, val] = resolve_split(opt.data);
  std::unique_ptr<Learner> learner = make_learner(opt);

  BoostConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.rounds = opt.rounds;
  cfg.eta = opt.eta;
  cfg.seed = opt.data.seed;
  cfg.warmup_rounds = opt.warmup;
  cfg.lambda_on_train = opt.lambda_on_train;
  cfg.beta = opt.beta > 0.0 ? opt.beta : kInf;
  if (opt.delta > 0.0) {
    RateSchedule s = rate_schedule(opt.delta, opt.alpha);
    cfg.beta = s.beta;
    cfg.rounds = s.rounds;
    std::printf("schedule: beta %.6g rounds %d (delta %.3g)\n", cfg.beta,
                cfg.rounds, opt.delta);
  }

  TrainOutcome outcome;
  if (opt.algo == "erm") {
    outcome = run_erm(train, *learner);
  } else if (opt.algo == "adaavg") {
    outcome = run_adaboost_average(train, *learner, cfg);
  } else if (opt.algo == "adalp") {
    outcome = run_adalpboost(train, val, *learner, cfg);
  } else if (opt.algo == "reglp") {
    outcome = run_reg_lpboost(train, val, *learner, cfg);
  } else {
    throw std::invalid_argument("unknown --algo '" + opt.algo + "'");
  }

  print_report(outcome.report);
  if (!opt.out.empty()) {
    RunArtifact artifact{outcome.ensemble, outcome.report, cfg};
    save_artifact(artifact, opt.out);
    std::printf("artifact       %s\n", opt.out.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

struct CurveOptions {
  DataOptions data;
  std::vector<std::string> models;
  std::string alpha_grid = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
  std::string out;
};

bool mixture_is_alpha_tuned(const std::string& algo) {
  return algo == "adalp" || algo == "reglp" || algo == "lp";
}

int cmd_curve(const CurveOptions& opt) {
  const std::vector<double> alphas = parse_list(opt.alpha_grid, ',', "--alpha-grid");
  auto [train, val] = resolve_split(opt.data);
  (void)train;

  std::ostringstream csv;
  csv << "alpha,method,cvar,avg_loss\n";
  char buf[160];
  for (const std::string& path : opt.models) {
    RunArtifact artifact = load_artifact(path);
    const std::string& method = artifact.model.provenance.algorithm;
    for (double a : alphas) {
      EnsembleModel m = mixture_is_alpha_tuned(method)
                            ? remix(artifact.model, val, a)
                            : artifact.model;
      VectorXd losses = ensemble_expected_losses(m, val);
      const double cvar = cvar_sorted(losses, a);
      const double avg = losses.mean();
      std::snprintf(buf, sizeof(buf), "%.10g,%s,%.10g,%.10g\n", a,
                    method.c_str(), cvar, avg);
      csv << buf;
    }
  }

  if (opt.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(opt.out);
    if (!f) throw DataError("curve: cannot open " + opt.out);
    f << csv.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOptions {
  std::string model;
  DataOptions data;
  std::string alpha_grid = "1.0";
  int mc_draws = 0;
};

int cmd_eval(const EvalOptions& opt) {
  RunArtifact artifact = load_artifact(opt.model);
  Dataset test = resolve_dataset(opt.data);
  if (test.d() != artifact.model.feature_dim) {
    throw DataError("eval: dataset has " + std::to_string(test.d()) +
                    " features but the model expects " +
                    std::to_string(artifact.model.feature_dim));
  }
  const std::vector<double> alphas = parse_list(opt.alpha_grid, ',', "--alpha-grid");

  VectorXd losses = ensemble_expected_losses(artifact.model, test);
  std::printf("n              %d\n", test.n());
  std::printf("avg_loss       %.10g\n", losses.mean());
  for (double a : alphas) {
    std::printf("cvar[%.6g]     %.10g\n", a, cvar_sorted(losses, a));
  }

  if (opt.mc_draws > 0) {
    // Randomized-prediction mode: sample a base model per prediction and a
    // uniform test sample per draw; estimates the average loss.
    Rng rng = seeded_rng(opt.data.seed);
    const VectorXd& lam = artifact.model.mixture.values();
    double hits = 0.0;
    for (int k = 0; k < opt.mc_draws; ++k) {
      const int i = std::min(test.n() - 1,
                             static_cast<int>(uniform01(rng) * test.n()));
      const int t = sample_index(lam, rng);
      const int yhat = predict(artifact.model.base_models[t], test.features.row(i));
      if (yhat != test.labels[i]) hits += 1.0;
    }
    std::printf("mc_avg_loss    %.10g  (draws %d)\n", hits / opt.mc_draws,
                opt.mc_draws);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckOptions {
  std::string only;
  bool inject_failure = false;
};

struct CheckRunner {
  const CheckOptions& opt;
  int failures = 0;
  int run_count = 0;

  template <typename F>
  void block(const std::string& name, F body) {
    if (!opt.only.empty() && name.find(opt.only) == std::string::npos) return;
    ++run_count;
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (ok) {
      std::printf("[PASS] %s%s%s\n", name.c_str(), detail.empty() ? "" : ": ",
                  detail.c_str());
    } else {
      std::printf("[FAIL] %s%s%s\n", name.c_str(), detail.empty() ? "" : ": ",
                  detail.c_str());
      ++failures;
    }
  }
};

MatrixXd random_loss_matrix(Rng& rng, int T, int n, bool binary) {
  MatrixXd L(T, n);
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i < n; ++i) {
      L(t, i) = binary ? (uniform01(rng) < 0.5 ? 0.0 : 1.0) : uniform01(rng);
    }
  }
  return L;
}

// LP oracle for the CVaR definition: max <w, l> over the capped simplex.
double cvar_via_lp(const VectorXd& losses, double alpha) {
  const int n = static_cast<int>(losses.size());
  VectorXd c = -losses;
  MatrixXd A_eq = MatrixXd::Ones(1, n);
  VectorXd b_eq = VectorXd::Ones(1);
  std::vector<LpBounds> bounds(n, LpBounds{0.0, 1.0 / (alpha * n)});
  LpResult r = generic_lp(c, MatrixXd(0, n), VectorXd(0), A_eq, b_eq, bounds);
  if (r.status != LpStatus::Optimal) throw SolverError("check: CVaR oracle LP failed");
  return -r.objective;
}

int cmd_check(const CheckOptions& opt) {
  std::printf("note: the dual constraint direction used throughout is "
              "<w, loss_s> >= 1 - gamma (gamma = max_s (1 - <w, loss_s>)); the "
              "entropy-regularized dual keeps this direction and subtracts "
              "entropy(w)/beta from gamma.\n");
  CheckRunner run{opt};
  const double inject = opt.inject_failure ? 1e-3 : 0.0;

  run.block("identity-deterministic-cvar", [&](std::string& detail) {
    Rng rng = seeded_rng(11);
    double worst = 0.0;
    for (int k = 0; k < 300; ++k) {
      const int n = 4 + static_cast<int>(uniform01(rng) * 196);
      VectorXd l(n);
      for (int i = 0; i < n; ++i) l[i] = uniform01(rng) < 0.4 ? 1.0 : 0.0;
      for (double a : {0.05, 0.1, 0.5, 1.0}) {
        if (a * n < 1.0) continue;
        const double lhs = cvar_sorted(l, a) + inject;
        const double rhs = deterministic_identity(l.mean(), a);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
    detail = "max |cvar - min(1, mean/alpha)| = " + std::to_string(worst);
    return worst <= 1e-12;
  });

  run.block("cvar-three-way-agreement", [&](std::string& detail) {
    Rng rng = seeded_rng(12);
    double worst = 0.0;
    for (int k = 0; k < 40; ++k) {
      const int n = 5 + static_cast<int>(uniform01(rng) * 35);
      VectorXd l(n);
      for (int i = 0; i < n; ++i) l[i] = uniform01(rng);
      for (double a : {0.2, 0.5, 1.0}) {
        if (a * n < 1.0) continue;
        const double s = cvar_sorted(l, a) + inject;
        worst = std::max(worst, std::abs(s - cvar_dual(l, a).risk));
        if (k < 10) worst = std::max(worst, std::abs(s - cvar_via_lp(l, a)));
      }
    }
    detail = "max disagreement = " + std::to_string(worst);
    return worst <= 1e-8;
  });

  run.block("randomized-dominance", [&](std::string& detail) {
    Rng rng = seeded_rng(13);
    double worst = -1.0;
    for (int k = 0; k < 200; ++k) {
      const int T = 2 + static_cast<int>(uniform01(rng) * 5);
      const int n = 10 + static_cast<int>(uniform01(rng) * 30);
      LossMatrix L(random_loss_matrix(rng, T, n, true));
      VectorXd lam(T);
      for (int t = 0; t < T; ++t) lam[t] = uniform01(rng) + 1e-3;
      ModelMixture mix(VectorXd(lam / lam.sum()));
      VectorXd mixed = ensemble_losses(L, mix);
      for (double a : {0.1, 0.25, 0.5, 1.0}) {
        if (a * n < 1.0) continue;
        const double gap = deterministic_identity(mixed.mean(), a) -
                           ensemble_cvar(L, mix, a) - inject;
        worst = std::max(worst, -gap);
      }
    }
    detail = "max violation = " + std::to_string(std::max(worst, 0.0));
    return worst <= 1e-12;
  });

  run.block("strong-duality", [&](std::string& detail) {
    Rng rng = seeded_rng(14);
    double worst = 0.0;
    for (int k = 0; k < 40; ++k) {
      const int T = 1 + static_cast<int>(uniform01(rng) * 6);
      const int n = 8 + static_cast<int>(uniform01(rng) * 18);
      LossMatrix L(random_loss_matrix(rng, T, n, k % 2 == 0));
      for (double a : {0.25, 0.5, 1.0}) {
        if (a * n < 1.0) continue;
        const double gamma = solve_dual(L, a).gamma;
        const double rho = solve_primal(L, a).rho + inject;
        worst = std::max(worst, std::abs(gamma - rho));
      }
    }
    detail = "max |rho - gamma| = " + std::to_string(worst);
    return worst <= 1e-6;
  });

  run.block("two-model-grid-oracle", [&](std::string& detail) {
    Rng rng = seeded_rng(15);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      LossMatrix L(random_loss_matrix(rng, 2, 12, false));
      const double a = 0.25;
      PrimalSolution p = solve_primal(L, a);
      double grid_min = kInf;
      for (int g = 0; g <= 1000; ++g) {
        VectorXd lam(2);
        lam << g / 1000.0, 1.0 - g / 1000.0;
        grid_min = std::min(grid_min, ensemble_cvar(L, ModelMixture(lam), a));
      }
      worst = std::max(worst, std::abs((1.0 - p.rho) - grid_min) + inject);
    }
    detail = "max |cvar(lp) - cvar(grid)| = " + std::to_string(worst);
    return worst <= 1e-4;
  });

  run.block("capped-weights-optimality", [&](std::string& detail) {
    Rng rng = seeded_rng(16);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const int n = 5 + static_cast<int>(uniform01(rng) * 20);
      VectorXd s(n);
      for (int i = 0; i < n; ++i) s[i] = uniform01(rng);
      const double beta = 0.5 + uniform01(rng) * 20.0;
      const double cap = std::max(1.5 / n, 0.3);
      VectorXd w = capped_exponential_weights(s, beta, cap);
      auto obj = [&](const VectorXd& v) { return v.dot(s) + entropy(v) / beta; };
      const double base = obj(w) - inject;
      const double eps = 1e-6;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          if (w[i] + eps > cap || w[j] - eps < 0.0) continue;
          VectorXd v = w;
          v[i] += eps;
          v[j] -= eps;
          worst = std::max(worst, obj(v) - base);
        }
      }
    }
    detail = "max first-order improvement = " + std::to_string(worst);
    return worst <= 1e-9;
  });

  run.block("regularized-objective-sandwich", [&](std::string& detail) {
    Rng rng = seeded_rng(17);
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) {
      const int T = 2 + static_cast<int>(uniform01(rng) * 4);
      const int n = 10 + static_cast<int>(uniform01(rng) * 14);
      LossMatrix L(random_loss_matrix(rng, T, n, false));
      const double a = 0.5;
      const double beta = 5.0 + uniform01(rng) * 45.0;
      const double tol = 1e-5;
      const double gamma = solve_dual(L, a).gamma;
      const double obj = solve_regularized_dual(L, a, beta, tol).objective + inject;
      worst = std::max(worst, (gamma - std::log(static_cast<double>(n)) / beta) - obj);
      worst = std::max(worst, obj - (gamma + tol));
    }
    detail = "max sandwich violation = " + std::to_string(worst);
    return worst <= 1e-7;
  });

  run.block("uniform-mixture-rate-bound", [&](std::string& detail) {
    double worst = -kInf;
    for (int n : {16, 64}) {
      for (double g : {0.1, 0.3}) {
        const int Tmax = 100;
        VectorXd cum = VectorXd::Zero(n);
        VectorXd logw = VectorXd::Zero(n);
        const double eta = std::sqrt(8.0 * std::log(static_cast<double>(n)) / Tmax);
        for (int t = 1; t <= Tmax; ++t) {
          VectorXd w = (logw.array() - logw.maxCoeff()).exp();
          w /= w.sum();
          VectorXd l = adversarial_losses(w, g);
          cum += l;
          logw = eta * cum;
          const double bound = g + std::sqrt(std::log(static_cast<double>(n)) / (2.0 * t));
          worst = std::max(worst, cum.maxCoeff() / t - bound + inject);
        }
      }
    }
    detail = "max bound violation = " + std::to_string(std::max(worst, 0.0));
    return worst <= 1e-12;
  });

  run.block("adversarial-floor", [&](std::string& detail) {
    const int n = 32;
    const double g = 0.2, a = 0.25;
    Dataset dummy;
    dummy.features = MatrixXd::Zero(n, 1);
    dummy.labels = VectorXi::Zero(n);
    dummy.labels[0] = 1;
    dummy.num_classes = 2;
    AdversarialOracle oracle(g);
    BoostConfig cfg;
    cfg.alpha = a;
    cfg.rounds = 25;
    cfg.lambda_on_train = true;
    TrainOutcome out = run_reg_lpboost(dummy, dummy, oracle, cfg);
    detail = "train CVaR = " + std::to_string(out.report.train_cvar);
    return out.report.train_cvar + inject >= g - 1e-9;
  });

  run.block("fixed-seed-determinism", [&](std::string& detail) {
    auto make = [&]() {
      SynthResult s = synth_subpop(160, {0.8, 0.2}, {0.05, 0.2}, 3, 7);
      SplitSpec sp;
      sp.seed = 7;
      auto [tr, va] = split(s.data, sp);
      StumpLearner learner;
      BoostConfig cfg;
      cfg.alpha = 0.25;
      cfg.rounds = 12;
      cfg.eta = 1.0;
      return run_adalpboost(tr, va, learner, cfg);
    };
    TrainOutcome a = make();
    TrainOutcome b = make();
    bool same = a.report.train_cvar == b.report.train_cvar &&
                a.report.val_cvar == b.report.val_cvar &&
                a.ensemble.mixture.values() == b.ensemble.mixture.values() &&
                a.train_losses == b.train_losses;
    if (opt.inject_failure) same = false;
    detail = same ? "two identical runs" : "reports differ";
    return same;
  });

  if (run.run_count == 0) {
    std::printf("no check matches --only '%s'\n", opt.only.c_str());
    return kExitCheck;
  }
  std::printf("%d/%d checks passed\n", run.run_count - run.failures, run.run_count);
  return run.failures == 0 ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boosted CVaR classification toolkit"};
  app.require_subcommand(1);

  TrainOptions train_opt;
  CLI::App* train = app.add_subcommand("train", "train an ensemble");
  train->add_option("--algo", train_opt.algo, "erm | adaavg | adalp | reglp")
      ->required();
  train->add_option("--alpha", train_opt.alpha, "tail mass (default 0.1)");
  train->add_option("--rounds", train_opt.rounds, "boosting rounds (default 100)");
  train->add_option("--eta", train_opt.eta,
                    "step size; 0 selects sqrt(8 log n / T)");
  train->add_option("--beta", train_opt.beta,
                    "entropy regularization; 0 selects the exact LP dual");
  train->add_option("--delta", train_opt.delta,
                    "derive beta and rounds from the convergence schedule");
  train->add_option("--out", train_opt.out, "artifact output path");
  train->add_flag("--lambda-on-train", train_opt.lambda_on_train,
                  "solve the final mixture on training losses");
  train->add_option("--warmup", train_opt.warmup,
                    "uniform-weight warmup iterations before round 1");
  train->add_option("--learner", train_opt.learner,
                    "stump | tree | resampled-stump | resampled-tree");
  train->add_option("--tree-depth", train_opt.tree_depth, "tree depth (default 3)");
  train->add_option("--batch-size", train_opt.batch_size,
                    "resampling batch size (default 64)");
  train->add_option("--inner-iters", train_opt.inner_iters,
                    "resampling batches per round (default 8)");
  add_data_flags(train, train_opt.data);

  CurveOptions curve_opt;
  CLI::App* curve = app.add_subcommand("curve", "emit a CVaR-vs-alpha CSV");
  curve->add_option("--model", curve_opt.models, "artifact path (repeatable)")
      ->required();
  curve->add_option("--alpha-grid", curve_opt.alpha_grid,
                    "comma-separated alpha values");
  curve->add_option("--out", curve_opt.out, "CSV output path (default stdout)");
  add_data_flags(curve, curve_opt.data);

  EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand("eval", "evaluate an artifact on a dataset");
  eval->add_option("--model", eval_opt.model, "artifact path")->required();
  eval->add_option("--alpha-grid", eval_opt.alpha_grid,
                   "comma-separated alpha values (default 1.0)");
  eval->add_option("--mc-draws", eval_opt.mc_draws,
                   "Monte-Carlo randomized-prediction draws (default off)");
  add_data_flags(eval, eval_opt.data);

  CheckOptions check_opt;
  CLI::App* check = app.add_subcommand("check", "run the self-check suite");
  check->add_option("--only", check_opt.only, "run only checks whose name contains this");
  check->add_flag("--inject-failure", check_opt.inject_failure,
                  "negative control: perturb the checks so they fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFlag;
  }

  try {
    if (*train) return cmd_train(train_opt);
    if (*curve) return cmd_curve(curve_opt);
    if (*eval) return cmd_eval(eval_opt);
    if (*check) return cmd_check(check_opt);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFlag;
  }
  return 0;
}
