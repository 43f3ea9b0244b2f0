#include "bcvar/boost.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "bcvar/cvar.hpp"

namespace bcvar {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double default_eta(int n, int rounds) {
  return std::sqrt(8.0 * std::log(static_cast<double>(n)) / rounds);
}

void check_config(const Dataset& train, const BoostConfig& cfg) {
  train.validate();
  if (cfg.rounds < 1) throw std::invalid_argument("boost: rounds must be >= 1");
  if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) {
    throw std::invalid_argument("boost: alpha must lie in (0, 1]");
  }
  if (cfg.alpha * train.n() < 1.0 - 1e-9) {
    throw std::invalid_argument("boost: alpha too small for n (alpha*n < 1)");
  }
  if (cfg.warmup_rounds < 0) {
    throw std::invalid_argument("boost: warmup_rounds must be >= 0");
  }
}

// Shared per-round bookkeeping: model/loss-row storage and the trace.
struct LoopState {
  std::vector<BaseModel> models;
  std::vector<VectorXd> loss_rows;
  std::vector<RoundRecord> trace;
  bool has_models = true;

  void record(int round, RoundOutput out, double weighted_loss,
              double dual_objective = std::numeric_limits<double>::quiet_NaN()) {
    if (out.model) {
      models.push_back(std::move(*out.model));
    } else {
      has_models = false;
    }
    loss_rows.push_back(std::move(out.losses));
    trace.push_back(RoundRecord{round, weighted_loss, dual_objective});
  }

  MatrixXd loss_matrix() const {
    const int T = static_cast<int>(loss_rows.size());
    const int n = static_cast<int>(loss_rows[0].size());
    MatrixXd L(T, n);
    for (int t = 0; t < T; ++t) L.row(t) = loss_rows[t].transpose();
    return L;
  }
};

RoundOutput call_learner(Learner& learner, const Dataset& train,
                         const VectorXd& w, int round) {
  RoundOutput out = learner.next(train, w);
  if (out.losses.size() != train.n()) {
    throw SolverError("boost: learner returned a loss row of the wrong length");
  }
  if (out.losses.minCoeff() < -1e-12 || out.losses.maxCoeff() > 1.0 + 1e-12) {
    throw SolverError("boost: learner returned losses outside [0, 1]");
  }
  out.losses = out.losses.cwiseMax(0.0).cwiseMin(1.0);
  (void)round;
  return out;
}

// First round, honoring warmup: extra uniform-weight learner calls whose
// final model becomes the round-1 model.
RoundOutput first_round(Learner& learner, const Dataset& train,
                        const VectorXd& w1, int warmup_rounds) {
  RoundOutput out = call_learner(learner, train, w1, 1);
  for (int k = 1; k < warmup_rounds; ++k) {
    out = call_learner(learner, train, w1, 1);
  }
  return out;
}

MatrixXd validation_losses(const LoopState& state, const MatrixXd& train_L,
                           const Dataset& val) {
  if (!state.has_models) return train_L;  // synthetic learners: no predictions
  const int T = static_cast<int>(state.models.size());
  MatrixXd V(T, val.n());
  for (int t = 0; t < T; ++t) {
    V.row(t) = zero_one_losses(state.models[t], val).transpose();
  }
  return V;
}

EnsembleModel make_ensemble(LoopState& state, ModelMixture mixture,
                            const Dataset& train, Provenance prov) {
  EnsembleModel e;
  e.base_models = std::move(state.models);
  e.mixture = std::move(mixture);
  e.provenance = std::move(prov);
  e.feature_dim = train.d();
  e.num_classes = train.num_classes;
  e.label_names = train.label_names;
  return e;
}

TrainOutcome finish(LoopState& state, ModelMixture mixture, const Dataset& train,
                    const Dataset& val, const BoostConfig& cfg, Provenance prov,
                    Clock::time_point start) {
  MatrixXd train_M = state.loss_matrix();
  MatrixXd val_M = validation_losses(state, train_M, val);
  LossMatrix train_L(train_M);
  LossMatrix val_L(val_M);

  TrainOutcome out;
  out.report.rounds = std::move(state.trace);
  out.report.alpha = cfg.alpha;
  out.report.train_cvar = ensemble_cvar(train_L, mixture, cfg.alpha);
  out.report.train_avg_loss = ensemble_losses(train_L, mixture).mean();
  if (cfg.alpha * val_L.num_samples() >= 1.0 - 1e-9) {
    out.report.val_cvar = ensemble_cvar(val_L, mixture, cfg.alpha);
  } else {
    out.report.val_cvar = std::numeric_limits<double>::quiet_NaN();
  }
  out.report.val_avg_loss = ensemble_losses(val_L, mixture).mean();
  out.has_models = state.has_models;
  out.train_losses = std::move(train_M);
  out.val_losses = std::move(val_M);
  out.ensemble = make_ensemble(state, std::move(mixture), train, std::move(prov));
  out.report.seconds = elapsed_seconds(start);
  return out;
}

// Mixture from the final primal LP, solved on validation losses unless
// lambda_on_train is set.
ModelMixture final_mixture(const LoopState& state, const MatrixXd& train_M,
                           const Dataset& val, const BoostConfig& cfg) {
  MatrixXd basis = cfg.lambda_on_train ? train_M
                                       : validation_losses(state, train_M, val);
  const int n_basis = static_cast<int>(basis.cols());
  if (cfg.alpha * n_basis < 1.0 - 1e-9) {
    throw std::invalid_argument(
        "boost: alpha too small for the mixture-selection sample (alpha*n < 1)");
  }
  return solve_primal(LossMatrix(std::move(basis)), cfg.alpha).mixture;
}

}  // namespace

TrainOutcome run_reg_lpboost(const Dataset& train, const Dataset& val,
                             Learner& learner, const BoostConfig& cfg) {
  check_config(train, cfg);
  val.validate();
  const auto start = Clock::now();
  const int n = train.n();
  const bool regularized = std::isfinite(cfg.beta);
  if (regularized && !(cfg.beta > 0.0)) {
    throw std::invalid_argument("boost: beta must be positive");
  }

  LoopState state;
  VectorXd w = uniform_capped_weights(n, cfg.alpha).values();
  VectorXd warm;  // previous round's outer mixture, padded per round

  for (int t = 1; t <= cfg.rounds; ++t) {
    RoundOutput out = t == 1 ? first_round(learner, train, w, cfg.warmup_rounds)
                             : call_learner(learner, train, w, t);
    const double wl = w.dot(out.losses);
    state.record(t, std::move(out), wl);

    LossMatrix L(state.loss_matrix());
    double dual_obj;
    if (regularized) {
      if (warm.size() == t - 1) {
        VectorXd padded(t);
        padded.head(t - 1) = warm * (1.0 - 1.0 / t);
        padded[t - 1] = 1.0 / t;
        warm = std::move(padded);
      }
      RegularizedDualSolution sol = solve_regularized_dual(
          L, cfg.alpha, cfg.beta, cfg.reg_tol, 100000,
          warm.size() == t ? &warm : nullptr);
      w = sol.weights.values();
      warm = sol.outer_mixture;
      dual_obj = sol.objective;
    } else {
      DualSolution sol = solve_dual(L, cfg.alpha);
      w = sol.weights.values();
      dual_obj = sol.gamma;
    }
    state.trace.back().dual_objective = dual_obj;
  }

  MatrixXd train_M = state.loss_matrix();
  ModelMixture mixture = final_mixture(state, train_M, val, cfg);
  Provenance prov{regularized ? "reglp" : "lp", cfg.alpha, 0.0,
                  regularized ? cfg.beta : kInf, cfg.seed};
  return finish(state, std::move(mixture), train, val, cfg, std::move(prov), start);
}

namespace {

// One Hedge-style training pass shared by the two exponential-weight loops.
LoopState hedge_loop(const Dataset& train, Learner& learner,
                     const BoostConfig& cfg, double eta) {
  const int n = train.n();
  LoopState state;
  VectorXd log_w = VectorXd::Zero(n);  // unnormalized log-weights
  VectorXd cumulative = VectorXd::Zero(n);

  auto weights_from_logs = [&]() {
    VectorXd w = (log_w.array() - log_w.maxCoeff()).exp();
    return VectorXd(w / w.sum());
  };

  for (int t = 1; t <= cfg.rounds; ++t) {
    VectorXd w = weights_from_logs();
    RoundOutput out = t == 1 ? first_round(learner, train, w, cfg.warmup_rounds)
                             : call_learner(learner, train, w, t);
    const double wl = w.dot(out.losses);
    const VectorXd& losses = out.losses;

    if (cfg.classic_adaboost_update) {
      // beta_t = eps/(1-eps); correct samples are multiplied by beta_t.
      const double eps = std::clamp(wl, 1e-12, 1.0 - 1e-12);
      const double log_bt = std::log(eps / (1.0 - eps));
      log_w.array() += log_bt * (1.0 - losses.array());
    } else {
      cumulative += losses;
      log_w = eta * cumulative;
    }
    state.record(t, std::move(out), wl);
  }
  return state;
}

}  // namespace

TrainOutcome run_adalpboost(const Dataset& train, const Dataset& val,
                            Learner& learner, const BoostConfig& cfg) {
  check_config(train, cfg);
  val.validate();
  const auto start = Clock::now();
  const double eta = cfg.eta > 0.0 ? cfg.eta : default_eta(train.n(), cfg.rounds);

  LoopState state = hedge_loop(train, learner, cfg, eta);
  MatrixXd train_M = state.loss_matrix();
  ModelMixture mixture = final_mixture(state, train_M, val, cfg);
  Provenance prov{"adalp", cfg.alpha, eta, kInf, cfg.seed};
  return finish(state, std::move(mixture), train, val, cfg, std::move(prov), start);
}

TrainOutcome run_adaboost_average(const Dataset& train, Learner& learner,
                                  const BoostConfig& cfg) {
  check_config(train, cfg);
  const auto start = Clock::now();
  const double eta = cfg.eta > 0.0 ? cfg.eta : default_eta(train.n(), cfg.rounds);

  LoopState state = hedge_loop(train, learner, cfg, eta);
  ModelMixture mixture = ModelMixture::uniform(cfg.rounds);
  Provenance prov{"adaavg", cfg.alpha, eta, kInf, cfg.seed};
  return finish(state, std::move(mixture), train, train, cfg, std::move(prov), start);
}

TrainOutcome run_erm(const Dataset& train, Learner& learner) {
  train.validate();
  const auto start = Clock::now();
  const int n = train.n();
  BoostConfig cfg;
  cfg.alpha = 1.0;
  cfg.rounds = 1;

  LoopState state;
  VectorXd w = VectorXd::Constant(n, 1.0 / n);
  RoundOutput out = call_learner(learner, train, w, 1);
  const double wl = w.dot(out.losses);
  state.record(1, std::move(out), wl);

  ModelMixture mixture(VectorXd::Ones(1));
  Provenance prov{"erm", 1.0, 0.0, kInf, 0};
  return finish(state, std::move(mixture), train, train, cfg, std::move(prov), start);
}

VectorXd ensemble_expected_losses(const EnsembleModel& model, const Dataset& data) {
  data.validate();
  if (model.base_models.empty()) {
    throw std::invalid_argument("ensemble_expected_losses: no base models");
  }
  if (data.d() < model.feature_dim) {
    throw std::invalid_argument("ensemble_expected_losses: feature dimension mismatch");
  }
  const int T = static_cast<int>(model.base_models.size());
  MatrixXd L(T, data.n());
  for (int t = 0; t < T; ++t) {
    L.row(t) = zero_one_losses(model.base_models[t], data).transpose();
  }
  return ensemble_losses(LossMatrix(std::move(L)), model.mixture);
}

EnsembleModel remix(const EnsembleModel& model, const Dataset& val, double new_alpha) {
  val.validate();
  if (model.base_models.empty()) {
    throw std::invalid_argument("remix: ensemble has no stored base models");
  }
  if (!(new_alpha > 0.0) || new_alpha > 1.0) {
    throw std::invalid_argument("remix: alpha must lie in (0, 1]");
  }
  if (new_alpha * val.n() < 1.0 - 1e-9) {
    throw std::invalid_argument("remix: alpha too small for n (alpha*n < 1)");
  }
  const int T = static_cast<int>(model.base_models.size());
  MatrixXd V(T, val.n());
  for (int t = 0; t < T; ++t) {
    V.row(t) = zero_one_losses(model.base_models[t], val).transpose();
  }
  PrimalSolution p = solve_primal(LossMatrix(std::move(V)), new_alpha);

  EnsembleModel out = model;
  out.mixture = std::move(p.mixture);
  out.provenance.alpha = new_alpha;
  return out;
}

VectorXd adversarial_losses(const VectorXd& w, double g) {
  const int n = static_cast<int>(w.size());
  if (n < 1) throw std::invalid_argument("adversarial_losses: empty weight vector");
  if (!(g >= 0.0) || g > 1.0) {
    throw std::invalid_argument("adversarial_losses: g must lie in [0, 1]");
  }
  if (w.minCoeff() < -1e-12) {
    throw std::invalid_argument("adversarial_losses: negative weight");
  }
  const double s = w.sum();
  if (!(s > 0.0)) throw std::invalid_argument("adversarial_losses: zero weight sum");
  VectorXd wn = w / s;

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return wn[a] < wn[b]; });

  VectorXd l = VectorXd::Zero(n);
  double spent = 0.0;
  for (int i : idx) {
    const double wi = wn[i];
    if (spent + wi <= g + 1e-15) {
      l[i] = 1.0;
      spent += wi;
    } else if (wi > 0.0) {
      l[i] = std::clamp((g - spent) / wi, 0.0, 1.0);
      spent = g;
      break;
    }
  }
  return l;
}

AdversarialOracle::AdversarialOracle(double g) : g_(g) {
  if (!(g >= 0.0) || g > 1.0) {
    throw std::invalid_argument("AdversarialOracle: g must lie in [0, 1]");
  }
}

RoundOutput AdversarialOracle::next(const Dataset& train, const VectorXd& w) {
  (void)train;
  return RoundOutput{std::nullopt, adversarial_losses(w, g_)};
}

RateSchedule rate_schedule(double delta, double alpha) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::invalid_argument("rate_schedule: delta must lie in (0, 1]");
  }
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("rate_schedule: alpha must lie in (0, 1]");
  }
  const double la = std::log(1.0 / alpha);
  RateSchedule s;
  s.beta = std::max(2.0 / delta * la, 0.5);
  s.rounds = static_cast<int>(std::ceil(std::max(32.0 / (delta * delta) * la,
                                                 8.0 / delta)));
  return s;
}

}  // namespace bcvar
