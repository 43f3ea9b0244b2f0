#pragma once

#include <string>
#include <vector>

#include "bcvar/core.hpp"
#include "bcvar/learner.hpp"
#include "bcvar/lp.hpp"

namespace bcvar {

// Training configuration. Only the parameters relevant to the chosen
// algorithm are consulted: eta drives the exponential-weight updates, beta
// the regularized dual (beta = inf selects the plain LP dual).
struct BoostConfig {
  double alpha = 0.1;
  int rounds = 100;
  double eta = 0.0;  // 0 -> default sqrt(8 log n / T)
  double beta = kInf;
  std::uint64_t seed = 0;
  int warmup_rounds = 0;
  bool lambda_on_train = false;  // solve the final mixture on training losses
  bool classic_adaboost_update = false;  // beta_t = eps/(1-eps) rule, for ablation
  double reg_tol = 1e-5;
};

struct Provenance {
  std::string algorithm;
  double alpha = 0.0;
  double eta = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
};

// The returned randomized classifier F = (base models, mixture). At
// inference a base model is sampled according to the mixture.
struct EnsembleModel {
  std::vector<BaseModel> base_models;
  ModelMixture mixture{VectorXd::Ones(1)};
  Provenance provenance;
  int feature_dim = 0;
  int num_classes = 0;
  std::vector<std::string> label_names;
};

// Per-sample expected 0/1 losses of the ensemble on a dataset.
VectorXd ensemble_expected_losses(const EnsembleModel& model, const Dataset& data);

struct TrainOutcome {
  EnsembleModel ensemble;
  TrainReport report;
  MatrixXd train_losses;  // T x n_train
  MatrixXd val_losses;    // T x n_val (equals train_losses for model-free learners)
  bool has_models = true; // false when the learner emits loss rows only
};

// Regularized LPBoost loop: per-round capped-simplex weights from the LP
// dual (beta = inf) or its entropy-regularized version, final mixture from
// the primal on validation losses (or training losses with lambda_on_train).
TrainOutcome run_reg_lpboost(const Dataset& train, const Dataset& val,
                             Learner& learner, const BoostConfig& cfg);

// Exponential-weight (Hedge) updates on the uncapped simplex during
// training, then the primal LP for the mixture at the requested alpha.
TrainOutcome run_adalpboost(const Dataset& train, const Dataset& val,
                            Learner& learner, const BoostConfig& cfg);

// Same weight updates, uniform mixture.
TrainOutcome run_adaboost_average(const Dataset& train, Learner& learner,
                                  const BoostConfig& cfg);

// One learner call on uniform weights; mixture = (1).
TrainOutcome run_erm(const Dataset& train, Learner& learner);

// Re-solves the mixture at a new alpha on fresh validation losses without
// touching the base models. No learner calls occur.
EnsembleModel remix(const EnsembleModel& model, const Dataset& val, double new_alpha);

// Greedy budget-constrained adversary: returns a loss vector in [0,1]^n
// with <w, l> <= g, loss 1 on samples in increasing-weight order until the
// budget binds (fractional on the boundary sample, ties by lowest index).
VectorXd adversarial_losses(const VectorXd& w, double g);

// Synthetic learner wrapping adversarial_losses; produces loss rows only.
class AdversarialOracle : public Learner {
 public:
  explicit AdversarialOracle(double g);
  RoundOutput next(const Dataset& train, const VectorXd& w) override;

 private:
  double g_;
};

// Schedule hitting a target optimality gap delta:
// beta = max((2/delta) log(1/alpha), 1/2) and
// T = ceil(max((32/delta^2) log(1/alpha), 8/delta)).
struct RateSchedule {
  double beta = 0.0;
  int rounds = 0;
};
RateSchedule rate_schedule(double delta, double alpha);

}  // namespace bcvar
