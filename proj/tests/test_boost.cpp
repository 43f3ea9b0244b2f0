#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bcvar/boost.hpp"
#include "bcvar/cvar.hpp"
#include "bcvar/data.hpp"

using namespace bcvar;

namespace {

// A scripted learner replaying fixed loss rows; exposes the weights it saw.
class ScriptedLearner : public Learner {
 public:
  explicit ScriptedLearner(MatrixXd rows) : rows_(std::move(rows)) {}
  RoundOutput next(const Dataset&, const VectorXd& w) override {
    seen.push_back(w);
    VectorXd l = rows_.row(round_++).transpose();
    return RoundOutput{std::nullopt, std::move(l)};
  }
  std::vector<VectorXd> seen;

 private:
  MatrixXd rows_;
  int round_ = 0;
};

Dataset dummy_dataset(int n) {
  Dataset d;
  d.features = MatrixXd::Zero(n, 1);
  d.labels = VectorXi::Zero(n);
  d.labels[0] = 1;
  d.num_classes = 2;
  return d;
}

Dataset two_group_dataset(int n, std::uint64_t seed) {
  return synth_subpop(n, {0.8, 0.2}, {0.02, 0.1}, 2, seed).data;
}

}  // namespace

TEST_CASE("exponential update reproduces the hand example") {
  // Rows (1,0,0,0) then (0,1,1,1) with eta = 1: the round-2 weights must be
  // proportional to (e, 1, 1, 1).
  MatrixXd rows(2, 4);
  rows << 1, 0, 0, 0,
          0, 1, 1, 1;
  ScriptedLearner learner(rows);
  Dataset d = dummy_dataset(4);
  BoostConfig cfg;
  cfg.alpha = 0.5;
  cfg.rounds = 2;
  cfg.eta = 1.0;
  cfg.lambda_on_train = true;
  TrainOutcome out = run_adalpboost(d, d, learner, cfg);
  REQUIRE(learner.seen.size() == 2);
  CHECK((learner.seen[0] - VectorXd::Constant(4, 0.25)).cwiseAbs().maxCoeff() <=
        1e-15);
  const double e = std::exp(1.0);
  VectorXd want(4);
  want << e / (e + 3), 1 / (e + 3), 1 / (e + 3), 1 / (e + 3);
  CHECK((learner.seen[1] - want).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_FALSE(out.has_models);
}

TEST_CASE("greedy adversary fills low-weight samples first") {
  VectorXd w = VectorXd::Constant(4, 0.25);
  VectorXd l = adversarial_losses(w, 0.5);
  // Ties break by lowest index: samples 0 and 1 take loss 1, budget binds.
  CHECK(l[0] == 1.0);
  CHECK(l[1] == 1.0);
  CHECK(l[2] == 0.0);
  CHECK(l[3] == 0.0);

  CHECK(adversarial_losses(w, 1.0).minCoeff() == 1.0);

  VectorXd skew(3);
  skew << 0.6, 0.3, 0.1;
  VectorXd ls = adversarial_losses(skew, 0.5);
  // Ascending-weight order: index 2 (0.1), index 1 (0.3), then 0.1 budget
  // remains for index 0 -> fractional 0.1/0.6.
  CHECK(ls[2] == 1.0);
  CHECK(ls[1] == 1.0);
  CHECK(ls[0] == doctest::Approx(0.1 / 0.6).epsilon(1e-12));
}

TEST_CASE("adversary respects the budget for random weights") {
  Rng rng = seeded_rng(61);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + static_cast<int>(uniform01(rng) * 30);
    VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = uniform01(rng);
    w /= w.sum();
    const double g = uniform01(rng);
    VectorXd l = adversarial_losses(w, g);
    CHECK(w.dot(l) <= g + 1e-12);
    CHECK(l.minCoeff() >= 0.0);
    CHECK(l.maxCoeff() <= 1.0);
    // Greedy optimality: the budget is exhausted unless everything is 1.
    if (l.minCoeff() < 1.0) CHECK(w.dot(l) >= g - 1e-12);
  }
}

TEST_CASE("no algorithm beats the guarantee floor against the adversary") {
  const double g = 0.3;
  Dataset d = dummy_dataset(24);
  BoostConfig cfg;
  cfg.alpha = 0.25;
  cfg.rounds = 15;
  cfg.lambda_on_train = true;

  AdversarialOracle o1(g);
  TrainOutcome lp = run_reg_lpboost(d, d, o1, cfg);
  CHECK(lp.report.train_cvar >= g - 1e-9);

  AdversarialOracle o2(g);
  cfg.eta = 1.0;
  TrainOutcome ada = run_adalpboost(d, d, o2, cfg);
  CHECK(ada.report.train_cvar >= g - 1e-9);

  AdversarialOracle o3(g);
  TrainOutcome avg = run_adaboost_average(d, o3, cfg);
  CHECK(avg.report.train_cvar >= g - 1e-9);
}

TEST_CASE("uniform-mixture training risk meets the hedge rate bound") {
  for (int n : {16, 64}) {
    for (double g : {0.1, 0.3}) {
      Dataset d = dummy_dataset(n);
      const int T = 120;
      AdversarialOracle oracle(g);
      BoostConfig cfg;
      cfg.alpha = 1.0;
      cfg.rounds = T;  // default eta = sqrt(8 log n / T)
      TrainOutcome out = run_adaboost_average(d, oracle, cfg);
      VectorXd avg = out.train_losses.colwise().mean().transpose();
      const double bound =
          g + std::sqrt(std::log(static_cast<double>(n)) / (2.0 * T));
      CHECK(avg.maxCoeff() <= bound + 1e-12);
    }
  }
}

TEST_CASE("single-round runs reduce to the bare model") {
  Dataset d = two_group_dataset(120, 3);
  StumpLearner learner;
  BoostConfig cfg;
  cfg.alpha = 0.25;
  cfg.rounds = 1;
  cfg.lambda_on_train = true;

  TrainOutcome lp = run_reg_lpboost(d, d, learner, cfg);
  REQUIRE(lp.ensemble.base_models.size() == 1);
  CHECK(lp.ensemble.mixture.values()[0] == doctest::Approx(1.0));
  VectorXd l = zero_one_losses(lp.ensemble.base_models[0], d);
  CHECK(lp.report.train_cvar == doctest::Approx(cvar_sorted(l, 0.25)).epsilon(1e-12));

  TrainOutcome erm = run_erm(d, learner);
  CHECK(erm.ensemble.base_models.size() == 1);
  CHECK(erm.report.train_avg_loss ==
        doctest::Approx(deterministic_identity(erm.report.train_avg_loss, 1.0))
            .epsilon(1e-12));
}

TEST_CASE("mixture chosen on validation dominates ERM and uniform there") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Dataset d = two_group_dataset(300, seed);
    SplitSpec sp;
    sp.seed = seed;
    sp.val_fraction = 0.2;
    auto [train, val] = split(d, sp);
    StumpLearner learner;
    BoostConfig cfg;
    cfg.alpha = 0.2;
    cfg.rounds = 25;
    cfg.eta = 1.0;
    TrainOutcome ada = run_adalpboost(train, val, learner, cfg);

    LossMatrix V(ada.val_losses);
    const double erm_cvar =
        ensemble_cvar(V, ModelMixture::point_mass(cfg.rounds, 0), cfg.alpha);
    const double unif_cvar =
        ensemble_cvar(V, ModelMixture::uniform(cfg.rounds), cfg.alpha);
    CHECK(ada.report.val_cvar <= std::min(erm_cvar, unif_cvar) + 1e-6);
  }
}

TEST_CASE("boosting beats the single stump on separable two-rule data") {
  Dataset d = synth_subpop(200, {0.7, 0.3}, {0.0, 0.0}, 2, 5).data;
  StumpLearner learner;
  BoostConfig cfg;
  cfg.alpha = 0.2;
  cfg.rounds = 20;
  cfg.lambda_on_train = true;
  TrainOutcome lp = run_reg_lpboost(d, d, learner, cfg);
  BaseModel single = train_stump(d, VectorXd::Constant(200, 1.0 / 200));
  const double single_cvar = cvar_sorted(zero_one_losses(single, d), 0.2);
  CHECK(lp.report.train_cvar < single_cvar);
}

TEST_CASE("regularized and exact dual updates land close together") {
  Dataset d = two_group_dataset(150, 9);
  StumpLearner l1, l2;
  BoostConfig cfg;
  cfg.alpha = 0.2;
  cfg.rounds = 15;
  cfg.lambda_on_train = true;
  TrainOutcome exact = run_reg_lpboost(d, d, l1, cfg);
  cfg.beta = 100.0;
  TrainOutcome reg = run_reg_lpboost(d, d, l2, cfg);
  CHECK(std::abs(exact.report.train_cvar - reg.report.train_cvar) <= 0.05);
  // Trace has per-round dual objectives.
  for (const RoundRecord& r : reg.report.rounds) {
    CHECK(std::isfinite(r.dual_objective));
  }
}

TEST_CASE("remix keeps models, changes only the mixture, and is idempotent") {
  Dataset d = two_group_dataset(240, 12);
  SplitSpec sp;
  sp.val_fraction = 0.25;
  auto [train, val] = split(d, sp);
  StumpLearner learner;
  BoostConfig cfg;
  cfg.alpha = 0.2;
  cfg.rounds = 15;
  cfg.eta = 1.0;
  TrainOutcome ada = run_adalpboost(train, val, learner, cfg);

  EnsembleModel again = remix(ada.ensemble, val, 0.2);
  VectorXd l0 = ensemble_expected_losses(ada.ensemble, val);
  VectorXd l1 = ensemble_expected_losses(again, val);
  CHECK(std::abs(cvar_sorted(l0, 0.2) - cvar_sorted(l1, 0.2)) <= 1e-8);

  // Base models are untouched by construction.
  EnsembleModel other = remix(ada.ensemble, val, 0.5);
  REQUIRE(other.base_models.size() == ada.ensemble.base_models.size());
  for (size_t t = 0; t < other.base_models.size(); ++t) {
    CHECK(other.base_models[t].threshold == ada.ensemble.base_models[t].threshold);
    CHECK(other.base_models[t].feature == ada.ensemble.base_models[t].feature);
  }
  CHECK(other.provenance.alpha == 0.5);

  // Best-mixture CVaR shrinks as alpha grows.
  double prev = 2.0;
  for (double a : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    EnsembleModel m = remix(ada.ensemble, val, a);
    const double c = cvar_sorted(ensemble_expected_losses(m, val), a);
    CHECK(c <= prev + 1e-9);
    prev = c;
  }
}

TEST_CASE("remix at alpha 1 minimizes the average validation loss") {
  Rng rng = seeded_rng(71);
  Dataset d = two_group_dataset(150, 14);
  StumpLearner learner;
  BoostConfig cfg;
  cfg.alpha = 0.5;
  cfg.rounds = 2;
  cfg.eta = 1.0;
  TrainOutcome ada = run_adalpboost(d, d, learner, cfg);
  EnsembleModel m = remix(ada.ensemble, d, 1.0);
  const double got = ensemble_expected_losses(m, d).mean();
  LossMatrix V(ada.val_losses);
  double grid_min = kInf;
  for (int g = 0; g <= 1000; ++g) {
    VectorXd lam(2);
    lam << g / 1000.0, 1.0 - g / 1000.0;
    grid_min = std::min(grid_min, ensemble_losses(V, ModelMixture(lam)).mean());
  }
  (void)rng;
  CHECK(got <= grid_min + 1e-4);
}

TEST_CASE("fixed seeds give bit-identical training runs") {
  auto make = [] {
    Dataset d = two_group_dataset(200, 4);
    SplitSpec sp;
    sp.seed = 4;
    auto [train, val] = split(d, sp);
    StumpLearner learner;
    BoostConfig cfg;
    cfg.alpha = 0.25;
    cfg.rounds = 10;
    cfg.eta = 1.0;
    return run_adalpboost(train, val, learner, cfg);
  };
  TrainOutcome a = make();
  TrainOutcome b = make();
  CHECK(a.report.train_cvar == b.report.train_cvar);
  CHECK(a.report.val_cvar == b.report.val_cvar);
  CHECK(a.train_losses == b.train_losses);
  CHECK(a.val_losses == b.val_losses);
  CHECK(a.ensemble.mixture.values() == b.ensemble.mixture.values());
  REQUIRE(a.report.rounds.size() == b.report.rounds.size());
  for (size_t i = 0; i < a.report.rounds.size(); ++i) {
    CHECK(a.report.rounds[i].weighted_loss == b.report.rounds[i].weighted_loss);
  }
}

TEST_CASE("warmup repeats uniform-weight rounds before round one") {
  MatrixXd rows(4, 4);
  rows << 1, 0, 0, 0,
          0, 1, 0, 0,
          0, 0, 1, 0,
          0, 0, 0, 1;
  ScriptedLearner learner(rows);
  Dataset d = dummy_dataset(4);
  BoostConfig cfg;
  cfg.alpha = 1.0;
  cfg.rounds = 2;
  cfg.eta = 1.0;
  cfg.warmup_rounds = 3;
  cfg.lambda_on_train = true;
  TrainOutcome out = run_adalpboost(d, d, learner, cfg);
  // Three warmup calls at uniform weights, last one kept as round 1, then one
  // more training round: four learner calls in total, two retained rows.
  REQUIRE(learner.seen.size() == 4);
  for (int k = 0; k < 3; ++k) {
    CHECK((learner.seen[k] - VectorXd::Constant(4, 0.25)).cwiseAbs().maxCoeff() <=
          1e-15);
  }
  CHECK(out.train_losses.rows() == 2);
  CHECK(out.train_losses.row(0) == rows.row(2));  // last warmup model kept
}

TEST_CASE("classic multiplicative update downweights mastered samples") {
  MatrixXd rows(2, 4);
  rows << 1, 0, 0, 0,
          0, 0, 0, 1;
  ScriptedLearner learner(rows);
  Dataset d = dummy_dataset(4);
  BoostConfig cfg;
  cfg.alpha = 1.0;
  cfg.rounds = 2;
  cfg.eta = 1.0;
  cfg.classic_adaboost_update = true;
  cfg.lambda_on_train = true;
  TrainOutcome out = run_adalpboost(d, d, learner, cfg);
  REQUIRE(learner.seen.size() == 2);
  // eps = 1/4, beta_1 = 1/3: correct samples shrink to 1/3 relative weight.
  VectorXd want(4);
  want << 1.0, 1.0 / 3, 1.0 / 3, 1.0 / 3;
  want /= want.sum();
  CHECK((learner.seen[1] - want).cwiseAbs().maxCoeff() <= 1e-12);
  (void)out;
}

TEST_CASE("config validation") {
  Dataset d = dummy_dataset(10);
  StumpLearner learner;
  BoostConfig cfg;
  cfg.alpha = 0.05;  // alpha * n < 1
  cfg.rounds = 2;
  CHECK_THROWS_WITH_AS(run_adalpboost(d, d, learner, cfg),
                       doctest::Contains("alpha too small"),
                       std::invalid_argument);
  cfg.alpha = 0.5;
  cfg.rounds = 0;
  CHECK_THROWS_AS(run_adalpboost(d, d, learner, cfg), std::invalid_argument);
  CHECK_THROWS_AS(AdversarialOracle(1.5), std::invalid_argument);
}

TEST_CASE("rate schedule matches its closed form") {
  RateSchedule s = rate_schedule(0.3, 0.25);
  CHECK(s.beta == doctest::Approx((2.0 / 0.3) * std::log(4.0)).epsilon(1e-12));
  CHECK(s.rounds == static_cast<int>(std::ceil(32.0 / 0.09 * std::log(4.0))));
  RateSchedule tiny = rate_schedule(1.0, 1.0);  // floors kick in
  CHECK(tiny.beta == 0.5);
  CHECK(tiny.rounds == 8);
}
