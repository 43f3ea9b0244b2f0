#pragma once

#include <map>
#include <string>
#include <vector>

#include "bcvar/core.hpp"

namespace bcvar {

// One evaluated point of a CVaR-vs-alpha curve.
struct RiskCurvePoint {
  double alpha = 0.0;
  double cvar = 0.0;
  double average_loss = 0.0;
  std::string method;
};

// Exact alpha-CVaR of a loss vector: the maximum of <w, losses> over the
// capped simplex, computed in closed form by sorting. With k = floor(alpha*n),
// the value is (sum of top-k losses + (alpha*n - k) * next-largest) / (alpha*n).
// The fractional formula is the LP maximum and is the definition used
// throughout, also when alpha*n is not an integer.
// Requires alpha*n >= 1 and entries in [0, 1].
double cvar_sorted(const VectorXd& losses, double alpha);

struct CvarDual {
  double risk = 0.0;
  double eta_star = 0.0;  // the ceil(alpha*n)-th largest loss, a minimizer
};

// Dual form: min over eta of (losses - eta)_+ averaged over the worst mass
// plus eta. Agrees with cvar_sorted to 1e-10.
CvarDual cvar_dual(const VectorXd& losses, double alpha);

// Per-sample expected losses of the randomized ensemble: sum_t lambda_t l_i^t.
VectorXd ensemble_losses(const LossMatrix& losses, const ModelMixture& mixture);

// cvar_sorted of the ensemble's per-sample expected losses.
double ensemble_cvar(const LossMatrix& losses, const ModelMixture& mixture, double alpha);

// CVaR of a deterministic model as a function of its average 0/1 loss:
// min{1, avg_loss / alpha}.
double deterministic_identity(double avg_loss, double alpha);

// Evaluates one curve point per requested alpha, using that alpha's mixture.
// Throws if a mixture is missing for a requested alpha.
std::vector<RiskCurvePoint> risk_curve(const LossMatrix& losses,
                                       const std::map<double, ModelMixture>& mixtures,
                                       const std::vector<double>& alphas,
                                       const std::string& method = "");

}  // namespace bcvar
