#include "bcvar/cvar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bcvar {

namespace {

void check_losses(const VectorXd& losses, double alpha) {
  const int n = static_cast<int>(losses.size());
  if (n < 1) throw std::invalid_argument("cvar: empty loss vector");
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("cvar: alpha must lie in (0, 1]");
  }
  if (alpha * n < 1.0 - 1e-9) {
    throw std::invalid_argument("cvar: alpha too small for n (alpha*n < 1)");
  }
  for (int i = 0; i < n; ++i) {
    if (losses[i] < -1e-12 || losses[i] > 1.0 + 1e-12) {
      std::ostringstream msg;
      msg << "cvar: loss entry " << losses[i] << " at index " << i
          << " outside [0,1]";
      throw std::invalid_argument(msg.str());
    }
  }
}

// Indices sorted by loss descending, ties broken by sample index ascending.
std::vector<int> sorted_desc(const VectorXd& losses) {
  std::vector<int> idx(losses.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return losses[a] > losses[b]; });
  return idx;
}

}  // namespace

double cvar_sorted(const VectorXd& losses, double alpha) {
  check_losses(losses, alpha);
  const int n = static_cast<int>(losses.size());
  const double mass = alpha * n;
  int k = static_cast<int>(std::floor(mass + 1e-12));
  if (k > n) k = n;
  const double frac = std::max(0.0, mass - k);
  const std::vector<int> idx = sorted_desc(losses);
  double top = 0.0;
  for (int j = 0; j < k; ++j) top += losses[idx[j]];
  const double next = (k < n) ? losses[idx[k]] : 0.0;
  return (top + frac * next) / mass;
}

CvarDual cvar_dual(const VectorXd& losses, double alpha) {
  check_losses(losses, alpha);
  const int n = static_cast<int>(losses.size());
  const double mass = alpha * n;
  int j = static_cast<int>(std::ceil(mass - 1e-9));
  j = std::max(1, std::min(n, j));
  const std::vector<int> idx = sorted_desc(losses);
  const double eta = losses[idx[j - 1]];
  double excess = 0.0;
  for (int i = 0; i < n; ++i) excess += std::max(0.0, losses[i] - eta);
  return CvarDual{excess / mass + eta, eta};
}

VectorXd ensemble_losses(const LossMatrix& losses, const ModelMixture& mixture) {
  if (mixture.size() != losses.num_models()) {
    throw std::invalid_argument("ensemble_losses: mixture length must equal model count");
  }
  VectorXd out = losses.entries().transpose() * mixture.values();
  // Mixtures of [0,1] rows stay in [0,1] up to rounding.
  return out.cwiseMax(0.0).cwiseMin(1.0);
}

double ensemble_cvar(const LossMatrix& losses, const ModelMixture& mixture, double alpha) {
  return cvar_sorted(ensemble_losses(losses, mixture), alpha);
}

double deterministic_identity(double avg_loss, double alpha) {
  return std::min(1.0, avg_loss / alpha);
}

std::vector<RiskCurvePoint> risk_curve(const LossMatrix& losses,
                                       const std::map<double, ModelMixture>& mixtures,
                                       const std::vector<double>& alphas,
                                       const std::string& method) {
  std::vector<RiskCurvePoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    auto it = mixtures.find(a);
    if (it == mixtures.end()) {
      std::ostringstream msg;
      msg << "risk_curve: no mixture provided for alpha=" << a;
      throw std::invalid_argument(msg.str());
    }
    const VectorXd mixed = ensemble_losses(losses, it->second);
    RiskCurvePoint p;
    p.alpha = a;
    p.cvar = cvar_sorted(mixed, a);
    p.average_loss = mixed.mean();
    p.method = method;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace bcvar
