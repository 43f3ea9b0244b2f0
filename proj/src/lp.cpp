#include "bcvar/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bcvar/cvar.hpp"

namespace bcvar {

namespace {

constexpr double kDualTol = 1e-9;    // reduced-cost tolerance
constexpr double kPivotTol = 1e-10;  // minimum pivot magnitude
constexpr double kFeasTol = 1e-8;  // residual check; basis conditioning bound

enum class VarStatus { Basic, AtLower, AtUpper, FreeZero };

// Dense bounded-variable revised simplex with an explicit basis inverse.
// Sized for desk-scale problems (a few thousand nonzeros), refactorized
// periodically to control drift.
class RevisedSimplex {
 public:
  RevisedSimplex(MatrixXd A, VectorXd b, VectorXd lo, VectorXd hi)
      : A_(std::move(A)), b_(std::move(b)), lo_(std::move(lo)), hi_(std::move(hi)) {
    m_ = static_cast<int>(A_.rows());
    ncols_ = static_cast<int>(A_.cols());
    x_ = VectorXd::Zero(ncols_);
    status_.assign(ncols_, VarStatus::AtLower);
    for (int j = 0; j < ncols_; ++j) {
      if (std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
        status_[j] = VarStatus::AtLower;
      } else if (std::isfinite(hi_[j])) {
        x_[j] = hi_[j];
        status_[j] = VarStatus::AtUpper;
      } else {
        x_[j] = 0.0;
        status_[j] = VarStatus::FreeZero;
      }
    }
  }

  // Installs an initial basis; Binv must be the inverse of the basis columns.
  void set_basis(std::vector<int> basis, MatrixXd binv) {
    basis_ = std::move(basis);
    binv_ = std::move(binv);
    for (int i = 0; i < m_; ++i) status_[basis_[i]] = VarStatus::Basic;
  }

  LpStatus run(const VectorXd& c, int max_iter, int* iters_out) {
    int stall = 0;
    bool bland = false;
    double last_obj = objective(c);
    int iter = 0;
    for (; iter < max_iter; ++iter) {
      if (iter > 0 && iter % 64 == 0) refactorize();

      VectorXd y = binv_.transpose() * basic_costs(c);

      // Pricing: pick the entering variable.
      int enter = -1;
      double best = kDualTol;
      int dir = 0;
      for (int j = 0; j < ncols_; ++j) {
        if (status_[j] == VarStatus::Basic) continue;
        double d = c[j] - y.dot(A_.col(j));
        double viol = 0.0;
        int jdir = 0;
        if (status_[j] == VarStatus::AtLower && d < -kDualTol) {
          viol = -d;
          jdir = 1;
        } else if (status_[j] == VarStatus::AtUpper && d > kDualTol) {
          viol = d;
          jdir = -1;
        } else if (status_[j] == VarStatus::FreeZero && std::abs(d) > kDualTol) {
          viol = std::abs(d);
          jdir = d < 0 ? 1 : -1;
        } else {
          continue;
        }
        if (bland) {  // first eligible index
          enter = j;
          dir = jdir;
          break;
        }
        if (viol > best) {
          best = viol;
          enter = j;
          dir = jdir;
        }
      }
      if (enter < 0) {
        refactorize();
        if (iters_out) *iters_out = iter;
        return LpStatus::Optimal;
      }

      VectorXd w = binv_ * A_.col(enter);

      // Ratio test. The entering variable moves by t*dir from its current
      // value; basic variables move by -t*dir*w.
      double t_limit = kInf;
      int leave = -1;       // index into basis_, -1 means bound flip
      int leave_to = 0;     // -1 lower, +1 upper
      if (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter])) {
        t_limit = hi_[enter] - lo_[enter];
      }
      for (int i = 0; i < m_; ++i) {
        const int bj = basis_[i];
        const double delta = dir * w[i];
        double lim = kInf;
        int to = 0;
        if (delta > kPivotTol) {
          if (std::isfinite(lo_[bj])) {
            lim = (x_[bj] - lo_[bj]) / delta;
            to = -1;
          }
        } else if (delta < -kPivotTol) {
          if (std::isfinite(hi_[bj])) {
            lim = (hi_[bj] - x_[bj]) / (-delta);
            to = +1;
          }
        } else {
          continue;
        }
        lim = std::max(lim, 0.0);
        if (lim < t_limit - 1e-12 ||
            (lim < t_limit + 1e-12 && leave >= 0 &&
             basis_[i] < basis_[leave])) {
          t_limit = lim;
          leave = i;
          leave_to = to;
        }
      }

      if (!std::isfinite(t_limit)) {
        if (iters_out) *iters_out = iter;
        return LpStatus::Unbounded;
      }

      const double t = t_limit;
      // Move.
      for (int i = 0; i < m_; ++i) x_[basis_[i]] -= t * dir * w[i];
      x_[enter] += t * dir;

      if (leave < 0) {
        // Bound flip: entering variable traverses to its opposite bound.
        status_[enter] =
            (dir > 0) ? VarStatus::AtUpper : VarStatus::AtLower;
        x_[enter] = (dir > 0) ? hi_[enter] : lo_[enter];
      } else {
        const int out = basis_[leave];
        status_[out] = leave_to < 0 ? VarStatus::AtLower : VarStatus::AtUpper;
        x_[out] = leave_to < 0 ? lo_[out] : hi_[out];
        if (!std::isfinite(x_[out])) x_[out] = 0.0;  // free leaving var
        status_[enter] = VarStatus::Basic;
        basis_[leave] = enter;
        // Product-form update of the basis inverse.
        const double piv = w[leave];
        if (std::abs(piv) < kPivotTol) {
          refactorize();
        } else {
          binv_.row(leave) /= piv;
          for (int i = 0; i < m_; ++i) {
            if (i == leave) continue;
            if (w[i] != 0.0) binv_.row(i) -= w[i] * binv_.row(leave);
          }
        }
      }

      const double obj = objective(c);
      if (obj < last_obj - 1e-12) {
        stall = 0;
        last_obj = obj;
      } else if (++stall > 2 * (m_ + ncols_) + 64) {
        bland = true;  // anti-cycling fallback
      }
    }
    if (iters_out) *iters_out = iter;
    return LpStatus::IterationLimit;
  }

  double objective(const VectorXd& c) const { return c.dot(x_); }

  VectorXd duals(const VectorXd& c) const {
    return binv_.transpose() * basic_costs(c);
  }

  const VectorXd& x() const { return x_; }
  const std::vector<int>& basis() const { return basis_; }
  VarStatus var_status(int j) const { return status_[j]; }
  double& lo(int j) { return lo_[j]; }
  double& hi(int j) { return hi_[j]; }
  void set_value(int j, double v) { x_[j] = v; }
  void set_status(int j, VarStatus s) { status_[j] = s; }

  void refactorize() {
    MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[i]);
    Eigen::PartialPivLU<MatrixXd> lu(B);
    binv_ = lu.inverse();
    if (!binv_.allFinite()) {
      throw SolverError("generic_lp: singular basis during refactorization");
    }
    // Recompute basic values from scratch to kill accumulated drift.
    VectorXd rhs = b_;
    for (int j = 0; j < ncols_; ++j) {
      if (status_[j] != VarStatus::Basic && x_[j] != 0.0) {
        rhs -= A_.col(j) * x_[j];
      }
    }
    VectorXd xb = binv_ * rhs;
    for (int i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
  }

 private:
  VectorXd basic_costs(const VectorXd& c) const {
    VectorXd cb(m_);
    for (int i = 0; i < m_; ++i) cb[i] = c[basis_[i]];
    return cb;
  }

  MatrixXd A_;
  VectorXd b_, lo_, hi_, x_;
  MatrixXd binv_;
  std::vector<int> basis_;
  std::vector<VarStatus> status_;
  int m_ = 0, ncols_ = 0;
};

}  // namespace

LpResult generic_lp(const VectorXd& c, const MatrixXd& A_ub, const VectorXd& b_ub,
                    const MatrixXd& A_eq, const VectorXd& b_eq,
                    const std::vector<LpBounds>& bounds, int max_iter) {
  const int n = static_cast<int>(c.size());
  const int m_ub = static_cast<int>(A_ub.rows());
  const int m_eq = static_cast<int>(A_eq.rows());
  if ((m_ub > 0 && A_ub.cols() != n) || (m_eq > 0 && A_eq.cols() != n) ||
      b_ub.size() != m_ub || b_eq.size() != m_eq ||
      static_cast<int>(bounds.size()) != n) {
    throw std::invalid_argument("generic_lp: dimension mismatch");
  }
  const int m = m_ub + m_eq;
  const int nslack = m_ub;
  const int ncols = n + nslack + m;  // structural + slack + artificial

  MatrixXd A = MatrixXd::Zero(m, ncols);
  VectorXd b(m);
  if (m_ub > 0) {
    A.topLeftCorner(m_ub, n) = A_ub;
    b.head(m_ub) = b_ub;
    A.block(0, n, m_ub, m_ub).setIdentity();
  }
  if (m_eq > 0) {
    A.block(m_ub, 0, m_eq, n) = A_eq;
    b.tail(m_eq) = b_eq;
  }

  VectorXd lo = VectorXd::Zero(ncols);
  VectorXd hi = VectorXd::Constant(ncols, kInf);
  for (int j = 0; j < n; ++j) {
    lo[j] = bounds[j].lo;
    hi[j] = bounds[j].hi;
    if (lo[j] > hi[j]) throw std::invalid_argument("generic_lp: empty variable bound");
  }

  // Phase 1: artificial columns signed to make the start basic-feasible.
  VectorXd resid = b;
  for (int j = 0; j < n + nslack; ++j) {
    double v = std::isfinite(lo[j]) ? lo[j] : (std::isfinite(hi[j]) ? hi[j] : 0.0);
    if (v != 0.0) resid -= A.col(j) * v;
  }
  std::vector<int> basis(m);
  MatrixXd binv = MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int aj = n + nslack + i;
    const double sgn = resid[i] >= 0 ? 1.0 : -1.0;
    A(i, aj) = sgn;
    basis[i] = aj;
    binv(i, i) = sgn;
  }
  RevisedSimplex sx2(A, b, lo, hi);
  for (int i = 0; i < m; ++i) {
    sx2.set_value(n + nslack + i, std::abs(resid[i]));
  }
  sx2.set_basis(basis, binv);

  VectorXd c1 = VectorXd::Zero(ncols);
  c1.tail(m).setOnes();
  LpResult res;
  int it1 = 0;
  LpStatus s1 = sx2.run(c1, max_iter, &it1);
  res.iterations = it1;
  if (s1 == LpStatus::IterationLimit) {
    res.status = LpStatus::IterationLimit;
    return res;
  }
  if (sx2.objective(c1) > 1e-7) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Phase 2: pin artificials at zero and optimize the true objective.
  for (int i = 0; i < m; ++i) {
    const int aj = n + nslack + i;
    sx2.lo(aj) = 0.0;
    sx2.hi(aj) = 0.0;
    if (sx2.var_status(aj) != VarStatus::Basic) {
      sx2.set_status(aj, VarStatus::AtLower);
      sx2.set_value(aj, 0.0);
    }
  }
  VectorXd c2 = VectorXd::Zero(ncols);
  c2.head(n) = c;
  int it2 = 0;
  LpStatus s2 = sx2.run(c2, max_iter, &it2);
  res.iterations += it2;
  if (s2 != LpStatus::Optimal) {
    res.status = s2;
    return res;
  }

  res.status = LpStatus::Optimal;
  res.x = sx2.x().head(n);
  res.objective = c.dot(res.x);
  VectorXd y = sx2.duals(c2);
  res.dual_ub = y.head(m_ub);
  res.dual_eq = y.tail(m_eq);

  // Feasibility residual check on the original rows.
  if (m_ub > 0) {
    VectorXd r = A_ub * res.x - b_ub;
    if (r.maxCoeff() > kFeasTol * (1.0 + b_ub.cwiseAbs().maxCoeff())) {
      throw SolverError("generic_lp: primal feasibility residual above tolerance");
    }
  }
  if (m_eq > 0) {
    VectorXd r = A_eq * res.x - b_eq;
    if (r.cwiseAbs().maxCoeff() > kFeasTol * (1.0 + b_eq.cwiseAbs().maxCoeff())) {
      throw SolverError("generic_lp: equality residual above tolerance");
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Boosting LPs
// ---------------------------------------------------------------------------

namespace {

// Above this sample count the slack-form primal tableau becomes the
// bottleneck; the primal is then recovered from the dual LP's row prices.
constexpr int kPrimalDirectMaxN = 600;

void check_alpha(const LossMatrix& losses, double alpha) {
  const int n = losses.num_samples();
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("lpboost: alpha must lie in (0, 1]");
  }
  if (alpha * n < 1.0 - 1e-9) {
    throw std::invalid_argument("lpboost: alpha too small for n (alpha*n < 1)");
  }
}

}  // namespace

DualSolution solve_dual(const LossMatrix& losses, double alpha) {
  check_alpha(losses, alpha);
  const int T = losses.num_models();
  const int n = losses.num_samples();
  const double cap = 1.0 / (alpha * n);

  if (losses.entries().maxCoeff() <= 0.0) {
    // Perfect models: gamma = 1 and every capped w is optimal.
    return DualSolution{uniform_capped_weights(n, alpha), 1.0, 0.0,
                        ModelMixture::uniform(T)};
  }

  // Variables: w (n, [0, cap]) then gamma ([-1, 2]).
  VectorXd c = VectorXd::Zero(n + 1);
  c[n] = 1.0;
  MatrixXd A_ub(T, n + 1);
  A_ub.leftCols(n) = -losses.entries();
  A_ub.col(n).setConstant(-1.0);
  VectorXd b_ub = VectorXd::Constant(T, -1.0);
  MatrixXd A_eq = MatrixXd::Ones(1, n + 1);
  A_eq(0, n) = 0.0;
  VectorXd b_eq = VectorXd::Ones(1);
  std::vector<LpBounds> bounds(n + 1, LpBounds{0.0, cap});
  bounds[n] = LpBounds{-1.0, 2.0};

  LpResult r = generic_lp(c, A_ub, b_ub, A_eq, b_eq, bounds);
  if (r.status != LpStatus::Optimal) {
    std::ostringstream msg;
    msg << "solve_dual: LP status " << static_cast<int>(r.status)
        << " after " << r.iterations << " iterations";
    throw SolverError(msg.str());
  }
  CappedSimplexWeights w(r.x.head(n), alpha);
  const double gamma = r.x[n];
  // The model-row prices recover the primal mixture (lambda_s = -y_s).
  VectorXd lam = (-r.dual_ub).cwiseMax(0.0);
  ModelMixture mixture = lam.sum() > 0.0 ? ModelMixture(lam)
                                         : ModelMixture::uniform(T);
  const double gap =
      std::abs(gamma - (1.0 - ensemble_cvar(losses, mixture, alpha)));
  return DualSolution{std::move(w), gamma, gap, std::move(mixture)};
}

PrimalSolution solve_primal(const LossMatrix& losses, double alpha) {
  check_alpha(losses, alpha);
  const int T = losses.num_models();
  const int n = losses.num_samples();
  const double inv_an = 1.0 / (alpha * n);

  if (n > kPrimalDirectMaxN) {
    // Strong duality: read the mixture off the dual LP (T+1 rows instead of
    // an n-row slack tableau) and reconstruct rho and the slacks.
    DualSolution d = solve_dual(losses, alpha);
    const double rho = 1.0 - ensemble_cvar(losses, d.mixture, alpha);
    VectorXd mixed = ensemble_losses(losses, d.mixture);
    VectorXd psi = (mixed.array() + (rho - 1.0)).cwiseMax(0.0);
    return PrimalSolution{d.mixture, rho, std::move(psi)};
  }

  // Variables: lambda (T), rho, psi (n). Minimize -rho + inv_an * sum(psi).
  const int nv = T + 1 + n;
  VectorXd c = VectorXd::Zero(nv);
  c[T] = -1.0;
  c.tail(n).setConstant(inv_an);
  // Rows: <lambda, l_i> + rho - psi_i <= 1.
  MatrixXd A_ub = MatrixXd::Zero(n, nv);
  A_ub.leftCols(T) = losses.entries().transpose();
  A_ub.col(T).setOnes();
  A_ub.rightCols(n) = -MatrixXd::Identity(n, n);
  VectorXd b_ub = VectorXd::Ones(n);
  MatrixXd A_eq = MatrixXd::Zero(1, nv);
  A_eq.leftCols(T).setOnes();
  VectorXd b_eq = VectorXd::Ones(1);
  std::vector<LpBounds> bounds(nv);
  for (int j = 0; j < T; ++j) bounds[j] = LpBounds{0.0, kInf};
  bounds[T] = LpBounds{-1.0, 2.0};  // provably brackets an optimum for [0,1] losses
  for (int j = 0; j < n; ++j) bounds[T + 1 + j] = LpBounds{0.0, kInf};

  LpResult r = generic_lp(c, A_ub, b_ub, A_eq, b_eq, bounds);
  if (r.status != LpStatus::Optimal) {
    std::ostringstream msg;
    msg << "solve_primal: LP status " << static_cast<int>(r.status)
        << " after " << r.iterations << " iterations";
    throw SolverError(msg.str());
  }
  ModelMixture mixture(r.x.head(T));
  // The optimal (rho, psi) face is degenerate; canonicalize at the returned
  // mixture so rho equals the optimal objective value (one minus its CVaR).
  const double rho = 1.0 - ensemble_cvar(losses, mixture, alpha);
  VectorXd mixed = ensemble_losses(losses, mixture);
  VectorXd psi = (mixed.array() + (rho - 1.0)).cwiseMax(0.0);
  return PrimalSolution{std::move(mixture), rho, std::move(psi)};
}

VectorXd capped_exponential_weights(const VectorXd& scores, double beta, double cap) {
  const int n = static_cast<int>(scores.size());
  if (n < 1) throw std::invalid_argument("capped_exponential_weights: empty scores");
  if (!(beta > 0.0)) throw std::invalid_argument("capped_exponential_weights: beta must be positive");
  if (cap * n < 1.0 - 1e-12) {
    throw std::invalid_argument("capped_exponential_weights: infeasible cap (cap*n < 1)");
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });

  // Suffix log-sum-exp of beta*scores in sorted order.
  VectorXd e(n);
  for (int j = 0; j < n; ++j) e[j] = beta * scores[idx[j]];
  VectorXd suffix_lse(n + 1);
  suffix_lse[n] = -kInf;
  double run_max = -kInf;
  double run_sum = 0.0;
  for (int j = n - 1; j >= 0; --j) {
    if (e[j] > run_max) {
      run_sum = run_sum * std::exp(run_max - e[j]) + 1.0;
      run_max = e[j];
    } else {
      run_sum += std::exp(e[j] - run_max);
    }
    suffix_lse[j] = run_max + std::log(run_sum);
  }

  const double log_cap = std::log(cap);
  VectorXd w(n);
  for (int k = 0; k <= n; ++k) {
    const double mass = 1.0 - k * cap;  // mass left for the uncapped tail
    if (k == n || mass <= 1e-15) {
      // Everything capped: only possible when cap ~ 1/n.
      for (int j = 0; j < n; ++j) w[idx[j]] = (j < k) ? cap : 0.0;
      break;
    }
    const double log_z = suffix_lse[k] - std::log(mass);
    if (e[k] - log_z <= log_cap + 1e-12) {
      for (int j = 0; j < k; ++j) w[idx[j]] = cap;
      for (int j = k; j < n; ++j) w[idx[j]] = std::exp(e[j] - log_z);
      break;
    }
  }
  // Exact closed form leaves only rounding residue; fold it back in.
  const double sum = w.sum();
  if (std::abs(sum - 1.0) > 1e-12) w /= sum;
  return w.cwiseMin(cap).cwiseMax(0.0);
}

RegularizedDualSolution solve_regularized_dual(const LossMatrix& losses, double alpha,
                                               double beta, double tol, int max_iter,
                                               const VectorXd* warm_mixture) {
  check_alpha(losses, alpha);
  if (!(beta > 0.0)) throw std::invalid_argument("solve_regularized_dual: beta must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_regularized_dual: tol must be positive");
  const int T = losses.num_models();
  const int n = losses.num_samples();
  const double cap = 1.0 / (alpha * n);
  const MatrixXd& L = losses.entries();

  // The entropy term is bounded by log(n)/beta, so once that is below tol the
  // unregularized LP optimum is already a certified tol-solution; the cutting
  // planes would only stall on numerically identical cuts.
  if (std::log(static_cast<double>(n)) / beta <= tol) {
    DualSolution d = solve_dual(losses, alpha);
    const VectorXd& w = d.weights.values();
    RegularizedDualSolution out{d.weights, 0.0, 0.0,
                                std::log(static_cast<double>(n)) / beta, 0,
                                d.mixture.values()};
    out.inner_gamma = 1.0 - (L * w).minCoeff();
    out.objective = out.inner_gamma - entropy(w) / beta;
    return out;
  }

  double best_g = -kInf;
  double best_f = kInf;
  VectorXd w_best;
  VectorXd lam_best;

  // Evaluates the saddle objective at lambda: the inner maximum over w is in
  // closed form, so each call yields a valid lower bound g(lambda), a valid
  // upper bound f(w(lambda)), and the exact gradient of g (Danskin).
  auto evaluate = [&](const VectorXd& lam, VectorXd* grad) {
    VectorXd s = L.transpose() * lam;  // per-sample mixture loss
    VectorXd w = capped_exponential_weights(s, beta, cap);
    const double hw = entropy(w);
    const double g = 1.0 - (w.dot(s) + hw / beta);
    VectorXd lw = L * w;  // <w, l^t> per model
    const double f = 1.0 - lw.minCoeff() - hw / beta;
    if (g > best_g) {
      best_g = g;
      lam_best = lam;
    }
    if (f < best_f) {
      best_f = f;
      w_best = w;
    }
    if (grad) *grad = -lw;  // d g / d lambda
  };

  VectorXd lam0 = VectorXd::Constant(T, 1.0 / T);
  if (warm_mixture && warm_mixture->size() == T && warm_mixture->sum() > 0.0) {
    // Blend with uniform to stay in the simplex interior (the entropic steps
    // below need finite KL divergence to the optimum).
    lam0 = warm_mixture->cwiseMax(0.0);
    lam0 = 0.99 * lam0 / lam0.sum() + VectorXd::Constant(T, 0.01 / T);
  }

  // Accelerated entropic gradient ascent on the smooth concave g. The inner
  // entropy term makes grad g Lipschitz with constant beta in the l1/entropy
  // geometry (loss entries live in [0,1]), so the accelerated rate gives
  // g* - g(x_k) <= 2 beta log T / k^2; every iterate also updates the
  // certified bounds best_f/best_g, which drive the stopping test.
  VectorXd x = lam0;
  VectorXd logz = lam0.array().log();
  VectorXd grad(T);
  evaluate(x, &grad);
  int iter = 1;
  for (; iter < max_iter; ++iter) {
    if (best_f - best_g <= tol) break;
    const double theta = 2.0 / (iter + 1.0);
    VectorXd z = (logz.array() - logz.maxCoeff()).exp();
    z /= z.sum();
    VectorXd y = (1.0 - theta) * x + theta * z;
    evaluate(y, &grad);
    // Mirror step on z with weight k/(2L), then the similar-triangles update.
    logz += (iter / (2.0 * beta)) * grad;
    logz.array() -= logz.maxCoeff();  // keep the log scale bounded
    VectorXd z_next = logz.array().exp();
    z_next /= z_next.sum();
    x = (1.0 - theta) * x + theta * z_next;
    evaluate(x, nullptr);
  }

  const double gap = best_f - best_g;
  if (gap > tol) {
    std::ostringstream msg;
    msg << "solve_regularized_dual: gap " << gap << " above tol " << tol
        << " after " << iter << " iterations";
    throw SolverError(msg.str());
  }

  RegularizedDualSolution out{CappedSimplexWeights(w_best, alpha), 0.0, 0.0, gap,
                              iter, lam_best};
  VectorXd lw = L * w_best;
  out.inner_gamma = 1.0 - lw.minCoeff();
  out.objective = out.inner_gamma - entropy(w_best) / beta;
  return out;
}

}  // namespace bcvar
