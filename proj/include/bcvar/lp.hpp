#pragma once

#include <limits>
#include <vector>

#include "bcvar/core.hpp"

namespace bcvar {

// ---------------------------------------------------------------------------
// Generic dense LP solver (bounded-variable revised simplex, two phases,
// Bland's rule fallback). Used both as a backend for the boosting LPs and as
// a brute-force oracle in tests.
// ---------------------------------------------------------------------------

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpBounds {
  double lo = 0.0;
  double hi = kInf;
};

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  VectorXd x;
  double objective = 0.0;
  // Row prices of the optimal basis. For a minimization problem the reduced
  // cost of every variable is c_j - <y, A_j> >= 0 at a lower bound and <= 0
  // at an upper bound; dual_ub holds the prices of the <= rows, dual_eq of
  // the equality rows.
  VectorXd dual_ub;
  VectorXd dual_eq;
  int iterations = 0;
};

// Minimizes c'x subject to A_ub x <= b_ub, A_eq x = b_eq and per-variable
// bounds. Pass 0-row matrices for absent constraint blocks.
LpResult generic_lp(const VectorXd& c, const MatrixXd& A_ub, const VectorXd& b_ub,
                    const MatrixXd& A_eq, const VectorXd& b_eq,
                    const std::vector<LpBounds>& bounds, int max_iter = 50000);

// ---------------------------------------------------------------------------
// The boosting primal/dual pair and its entropy-regularized variant.
// ---------------------------------------------------------------------------

// Optimal (w, gamma) of: min gamma s.t. <w, l^s> >= 1 - gamma for every
// model row s, w on the capped simplex.
struct DualSolution {
  CappedSimplexWeights weights;
  double gamma = 0.0;
  double certificate = 0.0;  // duality gap estimate, >= 0
  ModelMixture mixture;      // primal mixture recovered from the row prices
};

DualSolution solve_dual(const LossMatrix& losses, double alpha);

// Optimal (lambda, rho) of: max rho - (1/(alpha n)) sum_i psi_i with
// psi_i = (rho - 1 + <lambda, l_i>)_+, lambda on the simplex. The mixture
// minimizes the ensemble CVaR over the simplex and rho equals the dual gamma.
struct PrimalSolution {
  ModelMixture mixture;
  double rho = 0.0;
  VectorXd slacks;
};

PrimalSolution solve_primal(const LossMatrix& losses, double alpha);

// Maximizer of <w, scores> + (1/beta) H(w) over {w in Delta_n, w <= cap}:
// water-filling form w_i = min(cap, exp(beta * scores_i) / Z) with Z chosen
// so the weights sum to one. Solved exactly by scanning the capped-set
// partition in sorted order. Requires cap * n >= 1.
VectorXd capped_exponential_weights(const VectorXd& scores, double beta, double cap);

// Minimizer of max_s (1 - <w, l^s>) - (1/beta) H(w) over the capped simplex,
// to additive accuracy tol, via the saddle-point form over the model simplex
// with the inner minimum in closed form (capped_exponential_weights). The
// outer smooth concave maximization is solved by accelerated entropic
// gradient ascent with a certified primal-dual gap.
struct RegularizedDualSolution {
  CappedSimplexWeights weights;
  double objective = 0.0;    // gamma - (1/beta) H(w) at the returned weights
  double inner_gamma = 0.0;  // max_s (1 - <w, l^s>)
  double gap_estimate = 0.0;
  int iterations = 0;
  VectorXd outer_mixture;    // best lambda found; useful as a warm start
};

RegularizedDualSolution solve_regularized_dual(const LossMatrix& losses, double alpha,
                                               double beta, double tol,
                                               int max_iter = 100000,
                                               const VectorXd* warm_mixture = nullptr);

}  // namespace bcvar
