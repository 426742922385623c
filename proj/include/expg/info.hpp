#pragma once

#include <cstdint>
#include <utility>

#include "expg/model.hpp"

namespace expg {

enum class KLDirection { G_vs_expG, expG_vs_G };

struct DivergenceResult {
  KLDirection direction = KLDirection::G_vs_expG;
  double closed_form = 0.0;
  double quadrature_value = 0.0;
  double discrepancy = 0.0;  // |closed_form - quadrature_value|
};

// Directed Kullback-Leibler divergence between the base law G and the
// exp-G law. Both closed forms depend on lambda only:
//   D(G || exp-G)  = lambda/2 - log rate_constant(lambda)
//   D(exp-G || G)  = log rate_constant(lambda) - 1 + lambda/(e^lambda - 1)
// The quadrature value integrates the log density ratio under the
// appropriate law over the actual base support.
DivergenceResult kl_divergence(const ExpGModel& m, KLDirection direction);

// Constraint expectations of the maximum-entropy characterization:
//   C1 = E{log g(G^{-1}(U))},  U the transformed variate (quadrature)
//   C2 = E{G(X)} = 1/lambda - 1/(e^lambda - 1)  (closed form; 1/2 at 0)
std::pair<double, double> constraint_expectations(const ExpGModel& m);

// Shannon entropy:
// H = 1 - lambda/(e^lambda-1) - log rate_constant(lambda) - C1.
double shannon_entropy(const ExpGModel& m);

struct MaxEntReport {
  int tested = 0;
  int dominated = 0;  // perturbed entropy <= H(m) + 1e-7
  int skipped = 0;    // constraint solve failed
  double max_excess = 0.0;
  bool ok = false;    // every non-skipped perturbation dominated
};

// Dominance check of the maximum-entropy property: random exponential
// tilts of the density are projected back onto the (C1, C2) constraint
// set by a two-parameter Newton solve; each projected density must have
// entropy no greater than the model's.
MaxEntReport maxent_dominance_check(const ExpGModel& m, int n_tilts = 10,
                                    std::uint64_t seed = 1);

}  // namespace expg
