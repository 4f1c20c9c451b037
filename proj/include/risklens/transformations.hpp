#ifndef RISKLENS_TRANSFORMATIONS_HPP
#define RISKLENS_TRANSFORMATIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risklens/extended_cdf.hpp"
#include "risklens/preferences.hpp"

namespace risklens {

// A lottery-replacement kernel: each alternative x is replaced by a lottery
// with CDF G_x, proper (no -inf mass) and concentrated on X.
struct LotteryKernel {
  std::vector<double> xs;         // sorted, >= 2 alternatives
  std::vector<ExtendedCdf> cdfs;  // one per alternative
};

// validates the kernel invariants; throws std::invalid_argument
void validate_kernel(const LotteryKernel& kernel);

// Outside-option form of a kernel: G_x = lambda*G*1_[x,inf) + (1-lambda)*H,
// with H replaced by H_star at the greatest alternative when present.
struct Decomposition {
  double lambda;                      // in (0, 1]
  ExtendedCdf G;                      // may carry -inf mass; > 0 above inf X
  ExtendedCdf H;                      // proper CDF on X
  std::optional<ExtendedCdf> H_star;  // present iff it genuinely differs from H
  bool h_arbitrary = false;           // lambda == 1 leaves H unidentified
};

struct KernelFailure {
  // one of: fosd_monotonicity, claim1, claim2, claim3, lambda_infeasible
  std::string violated;
  double y = 0.0;   // witness pair (y, z) where applicable
  double z = 0.0;
  double at = 0.0;  // witness evaluation point
  std::string detail;
};

struct DecomposeResult {
  std::optional<Decomposition> decomposition;
  std::optional<KernelFailure> failure;
  bool ok() const { return decomposition.has_value(); }
};

// Builds the kernel from a decomposition. The truncation G*1_[x,inf) lifts
// all mass below x (including the -inf mass) to an atom at x, i.e. it is the
// distribution of max{x, outside draw}.
LotteryKernel synthesize(const Decomposition& d, const std::vector<double>& xs);

// Recovers the decomposition, or reports which structural property fails.
//
// Finite X always contains its greatest alternative, so the default route is
// the greatest-alternative variant: the structure (monotonicity in
// first-order stochastic dominance, agreement of G_x and G_y outside [x, y),
// monotone overlap gap R - L) is verified over X \ {max X}, the top entry is
// matched against H (deviations produce H_star), and the remaining top-mass
// ambiguity is resolved canonically: lambda is the largest feasible value,
// G's level at inf X becomes -inf mass, and H places no mass at the top two
// alternatives unless forced.
DecomposeResult decompose(const LotteryKernel& kernel, double tol = 1e-9);

struct RiskReductionWitness {
  RiskAttitude v;
  SimpleLottery p;
  double x;
  double margin;
};

struct RiskReductionReport {
  bool all_pass;
  int samples_run;
  std::optional<RiskReductionWitness> witness;
};

// Samples random bounded strictly increasing v on X and tests whether
// m(x) = int v dG_x is less risk-averse than v, by cross-ratio and by the
// lottery oracle. A true result means "no violation found in samples_run
// samples", never a proof.
RiskReductionReport check_risk_reduction(const LotteryKernel& kernel, int v_samples,
                                         std::uint64_t seed);

struct Theorem3Report {
  bool lra;      // no risk-reduction violation found by sampling
  bool oo_form;  // decompose succeeded
  bool agree;
};

// Runs both sides of the kernel characterization. If decompose fails while
// sampling found no violation, a directed search driven by the failure
// witness is attempted before declaring disagreement.
Theorem3Report theorem3_agreement(const LotteryKernel& kernel, int v_samples,
                                  std::uint64_t seed);

// Replicates the proof construction: a utility that is steep on the witness
// region A and has slope eps*pi elsewhere (pi(t) = exp(-|t|)), tested on the
// cross-ratio triple from the proof, for eps in {1e-1, ..., 1e-6}.
std::optional<RiskReductionWitness> directed_violation_search(const LotteryKernel& kernel,
                                                              const KernelFailure& failure);

}  // namespace risklens

#endif
