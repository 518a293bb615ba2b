#pragma once

#include <functional>

#include "qec/shor.hpp"

namespace qec {

struct QecTrainOptions {
  double eta0 = 10.0;
  double epsilon = 1e-4;
  double stop_rel = 1e-5;  // stop when |d cost| < stop_rel * max(|c0|, tiny)
  int budget = 800;        // iterations per round
  int rounds = 6;          // bold-driver rounds, eta reset in between
};

struct OptimizeResult {
  EncoderDecoder ed;
  QecReport report;
  int best_restart = -1;
  std::vector<double> restart_rates;  // per-restart final logical rates
  std::vector<std::pair<double, double>> stage_history;  // (c1, 1-fq) finals
};

// Layerwise optimization: finite-difference bold-driver descent on C1 over
// U1, then on 1 - f_q over U2 with U1 frozen. Best of `restarts` returned.
OptimizeResult optimize(const ErrorModel& em, std::uint64_t seed,
                        int restarts, const QecTrainOptions& opts = {});

// generic scalar bold-driver minimizer used by both stages
double bold_driver_minimize(std::function<double(const qsim::ParamVector&)> f,
                            qsim::ParamVector& params,
                            const QecTrainOptions& opts);

struct CurvePoint {
  double total_rate;
  double learned;
  double shor;
  double identity;
};

// Fixed ratios, swept total input rate (the sum of all p_mu and p_xx);
// the learned code is evaluated with frozen trained parameters.
std::vector<CurvePoint> error_rate_curve(const EncoderDecoder& ed,
                                         const ErrorModel& em_template,
                                         const std::vector<double>& totals);

}  // namespace qec
