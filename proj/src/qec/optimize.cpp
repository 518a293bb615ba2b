#include "qec/optimize.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qec {

double bold_driver_minimize(std::function<double(const qsim::ParamVector&)> f,
                            qsim::ParamVector& params,
                            const QecTrainOptions& opts) {
  double cur = f(params);
  if (std::isnan(cur)) throw std::runtime_error("qec optimization diverged");
  qsim::ParamVector grad(params.size());
  // A collapsed step size traps the plain bold driver in shallow valleys;
  // fresh rounds restart eta from eta0 and stop when a round no longer helps.
  for (int round = 0; round < opts.rounds; ++round) {
    const double round_start = cur;
    double eta = opts.eta0;
    const double stop_abs = opts.stop_rel * std::max(std::abs(cur), 1e-12);
    bool grad_valid = false;
    for (int iter = 0; iter < opts.budget; ++iter) {
      if (!grad_valid) {
        qsim::ParamVector work(params);
        for (std::size_t mu = 0; mu < params.size(); ++mu) {
          work[mu] = params[mu] + opts.epsilon;
          const double fp = f(work);
          work[mu] = params[mu] - opts.epsilon;
          const double fm = f(work);
          work[mu] = params[mu];
          grad[mu] = (fp - fm) / (2.0 * opts.epsilon);
        }
        grad_valid = true;
      }
      qsim::ParamVector trial(params);
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= eta * grad[i];
      const double ft = f(trial);
      if (std::isnan(ft)) throw std::runtime_error("qec optimization diverged");
      if (ft < cur) {
        const double delta = cur - ft;
        params.swap(trial);
        cur = ft;
        eta *= 1.05;
        grad_valid = false;
        if (delta < stop_abs) break;
      } else {
        eta *= 0.5;
        if (eta < 1e-14) break;
      }
    }
    if (round_start - cur <= opts.stop_rel * std::max(std::abs(round_start), 1e-12))
      break;
  }
  return cur;
}

OptimizeResult optimize(const ErrorModel& em, std::uint64_t seed, int restarts,
                        const QecTrainOptions& opts) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  em.validate();
  OptimizeResult best;
  double best_rate = std::numeric_limits<double>::infinity();
  int failures = 0;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * std::uint64_t(r));
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    EncoderDecoder ed;
    ed.u1.resize(63);
    ed.u2.resize(63);
    for (auto& v : ed.u1) v = u(rng);
    for (auto& v : ed.u2) v = u(rng);
    try {
      // stage 1: shape the effective block channel
      const double c1 = bold_driver_minimize(
          [&](const qsim::ParamVector& p) { return cost_c1(p, em); }, ed.u1,
          opts);
      // stage 2: maximize the recovery fidelity over U2 (first layer frozen)
      const Stage2Objective obj(ed.u1, em);
      const double r2 = bold_driver_minimize(
          [&](const qsim::ParamVector& p) { return obj(p); }, ed.u2, opts);
      const double rate = 1.5 * r2;
      best.restart_rates.push_back(rate);
      best.stage_history.push_back({c1, r2});
      if (rate < best_rate) {
        best_rate = rate;
        best.ed = ed;
        best.best_restart = r;
      }
    } catch (const std::exception&) {
      ++failures;
      best.restart_rates.push_back(std::nan(""));
    }
  }
  if (failures == restarts)
    throw std::runtime_error("all qec optimization restarts failed");

  QecReport rep;
  rep.f_q = fidelity_fq(best.ed, em, &rep.overlaps);
  rep.logical_error_rate = 1.5 * (1.0 - rep.f_q);
  rep.shor_rate = shor_baseline(em);
  rep.identity_rate = identity_baseline(em);
  best.report = rep;
  return best;
}

std::vector<CurvePoint> error_rate_curve(const EncoderDecoder& ed,
                                         const ErrorModel& em_template,
                                         const std::vector<double>& totals) {
  std::vector<CurvePoint> out;
  for (double t : totals) {
    const ErrorModel em = em_template.scaled_to(t);
    CurvePoint p;
    p.total_rate = t;
    p.learned = 1.5 * (1.0 - fidelity_fq(ed, em));
    p.shor = shor_baseline(em);
    p.identity = identity_baseline(em);
    out.push_back(p);
  }
  return out;
}

}  // namespace qec
