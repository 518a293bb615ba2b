#include "qcnn/train.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace qcnn {

using qsim::cx;
using qsim::Matrix;
using qsim::ParamVector;
using qsim::StateVector;

MseEvaluator::MseEvaluator(const TrainableCircuit& circuit,
                           const TrainingSet& data, int threads)
    : circ_(circuit), data_(data), threads_(std::max(1, threads)) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  stage_cache_.resize(data.size());
  rho_cache_.resize(data.size());
}

void MseEvaluator::refresh_caches(const ParamVector& p) {
  segmat_cache_ = circ_.segment_matrices(p);
  const int pre_fc = circ_.num_stages() - 1;
  auto work = [&](std::size_t a) {
    StateVector psi = data_[a].state;
    stage_cache_[a].resize(pre_fc);
    for (int s = 0; s < pre_fc; ++s) {
      circ_.apply_stage(psi, s, segmat_cache_);
      stage_cache_[a][s] = psi;
    }
    rho_cache_[a] = circ_.reduced_final(psi);
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads_; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t a = t; a < data_.size(); a += threads_) work(a);
    });
  for (auto& th : pool) th.join();
  cached_params_ = p;
}

double MseEvaluator::mse(const ParamVector& p) {
  refresh_caches(p);
  ++evals_;
  double acc = 0.0;
  const Matrix rop = circ_.readout_operator(segmat_cache_.back());
  for (std::size_t a = 0; a < data_.size(); ++a) {
    // tr(A rho) as an elementwise sum, O(dim^2)
    const double f = rop.cwiseProduct(rho_cache_[a].transpose()).sum().real();
    const double d = data_[a].label - f;
    acc += d * d;
  }
  return acc / (2.0 * double(data_.size()));
}

double MseEvaluator::mse_from_stage(const ParamVector& p, int first_stage,
                                    const std::vector<Matrix>& segmat) {
  ++evals_;
  const int pre_fc = circ_.num_stages() - 1;
  double acc = 0.0;
  const Matrix rop = circ_.readout_operator(segmat.back());
  if (first_stage >= pre_fc) {
    // only the fully connected unitary changed
    for (std::size_t a = 0; a < data_.size(); ++a) {
      const double f =
          rop.cwiseProduct(rho_cache_[a].transpose()).sum().real();
      const double d = data_[a].label - f;
      acc += d * d;
    }
    return acc / (2.0 * double(data_.size()));
  }
  std::vector<double> per(data_.size());
  auto work = [&](std::size_t a) {
    StateVector psi = first_stage == 0 ? data_[a].state
                                       : stage_cache_[a][first_stage - 1];
    for (int s = first_stage; s < pre_fc; ++s)
      circ_.apply_stage(psi, s, segmat);
    const Matrix rho = circ_.reduced_final(psi);
    const double f = rop.cwiseProduct(rho.transpose()).sum().real();
    const double d = data_[a].label - f;
    per[a] = d * d;
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads_; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t a = t; a < data_.size(); a += threads_) work(a);
    });
  for (auto& th : pool) th.join();
  for (double v : per) acc += v;
  return acc / (2.0 * double(data_.size()));
}

ParamVector MseEvaluator::gradient(const ParamVector& p, double epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (cached_params_ != p) refresh_caches(p);
  ParamVector g(p.size(), 0.0);
  ParamVector work(p);
  for (std::size_t mu = 0; mu < p.size(); ++mu) {
    const int seg = circ_.segment_of_param(static_cast<int>(mu));
    const int stage = circ_.stage_of_param(static_cast<int>(mu));
    const auto& segdef = circ_.segments()[seg];
    auto eval_at = [&](double value) {
      work[mu] = value;
      // rebuild only the touched segment's matrix
      std::vector<Matrix> segmat = segmat_cache_;
      ParamVector c(work.begin() + segdef.offset,
                    work.begin() + segdef.offset + segdef.length);
      segmat[seg] = qsim::unitary_from_params(
          qsim::cached_gell_mann_basis(segdef.dim), c);
      const double v = mse_from_stage(work, stage, segmat);
      work[mu] = p[mu];
      return v;
    };
    const double fp = eval_at(p[mu] + epsilon);
    const double fm = eval_at(p[mu] - epsilon);
    g[mu] = (fp - fm) / (2.0 * epsilon);
  }
  return g;
}

double mse(const TrainableCircuit& circuit, const TrainingSet& data,
           const ParamVector& p) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  double acc = 0.0;
  for (const auto& s : data) {
    const double f = circuit.classify(s.state, p);
    acc += (s.label - f) * (s.label - f);
  }
  return acc / (2.0 * double(data.size()));
}

ParamVector finite_diff_gradient(const TrainableCircuit& circuit,
                                 const TrainingSet& data, const ParamVector& p,
                                 double epsilon) {
  MseEvaluator ev(circuit, data, 1);
  ev.mse(p);
  return ev.gradient(p, epsilon);
}

TrainResult train(const QcnnHyperparams& h, const TrainingSet& data,
                  std::uint64_t seed, const TrainOptions& opts) {
  if (opts.budget < 1) throw std::invalid_argument("budget must be >= 1");
  TrainableCircuit circuit(h);
  MseEvaluator ev(circuit, data, opts.threads);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  ParamVector params(circuit.param_count());
  for (auto& v : params) v = u(rng);

  TrainResult res;
  res.seed = seed;
  double eta = opts.eta0;
  double cur = ev.mse(params);
  if (std::isnan(cur)) throw std::runtime_error("training diverged: loss NaN");
  res.history.push_back({0, cur, eta, true});

  ParamVector grad;
  bool grad_valid = false;
  for (int iter = 1; iter <= opts.budget; ++iter) {
    if (!grad_valid) {
      grad = ev.gradient(params, opts.epsilon);
      grad_valid = true;
    }
    ParamVector trial(params);
    for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= eta * grad[i];
    const double trial_mse = ev.mse(trial);
    if (std::isnan(trial_mse))
      throw std::runtime_error("training diverged: loss NaN");
    if (trial_mse < cur) {
      const double delta = cur - trial_mse;
      params.swap(trial);
      cur = trial_mse;
      eta *= 1.05;
      grad_valid = false;
      res.history.push_back({iter, cur, eta, true});
      if (delta < opts.stop_delta) {
        res.converged = true;
        break;
      }
    } else {
      eta *= 0.5;
      res.history.push_back({iter, cur, eta, false});
      if (eta < 1e-12) {
        res.converged = true;
        break;
      }
    }
    if (opts.verbose && iter % 5 == 0)
      std::fprintf(stderr, "  iter %d mse %.6f eta %.3g\n", iter, cur, eta);
  }
  // leave the evaluator caches at the accepted parameters
  res.params = std::move(params);
  res.final_mse = cur;
  return res;
}

std::string trained_model_to_json(const TrainableCircuit& circuit,
                                  const TrainResult& result) {
  nlohmann::json j;
  j["hyperparams"] = {{"n", circuit.hyperparams().n},
                      {"d", circuit.hyperparams().d},
                      {"N", circuit.hyperparams().N}};
  j["ordering_version"] = qsim::kParamOrderingVersion;
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : circuit.segments()) {
    segs.push_back({{"name", s.name},
                    {"offset", s.offset},
                    {"length", s.length},
                    {"dim", s.dim}});
  }
  j["segments"] = segs;
  j["params"] = result.params;
  j["final_mse"] = result.final_mse;
  j["seed"] = result.seed;
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& r : result.history)
    hist.push_back({{"iter", r.iteration},
                    {"mse", r.mse},
                    {"eta", r.eta},
                    {"accepted", r.accepted}});
  j["history"] = hist;
  return j.dump(2);
}

TrainResult trained_model_from_json(const std::string& text,
                                    QcnnHyperparams* h_out) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("ordering_version").get<int>() != qsim::kParamOrderingVersion)
    throw std::runtime_error("unsupported ordering version");
  if (h_out) {
    h_out->n = j["hyperparams"]["n"].get<int>();
    h_out->d = j["hyperparams"]["d"].get<int>();
    h_out->N = j["hyperparams"]["N"].get<int>();
  }
  TrainResult r;
  r.params = j.at("params").get<ParamVector>();
  r.final_mse = j.value("final_mse", 0.0);
  r.seed = j.value("seed", std::uint64_t{0});
  for (const auto& e : j.value("history", nlohmann::json::array()))
    r.history.push_back({e.value("iter", 0), e.value("mse", 0.0),
                         e.value("eta", 0.0), e.value("accepted", true)});
  return r;
}

}  // namespace qcnn
