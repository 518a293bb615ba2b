#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qec/optimize.hpp"

using namespace qec;
using qsim::cx;
using qsim::ParamVector;
using qsim::StateVector;

namespace {
EncoderDecoder random_codec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 2 * M_PI);
  EncoderDecoder ed;
  ed.u1.resize(63);
  ed.u2.resize(63);
  for (auto& v : ed.u1) v = u(rng);
  for (auto& v : ed.u2) v = u(rng);
  return ed;
}
}  // namespace

TEST_CASE("error model validation") {
  ErrorModel em;
  em.px = 0.5;
  em.py = 0.6;
  CHECK_THROWS(em.validate());
  em = ErrorModel{};
  em.px = -0.1;
  CHECK_THROWS(em.validate());
  ErrorModel ok{1e-3, 2e-3, 3e-3, 4e-4};
  ok.validate();
  CHECK(ok.total_rate() == doctest::Approx(6.4e-3));
  const ErrorModel scaled = ok.scaled_to(1.28e-2);
  CHECK(scaled.px == doctest::Approx(2e-3));
  CHECK(scaled.pxx == doctest::Approx(8e-4));
}

TEST_CASE("apply_noise basics") {
  // zero model leaves rho unchanged
  std::mt19937_64 rng(1);
  StateVector psi = StateVector::random(9, rng);
  qsim::DensityMatrix rho = qsim::DensityMatrix::from_pure(psi);
  qsim::DensityMatrix copy = rho;
  apply_noise(rho, ErrorModel{});
  double diff = 0;
  for (std::size_t i = 0; i < rho.flat().size(); ++i)
    diff = std::max(diff, std::abs(rho.flat()[i] - copy.flat()[i]));
  CHECK(diff < 1e-14);

  // trace preserved at random parameters
  ErrorModel em{3e-2, 1e-2, 2e-2, 5e-3};
  apply_noise(rho, em);
  CHECK(std::abs(rho.trace_real() - 1.0) < 1e-12);
  CHECK(rho.hermiticity_defect() < 1e-12);
}

TEST_CASE("encode / decode inverse at zero noise") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 3; ++rep) {
    const EncoderDecoder ed = random_codec(rng);
    for (const auto& psi : pauli_eigenstates()) {
      const StateVector enc = encode(psi, ed);
      CHECK(enc.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
      const auto out = decode(qsim::DensityMatrix::from_pure(enc), ed);
      CHECK(out.overlap(psi) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(out.trace_real() - 1.0) < 1e-12);
    }
  }
  // identity params put the logical qubit at a fixed physical position
  EncoderDecoder id;
  id.u1.assign(63, 0.0);
  id.u2.assign(63, 0.0);
  StateVector one(1);
  one.amps() = {cx{0.0}, cx{1.0}};
  const StateVector enc = encode(one, id);
  CHECK(std::abs(enc[std::size_t{1} << 4] - cx{1.0}) < 1e-12);
}

TEST_CASE("fidelity against a logical pauli channel") {
  // identity encoders with noise: only qubit 4 touches the logical state, so
  // decode.noise.encode is N1 itself up to the spectator qubits
  EncoderDecoder id;
  id.u1.assign(63, 0.0);
  id.u2.assign(63, 0.0);
  ErrorModel em{4e-3, 1.5e-3, 2.5e-3, 0.0};
  const double fq = fidelity_fq(id, em);
  const double expect = 1.0 - 2.0 * (em.px + em.py + em.pz) / 3.0;
  CHECK(fq == doctest::Approx(expect).epsilon(1e-12));
  // 1.5 (1 - f_q) recovers the total logical flip probability
  CHECK(1.5 * (1.0 - fq) ==
        doctest::Approx(em.px + em.py + em.pz).epsilon(1e-12));
}

TEST_CASE("fast factorized fidelity matches the dense pipeline") {
  std::mt19937_64 rng(3);
  ErrorModel em{5.8e-3, 2e-3, 2e-3, 2e-4};
  for (int rep = 0; rep < 3; ++rep) {
    const EncoderDecoder ed = random_codec(rng);
    const double dense = fidelity_fq(ed, em);
    const double fast = fidelity_fq_fast(ed, em);
    CHECK(std::abs(dense - fast) < 1e-12);
  }
}

TEST_CASE("f_q antipode symmetry on pauli channels") {
  EncoderDecoder id;
  id.u1.assign(63, 0.0);
  id.u2.assign(63, 0.0);
  ErrorModel em{2e-3, 7e-3, 1e-3, 0.0};
  std::vector<double> ov;
  fidelity_fq(id, em, &ov);
  REQUIRE(ov.size() == 6);
  CHECK(ov[0] == doctest::Approx(ov[1]).epsilon(1e-12));  // +-x
  CHECK(ov[2] == doctest::Approx(ov[3]).epsilon(1e-12));  // +-y
  CHECK(ov[4] == doctest::Approx(ov[5]).epsilon(1e-12));  // +-z
}

TEST_CASE("effective first-layer channel and C1") {
  // zero noise: identity channel, C1 = 0
  ParamVector u1(63, 0.7);
  const auto ch = effective_first_layer_channel(u1, ErrorModel{}, 0);
  const auto m = qsim::process_tomography_1q(ch);
  CHECK((m.M - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(m.c.norm() < 1e-10);
  CHECK(cost_c1(u1, ErrorModel{}) == doctest::Approx(0.0).epsilon(1e-12));

  // identity U1: the bare middle-qubit Pauli channel
  ParamVector id(63, 0.0);
  ErrorModel em{0.01, 0.004, 0.002, 0.0};
  const auto ch2 = effective_first_layer_channel(id, em, 1);
  const auto m2 = qsim::process_tomography_1q(ch2);
  CHECK(m2.M(0, 0) == doctest::Approx(1 - 2 * (em.py + em.pz)).epsilon(1e-10));
  CHECK(m2.M(1, 1) == doctest::Approx(1 - 2 * (em.px + em.pz)).epsilon(1e-10));
  CHECK(m2.M(2, 2) == doctest::Approx(1 - 2 * (em.px + em.py)).epsilon(1e-10));

  // pure x flips with identity U1: C1 = p^2
  ErrorModel xonly{0.03, 0.0, 0.0, 0.0};
  CHECK(cost_c1(id, xonly) == doctest::Approx(0.03 * 0.03).epsilon(1e-9));

  // contractivity: singular values of the composite map stay <= 1
  std::mt19937_64 rng(5);
  const EncoderDecoder ed = random_codec(rng);
  ErrorModel em3{5e-3, 3e-3, 1e-3, 1e-3};
  auto comp = [&](const qsim::DensityMatrix& r1) {
    qsim::DensityMatrix rho = qsim::DensityMatrix::from_pure(encode(
        [&] {
          StateVector s(1);
          s.amps() = {r1.at(0, 0), cx{0}};
          return s;
        }(),
        ed));
    (void)rho;
    return r1;
  };
  (void)comp;
  // direct check through tomography of decode . noise . encode
  auto channel = [&](const qsim::DensityMatrix& rin) {
    // build the encoded state of a mixed input by linearity over a basis
    qsim::DensityMatrix acc(9);
    for (auto& v : acc.flat()) v = 0.0;
    // rin = sum over basis outer products; encode is linear on the state,
    // use the 2x2 decomposition rin = sum_ij rin_ij |i><j|
    std::vector<StateVector> basis;
    StateVector b0(1), b1(1);
    b1.amps() = {cx{0}, cx{1}};
    basis.push_back(b0);
    basis.push_back(b1);
    std::vector<StateVector> enc;
    for (const auto& b : basis) enc.push_back(encode(b, ed));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const cx w = rin.at(i, j);
        if (w == cx{0.0}) continue;
        for (std::size_t r = 0; r < acc.dim(); ++r)
          for (std::size_t c = 0; c < acc.dim(); ++c)
            acc.at(r, c) += w * enc[i][r] * std::conj(enc[j][c]);
      }
    apply_noise(acc, em3);
    return decode(acc, ed);
  };
  const auto mc = qsim::process_tomography_1q(channel);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(mc.M);
  CHECK(svd.singularValues()(0) <= 1.0 + 1e-9);
}

TEST_CASE("shor baseline") {
  // codeword structure: |0_L> = prod blocks (|000> + |111|)/sqrt(2)
  StateVector zero(1);
  const StateVector c0 = shor_encode(zero);
  // amplitude at |000000000| and within-block |111| patterns
  const double a = std::pow(2.0, -1.5);
  CHECK(std::abs(c0[0] - cx{a}) < 1e-12);
  CHECK(std::abs(c0[0b000000111] - cx{a}) < 1e-12);
  CHECK(std::abs(c0[0b111111111] - cx{a}) < 1e-12);
  CHECK(std::abs(c0[0b000000011]) < 1e-12);

  CHECK(shor_baseline(ErrorModel{}) == doctest::Approx(0.0).epsilon(1e-12));

  // all 27 single-qubit Pauli errors are corrected exactly
  const char* names[3] = {"X", "Y", "Z"};
  (void)names;
  for (int q = 0; q < 9; ++q)
    for (int p = 0; p < 3; ++p) {
      double worst = 0.0;
      for (const auto& psi : pauli_eigenstates()) {
        StateVector enc = shor_encode(psi);
        const std::uint64_t bit = std::uint64_t{1} << q;
        enc.apply_pauli(p == 0 || p == 1 ? bit : 0,
                        p == 1 || p == 2 ? bit : 0, 1.0);
        const auto out = shor_decode(qsim::DensityMatrix::from_pure(enc));
        worst = std::max(worst, std::abs(1.0 - out.overlap(psi)));
      }
      CHECK(worst < 1e-10);
    }

  // identity baseline: exact formula and simulated pipeline agree
  ErrorModel em{1e-3, 0, 0, 0};
  CHECK(identity_baseline(em) == doctest::Approx(1e-3));
  CHECK(identity_baseline_simulated(em) ==
        doctest::Approx(identity_baseline(em)).epsilon(1e-12));
  ErrorModel em2{2e-3, 3e-3, 4e-3, 0};
  CHECK(identity_baseline_simulated(em2) ==
        doctest::Approx(identity_baseline(em2)).epsilon(1e-12));
}

TEST_CASE("optimize smoke test") {
  ErrorModel em{2e-3, 2e-3, 2e-3, 0.0};
  QecTrainOptions opts;
  opts.budget = 30;
  const auto res = optimize(em, 17, 2, opts);
  CHECK(res.best_restart >= 0);
  CHECK(res.report.f_q > 0.0);
  CHECK(res.report.f_q <= 1.0 + 1e-12);
  CHECK(res.report.logical_error_rate ==
        doctest::Approx(1.5 * (1 - res.report.f_q)));
  CHECK(res.report.overlaps.size() == 6);
  CHECK(res.restart_rates.size() == 2);
  CHECK_THROWS(optimize(em, 1, 0));
}

TEST_CASE("error rate curve") {
  std::mt19937_64 rng(7);
  const EncoderDecoder ed = random_codec(rng);
  ErrorModel em{5.8e-3, 2e-3, 2e-3, 2e-4};
  const auto curve = error_rate_curve(ed, em, {5e-3, 1e-2, 2e-2});
  REQUIRE(curve.size() == 3);
  for (const auto& p : curve) {
    CHECK(p.identity == doctest::Approx(p.total_rate * (9.8 / 10.0)));
    CHECK(p.learned >= -1e-12);
    CHECK(p.shor >= -1e-12);
  }
  // shor curve is quadratic-dominated at small p for uncorrelated models
  ErrorModel iso{1e-3 / 3, 1e-3 / 3, 1e-3 / 3, 0.0};
  const auto c2 = error_rate_curve(ed, iso, {1e-3, 2e-3, 4e-3});
  const double slope =
      std::log(c2[2].shor / c2[0].shor) / std::log(4e-3 / 1e-3);
  CHECK(slope > 1.8);
  CHECK(slope < 2.2);
}
