#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsim/density_matrix.hpp"
#include "qsim/gellmann.hpp"
#include "qsim/pauli.hpp"
#include "qsim/state_vector.hpp"
#include "qsim/tomography.hpp"

using namespace qsim;

namespace {

Matrix pauli_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
Matrix pauli_z() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }
Matrix pauli_y() {
  return (Matrix(2, 2) << 0, cx(0, -1), cx(0, 1), 0).finished();
}
Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return (Matrix(2, 2) << s, s, s, -s).finished();
}

KrausChannel depolarize1(int q, double px, double py, double pz) {
  KrausChannel ch;
  ch.targets = {q};
  const double p0 = 1.0 - px - py - pz;
  ch.kraus_ops.push_back(std::sqrt(p0) * Matrix::Identity(2, 2));
  if (px > 0) ch.kraus_ops.push_back(std::sqrt(px) * pauli_x());
  if (py > 0) ch.kraus_ops.push_back(std::sqrt(py) * pauli_y());
  if (pz > 0) ch.kraus_ops.push_back(std::sqrt(pz) * pauli_z());
  return ch;
}

StateVector open_cluster(int n) {
  StateVector psi = StateVector::all_plus(n);
  for (int i = 0; i + 1 < n; ++i) psi.apply_cz(i, i + 1);
  return psi;
}

}  // namespace

TEST_CASE("basic gates") {
  StateVector psi(1);
  psi.apply(UnitaryGate({0}, pauli_x()));
  CHECK(std::abs(psi[1] - cx{1.0}) < 1e-15);  // X|0> = |1>

  StateVector h2(1);
  h2.apply(UnitaryGate({0}, hadamard()));
  h2.apply(UnitaryGate({0}, hadamard()));
  CHECK(std::abs(h2[0] - cx{1.0}) < 1e-12);  // H is an involution

  CHECK_THROWS(psi.apply_matrix({7}, pauli_x()));
  CHECK_THROWS(psi.apply_matrix({0, 0}, Matrix::Identity(4, 4)));
  CHECK_THROWS(check_unitary((Matrix(2, 2) << 1, 1, 0, 1).finished()));
}

TEST_CASE("cluster state stabilizers at N=5") {
  const int n = 5;
  StateVector psi = open_cluster(n);
  CHECK(psi.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i + 1 < n; ++i) {
    std::string s(n, 'I');
    s[i - 1] = 'Z';
    s[i] = 'X';
    s[i + 1] = 'Z';
    PauliSum obs(PauliString::from_letters(s));
    CHECK(expectation(psi, obs) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("norm preserved by random circuits") {
  std::mt19937_64 rng(7);
  StateVector psi = StateVector::random(6, rng);
  GellMannBasis g4 = gell_mann_basis(4);
  std::uniform_real_distribution<double> u(0, 2 * M_PI);
  for (int rep = 0; rep < 20; ++rep) {
    ParamVector c(15);
    for (auto& v : c) v = u(rng);
    const Matrix m = unitary_from_params(g4, c);
    const int a = int(rng() % 6), b = (a + 1 + int(rng() % 5)) % 6;
    psi.apply(UnitaryGate({a, b}, m));
    CHECK(std::abs(psi.norm_sq() - 1.0) < 1e-10);
  }
}

TEST_CASE("apply_channel") {
  // identity channel leaves rho alone
  DensityMatrix rho(1);
  rho.apply_channel(depolarize1(0, 0, 0, 0));
  CHECK(std::abs(rho.at(0, 0) - cx{1.0}) < 1e-14);

  // deterministic flip
  DensityMatrix r2(1);
  r2.apply_channel(depolarize1(0, 1.0, 0, 0));
  CHECK(std::abs(r2.at(1, 1) - cx{1.0}) < 1e-14);

  // N1(p,p,p) on |0><0| -> diag(1-2p, 2p)
  const double p = 0.07;
  DensityMatrix r3(1);
  r3.apply_channel(depolarize1(0, p, p, p));
  CHECK(r3.at(0, 0).real() == doctest::Approx(1 - 2 * p).epsilon(1e-12));
  CHECK(r3.at(1, 1).real() == doctest::Approx(2 * p).epsilon(1e-12));

  // trace and Hermiticity preserved on random multi-qubit states
  std::mt19937_64 rng(3);
  StateVector psi = StateVector::random(3, rng);
  DensityMatrix r4 = DensityMatrix::from_pure(psi);
  r4.apply_channel(depolarize1(1, 0.02, 0.05, 0.1));
  CHECK(std::abs(r4.trace_real() - 1.0) < 1e-12);
  CHECK(r4.hermiticity_defect() < 1e-12);
  CHECK(r4.min_eigenvalue() > -1e-9);

  // incomplete Kraus set rejected
  KrausChannel bad;
  bad.targets = {0};
  bad.kraus_ops.push_back(0.5 * pauli_x());
  CHECK_THROWS(r4.apply_channel(bad));
}

TEST_CASE("measurement") {
  std::mt19937_64 rng(11);
  StateVector zero(1);
  auto r = measure_qubit(zero, 0, Basis::Z, rng);
  CHECK(r.outcome == +1);
  CHECK(r.probability == doctest::Approx(1.0));
  CHECK(std::abs(zero[0] - cx{1.0}) < 1e-12);

  StateVector plus = StateVector::all_plus(1);
  auto rx = measure_qubit(plus, 0, Basis::X, rng);
  CHECK(rx.outcome == +1);
  CHECK(rx.probability == doctest::Approx(1.0));

  // postselecting a ~zero branch throws
  StateVector z2(1);
  CHECK_THROWS(postselect_qubit(z2, 0, Basis::Z, -1));
}

TEST_CASE("pauli string product matches dense, n<=4") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> letter(0, 3);
  const char L[] = "IXYZ";
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      std::string a(n, 'I'), b(n, 'I');
      for (int i = 0; i < n; ++i) {
        a[i] = L[letter(rng)];
        b[i] = L[letter(rng)];
      }
      PauliString pa = PauliString::from_letters(a, cx{0.7, -0.1});
      PauliString pb = PauliString::from_letters(b, cx{-1.3, 0.4});
      const Matrix lhs = (pa * pb).dense(n);
      const Matrix rhs = pa.dense(n) * pb.dense(n);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("pauli sum expectation matches dense, n<=4") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> g;
  const char L[] = "IXYZ";
  for (int n = 2; n <= 4; ++n) {
    StateVector psi = StateVector::random(n, rng);
    PauliSum sum;
    for (int t = 0; t < 8; ++t) {
      std::string s(n, 'I');
      for (int i = 0; i < n; ++i) s[i] = L[letter(rng)];
      sum.add(PauliString::from_letters(s, cx{g(rng), 0.0}));
    }
    Eigen::VectorXcd v(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i) v(i) = psi[i];
    const double dense_val = (v.adjoint() * sum.dense(n) * v)(0, 0).real();
    CHECK(expectation(psi, sum) == doctest::Approx(dense_val).epsilon(1e-10));

    DensityMatrix rho = DensityMatrix::from_pure(psi);
    rho.apply_channel(depolarize1(0, 0.1, 0.05, 0.2));
    const Matrix rd = rho.to_eigen();
    const double dense_rho = (rd * sum.dense(n)).trace().real();
    CHECK(expectation(rho, sum) == doctest::Approx(dense_rho).epsilon(1e-10));
  }
}

TEST_CASE("pauli sum algebra") {
  PauliSum a(PauliString::from_letters("XZ"));
  PauliSum b(PauliString::from_letters("ZX"));
  PauliSum c(PauliString::from_letters("YY", cx{0, 1}));
  // associativity spot check on dense matrices
  const Matrix lhs = ((a * b) * c).dense(2);
  const Matrix rhs = (a * (b * c)).dense(2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
  // cancellation removes zero terms
  PauliSum d = a + a;
  d.add(PauliString::from_letters("XZ", cx{-2.0}));
  d.simplify();
  CHECK(d.size() == 0);
}

TEST_CASE("partial trace") {
  StateVector s00(2);
  auto r1 = partial_trace(DensityMatrix::from_pure(s00), {0});
  CHECK(std::abs(r1.at(0, 0) - cx{1.0}) < 1e-14);

  // Bell state -> I/2 on either side
  StateVector bell(2);
  bell.apply(UnitaryGate({0}, hadamard()));
  bell.apply_matrix({0, 1}, (Matrix(4, 4) << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1,
                             0, 0, 1, 0, 0)
                                .finished());  // CNOT(q0 -> q1)
  for (int keep : {0, 1}) {
    auto r = partial_trace(DensityMatrix::from_pure(bell), {keep});
    CHECK(std::abs(r.at(0, 0) - cx{0.5}) < 1e-12);
    CHECK(std::abs(r.at(1, 1) - cx{0.5}) < 1e-12);
    CHECK(std::abs(r.at(0, 1)) < 1e-12);
  }
  CHECK_THROWS(partial_trace(DensityMatrix::from_pure(bell), {}));
}

TEST_CASE("gell-mann basis") {
  CHECK_THROWS(gell_mann_basis(1));
  for (int dim : {2, 4, 8, 32}) {
    const GellMannBasis b = gell_mann_basis(dim);
    REQUIRE(int(b.generators.size()) == dim * dim - 1);
    for (std::size_t i = 0; i < b.generators.size(); ++i) {
      const Matrix& g = b.generators[i];
      CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(g.trace()) < 1e-12);
      // orthogonality against a few partners (full matrix for dim<=8)
      const std::size_t jmax = (dim <= 8) ? b.generators.size() : i + 3;
      for (std::size_t j = i; j < std::min(jmax, b.generators.size()); ++j) {
        const cx t = (g * b.generators[j]).trace();
        if (i == j)
          CHECK(std::abs(t - cx{2.0}) < 1e-12);
        else
          CHECK(std::abs(t) < 1e-12);
      }
    }
  }
  // dim=2 reduces to the Pauli basis in order X, Y, Z
  const GellMannBasis b2 = gell_mann_basis(2);
  CHECK((b2.generators[0] - pauli_x()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((b2.generators[1] - pauli_y()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((b2.generators[2] - pauli_z()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("unitary_from_params") {
  const GellMannBasis b2 = gell_mann_basis(2);
  ParamVector zeros(3, 0.0);
  CHECK((unitary_from_params(b2, zeros) - Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // c = (pi/2, 0, 0) -> exp(-i pi X / 2) = -iX
  ParamVector c{M_PI / 2, 0.0, 0.0};
  const Matrix u = unitary_from_params(b2, c);
  CHECK((u - cx{0, -1} * pauli_x()).cwiseAbs().maxCoeff() < 1e-12);

  // inverse by negation, and unitarity
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> un(0, 2 * M_PI);
  const GellMannBasis b8 = gell_mann_basis(8);
  ParamVector c8(63);
  for (auto& v : c8) v = un(rng);
  ParamVector c8n(c8);
  for (auto& v : c8n) v = -v;
  const Matrix u8 = unitary_from_params(b8, c8);
  CHECK(unitarity_defect(u8) < 1e-10);
  CHECK((u8 * unitary_from_params(b8, c8n) - Matrix::Identity(8, 8))
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  CHECK_THROWS(unitary_from_params(b2, ParamVector(4, 0.0)));

  // matrix log recovers H for small ||c||
  ParamVector small{0.1, -0.07, 0.04};
  const Matrix us = unitary_from_params(b2, small);
  const Matrix logu = us.log();
  const Matrix h = hermitian_from_params(b2, small);
  CHECK((logu - cx{0, -1} * h).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("param vector json round trip") {
  ParamVector c{0.25, -1.5, 3.0};
  const std::string s = param_vector_to_json(2, c);
  const ParamVector back = param_vector_from_json(s, 2);
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(back[i] == c[i]);
  CHECK_THROWS(param_vector_from_json(s, 4));
}

TEST_CASE("process tomography") {
  // identity channel
  auto id = [](const DensityMatrix& rho) { return rho; };
  const BlochAffineMap m0 = process_tomography_1q(id);
  CHECK((m0.M - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(m0.c.norm() < 1e-12);

  // Pauli channel: M = diag(1-2(py+pz), 1-2(px+pz), 1-2(px+py))
  const double px = 0.02, py = 0.11, pz = 0.05;
  auto pauli_ch = [&](const DensityMatrix& rho) {
    DensityMatrix out = rho;
    out.apply_channel(depolarize1(0, px, py, pz));
    return out;
  };
  const BlochAffineMap m1 = process_tomography_1q(pauli_ch);
  CHECK(m1.M(0, 0) == doctest::Approx(1 - 2 * (py + pz)).epsilon(1e-10));
  CHECK(m1.M(1, 1) == doctest::Approx(1 - 2 * (px + pz)).epsilon(1e-10));
  CHECK(m1.M(2, 2) == doctest::Approx(1 - 2 * (px + py)).epsilon(1e-10));
  CHECK(m1.c.norm() < 1e-12);
  CHECK(std::abs(m1.M(0, 1)) + std::abs(m1.M(1, 2)) < 1e-12);

  // unitary channel: M orthogonal with det 1
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> un(0, 2 * M_PI);
  ParamVector c{un(rng), un(rng), un(rng)};
  const Matrix u = unitary_from_params(gell_mann_basis(2), c);
  auto rot = [&](const DensityMatrix& rho) {
    DensityMatrix out = rho;
    out.apply(UnitaryGate({0}, u));
    return out;
  };
  const BlochAffineMap m2 = process_tomography_1q(rot);
  CHECK((m2.M * m2.M.transpose() - Eigen::Matrix3d::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK(m2.M.determinant() == doctest::Approx(1.0).epsilon(1e-10));

  // non-trace-preserving channel detected
  auto broken = [](const DensityMatrix& rho) {
    DensityMatrix out = rho;
    for (auto& v : out.flat()) v *= 0.9;
    return out;
  };
  CHECK_THROWS(process_tomography_1q(broken));
}

TEST_CASE("remove_qubit") {
  // |0>|psi> layouts: removing a fixed qubit keeps the rest intact
  std::mt19937_64 rng(31);
  StateVector psi = StateVector::random(3, rng);
  StateVector ext(4);
  // build |psi> (x) |1> on qubit 1: interleave manually
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const std::size_t low = i & 1, high = i >> 1;
    ext.amps()[(high << 2) | (1ull << 1) | low] = psi[i];
  }
  ext.amps()[0] = 0.0;
  const StateVector red = remove_qubit(ext, 1, 1);
  for (std::size_t i = 0; i < psi.dim(); ++i)
    CHECK(std::abs(red[i] - psi[i]) < 1e-15);
}
