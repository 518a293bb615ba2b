#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcnn/criteria.hpp"
#include "qcnn/exact_circuit.hpp"
#include "qcnn/heisenberg.hpp"
#include "qcnn/runner.hpp"
#include "spt/cluster.hpp"
#include "spt/hamiltonian.hpp"
#include "spt/lanczos.hpp"

using namespace qcnn;
using qsim::cx;
using qsim::StateVector;

TEST_CASE("circuit structure and counts") {
  CHECK_THROWS(build_exact_circuit(9, 0));
  CHECK_THROWS(build_exact_circuit(10, 1));
  CHECK_THROWS(build_exact_circuit(3, 1));  // final layer too small

  const auto c = build_exact_circuit(9, 1);
  CHECK(c.count_tag("fine-cz") + c.count_tag("coarse-cz") == 12);
  CHECK(c.count_tag("toffoli") == 3);
  CHECK(c.count_tag("pool-cz") == 6);
  CHECK(c.count_tag("fc-cz") == 3);
  CHECK(c.final_survivors.size() == 3);
  CHECK(c.readout_qubit == 4);  // middle survivor
  CHECK(!c.dump().empty());

  const auto c27 = build_exact_circuit(27, 2);
  CHECK(c27.unit_end.size() == 2);
  CHECK(c27.final_survivors.size() == 3);
  CHECK(c27.count_tag("fine-cz") + c27.count_tag("coarse-cz") == 36 + 12);
}

TEST_CASE("fixed point: cluster input, deterministic outcomes") {
  for (int N : {9, 18}) {
    const auto circ = build_exact_circuit(N, 1);
    const StateVector cl = spt::cluster_state(N);
    const auto out = run_deferred(cl, circ);
    CHECK(std::abs(out.expectation - 1.0) < 1e-10);
    std::mt19937_64 rng(2);
    const auto rec = run_single_trajectory(cl, circ, rng);
    CHECK(rec.readout == +1);
    for (int o : rec.outcomes) CHECK(o == +1);
  }
}

TEST_CASE("single X errors are detected and corrected") {
  const int N = 9;
  const auto circ = build_exact_circuit(N, 1);
  const StateVector cl = spt::cluster_state(N);
  std::mt19937_64 rng(3);
  for (int j = 0; j < N; ++j) {
    StateVector err = cl;
    err.apply_pauli(std::uint64_t{1} << j, 0, 1.0);
    const auto out = run_deferred(err, circ);
    CHECK(std::abs(out.expectation - 1.0) < 1e-10);
    const auto rec = run_single_trajectory(err, circ, rng);
    CHECK(rec.readout == +1);
    int flags = 0;
    for (int o : rec.outcomes) flags += (o == -1);
    CHECK(flags >= 1);
  }
}

TEST_CASE("construction criteria") {
  const auto r9 = verify_construction_criteria(9, 1);
  CHECK(r9.ok());
  CHECK(r9.mode == "dense");
  const auto r18 = verify_construction_criteria(18, 1);
  CHECK(r18.ok());
  // N=27, d=2 via the symbolic Heisenberg oracle
  const auto r27 = verify_construction_criteria(27, 2, 20);
  CHECK(r27.ok());
  CHECK(r27.mode == "heisenberg");
}

TEST_CASE("heisenberg rules against dense conjugation") {
  // verified against explicit 2^9 matrices in the development scratch; here
  // exercise the X/Z images on the N=9 ring via statevector conjugation
  const int N = 9;
  const LayerGeometry g{3, 9};
  const auto cx0 = conjugate_x(1, g);
  REQUIRE(cx0.size() == 1);
  const auto zx = conjugate_z(1, g);
  REQUIRE(zx.size() == 4);
  // term letters of conjugate_z(1): s=4: Z4, Z2X3, X5Z6, -Z2X3Z4X5Z6, all 1/2
  qsim::PauliSum zs = zx.to_pauli_sum();
  const auto terms = zs.sorted_terms();
  double norm2 = 0;
  for (const auto& t : terms) norm2 += std::norm(t.coefficient);
  CHECK(norm2 == doctest::Approx(1.0));  // unitary conjugation preserves 2-norm

  // involution: conjugating X twice through the same unit in the dense
  // picture returns X (U self-inverse on the Pauli frame is not generally
  // true; instead check the exact norm identity and the dense oracle below)
  const auto circ = build_exact_circuit(9, 1);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 4; ++rep) {
    const StateVector psi = StateVector::random(9, rng);
    // <psi| U' X4 U |psi> computed two ways
    StateVector evolved = psi;
    for (std::size_t i = 0; i < circ.unit_end[0]; ++i) {
      const auto& e = circ.elements[i];
      if (e.kind == ElementKind::Unitary)
        evolved.apply_matrix(e.targets, e.matrix);
      else if (e.kind == ElementKind::CondUnitary) {
        // deferred controlled-Z, control fires on |->
        Matrix big = Matrix::Identity(4, 4);
        big(2, 2) = 0;
        big(2, 3) = 1;
        big(3, 2) = 1;
        big(3, 3) = 0;
        evolved.apply_matrix({e.control, e.targets[0]}, big);
      }
    }
    qsim::PauliString x4;
    x4.x = 1ull << 4;
    const double direct = qsim::expectation_term(evolved, x4).real();
    const double via_rules =
        qsim::expectation(psi, conjugate_x(1, g).to_pauli_sum());
    CHECK(direct == doctest::Approx(via_rules).epsilon(1e-10));

    qsim::PauliString z4;
    z4.z = 1ull << 4;
    const double directz = qsim::expectation_term(evolved, z4).real();
    const double via_rulesz =
        qsim::expectation(psi, conjugate_z(1, g).to_pauli_sum());
    CHECK(directz == doctest::Approx(via_rulesz).epsilon(1e-10));
  }
}

TEST_CASE("multiscale sop") {
  CHECK_THROWS(multiscale_sop(10, 1));
  // d=1, N=9: 16 products before merging
  const auto o = multiscale_sop(9, 1);
  CHECK(o.term_count <= 16);
  CHECK(o.exact.to_pauli_sum().is_hermitian());
  // exact Pauli-basis 2-norm is 1
  const auto [num, k] = o.exact.two_norm_sq_exact();
  CHECK(num == 1);
  CHECK(k == 0);
  // <O> on the cluster state is exactly 1 (symbolic evaluation)
  CHECK(spt::cluster_expectation(o.to_pauli_sum(), 9) == doctest::Approx(1.0));

  const auto o2 = multiscale_sop(27, 2);
  const auto [num2, k2] = o2.exact.two_norm_sq_exact();
  CHECK(num2 == 1);
  CHECK(k2 == 0);
  CHECK(spt::cluster_expectation(o2.to_pauli_sum(), 27) ==
        doctest::Approx(1.0));
  // growth bound: an SOP has two Z-type ends and expands 16-fold per layer,
  // a product of SOPs 16-fold per factor. Every term is a product of SOPs,
  // so its Z/Y letter count is even and the next layer grows by at most
  // 4^{#ZY} = 16^{#factors}.
  std::size_t bound = 0;
  for (const auto& t : o.to_pauli_sum().sorted_terms()) {
    int zy = 0;
    for (int q = 0; q < 9; ++q) zy += (t.z >> q) & 1;
    CHECK(zy % 2 == 0);
    bound += std::size_t{1} << (2 * zy);
  }
  CHECK(o2.term_count <= bound);
}

TEST_CASE("equivalence: deferred circuit == multiscale sop") {
  std::mt19937_64 rng(7);
  for (int N : {9, 18}) {
    const auto circ = build_exact_circuit(N, 1);
    const auto obs = multiscale_sop(N, 1).to_pauli_sum();
    for (int rep = 0; rep < (N == 9 ? 50 : 10); ++rep) {
      const StateVector psi = StateVector::random(N, rng);
      const auto out = run_deferred(psi, circ);
      const double ho = qsim::expectation(psi, obs);
      CHECK(std::abs(out.expectation - ho) < 1e-8);
    }
  }
}

TEST_CASE("trajectory mean approaches deferred expectation") {
  const int N = 9;
  const auto circ = build_exact_circuit(N, 1);
  const StateVector plus = StateVector::all_plus(N);
  const auto exact = run_deferred(plus, circ);
  std::mt19937_64 rng(11);
  const auto emp = run_trajectories(plus, circ, 100000, rng);
  CHECK(std::abs(emp.expectation - exact.expectation) <
        4.0 * std::max(emp.std_error, 1e-3));
}

TEST_CASE("output invariant under the global symmetry") {
  const int N = 18;
  const auto circ = build_exact_circuit(N, 1);
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 4; ++rep) {
    StateVector psi = StateVector::random(N, rng);
    const double base = run_deferred(psi, circ).expectation;
    for (int parity : {0, 1}) {
      StateVector flipped = psi;
      flipped.apply_pauli(spt::sublattice_mask(N, parity), 0, 1.0);
      CHECK(std::abs(run_deferred(flipped, circ).expectation - base) < 1e-10);
    }
  }
  // termwise symmetry respect of the observable
  const auto obs = multiscale_sop(N, 1).to_pauli_sum();
  for (const auto& t : obs.sorted_terms())
    for (int parity : {0, 1}) {
      int anti = 0;
      const std::uint64_t mask = spt::sublattice_mask(N, parity);
      for (int q = 0; q < N; ++q)
        if ((mask >> q & 1) && (t.z >> q & 1)) ++anti;
      CHECK((anti % 2) == 0);
    }
}

TEST_CASE("monotone output along the exactly solvable line") {
  // exact QCNN on symmetric-sector ED ground states, h2=0, N=9
  const int N = 9;
  const auto circ = build_exact_circuit(N, 1);
  double prev = 2.0;
  int violations = 0;
  for (double h1 : {0.0, 0.4, 0.8, 1.2, 1.6, 2.0}) {
    const auto h = spt::build_cluster_hamiltonian({1.0, h1, 0.0, N});
    spt::LanczosOptions opt;
    opt.seed = 5;
    opt.project = spt::symmetric_sector_projector(spt::sublattice_mask(N, 0),
                                                  spt::sublattice_mask(N, 1));
    const auto gs = spt::ground_state(h, opt);
    StateVector psi(N);
    psi.amps() = gs.vector;
    const double out = run_deferred(psi, circ).expectation;
    if (out > prev + 1e-9) ++violations;
    prev = out;
  }
  CHECK(violations <= 1);
}

TEST_CASE("truncate") {
  auto o = multiscale_sop(9, 1);
  DyadicPauliSum sum = o.exact;
  CHECK(truncate(sum, 0.0) == 0.0);
  CHECK(sum.size() == o.term_count);
  const double dropped = truncate(sum, 10.0);
  CHECK(sum.size() == 0);
  CHECK(dropped == doctest::Approx(o.exact.one_norm()));
  CHECK_THROWS(truncate(sum, -1.0));
}
