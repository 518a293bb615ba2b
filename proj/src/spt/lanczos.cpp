#include "spt/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "qsim/simd.hpp"

namespace spt {

namespace {

void normalize(std::vector<cx>& v) {
  const auto& k = qsim::simd::active();
  const double n = std::sqrt(k.nrm2sq(v.data(), v.size()));
  if (n == 0.0) throw std::runtime_error("zero vector in Lanczos");
  k.scal(cx{1.0 / n}, v.data(), v.size());
}

}  // namespace

GroundStateResult ground_state(const SparseHamiltonian& h,
                               const LanczosOptions& opts) {
  const std::size_t dim = h.dimension();
  const auto& kn = qsim::simd::active();
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> g;

  std::vector<cx> v0(dim);
  for (auto& a : v0) a = cx{g(rng), g(rng)};
  if (opts.project) opts.project(v0);
  normalize(v0);

  const int m = std::max(4, opts.restart_depth);
  std::vector<std::vector<cx>> basis;
  basis.reserve(m + 1);
  GroundStateResult res;
  int total_iters = 0;

  for (int restart = 0; restart < opts.max_restarts; ++restart) {
    basis.clear();
    basis.push_back(v0);
    std::vector<double> alpha, beta;  // tridiagonal
    std::vector<cx> w(dim);

    double theta0 = 0.0, theta1 = 0.0;
    Eigen::VectorXd ritz_coeff;
    int built = 0;

    for (int j = 0; j < m; ++j) {
      std::fill(w.begin(), w.end(), cx{0.0});
      h.accumulate(basis[j].data(), w.data());
      const cx a = kn.dotc(basis[j].data(), w.data(), dim);
      alpha.push_back(a.real());
      kn.axpy(cx{-a.real()}, basis[j].data(), w.data(), dim);
      if (j > 0) kn.axpy(cx{-beta[j - 1]}, basis[j - 1].data(), w.data(), dim);
      // full reorthogonalization, twice for stability
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
          const cx ov = kn.dotc(b.data(), w.data(), dim);
          if (std::abs(ov) > 0.0) kn.axpy(-ov, b.data(), w.data(), dim);
        }
      const double nb = std::sqrt(kn.nrm2sq(w.data(), dim));
      beta.push_back(nb);
      ++total_iters;
      built = j + 1;
      if (nb < 1e-14) break;  // invariant subspace
      if (j + 1 < m) {
        kn.scal(cx{1.0 / nb}, w.data(), dim);
        basis.push_back(w);
      }
    }

    // Ritz values/vector from the tridiagonal block
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(built, built);
    for (int i = 0; i < built; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < built) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    theta0 = es.eigenvalues()(0);
    theta1 = built > 1 ? es.eigenvalues()(1) : theta0;
    ritz_coeff = es.eigenvectors().col(0);

    std::vector<cx> ritz(dim, cx{0.0});
    for (int i = 0; i < built && i < int(basis.size()); ++i)
      kn.axpy(cx{ritz_coeff(i)}, basis[i].data(), ritz.data(), dim);
    if (opts.project) opts.project(ritz);
    normalize(ritz);

    // true residual ||H v - theta v||
    std::vector<cx> hv(dim, cx{0.0});
    h.accumulate(ritz.data(), hv.data());
    const double e = kn.dotc(ritz.data(), hv.data(), dim).real();
    kn.axpy(cx{-e}, ritz.data(), hv.data(), dim);
    const double resid = std::sqrt(kn.nrm2sq(hv.data(), dim));

    res.energy = e;
    res.vector = std::move(ritz);
    res.residual = resid;
    res.gap = theta1 - theta0;
    res.iterations = total_iters;
    if (resid <= opts.tol * std::max(1.0, std::abs(e))) {
      res.converged = true;
      break;
    }
    v0 = res.vector;
  }
  if (!res.converged)
    throw std::runtime_error("Lanczos did not converge within max restarts");

  // Gap estimate by a deflated block: a plain Krylov space cannot resolve an
  // exactly degenerate ground multiplet, so run a short pass orthogonal to
  // the converged ground vector.
  {
    std::vector<std::vector<cx>> dbasis;
    std::vector<cx> w(dim);
    std::vector<cx> start(dim);
    for (auto& a : start) a = cx{g(rng), g(rng)};
    if (opts.project) opts.project(start);
    auto deflate = [&](std::vector<cx>& v) {
      const cx ov = kn.dotc(res.vector.data(), v.data(), dim);
      kn.axpy(-ov, res.vector.data(), v.data(), dim);
    };
    deflate(start);
    normalize(start);
    dbasis.push_back(start);
    std::vector<double> da, db;
    const int depth = std::min(m, 24);
    for (int j = 0; j < depth; ++j) {
      std::fill(w.begin(), w.end(), cx{0.0});
      h.accumulate(dbasis[j].data(), w.data());
      const cx a = kn.dotc(dbasis[j].data(), w.data(), dim);
      da.push_back(a.real());
      for (int pass = 0; pass < 2; ++pass) {
        deflate(w);
        for (const auto& b : dbasis) {
          const cx ov = kn.dotc(b.data(), w.data(), dim);
          kn.axpy(-ov, b.data(), w.data(), dim);
        }
      }
      const double nb = std::sqrt(kn.nrm2sq(w.data(), dim));
      db.push_back(nb);
      if (nb < 1e-12 || j + 1 == depth) break;
      kn.scal(cx{1.0 / nb}, w.data(), dim);
      dbasis.push_back(w);
    }
    const int built = static_cast<int>(da.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(built, built);
    for (int i = 0; i < built; ++i) {
      t(i, i) = da[i];
      if (i + 1 < built) t(i, i + 1) = t(i + 1, i) = db[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    res.gap = es.eigenvalues()(0) - res.energy;
  }
  res.degenerate = res.gap < 10.0 * opts.tol;
  return res;
}

GroundStateResult dense_ground_state(const SparseHamiltonian& h) {
  const Matrix hd = h.dense();
  Eigen::SelfAdjointEigenSolver<Matrix> es(hd);
  GroundStateResult r;
  r.energy = es.eigenvalues()(0);
  r.gap = hd.rows() > 1 ? es.eigenvalues()(1) - r.energy : 0.0;
  r.vector.resize(hd.rows());
  for (Eigen::Index i = 0; i < hd.rows(); ++i) r.vector[i] = es.eigenvectors()(i, 0);
  r.converged = true;
  r.residual = 0.0;
  return r;
}

std::function<void(std::vector<cx>&)> symmetric_sector_projector(
    std::uint64_t xmask0, std::uint64_t xmask1) {
  return [xmask0, xmask1](std::vector<cx>& v) {
    const auto& k = qsim::simd::active();
    std::vector<cx> tmp(v.size(), cx{0.0});
    // (1 + P0)/2
    k.term_accum(tmp.data(), v.data(), v.size(), xmask0, 0, cx{0.5});
    k.scal(cx{0.5}, v.data(), v.size());
    k.axpy(cx{1.0}, tmp.data(), v.data(), v.size());
    // (1 + P1)/2
    std::fill(tmp.begin(), tmp.end(), cx{0.0});
    k.term_accum(tmp.data(), v.data(), v.size(), xmask1, 0, cx{0.5});
    k.scal(cx{0.5}, v.data(), v.size());
    k.axpy(cx{1.0}, tmp.data(), v.data(), v.size());
  };
}

std::function<void(std::vector<cx>&)> symmetric_sector_projector_local(
    int num_sites, int local_dim, const Matrix& r0, const Matrix& r1) {
  // build (1+R)/2 appliers via a scratch SparseHamiltonian per generator
  auto apply_global = [num_sites, local_dim](const Matrix& r,
                                             std::vector<cx>& v) {
    // apply r on every site sequentially
    std::size_t dim = 1;
    for (int s = 0; s < num_sites; ++s) dim *= std::size_t(local_dim);
    std::vector<cx> cur(v);
    std::vector<cx> nxt(dim);
    std::size_t stride = 1;
    for (int s = 0; s < num_sites; ++s) {
      std::fill(nxt.begin(), nxt.end(), cx{0.0});
      for (std::size_t i = 0; i < dim; ++i) {
        const int d = int((i / stride) % local_dim);
        const std::size_t base = i - std::size_t(d) * stride;
        cx acc = 0.0;
        for (int c = 0; c < local_dim; ++c)
          acc += r(d, c) * cur[base + std::size_t(c) * stride];
        nxt[i] = acc;
      }
      cur.swap(nxt);
      stride *= std::size_t(local_dim);
    }
    v.swap(cur);
  };
  return [=](std::vector<cx>& v) {
    std::vector<cx> t(v);
    apply_global(r0, t);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (v[i] + t[i]);
    t = v;
    apply_global(r1, t);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (v[i] + t[i]);
  };
}

}  // namespace spt
