#include "martlab/rn_estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "martlab/linalg.hpp"

namespace martlab {

namespace {

TimeGrid dyadic_grid(double t_max, int n, std::size_t& cells_out) {
  const double h = std::ldexp(1.0, -n);
  const double cells_real = t_max / h;
  const auto cells = static_cast<std::size_t>(std::llround(cells_real));
  if (cells < 1 || std::abs(cells_real - static_cast<double>(cells)) >
                       1e-9 * (1.0 + cells_real))
    throw std::invalid_argument(
        "dyadic_ratio: T_max is not a multiple of 2^-n");
  std::vector<double> nodes(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i)
    nodes[i] = static_cast<double>(i) * h;
  nodes.back() = t_max;
  cells_out = cells;
  return TimeGrid(std::move(nodes));
}

}  // namespace

VecPath dyadic_ratio(const VecPath& zeta, const IncreasingFn& lambda, int n) {
  if (zeta.dim != 1)
    throw std::invalid_argument("dyadic_ratio: zeta must be scalar");
  if (n < 1) throw std::invalid_argument("dyadic_ratio: n must be >= 1");
  std::size_t cells = 0;
  TimeGrid dg = dyadic_grid(zeta.grid.t_max(), n, cells);
  // every dyadic node must be a sample node (alignment requirement)
  std::vector<std::size_t> idx(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) idx[i] = zeta.grid.index_of(dg[i]);

  VecPath psi(dg, 1, PathKind::CadlagConstant);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double dl = lambda(dg[i]) - lambda(dg[i - 1]);
    const double dz = zeta.at(idx[i])[0] - zeta.at(idx[i - 1])[0];
    const double alpha = dl > 0.0 ? dz / dl : 0.0;
    psi.at(i - 1)[0] = alpha;
    if (i == cells) psi.at(i)[0] = alpha;  // last node repeats the last cell
  }
  return psi;
}

RnResult rn_derivative(const VecPath& zeta, const IncreasingFn& lambda,
                       int n_max) {
  if (n_max < 2)
    throw std::invalid_argument("rn_derivative: n_max must be >= 2");
  VecPath hi = dyadic_ratio(zeta, lambda, n_max);
  const VecPath lo = dyadic_ratio(zeta, lambda, n_max - 1);
  RnResult out;
  out.converged.resize(hi.nodes());
  for (std::size_t k = 0; k < hi.nodes(); ++k) {
    const double h = hi.at(k)[0];
    const double l = lo.at(std::min(k / 2, lo.nodes() - 1))[0];
    out.converged[k] = std::abs(h - l) <= 1e-6 * (1.0 + std::abs(h)) ? 1 : 0;
  }
  out.phi = std::move(hi);
  return out;
}

MatrixRnResult matrix_rn(const MatPath& k, const IncreasingFn& lambda,
                         int n_max) {
  const int d = k.dim;
  // PSD-monotonicity of K within tolerance
  for (std::size_t j = 0; j + 1 < k.grid.size(); ++j) {
    SymMatrix dk = k.at(j + 1);
    dk -= k.at(j);
    const EigenSystem es = jacobi_eigen(dk);
    if (es.values.front() < -1e-10 * (1.0 + op_norm(dk)))
      throw std::invalid_argument("matrix_rn: K is not PSD-nondecreasing");
  }

  auto scalar_path = [&](int a, int b) {
    // (e_a + e_b)^T K (e_a + e_b); a == b gives the diagonal entry scaled by 4
    VecPath z(k.grid, 1, PathKind::ContinuousLinear);
    for (std::size_t j = 0; j < k.grid.size(); ++j) {
      const SymMatrix m = k.at(j);
      z.at(j)[0] = a == b ? m(a, a) : m(a, a) + 2.0 * m(a, b) + m(b, b);
    }
    return z;
  };

  std::vector<RnResult> diag(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    diag[i] = rn_derivative(scalar_path(i, i), lambda, n_max);

  const std::size_t nodes = diag[0].phi.nodes();
  MatrixRnResult out;
  out.phi = MatPath(diag[0].phi.grid, d, PathKind::CadlagConstant);
  out.converged.assign(nodes, 1);

  std::vector<std::vector<RnResult>> cross(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      cross[i].push_back(rn_derivative(scalar_path(i, j), lambda, n_max));

  for (std::size_t s = 0; s < nodes; ++s) {
    SymMatrix m(d);
    unsigned char conv = 1;
    for (int i = 0; i < d; ++i) {
      m.set(i, i, diag[i].phi.at(s)[0]);
      conv &= diag[i].converged[s];
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const RnResult& c = cross[i][static_cast<std::size_t>(j - i - 1)];
        // polarization: 2 a^T A b = (a+b)^T A (a+b) - a^T A a - b^T A b
        m.set(i, j, 0.5 * (c.phi.at(s)[0] - m(i, i) - m(j, j)));
        conv &= c.converged[s];
      }
    if (conv) {
      // clamp negative eigenvalues introduced by estimation noise
      const EigenSystem es = jacobi_eigen(m);
      SymMatrix proj(d);
      for (int e = 0; e < d; ++e) {
        const double lam = std::max(es.values[static_cast<std::size_t>(e)], 0.0);
        if (lam == 0.0) continue;
        for (int a = 0; a < d; ++a)
          for (int b = a; b < d; ++b)
            proj.set(a, b,
                     proj(a, b) + lam *
                                      es.vectors[static_cast<std::size_t>(
                                          a * d + e)] *
                                      es.vectors[static_cast<std::size_t>(
                                          b * d + e)]);
      }
      m = proj;
    }
    out.phi.set(s, m);
    out.converged[s] = conv;
  }
  return out;
}

}  // namespace martlab
