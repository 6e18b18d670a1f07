#include "martlab/path.hpp"

#include <cmath>
#include <stdexcept>

namespace martlab {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > SymMatrix::kMaxDim)
    throw std::invalid_argument("path: dim out of range");
}

}  // namespace

VecPath::VecPath(TimeGrid g, int d, PathKind k)
    : grid(std::move(g)), dim(d), kind(k) {
  check_dim(d);
  values.assign(grid.size() * static_cast<std::size_t>(d), 0.0);
}

void VecPath::eval(double t, std::span<double> out) const {
  if (out.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("VecPath::eval: bad output size");
  const std::size_t k = grid.cell_of(t);
  const auto lo = at(k);
  if (kind == PathKind::CadlagConstant || k + 1 == nodes()) {
    for (int i = 0; i < dim; ++i) out[i] = lo[i];
    return;
  }
  const double t0 = grid[k];
  const double t1 = grid[k + 1];
  const double w = (t - t0) / (t1 - t0);
  const auto hi = at(k + 1);
  for (int i = 0; i < dim; ++i) out[i] = lo[i] + w * (hi[i] - lo[i]);
}

double VecPath::eval1(double t) const {
  if (dim != 1) throw std::invalid_argument("VecPath::eval1: dim != 1");
  double v = 0.0;
  eval(t, {&v, 1});
  return v;
}

void VecPath::check_finite(const char* who) const {
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string(who) + ": non-finite sample");
}

MatPath::MatPath(TimeGrid g, int d, PathKind k)
    : grid(std::move(g)), dim(d), kind(k) {
  check_dim(d);
  values.assign(grid.size() * static_cast<std::size_t>(d) * d, 0.0);
}

SymMatrix MatPath::at(std::size_t k) const {
  SymMatrix m(dim);
  const double* base = values.data() + k * dim * dim;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) m.set(i, j, base[i * dim + j]);
  return m;
}

void MatPath::set(std::size_t k, const SymMatrix& m) {
  if (m.dim() != dim) throw std::invalid_argument("MatPath::set: dim mismatch");
  double* base = values.data() + k * dim * dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) base[i * dim + j] = m(i, j);
}

SymMatrix MatPath::eval(double t) const {
  const std::size_t k = grid.cell_of(t);
  if (kind == PathKind::CadlagConstant || k + 1 == nodes()) return at(k);
  const double t0 = grid[k];
  const double t1 = grid[k + 1];
  const double w = (t - t0) / (t1 - t0);
  SymMatrix a = at(k);
  SymMatrix b = at(k + 1);
  SymMatrix out(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      out.set(i, j, a(i, j) + w * (b(i, j) - a(i, j)));
  return out;
}

}  // namespace martlab
