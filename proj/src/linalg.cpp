#include "martlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace martlab {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > SymMatrix::kMaxDim)
    throw std::invalid_argument("SymMatrix: dim must be in [1, 8]");
}

void check_finite(const SymMatrix& a, const char* who) {
  if (!a.finite())
    throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

}  // namespace

SymMatrix::SymMatrix(int dim) : dim_(dim) { check_dim(dim); }

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim_; ++i) m.set(i, i, d[i]);
  return m;
}

SymMatrix SymMatrix::outer(std::span<const double> x) {
  SymMatrix m(static_cast<int>(x.size()));
  for (int i = 0; i < m.dim_; ++i)
    for (int j = 0; j <= i; ++j) m.set(i, j, x[i] * x[j]);
  return m;
}

SymMatrix SymMatrix::from_rows(int dim, std::span<const double> entries) {
  check_dim(dim);
  if (entries.size() != static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument("SymMatrix::from_rows: wrong entry count");
  double amax = 0.0;
  for (double v : entries) {
    if (!std::isfinite(v))
      throw std::invalid_argument("SymMatrix::from_rows: non-finite entries");
    amax = std::max(amax, std::abs(v));
  }
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      const double u = entries[i * dim + j], v = entries[j * dim + i];
      if (std::abs(u - v) > 1e-12 * (1.0 + amax))
        throw std::invalid_argument("SymMatrix::from_rows: not symmetric");
      m.set(i, j, 0.5 * (u + v));
    }
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& b) {
  if (dim_ != b.dim_) throw std::invalid_argument("SymMatrix: dim mismatch");
  for (int k = 0; k < dim_ * dim_; ++k) a_[k] += b.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& b) {
  if (dim_ != b.dim_) throw std::invalid_argument("SymMatrix: dim mismatch");
  for (int k = 0; k < dim_ * dim_; ++k) a_[k] -= b.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double c) {
  for (int k = 0; k < dim_ * dim_; ++k) a_[k] *= c;
  return *this;
}

SymMatrix SymMatrix::square() const {
  SymMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim_; ++k) s += (*this)(i, k) * (*this)(k, j);
      out.set(i, j, s);
    }
  return out;
}

void SymMatrix::matvec(std::span<const double> x, std::span<double> out) const {
  for (int i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
    out[i] = s;
  }
}

double SymMatrix::quad_form(std::span<const double> a,
                            std::span<const double> b) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) s += a[i] * (*this)(i, j) * b[j];
  return s;
}

bool SymMatrix::finite() const {
  for (int k = 0; k < dim_ * dim_; ++k)
    if (!std::isfinite(a_[k])) return false;
  return true;
}

EigenSystem jacobi_eigen(const SymMatrix& a) {
  check_finite(a, "jacobi_eigen");
  const int d = a.dim();
  EigenSystem es;
  es.dim = d;

  std::array<double, SymMatrix::kMaxDim * SymMatrix::kMaxDim> m{};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i * d + j] = a(i, j);
  auto& q = es.vectors;
  for (int i = 0; i < d; ++i) q[i * d + i] = 1.0;

  double frob = 0.0;
  for (int k = 0; k < d * d; ++k) frob += m[k] * m[k];
  frob = std::sqrt(frob);
  const double target = 1e-12 * (1.0 + frob);

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) s += 2.0 * m[i * d + j] * m[i * d + j];
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 64 && off_norm() > target; ++sweep) {
    for (int p = 0; p < d; ++p)
      for (int qi = p + 1; qi < d; ++qi) {
        const double apq = m[p * d + qi];
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (m[qi * d + qi] - m[p * d + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = m[p * d + p], aqq = m[qi * d + qi];
        m[p * d + p] = app - t * apq;
        m[qi * d + qi] = aqq + t * apq;
        m[p * d + qi] = m[qi * d + p] = 0.0;
        for (int r = 0; r < d; ++r) {
          if (r != p && r != qi) {
            const double arp = m[r * d + p], arq = m[r * d + qi];
            m[r * d + p] = m[p * d + r] = arp - s * (arq + tau * arp);
            m[r * d + qi] = m[qi * d + r] = arq + s * (arp - tau * arq);
          }
          const double qrp = q[r * d + p], qrq = q[r * d + qi];
          q[r * d + p] = qrp - s * (qrq + tau * qrp);
          q[r * d + qi] = qrq + s * (qrp - tau * qrq);
        }
      }
  }

  for (int i = 0; i < d; ++i) es.values[i] = m[i * d + i];

  // Sort ascending, carrying eigenvector columns along.
  for (int i = 0; i < d - 1; ++i) {
    int lo = i;
    for (int j = i + 1; j < d; ++j)
      if (es.values[j] < es.values[lo]) lo = j;
    if (lo != i) {
      std::swap(es.values[i], es.values[lo]);
      for (int r = 0; r < d; ++r) std::swap(q[r * d + i], q[r * d + lo]);
    }
  }
  return es;
}

PsdMatrix::PsdMatrix(SymMatrix m) : m_(std::move(m)) {
  const auto es = jacobi_eigen(m_);
  double top = 0.0;
  for (int i = 0; i < es.dim; ++i) top = std::max(top, std::abs(es.values[i]));
  if (es.values[0] < -kPsdTol * (1.0 + top))
    throw std::invalid_argument("PsdMatrix: matrix is not PSD within tolerance");
}

double op_norm(const SymMatrix& a) {
  const auto es = jacobi_eigen(a);
  double top = 0.0;
  for (int i = 0; i < es.dim; ++i) top = std::max(top, std::abs(es.values[i]));
  return top;
}

double trace(const SymMatrix& a) {
  check_finite(a, "trace");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

namespace {

// Q f(diag) Q^T from an eigendecomposition.
template <typename F>
SymMatrix spectral_map(const EigenSystem& es, F&& f) {
  const int d = es.dim;
  SymMatrix out(d);
  std::array<double, SymMatrix::kMaxDim> fv{};
  for (int k = 0; k < d; ++k) fv[k] = f(es.values[k]);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k)
        s += es.vectors[i * d + k] * fv[k] * es.vectors[j * d + k];
      out.set(i, j, s);
    }
  return out;
}

}  // namespace

SymMatrix psd_sqrt(const SymMatrix& phi) {
  const auto es = jacobi_eigen(phi);
  double top = 0.0;
  for (int i = 0; i < es.dim; ++i) top = std::max(top, std::abs(es.values[i]));
  const double tol = kPsdTol * (1.0 + top);
  if (es.values[0] < -tol)
    throw std::invalid_argument("psd_sqrt: matrix is not PSD within tolerance");
  return spectral_map(es, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

PsdMatrix psd_sqrt(const PsdMatrix& phi) {
  return PsdMatrix(psd_sqrt(phi.sym()));
}

SymMatrix psd_inv_sqrt(const SymMatrix& phi, double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("psd_inv_sqrt: eps must be positive");
  const auto es = jacobi_eigen(phi);
  double top = 0.0;
  for (int i = 0; i < es.dim; ++i) top = std::max(top, std::abs(es.values[i]));
  if (es.values[0] < -kPsdTol * (1.0 + top))
    throw std::invalid_argument("psd_inv_sqrt: matrix is not PSD within tolerance");
  const double e2 = eps * eps;
  return spectral_map(
      es, [e2](double v) { return 1.0 / std::sqrt(std::max(v, 0.0) + e2); });
}

SymMatrix truncate_sym(const SymMatrix& r, double cap) {
  if (!(cap > 0.0))
    throw std::invalid_argument("truncate_sym: cap must be positive");
  const double nrm = op_norm(r);
  const double scale = cap / std::max(cap, nrm);
  return scale == 1.0 ? r : r * scale;
}

ClippedVec truncate_vec(std::span<const double> x, double cap) {
  if (!(cap > 0.0))
    throw std::invalid_argument("truncate_vec: cap must be positive");
  const double n = vec_norm(x);
  if (!std::isfinite(n))
    throw std::invalid_argument("truncate_vec: non-finite input");
  const double scale = cap / std::max(cap, n);
  ClippedVec out;
  out.value.assign(x.begin(), x.end());
  if (scale != 1.0) {
    double defect = 0.0;
    for (auto& v : out.value) {
      const double clipped = v * scale;
      defect += (v - clipped) * (v - clipped);
      v = clipped;
    }
    out.defect = defect;
  }
  return out;
}

double vec_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace martlab
