#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace martlab {

// Dense symmetric d x d real matrix, d in [1, 8]. Entries live in a fixed
// inline buffer so matrices are cheap value types; set() writes both
// triangles, so stored entries are exactly symmetric.
class SymMatrix {
 public:
  static constexpr int kMaxDim = 8;

  explicit SymMatrix(int dim);

  static SymMatrix identity(int dim);
  static SymMatrix diagonal(std::span<const double> d);
  // x x^T (tensor square of a vector)
  static SymMatrix outer(std::span<const double> x);
  // Row-major entries; symmetrized after checking
  // |a_ij - a_ji| <= 1e-12 * (1 + max|entry|).
  static SymMatrix from_rows(int dim, std::span<const double> entries);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[i * dim_ + j]; }
  void set(int i, int j, double v) {
    a_[i * dim_ + j] = v;
    a_[j * dim_ + i] = v;
  }
  std::span<const double> data() const {
    return {a_.data(), static_cast<std::size_t>(dim_ * dim_)};
  }

  SymMatrix& operator+=(const SymMatrix& b);
  SymMatrix& operator-=(const SymMatrix& b);
  SymMatrix& operator*=(double c);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double c) { return a *= c; }
  friend SymMatrix operator*(double c, SymMatrix a) { return a *= c; }

  // A*A (symmetric since A is).
  SymMatrix square() const;
  void matvec(std::span<const double> x, std::span<double> out) const;
  // a^T A b
  double quad_form(std::span<const double> a, std::span<const double> b) const;

  bool finite() const;

 private:
  int dim_;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

// Eigenvalues ascending; column k of `vectors` (i.e. vectors[i*dim + k]) is
// the unit eigenvector for values[k].
struct EigenSystem {
  int dim = 0;
  std::array<double, SymMatrix::kMaxDim> values{};
  std::array<double, SymMatrix::kMaxDim * SymMatrix::kMaxDim> vectors{};
};

// Cyclic Jacobi rotations; off-diagonal Frobenius target 1e-12 relative to
// the matrix scale. Plenty for d <= 8.
EigenSystem jacobi_eigen(const SymMatrix& a);

// PSD acceptance band: smallest eigenvalue >= -kPsdTol * (1 + op_norm).
inline constexpr double kPsdTol = 1e-10;

// Symmetric matrix checked to lie in the PSD cone within kPsdTol.
class PsdMatrix {
 public:
  // Throws std::invalid_argument when the matrix fails the PSD band.
  explicit PsdMatrix(SymMatrix m);
  const SymMatrix& sym() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  SymMatrix m_;
};

// Spectral norm max|eigenvalue|; the matrix norm used throughout.
double op_norm(const SymMatrix& a);
double trace(const SymMatrix& a);

// Principal square root; eigenvalues in [-tol, 0] are clamped to zero before
// rooting, eigenvalues below the band throw.
PsdMatrix psd_sqrt(const PsdMatrix& phi);
SymMatrix psd_sqrt(const SymMatrix& phi);

// (phi + eps^2 I)^{-1/2}, eps > 0. Well-defined for every PSD phi.
SymMatrix psd_inv_sqrt(const SymMatrix& phi, double eps);

// cap * R / max(cap, ||R||): identity below the cap, norm exactly cap above.
SymMatrix truncate_sym(const SymMatrix& r, double cap);

// cap * x / max(cap, |x|) together with the truncation defect |x - x_cap|^2.
struct ClippedVec {
  std::vector<double> value;
  double defect = 0.0;
};
ClippedVec truncate_vec(std::span<const double> x, double cap);

double vec_norm(std::span<const double> x);

}  // namespace martlab
