#include "entrocert/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace entrocert {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim < 0) throw std::invalid_argument("ComplexMatrix: negative dimension");
  entries_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<Complex> entries) : ComplexMatrix(dim) {
  if (entries.size() != entries_.size())
    throw std::invalid_argument("ComplexMatrix: entry count does not match dim^2");
  std::copy(entries.begin(), entries.end(), entries_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("matrix addition: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("matrix subtraction: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < entries_.size(); ++k)
    m = std::max(m, std::abs(entries_[k] - other.entries_[k]));
  return m;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tolerance) const {
  return dim_ == other.dim_ && max_abs_diff(other) <= tolerance;
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tolerance) return false;
  return true;
}

std::vector<Complex> ComplexMatrix::apply(const std::vector<Complex>& v) const {
  if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("apply: length mismatch");
  std::vector<Complex> out(v.size(), Complex(0.0, 0.0));
  for (int i = 0; i < dim_; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix product: dimension mismatch");
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
  Complex t = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int da = a.dim();
  const int db = b.dim();
  ComplexMatrix out(da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const std::vector<int>& dims,
                                 const std::vector<int>& perm) {
  const int nsub = static_cast<int>(dims.size());
  if (perm.size() != dims.size())
    throw std::invalid_argument("permute_subsystems: perm size does not match dims");
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("permute_subsystems: subsystem dims must be positive");
    total *= d;
  }
  if (total != m.dim()) throw std::invalid_argument("permute_subsystems: dims do not factor m");
  std::vector<bool> seen(dims.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= nsub || seen[p])
      throw std::invalid_argument("permute_subsystems: perm is not a bijection");
    seen[p] = true;
  }

  // Input index -> digit tuple -> output index with digits reordered so that
  // output factor p carries input factor perm[p].
  std::vector<int> in_stride(dims.size());
  int s = 1;
  for (int k = nsub - 1; k >= 0; --k) {
    in_stride[k] = s;
    s *= dims[k];
  }
  std::vector<int> out_dims(dims.size());
  for (int p = 0; p < nsub; ++p) out_dims[p] = dims[perm[p]];
  std::vector<int> out_stride(dims.size());
  s = 1;
  for (int p = nsub - 1; p >= 0; --p) {
    out_stride[p] = s;
    s *= out_dims[p];
  }

  const int n = m.dim();
  std::vector<int> row_map(n);
  std::vector<int> digits(dims.size());
  for (int idx = 0; idx < n; ++idx) {
    int rem = idx;
    for (int k = 0; k < nsub; ++k) {
      digits[k] = rem / in_stride[k];
      rem %= in_stride[k];
    }
    int out = 0;
    for (int p = 0; p < nsub; ++p) out += digits[perm[p]] * out_stride[p];
    row_map[idx] = out;
  }

  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(row_map[i], row_map[j]) = m(i, j);
  return out;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j) s += 2.0 * std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_hermitian(tol::hermitian))
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  const int n = m.dim();

  // Work on the exactly Hermitian part so rotations preserve symmetry.
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  int sweeps = 0;
  while (offdiag_norm(a) >= tol::jacobi_offdiag) {
    if (++sweeps > 100) throw std::runtime_error("hermitian_eig: no convergence in 100 sweeps");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Diagonalize the 2x2 block [[app, apq], [conj(apq), aqq]] with the
        // unitary U = [[c, -s*e^{i phi}], [s*e^{-i phi}, c]], apq = mag*e^{i phi}.
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (app - aqq) / (2.0 * mag);
        double t;
        if (theta >= 0.0)
          t = 1.0 / (theta + std::sqrt(theta * theta + 1.0));
        else
          t = -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        for (int k = 0; k < n; ++k) {  // columns: A <- A U
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + sn * std::conj(phase) * akq;
          a(k, q) = -sn * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {  // rows: A <- U^dagger A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + sn * phase * aqk;
          a(q, k) = -sn * std::conj(phase) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {  // accumulate V <- V U
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + sn * std::conj(phase) * vkq;
          v(k, q) = -sn * phase * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> solve_real_linear(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = b.size();
  if (n == 0) throw std::invalid_argument("solve_real_linear: empty system");
  if (n > 256) throw std::invalid_argument("solve_real_linear: n exceeds 256");
  if (a.size() != n * n) throw std::invalid_argument("solve_real_linear: a is not n x n");

  std::vector<double> work = a;
  std::vector<double> rhs = b;
  std::vector<std::size_t> rowidx(n);
  std::iota(rowidx.begin(), rowidx.end(), 0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return work[rowidx[i] * n + j]; };

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_mag = std::abs(at(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(at(r, col));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best_mag < tol::pivot)
      throw std::runtime_error("solve_real_linear: singular matrix (pivot " +
                               std::to_string(col) + " has magnitude " +
                               std::to_string(best_mag) + ")");
    std::swap(rowidx[col], rowidx[best]);
    std::swap(rhs[col], rhs[best]);
    const double pivot = at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = at(r, col) / pivot;
      if (f == 0.0) continue;
      at(r, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) at(r, j) -= f * at(col, j);
      rhs[r] -= f * rhs[col];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= at(i, j) * x[j];
    x[i] = acc / at(i, i);
  }

  double b_inf = 0.0;
  for (double v : b) b_inf = std::max(b_inf, std::abs(v));
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = -b[i];
    for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * x[j];
    res = std::max(res, std::abs(acc));
  }
  if (res > tol::solve_residual * b_inf)
    throw std::runtime_error("solve_real_linear: residual exceeds tolerance (ill-conditioned)");
  return x;
}

}  // namespace entrocert
