// Copyright 2026 The dks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DKS_LINALG_HPP_
#define DKS_LINALG_HPP_

// Dense decompositions backed by LAPACK. Symmetric inputs go through a
// Householder tridiagonalization; everything else through divide-and-conquer
// SVD.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#ifndef LAPACK_COMPLEX_CPP
#define LAPACK_COMPLEX_CPP
#endif
#include <lapacke.h>

#include "dks/errors.hpp"
#include "dks/graph.hpp"

namespace dks {

namespace detail {

inline std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline void require_finite(const Matrix& m, const char* who) {
  if (!m.allFinite())
    throw NumericalError(std::string(who) + ": non-finite entries in " +
                         dims(m) + " matrix");
}

inline void check_info(lapack_int info, const char* routine, const Matrix& m) {
  if (info != 0)
    throw NumericalError(std::string(routine) + " failed (info=" +
                         std::to_string(info) + ") on " + dims(m) + " matrix");
}

/// Below this order dstemr's index-range mode is not used (it misbehaves
/// for n = 2 in the reference implementation).
inline constexpr lapack_int kPartialEigenMinOrder = 16;

/// Beyond this fraction of n eigenvectors a full solve is cheaper.
inline constexpr double kFullEigenFraction = 0.35;

/// Householder reduction A = Q T Q^T kept in LAPACK's packed form.
struct Tridiagonal {
  Matrix reflectors;
  Vector diag;
  Vector offdiag;  // length n; last slot is workspace for dstemr
  Vector tau;
};

inline Tridiagonal tridiagonalize(const Matrix& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  Tridiagonal t{a, Vector(n), Vector::Zero(n), Vector::Zero(std::max<lapack_int>(n - 1, 1))};
  check_info(LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'L', n, t.reflectors.data(), n,
                            t.diag.data(), t.offdiag.data(), t.tau.data()),
             "dsytrd", a);
  return t;
}

inline Vector tridiagonal_eigenvalues(const Tridiagonal& t, const Matrix& a) {
  Vector d = t.diag, e = t.offdiag;
  check_info(LAPACKE_dsterf(static_cast<lapack_int>(d.size()), d.data(), e.data()),
             "dsterf", a);
  return d;  // ascending
}

/// Eigenvectors (in the original basis) for eigenvalue indices [lo, hi],
/// 1-based and ascending as in LAPACK.
inline Matrix selected_eigenvectors(const Tridiagonal& t, const Matrix& a,
                                    lapack_int lo, lapack_int hi) {
  const auto n = static_cast<lapack_int>(t.diag.size());
  const lapack_int count = hi - lo + 1;
  Vector d = t.diag, e = t.offdiag, w(n);
  Matrix z(n, count);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max(count, 1)));
  lapack_int found = 0;
  lapack_logical tryrac = 1;
  check_info(LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0,
                            0.0, lo, hi, &found, w.data(), z.data(), n, count,
                            isuppz.data(), &tryrac),
             "dstemr", a);
  if (found != count)
    throw NumericalError("dstemr returned " + std::to_string(found) + " of " +
                         std::to_string(count) + " eigenvectors for " + dims(a) +
                         " matrix");
  if (n > 1)
    check_info(LAPACKE_dormtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', n, count,
                              const_cast<double*>(t.reflectors.data()), n,
                              const_cast<double*>(t.tau.data()), z.data(), n),
               "dormtr", a);
  return z;
}

/// Every eigenvector, ascending, by dstedc on the tridiagonal form.
inline Matrix all_eigenvectors(const Tridiagonal& t, const Matrix& a) {
  const auto n = static_cast<lapack_int>(t.diag.size());
  Vector d = t.diag, e = t.offdiag;
  Matrix z(n, n);
  check_info(LAPACKE_dstedc(LAPACK_COL_MAJOR, 'I', n, d.data(), e.data(), z.data(), n),
             "dstedc", a);
  if (n > 1)
    check_info(LAPACKE_dormtr(LAPACK_COL_MAJOR, 'L', 'L', 'N', n, n,
                              const_cast<double*>(t.reflectors.data()), n,
                              const_cast<double*>(t.tau.data()), z.data(), n),
               "dormtr", a);
  return z;
}

}  // namespace detail

inline bool is_symmetric(const Matrix& m) {
  return m.rows() == m.cols() && (m.array() == m.transpose().array()).all();
}

/// All eigenvalues of a symmetric matrix, ascending.
inline Vector symmetric_eigenvalues(const Matrix& a) {
  detail::require_finite(a, "symmetric_eigenvalues");
  if (a.rows() != a.cols())
    throw DimensionError("symmetric_eigenvalues needs a square matrix, got " +
                         detail::dims(a));
  return detail::tridiagonal_eigenvalues(detail::tridiagonalize(a), a);
}

/// Singular values, descending.
inline Vector singular_values(const Matrix& a) {
  detail::require_finite(a, "singular_values");
  if (is_symmetric(a)) {
    Vector s = symmetric_eigenvalues(a).cwiseAbs();
    std::sort(s.data(), s.data() + s.size(), std::greater<>());
    return s;
  }
  Matrix work = a;
  const auto m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  Vector s(std::min(m, n));
  double dummy = 0.0;
  detail::check_info(LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m,
                                    s.data(), &dummy, 1, &dummy, 1),
                     "dgesdd", a);
  return s;
}

/// Largest singular value from a full decomposition.
inline double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

/// Singular value thresholding U diag(max(sigma - phi, 0)) V^T.
///
/// For symmetric input the SVD is read off the eigendecomposition
/// (sigma = |lambda|, right vectors carry sign(lambda)). All eigenvalues are
/// computed, eigenvectors only for the smaller side of the threshold. The
/// symmetric result is returned exactly symmetric.
inline Matrix svt(const Matrix& m, double phi) {
  if (phi < 0.0 || std::isnan(phi))
    throw DomainError("svt threshold must be >= 0, got " + std::to_string(phi));
  detail::require_finite(m, "svt");
  if (m.size() == 0) return m;

  if (is_symmetric(m)) {
    const auto n = static_cast<lapack_int>(m.rows());
    const auto tri = detail::tridiagonalize(m);
    const Vector w = detail::tridiagonal_eigenvalues(tri, m);
    lapack_int neg = 0, pos = 0;
    while (neg < n && w(neg) < -phi) ++neg;
    while (pos < n - neg && w(n - 1 - pos) > phi) ++pos;
    if (neg + pos == 0) return Matrix::Zero(n, n);

    // Three equal expressions for the result, by which eigenpairs they use:
    //   direct:  sum over |lambda| > phi of (lambda -+ phi) z z^T
    //   low:     M - phi I + sum over indices [1, n-pos] (2 phi or phi - lambda) z z^T
    //   high:    M + phi I + sum over indices [neg+1, n] (-2 phi or -phi - lambda) z z^T
    // and the cheapest is taken. With many vectors a full
    // divide-and-conquer solve on the same tridiagonal form is cheaper.
    const lapack_int direct = neg + pos, low = n - pos, high = n - neg;
    const lapack_int fewest = std::min({direct, low, high});
    Matrix all;
    if (n < detail::kPartialEigenMinOrder ||
        fewest > static_cast<lapack_int>(detail::kFullEigenFraction * n)) {
      all = detail::all_eigenvectors(tri, m);
    }
    auto vectors = [&](lapack_int lo, lapack_int hi) {
      return all.size() ? Matrix(all.middleCols(lo - 1, hi - lo + 1))
                        : detail::selected_eigenvectors(tri, m, lo, hi);
    };
    auto add = [&](Matrix& out, lapack_int lo, lapack_int hi, auto&& coeff) {
      const Matrix z = vectors(lo, hi);
      Vector c(hi - lo + 1);
      for (lapack_int i = lo; i <= hi; ++i) c(i - lo) = coeff(i, w(i - 1));
      out.noalias() += z * c.asDiagonal() * z.transpose();
    };

    Matrix out;
    if (all.size() || fewest == direct) {
      out = Matrix::Zero(n, n);
      auto shrink = [phi](lapack_int, double lam) { return lam > 0 ? lam - phi : lam + phi; };
      if (neg > 0) add(out, 1, neg, shrink);
      if (pos > 0) add(out, n - pos + 1, n, shrink);
    } else if (fewest == low) {
      out = m;
      out.diagonal().array() -= phi;
      add(out, 1, low, [&](lapack_int i, double lam) { return i <= neg ? 2 * phi : phi - lam; });
    } else {
      out = m;
      out.diagonal().array() += phi;
      add(out, neg + 1, n,
          [&](lapack_int i, double lam) { return i > n - pos ? -2 * phi : -phi - lam; });
    }
    return (0.5 * (out + out.transpose())).eval();
  }

  const auto rows = static_cast<lapack_int>(m.rows()), cols = static_cast<lapack_int>(m.cols());
  const lapack_int r = std::min(rows, cols);
  Matrix work = m, u(rows, r), vt(r, cols);
  Vector s(r);
  detail::check_info(LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, work.data(),
                                    rows, s.data(), u.data(), rows, vt.data(), r),
                     "dgesdd", m);
  lapack_int keep = 0;
  while (keep < r && s(keep) > phi) ++keep;
  if (keep == 0) return Matrix::Zero(rows, cols);
  const Vector shrunk = (s.head(keep).array() - phi).matrix();
  return u.leftCols(keep) * shrunk.asDiagonal() * vt.topRows(keep);
}

inline double nuclear_norm(const Matrix& a) { return singular_values(a).sum(); }

struct SingularTriplet {
  double sigma = 0.0;
  Vector u;
  Vector v;
};

/// Leading singular triplet from a full SVD. The sign is fixed so that u has
/// a nonnegative entry sum.
inline SingularTriplet top_singular_triplet(const Matrix& a) {
  detail::require_finite(a, "top_singular_triplet");
  const auto rows = static_cast<lapack_int>(a.rows()), cols = static_cast<lapack_int>(a.cols());
  const lapack_int r = std::min(rows, cols);
  Matrix work = a, u(rows, r), vt(r, cols);
  Vector s(r);
  detail::check_info(LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, work.data(),
                                    rows, s.data(), u.data(), rows, vt.data(), r),
                     "dgesdd", a);
  SingularTriplet t{s(0), u.col(0), vt.row(0).transpose()};
  if (t.u.sum() < 0) {
    t.u = -t.u;
    t.v = -t.v;
  }
  return t;
}

}  // namespace dks

#endif  // DKS_LINALG_HPP_
