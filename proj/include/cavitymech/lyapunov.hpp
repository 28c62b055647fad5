// Copyright 2026 The cavitymech Authors
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

#pragma once

#include <Eigen/Dense>

#include "cavitymech/types.hpp"

namespace cavitymech {

// Solves the continuous-time Lyapunov equation A V + V A^T + Q = 0 for
// symmetric Q by LU on the Kronecker-vectorized system
// (I (x) A + A (x) I) vec(V) = -vec(Q). Intended for the small matrices of
// the covariance dynamics (2N <= 6); stiff rate ratios make long double the
// scalar of choice there.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> solve_lyapunov(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& Q) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = A.rows();
  if (A.cols() != n || Q.rows() != n || Q.cols() != n)
    throw ConfigError("solve_lyapunov: dimension mismatch");

  Mat K = Mat::Zero(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    K.block(j * n, j * n, n, n) = A;  // I (x) A
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index r = 0; r < n; ++r)
        K(r + n * i, r + n * j) += A(i, j);  // A (x) I

  Vec q(n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) q(i + n * j) = -Q(i, j);

  Eigen::PartialPivLU<Mat> lu(K);
  Vec v = lu.solve(q);

  Mat V(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) V(i, j) = v(i + n * j);
  return Scalar(0.5) * (V + V.transpose().eval());
}

}  // namespace cavitymech
