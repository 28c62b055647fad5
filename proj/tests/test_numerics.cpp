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

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <doctest.h>

#include "cavitymech/ode.hpp"
#include "cavitymech/lyapunov.hpp"
#include "cavitymech/roots.hpp"

using namespace cavitymech;

TEST_CASE("adaptive integrator reproduces exponential decay") {
  Eigen::VectorXd y0(1);
  y0 << 1.0;
  auto rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy = -y;
  };
  const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0};
  const auto out = integrate(rhs, y0, grid);
  REQUIRE(out.size() == grid.size());
  CHECK(out[0](0) == 1.0);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(out[i](0) == doctest::Approx(std::exp(-grid[i])).epsilon(1e-9));
}

TEST_CASE("adaptive integrator conserves harmonic-oscillator energy") {
  Eigen::VectorXd y0(2);
  y0 << 1.0, 0.0;
  const double omega = 7.0;
  auto rhs = [&](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy.resize(2);
    dy << omega * y(1), -omega * y(0);
  };
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.5);
  const auto out = integrate(rhs, y0, grid);
  for (const auto& y : out)
    CHECK(y.squaredNorm() == doctest::Approx(1.0).epsilon(1e-9));
  // Exact phase at the final grid point.
  CHECK(out.back()(0) == doctest::Approx(std::cos(omega * 10.0)).epsilon(1e-7));
}

TEST_CASE("integrator works on complex matrix states") {
  using Mat = Eigen::MatrixXcd;
  Mat m0 = Mat::Identity(2, 2);
  const std::complex<double> lambda(0.0, 3.0);
  auto rhs = [&](double, const Mat& m, Mat& dm) { dm = lambda * m; };
  const auto out = integrate(rhs, m0, {0.0, 1.0});
  const std::complex<double> expect = std::exp(lambda);
  CHECK(std::abs(out.back()(0, 0) - expect) < 1e-8);
  CHECK(std::abs(out.back()(0, 1)) < 1e-12);
}

TEST_CASE("integrator accepts an on-accept hook that adjusts the state") {
  Eigen::VectorXd y0(2);
  y0 << 1.0, 1.0;
  auto rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy = -y;
  };
  int calls = 0;
  auto on_accept = [&](double, Eigen::VectorXd& y) {
    ++calls;
    y(1) = y(0);  // enforce a constraint
  };
  const auto out = integrate(rhs, y0, {0.0, 1.0}, OdeOptions{}, on_accept);
  CHECK(calls > 0);
  CHECK(out.back()(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(out.back()(1) == out.back()(0));
}

TEST_CASE("integrator rejects bad grids") {
  Eigen::VectorXd y0(1);
  y0 << 1.0;
  auto rhs = [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    dy = -y;
  };
  CHECK_THROWS_AS(integrate(rhs, y0, {}), ConfigError);
  CHECK_THROWS_AS(integrate(rhs, y0, {0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(integrate(rhs, y0, {1.0, 0.5}), ConfigError);
}

TEST_CASE("lyapunov solve matches the scalar closed form") {
  Eigen::MatrixXd A(1, 1), Q(1, 1);
  A << -3.0;
  Q << 5.0;
  const auto V = solve_lyapunov<double>(A, Q);
  CHECK(V(0, 0) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("lyapunov residual is tiny for a stiff stable system") {
  Eigen::MatrixXd A(4, 4);
  // Two damped rotators with rates differing by five decades.
  A << -1e-2, 6.0, 0.3, 0.0,
       -6.0, -1e-2, 0.0, 0.1,
       0.2, 0.0, -1e3, 40.0,
       0.0, 0.4, -40.0, -1e3;
  Eigen::MatrixXd Q(4, 4);
  Q.setZero();
  Q.diagonal() << 2.0, 2.0, 30.0, 30.0;
  const auto V = solve_lyapunov<double>(A, Q);
  const double resid = (A * V + V * A.transpose() + Q).norm();
  CHECK(resid <= 1e-10 * Q.norm());
  CHECK((V - V.transpose()).norm() == 0.0);
}

TEST_CASE("lyapunov rejects mismatched shapes") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(solve_lyapunov<double>(A, Q), ConfigError);
}

TEST_CASE("brent root finds cos zero") {
  const double root = brent_root([](double x) { return std::cos(x); }, 1.0, 2.0);
  CHECK(root == doctest::Approx(std::acos(0.0)).epsilon(1e-12));
}

TEST_CASE("brent root requires a sign change") {
  CHECK_THROWS_AS(
      brent_root([](double x) { return 1.0 + x * x; }, -1.0, 1.0),
      NumericalError);
}

TEST_CASE("golden section finds a quadratic minimum") {
  auto f = [](double x) { return (x - 2.0) * (x - 2.0) + 0.25; };
  const auto [x, fx] = golden_section_min(f, 0.0, 5.0);
  CHECK(x == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(fx == doctest::Approx(0.25).epsilon(1e-12));
}
