// Copyright 2026 The qarrival Authors
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

#include "qarrival/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qarrival/numerics.hpp"
#include "qarrival/rng.hpp"

namespace qarrival::models {

PreparedSystem two_level(double omega, double gamma, double hbar) {
  if (!(omega > 0.0) || !(gamma > 0.0))
    throw NonpositiveParameter("two_level: omega and gamma must be positive");
  Matrix h(2, 2), d(2, 2);
  h << 0.0, hbar / 2.0 * omega, hbar / 2.0 * omega, 0.0;
  d << 0.0, 0.0, 0.0, hbar / 2.0 * gamma;
  Vector psi(2);
  psi << 1.0, 0.0;
  return {AbsorptiveSystem(std::move(h), std::move(d), hbar),
          linops::StateVector(std::move(psi))};
}

AbsorptiveSystem constant_absorber(const Matrix& hamiltonian, double alpha,
                                   double hbar) {
  if (!(alpha > 0.0))
    throw NonpositiveParameter("constant_absorber: alpha must be positive");
  Matrix d = hbar * alpha * Matrix::Identity(hamiltonian.rows(), hamiltonian.cols());
  return AbsorptiveSystem(hamiltonian, std::move(d), hbar);
}

PreparedSystem ion_effective(const IonScheme& scheme, double hbar) {
  if (!(scheme.omega12 > 0.0) || !(scheme.omega23 > 0.0) ||
      !(scheme.gamma34 > 0.0) || !(scheme.q > 0.0) || scheme.q > 1.0)
    throw NonpositiveParameter("ion_effective: parameters must be positive "
                               "with q in (0, 1]");
  if (std::abs(scheme.omega23) > scheme.gamma34 / 5.0)
    throw RegimeViolation(
        "ion_effective: |omega23| must stay below gamma34/5 for the "
        "adiabatic elimination of level 3 to hold");
  return two_level(scheme.omega12, scheme.effective_gamma(), hbar);
}

PreparedSystem random_system(int dim, int kernel_dim, std::uint64_t seed) {
  if (dim < 2 || dim > 16)
    throw DimensionMismatch("random_system: dim must be in [2, 16]");
  if (kernel_dim < 1 || kernel_dim >= dim)
    throw DimensionMismatch("random_system: kernel_dim must be in [1, dim-1]");

  auto normal_matrix = [](SplitMix64& g, int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        const auto [re, im] = normal_pair(g);
        m(i, j) = Complex(re, im);
      }
    return m;
  };

  SplitMix64 g_h = SplitMix64::substream(seed, 0);
  Matrix a = normal_matrix(g_h, dim, dim);
  Matrix h = 0.5 * (a + Matrix(a.adjoint()));

  SplitMix64 g_d = SplitMix64::substream(seed, 1);
  const int rank = dim - kernel_dim;
  Matrix vecs = normal_matrix(g_d, dim, rank);
  Matrix d = Matrix::Zero(dim, dim);
  for (int r = 0; r < rank; ++r) {
    Vector v = vecs.col(r);
    v /= v.norm();
    const double w = 2.0 * uniform01(g_d);
    d += w * (v * v.adjoint());
  }
  d = 0.5 * (d + Matrix(d.adjoint()));

  // psi: random direction projected onto ker(D) = orthogonal complement of
  // the outer-product span
  SplitMix64 g_psi = SplitMix64::substream(seed, 2);
  const Matrix q = Eigen::HouseholderQR<Matrix>(vecs)
                       .householderQ() *
                   Matrix::Identity(dim, rank);
  Vector x = normal_matrix(g_psi, dim, 1).col(0);
  x -= q * (q.adjoint() * x);
  return {AbsorptiveSystem(std::move(h), std::move(d), 1.0),
          linops::StateVector::normalized(std::move(x))};
}

namespace {

// Fast survival evaluator: eigen-expansion pair sums when available,
// otherwise direct propagation.
std::function<double(double)> survival_fn(const AbsorptiveSystem& sys,
                                          const linops::StateVector& psi) {
  if (const auto& fact = sys.factorization()) {
    const auto n = sys.dim();
    const Vector c = fact->inverse_vectors * psi.amplitudes();
    const Matrix gram = fact->right_vectors.adjoint() * fact->right_vectors;
    std::vector<Complex> coeff;
    std::vector<Complex> rate;
    coeff.reserve(n * n);
    rate.reserve(n * n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) {
        coeff.push_back(std::conj(c(j)) * c(k) * gram(j, k));
        rate.push_back(Complex(0.0, 1.0) *
                       (std::conj(fact->eigenvalues(j)) - fact->eigenvalues(k)) /
                       sys.hbar());
      }
    return [coeff = std::move(coeff), rate = std::move(rate)](double t) {
      double s = 0.0;
      for (std::size_t i = 0; i < coeff.size(); ++i)
        s += (coeff[i] * std::exp(rate[i] * t)).real();
      return s;
    };
  }
  return [&sys, &psi](double t) { return survival(sys, psi, t); };
}

constexpr int kStreams = 16;

}  // namespace

SampleSet quantum_jump_sample(const AbsorptiveSystem& sys,
                              const linops::StateVector& psi, long long n,
                              double q, std::uint64_t seed, double t_max) {
  if (n < 1) throw NonpositiveParameter("quantum_jump_sample: n must be >= 1");
  if (!(q > 0.0) || q > 1.0)
    throw NonpositiveParameter("quantum_jump_sample: q must be in (0, 1]");
  if (!(t_max > 0.0))
    throw NonpositiveParameter("quantum_jump_sample: t_max must be positive");

  const double p = absorption_probability(sys, psi);
  const auto s_of_t = survival_fn(sys, psi);
  const double s_end = s_of_t(t_max);
  if (s_end - (1.0 - p) > 1e-6)
    throw HorizonTooSmall(
        "quantum_jump_sample: survival mass " + std::to_string(s_end - (1.0 - p)) +
        " remains beyond t_max; increase t_max to about " +
        std::to_string(8.0 * t_max));

  SampleSet out;
  out.seed = seed;
  out.n_requested = n;
  const double click_threshold = 1.0 - s_end;
  for (int stream = 0; stream < kStreams; ++stream) {
    const long long count = n / kStreams + (stream < n % kStreams ? 1 : 0);
    SplitMix64 g = SplitMix64::substream(seed, stream);
    for (long long i = 0; i < count; ++i) {
      const double u = uniform01(g);
      if (u > click_threshold) {
        ++out.no_click_count;
        continue;
      }
      const double t_arrival = numerics::brent_root(
          [&](double t) { return s_of_t(t) - (1.0 - u); }, 0.0, t_max,
          1e-13 * t_max);
      if (uniform01(g) <= q)
        out.arrival_times.push_back(t_arrival);
      else
        ++out.no_click_count;
    }
  }
  std::sort(out.arrival_times.begin(), out.arrival_times.end());
  return out;
}

KsResult ks_against_density(const AbsorptiveSystem& sys,
                            const linops::StateVector& psi,
                            const SampleSet& samples, double alpha,
                            long long min_clicks) {
  const double p = absorption_probability(sys, psi);
  const auto s_of_t = survival_fn(sys, psi);

  KsResult result;
  result.n_clicks = static_cast<long long>(samples.arrival_times.size());
  const double m = static_cast<double>(result.n_clicks);
  for (std::size_t i = 0; i < samples.arrival_times.size(); ++i) {
    const double f = (1.0 - s_of_t(samples.arrival_times[i])) / p;
    const double lo = static_cast<double>(i) / m;
    const double hi = static_cast<double>(i + 1) / m;
    result.statistic = std::max({result.statistic, std::abs(f - lo), std::abs(hi - f)});
  }
  result.critical = std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(m);
  if (result.n_clicks < min_clicks)
    result.verdict = KsResult::Verdict::inconclusive;
  else
    result.verdict = result.statistic <= result.critical
                         ? KsResult::Verdict::pass
                         : KsResult::Verdict::fail;
  return result;
}

}  // namespace qarrival::models
