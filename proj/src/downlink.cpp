// Copyright 2026 The riscf Authors
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

#include "riscf/downlink.hpp"

#include <cmath>
#include <stdexcept>

#include "riscf/kernels.hpp"
#include "riscf/parallel.hpp"

namespace riscf {

PowerControl default_eta(const RealMatrix& gamma) {
  PowerControl pc{RealMatrix(gamma.rows(), gamma.cols())};
  for (std::size_t m = 0; m < gamma.rows(); ++m) {
    double total = 0.0;
    for (std::size_t k = 0; k < gamma.cols(); ++k) {
      if (!(gamma(m, k) > 0.0)) throw std::invalid_argument("default_eta: gamma must be > 0");
      total += gamma(m, k);
    }
    const double eta = 1.0 / total;
    for (std::size_t k = 0; k < gamma.cols(); ++k) pc.eta(m, k) = eta;
  }
  return pc;
}

double power_constraint_value(const PowerControl& pc, const RealMatrix& gamma, std::size_t m) {
  return kernels::dot(pc.eta.row(m), gamma.row(m));
}

double SinrTerms::effective_noise(std::size_t k) const {
  double acc = uncertainty[k];
  for (std::size_t kp = 0; kp < users(); ++kp)
    if (kp != k) acc += interference(k, kp);
  return acc + 1.0;
}

SinrTerms sinr_terms(const RealMatrix& gamma, const RealMatrix& rho, const PowerControl& pc,
                     double p_d) {
  const std::size_t M = gamma.rows();
  const std::size_t K = gamma.cols();
  if (rho.rows() != M || rho.cols() != K || pc.eta.rows() != M || pc.eta.cols() != K)
    throw std::invalid_argument("sinr_terms: shape mismatch");

  // Column-major copies so every per-user sum over APs is a contiguous dot.
  const RealMatrix rho_t = rho.transposed();
  RealMatrix root_eta_gamma(K, M);
  RealMatrix eta_gamma(K, M);
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t k = 0; k < K; ++k) {
      root_eta_gamma(k, m) = std::sqrt(pc.eta(m, k)) * gamma(m, k);
      eta_gamma(k, m) = pc.eta(m, k) * gamma(m, k);
    }

  SinrTerms t{std::vector<double>(K), std::vector<double>(K), RealMatrix(K, K)};
  const std::vector<double> ones(M, 1.0);
  const double root_pd = std::sqrt(p_d);
  for (std::size_t k = 0; k < K; ++k) {
    t.desired[k] = root_pd * kernels::dot(root_eta_gamma.row(k), ones);
    for (std::size_t kp = 0; kp < K; ++kp)
      t.interference(k, kp) = p_d * kernels::dot(eta_gamma.row(kp), rho_t.row(k));
    t.uncertainty[k] = t.interference(k, k);
  }
  return t;
}

std::vector<double> closed_form_rate(const SinrTerms& terms) {
  std::vector<double> r(terms.users());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double d = terms.desired[k];
    r[k] = std::log2(1.0 + d * d / terms.effective_noise(k));
  }
  return r;
}

std::vector<double> single_fraction_denominator(const RealMatrix& gamma, const RealMatrix& rho,
                                                const PowerControl& pc, double p_d) {
  const std::size_t M = gamma.rows();
  const std::size_t K = gamma.cols();
  std::vector<double> den(K);
  for (std::size_t k = 0; k < K; ++k) {
    double acc = 0.0;
    for (std::size_t kp = 0; kp < K; ++kp)
      for (std::size_t m = 0; m < M; ++m) acc += pc.eta(m, kp) * gamma(m, kp) * rho(m, k);
    den[k] = p_d * acc + 1.0;
  }
  return den;
}

std::vector<double> closed_form_rate_direct(const RealMatrix& gamma, const RealMatrix& rho,
                                            const PowerControl& pc, double p_d) {
  const std::size_t M = gamma.rows();
  const std::size_t K = gamma.cols();
  const std::vector<double> den = single_fraction_denominator(gamma, rho, pc, p_d);
  std::vector<double> r(K);
  for (std::size_t k = 0; k < K; ++k) {
    double s = 0.0;
    for (std::size_t m = 0; m < M; ++m) s += std::sqrt(pc.eta(m, k)) * gamma(m, k);
    r[k] = std::log2(1.0 + p_d * s * s / den[k]);
  }
  return r;
}

double prelog(std::size_t tau_c, std::size_t tau) {
  if (tau_c >= tau) throw std::invalid_argument("prelog: pilot length must be < coherence length");
  return (1.0 - static_cast<double>(tau_c) / static_cast<double>(tau)) / 2.0;
}

double sum_rate(std::span<const double> rates, std::size_t tau_c, std::size_t tau) {
  double total = 0.0;
  for (double r : rates) total += r;
  return prelog(tau_c, tau) * total;
}

double per_user_throughput(double rate, double bandwidth_hz, std::size_t tau_c, std::size_t tau) {
  if (!(bandwidth_hz >= 0.0)) throw std::invalid_argument("per_user_throughput: bandwidth < 0");
  return bandwidth_hz * prelog(tau_c, tau) * rate;
}

std::vector<cdouble> transmit_signal(const ComplexMatrix& g_hat, const PowerControl& pc,
                                     double p_d, std::span<const cdouble> symbols) {
  if (symbols.size() != g_hat.cols()) throw std::invalid_argument("transmit_signal: symbol count");
  std::vector<cdouble> x(g_hat.rows());
  const double root_pd = std::sqrt(p_d);
  for (std::size_t m = 0; m < g_hat.rows(); ++m) {
    cdouble acc{};
    for (std::size_t k = 0; k < g_hat.cols(); ++k)
      acc += std::sqrt(pc.eta(m, k)) * std::conj(g_hat(m, k)) * symbols[k];
    x[m] = root_pd * acc;
  }
  return x;
}

ComplexMatrix beamforming_gains(const ComplexMatrix& g, const ComplexMatrix& g_hat,
                                const PowerControl& pc) {
  const std::size_t M = g.rows();
  const std::size_t K = g.cols();
  if (g_hat.rows() != M || g_hat.cols() != K)
    throw std::invalid_argument("beamforming_gains: shape mismatch");
  // User-major layouts: channel_t row k = g[.][k], precoder_t row k' = eta^1/2 g_hat[.][k'].
  ComplexMatrix channel_t(K, M);
  ComplexMatrix precoder_t(K, M);
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t k = 0; k < K; ++k) {
      channel_t(k, m) = g(m, k);
      precoder_t(k, m) = std::sqrt(pc.eta(m, k)) * g_hat(m, k);
    }
  const auto& kern = kernels::active();
  ComplexMatrix gains(K, K);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t kp = 0; kp < K; ++kp)
      gains(k, kp) = kern.dotc(precoder_t.row(kp).data(), channel_t.row(k).data(), M);
  return gains;
}

std::vector<double> instantaneous_rates(const ComplexMatrix& gains, double p_d) {
  const std::size_t K = gains.rows();
  std::vector<double> r(K);
  for (std::size_t k = 0; k < K; ++k) {
    double interference = 0.0;
    for (std::size_t kp = 0; kp < K; ++kp)
      if (kp != k) interference += std::norm(gains(k, kp));
    r[k] = std::log2(1.0 + p_d * std::norm(gains(k, k)) / (p_d * interference + 1.0));
  }
  return r;
}

double McRate::user_average() const {
  if (mean.empty()) return 0.0;
  double s = 0.0;
  for (double v : mean) s += v;
  return s / static_cast<double>(mean.size());
}

void RateAccumulator::add(std::span<const double> rates) {
  if (sum_.empty()) {
    sum_.assign(rates.size(), 0.0);
    sum_sq_.assign(rates.size(), 0.0);
  }
  double avg = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    sum_[k] += rates[k];
    sum_sq_[k] += rates[k] * rates[k];
    avg += rates[k];
  }
  avg /= static_cast<double>(rates.size());
  avg_sum_ += avg;
  avg_sum_sq_ += avg * avg;
  ++count_;
}

void RateAccumulator::merge(const RateAccumulator& other) {
  if (other.count_ == 0) return;
  if (sum_.empty()) {
    sum_.assign(other.sum_.size(), 0.0);
    sum_sq_.assign(other.sum_.size(), 0.0);
  }
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    sum_[k] += other.sum_[k];
    sum_sq_[k] += other.sum_sq_[k];
  }
  avg_sum_ += other.avg_sum_;
  avg_sum_sq_ += other.avg_sum_sq_;
  count_ += other.count_;
}

namespace {
double stderr_of(double sum, double sum_sq, std::size_t n) {
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  const double var = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
  return std::sqrt(var / nn);
}
}  // namespace

McRate RateAccumulator::result() const {
  McRate out;
  out.draws = count_;
  out.mean.resize(sum_.size());
  out.stderr_.resize(sum_.size());
  const double n = static_cast<double>(count_);
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    out.mean[k] = count_ ? sum_[k] / n : 0.0;
    out.stderr_[k] = stderr_of(sum_[k], sum_sq_[k], count_);
  }
  out.user_average_stderr = stderr_of(avg_sum_, avg_sum_sq_, count_);
  return out;
}

McRate mc_rate(const ChannelDrawFn& draw, const PowerControl& pc, double p_d, std::size_t draws,
               std::size_t threads) {
  if (draws == 0) throw std::invalid_argument("mc_rate: at least one draw is required");
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (draws + kBlock - 1) / kBlock;
  std::vector<RateAccumulator> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    RateAccumulator acc;
    const std::size_t end = std::min(draws, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const ChannelPair ch = draw(i);
      acc.add(instantaneous_rates(beamforming_gains(ch.g, ch.g_hat, pc), p_d));
    }
    partial[b] = std::move(acc);
  });
  RateAccumulator total;
  for (const auto& p : partial) total.merge(p);
  return total.result();
}

}  // namespace riscf
