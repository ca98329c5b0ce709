#include "skewdiff/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skewdiff/errors.hpp"
#include "skewdiff/rng.hpp"

namespace skewdiff {
namespace {

class ZeroField final : public CoefficientField {
 public:
  explicit ZeroField(std::size_t m) : m_(m) {}
  std::size_t tangent_dim() const override { return m_; }
  void alpha(std::span<const double>, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
  }
  void beta_tilde(std::span<const double>, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
  }

 private:
  std::size_t m_;
};

class ConstantField final : public CoefficientField {
 public:
  ConstantField(std::size_t m, double alpha, double beta) : m_(m), alpha_(alpha), beta_(beta) {}
  std::size_t tangent_dim() const override { return m_; }
  void alpha(std::span<const double>, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), alpha_);
  }
  void beta_tilde(std::span<const double>, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) out[i * m_ + i] = beta_;
  }

 private:
  std::size_t m_;
  double alpha_;
  double beta_;
};

// α_i = a sin(f s_i), β̃ = b (1 + cos(f s_0)/2) I.
class SinusoidalField final : public CoefficientField {
 public:
  SinusoidalField(std::size_t m, const ProfileParams& p) : m_(m), p_(p) {}
  std::size_t tangent_dim() const override { return m_; }
  void alpha(std::span<const double> s, std::span<double> out) const override {
    for (std::size_t i = 0; i < m_; ++i) out[i] = p_.alpha * std::sin(p_.frequency * s[i]);
  }
  void beta_tilde(std::span<const double> s, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    const double diag = p_.beta * (1.0 + 0.5 * std::cos(p_.frequency * s[0]));
    for (std::size_t i = 0; i < m_; ++i) out[i * m_ + i] = diag;
  }

 private:
  std::size_t m_;
  ProfileParams p_;
};

// α_i = a (1/2 + sin(f s_{i+1 mod m})),
// β̃ = b [(1 + 0.4 cos(f s_0)) I + 0.2 sin(f s_{m-1}) (J - I)/max(1, m-1)].
// Diagonal >= 0.6b and off-diagonal row sums <= 0.2b, so β̃ is PSD.
class MixedField final : public CoefficientField {
 public:
  MixedField(std::size_t m, const ProfileParams& p) : m_(m), p_(p) {}
  std::size_t tangent_dim() const override { return m_; }
  void alpha(std::span<const double> s, std::span<double> out) const override {
    for (std::size_t i = 0; i < m_; ++i) {
      out[i] = p_.alpha * (0.5 + std::sin(p_.frequency * s[(i + 1) % m_]));
    }
  }
  void beta_tilde(std::span<const double> s, std::span<double> out) const override {
    const double diag = p_.beta * (1.0 + 0.4 * std::cos(p_.frequency * s[0]));
    const double off = p_.beta * 0.2 * std::sin(p_.frequency * s[m_ - 1]) /
                       static_cast<double>(std::max<std::size_t>(1, m_ - 1));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) out[i * m_ + j] = i == j ? diag : off;
    }
  }

 private:
  std::size_t m_;
  ProfileParams p_;
};

double positive_or_one(double k) { return k > 0.0 ? k : 1.0; }

}  // namespace

Eigen::VectorXd GdiffCoefficients::alpha(const Eigen::VectorXd& s) const {
  Eigen::VectorXd out(s.size());
  field->alpha(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())),
               std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

Eigen::MatrixXd GdiffCoefficients::beta_tilde(const Eigen::VectorXd& s) const {
  const auto m = s.size();
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(m, m);
  field->beta_tilde(std::span<const double>(s.data(), static_cast<std::size_t>(m)),
                    std::span<double>(out.data(), static_cast<std::size_t>(m * m)));
  return out;
}

GdiffCoefficients make_profile(std::string_view name, std::size_t dim,
                               const ProfileParams& params, double q) {
  if (dim < 2) throw std::invalid_argument("generalized diffusion needs d >= 2");
  if (!(std::abs(q) <= 1.0)) throw std::invalid_argument("skewing parameter needs |q| <= 1");
  if (params.beta < 0.0) throw std::invalid_argument("profile beta must be nonnegative");
  const std::size_t m = dim - 1;
  const double rm = static_cast<double>(m);
  const double a = std::abs(params.alpha);
  const double b = params.beta;
  const double f2 = params.frequency * params.frequency;

  GdiffCoefficients c;
  c.q = q;
  c.profile = std::string(name);
  if (name == "zero") {
    c.field = std::make_shared<ZeroField>(m);
    c.bound_k = 1.0;
  } else if (name == "constant") {
    c.field = std::make_shared<ConstantField>(m, params.alpha, b);
    c.bound_k = positive_or_one((a + b) * std::sqrt(rm));
  } else if (name == "sinusoidal") {
    c.field = std::make_shared<SinusoidalField>(m, params);
    const double sup = (a + 1.5 * b) * std::sqrt(rm);
    const double lip = a * a * f2 + 0.25 * rm * b * b * f2;
    c.bound_k = positive_or_one(std::max(sup, lip));
  } else if (name == "mixed") {
    c.field = std::make_shared<MixedField>(m, params);
    const double spread = static_cast<double>(std::max<std::size_t>(1, m - 1));
    const double off_share = rm * (rm - 1.0) / (spread * spread);
    const double sup = 1.5 * a * std::sqrt(rm) + b * std::sqrt(1.96 * rm + 0.04 * off_share);
    const double lip = a * a * f2 + b * b * f2 * (0.16 * rm + 0.04 * off_share);
    c.bound_k = positive_or_one(std::max(sup, lip));
  } else {
    throw std::invalid_argument("unknown coefficient profile: " + std::string(name));
  }
  return c;
}

std::vector<std::string> profile_names() { return {"zero", "constant", "sinusoidal", "mixed"}; }

CoefficientReport validate_coefficients(const GdiffCoefficients& c,
                                        std::span<const Eigen::VectorXd> probes,
                                        std::size_t max_pairs) {
  if (probes.empty()) throw std::invalid_argument("coefficient validation needs probes");
  const std::size_t m = c.tangent_dim();
  std::vector<Eigen::VectorXd> alphas;
  std::vector<Eigen::MatrixXd> betas;
  alphas.reserve(probes.size());
  betas.reserve(probes.size());

  CoefficientReport report;
  for (const auto& s : probes) {
    if (static_cast<std::size_t>(s.size()) != m) {
      throw std::invalid_argument("probe dimension does not match the coefficients");
    }
    alphas.push_back(c.alpha(s));
    betas.push_back(c.beta_tilde(s));
    const Eigen::MatrixXd& beta = betas.back();
    const double scale = std::max(1.0, beta.norm());
    if ((beta - beta.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw InvalidCoefficient("beta_tilde is not symmetric at a probe point");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(beta, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
      throw InvalidCoefficient("beta_tilde has a negative eigenvalue at a probe point");
    }
    report.sup_value = std::max(report.sup_value, alphas.back().norm() + beta.norm());
  }

  for (std::size_t i = 0; i < probes.size() && report.pairs_checked < max_pairs; ++i) {
    for (std::size_t j = i + 1; j < probes.size() && report.pairs_checked < max_pairs; ++j) {
      ++report.pairs_checked;
      const double dist2 = (probes[i] - probes[j]).squaredNorm();
      if (dist2 == 0.0) continue;
      const double num = (alphas[i] - alphas[j]).squaredNorm() +
                         (betas[i] - betas[j]).squaredNorm();
      report.max_quotient = std::max(report.max_quotient, num / dist2);
    }
  }
  // K is often attained exactly, so allow for rounding in the probe norms.
  const double limit = c.bound_k * (1.0 + 1e-12);
  report.pass = report.sup_value <= limit && report.max_quotient <= limit;
  return report;
}

std::vector<Eigen::VectorXd> make_probe_set(std::size_t m, std::size_t count,
                                            std::uint64_t seed, double radius) {
  static constexpr double kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  const std::size_t lattice = count / 2;
  for (std::size_t k = 0; k < lattice; ++k) {
    Eigen::VectorXd p(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
      const double step = std::sqrt(kPrimes[j % std::size(kPrimes)]);
      double frac = 0.5 + static_cast<double>(k) * step;
      frac -= std::floor(frac);
      p(static_cast<Eigen::Index>(j)) = radius * (2.0 * frac - 1.0);
    }
    out.push_back(std::move(p));
  }
  auto stream = derive_stream(seed, 0);
  while (out.size() < count) {
    Eigen::VectorXd p(static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
      p(static_cast<Eigen::Index>(j)) = radius * (2.0 * stream.uniform() - 1.0);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace skewdiff
