#include "ebk/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ebk {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_binom(long long d, long long e) {
  return std::lgamma(static_cast<double>(d) + 1.0) - std::lgamma(static_cast<double>(e) + 1.0) -
         std::lgamma(static_cast<double>(d - e) + 1.0);
}
}  // namespace

double pointwise_norm_sq(const SectionSpace& s, const Eigen::VectorXcd& coeff, const Point& p) {
  if (coeff.size() != s.dim()) throw std::invalid_argument("pointwise_norm_sq: size mismatch");
  Eigen::VectorXcd mu = s.monomial_values(p);
  std::complex<double> v = (coeff.array() * mu.array()).sum();
  return std::norm(v);
}

double density(const SectionSpace& s, const IsotypicComponent& comp, const Point& p) {
  if (comp.basis.rows() != s.dim()) throw std::invalid_argument("density: basis size mismatch");
  if (comp.basis.cols() == 0) return 0.0;
  Eigen::VectorXcd mu = s.monomial_values(p);
  Eigen::VectorXcd vals = comp.basis.transpose() * mu;
  return vals.squaredNorm();
}

double ladder_density(const SectionSpace& s, const Weight& omega, const Point& p) {
  double acc = 0.0;
  for (long long l : ladder_multiples(s, omega)) {
    Weight lw = omega;
    for (auto& c : lw.comp) c *= l;
    IsotypicComponent comp = isotypic_component(s, lw);
    acc += density(s, comp, p);
  }
  return acc;
}

std::complex<double> two_point_kernel(const SectionSpace& s, const IsotypicComponent& comp,
                                      const Point& p, const Point& q) {
  if (comp.basis.rows() != s.dim()) throw std::invalid_argument("two_point_kernel: size mismatch");
  if (comp.basis.cols() == 0) return 0.0;
  Eigen::VectorXcd vp = comp.basis.transpose() * s.monomial_values(p);
  Eigen::VectorXcd vq = comp.basis.transpose() * s.monomial_values(q);
  // sum_j s_j(p) conj(s_j(q))
  return vq.dot(vp);
}

double integrate_density(const SectionSpace& s, const IsotypicComponent& comp, int order) {
  if (comp.basis.cols() == 0) return 0.0;
  Eigen::MatrixXcd gq = quadrature_gram_oracle(s, order);
  Eigen::MatrixXcd m = comp.basis.adjoint() * gq * comp.basis;
  return m.trace().real();
}

double abelian_density_log(const Model& m, const ActionSpec& a, const Weight& omega, long long k,
                           const std::vector<double>& t) {
  if (static_cast<int>(t.size()) != m.factors)
    throw std::invalid_argument("abelian_density_log: height count mismatch");
  for (double tf : t)
    if (tf < 0.0 || tf > 1.0) throw std::invalid_argument("abelian_density_log: t outside [0,1]");
  std::vector<std::vector<long long>> exps = abelian_component_exponents(m, a, omega, k);
  if (exps.empty()) return kNegInf;
  std::vector<double> terms;
  terms.reserve(exps.size());
  for (const auto& e : exps) {
    double lt = 0.0;
    bool dead = false;
    for (int f = 0; f < m.factors && !dead; ++f) {
      long long d = m.degree(f, k);
      long long ef = e[static_cast<size_t>(f)];
      double tf = t[static_cast<size_t>(f)];
      lt += std::log(static_cast<double>(d + 1)) + log_binom(d, ef);
      if (ef > 0) {
        if (tf == 0.0) dead = true;
        else lt += static_cast<double>(ef) * std::log(tf);
      }
      if (d - ef > 0) {
        if (tf == 1.0) dead = true;
        else lt += static_cast<double>(d - ef) * std::log(1.0 - tf);
      }
    }
    if (!dead) terms.push_back(lt);
  }
  if (terms.empty()) return kNegInf;
  double mx = terms[0];
  for (double v : terms) mx = std::max(mx, v);
  double acc = 0.0;
  for (double v : terms) acc += std::exp(v - mx);
  return mx + std::log(acc);
}

double abelian_ladder_density_log(const Model& m, const ActionSpec& a, const Weight& omega,
                                  long long k, const std::vector<double>& t) {
  a.validate_against(m);
  if (!a.group.abelian())
    throw std::invalid_argument("abelian_ladder_density_log: abelian actions only");
  validate_weight(a.group, omega);
  if (omega.is_zero())
    throw std::invalid_argument("abelian_ladder_density_log: omega must be nonzero");
  // same multiple bound as ladder_multiples, from the exact weight range
  long long lmax = -1;
  for (int r = 0; r < a.group.rank; ++r) {
    long long wr = omega.comp[static_cast<size_t>(r)];
    if (wr == 0) continue;
    const Rational& b = a.shift[static_cast<size_t>(r)];
    long long kb = (k / b.den) * b.num;
    long long lo = -kb, hi = -kb;
    for (int f = 0; f < m.factors; ++f) {
      long long c = a.weights[static_cast<size_t>(r)][static_cast<size_t>(f)] * m.degree(f, k);
      if (c >= 0) hi += c; else lo += c;
    }
    long long reach = wr > 0 ? hi / wr : lo / wr;
    if (lmax < 0 || reach < lmax) lmax = reach;
  }
  std::vector<double> logs;
  for (long long l = 1; l <= lmax; ++l) {
    Weight lw = omega;
    for (auto& c : lw.comp) c *= l;
    double v = abelian_density_log(m, a, lw, k, t);
    if (v != kNegInf) logs.push_back(v);
  }
  if (logs.empty()) return kNegInf;
  double mx = logs[0];
  for (double v : logs) mx = std::max(mx, v);
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - mx);
  return mx + std::log(acc);
}

}  // namespace ebk
