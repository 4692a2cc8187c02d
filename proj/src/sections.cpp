#include "ebk/sections.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace ebk {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

SectionSpace::SectionSpace(const Model& m, const ActionSpec& a, long long k)
    : model_(m), action_(a), k_(k) {
  a.validate_against(m);
  if (k < 0) throw std::invalid_argument("SectionSpace: k must be >= 0");
  if (a.group.abelian()) {
    long long d = a.shift_denominator();
    if (k % d != 0)
      throw std::invalid_argument("SectionSpace: k=" + std::to_string(k) +
                                  " is not divisible by the shift denominator " + std::to_string(d));
  }
  degrees_.resize(static_cast<size_t>(m.factors));
  for (int f = 0; f < m.factors; ++f) degrees_[static_cast<size_t>(f)] = m.degree(f, k);
  strides_.assign(static_cast<size_t>(m.factors), 1);
  for (int f = m.factors - 2; f >= 0; --f)
    strides_[static_cast<size_t>(f)] =
        strides_[static_cast<size_t>(f + 1)] * (degrees_[static_cast<size_t>(f + 1)] + 1);
  dim_ = strides_[0] * (degrees_[0] + 1);
  binom_.resize(degrees_.size());
  log_binom_.resize(degrees_.size());
  for (size_t f = 0; f < degrees_.size(); ++f) {
    long long d = degrees_[f];
    binom_[f].resize(static_cast<size_t>(d) + 1);
    log_binom_[f].resize(static_cast<size_t>(d) + 1);
    double b = 1.0;
    for (long long e = 0; e <= d; ++e) {
      binom_[f][static_cast<size_t>(e)] = b;
      b *= static_cast<double>(d - e) / static_cast<double>(e + 1);
      log_binom_[f][static_cast<size_t>(e)] = std::lgamma(static_cast<double>(d) + 1.0) -
                                              std::lgamma(static_cast<double>(e) + 1.0) -
                                              std::lgamma(static_cast<double>(d - e) + 1.0);
    }
  }
}

SectionSpace build_space(const Model& m, const ActionSpec& a, long long k) {
  return SectionSpace(m, a, k);
}

std::vector<long long> SectionSpace::exponents(long long idx) const {
  if (idx < 0 || idx >= dim_) throw std::invalid_argument("SectionSpace: index out of range");
  std::vector<long long> e(degrees_.size());
  for (size_t f = 0; f < degrees_.size(); ++f) e[f] = (idx / strides_[f]) % (degrees_[f] + 1);
  return e;
}

long long SectionSpace::flat_index(const std::vector<long long>& e) const {
  if (e.size() != degrees_.size()) throw std::invalid_argument("SectionSpace: exponent arity");
  long long idx = 0;
  for (size_t f = 0; f < degrees_.size(); ++f) {
    if (e[f] < 0 || e[f] > degrees_[f]) throw std::invalid_argument("SectionSpace: exponent range");
    idx += e[f] * strides_[f];
  }
  return idx;
}

double SectionSpace::gram_diag(long long idx) const {
  double g = 1.0;
  for (size_t f = 0; f < degrees_.size(); ++f) {
    long long e = (idx / strides_[f]) % (degrees_[f] + 1);
    g /= static_cast<double>(degrees_[f] + 1) * binom_[f][static_cast<size_t>(e)];
  }
  return g;
}

double SectionSpace::log_gram_diag(long long idx) const {
  double lg = 0.0;
  for (size_t f = 0; f < degrees_.size(); ++f) {
    long long e = (idx / strides_[f]) % (degrees_[f] + 1);
    lg -= std::log(static_cast<double>(degrees_[f] + 1)) + log_binom_[f][static_cast<size_t>(e)];
  }
  return lg;
}

std::vector<long long> SectionSpace::monomial_weight(long long idx) const {
  if (!action_.group.abelian())
    throw std::invalid_argument("monomial_weight: abelian actions only");
  std::vector<long long> e = exponents(idx);
  std::vector<long long> lam(static_cast<size_t>(action_.group.rank));
  for (int r = 0; r < action_.group.rank; ++r) {
    const Rational& b = action_.shift[static_cast<size_t>(r)];
    long long v = -(k_ / b.den) * b.num;
    for (size_t f = 0; f < e.size(); ++f) v += e[f] * action_.weights[static_cast<size_t>(r)][f];
    lam[static_cast<size_t>(r)] = v;
  }
  return lam;
}

long long SectionSpace::h_eigenvalue(long long idx) const {
  if (action_.group.kind != GroupKind::SU2)
    throw std::invalid_argument("h_eigenvalue: SU(2) actions only");
  std::vector<long long> e = exponents(idx);
  long long h = 0;
  for (size_t f = 0; f < e.size(); ++f) h += degrees_[f] - 2 * e[f];
  return h;
}

Eigen::VectorXcd SectionSpace::monomial_values(const Point& p) const {
  validate_point(model_, p);
  std::vector<Eigen::VectorXcd> per_factor;
  per_factor.reserve(degrees_.size());
  for (size_t f = 0; f < degrees_.size(); ++f) {
    FactorPoint fp = p.f[f].normalized();
    long long d = degrees_[f];
    Eigen::VectorXcd p0(d + 1), p1(d + 1);
    p0(0) = 1.0;
    p1(0) = 1.0;
    for (long long j = 1; j <= d; ++j) {
      p0(j) = p0(j - 1) * fp.z0;
      p1(j) = p1(j - 1) * fp.z1;
    }
    Eigen::VectorXcd v(d + 1);
    for (long long e = 0; e <= d; ++e) v(e) = p0(d - e) * p1(e);
    per_factor.push_back(std::move(v));
  }
  if (per_factor.size() == 1) return per_factor[0];
  Eigen::VectorXcd out(dim_);
  long long n1 = degrees_[1] + 1;
  for (long long e0 = 0; e0 <= degrees_[0]; ++e0)
    for (long long e1 = 0; e1 < n1; ++e1) out(e0 * n1 + e1) = per_factor[0](e0) * per_factor[1](e1);
  return out;
}

Eigen::MatrixXd gram_matrix(const SectionSpace& s) {
  if (s.dim() > 20000) throw std::runtime_error("gram_matrix: space too large to materialize");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(s.dim(), s.dim());
  for (long long i = 0; i < s.dim(); ++i) g(i, i) = s.gram_diag(i);
  return g;
}

Eigen::MatrixXcd quadrature_gram_oracle(const SectionSpace& s, int order) {
  if (order < 1) throw std::invalid_argument("quadrature_gram_oracle: order must be >= 1");
  if (s.dim() > 20000) throw std::runtime_error("quadrature_gram_oracle: space too large");
  std::vector<Eigen::MatrixXcd> per_factor;
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  for (size_t f = 0; f < s.degrees().size(); ++f) {
    long long d = s.degrees()[f];
    int n_phi = std::max<long long>(order, d + 1);
    // Phase sums S[delta] = (1/n) sum_j exp(i delta phi_j); computed rather
    // than assumed zero so the oracle really integrates.
    Eigen::VectorXcd S(2 * d + 1);
    for (long long delta = -d; delta <= d; ++delta) {
      std::complex<double> acc = 0;
      for (int j = 0; j < n_phi; ++j) {
        double phi = 2.0 * kPi * j / n_phi;
        acc += std::complex<double>(std::cos(delta * phi), std::sin(delta * phi));
      }
      S(delta + d) = acc / static_cast<double>(n_phi);
    }
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int q = 0; q < order; ++q) {
      double t = 0.5 * (gx[static_cast<size_t>(q)] + 1.0);
      double wt = 0.5 * gw[static_cast<size_t>(q)];
      for (long long e = 0; e <= d; ++e)
        for (long long ep = 0; ep <= d; ++ep) {
          double amp = std::pow(t, 0.5 * static_cast<double>(e + ep)) *
                       std::pow(1.0 - t, static_cast<double>(d) - 0.5 * static_cast<double>(e + ep));
          g(e, ep) += wt * amp * S(e - ep + d);
        }
    }
    per_factor.push_back(std::move(g));
  }
  if (per_factor.size() == 1) return per_factor[0];
  const Eigen::MatrixXcd& g0 = per_factor[0];
  const Eigen::MatrixXcd& g1 = per_factor[1];
  long long n0 = g0.rows(), n1 = g1.rows();
  Eigen::MatrixXcd g(n0 * n1, n0 * n1);
  for (long long i0 = 0; i0 < n0; ++i0)
    for (long long i1 = 0; i1 < n1; ++i1)
      for (long long j0 = 0; j0 < n0; ++j0)
        for (long long j1 = 0; j1 < n1; ++j1)
          g(i0 * n1 + i1, j0 * n1 + j1) = g0(i0, j0) * g1(i1, j1);
  return g;
}

Eigen::MatrixXcd orthonormal_basis(const SectionSpace& s) {
  if (s.dim() > 20000) throw std::runtime_error("orthonormal_basis: space too large");
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(s.dim(), s.dim());
  for (long long i = 0; i < s.dim(); ++i) b(i, i) = 1.0 / std::sqrt(s.gram_diag(i));
  return b;
}

Eigen::MatrixXcd orthonormal_basis_from_gram(const Eigen::MatrixXcd& gram) {
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("orthonormal_basis_from_gram: Gram matrix not positive definite");
  Eigen::MatrixXcd linv =
      llt.matrixL().solve(Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()));
  return linv.adjoint();
}

// Matrix of Sym^d of the 2x2 substitution z -> V z on monomials z0^(d-e) z1^e.
static Eigen::MatrixXcd sym_power_matrix(const std::array<std::complex<double>, 4>& v, long long d) {
  // power tables pw[i](j) = v[i]^j; multiplicative so v[i] = 0 stays exact
  std::array<std::vector<std::complex<double>>, 4> pw;
  for (int i = 0; i < 4; ++i) {
    pw[static_cast<size_t>(i)].resize(static_cast<size_t>(d) + 1);
    pw[static_cast<size_t>(i)][0] = 1.0;
    for (long long j = 1; j <= d; ++j)
      pw[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          pw[static_cast<size_t>(i)][static_cast<size_t>(j - 1)] * v[static_cast<size_t>(i)];
  }
  Eigen::MatrixXcd m(d + 1, d + 1);
  std::vector<std::complex<double>> col(static_cast<size_t>(d) + 1);
  std::vector<std::complex<double>> pa, pb;
  for (long long e = 0; e <= d; ++e) {
    // (v00 z0 + v01 z1)^(d-e) * (v10 z0 + v11 z1)^e, coefficients by z1 power
    pa.assign(static_cast<size_t>(d - e) + 1, 0.0);
    double c = 1.0;
    for (long long a = 0; a <= d - e; ++a) {
      pa[static_cast<size_t>(a)] = c * pw[0][static_cast<size_t>(d - e - a)] * pw[1][static_cast<size_t>(a)];
      c *= static_cast<double>(d - e - a) / static_cast<double>(a + 1);
    }
    pb.assign(static_cast<size_t>(e) + 1, 0.0);
    c = 1.0;
    for (long long b = 0; b <= e; ++b) {
      pb[static_cast<size_t>(b)] = c * pw[2][static_cast<size_t>(e - b)] * pw[3][static_cast<size_t>(b)];
      c *= static_cast<double>(e - b) / static_cast<double>(b + 1);
    }
    std::fill(col.begin(), col.end(), std::complex<double>(0.0));
    for (size_t a = 0; a < pa.size(); ++a)
      for (size_t b = 0; b < pb.size(); ++b) col[a + b] += pa[a] * pb[b];
    for (long long j = 0; j <= d; ++j) m(j, e) = col[static_cast<size_t>(j)];
  }
  return m;
}

Eigen::MatrixXcd group_action_matrix(const SectionSpace& s, const GroupElement& g) {
  if (s.dim() > 20000) throw std::runtime_error("group_action_matrix: space too large");
  if (s.action().group.abelian()) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(s.dim(), s.dim());
    for (long long i = 0; i < s.dim(); ++i) {
      std::vector<long long> lam = s.monomial_weight(i);
      double phase = 0;
      for (size_t r = 0; r < lam.size(); ++r) phase += static_cast<double>(lam[r]) * g.theta[r];
      m(i, i) = std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return m;
  }
  // (rho(g) f)(z) = f(g^{-1} z): substitute V = U(g^{-1}) factorwise.
  std::array<std::complex<double>, 4> v = su2_matrix(g.q.conjugate());
  std::vector<Eigen::MatrixXcd> per_factor;
  for (long long d : s.degrees()) per_factor.push_back(sym_power_matrix(v, d));
  if (per_factor.size() == 1) return per_factor[0];
  const Eigen::MatrixXcd& m0 = per_factor[0];
  const Eigen::MatrixXcd& m1 = per_factor[1];
  long long n0 = m0.rows(), n1 = m1.rows();
  Eigen::MatrixXcd m(n0 * n1, n0 * n1);
  for (long long i0 = 0; i0 < n0; ++i0)
    for (long long i1 = 0; i1 < n1; ++i1)
      for (long long j0 = 0; j0 < n0; ++j0)
        for (long long j1 = 0; j1 < n1; ++j1)
          m(i0 * n1 + i1, j0 * n1 + j1) = m0(i0, j0) * m1(i1, j1);
  return m;
}

void sl2_apply(const SectionSpace& s, SL2Gen gen, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
  if (s.action().group.kind != GroupKind::SU2)
    throw std::invalid_argument("sl2_apply: SU(2) actions only");
  if (x.size() != s.dim()) throw std::invalid_argument("sl2_apply: size mismatch");
  y = Eigen::VectorXcd::Zero(s.dim());
  const auto& deg = s.degrees();
  for (long long idx = 0; idx < s.dim(); ++idx) {
    if (x(idx) == std::complex<double>(0.0)) continue;
    std::vector<long long> e = s.exponents(idx);
    switch (gen) {
      case SL2Gen::H: {
        long long h = 0;
        for (size_t f = 0; f < e.size(); ++f) h += deg[f] - 2 * e[f];
        y(idx) += static_cast<double>(h) * x(idx);
        break;
      }
      case SL2Gen::E:
        for (size_t f = 0; f < e.size(); ++f)
          if (e[f] > 0) {
            std::vector<long long> e2 = e;
            e2[f] -= 1;
            y(s.flat_index(e2)) += static_cast<double>(e[f]) * x(idx);
          }
        break;
      case SL2Gen::F:
        for (size_t f = 0; f < e.size(); ++f)
          if (e[f] < deg[f]) {
            std::vector<long long> e2 = e;
            e2[f] += 1;
            y(s.flat_index(e2)) += static_cast<double>(deg[f] - e[f]) * x(idx);
          }
        break;
    }
  }
}

Eigen::MatrixXd lie_algebra_action(const SectionSpace& s, SL2Gen gen) {
  if (s.action().group.kind != GroupKind::SU2)
    throw std::invalid_argument("lie_algebra_action: SU(2) actions only");
  if (s.dim() > 20000) throw std::runtime_error("lie_algebra_action: space too large");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s.dim(), s.dim());
  const auto& deg = s.degrees();
  for (long long idx = 0; idx < s.dim(); ++idx) {
    std::vector<long long> e = s.exponents(idx);
    switch (gen) {
      case SL2Gen::H: {
        long long h = 0;
        for (size_t f = 0; f < e.size(); ++f) h += deg[f] - 2 * e[f];
        m(idx, idx) = static_cast<double>(h);
        break;
      }
      case SL2Gen::E:
        for (size_t f = 0; f < e.size(); ++f)
          if (e[f] > 0) {
            std::vector<long long> e2 = e;
            e2[f] -= 1;
            m(s.flat_index(e2), idx) += static_cast<double>(e[f]);
          }
        break;
      case SL2Gen::F:
        for (size_t f = 0; f < e.size(); ++f)
          if (e[f] < deg[f]) {
            std::vector<long long> e2 = e;
            e2[f] += 1;
            m(s.flat_index(e2), idx) += static_cast<double>(deg[f] - e[f]);
          }
        break;
    }
  }
  return m;
}

// Enumerates exponent tuples whose abelian weight equals omega.  Shared by
// the multiplicity count and the component basis; returns the count, fills
// `out` when non-null.
static long long abelian_enumerate(const Model& m, const ActionSpec& a, const Weight& omega,
                                   long long k, std::vector<std::vector<long long>>* out) {
  a.validate_against(m);
  if (!a.group.abelian()) throw std::invalid_argument("abelian weight enumeration: abelian only");
  validate_weight(a.group, omega);
  long long den = a.shift_denominator();
  if (k < 0 || k % den != 0)
    throw std::invalid_argument("abelian weight enumeration: k not admissible for the shift");
  int rank = a.group.rank;
  std::vector<long long> target(static_cast<size_t>(rank));
  for (int r = 0; r < rank; ++r) {
    const Rational& b = a.shift[static_cast<size_t>(r)];
    target[static_cast<size_t>(r)] = omega.comp[static_cast<size_t>(r)] + (k / b.den) * b.num;
  }
  std::vector<long long> w0(static_cast<size_t>(rank)), w1(static_cast<size_t>(rank));
  for (int r = 0; r < rank; ++r) {
    w0[static_cast<size_t>(r)] = a.weights[static_cast<size_t>(r)][0];
    if (m.factors == 2) w1[static_cast<size_t>(r)] = a.weights[static_cast<size_t>(r)][1];
  }
  long long d0 = m.degree(0, k);
  long long count = 0;
  if (m.factors == 1) {
    for (long long e = 0; e <= d0; ++e) {
      bool ok = true;
      for (int r = 0; r < rank && ok; ++r)
        ok = (w0[static_cast<size_t>(r)] * e == target[static_cast<size_t>(r)]);
      if (ok) {
        ++count;
        if (out) out->push_back({e});
      }
    }
    return count;
  }
  long long d1 = m.degree(1, k);
  int pivot = -1;
  for (int r = 0; r < rank; ++r)
    if (w1[static_cast<size_t>(r)] != 0) {
      pivot = r;
      break;
    }
  for (long long e0 = 0; e0 <= d0; ++e0) {
    if (pivot < 0) {
      bool ok = true;
      for (int r = 0; r < rank && ok; ++r)
        ok = (w0[static_cast<size_t>(r)] * e0 == target[static_cast<size_t>(r)]);
      if (ok) {
        count += d1 + 1;
        if (out)
          for (long long e1 = 0; e1 <= d1; ++e1) out->push_back({e0, e1});
      }
      continue;
    }
    long long num = target[static_cast<size_t>(pivot)] - w0[static_cast<size_t>(pivot)] * e0;
    long long wp = w1[static_cast<size_t>(pivot)];
    if (num % wp != 0) continue;
    long long e1 = num / wp;
    if (e1 < 0 || e1 > d1) continue;
    bool ok = true;
    for (int r = 0; r < rank && ok; ++r)
      ok = (w0[static_cast<size_t>(r)] * e0 + w1[static_cast<size_t>(r)] * e1 ==
            target[static_cast<size_t>(r)]);
    if (ok) {
      ++count;
      if (out) out->push_back({e0, e1});
    }
  }
  return count;
}

long long abelian_multiplicity(const Model& m, const ActionSpec& a, const Weight& omega, long long k) {
  return abelian_enumerate(m, a, omega, k, nullptr);
}

std::vector<std::vector<long long>> abelian_component_exponents(const Model& m, const ActionSpec& a,
                                                                const Weight& omega, long long k) {
  std::vector<std::vector<long long>> out;
  abelian_enumerate(m, a, omega, k, &out);
  return out;
}

// --- SU(2) weight machinery ---------------------------------------------

// Indices of monomials in the H-eigenspace of eigenvalue h, ascending.
static std::vector<long long> weight_space_indices(const SectionSpace& s, long long h) {
  std::vector<long long> idx;
  for (long long i = 0; i < s.dim(); ++i)
    if (s.h_eigenvalue(i) == h) idx.push_back(i);
  return idx;
}

static long long su2_total_degree(const SectionSpace& s) {
  long long t = 0;
  for (long long d : s.degrees()) t += d;
  return t;
}

// Multiplicities from weight-space dimensions alone: complete reducibility
// gives dim W_h = sum of mult(m) over m >= h with matching parity, so
// mult(m) = dim W_m - dim W_{m+2}.  Pure counting, no rank decisions.
static std::vector<std::pair<long long, long long>> su2_mults(const SectionSpace& s) {
  std::map<long long, long long> wdim;
  for (long long i = 0; i < s.dim(); ++i) ++wdim[s.h_eigenvalue(i)];
  auto at = [&wdim](long long h) {
    auto it = wdim.find(h);
    return it == wdim.end() ? 0LL : it->second;
  };
  std::vector<std::pair<long long, long long>> out;
  long long dmax = su2_total_degree(s);
  long long total = 0;
  for (long long m = dmax % 2; m <= dmax; m += 2) {
    long long mult = at(m) - at(m + 2);
    if (mult < 0) throw std::logic_error("su2_mults: weight dimensions not monotone");
    if (mult > 0) out.emplace_back(m, mult);
    total += mult * (m + 1);
  }
  if (total != s.dim()) throw std::logic_error("su2_mults: dimensions do not add up");
  return out;
}

// One H-eigenspace split under the Casimir 2(EF + FE) + H^2, which acts on
// the weight-m part as m(m+2).  The restriction is assembled in
// Gram-normalized coordinates, where selfadjointness w.r.t. the Gram pairing
// makes it symmetric, so every level is an independent small symmetric
// eigenproblem and the eigenvectors come back Gram-orthonormal.  Solving
// levels independently keeps roundoff from compounding along long ladders.
struct CasimirLevel {
  std::vector<long long> idx;                 // monomial indices, ascending
  std::map<long long, Eigen::MatrixXd> vecs;  // m -> level-local coefficient columns
};

static CasimirLevel casimir_level(const SectionSpace& s, long long h,
                                  const std::vector<std::pair<long long, long long>>& mults) {
  CasimirLevel lv;
  lv.idx = weight_space_indices(s, h);
  long long n = static_cast<long long>(lv.idx.size());
  if (n == 0) return lv;
  std::map<long long, long long> pos;
  for (long long i = 0; i < n; ++i) pos[lv.idx[i]] = i;
  const auto& deg = s.degrees();
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
  for (long long c = 0; c < n; ++c) {
    std::vector<long long> e = s.exponents(lv.idx[c]);
    for (size_t f = 0; f < e.size(); ++f) {  // 2 F E
      if (e[f] == 0) continue;
      std::vector<long long> e1 = e;
      e1[f] -= 1;
      for (size_t g = 0; g < e1.size(); ++g) {
        if (e1[g] == deg[g]) continue;
        std::vector<long long> e2 = e1;
        e2[g] += 1;
        mat(pos.at(s.flat_index(e2)), c) +=
            2.0 * static_cast<double>(e[f]) * static_cast<double>(deg[g] - e1[g]);
      }
    }
    for (size_t g = 0; g < e.size(); ++g) {  // 2 E F
      if (e[g] == deg[g]) continue;
      std::vector<long long> e1 = e;
      e1[g] += 1;
      for (size_t f = 0; f < e1.size(); ++f) {
        if (e1[f] == 0) continue;
        std::vector<long long> e2 = e1;
        e2[f] -= 1;
        mat(pos.at(s.flat_index(e2)), c) +=
            2.0 * static_cast<double>(deg[g] - e[g]) * static_cast<double>(e1[f]);
      }
    }
    mat(c, c) += static_cast<double>(h * h);
  }
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c)
      if (r != c && mat(r, c) != 0.0)
        mat(r, c) *= std::exp(0.5 * (s.log_gram_diag(lv.idx[r]) - s.log_gram_diag(lv.idx[c])));
  mat = 0.5 * (mat + mat.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat);
  if (es.info() != Eigen::Success) throw std::runtime_error("casimir_level: eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  // ascending eigenvalues against ascending targets m(m+2); consecutive
  // targets are at least 8 apart, far above solver error on integer input
  long long next = 0;
  long long habs = h < 0 ? -h : h;
  for (const auto& [m, mult] : mults) {
    if (m < habs) continue;
    Eigen::MatrixXd cols(n, mult);
    for (long long j = 0; j < mult; ++j, ++next) {
      double target = static_cast<double>(m * (m + 2));
      if (next >= n || std::abs(ev(next) - target) > 0.5)
        throw std::runtime_error("casimir_level: eigenvalue away from every m(m+2)");
      cols.col(j) = es.eigenvectors().col(next);
    }
    for (long long i = 0; i < n; ++i)
      cols.row(i) *= std::exp(-0.5 * s.log_gram_diag(lv.idx[i]));
    lv.vecs.emplace(m, std::move(cols));
  }
  if (next != n) throw std::runtime_error("casimir_level: leftover eigenvalues");
  return lv;
}

// Levels computed on demand, shared by the components of one space.
struct LevelCache {
  const SectionSpace& s;
  const std::vector<std::pair<long long, long long>>& mults;
  std::map<long long, CasimirLevel> levels;
  const CasimirLevel& at(long long h) {
    auto it = levels.find(h);
    if (it == levels.end()) it = levels.emplace(h, casimir_level(s, h, mults)).first;
    return it->second;
  }
};

// y = F x on a real coefficient vector, F = sum over factors of z1 d/dz0.
static Eigen::VectorXd lower_real(const SectionSpace& s, const Eigen::VectorXd& x) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(s.dim());
  const auto& deg = s.degrees();
  for (long long i = 0; i < s.dim(); ++i) {
    if (x(i) == 0.0) continue;
    std::vector<long long> e = s.exponents(i);
    for (size_t f = 0; f < e.size(); ++f)
      if (e[f] < deg[f]) {
        std::vector<long long> e2 = e;
        e2[f] += 1;
        y(s.flat_index(e2)) += static_cast<double>(deg[f] - e[f]) * x(i);
      }
  }
  return y;
}

// Builds the weight-m component.  Each ladder starts at a level h = m
// eigenvector and descends by F; the descended vector is projected onto the
// next level's Casimir eigenspace before normalization, so a step never
// inherits leakage from the one before.  Columns grouped per ladder, top
// weight first.
static IsotypicComponent su2_component_from_levels(const SectionSpace& s, long long m,
                                                   long long mult, LevelCache& cache) {
  IsotypicComponent comp;
  comp.weight = Weight::su2(m);
  comp.multiplicity = mult;
  comp.dim = mult * (m + 1);
  comp.basis = Eigen::MatrixXcd::Zero(s.dim(), comp.dim);
  std::vector<Eigen::VectorXd> cur(static_cast<size_t>(mult));
  {
    const CasimirLevel& top = cache.at(m);
    const Eigen::MatrixXd& y = top.vecs.at(m);
    for (long long j = 0; j < mult; ++j) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(s.dim());
      for (size_t i = 0; i < top.idx.size(); ++i) v(top.idx[i]) = y(static_cast<long long>(i), j);
      comp.basis.col(j * (m + 1)) = v.cast<std::complex<double>>();
      cur[static_cast<size_t>(j)] = std::move(v);
    }
  }
  for (long long step = 1; step <= m; ++step) {
    const CasimirLevel& lv = cache.at(m - 2 * step);
    const Eigen::MatrixXd& y = lv.vecs.at(m);
    long long n = static_cast<long long>(lv.idx.size());
    std::vector<Eigen::VectorXd> coeff(static_cast<size_t>(mult));
    for (long long j = 0; j < mult; ++j) {
      Eigen::VectorXd fw = lower_real(s, cur[static_cast<size_t>(j)]);
      Eigen::VectorXd cf = Eigen::VectorXd::Zero(mult);
      double fn2 = 0;
      for (long long i = 0; i < n; ++i) {
        double gv = s.gram_diag(lv.idx[i]);
        double fv = fw(lv.idx[i]);
        fn2 += gv * fv * fv;
        for (long long c = 0; c < mult; ++c) cf(c) += gv * y(i, c) * fv;
      }
      if (!(cf.norm() > 0.999999 * std::sqrt(fn2)))
        throw std::runtime_error("su2 ladder: descended vector left its component");
      coeff[static_cast<size_t>(j)] = std::move(cf);
    }
    // orthonormalize in eigenspace coordinates; the descended ladders are
    // orthogonal with equal norms up to roundoff
    for (long long j = 0; j < mult; ++j) {
      Eigen::VectorXd& cf = coeff[static_cast<size_t>(j)];
      for (long long i = 0; i < j; ++i)
        cf -= coeff[static_cast<size_t>(i)].dot(cf) * coeff[static_cast<size_t>(i)];
      double nn = cf.norm();
      if (nn < 1e-300) throw std::runtime_error("su2 ladder: dependent descended set");
      cf /= nn;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(s.dim());
      for (long long i = 0; i < n; ++i) {
        double acc = 0;
        for (long long c = 0; c < mult; ++c) acc += y(i, c) * cf(c);
        v(lv.idx[i]) = acc;
      }
      comp.basis.col(j * (m + 1) + step) = v.cast<std::complex<double>>();
      cur[static_cast<size_t>(j)] = std::move(v);
    }
  }
  return comp;
}

std::vector<std::pair<Weight, long long>> isotypic_multiplicities(const SectionSpace& s) {
  std::vector<std::pair<Weight, long long>> out;
  if (s.action().group.abelian()) {
    std::map<std::vector<long long>, long long> counts;
    for (long long i = 0; i < s.dim(); ++i) ++counts[s.monomial_weight(i)];
    for (const auto& [lam, c] : counts) out.emplace_back(Weight::vec(lam), c);
    return out;
  }
  for (const auto& [m, mult] : su2_mults(s)) out.emplace_back(Weight::su2(m), mult);
  return out;
}

std::vector<IsotypicComponent> isotypic_decompose(const SectionSpace& s) {
  std::vector<IsotypicComponent> comps;
  if (s.action().group.abelian()) {
    std::map<std::vector<long long>, std::vector<long long>> groups;
    for (long long i = 0; i < s.dim(); ++i) groups[s.monomial_weight(i)].push_back(i);
    for (const auto& [lam, idx] : groups) {
      IsotypicComponent c;
      c.weight = Weight::vec(lam);
      c.multiplicity = static_cast<long long>(idx.size());
      c.dim = c.multiplicity;
      c.basis = Eigen::MatrixXcd::Zero(s.dim(), c.dim);
      for (size_t j = 0; j < idx.size(); ++j)
        c.basis(idx[j], static_cast<long long>(j)) = 1.0 / std::sqrt(s.gram_diag(idx[j]));
      comps.push_back(std::move(c));
    }
    return comps;
  }
  std::vector<std::pair<long long, long long>> mults = su2_mults(s);
  LevelCache cache{s, mults, {}};
  for (const auto& [m, mult] : mults) comps.push_back(su2_component_from_levels(s, m, mult, cache));
  return comps;
}

IsotypicComponent isotypic_component(const SectionSpace& s, const Weight& omega) {
  validate_weight(s.action().group, omega);
  IsotypicComponent c;
  c.weight = omega;
  if (s.action().group.abelian()) {
    std::vector<std::vector<long long>> exps =
        abelian_component_exponents(s.model(), s.action(), omega, s.k());
    c.multiplicity = static_cast<long long>(exps.size());
    c.dim = c.multiplicity;
    c.basis = Eigen::MatrixXcd::Zero(s.dim(), c.dim);
    for (size_t j = 0; j < exps.size(); ++j) {
      long long idx = s.flat_index(exps[j]);
      c.basis(idx, static_cast<long long>(j)) = 1.0 / std::sqrt(s.gram_diag(idx));
    }
    return c;
  }
  long long m = omega.m();
  long long dmax = su2_total_degree(s);
  if (m > dmax || (dmax - m) % 2 != 0) {
    c.basis = Eigen::MatrixXcd::Zero(s.dim(), 0);
    return c;
  }
  std::vector<std::pair<long long, long long>> mults = su2_mults(s);
  long long mult = 0;
  for (const auto& [mm, mc] : mults)
    if (mm == m) mult = mc;
  if (mult == 0) {
    c.basis = Eigen::MatrixXcd::Zero(s.dim(), 0);
    return c;
  }
  LevelCache cache{s, mults, {}};
  return su2_component_from_levels(s, m, mult, cache);
}

// The Haar rule walks zyz angles with rho(qz(phi)) diagonal (monomials are
// H-eigenvectors with phases e^{i h phi / 2}), so each node's rho sandwiches
// the dense qy(beta) factor between two phase diagonals.  Summing characters
// and phases first collapses the alpha and gamma loops into one small
// level-indexed matrix per beta node and weight.
static void su2_character_projectors(const SectionSpace& s, const std::vector<Weight>& omegas,
                                     int order, const std::vector<QuadratureNode>& nodes,
                                     std::vector<Eigen::MatrixXcd>& p) {
  const GroupSpec& g = s.action().group;
  long long n_gamma = order, n_alpha = order / 2 + 1, n_beta = order / 4 + 1;
  if (static_cast<long long>(nodes.size()) != n_alpha * n_beta * n_gamma)
    throw std::logic_error("character_projectors: unexpected Haar node layout");
  std::vector<long long> hval;
  std::map<long long, long long> level_of;
  for (long long i = 0; i < s.dim(); ++i) level_of.emplace(s.h_eigenvalue(i), 0);
  for (auto& [h, u] : level_of) {
    u = static_cast<long long>(hval.size());
    hval.push_back(h);
  }
  long long nh = static_cast<long long>(hval.size());
  std::vector<long long> li(static_cast<size_t>(s.dim()));
  for (long long i = 0; i < s.dim(); ++i)
    li[static_cast<size_t>(i)] = level_of.at(s.h_eigenvalue(i));
  Eigen::MatrixXcd ea(n_alpha, nh), eg(n_gamma, nh);
  for (long long u = 0; u < nh; ++u) {
    double hu = static_cast<double>(hval[u]);
    for (long long a = 0; a < n_alpha; ++a)
      ea(a, u) = std::polar(1.0, kPi * hu * static_cast<double>(a) / static_cast<double>(n_alpha));
    for (long long cc = 0; cc < n_gamma; ++cc)
      eg(cc, u) =
          std::polar(1.0, 2.0 * kPi * hu * static_cast<double>(cc) / static_cast<double>(n_gamma));
  }
  std::vector<Eigen::MatrixXcd> x(omegas.size(), Eigen::MatrixXcd(n_alpha, n_gamma));
  for (long long b = 0; b < n_beta; ++b) {
    const QuadratureNode& base = nodes[static_cast<size_t>(b * n_alpha * n_gamma)];
    Eigen::MatrixXcd rb = group_action_matrix(s, base.g);
    for (long long a = 0; a < n_alpha; ++a)
      for (long long cc = 0; cc < n_gamma; ++cc) {
        const QuadratureNode& node = nodes[static_cast<size_t>((b * n_alpha + a) * n_gamma + cc)];
        GroupElement ginv = group_inverse(g, node.g);
        for (size_t w = 0; w < omegas.size(); ++w)
          x[w](a, cc) = node.weight * static_cast<double>(irrep_dim(g, omegas[w])) *
                        character(g, omegas[w], ginv);
      }
    for (size_t w = 0; w < omegas.size(); ++w) {
      Eigen::MatrixXcd t = ea.transpose() * x[w] * eg;
      Eigen::MatrixXcd& pw = p[w];
      for (long long j = 0; j < s.dim(); ++j)
        for (long long i = 0; i < s.dim(); ++i)
          pw(i, j) += rb(i, j) * t(li[static_cast<size_t>(i)], li[static_cast<size_t>(j)]);
    }
  }
}

std::vector<Eigen::MatrixXcd> character_projectors(const SectionSpace& s,
                                                   const std::vector<Weight>& omegas, int order) {
  for (const Weight& w : omegas) validate_weight(s.action().group, w);
  std::vector<QuadratureNode> nodes = haar_quadrature(s.action().group, order);
  std::vector<Eigen::MatrixXcd> p(omegas.size(),
                                  Eigen::MatrixXcd::Zero(s.dim(), s.dim()));
  if (!s.action().group.abelian()) {
    su2_character_projectors(s, omegas, order, nodes, p);
    return p;
  }
  for (const QuadratureNode& node : nodes) {
    Eigen::MatrixXcd rho = group_action_matrix(s, node.g);
    GroupElement ginv = group_inverse(s.action().group, node.g);
    for (size_t w = 0; w < omegas.size(); ++w) {
      std::complex<double> c = node.weight *
                               static_cast<double>(irrep_dim(s.action().group, omegas[w])) *
                               character(s.action().group, omegas[w], ginv);
      p[w].noalias() += c * rho;
    }
  }
  return p;
}

Eigen::MatrixXcd character_projector_oracle(const SectionSpace& s, const Weight& omega, int order) {
  return character_projectors(s, {omega}, order)[0];
}

std::vector<long long> ladder_multiples(const SectionSpace& s, const Weight& omega) {
  validate_weight(s.action().group, omega);
  if (omega.is_zero()) throw std::invalid_argument("ladder_multiples: omega must be nonzero");
  std::vector<long long> ls;
  if (s.action().group.abelian()) {
    // bound ell by the exact weight range of the occurring monomials
    long long lmax = -1;
    for (int r = 0; r < s.action().group.rank; ++r) {
      long long wr = omega.comp[static_cast<size_t>(r)];
      if (wr == 0) continue;
      const Rational& b = s.action().shift[static_cast<size_t>(r)];
      long long kb = (s.k() / b.den) * b.num;
      long long lo = -kb, hi = -kb;
      for (size_t f = 0; f < s.degrees().size(); ++f) {
        long long c = s.action().weights[static_cast<size_t>(r)][f] * s.degrees()[f];
        if (c >= 0) hi += c; else lo += c;
      }
      long long reach = wr > 0 ? hi / wr : lo / wr;
      if (lmax < 0 || reach < lmax) lmax = reach;
    }
    for (long long l = 1; l <= lmax; ++l) {
      Weight lw = omega;
      for (auto& ccomp : lw.comp) ccomp *= l;
      if (abelian_multiplicity(s.model(), s.action(), lw, s.k()) > 0) ls.push_back(l);
    }
    return ls;
  }
  long long r = omega.m();
  for (const auto& [w, mult] : isotypic_multiplicities(s)) {
    long long m = w.m();
    if (m >= r && m % r == 0 && mult > 0) ls.push_back(m / r);
  }
  return ls;
}

std::vector<IsotypicComponent> ladder_components(const SectionSpace& s, const Weight& omega) {
  std::vector<IsotypicComponent> comps;
  for (long long l : ladder_multiples(s, omega)) {
    Weight lw = omega;
    for (auto& c : lw.comp) c *= l;
    comps.push_back(isotypic_component(s, lw));
  }
  return comps;
}

IsotypicComponent ladder_subspace(const SectionSpace& s, const Weight& omega) {
  std::vector<IsotypicComponent> comps = ladder_components(s, omega);
  IsotypicComponent out;
  out.weight = omega;
  long long total = 0;
  for (const IsotypicComponent& c : comps) {
    out.multiplicity += c.multiplicity;
    total += c.dim;
  }
  out.dim = total;
  if (s.dim() * total > 6000000)
    throw std::runtime_error("ladder_subspace: too large to concatenate; walk ladder_components");
  out.basis = Eigen::MatrixXcd::Zero(s.dim(), total);
  long long col = 0;
  for (const IsotypicComponent& c : comps) {
    out.basis.middleCols(col, c.dim) = c.basis;
    col += c.dim;
  }
  return out;
}

}  // namespace ebk
