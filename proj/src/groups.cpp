#include "ebk/groups.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ebk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

GroupSpec GroupSpec::torus(int g) {
  if (g < 1) throw std::invalid_argument("GroupSpec::torus: rank must be >= 1");
  return {GroupKind::Torus, g};
}

Weight Weight::su2(long long m) {
  if (m < 0) throw std::invalid_argument("Weight::su2: m must be >= 0");
  return Weight{{m}};
}

bool Weight::is_zero() const {
  for (long long c : comp)
    if (c != 0) return false;
  return true;
}

std::string Weight::str() const {
  if (comp.size() == 1) return std::to_string(comp[0]);
  std::string s = "(";
  for (size_t i = 0; i < comp.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(comp[i]);
  }
  return s + ")";
}

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion Quaternion::normalized() const {
  double n = norm();
  if (n == 0) throw std::invalid_argument("Quaternion: cannot normalize zero");
  return {w / n, x / n, y / n, z / n};
}

Quaternion Quaternion::operator*(const Quaternion& o) const {
  return {w * o.w - x * o.x - y * o.y - z * o.z,
          w * o.x + x * o.w + y * o.z - z * o.y,
          w * o.y - x * o.z + y * o.w + z * o.x,
          w * o.z + x * o.y - y * o.x + z * o.w};
}

Quaternion quat_z(double phi) { return {std::cos(phi / 2), 0, 0, std::sin(phi / 2)}; }
Quaternion quat_y(double phi) { return {std::cos(phi / 2), 0, std::sin(phi / 2), 0}; }

GroupElement GroupElement::identity(const GroupSpec& g) {
  GroupElement e;
  if (g.abelian()) e.theta.assign(static_cast<size_t>(g.rank), 0.0);
  return e;
}

static void validate_element(const GroupSpec& g, const GroupElement& x) {
  if (g.abelian()) {
    if (static_cast<int>(x.theta.size()) != g.rank)
      throw std::invalid_argument("GroupElement: angle count does not match torus rank");
  } else {
    if (std::abs(x.q.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("GroupElement: SU(2) element must be a unit quaternion");
  }
}

GroupElement group_multiply(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  validate_element(g, a);
  validate_element(g, b);
  GroupElement r;
  if (g.abelian()) {
    r.theta.resize(a.theta.size());
    for (size_t i = 0; i < a.theta.size(); ++i) r.theta[i] = a.theta[i] + b.theta[i];
  } else {
    r.q = a.q * b.q;
  }
  return r;
}

GroupElement group_inverse(const GroupSpec& g, const GroupElement& a) {
  validate_element(g, a);
  GroupElement r;
  if (g.abelian()) {
    r.theta.resize(a.theta.size());
    for (size_t i = 0; i < a.theta.size(); ++i) r.theta[i] = -a.theta[i];
  } else {
    r.q = a.q.conjugate();
  }
  return r;
}

std::array<std::complex<double>, 4> su2_matrix(const Quaternion& q) {
  using C = std::complex<double>;
  // U = w*I - i*(x*s1 + y*s2 + z*s3) with Pauli matrices s1,s2,s3.
  return {C(q.w, -q.z), C(-q.y, -q.x), C(q.y, -q.x), C(q.w, q.z)};
}

double su2_class_angle(const Quaternion& q) {
  double w = q.w;
  if (w > 1.0) w = 1.0;
  if (w < -1.0) w = -1.0;
  return std::acos(w);
}

void validate_weight(const GroupSpec& g, const Weight& w) {
  if (g.abelian()) {
    if (static_cast<int>(w.comp.size()) != g.rank)
      throw std::invalid_argument("Weight: component count does not match torus rank");
  } else {
    if (w.comp.size() != 1 || w.comp[0] < 0)
      throw std::invalid_argument("Weight: SU(2) weight must be a single integer m >= 0");
  }
}

long long irrep_dim(const GroupSpec& g, const Weight& w) {
  validate_weight(g, w);
  return g.abelian() ? 1 : w.comp[0] + 1;
}

// sin(a t)/sin(t) for integer a >= 1, stable at both endpoints of [0,pi].
// Near t=0 the Taylor series in t is
//   a * (1 - (a^2-1) t^2/6 + (a^2-1)(3a^2-7) t^4/360 + O(t^6)),
// and sin(a(pi-s))/sin(pi-s) = (-1)^(a+1) sin(a s)/sin(s) handles t near pi.
static double weyl_ratio(long long a, double t) {
  double sign = 1.0;
  if (t > kPi / 2) {
    t = kPi - t;
    if (a % 2 == 0) sign = -1.0;  // (-1)^(a+1), a = m+1
  }
  double ad = static_cast<double>(a);
  if (t < 1e-4) {
    double t2 = t * t;
    double a2 = ad * ad;
    return sign * ad * (1.0 - (a2 - 1.0) * t2 / 6.0 + (a2 - 1.0) * (3.0 * a2 - 7.0) * t2 * t2 / 360.0);
  }
  return sign * std::sin(ad * t) / std::sin(t);
}

std::complex<double> character(const GroupSpec& g, const Weight& w, const GroupElement& x) {
  validate_weight(g, w);
  validate_element(g, x);
  if (g.abelian()) {
    double phase = 0;
    for (int r = 0; r < g.rank; ++r) phase += static_cast<double>(w.comp[r]) * x.theta[r];
    return {std::cos(phase), std::sin(phase)};
  }
  double t = su2_class_angle(x.q);
  return {weyl_ratio(w.comp[0] + 1, t), 0.0};
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration from the Chebyshev-like initial guess; P_n' via the
  // standard derivative identity.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? x : p1;
      double pnm1 = (n == 1) ? 1.0 : p0;
      pp = n * (x * pn - pnm1) / (x * x - 1.0);
      double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    // w = 2 / ((1-x^2) P_n'(x)^2)
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

std::vector<QuadratureNode> haar_quadrature(const GroupSpec& g, int order) {
  if (order < 1) throw std::invalid_argument("haar_quadrature: order must be >= 1");
  std::vector<QuadratureNode> nodes;
  if (g.abelian()) {
    int n = order;
    long long total = 1;
    for (int r = 0; r < g.rank; ++r) total *= n;
    nodes.reserve(static_cast<size_t>(total));
    std::vector<int> idx(static_cast<size_t>(g.rank), 0);
    double w = 1.0 / static_cast<double>(total);
    for (long long c = 0; c < total; ++c) {
      GroupElement e;
      e.theta.resize(static_cast<size_t>(g.rank));
      long long rem = c;
      for (int r = 0; r < g.rank; ++r) {
        e.theta[static_cast<size_t>(r)] = 2.0 * kPi * static_cast<double>(rem % n) / n;
        rem /= n;
      }
      nodes.push_back({e, w});
    }
    return nodes;
  }
  // SU(2): alpha and gamma equispaced, beta by Gauss-Legendre in cos(beta).
  // Haar = (1/16pi^2) sin(beta) dalpha dbeta dgamma over [0,2pi)x[0,pi]x[0,4pi).
  int n_gamma = order;
  int n_alpha = order / 2 + 1;
  int n_beta = order / 4 + 1;
  std::vector<double> gx, gw;
  gauss_legendre(n_beta, gx, gw);
  nodes.reserve(static_cast<size_t>(n_alpha) * n_gamma * n_beta);
  for (int b = 0; b < n_beta; ++b) {
    double beta = std::acos(gx[static_cast<size_t>(b)]);
    double wb = gw[static_cast<size_t>(b)] / (2.0 * n_alpha * n_gamma);
    Quaternion qb = quat_y(beta);
    for (int a = 0; a < n_alpha; ++a) {
      Quaternion qa = quat_z(2.0 * kPi * a / n_alpha);
      Quaternion qab = qa * qb;
      for (int c = 0; c < n_gamma; ++c) {
        Quaternion q = qab * quat_z(4.0 * kPi * c / n_gamma);
        nodes.push_back({GroupElement::su2(q), wb});
      }
    }
  }
  return nodes;
}

int clebsch_gordan_mult(long long a, long long b, long long m) {
  if (a < 0 || b < 0 || m < 0) throw std::invalid_argument("clebsch_gordan_mult: labels must be >= 0");
  long long lo = a > b ? a - b : b - a;
  if (m < lo || m > a + b) return 0;
  return ((m - lo) % 2 == 0) ? 1 : 0;
}

}  // namespace ebk
