#include "ebk/models.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ebk {

Model Model::p1(int a) {
  if (a < 1) throw std::invalid_argument("Model::p1: polarization must be >= 1");
  Model m;
  m.factors = 1;
  m.polarization = {a};
  return m;
}

Model Model::p1xp1(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("Model::p1xp1: polarizations must be >= 1");
  Model m;
  m.factors = 2;
  m.polarization = {a, b};
  return m;
}

long long Model::degree(int factor, long long k) const {
  if (factor < 0 || factor >= factors) throw std::invalid_argument("Model::degree: bad factor");
  if (k < 0) throw std::invalid_argument("Model::degree: k must be >= 0");
  return static_cast<long long>(polarization[static_cast<size_t>(factor)]) * k;
}

std::string Model::str() const {
  if (factors == 1) return "P1(a=" + std::to_string(polarization[0]) + ")";
  return "P1xP1(a=" + std::to_string(polarization[0]) + ",b=" + std::to_string(polarization[1]) + ")";
}

ActionSpec ActionSpec::circle(std::vector<long long> factor_weights, Rational beta) {
  ActionSpec a;
  a.group = GroupSpec::circle();
  a.weights = {std::move(factor_weights)};
  a.shift = {beta};
  return a;
}

ActionSpec ActionSpec::torus(std::vector<std::vector<long long>> w, std::vector<Rational> beta) {
  if (w.empty() || w.size() != beta.size())
    throw std::invalid_argument("ActionSpec::torus: need one weight row and one shift per generator");
  ActionSpec a;
  a.group = GroupSpec::torus(static_cast<int>(w.size()));
  a.weights = std::move(w);
  a.shift = std::move(beta);
  return a;
}

ActionSpec ActionSpec::su2_diagonal() {
  ActionSpec a;
  a.group = GroupSpec::su2();
  return a;
}

long long ActionSpec::shift_denominator() const {
  long long d = 1;
  for (const Rational& b : shift) d = std::lcm(d, b.den);
  return d;
}

std::string ActionSpec::str() const {
  if (group.kind == GroupKind::SU2) return "su2(diagonal)";
  std::string s = group.kind == GroupKind::Circle ? "circle(w=" : "torus(w=";
  for (size_t r = 0; r < weights.size(); ++r) {
    if (r) s += ";";
    s += "(";
    for (size_t f = 0; f < weights[r].size(); ++f) {
      if (f) s += ",";
      s += std::to_string(weights[r][f]);
    }
    s += ")";
  }
  s += ",beta=";
  for (size_t r = 0; r < shift.size(); ++r) {
    if (r) s += ";";
    s += shift[r].str();
  }
  return s + ")";
}

void ActionSpec::validate_against(const Model& m) const {
  if (group.kind == GroupKind::SU2) {
    if (!weights.empty() || !shift.empty())
      throw std::invalid_argument("ActionSpec: SU(2) action carries no weight data");
    return;
  }
  if (static_cast<int>(weights.size()) != group.rank || static_cast<int>(shift.size()) != group.rank)
    throw std::invalid_argument("ActionSpec: weight rows / shifts must match rank");
  for (const auto& row : weights)
    if (static_cast<int>(row.size()) != m.factors)
      throw std::invalid_argument("ActionSpec: weight row length must match factor count");
}

FactorPoint FactorPoint::normalized() const {
  double n2 = std::norm(z0) + std::norm(z1);
  if (n2 < 1e-300) throw std::invalid_argument("FactorPoint: zero homogeneous vector");
  double s = 1.0 / std::sqrt(n2);
  FactorPoint r = *this;
  r.z0 *= s;
  r.z1 *= s;
  return r;
}

double FactorPoint::t() const {
  double n2 = std::norm(z0) + std::norm(z1);
  if (n2 < 1e-300) throw std::invalid_argument("FactorPoint: zero homogeneous vector");
  return std::norm(z1) / n2;
}

Eigen::Vector3d FactorPoint::u() const {
  FactorPoint p = normalized();
  std::complex<double> c = std::conj(p.z0) * p.z1;
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(p.z0) - std::norm(p.z1)};
}

Point Point::north(int factors) {
  Point p;
  for (int i = 0; i < factors; ++i) {
    FactorPoint fp;
    fp.t_exact = Rational(0);
    p.f.push_back(fp);
  }
  return p;
}

Point Point::south(int factors) {
  Point p;
  for (int i = 0; i < factors; ++i) {
    FactorPoint fp;
    fp.z0 = 0.0;
    fp.z1 = 1.0;
    fp.t_exact = Rational(1);
    p.f.push_back(fp);
  }
  return p;
}

FactorPoint Point::factor_from_t(Rational t) {
  if (t.num < 0 || t.num > t.den) throw std::invalid_argument("Point: t must lie in [0,1]");
  FactorPoint fp;
  double td = t.value();
  fp.z0 = std::sqrt(1.0 - td);
  fp.z1 = std::sqrt(td);
  fp.t_exact = t;
  return fp;
}

Point Point::from_t(std::vector<Rational> t) {
  Point p;
  for (const Rational& ti : t) p.f.push_back(factor_from_t(ti));
  return p;
}

std::string Point::str() const {
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) s += " x ";
    s += "t=" + std::to_string(f[i].t());
  }
  return s;
}

void validate_point(const Model& m, const Point& p) {
  if (static_cast<int>(p.f.size()) != m.factors)
    throw std::invalid_argument("Point: factor count does not match model");
  for (const FactorPoint& fp : p.f) fp.normalized();  // throws on the zero vector
}

MomentValue moment_map(const Model& m, const ActionSpec& a, const Point& p) {
  a.validate_against(m);
  validate_point(m, p);
  if (a.group.kind == GroupKind::SU2) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (int f = 0; f < m.factors; ++f)
      v += static_cast<double>(m.polarization[static_cast<size_t>(f)]) * p.f[static_cast<size_t>(f)].u();
    return v;
  }
  MomentValue v(a.group.rank);
  for (int r = 0; r < a.group.rank; ++r) {
    double s = -a.shift[static_cast<size_t>(r)].value();
    for (int f = 0; f < m.factors; ++f)
      s += static_cast<double>(m.polarization[static_cast<size_t>(f)]) *
           static_cast<double>(a.weights[static_cast<size_t>(r)][static_cast<size_t>(f)]) *
           p.f[static_cast<size_t>(f)].t();
    v(r) = s;
  }
  return v;
}

MomentValue scaled_moment(const Model& m, const ActionSpec& a, const Point& p, long long k) {
  if (k < 0) throw std::invalid_argument("scaled_moment: k must be >= 0");
  long long d = a.shift_denominator();
  if (k % d != 0)
    throw std::invalid_argument("scaled_moment: k must be divisible by the shift denominator " +
                                std::to_string(d));
  return static_cast<double>(k) * moment_map(m, a, p);
}

std::vector<Rational> moment_map_exact(const Model& m, const ActionSpec& a,
                                       const std::vector<Rational>& t) {
  a.validate_against(m);
  if (a.group.kind == GroupKind::SU2)
    throw std::invalid_argument("moment_map_exact: abelian actions only");
  if (static_cast<int>(t.size()) != m.factors)
    throw std::invalid_argument("moment_map_exact: height count does not match model");
  std::vector<Rational> v;
  v.reserve(a.shift.size());
  for (int r = 0; r < a.group.rank; ++r) {
    Rational s = -a.shift[static_cast<size_t>(r)];
    for (int f = 0; f < m.factors; ++f)
      s = s + t[static_cast<size_t>(f)] *
                  (static_cast<long long>(m.polarization[static_cast<size_t>(f)]) *
                   a.weights[static_cast<size_t>(r)][static_cast<size_t>(f)]);
    v.push_back(s);
  }
  return v;
}

LocusDistance locus_distance(const Model& m, const ActionSpec& a, const Point& p, const Locus& l) {
  MomentValue v = moment_map(m, a, p);
  LocusDistance r;
  switch (l.kind) {
    case LocusKind::ZeroLevel:
      r.distance = v.norm();
      r.interior = false;
      return r;
    case LocusKind::WeightRay: {
      validate_weight(a.group, l.omega);
      Eigen::VectorXd w(v.size());
      if (a.group.kind == GroupKind::SU2) {
        // Dominant weights sit on the positive z-axis of the dual.
        w.setZero();
        w(2) = static_cast<double>(l.omega.m());
      } else {
        for (int i = 0; i < v.size(); ++i) w(i) = static_cast<double>(l.omega.comp[static_cast<size_t>(i)]);
      }
      double w2 = w.squaredNorm();
      if (w2 == 0) {
        r.distance = v.norm();
        r.interior = false;
        return r;
      }
      double s = v.dot(w) / w2;
      if (s < 0) s = 0;
      r.distance = (v - s * w).norm();
      r.interior = r.distance <= 1e-12 && s * std::sqrt(w2) > 1e-12;
      return r;
    }
    case LocusKind::OrbitCone: {
      validate_weight(a.group, l.omega);
      if (a.group.kind == GroupKind::SU2 && l.omega.m() > 0) {
        // Cone over a radius-m sphere: every nonzero value is interior.
        r.distance = 0.0;
        r.interior = v.norm() > 0;
        return r;
      }
      // Abelian orbits are points, so the cone reduces to the weight ray.
      Locus ray{LocusKind::WeightRay, l.omega};
      return locus_distance(m, a, p, ray);
    }
  }
  throw std::logic_error("locus_distance: unreachable");
}

bool is_excluded_point(const Model& m, const ActionSpec& a, const Point& p) {
  a.validate_against(m);
  validate_point(m, p);
  if (a.group.kind != GroupKind::SU2 || m.factors != 2) return false;
  Eigen::Vector3d gap = p.f[0].u() - p.f[1].u();
  return gap.norm() < 1e-9;
}

}  // namespace ebk
