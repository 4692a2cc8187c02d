// Model manifolds P^1 and P^1 x P^1 with product polarizations, points in
// homogeneous coordinates, group actions, and moment maps.
//
// Per factor the hyperplane-bundle moment data is expressed through
// t = |z1|^2 / (|z0|^2 + |z1|^2), the height function of the standard circle
// action, and through the unit vector
//   u([z0:z1]) = (2 Re(conj(z0) z1), 2 Im(conj(z0) z1), |z0|^2 - |z1|^2)
// for SU(2), both evaluated on unit-norm representatives.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "ebk/groups.hpp"
#include "ebk/rational.hpp"

namespace ebk {

struct Model {
  int factors = 1;                // 1 for P^1, 2 for P^1 x P^1
  std::vector<int> polarization;  // tensor powers a_f >= 1 of the hyperplane bundle

  static Model p1(int a = 1);
  static Model p1xp1(int a, int b);

  int complex_dim() const { return factors; }
  long long degree(int factor, long long k) const;  // a_f * k
  std::string str() const;
};

// Abelian actions act factorwise through the standard circle action with an
// integer weight per generator and factor, minus a rational shift beta:
//   Phi_r(p) = sum_f a_f w_{rf} t_f - beta_r.
// The SU(2) action is the diagonal Moebius action with moment map
//   Phi(p) = sum_f a_f u(p_f).
struct ActionSpec {
  GroupSpec group;
  std::vector<std::vector<long long>> weights;  // rank x factors, abelian only
  std::vector<Rational> shift;                  // length rank, abelian only

  static ActionSpec circle(std::vector<long long> factor_weights, Rational beta);
  static ActionSpec torus(std::vector<std::vector<long long>> w, std::vector<Rational> beta);
  static ActionSpec su2_diagonal();

  // Smallest positive d with d*beta integral; k must be a multiple.
  long long shift_denominator() const;
  void validate_against(const Model& m) const;
  std::string str() const;
};

struct FactorPoint {
  std::complex<double> z0{1.0, 0.0};
  std::complex<double> z1{0.0, 0.0};
  std::optional<Rational> t_exact;  // set when |z1|^2/|z|^2 is known exactly

  FactorPoint normalized() const;
  double t() const;  // |z1|^2 on the unit-norm representative
  Eigen::Vector3d u() const;
};

struct Point {
  std::vector<FactorPoint> f;

  static Point north(int factors);               // t = 0 on every factor
  static Point south(int factors);               // t = 1 on every factor
  static FactorPoint factor_from_t(Rational t);  // real representative (sqrt(1-t), sqrt(t))
  static Point from_t(std::vector<Rational> t);
  std::string str() const;
};

using MomentValue = Eigen::VectorXd;

void validate_point(const Model& m, const Point& p);

MomentValue moment_map(const Model& m, const ActionSpec& a, const Point& p);
MomentValue scaled_moment(const Model& m, const ActionSpec& a, const Point& p, long long k);

// Exact abelian moment map at a point with exact factor heights.
std::vector<Rational> moment_map_exact(const Model& m, const ActionSpec& a,
                                       const std::vector<Rational>& t);

enum class LocusKind {
  ZeroLevel,      // Phi^{-1}(0)
  WeightRay,      // closure of the ray R_{>0} * omega in the dual of the Lie algebra
  OrbitCone       // closure of the cone over the coadjoint orbit of omega
};

struct Locus {
  LocusKind kind = LocusKind::ZeroLevel;
  Weight omega;  // used by WeightRay / OrbitCone
};

struct LocusDistance {
  double distance = 0;  // Euclidean distance from Phi(p) to the locus
  bool interior = false;  // Phi(p) lies in the open cone / open ray
};

// Distance of Phi(p) (unscaled) to the requested locus.  For SU(2) a weight m
// sits at (0,0,m) and its coadjoint orbit is the radius-m sphere, so the cone
// over the orbit of any m >= 1 is all of R^3 and "interior" means Phi(p) != 0.
LocusDistance locus_distance(const Model& m, const ActionSpec& a, const Point& p, const Locus& l);

// True when the point must be removed for the asymptotic hypotheses: for the
// diagonal SU(2) action on P^1 x P^1 these are the points within 1e-9 of the
// diagonal, where the stabilizer jumps.  Other actions exclude nothing.
bool is_excluded_point(const Model& m, const ActionSpec& a, const Point& p);

}  // namespace ebk
