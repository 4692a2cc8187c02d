// Compact groups acting in the library: circle, torus of rank g, SU(2).
//
// Conventions:
//  * Torus elements are angle vectors theta in [0,2pi)^g; the weight-omega
//    character is exp(i <omega,theta>).
//  * SU(2) elements are unit quaternions q = w + xi + yj + zk, identified with
//      U(q) = [[w - iz, -y - ix], [y - ix, w + iz]],
//    a group isomorphism onto SU(2).  Irreducibles are labelled by the
//    highest weight m >= 0 (dimension m+1, spin m/2).

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace ebk {

enum class GroupKind { Circle, Torus, SU2 };

struct GroupSpec {
  GroupKind kind = GroupKind::Circle;
  int rank = 1;  // Cartan rank: 1 for Circle and SU2, g for Torus

  static GroupSpec circle() { return {GroupKind::Circle, 1}; }
  static GroupSpec torus(int g);
  static GroupSpec su2() { return {GroupKind::SU2, 1}; }

  bool abelian() const { return kind != GroupKind::SU2; }
  // Real dimension of the group manifold.
  int dim() const { return kind == GroupKind::SU2 ? 3 : rank; }
  bool operator==(const GroupSpec& o) const { return kind == o.kind && rank == o.rank; }
};

// Dominant integral weight.  For abelian groups an integer vector of length
// rank; for SU(2) a single non-negative integer m.
struct Weight {
  std::vector<long long> comp;

  static Weight su2(long long m);
  static Weight scalar(long long n) { return Weight{{n}}; }
  static Weight vec(std::vector<long long> c) { return Weight{std::move(c)}; }

  long long m() const { return comp.at(0); }
  bool is_zero() const;
  bool operator==(const Weight& o) const { return comp == o.comp; }
  bool operator<(const Weight& o) const { return comp < o.comp; }
  std::string str() const;
};

struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;

  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  double norm() const;
  Quaternion normalized() const;
  Quaternion operator*(const Quaternion& o) const;
};

// Axis-angle generators: rotation by phi about the z (resp. y) axis of the
// adjoint action.  U(qz(phi)) = diag(e^{-i phi/2}, e^{i phi/2}).
Quaternion quat_z(double phi);
Quaternion quat_y(double phi);

struct GroupElement {
  std::vector<double> theta;  // abelian part
  Quaternion q;               // SU(2) part

  static GroupElement angles(std::vector<double> th) { return GroupElement{std::move(th), {}}; }
  static GroupElement su2(const Quaternion& q) { return GroupElement{{}, q}; }
  static GroupElement identity(const GroupSpec& g);
};

GroupElement group_multiply(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement group_inverse(const GroupSpec& g, const GroupElement& a);

// 2x2 unitary matrix of an SU(2) element, row-major {u00,u01,u10,u11}.
std::array<std::complex<double>, 4> su2_matrix(const Quaternion& q);

// Conjugacy-class angle t in [0,pi]: eigenvalues of U(q) are e^{+-it}.
double su2_class_angle(const Quaternion& q);

void validate_weight(const GroupSpec& g, const Weight& w);

long long irrep_dim(const GroupSpec& g, const Weight& w);

// Character of the irreducible with highest weight w at g.  For SU(2) this is
// the Weyl ratio sin((m+1)t)/sin(t), evaluated by series near t=0 and t=pi.
std::complex<double> character(const GroupSpec& g, const Weight& w, const GroupElement& x);

struct QuadratureNode {
  GroupElement g;
  double weight;
};

// Quadrature for normalized Haar measure.  Weights sum to 1 and the rule
// integrates matrix coefficients of every irreducible with highest weight
// m < order exactly (up to roundoff).
//
// Torus: product of equispaced rules with `order` points per circle.
// SU(2): Euler-angle rule g = qz(alpha) qy(beta) qz(gamma) with equispaced
// alpha in [0,2pi), gamma in [0,4pi), Gauss-Legendre in cos(beta).  The gamma
// rule annihilates every nonzero Fourier mode of magnitude < order, which is
// what kills the cross terms in the Wigner D expansion.
std::vector<QuadratureNode> haar_quadrature(const GroupSpec& g, int order);

// Multiplicity of the highest weight m in Sym^a x Sym^b (Clebsch-Gordan):
// 1 if |a-b| <= m <= a+b and m = a+b (mod 2), else 0.
int clebsch_gordan_mult(long long a, long long b, long long m);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace ebk
