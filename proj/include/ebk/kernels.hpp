// Pointwise Bergman-type densities of section subspaces: for a subspace with
// Gram-orthonormal basis {s_j} the density at p is sum_j |s_j(p)|^2 evaluated
// on the unit-norm representative, and the two-point kernel is
// sum_j s_j(p) conj(s_j(q)).  Basis independence is what the rotation tests
// check; the numbers here only depend on the spanned subspace.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ebk/sections.hpp"

namespace ebk {

// |section|^2 at p for a single coefficient vector (monomial coordinates).
double pointwise_norm_sq(const SectionSpace& s, const Eigen::VectorXcd& coeff, const Point& p);

// Density of a component with Gram-orthonormal basis columns.
double density(const SectionSpace& s, const IsotypicComponent& comp, const Point& p);

// Density of the full ladder of omega, streamed component by component.
double ladder_density(const SectionSpace& s, const Weight& omega, const Point& p);

std::complex<double> two_point_kernel(const SectionSpace& s, const IsotypicComponent& comp,
                                      const Point& p, const Point& q);

// Integral of the component density over M against the product Fubini-Study
// measure (unit mass per factor), via the quadrature Gram.  Equals the
// component dimension when the basis is Gram-orthonormal.
double integrate_density(const SectionSpace& s, const IsotypicComponent& comp, int order);

// log of the weight-omega density for an abelian action at a point with
// factor heights t, by the closed-form monomial sums in log space; usable at
// k values where binomial coefficients overflow.  Returns -inf for an empty
// component or a density underflowing to zero.
double abelian_density_log(const Model& m, const ActionSpec& a, const Weight& omega, long long k,
                           const std::vector<double>& t);

// Same for the whole ladder of omega (sum over ell >= 1).
double abelian_ladder_density_log(const Model& m, const ActionSpec& a, const Weight& omega,
                                  long long k, const std::vector<double>& t);

}  // namespace ebk
