// Spaces of global sections of L^k on the model manifolds, realized as spans
// of monomials in the homogeneous coordinates, together with the equivariant
// structure: Gram data, group action, sl2 ladder operators, and the isotypic
// decomposition.
//
// Basis convention: factor f contributes monomials z0^(d_f-e) z1^e with
// d_f = a_f k and e in [0, d_f]; flat indices are factor-major lexicographic
// in the exponents (e_0, e_1, ...).  With the Fubini-Study fiber metric and
// unit-mass volume per factor the Gram matrix is diagonal,
//   <m_e, m_e> = prod_f 1 / ((d_f + 1) binom(d_f, e_f)).

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ebk/models.hpp"

namespace ebk {

class SectionSpace {
 public:
  SectionSpace(const Model& m, const ActionSpec& a, long long k);

  const Model& model() const { return model_; }
  const ActionSpec& action() const { return action_; }
  long long k() const { return k_; }
  long long dim() const { return dim_; }
  const std::vector<long long>& degrees() const { return degrees_; }

  std::vector<long long> exponents(long long idx) const;
  long long flat_index(const std::vector<long long>& e) const;

  double gram_diag(long long idx) const;
  double log_gram_diag(long long idx) const;

  // Abelian actions: exact integer weight of monomial idx, component r equal
  // to sum_f e_f w_{rf} - k beta_r (k beta_r is integral for admissible k).
  std::vector<long long> monomial_weight(long long idx) const;

  // SU(2): eigenvalue of the Cartan generator H, sum_f (d_f - 2 e_f).
  long long h_eigenvalue(long long idx) const;

  // Values of all monomials at the unit-norm representative of p.
  Eigen::VectorXcd monomial_values(const Point& p) const;

 private:
  Model model_;
  ActionSpec action_;
  long long k_ = 0;
  long long dim_ = 1;
  std::vector<long long> degrees_;
  std::vector<long long> strides_;
  std::vector<std::vector<double>> binom_;      // per factor, binom(d_f, .)
  std::vector<std::vector<double>> log_binom_;  // per factor, lgamma based
};

SectionSpace build_space(const Model& m, const ActionSpec& a, long long k);

// Closed-form (diagonal) Gram matrix of the monomial basis.
Eigen::MatrixXd gram_matrix(const SectionSpace& s);

// Gram matrix by numerical integration: per factor a Gauss-Legendre rule with
// `order` nodes in the height t and an equispaced phase rule fine enough for
// the occurring frequencies, combined by the product structure.  Exact for
// polynomial degree below 2*order.
Eigen::MatrixXcd quadrature_gram_oracle(const SectionSpace& s, int order);

// Basis orthonormal w.r.t. the closed-form Gram (columns are coefficient
// vectors in the monomial basis).
Eigen::MatrixXcd orthonormal_basis(const SectionSpace& s);

// Cholesky-based orthonormalization for a general Hermitian positive Gram:
// returns B with B^H G B = I.
Eigen::MatrixXcd orthonormal_basis_from_gram(const Eigen::MatrixXcd& gram);

// Matrix of (rho(g) f)(z) = f(g^{-1} z) in the monomial basis.  Diagonal for
// abelian actions; a Kronecker product of symmetric-power matrices for SU(2).
Eigen::MatrixXcd group_action_matrix(const SectionSpace& s, const GroupElement& g);

enum class SL2Gen { E, F, H };

// y += (generator) x for the sl2 triple E = z0 d/dz1, F = z1 d/dz0,
// H = [E,F], summed over factors.  Integer coefficients, applied exactly.
void sl2_apply(const SectionSpace& s, SL2Gen gen, const Eigen::VectorXcd& x, Eigen::VectorXcd& y);

// Dense matrix of the generator (small spaces / tests).
Eigen::MatrixXd lie_algebra_action(const SectionSpace& s, SL2Gen gen);

struct IsotypicComponent {
  Weight weight;
  long long multiplicity = 0;  // of the irreducible V_omega
  long long dim = 0;           // multiplicity * irrep_dim(omega)
  // dim columns, orthonormal w.r.t. the Gram pairing.  SU(2) columns are
  // grouped per highest-weight vector and descend the F-ladder.
  Eigen::MatrixXcd basis;
};

// Multiplicity of the weight-omega component without materializing a basis.
long long abelian_multiplicity(const Model& m, const ActionSpec& a, const Weight& omega, long long k);

// Exponent tuples of the monomials spanning the weight-omega component.
std::vector<std::vector<long long>> abelian_component_exponents(const Model& m, const ActionSpec& a,
                                                                const Weight& omega, long long k);

// All occurring weights with multiplicities, in increasing weight order.
std::vector<std::pair<Weight, long long>> isotypic_multiplicities(const SectionSpace& s);

// Full decomposition with orthonormal bases per component.
std::vector<IsotypicComponent> isotypic_decompose(const SectionSpace& s);

// Single component (empty basis when the multiplicity is zero).
IsotypicComponent isotypic_component(const SectionSpace& s, const Weight& omega);

// Projector onto the omega component via the character formula
//   P = dim(V_omega) * sum_q w_q chi_omega(g_q^{-1}) rho(g_q)
// over haar_quadrature nodes.  Independent route used to cross-check the
// ladder construction; cost one rho(g) per node.
Eigen::MatrixXcd character_projector_oracle(const SectionSpace& s, const Weight& omega, int order);

// Same, sharing the rho(g) evaluations across several weights.
std::vector<Eigen::MatrixXcd> character_projectors(const SectionSpace& s,
                                                   const std::vector<Weight>& omegas, int order);

// Multiples ell >= 1 with a nonzero (ell * omega) component.
std::vector<long long> ladder_multiples(const SectionSpace& s, const Weight& omega);

// Components along the ladder of omega, increasing ell.
std::vector<IsotypicComponent> ladder_components(const SectionSpace& s, const Weight& omega);

// Direct sum of the (ell * omega) components for ell >= 1, as one block with
// concatenated basis columns.  weight is omega; multiplicity and dim count the
// whole ladder.
IsotypicComponent ladder_subspace(const SectionSpace& s, const Weight& omega);

}  // namespace ebk
