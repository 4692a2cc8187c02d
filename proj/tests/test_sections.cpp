// Section spaces: Gram data, group action, sl2 ladder, isotypic pieces.

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>
#include <vector>

#include "ebk/sections.hpp"
#include "oracles.hpp"

using namespace ebk;

namespace {

Quaternion random_rotation(oracles::Rng& rng) {
  Quaternion q{rng.gauss(), rng.gauss(), rng.gauss(), rng.gauss()};
  return q.normalized();
}

double gram_orthonormality_defect(const SectionSpace& s, const Eigen::MatrixXcd& basis) {
  Eigen::MatrixXcd g = gram_matrix(s).cast<std::complex<double>>();
  Eigen::MatrixXcd should_be_id = basis.adjoint() * g * basis;
  return (should_be_id - Eigen::MatrixXcd::Identity(basis.cols(), basis.cols())).norm();
}

}  // namespace

TEST_CASE("space dimensions and index round trip") {
  SectionSpace s1 = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(0)), 5);
  CHECK(s1.dim() == 6);
  CHECK(s1.degrees() == std::vector<long long>{5});

  SectionSpace s2 = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 3);
  CHECK(s2.dim() == 28);
  CHECK(s2.degrees() == std::vector<long long>{6, 3});
  for (long long idx = 0; idx < s2.dim(); ++idx) {
    std::vector<long long> e = s2.exponents(idx);
    REQUIRE(e.size() == 2);
    CHECK(e[0] >= 0);
    CHECK(e[0] <= 6);
    CHECK(e[1] >= 0);
    CHECK(e[1] <= 3);
    CHECK(s2.flat_index(e) == idx);
  }
  CHECK_THROWS_AS(s2.exponents(28), std::invalid_argument);
  CHECK_THROWS_AS(s2.flat_index({0}), std::invalid_argument);
  CHECK_THROWS_AS(s2.flat_index({7, 0}), std::invalid_argument);

  SectionSpace s0 = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(0)), 0);
  CHECK(s0.dim() == 1);

  CHECK_THROWS_AS(build_space(Model::p1(1), ActionSpec::circle({1}, Rational(1, 2)), 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_space(Model::p1(1), ActionSpec::circle({1}, Rational(0)), -1),
                  std::invalid_argument);
}

TEST_CASE("gram diagonal matches exact binomials") {
  SectionSpace s = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 4);
  for (long long idx = 0; idx < s.dim(); ++idx) {
    std::vector<long long> e = s.exponents(idx);
    double expected = 1.0;
    for (size_t f = 0; f < e.size(); ++f) {
      long long d = s.degrees()[f];
      expected /= static_cast<double>(d + 1) *
                  static_cast<double>(oracles::big_binom(d, e[f]));
    }
    CHECK(s.gram_diag(idx) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::exp(s.log_gram_diag(idx)) == doctest::Approx(expected).epsilon(1e-12));
  }
  Eigen::MatrixXd g = gram_matrix(s);
  CHECK((g - g.diagonal().asDiagonal().toDenseMatrix()).norm() == 0.0);
}

TEST_CASE("log gram survives degrees that overflow doubles") {
  // binom(2000,1000) ~ 10^600, far beyond double range
  SectionSpace s = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(0)), 2000);
  long long idx = s.flat_index({1000});
  double lg = s.log_gram_diag(idx);
  CHECK(std::isfinite(lg));
  double expected = -std::log(2001.0) - oracles::log_big(oracles::big_binom(2000, 1000));
  CHECK(lg == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("monomial values at named points") {
  SectionSpace s = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(0)), 4);
  Eigen::VectorXcd vn = s.monomial_values(Point::north(1));
  CHECK(std::abs(vn(0) - 1.0) < 1e-15);
  for (long long e = 1; e <= 4; ++e) CHECK(std::abs(vn(e)) < 1e-15);

  Eigen::VectorXcd vs = s.monomial_values(Point::south(1));
  CHECK(std::abs(vs(4) - 1.0) < 1e-15);
  for (long long e = 0; e < 4; ++e) CHECK(std::abs(vs(e)) < 1e-15);

  // real midpoint representative gives 2^{-d/2} for every monomial
  Eigen::VectorXcd vm = s.monomial_values(Point::from_t({Rational(1, 2)}));
  for (long long e = 0; e <= 4; ++e) CHECK(std::abs(vm(e) - 0.25) < 1e-15);

  // values are taken on the unit-norm representative
  oracles::Rng rng(3);
  Point p;
  FactorPoint fp;
  fp.z0 = rng.cgauss();
  fp.z1 = rng.cgauss();
  p.f = {fp};
  Point q = p;
  q.f[0].z0 *= 3.0;
  q.f[0].z1 *= 3.0;
  CHECK((s.monomial_values(p) - s.monomial_values(q)).norm() < 1e-14);
}

TEST_CASE("monomial weights track exponents and shift") {
  SectionSpace s = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(1, 2)), 2);
  std::vector<long long> seen;
  for (long long idx = 0; idx < s.dim(); ++idx) seen.push_back(s.monomial_weight(idx)[0]);
  CHECK(seen == std::vector<long long>{-1, 0, 1});

  SectionSpace s2 = build_space(Model::p1xp1(1, 2),
                                ActionSpec::torus({{1, 0}, {1, 1}}, {Rational(1, 2), Rational(0)}), 2);
  for (long long idx = 0; idx < s2.dim(); ++idx) {
    std::vector<long long> e = s2.exponents(idx);
    std::vector<long long> lam = s2.monomial_weight(idx);
    CHECK(lam[0] == e[0] - 1);
    CHECK(lam[1] == e[0] + e[1]);
  }
  CHECK_THROWS_AS(s2.h_eigenvalue(0), std::invalid_argument);

  SectionSpace su = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 2);
  CHECK_THROWS_AS(su.monomial_weight(0), std::invalid_argument);
  for (long long idx = 0; idx < su.dim(); ++idx) {
    std::vector<long long> e = su.exponents(idx);
    CHECK(su.h_eigenvalue(idx) == (4 - 2 * e[0]) + (2 - 2 * e[1]));
  }
}

TEST_CASE("quadrature gram reproduces the closed form") {
  SectionSpace s1 = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(0)), 3);
  Eigen::MatrixXcd q1 = quadrature_gram_oracle(s1, 16);
  Eigen::MatrixXcd c1 = gram_matrix(s1).cast<std::complex<double>>();
  CHECK((q1 - c1).cwiseAbs().maxCoeff() < 1e-12);

  SectionSpace s2 = build_space(Model::p1xp1(1, 2), ActionSpec::su2_diagonal(), 2);
  Eigen::MatrixXcd q2 = quadrature_gram_oracle(s2, 12);
  Eigen::MatrixXcd c2 = gram_matrix(s2).cast<std::complex<double>>();
  CHECK((q2 - c2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("orthonormal bases satisfy the gram pairing") {
  SectionSpace s = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 2);
  CHECK(gram_orthonormality_defect(s, orthonormal_basis(s)) < 1e-12);

  // Cholesky route on a non-diagonal positive definite Gram
  oracles::Rng rng(11);
  Eigen::MatrixXcd a(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a(i, j) = rng.cgauss();
  Eigen::MatrixXcd g = a.adjoint() * a + 0.1 * Eigen::MatrixXcd::Identity(5, 5);
  Eigen::MatrixXcd b = orthonormal_basis_from_gram(g);
  CHECK((b.adjoint() * g * b - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-12);

  Eigen::MatrixXcd neg = -g;
  CHECK_THROWS_AS(orthonormal_basis_from_gram(neg), std::runtime_error);
}

TEST_CASE("abelian action matrix is the weight phase") {
  SectionSpace s = build_space(Model::p1(1), ActionSpec::circle({2}, Rational(1, 2)), 2);
  GroupElement g = GroupElement::angles({0.7});
  Eigen::MatrixXcd rho = group_action_matrix(s, g);
  for (long long i = 0; i < s.dim(); ++i) {
    long long lam = s.monomial_weight(i)[0];
    std::complex<double> expected = std::exp(std::complex<double>(0.0, 0.7 * static_cast<double>(lam)));
    CHECK(std::abs(rho(i, i) - expected) < 1e-14);
  }
  CHECK((rho - Eigen::MatrixXcd(rho.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("su2 action is a unitary representation") {
  SectionSpace s = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 2);
  Eigen::MatrixXcd g = gram_matrix(s).cast<std::complex<double>>();
  oracles::Rng rng(17);

  GroupElement id = GroupElement::identity(s.action().group);
  CHECK((group_action_matrix(s, id) - Eigen::MatrixXcd::Identity(s.dim(), s.dim())).norm() < 1e-14);

  for (int trial = 0; trial < 10; ++trial) {
    GroupElement a = GroupElement::su2(random_rotation(rng));
    GroupElement b = GroupElement::su2(random_rotation(rng));
    Eigen::MatrixXcd ra = group_action_matrix(s, a);
    Eigen::MatrixXcd rb = group_action_matrix(s, b);
    Eigen::MatrixXcd rab = group_action_matrix(s, group_multiply(s.action().group, a, b));
    CHECK((ra * rb - rab).norm() < 1e-12);
    // the action preserves the L2 pairing
    CHECK((ra.adjoint() * g * ra - g).norm() < 1e-12);
  }
}

TEST_CASE("sl2 generators satisfy the bracket exactly") {
  SectionSpace s = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 3);
  Eigen::MatrixXd e = lie_algebra_action(s, SL2Gen::E);
  Eigen::MatrixXd f = lie_algebra_action(s, SL2Gen::F);
  Eigen::MatrixXd h = lie_algebra_action(s, SL2Gen::H);

  // integer entries, so the bracket holds with no roundoff at all
  CHECK(((e * f - f * e) - h).cwiseAbs().maxCoeff() == 0.0);

  for (long long idx = 0; idx < s.dim(); ++idx) CHECK(h(idx, idx) == static_cast<double>(s.h_eigenvalue(idx)));

  // F is the Gram adjoint of E: G^{-1} E^T G = F
  Eigen::VectorXd gd(s.dim());
  for (long long i = 0; i < s.dim(); ++i) gd(i) = s.gram_diag(i);
  Eigen::MatrixXd adj = gd.cwiseInverse().asDiagonal() * e.transpose() * gd.asDiagonal();
  CHECK((adj - f).cwiseAbs().maxCoeff() < 1e-12);

  // streaming application agrees with the dense matrices
  oracles::Rng rng(23);
  Eigen::VectorXcd x(s.dim());
  for (long long i = 0; i < s.dim(); ++i) x(i) = rng.cgauss();
  Eigen::VectorXcd y;
  sl2_apply(s, SL2Gen::E, x, y);
  CHECK((y - e.cast<std::complex<double>>() * x).norm() < 1e-12);
  sl2_apply(s, SL2Gen::F, x, y);
  CHECK((y - f.cast<std::complex<double>>() * x).norm() < 1e-12);
  sl2_apply(s, SL2Gen::H, x, y);
  CHECK((y - h.cast<std::complex<double>>() * x).norm() < 1e-12);

  SectionSpace ab = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(0)), 2);
  CHECK_THROWS_AS(lie_algebra_action(ab, SL2Gen::E), std::invalid_argument);
}

TEST_CASE("abelian multiplicities match direct enumeration") {
  struct Case {
    Model m;
    ActionSpec a;
    long long k;
  };
  std::vector<Case> cases = {
      {Model::p1(1), ActionSpec::circle({1}, Rational(1, 2)), 6},
      {Model::p1(2), ActionSpec::circle({3}, Rational(0)), 4},
      {Model::p1xp1(1, 1), ActionSpec::circle({1, 1}, Rational(1)), 5},
      {Model::p1xp1(2, 1), ActionSpec::torus({{1, 0}, {1, 1}}, {Rational(1, 2), Rational(0)}), 4},
      {Model::p1xp1(1, 1), ActionSpec::torus({{1, -1}}, {Rational(0)}), 3},
  };
  for (const Case& c : cases) {
    SectionSpace s = build_space(c.m, c.a, c.k);
    long long total = 0;
    for (const auto& [w, mult] : isotypic_multiplicities(s)) {
      CHECK(mult == oracles::enumerate_multiplicity(c.m, c.a, w.comp, c.k));
      CHECK(mult == abelian_multiplicity(c.m, c.a, w, c.k));
      total += mult;
    }
    CHECK(total == s.dim());

    // absent weights really are absent
    Weight far = Weight::vec(std::vector<long long>(static_cast<size_t>(c.a.group.rank),
                                                    1000000));
    CHECK(abelian_multiplicity(c.m, c.a, far, c.k) == 0);
  }
}

TEST_CASE("abelian component exponents carry the requested weight") {
  Model m = Model::p1xp1(2, 1);
  ActionSpec a = ActionSpec::torus({{1, 0}, {1, 1}}, {Rational(1, 2), Rational(0)});
  long long k = 4;
  SectionSpace s = build_space(m, a, k);
  for (const auto& [w, mult] : isotypic_multiplicities(s)) {
    auto exps = abelian_component_exponents(m, a, w, k);
    CHECK(static_cast<long long>(exps.size()) == mult);
    for (const auto& e : exps) {
      long long idx = s.flat_index(e);
      CHECK(s.monomial_weight(idx) == w.comp);
    }
  }
}

TEST_CASE("su2 decomposition matches clebsch gordan") {
  for (long long k = 1; k <= 5; ++k) {
    SectionSpace s = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), k);
    std::vector<IsotypicComponent> comps = isotypic_decompose(s);
    long long total = 0;
    std::set<long long> seen;
    for (const IsotypicComponent& c : comps) {
      long long m = c.weight.m();
      seen.insert(m);
      CHECK(c.multiplicity == clebsch_gordan_mult(2 * k, k, m));
      CHECK(c.dim == c.multiplicity * (m + 1));
      CHECK(gram_orthonormality_defect(s, c.basis) < 1e-10);
      total += c.dim;
    }
    CHECK(total == s.dim());
    // every possible highest weight accounted for
    for (long long m = 0; m <= 3 * k; ++m)
      if (clebsch_gordan_mult(2 * k, k, m) > 0) CHECK(seen.count(m) == 1);
  }

  // a single factor carries one irreducible
  SectionSpace sp = build_space(Model::p1(2), ActionSpec::su2_diagonal(), 3);
  std::vector<IsotypicComponent> comps = isotypic_decompose(sp);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].weight.m() == 6);
  CHECK(comps[0].multiplicity == 1);
  CHECK(comps[0].dim == 7);
}

TEST_CASE("single component lookup agrees with the full decomposition") {
  SectionSpace s = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 3);
  IsotypicComponent c = isotypic_component(s, Weight::su2(5));
  CHECK(c.multiplicity == 1);
  CHECK(c.dim == 6);
  CHECK(gram_orthonormality_defect(s, c.basis) < 1e-10);

  // weights of the wrong parity or out of range have empty components
  IsotypicComponent none = isotypic_component(s, Weight::su2(4));
  CHECK(none.multiplicity == 0);
  CHECK(none.basis.cols() == 0);
  IsotypicComponent high = isotypic_component(s, Weight::su2(11));
  CHECK(high.multiplicity == 0);

  SectionSpace ab = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(1, 2)), 4);
  IsotypicComponent w0 = isotypic_component(ab, Weight::scalar(0));
  CHECK(w0.multiplicity == 1);
  CHECK(gram_orthonormality_defect(ab, w0.basis) < 1e-12);
}

TEST_CASE("character projector fixes its component and kills the rest") {
  SectionSpace s = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 3);
  Eigen::MatrixXcd p = character_projector_oracle(s, Weight::su2(5), 40);
  IsotypicComponent own = isotypic_component(s, Weight::su2(5));
  CHECK((p * own.basis - own.basis).norm() < 1e-9);
  IsotypicComponent other = isotypic_component(s, Weight::su2(9));
  CHECK((p * other.basis).norm() < 1e-9);

  // the Gram-orthogonal projector built from the basis is the same operator
  Eigen::MatrixXcd g = gram_matrix(s).cast<std::complex<double>>();
  Eigen::MatrixXcd direct = own.basis * own.basis.adjoint() * g;
  CHECK((p - direct).cwiseAbs().maxCoeff() < 1e-9);

  // abelian route: projector onto a circle weight
  SectionSpace ab = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(1, 2)), 4);
  Eigen::MatrixXcd pa = character_projector_oracle(ab, Weight::scalar(1), 16);
  IsotypicComponent ca = isotypic_component(ab, Weight::scalar(1));
  CHECK((pa * ca.basis - ca.basis).norm() < 1e-12);
  CHECK(std::abs(pa.trace().real() - static_cast<double>(ca.multiplicity)) < 1e-12);
}

TEST_CASE("ladder multiples and subspace") {
  SectionSpace s = build_space(Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 3);
  CHECK(ladder_multiples(s, Weight::su2(3)) == std::vector<long long>{1, 3});

  std::vector<IsotypicComponent> comps = ladder_components(s, Weight::su2(3));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].weight.m() == 3);
  CHECK(comps[1].weight.m() == 9);

  IsotypicComponent lad = ladder_subspace(s, Weight::su2(3));
  CHECK(lad.dim == 4 + 10);
  CHECK(lad.basis.cols() == lad.dim);
  CHECK(gram_orthonormality_defect(s, lad.basis) < 1e-10);

  CHECK_THROWS_AS(ladder_multiples(s, Weight::su2(0)), std::invalid_argument);

  // abelian ladders: positive weights reach up to the top monomial weight
  SectionSpace ab = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(0)), 5);
  CHECK(ladder_multiples(ab, Weight::scalar(1)) == std::vector<long long>{1, 2, 3, 4, 5});
  CHECK(ladder_multiples(ab, Weight::scalar(2)) == std::vector<long long>{1, 2});
  CHECK(ladder_multiples(ab, Weight::scalar(-1)).empty());

  SectionSpace ab2 = build_space(Model::p1(1), ActionSpec::circle({1}, Rational(1, 2)), 6);
  // weights run from -3 to 3, so the ladder of 2 stops at ell=1
  CHECK(ladder_multiples(ab2, Weight::scalar(2)) == std::vector<long long>{1});
  IsotypicComponent lad2 = ladder_subspace(ab2, Weight::scalar(1));
  CHECK(lad2.dim == 3);
}
