#include <doctest.h>

#include <cmath>
#include <complex>

#include "ebk/groups.hpp"
#include "oracles.hpp"

using namespace ebk;

namespace {

Quaternion random_versor(oracles::Rng& rng) {
  Quaternion q{rng.gauss(), rng.gauss(), rng.gauss(), rng.gauss()};
  return q.normalized();
}

std::complex<double> mat_mul_entry(const std::array<std::complex<double>, 4>& a,
                                   const std::array<std::complex<double>, 4>& b, int i, int j) {
  return a[static_cast<size_t>(2 * i)] * b[static_cast<size_t>(j)] +
         a[static_cast<size_t>(2 * i + 1)] * b[static_cast<size_t>(2 + j)];
}

}  // namespace

TEST_CASE("quaternions map homomorphically onto SU(2)") {
  oracles::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Quaternion a = random_versor(rng), b = random_versor(rng);
    auto ua = su2_matrix(a), ub = su2_matrix(b), uab = su2_matrix(a * b);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs(uab[static_cast<size_t>(2 * i + j)] - mat_mul_entry(ua, ub, i, j)) < 1e-14);
    // unitarity and determinant 1
    std::complex<double> det = ua[0] * ua[3] - ua[1] * ua[2];
    CHECK(std::abs(det - 1.0) < 1e-14);
  }
}

TEST_CASE("axis generators have the advertised matrices") {
  double phi = 0.73;
  auto uz = su2_matrix(quat_z(phi));
  CHECK(std::abs(uz[0] - std::polar(1.0, -phi / 2)) < 1e-15);
  CHECK(std::abs(uz[3] - std::polar(1.0, phi / 2)) < 1e-15);
  CHECK(std::abs(uz[1]) < 1e-15);
  auto uy = su2_matrix(quat_y(phi));
  CHECK(uy[0].imag() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(uy[0] - std::complex<double>(std::cos(phi / 2), 0)) < 1e-15);
  CHECK(std::abs(uy[2] - std::complex<double>(std::sin(phi / 2), 0)) < 1e-15);
}

TEST_CASE("class angle reads off the eigenphase") {
  CHECK(su2_class_angle(quat_z(1.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(su2_class_angle(Quaternion{1, 0, 0, 0}) == doctest::Approx(0.0));
  CHECK(su2_class_angle(Quaternion{-1, 0, 0, 0}) == doctest::Approx(oracles::kPi));
  oracles::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    Quaternion q = random_versor(rng);
    double t = su2_class_angle(q);
    auto u = su2_matrix(q);
    // trace = 2 cos t
    CHECK(std::abs((u[0] + u[3]).real() - 2 * std::cos(t)) < 1e-13);
  }
}

TEST_CASE("su2 characters match the explicit eigenphase sum") {
  GroupSpec g = GroupSpec::su2();
  oracles::Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    Quaternion q = random_versor(rng);
    double t = su2_class_angle(q);
    for (long long m = 0; m <= 12; ++m) {
      std::complex<double> direct = 0;
      for (long long j = 0; j <= m; ++j) direct += std::polar(1.0, (static_cast<double>(m - 2 * j)) * t);
      std::complex<double> chi = character(g, Weight::su2(m), GroupElement::su2(q));
      CHECK(std::abs(chi - direct) < 1e-11);
    }
  }
}

TEST_CASE("su2 character series region near t = 0 and t = pi") {
  GroupSpec g = GroupSpec::su2();
  for (long long m : {0LL, 1LL, 4LL, 9LL}) {
    // identity: dimension
    auto chi0 = character(g, Weight::su2(m), GroupElement::su2(Quaternion{1, 0, 0, 0}));
    CHECK(chi0.real() == doctest::Approx(static_cast<double>(m + 1)).epsilon(1e-14));
    // tiny angle: continuous continuation of sin((m+1)t)/sin(t)
    for (double phi : {1e-9, 1e-6, 2.3e-4}) {
      auto chi = character(g, Weight::su2(m), GroupElement::su2(quat_z(phi)));
      double t = phi / 2;
      double expected = t < 1e-12 ? static_cast<double>(m + 1) : std::sin((m + 1) * t) / std::sin(t);
      CHECK(chi.real() == doctest::Approx(expected).epsilon(1e-10));
      CHECK(std::abs(chi.imag()) < 1e-12);
    }
    // near pi: sign (-1)^m of the dimension
    auto chipi = character(g, Weight::su2(m), GroupElement::su2(Quaternion{-1, 0, 0, 0}));
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    CHECK(chipi.real() == doctest::Approx(sign * static_cast<double>(m + 1)).epsilon(1e-12));
  }
}

TEST_CASE("characters are conjugation invariant") {
  GroupSpec g = GroupSpec::su2();
  oracles::Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    Quaternion a = random_versor(rng), h = random_versor(rng);
    Quaternion conj = h * a * h.conjugate();
    for (long long m : {1LL, 5LL, 8LL}) {
      auto c1 = character(g, Weight::su2(m), GroupElement::su2(a));
      auto c2 = character(g, Weight::su2(m), GroupElement::su2(conj));
      CHECK(std::abs(c1 - c2) < 1e-10);
    }
  }
}

TEST_CASE("group multiply and inverse agree with the matrix model") {
  GroupSpec g = GroupSpec::su2();
  oracles::Rng rng(15);
  Quaternion a = random_versor(rng), b = random_versor(rng);
  GroupElement ab = group_multiply(g, GroupElement::su2(a), GroupElement::su2(b));
  CHECK(std::abs(ab.q.w - (a * b).w) < 1e-14);
  GroupElement inv = group_inverse(g, GroupElement::su2(a));
  Quaternion idq = (a * inv.q);
  CHECK(idq.w == doctest::Approx(1.0).epsilon(1e-12));

  GroupSpec t2 = GroupSpec::torus(2);
  GroupElement x = GroupElement::angles({0.3, 5.1});
  GroupElement y = GroupElement::angles({1.2, 2.0});
  GroupElement xy = group_multiply(t2, x, y);
  CHECK(xy.theta[0] == doctest::Approx(1.5));
  GroupElement xinv = group_inverse(t2, x);
  auto chi = character(t2, Weight::vec({3, -2}), group_multiply(t2, x, xinv));
  CHECK(chi.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  for (int n : {1, 2, 5, 16}) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    REQUIRE(static_cast<int>(x.size()) == n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double acc = 0;
      for (int i = 0; i < n; ++i) acc += w[static_cast<size_t>(i)] * std::pow(x[static_cast<size_t>(i)], deg);
      double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
      CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("haar quadrature weights are a probability measure") {
  for (int order : {8, 16}) {
    for (GroupSpec g : {GroupSpec::su2(), GroupSpec::circle(), GroupSpec::torus(2)}) {
      auto nodes = haar_quadrature(g, order);
      double total = 0;
      for (const auto& n : nodes) total += n.weight;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("character orthogonality under haar quadrature") {
  // order above the largest product weight makes the rule exact
  GroupSpec g = GroupSpec::su2();
  auto nodes = haar_quadrature(g, 24);
  for (long long a = 0; a <= 10; ++a)
    for (long long b = a; b <= 10; ++b) {
      std::complex<double> acc = 0;
      for (const auto& n : nodes)
        acc += n.weight * character(g, Weight::su2(a), n.g) * std::conj(character(g, Weight::su2(b), n.g));
      double expected = (a == b) ? 1.0 : 0.0;
      CHECK(std::abs(acc - expected) < 1e-9);
    }
}

TEST_CASE("torus character orthogonality") {
  GroupSpec g = GroupSpec::torus(2);
  auto nodes = haar_quadrature(g, 9);
  std::vector<Weight> ws = {Weight::vec({0, 0}), Weight::vec({1, 0}), Weight::vec({2, -3}),
                            Weight::vec({-4, 4})};
  for (const Weight& a : ws)
    for (const Weight& b : ws) {
      std::complex<double> acc = 0;
      for (const auto& n : nodes)
        acc += n.weight * character(g, a, n.g) * std::conj(character(g, b, n.g));
      double expected = (a == b) ? 1.0 : 0.0;
      CHECK(std::abs(acc - expected) < 1e-12);
    }
}

TEST_CASE("haar quadrature matches the class-function integral") {
  GroupSpec g = GroupSpec::su2();
  auto nodes = haar_quadrature(g, 32);
  for (long long m : {0LL, 1LL, 2LL, 7LL}) {
    double lib = 0;
    for (const auto& n : nodes)
      lib += n.weight * std::norm(character(g, Weight::su2(m), n.g));
    double ref = oracles::class_integral([&](double t) {
      double s = std::sin(t);
      double num = std::sin((m + 1) * t);
      return s < 1e-9 ? static_cast<double>((m + 1) * (m + 1)) : (num * num) / (s * s);
    });
    CHECK(lib == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ref == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("irrep dimensions and weight validation") {
  CHECK(irrep_dim(GroupSpec::su2(), Weight::su2(7)) == 8);
  CHECK(irrep_dim(GroupSpec::circle(), Weight::scalar(-3)) == 1);
  CHECK(irrep_dim(GroupSpec::torus(2), Weight::vec({5, 5})) == 1);
  CHECK_THROWS_AS(validate_weight(GroupSpec::su2(), Weight::su2(-1)), std::invalid_argument);
  CHECK_THROWS_AS(validate_weight(GroupSpec::torus(2), Weight::scalar(1)), std::invalid_argument);
  CHECK_THROWS_AS(GroupSpec::torus(0), std::invalid_argument);
}

TEST_CASE("clebsch-gordan multiplicities") {
  CHECK(clebsch_gordan_mult(3, 2, 1) == 1);
  CHECK(clebsch_gordan_mult(3, 2, 5) == 1);
  CHECK(clebsch_gordan_mult(3, 2, 2) == 0);  // parity
  CHECK(clebsch_gordan_mult(3, 2, 7) == 0);  // above a+b
  CHECK(clebsch_gordan_mult(4, 4, 0) == 1);
  for (long long a = 0; a <= 30; ++a)
    for (long long b = 0; b <= 30; ++b) {
      long long total = 0;
      for (long long m = 0; m <= a + b; ++m)
        total += clebsch_gordan_mult(a, b, m) * (m + 1);
      CHECK(total == (a + 1) * (b + 1));
    }
}

TEST_CASE("symmetric plus positive semidefinite perturbations stay nonsingular") {
  oracles::Rng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    long long b = 1 + (trial % 8);
    Eigen::MatrixXd mr(b, b), bs(b, b);
    for (long long i = 0; i < b; ++i)
      for (long long j = 0; j < b; ++j) mr(i, j) = rng.gauss();
    for (long long i = 0; i < b; ++i)
      for (long long j = i; j < b; ++j) bs(i, j) = bs(j, i) = rng.gauss();
    Eigen::MatrixXcd cc = (mr * mr.transpose() + 1e-4 * Eigen::MatrixXd::Identity(b, b))
                              .cast<std::complex<double>>() +
                          std::complex<double>(0, 1) * bs.cast<std::complex<double>>();
    long long rank = trial % (b + 1);
    Eigen::MatrixXcd n(rank, b);
    for (long long i = 0; i < rank; ++i)
      for (long long j = 0; j < b; ++j) n(i, j) = rng.cgauss();
    Eigen::MatrixXcd x = cc + n.adjoint() * n;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x);
    CHECK(svd.singularValues()(b - 1) > 0);
    CHECK(svd.singularValues()(b - 1) > 1e-12 * svd.singularValues()(0));
  }
}
