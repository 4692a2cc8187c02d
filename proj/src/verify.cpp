#include "ebk/verify.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "ebk/asymptotics.hpp"

namespace ebk {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// deterministic splitmix64 stream; avoids platform-dependent std distributions
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0,1)
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
  double gauss() {
    double u = uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
  }
  std::complex<double> cgauss() { return {gauss(), gauss()}; }
};

using BigInt = boost::multiprecision::cpp_int;

BigInt big_binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

// log of a positive big integer through its top 64 bits
double log_big(const BigInt& b) {
  using boost::multiprecision::msb;
  if (b <= 0) throw std::invalid_argument("log_big: positive input required");
  long long top_bit = static_cast<long long>(msb(b));
  long long shift = top_bit - 62;
  if (shift < 0) shift = 0;
  auto head = static_cast<uint64_t>(BigInt(b >> shift));
  return std::log(static_cast<double>(head)) + static_cast<double>(shift) * std::log(2.0);
}

Eigen::MatrixXcd random_unitary(Rng& rng, long long n) {
  Eigen::MatrixXcd g(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) g(i, j) = rng.cgauss();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  // fix the phase so the factorization is unique given g
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long long j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

Point offdiag_sample() {
  Point p;
  FactorPoint f0;
  f0.z0 = 0.6;
  f0.z1 = 0.8;
  f0.t_exact = Rational(16, 25);
  FactorPoint f1;
  f1.z0 = 12.0 / 13.0;
  f1.z1 = 5.0 / 13.0;
  f1.t_exact = Rational(25, 169);
  p.f = {f0, f1};
  return p;
}

struct Check {
  bool pass = true;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

// 1. SU(2) decomposition of the (2,1) product model: weights k, k+2, ..., 3k,
// multiplicity one each, dimensions summing to (2k+1)(k+1).
void criterion_decomposition(Check& c) {
  Model m = Model::p1xp1(2, 1);
  ActionSpec a = ActionSpec::su2_diagonal();
  long long worst_k = 0;
  for (long long k = 1; k <= 50; ++k) {
    SectionSpace s = build_space(m, a, k);
    std::vector<IsotypicComponent> comps = isotypic_decompose(s);
    bool ok = static_cast<long long>(comps.size()) == k + 1;
    long long total = 0;
    for (size_t j = 0; ok && j < comps.size(); ++j) {
      long long mw = comps[j].weight.m();
      ok = mw == k + 2 * static_cast<long long>(j) && comps[j].multiplicity == 1 &&
           comps[j].dim == mw + 1;
      total += comps[j].dim;
    }
    ok = ok && total == (2 * k + 1) * (k + 1);
    if (!ok) {
      worst_k = k;
      break;
    }
  }
  c.expect(worst_k == 0, "decomposition table wrong at k=" + std::to_string(worst_k));
  if (c.pass) c.note("k=1..50: weights {k..3k step 2}, mult 1, dims sum to (2k+1)(k+1)");
}

// 2. peak growth of the trivial component on P^1, circle weight 1, shift 1/2:
// exponent 1/2 and coefficient sqrt(2/pi) at t = 1/2, each value checked
// against the exact binomial expression.
void criterion_peak_growth(Check& c) {
  Model m = Model::p1(1);
  ActionSpec a = ActionSpec::circle({1}, Rational(1, 2));
  Weight w0 = Weight::scalar(0);
  std::vector<double> heights = {0.5};
  std::vector<SeriesSample> samples;
  double max_log_err = 0;
  for (long long k = 16; k <= 4096; k += 16) {
    double lg = abelian_density_log(m, a, w0, k, heights);
    double oracle = std::log(static_cast<double>(k + 1)) + log_big(big_binom(k, k / 2)) -
                    static_cast<double>(k) * std::log(2.0);
    max_log_err = std::max(max_log_err, std::abs(lg - oracle));
    samples.push_back({k, std::exp(lg)});
  }
  AsymptoticFit fit = fit_power_law(samples);
  double target = std::sqrt(2.0 / kPi);
  c.expect(max_log_err < 1e-9, "log density vs exact binomial: " + fmt(max_log_err));
  c.expect(std::abs(fit.richardson_exponent - 0.5) <= 0.02,
           "richardson=" + fmt(fit.richardson_exponent) + " not in 0.5+-0.02");
  c.expect(std::abs(fit.coefficient / target - 1.0) <= 0.02,
           "coefficient=" + fmt(fit.coefficient) + " not within 2% of " + fmt(target));
  if (c.pass)
    c.note("richardson=" + fmt(fit.richardson_exponent) + " (0.5+-0.02), coeff=" +
           fmt(fit.coefficient) + " (sqrt(2/pi)+-2%), max log err " + fmt(max_log_err));
}

// 3. same model at t = 0.3, off the zero level: exponential decay with
// log-slope (1/2) log(4 t (1-t)).
void criterion_rapid_decay(Check& c) {
  Model m = Model::p1(1);
  ActionSpec a = ActionSpec::circle({1}, Rational(1, 2));
  Weight w0 = Weight::scalar(0);
  double t = 0.3;
  std::vector<double> heights = {t};
  std::vector<SeriesSample> samples;
  double max_log_err = 0;
  for (long long k = 16; k <= 4096; k += 16) {
    double lg = abelian_density_log(m, a, w0, k, heights);
    double oracle = std::log(static_cast<double>(k + 1)) + log_big(big_binom(k, k / 2)) +
                    static_cast<double>(k / 2) * (std::log(t) + std::log(1.0 - t));
    max_log_err = std::max(max_log_err, std::abs(lg - oracle));
    samples.push_back({k, std::exp(lg)});
  }
  DecayVerdict v = classify_decay(samples);
  double target = 0.5 * std::log(4.0 * t * (1.0 - t));
  double rel = std::abs(v.log_slope - target) / std::abs(target);
  c.expect(max_log_err < 1e-9, "log density vs exact binomial: " + fmt(max_log_err));
  c.expect(v.kind == DecayVerdict::Kind::RapidDecay,
           "verdict not RapidDecay (spread=" + fmt(v.spread) + ")");
  c.expect(rel <= 0.05, "log_slope=" + fmt(v.log_slope) + " not within 5% of " + fmt(target));
  if (c.pass)
    c.note("log_slope=" + fmt(v.log_slope) + " vs (1/2)log(0.84)=" + fmt(target) + ", rel err " +
           fmt(rel));
}

// 4. ladder density of weight-3 multiples on the (2,1) product model at an
// off-diagonal point grows like k^2.
void criterion_ladder_growth(Check& c) {
  Model m = Model::p1xp1(2, 1);
  ActionSpec a = ActionSpec::su2_diagonal();
  Weight w3 = Weight::su2(3);
  Point p = offdiag_sample();
  std::vector<SeriesSample> samples;
  for (long long k = 3; k <= 48; k += 3) {
    SectionSpace s = build_space(m, a, k);
    samples.push_back({k, ladder_density(s, w3, p)});
  }
  AsymptoticFit fit = fit_power_law(samples);
  c.expect(std::abs(fit.richardson_exponent - 2.0) <= 0.05,
           "richardson=" + fmt(fit.richardson_exponent) + " not in 2+-0.05");
  c.expect(fit.coefficient > 0, "coefficient not positive");
  if (c.pass)
    c.note("richardson=" + fmt(fit.richardson_exponent) + " (2+-0.05), coeff=" +
           fmt(fit.coefficient) + " > 0");
}

// 5. multiplicity of the middle weight on the (1,1) product model under the
// diagonal circle action grows linearly, with multiplicity/k settling at the
// lattice-count limit.
void criterion_multiplicity_growth(Check& c) {
  Model m = Model::p1xp1(1, 1);
  ActionSpec a = ActionSpec::torus({{1, 1}}, {Rational(1)});
  Weight w0 = Weight::scalar(0);
  std::vector<long long> ks;
  for (long long k = 1; k <= 2000; ++k) ks.push_back(k);
  std::vector<SeriesSample> samples = multiplicity_series(m, a, w0, ks);
  AsymptoticFit fit = fit_power_law(samples);
  // top-half statistics of multiplicity / k
  size_t keep = (samples.size() + 1) / 2;
  double lo = 1e300, hi = -1e300, mean = 0;
  for (size_t i = samples.size() - keep; i < samples.size(); ++i) {
    double r = samples[i].value / static_cast<double>(samples[i].k);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    mean += r;
  }
  mean /= static_cast<double>(keep);
  double spread = (hi - lo) / std::abs(mean);
  // brute-force lattice count at a far larger level, counting integer points
  // on the slice e0 + e1 = K of the square [0,K]^2 one by one
  long long bigk = 1000000, count = 0;
  for (long long e0 = 0; e0 <= bigk; ++e0) {
    long long e1 = bigk - e0;
    if (e1 >= 0 && e1 <= bigk) ++count;
  }
  double continuum = static_cast<double>(count) / static_cast<double>(bigk);
  c.expect(std::abs(fit.richardson_exponent - 1.0) <= 0.02,
           "richardson=" + fmt(fit.richardson_exponent) + " not in 1+-0.02");
  c.expect(spread < 0.02, "top-half spread of mult/k = " + fmt(spread) + " >= 2%");
  c.expect(std::abs(mean / continuum - 1.0) < 0.02,
           "limit " + fmt(mean) + " vs lattice-count value " + fmt(continuum));
  if (c.pass)
    c.note("richardson=" + fmt(fit.richardson_exponent) + " (1+-0.02), mult/k=" + fmt(mean) +
           " spread " + fmt(spread) + ", lattice value " + fmt(continuum));
}

// 6. multiplicity ratios against the trivial component: exactly 1 wherever
// both components are populated on circle models, and undefined on the SU(2)
// product model whose moment image misses the origin.
void criterion_multiplicity_ratio(Check& c) {
  // P^1, weight-1 circle, shift 1/2: mu is 0/1 valued and mu_0 = 1 for every
  // even k, so the ratio must be exactly 1 from k = 2|omega| on.
  {
    Model m = Model::p1(1);
    ActionSpec a = ActionSpec::circle({1}, Rational(1, 2));
    std::vector<long long> ks;
    for (long long k = 2; k <= 500; k += 2) ks.push_back(k);
    for (long long omega = 0; omega <= 3 && c.pass; ++omega) {
      std::vector<RatioSample> rs = multiplicity_ratio_series(m, a, Weight::scalar(omega), ks);
      for (size_t i = 0; i < rs.size(); ++i) {
        long long k = ks[i];
        c.expect(rs[i].defined, "P1: mu_0 vanished at k=" + std::to_string(k));
        double expect_ratio = (k >= 2 * omega) ? 1.0 : 0.0;
        c.expect(rs[i].ratio == expect_ratio,
                 "P1 omega=" + std::to_string(omega) + " k=" + std::to_string(k) + ": ratio " +
                     fmt(rs[i].ratio) + " != " + fmt(expect_ratio));
        if (!c.pass) return;
      }
    }
  }
  // (1,1) product with the diagonal circle: trivial weight against itself,
  // ratio identically 1
  {
    Model m = Model::p1xp1(1, 1);
    ActionSpec a = ActionSpec::torus({{1, 1}}, {Rational(1)});
    std::vector<long long> ks;
    for (long long k = 1; k <= 500; ++k) ks.push_back(k);
    std::vector<RatioSample> rs = multiplicity_ratio_series(m, a, Weight::scalar(0), ks);
    for (size_t i = 0; i < rs.size(); ++i) {
      c.expect(rs[i].defined && rs[i].ratio == 1.0,
               "(1,1) model: ratio not 1 at k=" + std::to_string(ks[i]));
      if (!c.pass) return;
    }
  }
  // SU(2) on the (2,1) product: no trivial component at any k >= 1, so every
  // ratio is undefined; the moment map stays away from the origin.
  {
    Model m = Model::p1xp1(2, 1);
    ActionSpec a = ActionSpec::su2_diagonal();
    std::vector<long long> ks;
    for (long long k = 1; k <= 24; ++k) ks.push_back(k);
    std::vector<RatioSample> rs = multiplicity_ratio_series(m, a, Weight::su2(0), ks);
    for (size_t i = 0; i < rs.size(); ++i) {
      c.expect(!rs[i].defined, "su2 model: ratio defined at k=" + std::to_string(ks[i]));
      if (!c.pass) return;
    }
    double min_norm = 1e300;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j)
        for (int ii = 0; ii <= 20; ++ii)
          for (int jj = 0; jj <= 20; ++jj) {
            FactorPoint f0;
            double t0 = static_cast<double>(i) / 20.0, ph0 = 2.0 * kPi * j / 20.0;
            f0.z0 = std::sqrt(1.0 - t0);
            f0.z1 = std::polar(std::sqrt(t0), ph0);
            FactorPoint f1;
            double t1 = static_cast<double>(ii) / 20.0, ph1 = 2.0 * kPi * jj / 20.0;
            f1.z0 = std::sqrt(1.0 - t1);
            f1.z1 = std::polar(std::sqrt(t1), ph1);
            Point p;
            p.f = {f0, f1};
            min_norm = std::min(min_norm, moment_map(m, a, p).norm());
          }
    c.expect(min_norm >= 0.9, "su2 moment map reaches " + fmt(min_norm) + " < 0.9");
    if (c.pass)
      c.note("circle ratios exactly 1 past startup, su2 ratios undefined, min |Phi| " +
             fmt(min_norm));
  }
}

// 7. character-formula projectors match the ladder decomposition: idempotent,
// correct trace, and principal angles below 1e-8 in the Gram geometry.
void criterion_projectors(Check& c) {
  Model m = Model::p1xp1(2, 1);
  ActionSpec a = ActionSpec::su2_diagonal();
  double worst_idem = 0, worst_trace = 0, worst_angle = 0;
  for (long long k = 1; k <= 8 && c.pass; ++k) {
    SectionSpace s = build_space(m, a, k);
    std::vector<IsotypicComponent> comps = isotypic_decompose(s);
    std::vector<Weight> ws;
    for (const IsotypicComponent& comp : comps) ws.push_back(comp.weight);
    std::vector<Eigen::MatrixXcd> ps = character_projectors(s, ws, 50);
    Eigen::VectorXd sqg(s.dim());
    for (long long i = 0; i < s.dim(); ++i) sqg(i) = std::sqrt(s.gram_diag(i));
    for (size_t j = 0; j < comps.size(); ++j) {
      const Eigen::MatrixXcd& p = ps[j];
      long long d = comps[j].dim;
      double idem = (p * p - p).norm();
      double tr = std::abs(p.trace() - std::complex<double>(static_cast<double>(d), 0.0));
      // principal angles between col(P) and the ladder basis, both mapped to
      // l2 by G^{1/2}
      Eigen::MatrixXcd gp = sqg.asDiagonal() * p;
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gp, Eigen::ComputeThinU);
      Eigen::MatrixXcd q1 = svd.matrixU().leftCols(d);
      Eigen::MatrixXcd y = sqg.asDiagonal() * comps[j].basis;
      Eigen::MatrixXcd resid = y - q1 * (q1.adjoint() * y);
      double angle = resid.jacobiSvd().singularValues()(0);
      worst_idem = std::max(worst_idem, idem);
      worst_trace = std::max(worst_trace, tr);
      worst_angle = std::max(worst_angle, angle);
    }
  }
  c.expect(worst_idem < 1e-9, "||P^2-P|| = " + fmt(worst_idem));
  c.expect(worst_trace < 1e-9, "|trace(P)-(m+1)| = " + fmt(worst_trace));
  c.expect(worst_angle < 1e-8, "max principal angle sin = " + fmt(worst_angle));
  if (c.pass)
    c.note("k=1..8: max ||P^2-P|| " + fmt(worst_idem) + ", trace err " + fmt(worst_trace) +
           ", angle " + fmt(worst_angle));
}

// 8. density values are unchanged by unitary rotations inside a component.
void criterion_basis_independence(Check& c) {
  Model m = Model::p1xp1(2, 1);
  ActionSpec a = ActionSpec::su2_diagonal();
  SectionSpace s = build_space(m, a, 12);
  std::vector<IsotypicComponent> comps = isotypic_decompose(s);
  Rng rng(0x8b1a5e21u);
  std::vector<Point> points;
  for (int i = 0; i < 10; ++i) {
    Point p;
    for (int f = 0; f < 2; ++f) {
      FactorPoint fp;
      fp.z0 = rng.cgauss();
      fp.z1 = rng.cgauss();
      p.f.push_back(fp);
    }
    points.push_back(p);
  }
  std::vector<std::vector<double>> base(comps.size());
  for (size_t j = 0; j < comps.size(); ++j)
    for (const Point& p : points) base[j].push_back(density(s, comps[j], p));
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    size_t j = static_cast<size_t>(trial) % comps.size();
    Eigen::MatrixXcd u = random_unitary(rng, comps[j].dim);
    IsotypicComponent rotated = comps[j];
    rotated.basis = comps[j].basis * u;
    for (size_t pi = 0; pi < points.size(); ++pi) {
      double d = density(s, rotated, points[pi]);
      worst = std::max(worst, std::abs(d - base[j][pi]));
    }
  }
  c.expect(worst < 1e-10, "max density change " + fmt(worst));
  if (c.pass) c.note("100 rotations, 10 points, k=12: max |delta nu| " + fmt(worst));
}

// 9. weight-2 circle action: the component at the zero level survives exactly
// on the congruent subsequence and grows like k^(1/2) along it.
void criterion_selection_rule(Check& c) {
  Model m = Model::p1(1);
  ActionSpec a = ActionSpec::circle({2}, Rational(1, 2));
  Point p = Point::from_t({Rational(1, 4)});
  std::vector<long long> ks;
  for (long long k = 2; k <= 512; k += 2) ks.push_back(k);
  for (long long omega = 0; omega <= 1 && c.pass; ++omega) {
    SelectionReport rep = selection_rule_check(m, a, Weight::scalar(omega), ks, p);
    c.expect(rep.m0 == 2, "stabilizer order " + std::to_string(rep.m0));
    c.expect(rep.agreement, "pairing and density disagree for omega=" + std::to_string(omega));
    // independent enumeration: the weight omega occurs iff some integer
    // e in [0,k] has 2e - k/2 = omega
    for (const SelectionRow& row : rep.rows) {
      bool occurs = false;
      for (long long e = 0; e <= row.k; ++e)
        if (2 * e - row.k / 2 == omega) occurs = true;
      c.expect(row.density_nonzero == occurs,
               "enumeration mismatch at k=" + std::to_string(row.k));
      if (!c.pass) return;
    }
    c.expect(rep.surviving_fit.has_value(), "no surviving subsequence fit");
    if (rep.surviving_fit) {
      double r = rep.surviving_fit->richardson_exponent;
      c.expect(std::abs(r - 0.5) <= 0.03,
               "omega=" + std::to_string(omega) + ": surviving exponent " + fmt(r));
      if (c.pass && omega == 1) c.note("surviving exponents near 0.5: last " + fmt(r));
    }
  }
}

// 10. closed-form Gram vs quadrature Gram, and density integrals equal to
// component dimensions.
void criterion_gram_oracle(Check& c) {
  struct Case {
    Model m;
    ActionSpec a;
    long long kstep;
  };
  std::vector<Case> cases = {
      {Model::p1(1), ActionSpec::circle({1}, Rational(1, 2)), 2},
      {Model::p1xp1(2, 1), ActionSpec::su2_diagonal(), 1},
      {Model::p1xp1(1, 1), ActionSpec::torus({{1, 1}}, {Rational(1)}), 1},
  };
  double worst_gram = 0, worst_integral = 0;
  for (const Case& cs : cases) {
    long long kmax = 0;
    for (long long k = cs.kstep; k <= 10; k += cs.kstep) {
      SectionSpace s = build_space(cs.m, cs.a, k);
      Eigen::MatrixXd closed = gram_matrix(s);
      Eigen::MatrixXcd quad = quadrature_gram_oracle(s, 64);
      worst_gram = std::max(worst_gram, (quad - closed.cast<std::complex<double>>()).cwiseAbs().maxCoeff());
      kmax = k;
    }
    SectionSpace s = build_space(cs.m, cs.a, kmax);
    for (const IsotypicComponent& comp : isotypic_decompose(s)) {
      double integral = integrate_density(s, comp, 64);
      worst_integral =
          std::max(worst_integral, std::abs(integral - static_cast<double>(comp.dim)));
    }
  }
  c.expect(worst_gram < 1e-8, "gram mismatch " + fmt(worst_gram));
  c.expect(worst_integral < 1e-6, "density integral error " + fmt(worst_integral));
  if (c.pass)
    c.note("3 models, k<=10: gram err " + fmt(worst_gram) + ", integral err " +
           fmt(worst_integral));
}

// 11. complex symmetric C with positive definite real part plus Hermitian
// positive semidefinite H is nonsingular.
void criterion_nonsingularity(Check& c) {
  Rng rng(0x51d2c4a7u);
  double worst = 1e300;
  for (int trial = 0; trial < 1000 && c.pass; ++trial) {
    long long b = 1 + (trial % 8);
    Eigen::MatrixXd mr(b, b), bs(b, b);
    for (long long i = 0; i < b; ++i)
      for (long long j = 0; j < b; ++j) mr(i, j) = rng.gauss();
    for (long long i = 0; i < b; ++i)
      for (long long j = i; j < b; ++j) bs(i, j) = bs(j, i) = rng.gauss();
    double eps = (trial % 3 == 0) ? 1e-6 : (trial % 3 == 1 ? 1e-3 : 1.0);
    double bscale = (trial % 5 == 0) ? 10.0 : (trial % 5 == 1 ? 0.1 : 1.0);
    Eigen::MatrixXd areal = mr * mr.transpose() + eps * Eigen::MatrixXd::Identity(b, b);
    Eigen::MatrixXcd cc = areal.cast<std::complex<double>>() +
                          std::complex<double>(0, 1) * bscale * bs.cast<std::complex<double>>();
    // H = N^H N with rank cycling through 0..b, including the zero matrix
    long long rank = trial % (b + 1);
    Eigen::MatrixXcd n(rank, b);
    for (long long i = 0; i < rank; ++i)
      for (long long j = 0; j < b; ++j) n(i, j) = rng.cgauss();
    double hscale = (trial % 7 == 0) ? 100.0 : 1.0;
    Eigen::MatrixXcd h = hscale * (n.adjoint() * n);
    Eigen::MatrixXcd x = cc + h;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x);
    double smin = svd.singularValues()(b - 1);
    double smax = svd.singularValues()(0);
    worst = std::min(worst, smin / smax);
    c.expect(smin > 1e-12 * smax,
             "near-singular instance at trial " + std::to_string(trial) + ": smin/smax = " +
                 fmt(smin / smax));
  }
  if (c.pass) c.note("1000 instances, sizes 1..8: min sigma_min/sigma_max " + fmt(worst));
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int only) {
  struct Entry {
    int id;
    const char* name;
    std::function<void(Check&)> fn;
  };
  std::vector<Entry> entries = {
      {1, "su2-decomposition-table", criterion_decomposition},
      {2, "circle-peak-growth", criterion_peak_growth},
      {3, "offpeak-rapid-decay", criterion_rapid_decay},
      {4, "ladder-quadratic-growth", criterion_ladder_growth},
      {5, "multiplicity-linear-growth", criterion_multiplicity_growth},
      {6, "multiplicity-ratio", criterion_multiplicity_ratio},
      {7, "character-projectors", criterion_projectors},
      {8, "basis-independence", criterion_basis_independence},
      {9, "selection-rule", criterion_selection_rule},
      {10, "gram-oracle-integral", criterion_gram_oracle},
      {11, "symmetric-plus-psd-nonsingular", criterion_nonsingularity},
  };
  std::vector<CriterionResult> results;
  for (const Entry& e : entries) {
    if (only != 0 && e.id != only) continue;
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    auto t0 = std::chrono::steady_clock::now();
    Check chk;
    try {
      e.fn(chk);
      r.pass = chk.pass;
      r.detail = chk.detail;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_criterion(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof(head), "%s %2d %-30s %7.2fs  ", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return std::string(head) + r.detail;
}

}  // namespace ebk
