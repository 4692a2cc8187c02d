#include "ebk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebk {

namespace {

constexpr double kPi = 3.14159265358979323846;

// least-squares line y = a + b x; returns {a, b}
std::pair<double, double> ls_line(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (det == 0) throw std::invalid_argument("ls_line: degenerate abscissae");
  double b = (n * sxy - sx * sy) / det;
  double a = (sy - b * sx) / n;
  return {a, b};
}

}  // namespace

AsymptoticFit fit_power_law(std::vector<SeriesSample> samples) {
  if (samples.size() < 4) throw std::invalid_argument("fit_power_law: need at least 4 samples");
  std::sort(samples.begin(), samples.end(),
            [](const SeriesSample& a, const SeriesSample& b) { return a.k < b.k; });
  for (size_t i = 0; i + 1 < samples.size(); ++i)
    if (samples[i].k == samples[i + 1].k)
      throw std::invalid_argument("fit_power_law: duplicate k");
  std::vector<double> lx, ly;
  for (const SeriesSample& s : samples) {
    if (s.k <= 0 || s.value <= 0)
      throw std::invalid_argument("fit_power_law: samples must have k > 0 and value > 0");
    lx.push_back(std::log(static_cast<double>(s.k)));
    ly.push_back(std::log(s.value));
  }
  AsymptoticFit fit;
  fit.k_min = samples.front().k;
  fit.k_max = samples.back().k;
  auto [a, b] = ls_line(lx, ly);
  fit.exponent = b;
  double ss = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    double r = ly[i] - (a + b * lx[i]);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(lx.size()));
  // local slopes against u = 1/k (midpoint abscissa), extrapolated to u = 0
  // over the top half of the window
  std::vector<double> u, slope;
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    slope.push_back((ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i]));
    u.push_back(2.0 / static_cast<double>(samples[i].k + samples[i + 1].k));
  }
  size_t keep = (slope.size() + 1) / 2;
  if (keep < 2) keep = slope.size();
  std::vector<double> ut(u.end() - static_cast<long>(keep), u.end());
  std::vector<double> st(slope.end() - static_cast<long>(keep), slope.end());
  if (ut.size() >= 2) {
    auto [s0, ignored] = ls_line(ut, st);
    (void)ignored;
    fit.richardson_exponent = s0;
  } else {
    fit.richardson_exponent = slope.back();
  }
  fit.coefficient = samples.back().value /
                    std::pow(static_cast<double>(fit.k_max), fit.richardson_exponent);
  return fit;
}

DecayVerdict classify_decay(const std::vector<SeriesSample>& samples) {
  if (samples.size() < 6) throw std::invalid_argument("classify_decay: need at least 6 samples");
  std::vector<SeriesSample> s = samples;
  std::sort(s.begin(), s.end(),
            [](const SeriesSample& a, const SeriesSample& b) { return a.k < b.k; });
  std::vector<double> lk, lv, y;
  for (const SeriesSample& q : s) {
    if (q.k <= 0 || q.value <= 0)
      throw std::invalid_argument("classify_decay: samples must have k > 0 and value > 0");
    lk.push_back(std::log(static_cast<double>(q.k)));
    lv.push_back(std::log(q.value));
    y.push_back(std::log(q.value) / static_cast<double>(q.k));
  }
  size_t keep = (y.size() + 1) / 2;
  double lo = y[y.size() - keep], hi = lo, mean = 0;
  for (size_t i = y.size() - keep; i < y.size(); ++i) {
    lo = std::min(lo, y[i]);
    hi = std::max(hi, y[i]);
    mean += y[i];
  }
  mean /= static_cast<double>(keep);
  // sign alternation of the local slopes of log(value): series that keep
  // flipping between growth and decay match neither template
  size_t flips = 0, pairs = 0;
  for (size_t i = 0; i + 2 < lv.size(); ++i) {
    double s0 = lv[i + 1] - lv[i], s1 = lv[i + 2] - lv[i + 1];
    if (s0 != 0 && s1 != 0) {
      ++pairs;
      if ((s0 > 0) != (s1 > 0)) ++flips;
    }
  }
  DecayVerdict v;
  v.spread = (mean == 0) ? (hi - lo == 0 ? 0 : 1e300) : (hi - lo) / std::abs(mean);
  v.low_confidence = (pairs > 0 && 2 * flips >= pairs);
  if (!v.low_confidence && mean < 0 && v.spread < 0.1) {
    v.kind = DecayVerdict::Kind::RapidDecay;
    v.log_slope = mean;
  } else {
    v.kind = DecayVerdict::Kind::Polynomial;
    v.exponent = ls_line(lk, lv).second;
  }
  return v;
}

Prediction predict_leading(const Model& m, const ActionSpec& a, PredictionTarget target,
                           const Weight& omega, const Point* p) {
  a.validate_against(m);
  validate_weight(a.group, omega);
  double n = static_cast<double>(m.complex_dim());
  double g = static_cast<double>(a.group.dim());
  Prediction pred;
  switch (target) {
    case PredictionTarget::IsotypicDensity: {
      if (p == nullptr)
        throw std::invalid_argument("predict_leading: density prediction needs a point");
      if (locus_distance(m, a, *p, Locus{LocusKind::ZeroLevel, omega}).distance > 1e-8)
        throw std::invalid_argument("predict_leading: point off the zero level of the moment map");
      pred.exponent = n - g / 2.0;
      // closed-form coefficient: single-factor circle action at the peak height
      if (a.group.kind == GroupKind::Circle && m.factors == 1 && p != nullptr) {
        long long w = a.weights[0][0];
        long long pol = m.polarization[0];
        if (w != 0) {
          Rational tstar = a.shift[0] * Rational(1, pol * w);
          if (tstar.num > 0 && tstar.num < tstar.den) {
            double ts = tstar.value();
            bool at_peak = false;
            if (p->f[0].t_exact) at_peak = (*p->f[0].t_exact == tstar);
            else at_peak = std::abs(p->f[0].t() - ts) < 1e-9;
            if (at_peak) {
              double dimv = static_cast<double>(irrep_dim(a.group, omega));
              pred.coefficient = dimv * dimv *
                                 std::sqrt(static_cast<double>(pol) / (2.0 * kPi * ts * (1.0 - ts)));
            }
          }
        }
      }
      return pred;
    }
    case PredictionTarget::LadderDensity: {
      if (omega.is_zero()) throw std::invalid_argument("predict_leading: ladder of omega = 0");
      if (p == nullptr)
        throw std::invalid_argument("predict_leading: density prediction needs a point");
      LocusDistance ld = locus_distance(m, a, *p, Locus{LocusKind::OrbitCone, omega});
      if (ld.distance > 1e-8 || !ld.interior)
        throw std::invalid_argument(
            "predict_leading: point not in the interior of the orbit-cone preimage");
      if (is_excluded_point(m, a, *p))
        throw std::invalid_argument("predict_leading: point lies on the excluded locus");
      pred.exponent = n;
      return pred;
    }
    case PredictionTarget::MultiplicityGrowth: {
      if (!a.group.abelian())
        throw std::invalid_argument(
            "predict_leading: fixed-weight multiplicity growth needs an abelian action "
            "with 0 in the moment image");
      pred.exponent = n - g;
      return pred;
    }
  }
  throw std::logic_error("predict_leading: unreachable");
}

std::vector<SeriesSample> multiplicity_series(const Model& m, const ActionSpec& a,
                                              const Weight& omega,
                                              const std::vector<long long>& ks) {
  a.validate_against(m);
  validate_weight(a.group, omega);
  std::vector<SeriesSample> out;
  out.reserve(ks.size());
  for (long long k : ks) {
    if (a.group.abelian()) {
      out.push_back({k, static_cast<double>(abelian_multiplicity(m, a, omega, k))});
    } else {
      SectionSpace s = build_space(m, a, k);
      long long mult = 0;
      for (const auto& [w, c] : isotypic_multiplicities(s))
        if (w == omega) mult = c;
      out.push_back({k, static_cast<double>(mult)});
    }
  }
  return out;
}

std::vector<RatioSample> multiplicity_ratio_series(const Model& m, const ActionSpec& a,
                                                   const Weight& omega,
                                                   const std::vector<long long>& ks) {
  Weight zero = omega;
  for (auto& c : zero.comp) c = 0;
  std::vector<SeriesSample> top = multiplicity_series(m, a, omega, ks);
  std::vector<SeriesSample> bot = multiplicity_series(m, a, zero, ks);
  std::vector<RatioSample> out;
  for (size_t i = 0; i < ks.size(); ++i) {
    RatioSample r;
    r.k = ks[i];
    if (bot[i].value > 0) {
      r.defined = true;
      r.ratio = top[i].value / bot[i].value;
    }
    out.push_back(r);
  }
  return out;
}

SelectionReport selection_rule_check(const Model& m, const ActionSpec& a, const Weight& omega,
                                     const std::vector<long long>& ks, const Point& p) {
  a.validate_against(m);
  validate_weight(a.group, omega);
  if (a.group.kind != GroupKind::Circle || m.factors != 1)
    throw std::invalid_argument("selection_rule_check: circle action on P^1 only");
  validate_point(m, p);
  long long w = a.weights[0][0];
  if (w == 0) throw std::invalid_argument("selection_rule_check: action weight must be nonzero");
  long long m0 = w > 0 ? w : -w;
  long long pol = m.polarization[0];
  Rational tstar = a.shift[0] * Rational(1, pol * w);
  if (!(tstar.num > 0 && tstar.num < tstar.den))
    throw std::invalid_argument(
        "selection_rule_check: 0 is not a regular value of the moment map for this shift");
  bool on_level;
  if (p.f[0].t_exact) on_level = (*p.f[0].t_exact == tstar);
  else on_level = std::abs(p.f[0].t() - tstar.value()) < 1e-9;
  if (!on_level)
    throw std::invalid_argument("selection_rule_check: point must lie on the zero level");
  SelectionReport rep;
  rep.m0 = m0;
  long long omega0 = omega.comp[0];
  std::vector<double> tvec = {p.f[0].t_exact ? p.f[0].t_exact->value() : p.f[0].t()};
  std::vector<SeriesSample> surviving;
  bool agree = true;
  for (long long k : ks) {
    const Rational& b = a.shift[0];
    if (k < 0 || k % b.den != 0)
      throw std::invalid_argument("selection_rule_check: k not admissible for the shift");
    long long kb = (k / b.den) * b.num;
    SelectionRow row;
    row.k = k;
    // character pairing with the generic stabilizer Z_m0: the fiber weight at
    // the zero level is -(omega + k beta), so the sum over the stabilizer is
    // m0 exactly when omega + k beta = 0 (mod m0)
    long long rem = ((omega0 + kb) % m0 + m0) % m0;
    row.pairing_nonzero = (rem == 0);
    row.pairing_value = row.pairing_nonzero ? m0 : 0;
    long long mult = abelian_multiplicity(m, a, omega, k);
    row.density_nonzero = false;
    if (mult > 0) {
      row.log_density = abelian_density_log(m, a, omega, k, tvec);
      // exact-zero floor: selection rules produce identical zeros, not small
      // numbers, so anything below it is treated as vanished
      row.density_nonzero = row.log_density > std::log(kExactZero);
    }
    if (row.density_nonzero) surviving.push_back({k, std::exp(row.log_density)});
    if (row.pairing_nonzero != row.density_nonzero) agree = false;
    rep.rows.push_back(row);
  }
  rep.agreement = agree;
  rep.identically_zero = surviving.empty() && !rep.rows.empty();
  if (surviving.size() >= 4) rep.surviving_fit = fit_power_law(surviving);
  return rep;
}

}  // namespace ebk
