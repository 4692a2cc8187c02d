// Large-k analysis of density and multiplicity series: power-law fitting with
// Richardson extrapolation of local slopes, exponential-decay classification,
// and the predicted leading orders for the three series families.

#pragma once

#include <optional>
#include <vector>

#include "ebk/kernels.hpp"

namespace ebk {

struct SeriesSample {
  long long k = 0;
  double value = 0;
};

struct AsymptoticFit {
  double exponent = 0;            // global log-log least-squares slope
  double richardson_exponent = 0; // local slopes extrapolated to 1/k -> 0
  double coefficient = 0;         // value(k_max) / k_max^richardson_exponent
  double residual_rms = 0;        // rms of log residuals around the global fit
  long long k_min = 0, k_max = 0;
};

// Fits value ~ C k^alpha on positive samples (>= 4 required).  The local
// slope between consecutive samples is extrapolated linearly in 1/k over the
// top half of the window; that intercept is the quoted exponent of record.
AsymptoticFit fit_power_law(std::vector<SeriesSample> samples);

struct DecayVerdict {
  enum class Kind { Polynomial, RapidDecay };
  Kind kind = Kind::Polynomial;
  double exponent = 0;        // log-log least-squares slope (Polynomial only)
  double log_slope = 0;       // top-half mean of log(value)/k (RapidDecay only)
  double spread = 0;          // relative spread of log(value)/k over the top half
  bool low_confidence = false;  // consecutive log-slopes alternate in sign
};

// A series decaying like e^{c k} (c < 0) has log(value)/k settling at c;
// polynomially bounded series drift to 0 like log(k)/k.  Verdict is
// RapidDecay when the top-half spread is below 10% of the mean magnitude and
// the mean is negative; otherwise Polynomial with the fitted exponent.
// Requires >= 6 positive samples.  A series whose consecutive log-increments
// keep alternating sign fits neither template; it is reported Polynomial with
// low_confidence set.
DecayVerdict classify_decay(const std::vector<SeriesSample>& samples);

// Values below this threshold are treated as exact zeros of a density series
// (selection rules produce identical zeros, not small numbers).
inline constexpr double kExactZero = 1e-300;

enum class PredictionTarget { IsotypicDensity, LadderDensity, MultiplicityGrowth };

struct Prediction {
  double exponent = 0;
  std::optional<double> coefficient;  // set only where the closed form is implemented
};

// Predicted leading order in k:
//   isotypic density    k^(n - g/2)   on the pulled-back weight locus,
//   ladder density      k^n           off the excluded set,
//   multiplicity        k^(n - g)     for abelian actions,
// with n the complex dimension of M and g the group dimension.  Density
// targets require p on their locus (zero level, resp. interior of the orbit
// cone preimage minus the excluded set); off-locus points are rejected.  The
// coefficient is implemented for weight-w circle actions on a single factor
// evaluated at the peak height t* = beta/(a w), where Laplace evaluation of
// the surviving monomial gives dim(V_omega)^2 sqrt(a / (2 pi t* (1 - t*))).
Prediction predict_leading(const Model& m, const ActionSpec& a, PredictionTarget target,
                           const Weight& omega, const Point* p);

// mu_{omega,k} over the given k (abelian: exact lattice count; SU(2): ladder
// operator route).  All k must be admissible for the shift.
std::vector<SeriesSample> multiplicity_series(const Model& m, const ActionSpec& a,
                                              const Weight& omega, const std::vector<long long>& ks);

struct RatioSample {
  long long k = 0;
  bool defined = false;  // false when mu_{0,k} = 0
  double ratio = 0;
};

// mu_{omega,k} / mu_{0,k}; undefined entries keep ratio = 0.
std::vector<RatioSample> multiplicity_ratio_series(const Model& m, const ActionSpec& a,
                                                   const Weight& omega,
                                                   const std::vector<long long>& ks);

struct SelectionRow {
  long long k = 0;
  bool pairing_nonzero = false;   // character pairing against the stabilizer
  long long pairing_value = 0;    // sum over the stabilizer, 0 or m0
  bool density_nonzero = false;   // weight-omega component nonempty
  double log_density = 0;         // at the checked point (surviving rows)
};

struct SelectionReport {
  long long m0 = 1;               // order of the generic stabilizer
  std::vector<SelectionRow> rows;
  bool agreement = false;         // pairing and density vanish together, all k
  bool identically_zero = false;  // no k in range passes the congruence
  std::optional<AsymptoticFit> surviving_fit;
};

// Weight-m0 circle action on P^1: the generic stabilizer Z_m0 forces the
// congruence omega + k beta = 0 (mod m0); rows record both sides and the
// density along the surviving subsequence at p, which must sit on the zero
// level of the moment map.
SelectionReport selection_rule_check(const Model& m, const ActionSpec& a, const Weight& omega,
                                     const std::vector<long long>& ks, const Point& p);

}  // namespace ebk
