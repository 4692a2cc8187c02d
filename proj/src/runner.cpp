#include "ebk/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <optional>
#include <thread>

#include "ebk/asymptotics.hpp"
#include "ebk/verify.hpp"

namespace ebk {

using nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

// leading columns shared by every report row: model, action, k, weight or
// ladder label, point id
std::string row_prefix(const ExperimentConfig& c, long long k, const std::string& weight_label,
                       const std::string& point_id) {
  return csv_quote(c.model.str()) + "," + csv_quote(c.action.str()) + "," + std::to_string(k) +
         "," + csv_quote(weight_label) + "," + csv_quote(point_id);
}

std::string point_id_of(const ExperimentConfig& c, size_t i) {
  if (i < c.point_ids.size() && !c.point_ids[i].empty()) return c.point_ids[i];
  return "p" + std::to_string(i);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

void write_csv(const std::filesystem::path& p, const std::string& header,
               const std::vector<std::string>& rows) {
  std::string text = header;
  text += '\n';
  for (const std::string& r : rows) {
    text += r;
    text += '\n';
  }
  write_text(p, text);
}

// index-parallel loop with deterministic output slots
void parallel_for(long long n, int threads, const std::function<void(long long)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  int nw = static_cast<int>(std::min<long long>(threads, n));
  for (int w = 0; w < nw; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        long long i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> point_heights(const Point& p) {
  std::vector<double> t;
  for (const FactorPoint& f : p.f) t.push_back(f.t_exact ? f.t_exact->value() : f.t());
  return t;
}

// density of the weight component (or its ladder) at one point; abelian
// actions go through the log-space closed form, SU(2) through the
// materialized component basis
double density_value(const ExperimentConfig& c, long long k, const Point& p, bool ladder_flag) {
  const Weight& w = *c.weight;
  if (c.action.group.abelian()) {
    double lg = ladder_flag ? abelian_ladder_density_log(c.model, c.action, w, k, point_heights(p))
                            : abelian_density_log(c.model, c.action, w, k, point_heights(p));
    return std::isinf(lg) ? 0.0 : std::exp(lg);
  }
  SectionSpace s = build_space(c.model, c.action, k);
  if (ladder_flag) return ladder_density(s, w, p);
  return density(s, isotypic_component(s, w), p);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

ordered_json fit_to_json(const AsymptoticFit& f) {
  return ordered_json{{"exponent", f.exponent},
                      {"richardson_exponent", f.richardson_exponent},
                      {"coefficient", f.coefficient},
                      {"residual_rms", f.residual_rms},
                      {"k_min", f.k_min},
                      {"k_max", f.k_max}};
}

int run_impl(const ExperimentConfig& c, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::path out(out_dir.empty() ? "." : out_dir);
  fs::create_directories(out);
  ordered_json summary;
  summary["schema"] = 1;
  summary["task"] = task_name(c.task);
  std::vector<std::string> outputs;
  int exit_code = 0;

  switch (c.task) {
    case Task::Dims: {
      std::vector<std::string> rows;
      ordered_json totals = ordered_json::array();
      for (long long k : c.ks) {
        SectionSpace s = build_space(c.model, c.action, k);
        long long total = 0;
        for (const auto& [w, mult] : isotypic_multiplicities(s)) {
          long long dimv = irrep_dim(c.action.group, w);
          rows.push_back(row_prefix(c, k, w.str(), "-") + "," + std::to_string(mult) + "," +
                         std::to_string(dimv) + "," + std::to_string(mult * dimv));
          total += mult * dimv;
        }
        totals.push_back(ordered_json{{"k", k}, {"space_dim", s.dim()}, {"component_sum", total}});
        if (total != s.dim())
          throw std::runtime_error("dims: component dimensions do not sum to the space dimension");
      }
      write_csv(out / "dims.csv", "model,action,k,weight,point,multiplicity,irrep_dim,value", rows);
      outputs.push_back("dims.csv");
      summary["per_k"] = totals;
      break;
    }
    case Task::Decompose: {
      require(c.ks.size() == 1, "decompose: give a single k");
      SectionSpace s = build_space(c.model, c.action, c.ks[0]);
      if (s.dim() > 4000)
        throw ConfigError("decompose: space too large to materialize bases; use dims");
      std::vector<IsotypicComponent> comps = isotypic_decompose(s);
      Eigen::VectorXd g(s.dim());
      for (long long i = 0; i < s.dim(); ++i) g(i) = s.gram_diag(i);
      std::vector<std::string> rows;
      long long total = 0;
      double resid = 0;
      for (const IsotypicComponent& comp : comps) {
        rows.push_back(row_prefix(c, c.ks[0], comp.weight.str(), "-") + "," +
                       std::to_string(comp.multiplicity) + "," + std::to_string(comp.dim));
        total += comp.dim;
        Eigen::MatrixXcd gramm = comp.basis.adjoint() * g.asDiagonal() * comp.basis;
        gramm -= Eigen::MatrixXcd::Identity(comp.dim, comp.dim);
        resid = std::max(resid, gramm.cwiseAbs().maxCoeff());
      }
      write_csv(out / "components.csv", "model,action,k,weight,point,multiplicity,value", rows);
      outputs.push_back("components.csv");
      summary["space_dim"] = s.dim();
      summary["component_sum"] = total;
      summary["orthonormality_residual"] = resid;
      if (total != s.dim())
        throw std::runtime_error("decompose: component dimensions do not sum to the space dimension");
      break;
    }
    case Task::Density: {
      require(c.weight.has_value(), "density: weight required");
      require(!c.points.empty(), "density: at least one point required");
      std::string wlabel = (c.ladder ? "ladder:" : "") + c.weight->str();
      std::vector<std::string> rows(c.ks.size() * c.points.size());
      parallel_for(static_cast<long long>(rows.size()), c.threads, [&](long long i) {
        size_t ki = static_cast<size_t>(i) / c.points.size();
        size_t pi = static_cast<size_t>(i) % c.points.size();
        double v = density_value(c, c.ks[ki], c.points[pi], c.ladder);
        rows[static_cast<size_t>(i)] =
            row_prefix(c, c.ks[ki], wlabel, point_id_of(c, pi)) + "," + fmt_double(v);
      });
      write_csv(out / "density.csv", "model,action,k,weight,point,value", rows);
      outputs.push_back("density.csv");
      summary["ladder"] = c.ladder;
      break;
    }
    case Task::Scan: {
      require(c.weight.has_value(), "scan: weight required");
      require(c.ks.size() == 1, "scan: give a single k");
      require(c.model.factors == 1 || !c.points.empty(),
              "scan: two-factor models need a base point");
      long long k = c.ks[0];
      std::vector<std::string> rows(static_cast<size_t>(c.grid) + 1);
      // SU(2): one component reused across the grid
      std::optional<SectionSpace> space;
      std::optional<IsotypicComponent> comp;
      if (!c.action.group.abelian()) {
        space.emplace(build_space(c.model, c.action, k));
        comp.emplace(c.ladder ? ladder_subspace(*space, *c.weight)
                              : isotypic_component(*space, *c.weight));
      }
      std::string wlabel = (c.ladder ? "ladder:" : "") + c.weight->str();
      parallel_for(static_cast<long long>(c.grid) + 1, c.threads, [&](long long j) {
        Rational tj(j, c.grid);
        Point p = c.points.empty() ? Point::from_t({tj}) : c.points[0];
        p.f[0] = Point::factor_from_t(tj);
        double v;
        if (c.action.group.abelian()) {
          double lg = c.ladder
                          ? abelian_ladder_density_log(c.model, c.action, *c.weight, k, point_heights(p))
                          : abelian_density_log(c.model, c.action, *c.weight, k, point_heights(p));
          v = std::isinf(lg) ? 0.0 : std::exp(lg);
        } else {
          v = density(*space, *comp, p);
        }
        rows[static_cast<size_t>(j)] = row_prefix(c, k, wlabel, "t=" + tj.str()) + "," +
                                       fmt_double(tj.value()) + "," + fmt_double(v);
      });
      write_csv(out / "scan.csv", "model,action,k,weight,point,t,value", rows);
      outputs.push_back("scan.csv");
      break;
    }
    case Task::Fit:
    case Task::Ladder: {
      bool ladder_flag = (c.task == Task::Ladder) || c.series == "ladder" || c.ladder;
      bool mult_series = (c.task == Task::Fit) && c.series == "multiplicity";
      require(c.weight.has_value(), "fit: weight required");
      require(mult_series || !c.points.empty(), "fit: density series needs a point");
      std::vector<SeriesSample> samples(c.ks.size());
      if (mult_series) {
        std::vector<SeriesSample> s = multiplicity_series(c.model, c.action, *c.weight, c.ks);
        samples = s;
      } else {
        parallel_for(static_cast<long long>(c.ks.size()), c.threads, [&](long long i) {
          samples[static_cast<size_t>(i)] = {
              c.ks[static_cast<size_t>(i)],
              density_value(c, c.ks[static_cast<size_t>(i)], c.points[0], ladder_flag)};
        });
      }
      std::string wlabel = (ladder_flag ? "ladder:" : "") + c.weight->str();
      std::string pid = mult_series ? "-" : point_id_of(c, 0);
      std::vector<std::string> rows;
      std::vector<SeriesSample> positive;
      for (const SeriesSample& s : samples) {
        rows.push_back(row_prefix(c, s.k, wlabel, pid) + "," + fmt_double(s.value));
        // exact-zero floor keeps selection-rule zeros out of the log fit
        if (s.value > kExactZero) positive.push_back(s);
      }
      write_csv(out / "series.csv", "model,action,k,weight,point,value", rows);
      outputs.push_back("series.csv");
      summary["series"] = mult_series ? "multiplicity" : (ladder_flag ? "ladder" : "density");
      summary["dropped_zero_samples"] = samples.size() - positive.size();
      if (positive.size() >= 4) {
        AsymptoticFit fit = fit_power_law(positive);
        summary["fit"] = fit_to_json(fit);
      } else {
        summary["fit"] = nullptr;
      }
      if (positive.size() >= 6) {
        DecayVerdict verdict = classify_decay(positive);
        bool rapid = verdict.kind == DecayVerdict::Kind::RapidDecay;
        ordered_json dj{{"kind", rapid ? "rapid" : "polynomial"}};
        if (rapid) dj["log_slope"] = verdict.log_slope;
        else dj["exponent"] = verdict.exponent;
        dj["spread"] = verdict.spread;
        dj["low_confidence"] = verdict.low_confidence;
        summary["decay"] = dj;
      } else {
        summary["decay"] = nullptr;
      }
      PredictionTarget target = mult_series ? PredictionTarget::MultiplicityGrowth
                                            : (ladder_flag ? PredictionTarget::LadderDensity
                                                           : PredictionTarget::IsotypicDensity);
      const Point* pp = c.points.empty() ? nullptr : &c.points[0];
      try {
        Prediction pred = predict_leading(c.model, c.action, target, *c.weight, pp);
        ordered_json pj{{"exponent", pred.exponent}};
        if (pred.coefficient) pj["coefficient"] = *pred.coefficient;
        summary["predicted"] = pj;
      } catch (const std::invalid_argument& e) {
        // off-locus points still yield the series and fit, just no prediction
        summary["predicted"] = nullptr;
        summary["prediction_error"] = e.what();
      }
      break;
    }
    case Task::Verify: {
      std::vector<CriterionResult> results = run_acceptance();
      ordered_json arr = ordered_json::array();
      bool all = true;
      for (const CriterionResult& r : results) {
        std::cout << format_criterion(r) << "\n";
        arr.push_back(ordered_json{{"id", r.id},
                                   {"name", r.name},
                                   {"pass", r.pass},
                                   {"detail", r.detail}});
        all = all && r.pass;
      }
      summary["criteria"] = arr;
      summary["all_pass"] = all;
      exit_code = all ? 0 : 1;
      break;
    }
  }

  // no timing data in the summary: re-running a config must reproduce the
  // output files byte for byte
  summary["outputs"] = outputs;
  write_text(out / "summary.json", summary.dump(2) + "\n");
  return exit_code;
}

}  // namespace

int run(const ExperimentConfig& config, const std::string& out_dir) {
  try {
    return run_impl(config, out_dir);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // admissibility and argument mismatches surface as configuration errors
    throw ConfigError(e.what());
  }
}

}  // namespace ebk
