// JSON experiment configuration for the ebk command line tool.
//
// Shape ("schema": 1):
//   task     dims | decompose | density | scan | fit | ladder | verify
//   model    {"type": "P1"|"P1xP1", "polarization": [a] | [a, b]}
//   action   {"group": "circle", "weights": [[w_f...]], "shift": ["1/2"]}
//            {"group": "torus",  "weights": [rank rows], "shift": [rank]}
//            {"group": "su2"}
//   weight   [..] component weight; su2 takes [m]
//   k | k_list | k_range {"from","to","step"}   exactly one
//   points   [{"t": ["1/2", ...]} | {"name": ...} | {"hom": [[[re,im],[re,im]] per factor]}]
//            names: "north", "south", "offdiag-sample", "t=<rational>";
//            a bare string entry is shorthand for {"name": ...}
//   series   "density" | "multiplicity" | "ladder"     (fit task)
//   grid     integer (scan task), ladder bool (density task),
//   order    quadrature order, threads worker count
// Shifts and heights are rational strings; they are kept exact.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ebk/models.hpp"

namespace ebk {

// Configuration or usage problem: maps to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Task { Dims, Decompose, Density, Scan, Fit, Ladder, Verify };

struct ExperimentConfig {
  Task task = Task::Dims;
  Model model = Model::p1(1);
  ActionSpec action = ActionSpec::circle({1}, Rational(0));
  std::optional<Weight> weight;
  std::vector<long long> ks;
  std::vector<Point> points;
  std::vector<std::string> point_ids;  // stable labels for report rows
  std::string series = "density";
  bool ladder = false;
  int grid = 64;
  int order = 32;
  int threads = 1;
  std::string raw;  // config text echoed into the summary
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

const char* task_name(Task t);

}  // namespace ebk
