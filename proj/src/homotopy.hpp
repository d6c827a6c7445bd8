#pragma once

#include "quadrature.hpp"

#include <map>
#include <ostream>
#include <vector>

namespace gg {

struct Config {
  int steps = 200;
  double epsilon = 1e-3;     // trailing basis integral that triggers the limit system
  double newton_tol = 1e-13;
  int newton_max_iter = 60;
  int retries = 3;           // each retry doubles the step count
  Precision precision = Precision::dbl;
  std::ostream* log = nullptr;  // one JSON object per accepted step
};

struct MovingKnot {
  double from, to;
  int mult;
};

enum class Vanish { none, gauss, radau };

// Knot path: fixed breakpoints plus knots moving linearly in t
struct Path {
  int d = 0;
  double a = 0, b = 1;
  std::vector<std::pair<double, int>> fixed;
  std::vector<MovingKnot> moving;
  Vanish vanish = Vanish::none;
};

Space<double> path_space(const Path& p, double t);
KnotVector<double> path_knots(const Path& p, double t);
std::vector<double> schedule_times(const Path& p, int steps);

struct KnotSnapshot {
  double t;
  KnotVector<double> knots;
};
std::vector<KnotSnapshot> knot_schedule(const Path& p, int steps);

struct TraceInfo {
  int steps = 0;                     // schedule length actually used
  int accepted = 0;
  int switch_step = -1;              // index of the step that switched systems
  double switch_time = -1;
  std::vector<double> trailing_weight;  // before the switch, per step
  int max_newton_iterations = 0;
  double max_residual = 0;
};

// Follow the source rule along the path to t = 1
Rule<double> trace(const Path& p, const Rule<double>& source, const Config& cfg,
                   TraceInfo* info = nullptr);

// Source of one merge level: two sub-rules joined C^-1 and the path taking
// their union space to the target space over breakpoints x
struct Source {
  KnotVector<double> knots;
  Rule<double> rule;
  Path path;
};

class Deriver {
 public:
  Deriver(int d, int c, Config cfg);

  // rules on breakpoints x (normalized coordinates, open ends)
  Rule<double> gauss(const std::vector<double>& x);
  Rule<double> radau_half(const std::vector<double>& x);  // pinned at x.back()
  Rule<double> radau(const std::vector<double>& x);       // pinned at the middle knot
  Rule<double> rule(const std::vector<double>& x);

  Source gauss_source(const std::vector<double>& x);
  Source radau_source(const std::vector<double>& x);

  const std::vector<TraceInfo>& traces() const { return traces_; }

 private:
  Rule<double> run(const Source& s);
  Rule<double> canonical_block();

  int d_, c_;
  Config cfg_;
  std::map<std::pair<int, std::vector<double>>, Rule<double>> cache_;
  std::vector<TraceInfo> traces_;
};

// pin a Radau system: node at the middle knot fixed, its weight free
struct PinnedSystem {
  int pinned_index;
  int unknowns;
  int equations;
};
PinnedSystem pin_radau(const Rule<double>& r, const KnotVector<double>& target, int d);

struct DeriveInfo {
  std::vector<TraceInfo> traces;
  double residual_norm = 0;
  double max_residual = 0;
};

// Top-level driver: optimal rule for the open space of degree d with
// interior multiplicity d-c over the given breakpoints
template <class R>
Rule<R> derive_rule(int d, int c, const std::vector<R>& x, const Config& cfg,
                    DeriveInfo* info = nullptr);

Source build_source(int d, int c, const std::vector<double>& x, const Config& cfg);

void check_supported(int d, int c);

}  // namespace gg
