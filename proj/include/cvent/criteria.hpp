#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cvent/distributions.hpp"
#include "cvent/entropy.hpp"

namespace cvent {

enum class Criterion { strong, weak, mgvt, simon };

const char* criterion_name(Criterion c);
std::optional<Criterion> criterion_from_name(const std::string& name);

inline constexpr double kViolationDeadband = 1e-6;

// ln(2 pi e), the state-independent weak bound.
double ln_2pie();

// One criterion evaluation.  margin = rhs - lhs for entropic tests,
// 1 - sigma*delta for MGVT; violated <=> margin > dead-band and the
// underlying entropies converged.
struct CriterionReport {
    Criterion criterion = Criterion::weak;
    bool has_settings = true;
    MeasurementSettings settings;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool violated = false;
    double refinement_delta = 0.0;
    bool has_delta = false;
    std::map<std::string, double> entropies;
};

struct EvalOptions {
    int base_points = 256;
    int max_points = kResolutionCap;
    double span = 0.0; // 0 = auto from the state
};

CriterionReport weak_entropic_test(const State& s, const MeasurementSettings& settings,
                                   const EvalOptions& opts = {});

// Pure states only; ensembles with more than one member are rejected.
CriterionReport strong_entropic_test(const State& s, const MeasurementSettings& settings,
                                     const EvalOptions& opts = {});

CriterionReport mgvt_test(const State& s, const MeasurementSettings& settings,
                          const EvalOptions& opts = {});

CriterionReport simon_ppt_test(const State& s, const EvalOptions& opts = {});

// Gaussian-extremality cross-check: ln(2 pi e sigma delta) >= entropic lhs.
bool sandwich_check(double entropic_lhs, double sigma, double delta);

struct ScanError {
    MeasurementSettings settings;
    std::string message;
};

struct ScanResult {
    std::map<Criterion, CriterionReport> best; // maximal margin per criterion
    std::vector<CriterionReport> grid;
    std::vector<ScanError> errors;
};

// Evaluates the requested criteria over theta1, theta2 in [0, pi) on the
// step grid, both sign pairings, and (strong/weak only) all squeezing pairs
// from a_values.  Point failures are recorded and skipped.
ScanResult scan_settings(const State& s, const std::set<Criterion>& criteria,
                         double theta_step, const std::vector<double>& a_values,
                         const EvalOptions& opts = {});

// Fast path for batch tables: same grid as scan_settings at a1 = a2 = 1,
// stopping as soon as every requested criterion has a violation.
struct DetectionFlags {
    bool strong = false;
    bool weak = false;
    bool mgvt = false;
};
DetectionFlags classify_state(const State& s, double theta_step, const EvalOptions& opts = {});

// Covariance matrix of (x1, p1, x2, p2), reconstructed from joint quadrature
// densities at angle pairs {0, pi/2, pi/4}.  Exposed for tests.
struct Covariance4 {
    double m[4][4];
};
Covariance4 covariance_tomography(const State& s, int points, double span);

} // namespace cvent
