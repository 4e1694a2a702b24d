#ifndef EULERML_TRACKER_HPP
#define EULERML_TRACKER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "eulerml/polynomial.hpp"
#include "eulerml/random.hpp"
#include "eulerml/systems.hpp"

namespace eulerml {

/// Knobs for predictor-corrector path tracking. Defaults are the tuned values
/// used by every pipeline entry point; tests pin them rather than re-deriving.
struct TrackerSettings {
  double initialStep = 0.05;
  double minStep = 1e-12;
  double maxStep = 0.1;
  double newtonTol = 1e-9;     // corrector acceptance, relative to max(1, |x|)
  int maxNewtonIters = 3;      // per correction
  long maxSteps = 20000;       // per path
  double endgameCutoff = 1e-6; // t*: below this, jump to the t = 0 polish
  double divergenceBound = 1e12;
  int polishIters = 10;        // Newton iterations of the final polish
  double residualTol = 1e-8;   // converged iff residual <= this after polish
  double classifyTol = 1e-6;   // coordinate-hyperplane distance for counting
  double conditionBound = 1e8; // regularity threshold for parameter tracking
  double dedupTol = 1e-6;      // max-norm merge radius at generic parameters

  /// Throws ValueError unless min step < initial step <= max step and every
  /// tolerance is positive.
  void validate() const;
};

enum class PathStatus { converged, diverged, stalled };

const char* toText(PathStatus s);
PathStatus pathStatusFromText(const std::string& s);

/// Endpoint of one tracked path.
struct TrackedPoint {
  std::vector<Cplx> coordinates; // primal (+ y) then multipliers l0..lc'
  PathStatus status = PathStatus::stalled;
  double condition = 0.0; // Jacobian condition estimate at the endpoint
  double residual = 0.0;  // max |equation value| at the endpoint
};

/// Solutions of one removal level's Lagrange system at fixed parameters b.
/// The multipliers are tracked projectively: coordinates carry l0..lc' cut by
/// the stored random affine patch, so paths escaping to the coordinate
/// hyperplanes end at finite points with tiny entries instead of diverging.
struct WitnessSet {
  std::size_t k = 0;
  RemovalSystem<Cplx> system; // Lagrange system with symbolic b
  std::vector<Cplx> patch;    // multiplier patch row a0..ac'
  std::vector<Cplx> b;        // parameter values the points satisfy
  std::vector<TrackedPoint> points;
  std::vector<bool> flags; // true = counted
  std::size_t degree = 0;  // number of true flags
};

/// Straight-line program for a polynomial system: values[0..unknowns) are the
/// variables solved for, values[unknowns..unknowns+parameters) are fixed
/// parameters appended behind them in the same ring.
class CompiledSystem {
 public:
  CompiledSystem() = default;
  CompiledSystem(const std::vector<CplxPoly>& equations, std::size_t unknowns,
                 std::size_t parameters);

  std::size_t size() const { return equations_.size(); }
  std::size_t unknowns() const { return unknowns_; }
  std::size_t parameters() const { return parameters_; }
  /// Total degree of each equation in the unknowns.
  const std::vector<int>& degrees() const { return degrees_; }

  /// out[i] = F_i(values); values has length unknowns + parameters.
  void eval(const Cplx* values, Cplx* out) const;
  /// Row-major size x unknowns matrix of dF_i/dx_j.
  void evalJacobian(const Cplx* values, Cplx* out) const;
  /// Row-major size x parameters matrix of dF_i/db_j.
  void evalParamJacobian(const Cplx* values, Cplx* out) const;

 private:
  struct Term {
    Cplx coeff;
    std::uint32_t first = 0; // index into factors_
    std::uint32_t count = 0;
  };
  struct Entry {
    std::uint32_t firstTerm = 0;
    std::uint32_t termCount = 0;
  };

  void compileInto(const CplxPoly& p, std::vector<Entry>& table);
  void evalTable(const std::vector<Entry>& table, const Cplx* values,
                 Cplx* out) const;

  std::size_t unknowns_ = 0;
  std::size_t parameters_ = 0;
  std::vector<Entry> equations_;
  std::vector<Entry> jacobian_;      // size x unknowns
  std::vector<Entry> paramJacobian_; // size x parameters
  std::vector<Term> terms_;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> factors_; // (var, exp)
  std::vector<int> degrees_;
};

/// Square homotopy H(x, t) with H(., 1) the start system and H(., 0) the
/// target. Implementations are immutable and safe to share across workers.
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual std::size_t size() const = 0;
  virtual void eval(const Cplx* x, double t, Cplx* out) const = 0;
  /// Row-major size x size matrix of dH_i/dx_j.
  virtual void jacobian(const Cplx* x, double t, Cplx* out) const = 0;
  virtual void timeDerivative(const Cplx* x, double t, Cplx* out) const = 0;
};

/// H(x, t) = gamma * t * G(x) + (1 - t) * F(x) for square systems G, F in the
/// same unknowns (no parameters).
class LinearHomotopy : public Homotopy {
 public:
  LinearHomotopy(CompiledSystem start, CompiledSystem target, Cplx gamma);
  LinearHomotopy(const std::vector<CplxPoly>& start,
                 const std::vector<CplxPoly>& target, Cplx gamma,
                 std::size_t unknowns);

  std::size_t size() const override;
  void eval(const Cplx* x, double t, Cplx* out) const override;
  void jacobian(const Cplx* x, double t, Cplx* out) const override;
  void timeDerivative(const Cplx* x, double t, Cplx* out) const override;

 private:
  CompiledSystem start_;
  CompiledSystem target_;
  Cplx gamma_;
};

/// H(x, t) = F(x; b(t)) with b(t) = t * bStart + (1 - t) * bTarget.
class ParameterHomotopy : public Homotopy {
 public:
  ParameterHomotopy(CompiledSystem system, std::vector<Cplx> bStart,
                    std::vector<Cplx> bTarget);

  std::size_t size() const override;
  void eval(const Cplx* x, double t, Cplx* out) const override;
  void jacobian(const Cplx* x, double t, Cplx* out) const override;
  void timeDerivative(const Cplx* x, double t, Cplx* out) const override;

 private:
  CompiledSystem system_;
  std::vector<Cplx> bStart_;
  std::vector<Cplx> bTarget_;
};

/// Total-degree start system x_i^{d_i} - r_i with random nonzero r_i; its
/// roots are all combinations of d_i-th roots, enumerated in mixed radix.
struct StartSystem {
  std::vector<int> degrees;
  std::vector<Cplx> roots;

  long pathCount() const; // Bezout product of the degrees
  std::vector<Cplx> point(long index) const;
  std::vector<CplxPoly> polynomials(const RingPtr& ring) const;
};

/// Throws ValueError on an equation of total degree zero.
StartSystem totalDegreeStart(const std::vector<int>& degrees,
                             RandomSource& source);
StartSystem totalDegreeStart(const std::vector<CplxPoly>& square,
                             RandomSource& source);

/// Tracks one path of H from t = 1 to t = 0: fourth-order Runge-Kutta on the
/// Davidenko ODE with a Newton corrector, adaptive step, truncation at the
/// endgame cutoff, and a multiplicity-aware Newton polish at t = 0.
TrackedPoint trackPath(const Homotopy& h, const std::vector<Cplx>& start,
                       const TrackerSettings& settings);

/// Solves the Lagrange system at a fresh generic complex b: total-degree start
/// with the gamma trick, one path per Bezout combination, deduplicated
/// converged endpoints, each counted iff every coordinate (primal, y, and all
/// multipliers) stays off the coordinate hyperplanes by classifyTol.
/// More than 10% stalled paths triggers one rerun with a fresh gamma, then
/// TrackingError.
WitnessSet solveGeneric(const RemovalSystem<Cplx>& system, RandomSource& source,
                        const TrackerSettings& settings = {});

/// Tracks every counted point of ws along b(t) = t * b + (1 - t) * targetB.
/// Endpoints are counted iff converged, condition <= conditionBound, and every
/// coordinate magnitude >= classifyTol; failed paths become uncounted points.
WitnessSet parameterTrack(const WitnessSet& ws, const std::vector<Cplx>& targetB,
                          const TrackerSettings& settings = {});

/// Recomputes flags from the stored endpoints alone (no re-tracking): counted
/// iff converged and min coordinate magnitude >= tolerance.
WitnessSet reclassify(const WitnessSet& ws, double tolerance);

/// Worker threads used for path tracking: EULERML_THREADS when set (clamped to
/// at least 1), otherwise the hardware concurrency.
std::size_t workerCount();

} // namespace eulerml

#endif
