#include "eulerml/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include <Eigen/Dense>

#include "eulerml/errors.hpp"
#include "eulerml/ring.hpp"

namespace eulerml {

namespace {

constexpr double kHugeCondition = 1e300;
// Norm bars for writing a non-converged endpoint off as gone to infinity.
constexpr double kInfinityBar = 1e8;
constexpr double kBrokenArithmeticBar = 1e9;
// A corrector stall at t below this is the truncation point of a path whose
// endpoint Jacobian degenerates (condition * eps exceeds the Newton
// tolerance): hand the point to the t = 0 polish instead of giving up.
constexpr double kRescueT = 1e-3;

using Matrix =
    Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Cplx, Eigen::Dynamic, 1>;

double maxAbs(const Cplx* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

double minAbs(const std::vector<Cplx>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (const Cplx& c : v) m = std::min(m, std::abs(c));
  return m;
}

bool allFinite(const Cplx* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

} // namespace

void TrackerSettings::validate() const {
  const bool ordered = minStep < initialStep && initialStep <= maxStep;
  const bool positive = minStep > 0 && newtonTol > 0 && endgameCutoff > 0 &&
                        divergenceBound > 0 && residualTol > 0 &&
                        classifyTol > 0 && conditionBound > 0 && dedupTol > 0 &&
                        maxNewtonIters > 0 && maxSteps > 0 && polishIters > 0;
  if (!ordered || !positive)
    throw ValueError("tracker settings need min step < initial step <= max "
                     "step and positive tolerances");
}

const char* toText(PathStatus s) {
  switch (s) {
    case PathStatus::converged: return "converged";
    case PathStatus::diverged: return "diverged";
    case PathStatus::stalled: return "stalled";
  }
  return "stalled";
}

PathStatus pathStatusFromText(const std::string& s) {
  if (s == "converged") return PathStatus::converged;
  if (s == "diverged") return PathStatus::diverged;
  if (s == "stalled") return PathStatus::stalled;
  throw ValueError("unknown path status: " + s);
}

// ---------------------------------------------------------------------------
// CompiledSystem

CompiledSystem::CompiledSystem(const std::vector<CplxPoly>& equations,
                               std::size_t unknowns, std::size_t parameters)
    : unknowns_(unknowns), parameters_(parameters) {
  for (const CplxPoly& p : equations) {
    if (p.ring()->size() != unknowns + parameters)
      throw ValueError("equation ring does not match unknowns + parameters");
  }
  degrees_.reserve(equations.size());
  for (const CplxPoly& p : equations) {
    int deg = 0;
    for (const auto& [mono, coeff] : p.terms()) {
      int d = 0;
      for (std::size_t i = 0; i < unknowns_; ++i) d += static_cast<int>(mono[i]);
      deg = std::max(deg, d);
    }
    degrees_.push_back(deg);
  }
  for (const CplxPoly& p : equations) compileInto(p, equations_);
  for (const CplxPoly& p : equations)
    for (std::size_t j = 0; j < unknowns_; ++j) compileInto(p.partial(j), jacobian_);
  for (const CplxPoly& p : equations)
    for (std::size_t j = 0; j < parameters_; ++j)
      compileInto(p.partial(unknowns_ + j), paramJacobian_);
}

void CompiledSystem::compileInto(const CplxPoly& p, std::vector<Entry>& table) {
  Entry e;
  e.firstTerm = static_cast<std::uint32_t>(terms_.size());
  for (const auto& [mono, coeff] : p.terms()) {
    Term t;
    t.coeff = coeff;
    t.first = static_cast<std::uint32_t>(factors_.size());
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      factors_.emplace_back(static_cast<std::uint16_t>(i),
                            static_cast<std::uint16_t>(mono[i]));
      ++t.count;
    }
    terms_.push_back(t);
  }
  e.termCount = static_cast<std::uint32_t>(terms_.size()) - e.firstTerm;
  table.push_back(e);
}

void CompiledSystem::evalTable(const std::vector<Entry>& table,
                               const Cplx* values, Cplx* out) const {
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Entry& e = table[i];
    Cplx acc(0.0, 0.0);
    for (std::uint32_t ti = e.firstTerm; ti < e.firstTerm + e.termCount; ++ti) {
      const Term& t = terms_[ti];
      Cplx prod = t.coeff;
      for (std::uint32_t fi = t.first; fi < t.first + t.count; ++fi) {
        const Cplx v = values[factors_[fi].first];
        for (std::uint16_t rep = 0; rep < factors_[fi].second; ++rep) prod *= v;
      }
      acc += prod;
    }
    out[i] = acc;
  }
}

void CompiledSystem::eval(const Cplx* values, Cplx* out) const {
  evalTable(equations_, values, out);
}

void CompiledSystem::evalJacobian(const Cplx* values, Cplx* out) const {
  evalTable(jacobian_, values, out);
}

void CompiledSystem::evalParamJacobian(const Cplx* values, Cplx* out) const {
  evalTable(paramJacobian_, values, out);
}

// ---------------------------------------------------------------------------
// Homotopies

LinearHomotopy::LinearHomotopy(CompiledSystem start, CompiledSystem target,
                               Cplx gamma)
    : start_(std::move(start)), target_(std::move(target)), gamma_(gamma) {
  const bool square = start_.size() == start_.unknowns() &&
                      target_.size() == target_.unknowns() &&
                      start_.size() == target_.size();
  if (!square || start_.parameters() != 0 || target_.parameters() != 0)
    throw ValueError("linear homotopy needs square parameter-free start and "
                     "target systems of equal size");
}

LinearHomotopy::LinearHomotopy(const std::vector<CplxPoly>& start,
                               const std::vector<CplxPoly>& target, Cplx gamma,
                               std::size_t unknowns)
    : LinearHomotopy(CompiledSystem(start, unknowns, 0),
                     CompiledSystem(target, unknowns, 0), gamma) {}

std::size_t LinearHomotopy::size() const { return start_.size(); }

void LinearHomotopy::eval(const Cplx* x, double t, Cplx* out) const {
  thread_local std::vector<Cplx> gs, fs;
  const std::size_t n = size();
  gs.resize(n);
  fs.resize(n);
  start_.eval(x, gs.data());
  target_.eval(x, fs.data());
  for (std::size_t i = 0; i < n; ++i)
    out[i] = gamma_ * t * gs[i] + (1.0 - t) * fs[i];
}

void LinearHomotopy::jacobian(const Cplx* x, double t, Cplx* out) const {
  thread_local std::vector<Cplx> gs, fs;
  const std::size_t n = size();
  gs.resize(n * n);
  fs.resize(n * n);
  start_.evalJacobian(x, gs.data());
  target_.evalJacobian(x, fs.data());
  for (std::size_t i = 0; i < n * n; ++i)
    out[i] = gamma_ * t * gs[i] + (1.0 - t) * fs[i];
}

void LinearHomotopy::timeDerivative(const Cplx* x, double t, Cplx* out) const {
  (void)t;
  thread_local std::vector<Cplx> gs, fs;
  const std::size_t n = size();
  gs.resize(n);
  fs.resize(n);
  start_.eval(x, gs.data());
  target_.eval(x, fs.data());
  for (std::size_t i = 0; i < n; ++i) out[i] = gamma_ * gs[i] - fs[i];
}

ParameterHomotopy::ParameterHomotopy(CompiledSystem system,
                                     std::vector<Cplx> bStart,
                                     std::vector<Cplx> bTarget)
    : system_(std::move(system)),
      bStart_(std::move(bStart)),
      bTarget_(std::move(bTarget)) {
  if (system_.size() != system_.unknowns())
    throw ValueError("parameter homotopy needs a square system");
  if (bStart_.size() != system_.parameters() ||
      bTarget_.size() != system_.parameters())
    throw ValueError("parameter vectors must match the system's parameters");
}

std::size_t ParameterHomotopy::size() const { return system_.size(); }

namespace {
// Builds [x | t*bStart + (1-t)*bTarget] into a reusable buffer.
const Cplx* packValues(const CompiledSystem& sys, const Cplx* x, double t,
                       const std::vector<Cplx>& bStart,
                       const std::vector<Cplx>& bTarget) {
  thread_local std::vector<Cplx> vals;
  const std::size_t n = sys.unknowns(), p = sys.parameters();
  vals.resize(n + p);
  std::copy(x, x + n, vals.begin());
  for (std::size_t j = 0; j < p; ++j)
    vals[n + j] = t * bStart[j] + (1.0 - t) * bTarget[j];
  return vals.data();
}
} // namespace

void ParameterHomotopy::eval(const Cplx* x, double t, Cplx* out) const {
  system_.eval(packValues(system_, x, t, bStart_, bTarget_), out);
}

void ParameterHomotopy::jacobian(const Cplx* x, double t, Cplx* out) const {
  system_.evalJacobian(packValues(system_, x, t, bStart_, bTarget_), out);
}

void ParameterHomotopy::timeDerivative(const Cplx* x, double t,
                                       Cplx* out) const {
  thread_local std::vector<Cplx> pj;
  const std::size_t n = size(), p = system_.parameters();
  if (p == 0) {
    std::fill(out, out + n, Cplx(0.0, 0.0));
    return;
  }
  pj.resize(n * p);
  system_.evalParamJacobian(packValues(system_, x, t, bStart_, bTarget_),
                            pj.data());
  // dH/dt = dF/db * db/dt with db/dt = bStart - bTarget.
  for (std::size_t i = 0; i < n; ++i) {
    Cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < p; ++j)
      acc += pj[i * p + j] * (bStart_[j] - bTarget_[j]);
    out[i] = acc;
  }
}

// ---------------------------------------------------------------------------
// Total-degree start

long StartSystem::pathCount() const {
  long n = 1;
  for (int d : degrees) n *= d;
  return n;
}

std::vector<Cplx> StartSystem::point(long index) const {
  std::vector<Cplx> x(degrees.size());
  long rest = index;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const int d = degrees[i];
    const long j = rest % d;
    rest /= d;
    constexpr double kTau = 6.283185307179586476925286766559;
    const double ang = kTau * static_cast<double>(j) / d;
    x[i] = std::pow(roots[i], 1.0 / d) * Cplx(std::cos(ang), std::sin(ang));
  }
  return x;
}

std::vector<CplxPoly> StartSystem::polynomials(const RingPtr& ring) const {
  std::vector<CplxPoly> out;
  out.reserve(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    out.push_back(
        CplxPoly::variable(ring, i, static_cast<unsigned>(degrees[i])) -
        CplxPoly::constant(ring, roots[i]));
  }
  return out;
}

StartSystem totalDegreeStart(const std::vector<int>& degrees,
                             RandomSource& source) {
  StartSystem ss;
  ss.degrees = degrees;
  for (int d : degrees) {
    if (d <= 0)
      throw ValueError("total-degree start needs every equation degree >= 1");
    ss.roots.push_back(source.unitComplex());
  }
  return ss;
}

StartSystem totalDegreeStart(const std::vector<CplxPoly>& square,
                             RandomSource& source) {
  std::vector<int> degrees;
  degrees.reserve(square.size());
  for (const CplxPoly& p : square) {
    int deg = 0;
    for (const auto& [mono, coeff] : p.terms()) {
      int d = 0;
      for (std::size_t i = 0; i < mono.size(); ++i) d += static_cast<int>(mono[i]);
      deg = std::max(deg, d);
    }
    degrees.push_back(deg);
  }
  return totalDegreeStart(degrees, source);
}

// ---------------------------------------------------------------------------
// Path tracking

namespace {

struct PathOutcome {
  TrackedPoint point;
  bool midTrackFailure = false; // stalled before reaching the endgame cutoff
};

double conditionEstimate(const Homotopy& h, const Vector& x, double t) {
  const std::size_t n = h.size();
  if (!allFinite(x.data(), n)) return kHugeCondition;
  Matrix J(n, n);
  h.jacobian(x.data(), t, J.data());
  if (!allFinite(J.data(), n * n)) return kHugeCondition;
  Eigen::JacobiSVD<Matrix> svd(J);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), smin = sv(sv.size() - 1);
  if (!(smin > smax * 1e-300) || smin == 0.0) return kHugeCondition;
  return std::min(smax / smin, kHugeCondition);
}

PathOutcome trackPathImpl(const Homotopy& h, const std::vector<Cplx>& start,
                          const TrackerSettings& s) {
  const std::size_t n = h.size();
  if (start.size() != n)
    throw ValueError("start point size does not match the homotopy");

  Vector x = Eigen::Map<const Vector>(start.data(), n);
  Matrix J(n, n);
  Vector hv(n), ht(n), k1(n), k2(n), k3(n), k4(n), stage(n), xc(n);

  auto slope = [&](const Vector& at, double t, Vector& k) -> bool {
    h.jacobian(at.data(), t, J.data());
    h.timeDerivative(at.data(), t, ht.data());
    if (!allFinite(J.data(), n * n) || !allFinite(ht.data(), n)) return false;
    k = Eigen::PartialPivLU<Matrix>(J).solve(-ht);
    return k.allFinite();
  };
  auto residualAt = [&](const Vector& at, double t) -> double {
    h.eval(at.data(), t, hv.data());
    return maxAbs(hv.data(), n);
  };
  auto finish = [&](PathStatus status, double t, bool mid) -> PathOutcome {
    PathOutcome out;
    out.point.coordinates.assign(x.data(), x.data() + n);
    out.point.status = status;
    out.point.residual =
        allFinite(x.data(), n) ? residualAt(x, t)
                               : std::numeric_limits<double>::infinity();
    out.point.condition = conditionEstimate(h, x, t);
    out.midTrackFailure = mid;
    return out;
  };

  double t = 1.0;
  double step = s.initialStep;
  long steps = 0;
  int successes = 0;

  while (t > s.endgameCutoff) {
    if (steps++ >= s.maxSteps) {
      if (maxAbs(x.data(), n) > kBrokenArithmeticBar)
        return finish(PathStatus::diverged, t, true);
      if (t <= kRescueT) break; // close enough to truncate: let the polish decide
      return finish(PathStatus::stalled, t, true);
    }
    const double dt = std::min(step, t - s.endgameCutoff);
    const double tn = t - dt;

    // Fourth-order Runge-Kutta on dx/dt = -J^{-1} dH/dt, stepping t -> tn.
    bool ok = slope(x, t, k1);
    if (ok) {
      stage = x - (dt / 2.0) * k1;
      ok = slope(stage, t - dt / 2.0, k2);
    }
    if (ok) {
      stage = x - (dt / 2.0) * k2;
      ok = slope(stage, t - dt / 2.0, k3);
    }
    if (ok) {
      stage = x - dt * k3;
      ok = slope(stage, tn, k4);
    }
    if (ok) {
      xc = x - (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ok = xc.allFinite();
    }
    if (ok) {
      // Newton corrector at tn.
      bool corrected = false;
      for (int it = 0; it < s.maxNewtonIters; ++it) {
        h.jacobian(xc.data(), tn, J.data());
        h.eval(xc.data(), tn, hv.data());
        if (!allFinite(J.data(), n * n) || !allFinite(hv.data(), n)) break;
        Vector delta = Eigen::PartialPivLU<Matrix>(J).solve(-hv);
        if (!delta.allFinite()) break;
        xc += delta;
        const double nd = delta.lpNorm<Eigen::Infinity>();
        if (nd <= s.newtonTol * std::max(1.0, maxAbs(xc.data(), n))) {
          corrected = true;
          break;
        }
      }
      ok = corrected && xc.allFinite();
    }

    if (!ok) {
      if (maxAbs(x.data(), n) > kBrokenArithmeticBar)
        return finish(PathStatus::diverged, t, false);
      step *= 0.5;
      successes = 0;
      if (step < s.minStep) {
        if (t <= kRescueT) break; // close enough to truncate: let the polish decide
        return finish(PathStatus::stalled, t, true);
      }
      continue;
    }

    x = xc;
    t = tn;
    if (maxAbs(x.data(), n) > s.divergenceBound)
      return finish(PathStatus::diverged, t, false);
    if (++successes >= 5) {
      step = std::min(step * 2.0, s.maxStep);
      successes = 0;
    }
  }

  // Endgame: jump from t* to a Newton polish of the target system at t = 0.
  if (maxAbs(x.data(), n) > kInfinityBar)
    return finish(PathStatus::diverged, 0.0, false);

  int mult = 1;
  double prevDelta = -1.0;
  Vector bestX = x;
  double bestDelta = std::numeric_limits<double>::infinity();
  for (int it = 0; it < s.polishIters; ++it) {
    h.jacobian(x.data(), 0.0, J.data());
    h.eval(x.data(), 0.0, hv.data());
    if (!allFinite(J.data(), n * n) || !allFinite(hv.data(), n)) break;
    Vector delta = Eigen::PartialPivLU<Matrix>(J).solve(-hv);
    if (!delta.allFinite()) break;
    const double nd = delta.lpNorm<Eigen::Infinity>();
    if (nd < bestDelta) {
      bestDelta = nd;
      bestX = x;
    }
    // Contraction ratio of plain Newton steps estimates the multiplicity m
    // (ratio ~ (m-1)/m); scaling the step by m restores fast convergence at
    // multiple roots, so tiny endpoint coordinates settle well below the
    // classification tolerance instead of hovering at it.
    if (it >= 2 && prevDelta > 1e-14 * std::max(1.0, maxAbs(x.data(), n))) {
      const double rho = nd / prevDelta;
      if (rho > 1.2)
        mult = 1;
      else if (rho >= 0.3 && rho <= 0.95)
        mult = std::clamp(static_cast<int>(std::lround(1.0 / (1.0 - rho))), 1, 4);
    }
    x += static_cast<double>(mult) * delta;
    prevDelta = nd;
    if (!x.allFinite()) break;
    if (nd <= 1e-15 * std::max(1.0, maxAbs(x.data(), n))) break;
  }

  // Near a multiple root the Newton step degenerates to noise over a vanishing
  // derivative, so the iteration can cycle between the root and a kicked-out
  // shell at noise scale; the last iterate is then a roulette sample from that
  // cycle. Keep the closest visit (smallest proposed step) instead.
  if (bestX.allFinite() &&
      (!x.allFinite() || residualAt(bestX, 0.0) < residualAt(x, 0.0)))
    x = bestX;

  if (!x.allFinite() || maxAbs(x.data(), n) > kInfinityBar)
    return finish(PathStatus::diverged, 0.0, false);
  const double res = residualAt(x, 0.0);
  if (res <= s.residualTol) return finish(PathStatus::converged, 0.0, false);
  // A failed polish at large norm is a path marching to infinity as t -> 0;
  // 1/sqrt(t*) is the scale such paths have already passed at the cutoff.
  const bool atInfinity = maxAbs(x.data(), n) > 1.0 / std::sqrt(s.endgameCutoff);
  return finish(atInfinity ? PathStatus::diverged : PathStatus::stalled, 0.0,
                false);
}

// Tracks one path per start point, in deterministic input order; workers split
// the index range, so results are independent of scheduling.
std::vector<PathOutcome> trackMany(
    const Homotopy& h, const std::vector<std::vector<Cplx>>& starts,
    const TrackerSettings& s) {
  std::vector<PathOutcome> out(starts.size());
  const std::size_t total = starts.size();
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(workerCount(), total));
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) out[i] = trackPathImpl(h, starts[i], s);
    return out;
  }
  std::exception_ptr firstError;
  std::mutex errorLock;
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i)
          out[i] = trackPathImpl(h, starts[i], s);
      } catch (...) {
        std::lock_guard<std::mutex> g(errorLock);
        if (!firstError) firstError = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (firstError) std::rethrow_exception(firstError);
  return out;
}

// The Lagrange system with projective multipliers l0..lc' cut by an affine
// patch row: defining equations, l0*mu_j + sum_i l_i * dG_i/dz_j * z_j, and
// the patch. Ring order: primal, l0..lc', then the b parameters.
struct PatchedSystem {
  RingPtr ring;
  std::vector<CplxPoly> equations;
  std::size_t unknowns = 0;
  std::size_t parameters = 0;
};

PatchedSystem buildPatched(const RemovalSystem<Cplx>& sys,
                           const std::vector<Cplx>& patch) {
  const std::size_t np = sys.primalCount;
  const std::size_t c = sys.lagrangeCount;
  const std::size_t k = sys.parameterCount;
  if (patch.size() != c + 1)
    throw ValueError("patch row must have one entry per multiplier l0..lc'");
  if (sys.mu.size() != np)
    throw ValueError("data vector must have one entry per primal coordinate");
  if (sys.ring->size() != np + c + k)
    throw ValueError("removal system ring size mismatch");

  const std::vector<std::string>& old = sys.ring->names();
  std::set<std::string> taken(old.begin(), old.end());
  std::string l0 = "l0";
  while (taken.count(l0)) l0 = "_" + l0;
  std::vector<std::string> names(old.begin(), old.begin() + np);
  names.push_back(l0);
  names.insert(names.end(), old.begin() + np, old.end());
  RingPtr ring = makeComplexRing(std::move(names));

  // Old index -> new index (l0 sits between the primal block and l1..lc').
  auto remap = [&](const CplxPoly& p) -> CplxPoly {
    std::vector<std::pair<Monomial, Cplx>> terms;
    for (const auto& [mono, coeff] : p.terms()) {
      Monomial m(ring->size());
      for (std::size_t i = 0; i < mono.size(); ++i) {
        if (mono[i] == 0) continue;
        m.setExponent(i < np ? i : i + 1, mono[i]);
      }
      terms.emplace_back(std::move(m), coeff);
    }
    return CplxPoly::fromTerms(ring, std::move(terms));
  };

  PatchedSystem out;
  out.unknowns = np + c + 1;
  out.parameters = k;

  std::vector<CplxPoly> defining;
  defining.reserve(c);
  for (const CplxPoly& g : sys.defining) defining.push_back(remap(g));

  out.equations = defining;
  for (std::size_t j = 0; j < np; ++j) {
    CplxPoly m = CplxPoly::variable(ring, np).scaled(sys.mu[j]); // l0 * mu_j
    for (std::size_t i = 0; i < c; ++i) {
      CplxPoly w = sys.defining[i].partial(j) *
                   Polynomial<Cplx>::variable(sys.ring, j);
      m = m + remap(w) * CplxPoly::variable(ring, np + 1 + i);
    }
    out.equations.push_back(std::move(m));
  }
  CplxPoly cut = CplxPoly::constant(ring, Cplx(-1.0, 0.0));
  for (std::size_t i = 0; i <= c; ++i)
    cut = cut + CplxPoly::variable(ring, np + i).scaled(patch[i]);
  out.equations.push_back(std::move(cut));

  out.ring = std::move(ring);
  return out;
}

std::size_t countFlags(const std::vector<bool>& flags) {
  std::size_t n = 0;
  for (bool f : flags) n += f ? 1 : 0;
  return n;
}

} // namespace

TrackedPoint trackPath(const Homotopy& h, const std::vector<Cplx>& start,
                       const TrackerSettings& settings) {
  settings.validate();
  return trackPathImpl(h, start, settings).point;
}

WitnessSet solveGeneric(const RemovalSystem<Cplx>& system, RandomSource& source,
                        const TrackerSettings& settings) {
  settings.validate();
  const std::size_t k = system.parameterCount;
  const std::size_t c = system.lagrangeCount;

  std::vector<Cplx> b(k);
  for (Cplx& v : b) v = source.unitComplex();
  std::vector<Cplx> patch(c + 1);
  for (Cplx& v : patch) v = source.unitComplex();

  PatchedSystem ps = buildPatched(system, patch);
  std::vector<CplxPoly> target = ps.equations;
  RingPtr freeRing = ps.ring;
  if (k > 0) {
    std::map<std::size_t, Cplx> fixed;
    for (std::size_t i = 0; i < k; ++i) fixed[ps.unknowns + i] = b[i];
    std::vector<std::string> baseNames(ps.ring->names().begin(),
                                       ps.ring->names().begin() + ps.unknowns);
    freeRing = makeComplexRing(std::move(baseNames));
    for (CplxPoly& p : target) p = dropSuffix(p.substituted(fixed), freeRing, k);
  }
  CompiledSystem compiledTarget(target, ps.unknowns, 0);

  StartSystem ss = totalDegreeStart(compiledTarget.degrees(), source);
  CompiledSystem compiledStart(ss.polynomials(freeRing), ps.unknowns, 0);
  const long total = ss.pathCount();
  std::vector<std::vector<Cplx>> starts;
  starts.reserve(total);
  for (long i = 0; i < total; ++i) starts.push_back(ss.point(i));

  std::vector<PathOutcome> outcomes;
  for (int attempt = 0;; ++attempt) {
    LinearHomotopy h(compiledStart, compiledTarget, source.unitComplex());
    outcomes = trackMany(h, starts, settings);
    std::size_t failures = 0;
    for (const PathOutcome& o : outcomes) failures += o.midTrackFailure ? 1 : 0;
    if (failures * 10 <= static_cast<std::size_t>(total)) break;
    if (attempt >= 1)
      throw TrackingError("more than 10% of start paths failed twice "
                          "(fresh gamma retry exhausted)");
  }

  WitnessSet ws;
  ws.k = k;
  ws.system = system;
  ws.patch = std::move(patch);
  ws.b = std::move(b);
  for (const PathOutcome& o : outcomes) {
    if (o.point.status != PathStatus::converged) continue;
    bool duplicate = false;
    for (const TrackedPoint& kept : ws.points) {
      double dist = 0.0;
      for (std::size_t i = 0; i < kept.coordinates.size(); ++i)
        dist = std::max(dist,
                        std::abs(kept.coordinates[i] - o.point.coordinates[i]));
      if (dist < settings.dedupTol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) ws.points.push_back(o.point);
  }
  ws.flags.reserve(ws.points.size());
  for (const TrackedPoint& p : ws.points)
    ws.flags.push_back(minAbs(p.coordinates) >= settings.classifyTol);
  ws.degree = countFlags(ws.flags);
  return ws;
}

WitnessSet parameterTrack(const WitnessSet& ws,
                          const std::vector<Cplx>& targetB,
                          const TrackerSettings& settings) {
  settings.validate();
  const std::size_t k = ws.system.parameterCount;
  if (targetB.size() != k)
    throw ValueError("target parameter vector must have one entry per level");
  if (ws.b.size() != k)
    throw ValueError("witness set is missing its generic parameters");

  PatchedSystem ps = buildPatched(ws.system, ws.patch);
  CompiledSystem compiled(ps.equations, ps.unknowns, ps.parameters);
  ParameterHomotopy h(std::move(compiled), ws.b, targetB);

  std::vector<std::vector<Cplx>> starts;
  for (std::size_t i = 0; i < ws.points.size(); ++i)
    if (ws.flags[i]) starts.push_back(ws.points[i].coordinates);

  std::vector<PathOutcome> outcomes = trackMany(h, starts, settings);

  WitnessSet out;
  out.k = ws.k;
  out.system = ws.system;
  out.patch = ws.patch;
  out.b = targetB;
  out.points.reserve(outcomes.size());
  for (PathOutcome& o : outcomes) out.points.push_back(std::move(o.point));
  out.flags.reserve(out.points.size());
  for (const TrackedPoint& p : out.points) {
    out.flags.push_back(p.status == PathStatus::converged &&
                        p.condition <= settings.conditionBound &&
                        minAbs(p.coordinates) >= settings.classifyTol);
  }
  out.degree = countFlags(out.flags);
  return out;
}

WitnessSet reclassify(const WitnessSet& ws, double tolerance) {
  if (!(tolerance > 0))
    throw ValueError("reclassification tolerance must be positive");
  WitnessSet out = ws;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    out.flags[i] = out.points[i].status == PathStatus::converged &&
                   minAbs(out.points[i].coordinates) >= tolerance;
  }
  out.degree = countFlags(out.flags);
  return out;
}

std::size_t workerCount() {
  if (const char* env = std::getenv("EULERML_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    return v >= 1 ? static_cast<std::size_t>(v) : 1;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

} // namespace eulerml
