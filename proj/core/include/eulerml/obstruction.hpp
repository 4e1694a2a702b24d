#ifndef EULERML_OBSTRUCTION_HPP
#define EULERML_OBSTRUCTION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eulerml/systems.hpp"
#include "eulerml/tracker.hpp"

namespace eulerml {

enum class Engine { symbolic, numeric };

const char* toText(Engine e);
Engine engineFromText(const std::string& s);

/// Removal ML degrees r_0..r_{d+1} of a variety with respect to a point with
/// all coordinates nonzero, plus the engine that produced them.
struct RemovalRecord {
  std::vector<Rat> point;
  VarietySpec<Rat> variety;
  std::map<std::size_t, long> degrees; // k -> r_k
  Engine engine = Engine::symbolic;

  /// True iff degrees holds every level k = 0..d+1.
  bool complete() const;
};

/// One removal level of a witness collection: the slicing matrix and the
/// witness set solved at the generic offset stored in set.b.
struct WitnessLevel {
  std::size_t k = 0;
  std::vector<std::vector<Cplx>> gamma; // k rows, n columns
  WitnessSet set;
};

/// Generic-parameter witness sets for every removal level 0..d+1. The slicing
/// matrices and data vectors are sampled once, so tracking the collection to
/// different target points isolates the geometry from the randomness. data0
/// serves level 0 (length n); data1 is shared by all levels >= 1 (length n+1).
struct WitnessCollection {
  VarietySpec<Rat> variety;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  DataVector<Cplx> data0;
  DataVector<Cplx> data1;
  std::vector<WitnessLevel> levels; // indexed by k = 0..d+1
  std::string directory;            // last save/load location; empty if unsaved
};

/// Numeric copy of an exact variety (coefficients rounded to double).
VarietySpec<Cplx> complexify(const VarietySpec<Rat>& X);

/// Tracker settings used by the collection layer when the caller passes none.
/// Identical to the tracker defaults except for a larger final-polish budget:
/// witness solves can end with a genuine critical point and a hyperplane-bound
/// escape endpoint only ~1e-5 apart, and the extra Newton iterations separate
/// the pair beyond the deduplication radius instead of merging it away.
TrackerSettings collectionSettings();

/// Solves every removal level at generic parameters with the numeric engine.
/// Requires a complete intersection (generator count == codimension). The
/// stored tolerance is settings.classifyTol.
WitnessCollection buildCollection(const VarietySpec<Rat>& X, std::uint64_t seed,
                                  const TrackerSettings& settings = collectionSettings());

/// Removal ML degrees with respect to p. The symbolic engine rebuilds the
/// sliced variety per level and counts critical points exactly; the numeric
/// engine builds a witness collection at generic offsets and parameter-tracks
/// it to the offsets b = Gamma p of hyperplanes through p. Rejects points
/// with a zero coordinate; engine failures carry the offending level.
RemovalRecord removalMLDegrees(const VarietySpec<Rat>& X, const std::vector<Rat>& p,
                               Engine engine, std::uint64_t seed,
                               const TrackerSettings& settings = collectionSettings());

/// Numeric removal ML degrees reusing an existing collection: one parameter
/// track per level, no fresh solve.
RemovalRecord removalMLDegrees(const WitnessCollection& wc, const std::vector<Rat>& p,
                               const TrackerSettings& settings = collectionSettings());

/// Tracks every level of the collection to the hyperplane offsets through p
/// and returns the endpoint witness sets, indexed by k. Level 0 has no
/// hyperplanes through p, so nothing is tracked there; its counted witnesses
/// are returned as-is, mirroring the tracked levels where only counted points
/// propagate. Use this instead of removalMLDegrees when the endpoints
/// themselves are needed, e.g. to re-count them under a different
/// classification tolerance.
std::vector<WitnessSet> trackCollection(const WitnessCollection& wc,
                                        const std::vector<Rat>& p,
                                        const TrackerSettings& settings = collectionSettings());

/// Local Euler obstruction from a complete record:
/// Eu = (-1)^d * sum_{k=0}^{d+1} (-1)^k r_k. Pure integer arithmetic.
long eulerObstruction(const RemovalRecord& record);

/// Writes manifest.json plus one witness_k<k>.json per level under dir,
/// creating it if needed; every file is written to a temporary name and
/// renamed into place. The manifest is written last, so a readable manifest
/// implies a complete collection.
void saveCollection(const WitnessCollection& wc, const std::string& dir);

/// Rebuilds a collection from a saved directory; throws IoError on a missing
/// manifest ("no manifest"), unreadable files, or a format-version mismatch.
WitnessCollection loadCollection(const std::string& dir);

/// Outcome of running both engines on the same input.
struct CrossCheckReport {
  RemovalRecord symbolicRecord;
  RemovalRecord numericRecord;
  bool agree = false;       // every level's degrees are equal
  long eulerSymbolic = 0;
  long eulerNumeric = 0;
};

/// Runs both engines and compares; disagreement is reported, never resolved.
CrossCheckReport crossCheck(const VarietySpec<Rat>& X, const std::vector<Rat>& p,
                            std::uint64_t seed, const TrackerSettings& settings = collectionSettings());

} // namespace eulerml

#endif
