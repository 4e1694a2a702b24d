#include "eulerml/obstruction.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "eulerml/parser.hpp"

namespace eulerml {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;
constexpr int kDataRetries = 3; // fresh data draws after a degenerate sample

void checkPoint(const VarietySpec<Rat>& X, const std::vector<Rat>& p) {
  if (p.size() != X.n)
    throw ValueError("point has " + std::to_string(p.size()) +
                     " coordinates, expected " + std::to_string(X.n));
  for (const Rat& c : p)
    if (c == 0)
      throw ValueError("point must have all coordinates nonzero");
}

std::string levelTag(std::size_t k) {
  return "removal level " + std::to_string(k);
}

// Offsets of hyperplanes through p: b = gamma * p, exact arithmetic.
std::vector<Rat> offsetsThrough(const std::vector<std::vector<Rat>>& gamma,
                                const std::vector<Rat>& p) {
  std::vector<Rat> b;
  b.reserve(gamma.size());
  for (const auto& row : gamma) {
    Rat sum = 0;
    for (std::size_t j = 0; j < row.size(); ++j) sum += row[j] * p[j];
    b.push_back(sum);
  }
  return b;
}

std::vector<Cplx> offsetsThrough(const std::vector<std::vector<Cplx>>& gamma,
                                 const std::vector<Rat>& p) {
  std::vector<Cplx> b;
  b.reserve(gamma.size());
  for (const auto& row : gamma) {
    Cplx sum = 0;
    for (std::size_t j = 0; j < row.size(); ++j)
      sum += row[j] * Cplx(ratToDouble(p[j]), 0.0);
    b.push_back(sum);
  }
  return b;
}

RemovalRecord symbolicDegrees(const VarietySpec<Rat>& X, const std::vector<Rat>& p,
                              std::uint64_t seed) {
  RandomSource source(seed);
  RemovalRecord record;
  record.point = p;
  record.variety = X;
  record.engine = Engine::symbolic;
  for (std::size_t k = 0; k <= X.d + 1; ++k) {
    RemovalConfig<Rat> cfg;
    cfg.k = k;
    cfg.gamma = sampleGamma<Rat>(k, X.n, source);
    cfg.b = offsetsThrough(cfg.gamma, p);
    cfg.point = p;
    const VarietySpec<Rat> sliced = removalVariety(X, cfg);
    long degree = -1;
    for (int attempt = 0; attempt < kDataRetries; ++attempt) {
      const DataVector<Rat> mu = sampleData<Rat>(X.n, k, source);
      try {
        degree = mlDegreeSymbolic(sliced, mu);
        break;
      } catch (const NotZeroDimensionalError&) {
        // Degenerate data: the critical scheme came out positive-dimensional.
      } catch (const ResourceLimitError& e) {
        throw ResourceLimitError(levelTag(k) + ": " + e.what(), e.basisSize(),
                                 e.degree());
      }
    }
    if (degree < 0)
      throw NonGenericDataError(levelTag(k) + ": critical scheme stayed "
                                "positive-dimensional after " +
                                std::to_string(kDataRetries) + " data samples");
    record.degrees[k] = degree;
  }
  return record;
}

} // namespace

const char* toText(Engine e) {
  return e == Engine::symbolic ? "symbolic" : "numeric";
}

Engine engineFromText(const std::string& s) {
  if (s == "symbolic") return Engine::symbolic;
  if (s == "numeric") return Engine::numeric;
  throw ValueError("unknown engine: " + s + " (expected symbolic or numeric)");
}

bool RemovalRecord::complete() const {
  for (std::size_t k = 0; k <= variety.d + 1; ++k)
    if (!degrees.count(k)) return false;
  return true;
}

TrackerSettings collectionSettings() {
  TrackerSettings s;
  // A short polish can leave a genuine endpoint stranded near an escape
  // endpoint (some multiplier -> 0) when the two sit ~1e-5 apart behind an
  // ill-conditioned Jacobian; deduplication then swallows the genuine point,
  // or the escape's unresolved residue clears the counting tolerance. The
  // larger budget lets both sides settle, restoring the separation.
  s.polishIters = 30;
  return s;
}

VarietySpec<Cplx> complexify(const VarietySpec<Rat>& X) {
  VarietySpec<Cplx> Y;
  Y.ring = makeComplexRing(X.ring->names());
  Y.n = X.n;
  Y.d = X.d;
  Y.c = X.c;
  for (const RatPoly& g : X.generators) {
    std::vector<std::pair<Monomial, Cplx>> terms;
    terms.reserve(g.termCount());
    for (const auto& [mono, coeff] : g.terms())
      terms.emplace_back(mono, Cplx(ratToDouble(coeff), 0.0));
    Y.generators.push_back(CplxPoly::fromTerms(Y.ring, std::move(terms)));
  }
  return Y;
}

WitnessCollection buildCollection(const VarietySpec<Rat>& X, std::uint64_t seed,
                                  const TrackerSettings& settings) {
  settings.validate();
  if (X.generators.size() != X.c)
    throw ValueError("numeric engine needs a complete intersection "
                     "(generator count == codimension)");
  const VarietySpec<Cplx> Xc = complexify(X);
  RandomSource source(seed);
  WitnessCollection wc;
  wc.variety = X;
  wc.seed = seed;
  wc.tolerance = settings.classifyTol;
  wc.data0 = sampleData<Cplx>(X.n, 0, source);
  wc.data1 = sampleData<Cplx>(X.n, 1, source);
  for (std::size_t k = 0; k <= X.d + 1; ++k) {
    RemovalConfig<Cplx> cfg;
    cfg.k = k;
    cfg.gamma = sampleGamma<Cplx>(k, X.n, source);
    cfg.b.assign(k, Cplx(0.0, 0.0)); // shape only; solveGeneric draws its own b
    const RemovalSystem<Cplx> sys =
        lagrangeSystem(Xc, k == 0 ? wc.data0 : wc.data1, cfg);
    WitnessLevel level;
    level.k = k;
    level.gamma = cfg.gamma;
    try {
      level.set = solveGeneric(sys, source, settings);
    } catch (const TrackingError& e) {
      throw TrackingError(levelTag(k) + ": " + e.what());
    }
    wc.levels.push_back(std::move(level));
  }
  return wc;
}

RemovalRecord removalMLDegrees(const VarietySpec<Rat>& X, const std::vector<Rat>& p,
                               Engine engine, std::uint64_t seed,
                               const TrackerSettings& settings) {
  checkPoint(X, p);
  if (engine == Engine::symbolic) return symbolicDegrees(X, p, seed);
  const WitnessCollection wc = buildCollection(X, seed, settings);
  return removalMLDegrees(wc, p, settings);
}

std::vector<WitnessSet> trackCollection(const WitnessCollection& wc,
                                        const std::vector<Rat>& p,
                                        const TrackerSettings& settings) {
  checkPoint(wc.variety, p);
  std::vector<WitnessSet> tracked;
  tracked.reserve(wc.levels.size());
  for (const WitnessLevel& level : wc.levels) {
    if (level.k == 0) {
      // No hyperplanes pass through p at level 0, so no tracking happens;
      // keep only the counted witnesses, mirroring the tracked levels where
      // only counted points propagate.
      WitnessSet counted;
      counted.k = 0;
      counted.system = level.set.system;
      counted.patch = level.set.patch;
      counted.b = level.set.b;
      for (std::size_t i = 0; i < level.set.points.size(); ++i) {
        if (!level.set.flags[i]) continue;
        counted.points.push_back(level.set.points[i]);
        counted.flags.push_back(true);
      }
      counted.degree = counted.points.size();
      tracked.push_back(std::move(counted));
      continue;
    }
    const std::vector<Cplx> target = offsetsThrough(level.gamma, p);
    try {
      tracked.push_back(parameterTrack(level.set, target, settings));
    } catch (const EngineError& e) {
      throw TrackingError(levelTag(level.k) + ": " + e.what());
    }
  }
  return tracked;
}

RemovalRecord removalMLDegrees(const WitnessCollection& wc, const std::vector<Rat>& p,
                               const TrackerSettings& settings) {
  RemovalRecord record;
  record.point = p;
  record.variety = wc.variety;
  record.engine = Engine::numeric;
  for (const WitnessSet& set : trackCollection(wc, p, settings))
    record.degrees[set.k] = static_cast<long>(set.degree);
  return record;
}

long eulerObstruction(const RemovalRecord& record) {
  if (!record.complete())
    throw ValueError("removal record is incomplete: need every level 0.." +
                     std::to_string(record.variety.d + 1));
  long sum = 0;
  for (const auto& [k, r] : record.degrees) {
    if (r < 0) throw ValueError("negative removal degree at " + levelTag(k));
    sum += (k % 2 == 0) ? r : -r;
  }
  return (record.variety.d % 2 == 0) ? sum : -sum;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

json complexToJson(const Cplx& z) {
  return json::array({doubleToText(z.real()), doubleToText(z.imag())});
}

Cplx complexFromJson(const json& j) {
  return Cplx(textToDouble(j.at(0).get<std::string>()),
              textToDouble(j.at(1).get<std::string>()));
}

json complexVectorToJson(const std::vector<Cplx>& v) {
  json out = json::array();
  for (const Cplx& z : v) out.push_back(complexToJson(z));
  return out;
}

std::vector<Cplx> complexVectorFromJson(const json& j) {
  std::vector<Cplx> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(complexFromJson(e));
  return out;
}

std::string witnessFileName(std::size_t k) {
  return "witness_k" + std::to_string(k) + ".json";
}

void writeAtomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

json readJsonFile(const fs::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot read ") + what + " " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::exception& e) {
    throw IoError(std::string("corrupt ") + what + " " + path.string() + ": " +
                  e.what());
  }
}

} // namespace

void saveCollection(const WitnessCollection& wc, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());

  // Witness files first; the manifest is the commit point.
  for (const WitnessLevel& level : wc.levels) {
    json points = json::array();
    for (std::size_t i = 0; i < level.set.points.size(); ++i) {
      const TrackedPoint& pt = level.set.points[i];
      points.push_back({{"coordinates", complexVectorToJson(pt.coordinates)},
                        {"status", toText(pt.status)},
                        {"condition", doubleToText(pt.condition)},
                        {"residual", doubleToText(pt.residual)},
                        {"flag", static_cast<bool>(level.set.flags[i])}});
    }
    const json file = {
        {"format", kFormatVersion}, {"k", level.k}, {"points", points}};
    writeAtomic(fs::path(dir) / witnessFileName(level.k), file.dump(1));
  }

  json levels = json::array();
  for (const WitnessLevel& level : wc.levels) {
    json gamma = json::array();
    for (const auto& row : level.gamma) gamma.push_back(complexVectorToJson(row));
    levels.push_back({{"k", level.k},
                      {"gamma", gamma},
                      {"b", complexVectorToJson(level.set.b)},
                      {"patch", complexVectorToJson(level.set.patch)},
                      {"degree", level.set.degree}});
  }
  std::vector<std::string> generators;
  generators.reserve(wc.variety.generators.size());
  for (const RatPoly& g : wc.variety.generators) generators.push_back(toText(g));
  const json manifest = {{"format", kFormatVersion},
                         {"variables", wc.variety.ring->names()},
                         {"generators", generators},
                         {"dimension", wc.variety.d},
                         {"seed", wc.seed},
                         {"tolerance", doubleToText(wc.tolerance)},
                         {"data0", complexVectorToJson(wc.data0.entries)},
                         {"data1", complexVectorToJson(wc.data1.entries)},
                         {"levels", levels}};
  writeAtomic(fs::path(dir) / "manifest.json", manifest.dump(1));
}

WitnessCollection loadCollection(const std::string& dir) {
  const fs::path manifestPath = fs::path(dir) / "manifest.json";
  if (!fs::exists(manifestPath))
    throw IoError("no manifest found in " + dir);
  const json manifest = readJsonFile(manifestPath, "manifest");
  try {
    const int format = manifest.at("format").get<int>();
    if (format != kFormatVersion)
      throw IoError("unsupported witness collection format " +
                    std::to_string(format) + " (expected " +
                    std::to_string(kFormatVersion) + ")");

    WitnessCollection wc;
    wc.directory = dir;
    wc.seed = manifest.at("seed").get<std::uint64_t>();
    wc.tolerance = textToDouble(manifest.at("tolerance").get<std::string>());

    const auto names = manifest.at("variables").get<std::vector<std::string>>();
    const RingPtr ring = makeRationalRing(names);
    std::vector<RatPoly> generators;
    for (const auto& text :
         manifest.at("generators").get<std::vector<std::string>>())
      generators.push_back(parsePolynomial<Rat>(text, ring));
    wc.variety = makeVarietySpec<Rat>(ring, std::move(generators),
                                      manifest.at("dimension").get<std::size_t>());
    wc.data0.entries = complexVectorFromJson(manifest.at("data0"));
    wc.data1.entries = complexVectorFromJson(manifest.at("data1"));

    const VarietySpec<Cplx> Xc = complexify(wc.variety);
    for (const json& entry : manifest.at("levels")) {
      WitnessLevel level;
      level.k = entry.at("k").get<std::size_t>();
      if (level.k != wc.levels.size())
        throw IoError("manifest levels out of order in " + dir);
      for (const json& row : entry.at("gamma"))
        level.gamma.push_back(complexVectorFromJson(row));

      RemovalConfig<Cplx> cfg;
      cfg.k = level.k;
      cfg.gamma = level.gamma;
      cfg.b.assign(level.k, Cplx(0.0, 0.0));
      level.set.k = level.k;
      level.set.system =
          lagrangeSystem(Xc, level.k == 0 ? wc.data0 : wc.data1, cfg);
      level.set.patch = complexVectorFromJson(entry.at("patch"));
      level.set.b = complexVectorFromJson(entry.at("b"));
      level.set.degree = entry.at("degree").get<std::size_t>();

      const json file = readJsonFile(fs::path(dir) / witnessFileName(level.k),
                                     "witness file");
      if (file.at("format").get<int>() != kFormatVersion ||
          file.at("k").get<std::size_t>() != level.k)
        throw IoError("witness file disagrees with manifest for " +
                      witnessFileName(level.k));
      const std::size_t width = level.set.system.primalCount + 1 +
                                level.set.system.lagrangeCount;
      std::size_t counted = 0;
      for (const json& rec : file.at("points")) {
        TrackedPoint pt;
        pt.coordinates = complexVectorFromJson(rec.at("coordinates"));
        if (pt.coordinates.size() != width)
          throw IoError("witness point width mismatch in " +
                        witnessFileName(level.k));
        pt.status = pathStatusFromText(rec.at("status").get<std::string>());
        pt.condition = textToDouble(rec.at("condition").get<std::string>());
        pt.residual = textToDouble(rec.at("residual").get<std::string>());
        const bool flag = rec.at("flag").get<bool>();
        counted += flag ? 1 : 0;
        level.set.points.push_back(std::move(pt));
        level.set.flags.push_back(flag);
      }
      if (counted != level.set.degree)
        throw IoError("flag count disagrees with recorded degree in " +
                      witnessFileName(level.k));
      wc.levels.push_back(std::move(level));
    }
    if (wc.levels.size() != wc.variety.d + 2)
      throw IoError("manifest is missing removal levels in " + dir);
    return wc;
  } catch (const json::exception& e) {
    throw IoError("corrupt manifest in " + dir + ": " + e.what());
  }
}

CrossCheckReport crossCheck(const VarietySpec<Rat>& X, const std::vector<Rat>& p,
                            std::uint64_t seed, const TrackerSettings& settings) {
  CrossCheckReport report;
  report.symbolicRecord = removalMLDegrees(X, p, Engine::symbolic, seed, settings);
  report.numericRecord =
      removalMLDegrees(X, p, Engine::numeric, seed, settings);
  report.agree = report.symbolicRecord.degrees == report.numericRecord.degrees;
  report.eulerSymbolic = eulerObstruction(report.symbolicRecord);
  report.eulerNumeric = eulerObstruction(report.numericRecord);
  return report;
}

} // namespace eulerml
