// Command-line front end for the removal ML degree / Euler obstruction
// library. Subcommands:
//   solve            end-to-end removal degrees + Euler obstruction
//   witness compute  solve all levels at generic parameters, save to a directory
//   witness reuse    load a saved collection and track it to the problem point
//   reclassify       re-count stored or tracked endpoints under a new tolerance
//   euler            alternating sum of an explicit degree list
//
// Problem files are JSON; see --help for the schema. Exit codes: 0 on a
// complete result, 1 on parse/validation/i/o errors, 2 on engine failures.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eulerml/errors.hpp"
#include "eulerml/obstruction.hpp"
#include "eulerml/parser.hpp"
#include "eulerml/ring.hpp"
#include "eulerml/systems.hpp"
#include "eulerml/tracker.hpp"

using nlohmann::json;
using namespace eulerml;

namespace {

// Fixed default seed so runs are reproducible without flags.
constexpr std::uint64_t kDefaultSeed = 20260819;

constexpr const char* kDescription =
    "Removal maximum-likelihood degrees and the local Euler obstruction.\n"
    "\n"
    "Computes the ML degrees r_0..r_{d+1} of an affine variety sliced by\n"
    "generic hyperplanes through a chosen point, and their alternating sum,\n"
    "the local Euler obstruction at that point. The variety is assumed\n"
    "irreducible with the given generators; the numeric engine additionally\n"
    "needs a complete intersection (codimension = generator count) and all\n"
    "point coordinates nonzero.\n"
    "\n"
    "Problem files are JSON:\n"
    "  {\n"
    "    \"variables\":  [\"x1\", \"x2\", ...],\n"
    "    \"generators\": [\"x1^2 - x2*x3 + 1\", ...],\n"
    "    \"point\":      [\"3\", \"1/2\", \"0.25\", ...],\n"
    "    \"dimension\":  2,            // optional; computed exactly if absent\n"
    "    \"engine\":     \"symbolic\",   // symbolic | numeric | both\n"
    "    \"seed\":       20260819,     // optional\n"
    "    \"tolerance\":  1e-6,         // optional; coordinate classification\n"
    "    \"witness_dir\": \"path\"       // optional; used by witness/reclassify\n"
    "  }\n"
    "Point coordinates may be integers, rationals (\"2/3\"), or decimals.\n"
    "JSON output produced with --json is itself a valid problem file.\n"
    "\n"
    "EULERML_THREADS caps the path-tracking worker threads (default: the\n"
    "hardware concurrency).";

// ---------------------------------------------------------------------------
// Problem files

struct Problem {
  std::vector<std::string> variables;
  std::vector<std::string> generators;
  std::vector<Rat> point;              // may be empty (witness compute)
  std::vector<std::string> pointText;  // literals as given, for echoing
  std::optional<std::size_t> dimension;
  std::string engine = "symbolic";
  std::uint64_t seed = kDefaultSeed;
  double tolerance = 1e-6;
  std::string witnessDir;
};

Rat coordinateFromJson(const json& j) {
  if (j.is_string()) return ratFromText(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_float()) return ratFromText(j.dump());
  throw ValueError("point coordinates must be numbers or literal strings");
}

std::string coordinateText(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

Problem problemFromJson(const json& doc) {
  if (!doc.is_object()) throw ValueError("problem file must be a JSON object");
  Problem pr;
  for (const auto& v : doc.at("variables"))
    pr.variables.push_back(v.get<std::string>());
  for (const auto& g : doc.at("generators"))
    pr.generators.push_back(g.get<std::string>());
  if (doc.contains("point")) {
    for (const auto& c : doc.at("point")) {
      pr.point.push_back(coordinateFromJson(c));
      pr.pointText.push_back(coordinateText(c));
    }
  }
  if (doc.contains("dimension"))
    pr.dimension = doc.at("dimension").get<std::size_t>();
  if (doc.contains("engine")) pr.engine = doc.at("engine").get<std::string>();
  if (doc.contains("seed")) pr.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("tolerance")) pr.tolerance = doc.at("tolerance").get<double>();
  if (doc.contains("witness_dir"))
    pr.witnessDir = doc.at("witness_dir").get<std::string>();
  return pr;
}

Problem loadProblem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValueError("malformed problem file " + path + ": " + e.what());
  }
  try {
    return problemFromJson(doc);
  } catch (const json::exception& e) {
    throw ValueError("invalid problem file " + path + ": " + e.what());
  }
}

// Flag values shared by the subcommands; empty/unset means "use the file's".
struct Overrides {
  std::string engine;
  std::string point;
  std::string dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool jsonOut = false;
};

void addCommonFlags(CLI::App* cmd, Overrides& o, bool withEngine = true) {
  if (withEngine)
    cmd->add_option("--engine", o.engine, "Engine: symbolic | numeric | both")
        ->check(CLI::IsMember({"symbolic", "numeric", "both"}));
  cmd->add_option("--point", o.point,
                  "Target point, comma-separated literals (e.g. 3,1/2,0.25)");
  cmd->add_option("--seed", o.seed, "Random seed (fixed default: 20260819)");
  cmd->add_option("--tol", o.tol, "Coordinate classification tolerance");
  cmd->add_option("--dir", o.dir, "Witness collection directory");
  cmd->add_flag("--json", o.jsonOut, "Machine-readable output (round-trips as input)");
}

void applyOverrides(Problem& pr, const Overrides& o) {
  if (!o.engine.empty()) pr.engine = o.engine;
  if (o.seed) pr.seed = *o.seed;
  if (o.tol) pr.tolerance = *o.tol;
  if (!o.dir.empty()) pr.witnessDir = o.dir;
  if (!o.point.empty()) {
    pr.point.clear();
    pr.pointText.clear();
    std::stringstream ss(o.point);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      pr.point.push_back(ratFromText(tok));
      pr.pointText.push_back(tok);
    }
  }
}

// ---------------------------------------------------------------------------
// Problem -> library objects

VarietySpec<Rat> buildVariety(const Problem& pr) {
  if (pr.variables.empty()) throw ValueError("problem needs at least one variable");
  if (pr.generators.empty()) throw ValueError("problem needs at least one generator");
  RingPtr ring = makeRationalRing(pr.variables);
  std::vector<RatPoly> gens;
  gens.reserve(pr.generators.size());
  for (const std::string& text : pr.generators)
    gens.push_back(parsePolynomial<Rat>(text, ring));
  if (pr.dimension) return makeVarietySpec<Rat>(ring, std::move(gens), *pr.dimension);
  return makeVarietySpecExact(ring, std::move(gens));
}

TrackerSettings buildSettings(const Problem& pr) {
  TrackerSettings s = collectionSettings();
  s.classifyTol = pr.tolerance;
  return s;
}

void requirePoint(const Problem& pr) {
  if (pr.point.empty())
    throw ValueError("this command needs a point (problem file or --point)");
}

void requireDir(const Problem& pr) {
  if (pr.witnessDir.empty())
    throw ValueError("this command needs a collection directory "
                     "(witness_dir or --dir)");
}

// ---------------------------------------------------------------------------
// Output

json problemToJson(const Problem& pr, const VarietySpec<Rat>& X) {
  json doc;
  doc["variables"] = pr.variables;
  doc["generators"] = pr.generators;
  if (!pr.pointText.empty()) doc["point"] = pr.pointText;
  doc["dimension"] = X.d;
  doc["engine"] = pr.engine;
  doc["seed"] = pr.seed;
  doc["tolerance"] = pr.tolerance;
  if (!pr.witnessDir.empty()) doc["witness_dir"] = pr.witnessDir;
  return doc;
}

std::vector<long> degreeList(const RemovalRecord& rec) {
  std::vector<long> out;
  for (const auto& [k, r] : rec.degrees) out.push_back(r); // map is ordered by k
  return out;
}

std::string joinDegrees(const std::vector<long>& degrees) {
  std::string out;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(degrees[i]);
  }
  return out;
}

void printRecordTable(const RemovalRecord& rec) {
  std::printf("engine: %s\n", toText(rec.engine));
  std::printf("level  removal ML degree\n");
  for (const auto& [k, r] : rec.degrees) std::printf("%-6zu %ld\n", k, r);
  std::printf("Euler obstruction: %ld\n", eulerObstruction(rec));
}

json recordToJson(const RemovalRecord& rec) {
  return json{{"degrees", degreeList(rec)}, {"euler", eulerObstruction(rec)}};
}

void emit(const json& doc) { std::printf("%s\n", doc.dump(2).c_str()); }

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the process exit code.

int runSolve(const Problem& pr, bool jsonOut) {
  requirePoint(pr);
  const VarietySpec<Rat> X = buildVariety(pr);
  const TrackerSettings settings = buildSettings(pr);

  if (pr.engine == "both") {
    const CrossCheckReport report = crossCheck(X, pr.point, pr.seed, settings);
    if (jsonOut) {
      json doc = problemToJson(pr, X);
      doc["results"] = {{"symbolic", recordToJson(report.symbolicRecord)},
                        {"numeric", recordToJson(report.numericRecord)},
                        {"agree", report.agree}};
      emit(doc);
    } else {
      printRecordTable(report.symbolicRecord);
      printRecordTable(report.numericRecord);
      std::printf("engines agree: %s\n", report.agree ? "yes" : "NO");
    }
    return report.symbolicRecord.complete() && report.numericRecord.complete() ? 0 : 2;
  }

  const Engine engine = engineFromText(pr.engine);
  const RemovalRecord rec = removalMLDegrees(X, pr.point, engine, pr.seed, settings);
  if (jsonOut) {
    json doc = problemToJson(pr, X);
    doc["results"] = recordToJson(rec);
    emit(doc);
  } else {
    printRecordTable(rec);
  }
  return rec.complete() ? 0 : 2;
}

int runWitnessCompute(const Problem& pr, bool jsonOut) {
  requireDir(pr);
  const VarietySpec<Rat> X = buildVariety(pr);
  const WitnessCollection wc = buildCollection(X, pr.seed, buildSettings(pr));
  saveCollection(wc, pr.witnessDir);

  std::vector<long> degrees;
  for (const WitnessLevel& level : wc.levels)
    degrees.push_back(static_cast<long>(level.set.degree));
  if (jsonOut) {
    json doc = problemToJson(pr, X);
    doc["witness_dir"] = pr.witnessDir;
    doc["results"] = {{"generic_degrees", degrees}};
    emit(doc);
  } else {
    std::printf("generic removal ML degrees: %s\n", joinDegrees(degrees).c_str());
    std::printf("collection saved to: %s\n", pr.witnessDir.c_str());
  }
  return 0;
}

int runWitnessReuse(const Problem& pr, bool jsonOut) {
  requirePoint(pr);
  requireDir(pr);
  const WitnessCollection wc = loadCollection(pr.witnessDir);
  const RemovalRecord rec = removalMLDegrees(wc, pr.point, buildSettings(pr));
  if (jsonOut) {
    json doc = problemToJson(pr, wc.variety);
    doc["results"] = recordToJson(rec);
    emit(doc);
  } else {
    printRecordTable(rec);
  }
  return rec.complete() ? 0 : 2;
}

// Re-counts endpoints at a caller-chosen tolerance: the stored generic sets
// when given a bare directory, or the sets tracked to the problem point when
// given a problem file with one. Only converged endpoints with every
// coordinate at least the tolerance in magnitude are counted; an absurdly
// tight tolerance therefore also counts endpoints that truncated toward the
// coordinate hyperplanes, overstating the degrees.
int runReclassify(const std::string& target, const Overrides& o, double tol) {
  Problem pr;
  std::vector<WitnessSet> sets;
  if (std::filesystem::is_directory(target)) {
    pr.witnessDir = target;
    applyOverrides(pr, o);
    const WitnessCollection wc = loadCollection(pr.witnessDir);
    if (pr.point.empty()) {
      for (const WitnessLevel& level : wc.levels) sets.push_back(level.set);
    } else {
      sets = trackCollection(wc, pr.point, collectionSettings());
    }
  } else {
    pr = loadProblem(target);
    applyOverrides(pr, o);
    requirePoint(pr);
    requireDir(pr);
    const WitnessCollection wc = loadCollection(pr.witnessDir);
    sets = trackCollection(wc, pr.point, collectionSettings());
  }

  std::vector<long> degrees;
  for (const WitnessSet& set : sets)
    degrees.push_back(static_cast<long>(reclassify(set, tol).degree));
  if (o.jsonOut) {
    json doc = {{"tolerance", tol},
                {"witness_dir", pr.witnessDir},
                {"results", {{"degrees", degrees}}}};
    if (!pr.pointText.empty()) doc["point"] = pr.pointText;
    emit(doc);
  } else {
    std::printf("removal ML degrees at tolerance %g: %s\n", tol,
                joinDegrees(degrees).c_str());
  }
  return 0;
}

int runEuler(const std::vector<long>& degrees, bool jsonOut) {
  if (degrees.size() < 2)
    throw ValueError("need at least two degrees (levels 0..d+1)");
  long sum = 0;
  bool odd = false;
  for (const long r : degrees) {
    if (r < 0) throw ValueError("removal degrees are nonnegative");
    sum += odd ? -r : r;
    odd = !odd;
  }
  const std::size_t d = degrees.size() - 2;
  const long euler = (d % 2 == 0) ? sum : -sum;
  if (jsonOut)
    emit(json{{"degrees", degrees}, {"results", {{"euler", euler}}}});
  else
    std::printf("Euler obstruction: %ld\n", euler);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{kDescription, "eulerml"};
  app.require_subcommand(1);

  Overrides o;
  std::string problemPath;
  std::string reclassifyTarget;
  double reclassifyTol = 1e-6;
  std::vector<long> eulerDegrees;

  CLI::App* solve = app.add_subcommand(
      "solve", "Removal ML degrees and Euler obstruction at a point");
  solve->add_option("problem", problemPath, "Problem file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  addCommonFlags(solve, o);

  CLI::App* witness = app.add_subcommand(
      "witness", "Witness-collection management (compute / reuse)");
  witness->require_subcommand(1);
  CLI::App* wCompute = witness->add_subcommand(
      "compute", "Solve all levels at generic parameters and save them");
  wCompute->add_option("problem", problemPath, "Problem file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  addCommonFlags(wCompute, o, /*withEngine=*/false);
  CLI::App* wReuse = witness->add_subcommand(
      "reuse", "Load a saved collection and track it to the problem point");
  wReuse->add_option("problem", problemPath, "Problem file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  addCommonFlags(wReuse, o, /*withEngine=*/false);

  CLI::App* recl = app.add_subcommand(
      "reclassify", "Re-count stored endpoints under a different tolerance");
  recl->add_option("target", reclassifyTarget,
                   "Problem file (tracks to its point) or collection directory")
      ->required();
  recl->add_option("--tol", reclassifyTol, "Classification tolerance")->required();
  recl->add_option("--point", o.point, "Target point, comma-separated literals");
  recl->add_option("--dir", o.dir, "Witness collection directory");
  recl->add_flag("--json", o.jsonOut, "Machine-readable output");

  CLI::App* euler = app.add_subcommand(
      "euler", "Alternating sum of an explicit removal-degree list");
  euler->add_option("--degrees", eulerDegrees, "Degrees r_0,...,r_{d+1}")
      ->required()
      ->delimiter(',');
  euler->add_flag("--json", o.jsonOut, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*solve) {
      Problem pr = loadProblem(problemPath);
      applyOverrides(pr, o);
      return runSolve(pr, o.jsonOut);
    }
    if (*wCompute || *wReuse) {
      Problem pr = loadProblem(problemPath);
      applyOverrides(pr, o);
      return *wCompute ? runWitnessCompute(pr, o.jsonOut) : runWitnessReuse(pr, o.jsonOut);
    }
    if (*recl) return runReclassify(reclassifyTarget, o, reclassifyTol);
    if (*euler) return runEuler(eulerDegrees, o.jsonOut);
  } catch (const EngineError& e) {
    std::fprintf(stderr, "engine error: %s\n", e.what());
    return 2;
  } catch (const ResourceLimitError& e) {
    std::fprintf(stderr, "engine error: %s\n", e.what());
    return 2;
  } catch (const NotZeroDimensionalError& e) {
    std::fprintf(stderr, "engine error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
