#include "fcds/plan_io.hpp"

#include <fstream>
#include <set>

#include "fcds/version.hpp"

namespace fcds {

using nlohmann::json;

namespace {

void requireKeys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw PlanError(where.empty() ? key : where + "." + key, "unknown key");
  }
}

template <class T>
T getAs(const json& obj, const std::string& key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw PlanError(key, "wrong type or missing");
  }
}

template <class T>
void readInto(const json& obj, const std::string& key, T& target) {
  if (obj.contains(key)) target = getAs<T>(obj, key);
}

}  // namespace

ExperimentPlan parsePlan(const json& j) {
  if (!j.is_object()) throw PlanError("", "plan must be a JSON object");
  requireKeys(j, "", {"algorithm", "mode",  "n",       "k",       "lambda",        "c1",
                      "c2",        "c3",    "omega",   "m",       "ldpc",          "etaGrid",
                      "subsetsPerEta",      "seeds",   "seed",    "sweep",         "nGrid",
                      "kRatio",    "payloadCheck",     "dumps"});

  ExperimentPlan plan;

  const auto algorithm = getAs<std::string>(j, "algorithm");
  if (algorithm == "ltcds-oracle")
    plan.algorithm = Algorithm::LtcdsOracle;
  else if (algorithm == "ltcds-estimated")
    plan.algorithm = Algorithm::LtcdsEstimated;
  else if (algorithm == "rcds")
    plan.algorithm = Algorithm::Rcds;
  else
    throw PlanError("algorithm", "expected ltcds-oracle | ltcds-estimated | rcds");

  std::string mode = "ps-curve";
  readInto(j, "mode", mode);
  if (mode == "ps-curve")
    plan.mode = PlanMode::PsCurve;
  else if (mode == "transmission-scaling")
    plan.mode = PlanMode::TransmissionScaling;
  else
    throw PlanError("mode", "expected ps-curve | transmission-scaling");

  if (plan.mode == PlanMode::PsCurve) {
    plan.n = getAs<uint32_t>(j, "n");
    plan.k = getAs<uint32_t>(j, "k");
    if (j.contains("nGrid")) throw PlanError("nGrid", "only valid in transmission-scaling mode");
    if (j.contains("kRatio")) throw PlanError("kRatio", "only valid in transmission-scaling mode");
  } else {
    plan.nGrid = getAs<std::vector<uint32_t>>(j, "nGrid");
    readInto(j, "kRatio", plan.kRatio);
    if (j.contains("n") || j.contains("k"))
      throw PlanError("n", "transmission-scaling takes nGrid/kRatio, not n/k");
    if (j.contains("sweep")) throw PlanError("sweep", "not available in transmission-scaling mode");
    if (j.contains("etaGrid")) throw PlanError("etaGrid", "transmission-scaling does not decode");
    plan.etaGrid.clear();
  }

  readInto(j, "lambda", plan.lambda);
  readInto(j, "c1", plan.c1);
  readInto(j, "c2", plan.c2);

  if (plan.algorithm != Algorithm::Rcds) {
    for (const char* key : {"c3", "m", "ldpc"})
      if (j.contains(key)) throw PlanError(key, "only valid for the rcds algorithm");
  } else {
    readInto(j, "c3", plan.c3);
    readInto(j, "m", plan.m);
    readInto(j, "ldpc", plan.ldpcProbs);
  }

  if (j.contains("omega")) {
    const auto& om = j.at("omega");
    if (!om.is_object()) throw PlanError("omega", "must be an object");
    requireKeys(om, "omega", {"family", "c0", "delta"});
    const auto family = getAs<std::string>(om, "family");
    if (family == "ideal")
      plan.omega.family = OmegaFamily::IdealSoliton;
    else if (family == "robust")
      plan.omega.family = OmegaFamily::RobustSoliton;
    else
      throw PlanError("omega.family", "expected ideal | robust");
    if (om.contains("c0")) plan.omega.c0 = getAs<double>(om, "c0");
    if (om.contains("delta")) plan.omega.delta = getAs<double>(om, "delta");
  }

  if (plan.mode == PlanMode::PsCurve) readInto(j, "etaGrid", plan.etaGrid);
  readInto(j, "subsetsPerEta", plan.subsetsPerEta);
  readInto(j, "seeds", plan.seeds);
  readInto(j, "seed", plan.seed);
  readInto(j, "payloadCheck", plan.payloadCheck);

  if (j.contains("sweep")) {
    const auto& sw = j.at("sweep");
    if (!sw.is_object()) throw PlanError("sweep", "must be an object");
    requireKeys(sw, "sweep", {"parameter", "values"});
    SweepSpec spec;
    const auto param = getAs<std::string>(sw, "parameter");
    if (param == "c1")
      spec.param = SweepSpec::Param::C1;
    else if (param == "c2")
      spec.param = SweepSpec::Param::C2;
    else
      throw PlanError("sweep.parameter", "expected c1 | c2");
    spec.values = getAs<std::vector<double>>(sw, "values");
    plan.sweep = std::move(spec);
  }

  if (j.contains("dumps")) {
    const auto& d = j.at("dumps");
    if (!d.is_object()) throw PlanError("dumps", "must be an object");
    requireKeys(d, "dumps", {"graph", "estimates", "storage", "distribution", "trace"});
    readInto(d, "graph", plan.dumps.graph);
    readInto(d, "estimates", plan.dumps.estimates);
    readInto(d, "storage", plan.dumps.storage);
    readInto(d, "distribution", plan.dumps.distribution);
    readInto(d, "trace", plan.dumps.trace);
  }

  validatePlan(plan);
  return plan;
}

ExperimentPlan parsePlanFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw PlanError("", std::string("not valid JSON: ") + e.what());
  }
  return parsePlan(j);
}

json emitPlan(const ExperimentPlan& plan) {
  json j;
  j["algorithm"] = algorithmName(plan.algorithm);
  j["mode"] = plan.mode == PlanMode::PsCurve ? "ps-curve" : "transmission-scaling";
  if (plan.mode == PlanMode::PsCurve) {
    j["n"] = plan.n;
    j["k"] = plan.k;
    j["etaGrid"] = plan.etaGrid;
  } else {
    j["nGrid"] = plan.nGrid;
    j["kRatio"] = plan.kRatio;
  }
  j["lambda"] = plan.lambda;
  j["c1"] = plan.c1;
  j["c2"] = plan.c2;
  j["omega"] = {{"family", plan.omega.family == OmegaFamily::IdealSoliton ? "ideal" : "robust"},
                {"c0", plan.omega.c0},
                {"delta", plan.omega.delta}};
  if (plan.algorithm == Algorithm::Rcds) {
    j["c3"] = plan.c3;
    j["m"] = plan.m;
    j["ldpc"] = plan.ldpcProbs;
  }
  j["subsetsPerEta"] = plan.subsetsPerEta;
  j["seeds"] = plan.seeds;
  j["seed"] = plan.seed;
  j["payloadCheck"] = plan.payloadCheck;
  if (plan.sweep) {
    j["sweep"] = {{"parameter", plan.sweep->param == SweepSpec::Param::C1 ? "c1" : "c2"},
                  {"values", plan.sweep->values}};
  }
  j["dumps"] = {{"graph", plan.dumps.graph},
                {"estimates", plan.dumps.estimates},
                {"storage", plan.dumps.storage},
                {"distribution", plan.dumps.distribution},
                {"trace", plan.dumps.trace}};
  return j;
}

json makeManifest(const ExperimentPlan& plan) {
  json j;
  j["tool"] = "fcds";
  j["version"] = FCDS_VERSION;
  j["planFormat"] = 1;
  j["plan"] = emitPlan(plan);
  return j;
}

}  // namespace fcds
