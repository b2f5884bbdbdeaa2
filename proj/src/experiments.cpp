#include "fcds/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "fcds/decode.hpp"
#include "fcds/stats.hpp"

namespace fcds {

const char* algorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::LtcdsOracle: return "ltcds-oracle";
    case Algorithm::LtcdsEstimated: return "ltcds-estimated";
    case Algorithm::Rcds: return "rcds";
  }
  return "?";
}

void validatePlan(const ExperimentPlan& plan) {
  if (plan.mode == PlanMode::TransmissionScaling) {
    if (plan.nGrid.empty()) throw PlanError("nGrid", "transmission-scaling needs at least one n");
    for (uint32_t n : plan.nGrid)
      if (n < 2) throw PlanError("nGrid", "entries must be >= 2");
    if (!(plan.kRatio > 0.0)) throw PlanError("kRatio", "must be > 0");
    for (uint32_t n : plan.nGrid)
      if (std::llround(plan.kRatio * n) < 1)
        throw PlanError("kRatio", "k rounds to zero at n=" + std::to_string(n));
  } else {
    if (plan.n < 2) throw PlanError("n", "must be >= 2");
    if (plan.k < 1) throw PlanError("k", "must be >= 1 (no sources otherwise)");
    if (plan.k > plan.n) throw PlanError("k", "cannot exceed n");
  }
  if (!(plan.lambda > 0.0)) throw PlanError("lambda", "must be > 0");
  if (!(plan.c1 > 0.0)) throw PlanError("c1", "must be > 0");
  const bool estimated = plan.algorithm == Algorithm::LtcdsEstimated;
  if (estimated && plan.c2 < 2) throw PlanError("c2", "must be >= 2 in estimated mode");
  if (!(plan.omega.c0 > 0.0)) throw PlanError("omega", "c0 must be > 0");
  if (!(plan.omega.delta > 0.0 && plan.omega.delta < 1.0))
    throw PlanError("omega", "delta must be in (0,1)");
  if (plan.algorithm == Algorithm::Rcds) {
    if (plan.m != 0 && (plan.m < plan.k || plan.m > plan.n))
      throw PlanError("m", "need k <= m <= n");
    double sum = 0.0;
    for (double p : plan.ldpcProbs) {
      if (!(p >= 0.0)) throw PlanError("ldpc", "negative probability");
      sum += p;
    }
    if (plan.ldpcProbs.empty() || std::abs(sum - 1.0) > 1e-9)
      throw PlanError("ldpc", "probabilities must sum to 1");
    if (plan.c3 >= 0.0 && !(plan.c3 > 0.0)) throw PlanError("c3", "must be > 0");
  }
  for (double eta : plan.etaGrid) {
    if (!(eta > 0.0)) throw PlanError("etaGrid", "query ratios must be > 0");
    if (plan.mode == PlanMode::PsCurve) {
      const auto h = std::llround(eta * plan.k);
      if (h < 1) throw PlanError("etaGrid", "eta*k rounds to zero");
      if (h > plan.n)
        throw PlanError("etaGrid", "eta*k = " + std::to_string(h) + " exceeds n = " +
                                       std::to_string(plan.n));
    }
  }
  if (plan.subsetsPerEta < 1) throw PlanError("subsetsPerEta", "must be >= 1");
  if (plan.seeds < 1) throw PlanError("seeds", "must be >= 1");
  if (plan.sweep) {
    if (plan.sweep->values.empty()) throw PlanError("sweep", "no values given");
    if (plan.sweep->param == SweepSpec::Param::C2) {
      if (!estimated) throw PlanError("sweep", "a c2 sweep requires ltcds-estimated");
      for (double v : plan.sweep->values)
        if (v < 2.0 || v != std::floor(v)) throw PlanError("sweep", "c2 values must be integers >= 2");
    } else {
      for (double v : plan.sweep->values)
        if (!(v > 0.0)) throw PlanError("sweep", "c1 values must be > 0");
    }
  }
}

namespace {

template <class F>
void parallelFor(size_t count, unsigned parallelism, F&& fn) {
  if (parallelism <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  const unsigned workers = std::min<size_t>(parallelism, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<uint32_t> pickDistinctNodes(uint32_t n, uint32_t count, Rng& rng,
                                        std::vector<uint32_t>& scratch) {
  if (scratch.size() != n) {
    scratch.resize(n);
    for (uint32_t i = 0; i < n; ++i) scratch[i] = i;
  }
  for (uint32_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<uint32_t>(rng.nextBelow(n - i));
    std::swap(scratch[i], scratch[j]);
  }
  std::vector<uint32_t> out(scratch.begin(), scratch.begin() + count);
  std::sort(out.begin(), out.end());
  return out;
}

LtcdsConfig innerLtcdsConfig(const ExperimentPlan& plan) {
  LtcdsConfig cfg;
  cfg.c1 = plan.c1;
  cfg.c2 = plan.c2;
  cfg.omega = plan.omega;
  cfg.payloadMode = plan.payloadCheck;
  return cfg;
}

}  // namespace

TrialOutput runTrial(const ExperimentPlan& plan, uint32_t trialIndex, TrialArtifacts* artifacts,
                     TraceFn trace) {
  const uint64_t tseed = deriveSeed(plan.seed, SeedTag::Trial, trialIndex + 1);
  const Network net = generateNetwork(plan.n, plan.lambda, deriveSeed(tseed, SeedTag::Graph));

  Rng sourceRng(deriveSeed(tseed, SeedTag::Sources));
  std::vector<uint32_t> scratch;
  const std::vector<uint32_t> sources = pickDistinctNodes(net.n, plan.k, sourceRng, scratch);

  TrialOutput out;
  std::vector<std::vector<uint32_t>> storedSets(net.n);
  std::vector<uint32_t> storedDegrees(net.n, 0);
  PrecodeMap precodeMap;

  auto takeLtcdsStorage = [&](const LtcdsResult& res) {
    out.transmissions = res.clock.totalTransmissions;
    out.maxQueueLen = static_cast<uint32_t>(res.maxQueueLen);
    out.forcedInference = res.forcedInferenceCount;
    out.storageSizes.resize(net.n);
    for (uint32_t u = 0; u < net.n; ++u) {
      const auto& st = res.nodes[u].storage;
      storedSets[u].assign(st.accepted.begin(), st.accepted.end());
      std::sort(storedSets[u].begin(), storedSets[u].end());
      storedDegrees[u] = st.codeDegree;
      out.storageSizes[u] = static_cast<uint32_t>(storedSets[u].size());
    }
  };

  switch (plan.algorithm) {
    case Algorithm::LtcdsOracle: {
      LtcdsConfig cfg = innerLtcdsConfig(plan);
      cfg.knownGlobals = {plan.n, plan.k};
      takeLtcdsStorage(runLtcds(net, sources, cfg, tseed, trace));
      break;
    }
    case Algorithm::LtcdsEstimated: {
      const LtcdsConfig cfg = innerLtcdsConfig(plan);
      const LtcdsResult res = runLtcds(net, sources, cfg, tseed, trace);
      takeLtcdsStorage(res);
      out.estimates.reserve(net.n);
      for (uint32_t u = 0; u < net.n; ++u)
        out.estimates.push_back(
            {u, res.nodes[u].nHat, res.nodes[u].kHat, res.nodes[u].kSeen});
      break;
    }
    case Algorithm::Rcds: {
      RcdsConfig cfg;
      cfg.precode.m = plan.m;
      cfg.precode.c3 = plan.effectiveC3();
      cfg.precode.copies.values.clear();
      cfg.precode.copies.probs.clear();
      for (size_t i = 0; i < plan.ldpcProbs.size(); ++i) {
        cfg.precode.copies.values.push_back(static_cast<uint32_t>(i + 1));
        cfg.precode.copies.probs.push_back(plan.ldpcProbs[i]);
      }
      cfg.inner = innerLtcdsConfig(plan);
      const RcdsResult res = runRcds(net, sources, cfg, tseed);
      takeLtcdsStorage(res.inner);
      out.transmissions += res.precode.clock.totalTransmissions;
      precodeMap = res.map;
      if (artifacts)
        for (const auto& o : res.precode.outputs) artifacts->precodeMap.emplace_back(o.node, o.yIds);
      break;
    }
  }

  out.successPerEta.assign(plan.etaGrid.size(), 0);
  std::vector<uint32_t> queryScratch;
  std::vector<std::vector<uint32_t>> query;
  for (size_t ei = 0; ei < plan.etaGrid.size(); ++ei) {
    const auto h = static_cast<uint32_t>(std::llround(plan.etaGrid[ei] * plan.k));
    Rng queryRng(deriveSeed(tseed, SeedTag::Query, ei + 1));
    for (uint32_t s = 0; s < plan.subsetsPerEta; ++s) {
      const auto picked = pickDistinctNodes(net.n, h, queryRng, queryScratch);
      query.clear();
      for (uint32_t u : picked) query.push_back(storedSets[u]);
      const bool ok = plan.algorithm == Algorithm::Rcds
                          ? peelTwoStage(query, precodeMap, plan.k,
                                         static_cast<uint32_t>(precodeMap.size()))
                                .success
                          : peel(query, plan.k).success;
      if (ok) ++out.successPerEta[ei];
    }
  }

  if (artifacts) {
    artifacts->net = net;
    artifacts->storage.reserve(net.n);
    for (uint32_t u = 0; u < net.n; ++u)
      artifacts->storage.push_back({u, storedDegrees[u], storedSets[u]});
  }
  return out;
}

std::vector<TrialOutput> runTrials(const ExperimentPlan& plan, unsigned parallelism) {
  std::vector<TrialOutput> outs(plan.seeds);
  parallelFor(plan.seeds, parallelism,
              [&](size_t i) { outs[i] = runTrial(plan, static_cast<uint32_t>(i)); });
  return outs;
}

std::vector<ResultRow> runPlan(const ExperimentPlan& plan, unsigned parallelism) {
  validatePlan(plan);
  const auto trials = runTrials(plan, parallelism);

  std::vector<ResultRow> rows;
  rows.reserve(plan.etaGrid.size());
  double meanTx = 0.0;
  uint32_t maxQueue = 0;
  for (const auto& t : trials) {
    meanTx += static_cast<double>(t.transmissions);
    maxQueue = std::max(maxQueue, t.maxQueueLen);
  }
  meanTx /= static_cast<double>(trials.size());

  for (size_t ei = 0; ei < plan.etaGrid.size(); ++ei) {
    uint64_t succ = 0;
    for (const auto& t : trials) succ += t.successPerEta[ei];
    const auto total = static_cast<uint64_t>(plan.subsetsPerEta) * plan.seeds;
    ResultRow row;
    row.algorithm = algorithmName(plan.algorithm);
    row.n = plan.n;
    row.k = plan.k;
    row.c1 = plan.c1;
    row.c2 = plan.c2;
    row.eta = plan.etaGrid[ei];
    row.ps = static_cast<double>(succ) / static_cast<double>(total);
    row.stderrPs = binomialStderr(row.ps, total);
    row.meanTransmissions = meanTx;
    row.maxQueueLen = maxQueue;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> sweepC1(const ExperimentPlan& base, const std::vector<double>& values,
                               unsigned parallelism) {
  std::vector<ResultRow> rows;
  for (double v : values) {
    ExperimentPlan plan = base;
    plan.c1 = v;
    plan.sweep.reset();
    auto sub = runPlan(plan, parallelism);
    rows.insert(rows.end(), sub.begin(), sub.end());
  }
  return rows;
}

std::vector<ResultRow> sweepC2(const ExperimentPlan& base, const std::vector<uint32_t>& values,
                               unsigned parallelism) {
  std::vector<ResultRow> rows;
  for (uint32_t v : values) {
    ExperimentPlan plan = base;
    plan.c2 = v;
    plan.sweep.reset();
    auto sub = runPlan(plan, parallelism);
    rows.insert(rows.end(), sub.begin(), sub.end());
  }
  return rows;
}

std::vector<ScalingRow> transmissionScaling(const ExperimentPlan& base,
                                            const std::vector<uint32_t>& nGrid, double kRatio,
                                            unsigned parallelism) {
  std::vector<ScalingRow> rows;
  for (uint32_t n : nGrid) {
    ExperimentPlan plan = base;
    plan.mode = PlanMode::PsCurve;
    plan.n = n;
    const auto k = std::llround(kRatio * n);
    if (k < 1) throw PlanError("kRatio", "k rounds to zero at n=" + std::to_string(n));
    plan.k = static_cast<uint32_t>(k);
    plan.etaGrid.clear();  // transmissions only, no decoding
    plan.sweep.reset();
    validatePlan(plan);
    const auto trials = runTrials(plan, parallelism);
    double meanTx = 0.0;
    for (const auto& t : trials) meanTx += static_cast<double>(t.transmissions);
    meanTx /= static_cast<double>(trials.size());
    const double denom =
        static_cast<double>(plan.k) * static_cast<double>(n) * std::log(static_cast<double>(n));
    rows.push_back({n, plan.k, meanTx, meanTx / denom});
  }
  return rows;
}

InferenceRunStats runEstimateHist(const ExperimentPlan& plan, unsigned parallelism) {
  std::vector<InferenceRunStats> perTrial(plan.seeds);
  parallelFor(plan.seeds, parallelism, [&](size_t i) {
    const uint64_t tseed = deriveSeed(plan.seed, SeedTag::Trial, static_cast<uint64_t>(i) + 1);
    const Network net = generateNetwork(plan.n, plan.lambda, deriveSeed(tseed, SeedTag::Graph));
    Rng sourceRng(deriveSeed(tseed, SeedTag::Sources));
    std::vector<uint32_t> scratch;
    const auto sources = pickDistinctNodes(net.n, plan.k, sourceRng, scratch);

    WalkEngine engine(net, tseed);
    std::vector<InferenceState> inference(net.n, InferenceState(plan.c2));
    uint32_t doneCount = 0;
    auto arrival = [&](uint32_t u, const Packet& pkt) -> bool {
      if (!inference[u].done()) {
        inference[u].recordVisit(pkt.sourceId, engine.clock().round);
        if (inference[u].done()) ++doneCount;
      }
      return true;  // inference-only: nothing ever retires
    };
    for (uint32_t s : sources) engine.inject(s, Packet{s, 0, 0}, arrival);

    const uint64_t limit = 100ull * plan.c2 * plan.n + 10000;
    while (doneCount < net.n && engine.clock().round < limit) engine.stepRound(arrival);

    auto& stats = perTrial[i];
    stats.rows.reserve(net.n);
    for (uint32_t u = 0; u < net.n; ++u) {
      auto& inf = inference[u];
      if (!inf.done()) {
        inf.forceFinalize();
        ++stats.forced;
      }
      stats.rows.push_back({u, inf.nHat(), inf.kHat(), inf.kSeen()});
    }
  });

  InferenceRunStats pooled;
  for (const auto& t : perTrial) {
    pooled.rows.insert(pooled.rows.end(), t.rows.begin(), t.rows.end());
    pooled.forced += t.forced;
  }
  return pooled;
}

void writeResultsCsv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << "algorithm,n,k,c1,c2,eta,ps,stderr,meanTransmissions,maxQueueLen\n";
  for (const auto& r : rows) {
    os << r.algorithm << ',' << r.n << ',' << r.k << ',' << formatDouble(r.c1) << ',' << r.c2
       << ',' << formatDouble(r.eta) << ',' << formatDouble(r.ps) << ','
       << formatDouble(r.stderrPs) << ',' << formatDouble(r.meanTransmissions) << ','
       << r.maxQueueLen << '\n';
  }
}

void writeScalingCsv(const std::vector<ScalingRow>& rows, std::ostream& os) {
  os << "n,k,meanTransmissions,normalized\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.k << ',' << formatDouble(r.meanTransmissions) << ','
       << formatDouble(r.normalized) << '\n';
}

}  // namespace fcds
