// Acceptance suite: one line per criterion, exit code = number of failures.
// Each criterion pins its thresholds in code; runs are deterministic.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

#include "decode_oracles.hpp"
#include "fcds/decode.hpp"
#include "fcds/experiments.hpp"
#include "fcds/graph.hpp"
#include "fcds/ltcds.hpp"
#include "fcds/soliton.hpp"
#include "fcds/stats.hpp"
#include "fcds/walk.hpp"

using namespace fcds;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

unsigned par() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

ExperimentPlan oraclePlan(uint32_t n, uint32_t k) {
  ExperimentPlan plan;
  plan.algorithm = Algorithm::LtcdsOracle;
  plan.n = n;
  plan.k = k;
  plan.lambda = 40.0 / 9.0;
  plan.c1 = 3.0;
  plan.etaGrid = {1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.7, 2.0, 2.5};
  plan.subsetsPerEta = 200;
  plan.seeds = 10;
  plan.seed = 0xA11CE;
  return plan;
}

double psAt(const std::vector<ResultRow>& rows, double eta) {
  for (const auto& r : rows)
    if (std::abs(r.eta - eta) < 1e-12) return r.ps;
  std::fprintf(stderr, "missing eta %.3f\n", eta);
  std::abort();
}

// ---- criteria 1-2: plateau and threshold of the oracle Ps curve ----

void criteria12() {
  std::map<uint32_t, std::vector<ResultRow>> rowsByN;
  for (uint32_t n : {200u, 500u}) {
    const auto plan = oraclePlan(n, n / 10);
    rowsByN[n] = runPlan(plan, par());
  }

  bool plateau = true;
  std::string detail1;
  for (auto& [n, rows] : rowsByN) {
    const double ps = psAt(rows, 2.5);
    plateau = plateau && ps >= 0.95;
    detail1 += fmt("n=%u: Ps(2.5)=%.4f ", n, ps);
  }
  report(1, plateau, "Ps plateau >= 0.95 at eta 2.5", detail1 + "[threshold 0.95]");

  bool threshold = true;
  std::string detail2;
  for (auto& [n, rows] : rowsByN) {
    const double psLow = psAt(rows, 1.0);
    double crossing = -1.0;
    for (const auto& r : rows)
      if (r.ps > 0.5) {
        crossing = r.eta;
        break;
      }
    threshold = threshold && psLow <= 0.05 && crossing >= 1.05 && crossing <= 1.5;
    detail2 += fmt("n=%u: Ps(1.0)=%.4f cross=%.2f ", n, psLow, crossing);
  }
  report(2, threshold, "decoding takes hold between 1.05k and 1.5k queried nodes",
         detail2 + "[Ps(1.0)<=0.05, crossing in [1.05,1.5]]");
}

// ---- criteria 3-4: empty-storage bracket and the thinned-degree law ----

void criteria34() {
  ExperimentPlan plan = oraclePlan(1000, 100);
  plan.omega.family = OmegaFamily::RobustSoliton;
  plan.etaGrid.clear();  // storage statistics only
  plan.seeds = 20;
  const auto trials = runTrials(plan, par());

  std::vector<uint64_t> counts(101, 0);
  uint64_t total = 0, empty = 0;
  for (const auto& t : trials)
    for (uint32_t size : t.storageSizes) {
      ++counts[size];
      ++total;
      if (size == 0) ++empty;
    }

  const double frac = double(empty) / double(total);
  const double lo = 1.0 / (2.0 * std::exp(2.0)) - 0.03;
  const double hi = std::exp(-2.0) + 0.15;
  report(3, frac > lo && frac < hi, "empty-storage fraction sits in the analytic bracket",
         fmt("fraction=%.4f bracket=(%.4f, %.4f), n=1000 k=100 robust soliton", frac, lo, hi));

  const auto dist = robustSoliton(100, plan.omega.c0, plan.omega.delta);
  const auto thinned = thinnedDistribution(dist, 100);
  const auto gof = chiSquareGof(counts, thinned);
  const double crit = chiSquareCritical(gof.dof, 0.01);

  double meanStored = 0.0;
  for (uint32_t i = 0; i <= 100; ++i) meanStored += double(i) * double(counts[i]);
  meanStored /= double(total);
  const double expectedMean = dist.meanDegree();
  const double meanErr = std::abs(meanStored - expectedMean) / expectedMean;

  report(4, gof.statistic < crit && meanErr < 0.05,
         "stored degrees follow the thinned distribution",
         fmt("chi2=%.1f < %.1f (dof %d), mean=%.3f vs %.3f (err %.2f%% < 5%%)", gof.statistic,
             crit, gof.dof, meanStored, expectedMean, meanErr * 100));
}

// ---- criterion 5: estimator quality ----

void criterion5() {
  ExperimentPlan plan;
  plan.algorithm = Algorithm::LtcdsEstimated;
  plan.n = 200;
  plan.k = 20;
  plan.c2 = 50;
  plan.seeds = 5;
  plan.seed = 0xE577;
  plan.etaGrid.clear();
  const auto stats = runEstimateHist(plan, par());

  std::map<uint32_t, uint32_t> hist;
  std::vector<double> kHats, nHats;
  for (const auto& row : stats.rows) {
    ++hist[row.kHat];
    kHats.push_back(double(row.kHat));
    nHats.push_back(row.nHat);
  }
  uint32_t mode = 0, best = 0;
  for (const auto& [v, c] : hist)
    if (c > best) {
      best = c;
      mode = v;
    }
  const double meanK = mean(kHats);
  const double cvK = coefficientOfVariation(kHats);
  const double cvN = coefficientOfVariation(nHats);
  const bool pass = mode == 20 && std::abs(meanK - 20.0) <= 4.0 && cvK < cvN;
  report(5, pass, "kHat concentrates on the true k and beats nHat",
         fmt("mode=%u (want 20), mean=%.2f (want 20 +- 4), cv(k)=%.3f < cv(n)=%.3f", mode, meanK,
             cvK, cvN));
}

// ---- criterion 6: estimated-vs-oracle gap ----

void criterion6() {
  // The estimation figures need a dissemination budget that outlives the
  // inference phase at every node (cap >> C2 * inter-visit); c1 = 40 gives
  // that margin at n = 1000 with C2 = 50.
  ExperimentPlan base;
  base.n = 1000;
  base.k = 100;
  base.c1 = 40.0;
  base.c2 = 50;
  base.etaGrid = {2.0};
  base.subsetsPerEta = 200;
  base.seeds = 8;
  base.seed = 0xF15;

  ExperimentPlan oracle = base;
  oracle.algorithm = Algorithm::LtcdsOracle;
  ExperimentPlan estimated = base;
  estimated.algorithm = Algorithm::LtcdsEstimated;

  const double psO = runPlan(oracle, par())[0].ps;
  const double psE = runPlan(estimated, par())[0].ps;
  const double gap = std::abs(psE - psO);
  report(6, gap <= 0.05, "estimated globals cost at most 0.05 of Ps at eta 2",
         fmt("oracle=%.4f estimated=%.4f |gap|=%.4f <= 0.05 (n=1000 k=100 c2=50)", psO, psE, gap));
}

// ---- criterion 7: c1 and c2 sweeps ----

void criterion7() {
  ExperimentPlan c1Base;
  c1Base.algorithm = Algorithm::LtcdsOracle;
  c1Base.n = 500;
  c1Base.k = 50;
  c1Base.etaGrid = {2.0};
  c1Base.subsetsPerEta = 200;
  c1Base.seeds = 10;
  c1Base.seed = 0xC1;
  const auto c1Rows = sweepC1(c1Base, {1.0, 3.0, 5.0}, par());
  const double ps1 = c1Rows[0].ps, ps3 = c1Rows[1].ps, ps5 = c1Rows[2].ps;
  const bool c1Pass = std::abs(ps3 - ps5) <= 0.05 && (ps3 - ps1) > 0.1;

  ExperimentPlan c2Base;
  c2Base.algorithm = Algorithm::LtcdsEstimated;
  c2Base.n = 100;
  c2Base.k = 10;
  c2Base.c1 = 50.0;  // budget high enough that both c2 values finish inference
  c2Base.etaGrid = {2.0};
  c2Base.subsetsPerEta = 200;
  c2Base.seeds = 10;
  c2Base.seed = 0xC2;
  const auto c2Rows = sweepC2(c2Base, {30, 50}, par());
  const double ps30 = c2Rows[0].ps, ps50 = c2Rows[1].ps;
  const bool c2Pass = std::abs(ps30 - ps50) <= 0.05;

  report(7, c1Pass && c2Pass, "Ps plateaus beyond c1=3 and c2=30",
         fmt("c1: Ps(1)=%.3f Ps(3)=%.3f Ps(5)=%.3f; c2: Ps(30)=%.3f Ps(50)=%.3f", ps1, ps3, ps5,
             ps30, ps50));
}

// ---- criterion 8: transmission scaling ----

void criterion8() {
  ExperimentPlan base;
  base.algorithm = Algorithm::LtcdsOracle;
  base.seeds = 10;
  base.seed = 0x5CA1E;
  base.n = 100;  // placeholder; the grid overrides it
  base.k = 10;
  base.etaGrid.clear();
  const auto rows = transmissionScaling(base, {100, 200, 400}, 0.1, par());
  double lo = 1e300, hi = 0.0;
  std::string detail;
  for (const auto& r : rows) {
    lo = std::min(lo, r.normalized);
    hi = std::max(hi, r.normalized);
    detail += fmt("n=%u: %.3f ", r.n, r.normalized);
  }
  report(8, hi / lo < 2.0, "transmissions per k n ln n stay in a factor-2 band",
         detail + fmt("max/min=%.3f < 2", hi / lo));
}

// ---- criterion 9: random-walk physics ----

void criterion9() {
  const Network net = generateNetwork(200, 40.0 / 9.0, 0x909);
  Rng rng1(1), rng2(2), rng3(3);

  const auto visits = measureReturnTimes(net, 0, 3000000, rng1);
  auto meanOf = [](const std::vector<uint32_t>& xs) {
    double s = 0;
    for (auto x : xs) s += x;
    return s / double(xs.size());
  };
  std::vector<double> visitErr;
  std::vector<double> visitMean(net.n, 0.0);
  for (uint32_t u = 0; u < net.n; ++u) {
    if (visits[u].size() < 500) continue;
    visitMean[u] = meanOf(visits[u]);
    const double expected = net.meanDegree * net.n / net.degree(u);
    visitErr.push_back(std::abs(visitMean[u] - expected) / expected);
  }
  std::sort(visitErr.begin(), visitErr.end());
  const double medVisit = visitErr[visitErr.size() / 2];

  const uint32_t k = 20;
  const auto packets = measureInterPacketTimes(net, k, 300000, rng2);
  std::vector<double> packetErr;
  for (uint32_t u = 0; u < net.n; ++u) {
    if (visits[u].size() < 500 || packets[u].size() < 500) continue;
    const double expected = visitMean[u] / k;
    packetErr.push_back(std::abs(meanOf(packets[u]) - expected) / expected);
  }
  std::sort(packetErr.begin(), packetErr.end());
  const double medPacket = packetErr[packetErr.size() / 2];

  std::vector<double> ratios;
  for (uint32_t n : {100u, 200u, 400u}) {
    const Network g = generateNetwork(n, 40.0 / 9.0, 0x909 + n);
    ratios.push_back(measureCoverTime(g, 10, rng3) / (double(n) * std::log(double(n))));
  }
  const auto [rlo, rhi] = std::minmax_element(ratios.begin(), ratios.end());
  const double coverBand = *rhi / *rlo;

  report(9, medVisit < 0.10 && medPacket < 0.10 && coverBand < 2.0,
         "inter-visit, inter-packet, and cover-time laws hold",
         fmt("median visit err=%.3f < 0.1, median packet err=%.3f < 0.1, cover band=%.2f < 2",
             medVisit, medPacket, coverBand));
}

// ---- criterion 10: always-on property batch ----

void criterion10() {
  bool pass = true;
  std::string detail;

  {  // peel order-invariance + brute-force agreement, k <= 8
    Rng rng(0xDEC0DE);
    bool ok = true;
    for (int t = 0; t < 150 && ok; ++t) {
      const uint32_t k = 2 + uint32_t(rng.nextBelow(7));
      const auto sets = fcds::testing::randomSets(rng, k, 10);
      bool inv = false;
      const auto oracle = fcds::testing::exhaustivePeel(sets, inv);
      const auto got = peel(sets, k);
      ok = inv && std::set<uint32_t>(got.recovered.begin(), got.recovered.end()) == oracle;
      if (ok) {  // monotonicity: a superset query cannot do worse
        auto more = sets;
        more.push_back(fcds::testing::randomSets(rng, k, 1)[0]);
        ok = !got.success || peel(more, k).success;
      }
    }
    pass = pass && ok;
    detail += fmt("peel-oracle:%s ", ok ? "ok" : "FAIL");
  }

  {  // two-stage vs composed expansion, k <= 6
    Rng rng(0xAB);
    bool ok = true;
    for (int t = 0; t < 150 && ok; ++t) {
      const uint32_t k = 2 + uint32_t(rng.nextBelow(5));
      const uint32_t m = k + uint32_t(rng.nextBelow(3));
      PrecodeMap map;
      for (uint32_t p = 0; p < m; ++p) {
        std::set<uint32_t> srcs;
        const auto size = rng.nextBelow(k + 1);
        while (srcs.size() < size) srcs.insert(1 + uint32_t(rng.nextBelow(k)));
        map.emplace(500 + p, std::vector<uint32_t>(srcs.begin(), srcs.end()));
      }
      fcds::testing::Sets query(1 + rng.nextBelow(7));
      for (auto& q : query) {
        std::set<uint32_t> ids;
        const auto size = rng.nextBelow(m + 1);
        while (ids.size() < size) ids.insert(500 + uint32_t(rng.nextBelow(m)));
        q.assign(ids.begin(), ids.end());
      }
      bool inv = false;
      const auto composed = fcds::testing::composeUpFront(query, map);
      const bool want = fcds::testing::exhaustivePeel(composed, inv).size() == k;
      ok = inv && peelTwoStage(query, map, k, m).success == want;
    }
    pass = pass && ok;
    detail += fmt("two-stage-oracle:%s ", ok ? "ok" : "FAIL");
  }

  {  // graph symmetry + determinism
    const Network a = generateNetwork(200, 40.0 / 9.0, 77);
    const Network b = generateNetwork(200, 40.0 / 9.0, 77);
    bool ok = a.adjacency == b.adjacency;
    for (uint32_t u = 0; u < a.n && ok; ++u)
      for (uint32_t v : a.adjacency[u])
        ok = ok && std::binary_search(a.adjacency[v].begin(), a.adjacency[v].end(), u);
    pass = pass && ok;
    detail += fmt("graph:%s ", ok ? "ok" : "FAIL");
  }

  {  // distribution normalization
    bool ok = true;
    for (const auto& d : {idealSoliton(100), robustSoliton(100, 0.1, 0.5)}) {
      double sum = 0;
      for (uint32_t i = 1; i <= d.k(); ++i) sum += d.prob(i);
      ok = ok && std::abs(sum - 1.0) < 1e-12;
    }
    pass = pass && ok;
    detail += fmt("normalization:%s ", ok ? "ok" : "FAIL");
  }

  {  // XOR payload consistency
    const Network net = generateNetwork(100, 40.0 / 9.0, 31);
    LtcdsConfig cfg;
    cfg.knownGlobals = {100, 10};
    cfg.payloadMode = true;
    std::vector<uint32_t> sources;
    for (uint32_t i = 0; i < 10; ++i) sources.push_back(i * 9);
    const auto res = runLtcds(net, sources, cfg, 8);
    bool ok = true;
    for (const auto& node : res.nodes) {
      uint64_t acc = 0;
      for (uint32_t s : node.storage.accepted) acc ^= res.payloads[s];
      ok = ok && acc == node.storage.payloadXor;
    }
    pass = pass && ok;
    detail += fmt("xor:%s ", ok ? "ok" : "FAIL");
  }

  {  // bit-exact reproducibility of a full run
    ExperimentPlan plan;
    plan.algorithm = Algorithm::LtcdsOracle;
    plan.n = 100;
    plan.k = 10;
    plan.etaGrid = {1.5, 2.0};
    plan.subsetsPerEta = 50;
    plan.seeds = 3;
    plan.seed = 99;
    std::ostringstream csvA, csvB;
    writeResultsCsv(runPlan(plan, par()), csvA);
    writeResultsCsv(runPlan(plan, 1), csvB);
    const bool ok = csvA.str() == csvB.str();
    pass = pass && ok;
    detail += fmt("reproducibility:%s", ok ? "ok" : "FAIL");
  }

  report(10, pass, "property batch (decoder oracles, graph, normalization, xor, replay)", detail);
}

}  // namespace

int main() {
  std::printf("fcds acceptance suite (parallelism %u)\n", par());
  criteria12();
  criteria34();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) FAILED\n", failures);
  return failures;
}
