#include "fcds/rcds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace fcds {

double CopyCountDistribution::meanCopies() const {
  double m = 0.0;
  for (size_t i = 0; i < values.size(); ++i) m += static_cast<double>(values[i]) * probs[i];
  return m;
}

uint32_t CopyCountDistribution::sample(Rng& rng) const {
  const double u = rng.nextDouble();
  double acc = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    acc += probs[i];
    if (u < acc) return values[i];
  }
  return values.back();
}

void CopyCountDistribution::validate() const {
  if (values.empty() || values.size() != probs.size())
    throw std::invalid_argument("copy-count distribution: values/probs mismatch");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("copy-count distribution: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("copy-count distribution: probabilities must sum to 1");
}

namespace {

uint32_t sampleBinomial(Rng& rng, uint32_t trials, double p) {
  uint32_t hits = 0;
  for (uint32_t i = 0; i < trials; ++i)
    if (rng.bernoulli(p)) ++hits;
  return hits;
}

}  // namespace

PrecodeResult runPrecoding(const Network& net, std::span<const uint32_t> sources,
                           const PrecodeConfig& cfg, uint64_t seed) {
  const auto k = static_cast<uint32_t>(sources.size());
  if (k == 0) throw std::invalid_argument("runPrecoding: no sources");
  cfg.copies.validate();
  const uint32_t m = cfg.m ? cfg.m : static_cast<uint32_t>(std::ceil(1.1 * k));
  if (m < k || m > net.n) throw std::invalid_argument("runPrecoding: need k <= m <= n");

  std::vector<uint8_t> isSource(net.n, 0);
  for (uint32_t s : sources) {
    if (s >= net.n) throw std::invalid_argument("runPrecoding: source id out of range");
    isSource[s] = 1;
  }

  std::vector<Rng> ctlRng;
  ctlRng.reserve(net.n);
  for (uint32_t u = 0; u < net.n; ++u)
    ctlRng.emplace_back(deriveSeed(seed, SeedTag::PrecodeControl, u + 1));

  // Output selection: sources always, others by the parity coin. Absorb
  // targets use the binomial with success probability E[b]/m from the
  // pre-code definition (clamped, degenerate pre-codes can push it past 1).
  const double parityProb =
      net.n > k ? static_cast<double>(m - k) / static_cast<double>(net.n - k) : 0.0;
  const double absorbP = std::min(1.0, cfg.copies.meanCopies() / static_cast<double>(m));

  PrecodeResult result;
  std::vector<int32_t> outputIndex(net.n, -1);
  for (uint32_t u = 0; u < net.n; ++u) {
    const bool output = isSource[u] ? true : ctlRng[u].bernoulli(parityProb);
    if (!output) continue;
    PrecodeOutput out;
    out.node = u;
    out.systematic = isSource[u] != 0;
    out.absorbTarget = sampleBinomial(ctlRng[u], k, absorbP);
    outputIndex[u] = static_cast<int32_t>(result.outputs.size());
    result.outputs.push_back(std::move(out));
  }

  const double n = static_cast<double>(net.n);
  const auto mixThreshold = static_cast<uint64_t>(std::ceil(cfg.c3 * n * std::log(n)));
  const auto dropHorizon =
      static_cast<uint64_t>(std::ceil(cfg.dropFactor * cfg.c3 * n * std::log(n)));

  std::vector<std::unordered_set<uint32_t>> acceptedSets(result.outputs.size());
  std::vector<std::vector<std::pair<uint32_t, uint64_t>>> acceptLog(result.outputs.size());

  WalkEngine engine(net, deriveSeed(seed, SeedTag::PrecodeWalk));
  auto arrival = [&](uint32_t w, const Packet& pkt) -> bool {
    if (pkt.hopCount >= dropHorizon) {
      ++result.copiesDropped;
      return false;
    }
    const int32_t oi = outputIndex[w];
    if (oi >= 0 && pkt.hopCount >= mixThreshold) {
      auto& out = result.outputs[static_cast<size_t>(oi)];
      auto& acc = acceptedSets[static_cast<size_t>(oi)];
      const bool ownPacket = out.systematic && w == pkt.sourceId;  // would XOR-cancel
      if (acc.size() < out.absorbTarget && !ownPacket && !acc.count(pkt.sourceId)) {
        acc.insert(pkt.sourceId);
        acceptLog[static_cast<size_t>(oi)].emplace_back(pkt.sourceId, pkt.hopCount);
        ++result.copiesAbsorbed;
        return false;
      }
    }
    return true;
  };

  std::vector<uint32_t> orderedSources(sources.begin(), sources.end());
  std::sort(orderedSources.begin(), orderedSources.end());
  for (uint32_t s : orderedSources) {
    const uint32_t b = cfg.copies.sample(ctlRng[s]);
    for (uint32_t c = 0; c < b; ++c) {
      ++result.copiesLaunched;
      engine.inject(s, Packet{s, c, 0}, arrival);
    }
  }

  const uint64_t limit =
      cfg.roundLimit ? cfg.roundLimit : 10 * dropHorizon + 10000;
  while (engine.liveCount() > 0) {
    engine.stepRound(arrival);
    if (engine.clock().round >= limit)
      throw std::runtime_error("runPrecoding: copies still live past the safety limit");
  }

  for (size_t i = 0; i < result.outputs.size(); ++i) {
    auto& out = result.outputs[i];
    auto& log = acceptLog[i];
    std::sort(log.begin(), log.end());
    out.accepted.reserve(log.size());
    out.acceptHops.reserve(log.size());
    for (const auto& [src, hops] : log) {
      out.accepted.push_back(src);
      out.acceptHops.push_back(hops);
    }
    out.yIds = out.accepted;
    if (out.systematic) {
      out.yIds.push_back(out.node);
      std::sort(out.yIds.begin(), out.yIds.end());
    }
    if (out.accepted.size() < out.absorbTarget) ++result.underfilledOutputs;
  }
  result.clock = engine.clock();
  result.maxQueueLen = engine.maxQueueLen();
  return result;
}

RcdsResult runRcds(const Network& net, std::span<const uint32_t> sources, const RcdsConfig& cfg,
                   uint64_t seed) {
  RcdsResult result;
  result.precode = runPrecoding(net, sources, cfg.precode, deriveSeed(seed, SeedTag::Precode));

  result.outputNodes.reserve(result.precode.outputs.size());
  for (const auto& out : result.precode.outputs) {
    result.outputNodes.push_back(out.node);
    result.map.emplace(out.node, out.yIds);
  }

  LtcdsConfig inner = cfg.inner;
  if (cfg.innerEstimated)
    inner.knownGlobals.reset();
  else
    inner.knownGlobals = {net.n, static_cast<uint32_t>(result.outputNodes.size())};
  result.inner = runLtcds(net, result.outputNodes, inner, deriveSeed(seed, SeedTag::InnerCode));
  return result;
}

}  // namespace fcds
