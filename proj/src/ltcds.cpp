#include "fcds/ltcds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fcds {

DegreeDistribution makeOmega(const OmegaConfig& cfg, uint32_t k) {
  if (cfg.family == OmegaFamily::RobustSoliton && k >= 2) {
    try {
      return robustSoliton(k, cfg.c0, cfg.delta);
    } catch (const std::invalid_argument&) {
      // pivot out of range at this k; the ideal distribution is the sane
      // degenerate choice
    }
  }
  return idealSoliton(k);
}

const DegreeDistribution& OmegaCache::get(uint32_t k) {
  auto it = built_.find(k);
  if (it == built_.end()) it = built_.emplace(k, makeOmega(cfg_, k)).first;
  return it->second;
}

StorageState beginEncoding(Rng& rng, double nHat, uint32_t kHat, double c1, OmegaCache& omegas) {
  if (kHat < 1) throw std::invalid_argument("beginEncoding: kHat must be >= 1");
  StorageState st;
  st.codeDegree = omegas.get(kHat).sample(rng);
  st.acceptProb = std::min(1.0, static_cast<double>(st.codeDegree) / static_cast<double>(kHat));
  const double cap = std::ceil(c1 * nHat * std::log(nHat));
  st.hopCap = cap >= 1.0 ? static_cast<uint64_t>(cap) : 1;
  return st;
}

bool onPacket(StorageState& st, const Packet& pkt, Rng& rng, std::span<const uint64_t> payloads) {
  if (pkt.hopCount >= st.hopCap) return false;
  if (st.decided.insert(pkt.sourceId).second) {
    if (rng.bernoulli(st.acceptProb)) {
      st.accepted.insert(pkt.sourceId);
      if (!payloads.empty()) st.payloadXor ^= payloads[pkt.sourceId];
    }
  }
  return true;
}

namespace {

enum class Phase : uint8_t { Inference, Encoding };

uint64_t autoRoundLimit(const Network& net, const LtcdsConfig& cfg) {
  const double n = net.n;
  const double inferenceHorizon = 50.0 * static_cast<double>(cfg.c2) * n;
  const double encodeHorizon = 30.0 * cfg.c1 * n * (std::log(n) + 3.0);
  return static_cast<uint64_t>(inferenceHorizon + encodeHorizon) + 1000;
}

}  // namespace

LtcdsResult runLtcds(const Network& net, std::span<const uint32_t> sources,
                     const LtcdsConfig& cfg, uint64_t seed, TraceFn trace) {
  if (sources.empty()) throw std::invalid_argument("runLtcds: no sources");
  for (uint32_t s : sources)
    if (s >= net.n) throw std::invalid_argument("runLtcds: source id out of range");

  LtcdsResult result;
  if (cfg.payloadMode) {
    result.payloads.resize(net.n, 0);
    for (uint32_t s : sources) result.payloads[s] = Rng(deriveSeed(seed, SeedTag::Payload, s)).next();
  }

  WalkEngine engine(net, seed);
  if (trace) engine.setTrace(std::move(trace));

  std::vector<Rng> ctlRng;
  ctlRng.reserve(net.n);
  for (uint32_t u = 0; u < net.n; ++u) ctlRng.emplace_back(deriveSeed(seed, SeedTag::Control, u + 1));

  OmegaCache omegas(cfg.omega);
  std::vector<Phase> phase(net.n, Phase::Inference);
  std::vector<InferenceState> inference;
  std::vector<StorageState> storage(net.n);

  if (cfg.knownGlobals) {
    const auto [trueN, trueK] = *cfg.knownGlobals;
    for (uint32_t u = 0; u < net.n; ++u) {
      storage[u] = beginEncoding(ctlRng[u], static_cast<double>(trueN), trueK, cfg.c1, omegas);
      phase[u] = Phase::Encoding;
    }
  } else {
    if (cfg.c2 < 2) throw std::invalid_argument("runLtcds: c2 must be >= 2 in estimated mode");
    inference.assign(net.n, InferenceState(cfg.c2));
  }

  auto switchToEncoding = [&](uint32_t u) {
    storage[u] = beginEncoding(ctlRng[u], inference[u].nHat(), inference[u].kHat(), cfg.c1, omegas);
    phase[u] = Phase::Encoding;
  };

  const std::span<const uint64_t> payloads(result.payloads);
  auto arrival = [&](uint32_t u, const Packet& pkt) -> bool {
    if (phase[u] == Phase::Inference) {
      inference[u].recordVisit(pkt.sourceId, engine.clock().round);
      if (inference[u].done()) switchToEncoding(u);
      return true;  // inference step: always forward
    }
    return onPacket(storage[u], pkt, ctlRng[u], payloads);
  };

  std::vector<uint32_t> orderedSources(sources.begin(), sources.end());
  std::sort(orderedSources.begin(), orderedSources.end());
  for (uint32_t s : orderedSources) engine.inject(s, Packet{s, 0, 0}, arrival);

  const uint64_t limit = cfg.roundLimit ? cfg.roundLimit : autoRoundLimit(net, cfg);
  while (engine.liveCount() > 0) {
    engine.stepRound(arrival);
    if (engine.clock().round == limit) {
      // Deadlock guard: every node still monitoring adopts its estimates so
      // the live packets can hit a retirement cap somewhere.
      for (uint32_t u = 0; u < net.n; ++u) {
        if (phase[u] == Phase::Inference) {
          inference[u].forceFinalize();
          switchToEncoding(u);
        }
      }
    }
    if (engine.clock().round > 4 * limit)
      throw std::runtime_error("runLtcds: simulation failed to terminate");
  }

  result.nodes.resize(net.n);
  for (uint32_t u = 0; u < net.n; ++u) {
    auto& out = result.nodes[u];
    if (!cfg.knownGlobals) {
      auto& inf = inference[u];
      if (phase[u] == Phase::Inference) {
        inf.forceFinalize();
        switchToEncoding(u);
      }
      out.nHat = inf.nHat();
      out.kHat = inf.kHat();
      out.kSeen = inf.kSeen();
      out.inferenceForced = inf.forced();
      if (inf.forced()) ++result.forcedInferenceCount;
    } else {
      out.nHat = static_cast<double>(cfg.knownGlobals->first);
      out.kHat = cfg.knownGlobals->second;
      out.kSeen = cfg.knownGlobals->second;
    }
    out.storage = std::move(storage[u]);
  }
  result.clock = engine.clock();
  result.maxQueueLen = engine.maxQueueLen();
  return result;
}

}  // namespace fcds
