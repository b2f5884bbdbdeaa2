#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fcds {

/// Shortest round-trip decimal representation (std::to_chars), so output
/// files are bit-exact reproducible across runs.
std::string formatDouble(double v);

struct StorageDumpRow {
  uint32_t nodeId;
  uint32_t codeDegree;
  std::vector<uint32_t> yIds;  // sorted
};

/// `nodeId,dC,size,yIds` with yIds semicolon-joined. The decoder's input format.
void writeStorageCsv(const std::vector<StorageDumpRow>& rows, std::ostream& os);
std::vector<StorageDumpRow> readStorageCsv(std::istream& is);

struct EstimateRow {
  uint32_t nodeId;
  double nHat;
  uint32_t kHat;
  uint32_t kSeen;
};

/// `nodeId,nHat,kHat,kSeen` rows.
void writeEstimatesCsv(const std::vector<EstimateRow>& rows, std::ostream& os);

/// `precodeId,sourceIds` with sourceIds semicolon-joined.
void writePrecodeMapCsv(const std::vector<std::pair<uint32_t, std::vector<uint32_t>>>& rows,
                        std::ostream& os);

}  // namespace fcds
