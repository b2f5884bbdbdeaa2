#include "fcds/csv_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fcds {

std::string formatDouble(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("formatDouble: conversion failed");
  return std::string(buf, p);
}

void writeStorageCsv(const std::vector<StorageDumpRow>& rows, std::ostream& os) {
  os << "nodeId,dC,size,yIds\n";
  for (const auto& r : rows) {
    os << r.nodeId << ',' << r.codeDegree << ',' << r.yIds.size() << ',';
    for (size_t i = 0; i < r.yIds.size(); ++i) {
      if (i) os << ';';
      os << r.yIds[i];
    }
    os << '\n';
  }
}

std::vector<StorageDumpRow> readStorageCsv(std::istream& is) {
  std::vector<StorageDumpRow> rows;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("storage csv: empty input");
  if (line.rfind("nodeId,", 0) != 0) throw std::runtime_error("storage csv: missing header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    StorageDumpRow row;
    if (!std::getline(ls, field, ',')) throw std::runtime_error("storage csv: bad row: " + line);
    row.nodeId = static_cast<uint32_t>(std::stoul(field));
    if (!std::getline(ls, field, ',')) throw std::runtime_error("storage csv: bad row: " + line);
    row.codeDegree = static_cast<uint32_t>(std::stoul(field));
    if (!std::getline(ls, field, ',')) throw std::runtime_error("storage csv: bad row: " + line);
    const size_t declared = std::stoul(field);
    std::getline(ls, field);  // remainder: semicolon-joined ids (may be empty)
    std::istringstream ids(field);
    std::string tok;
    while (std::getline(ids, tok, ';'))
      if (!tok.empty()) row.yIds.push_back(static_cast<uint32_t>(std::stoul(tok)));
    if (row.yIds.size() != declared)
      throw std::runtime_error("storage csv: size column disagrees with id list: " + line);
    rows.push_back(std::move(row));
  }
  return rows;
}

void writeEstimatesCsv(const std::vector<EstimateRow>& rows, std::ostream& os) {
  os << "nodeId,nHat,kHat,kSeen\n";
  for (const auto& r : rows)
    os << r.nodeId << ',' << formatDouble(r.nHat) << ',' << r.kHat << ',' << r.kSeen << '\n';
}

void writePrecodeMapCsv(const std::vector<std::pair<uint32_t, std::vector<uint32_t>>>& rows,
                        std::ostream& os) {
  os << "precodeId,sourceIds\n";
  for (const auto& [id, srcs] : rows) {
    os << id << ',';
    for (size_t i = 0; i < srcs.size(); ++i) {
      if (i) os << ';';
      os << srcs[i];
    }
    os << '\n';
  }
}

}  // namespace fcds
