#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cotlab::suite {

/// One acceptance criterion run: pass/fail, elapsed time, and a CSV table of
/// the quantities it checked.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> rows;
  std::string detail;  // populated on failure
};

constexpr int kNumCriteria = 10;

CriterionResult run_criterion(int id, uint64_t seed);
std::vector<CriterionResult> run_all(uint64_t seed);

/// One CSV file per criterion, columns per docs/csv_schemas.md.
void write_csv(const std::string& path, const CriterionResult& result);

}  // namespace cotlab::suite
