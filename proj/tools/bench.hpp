#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polypow/ff.hpp"

namespace polypow::bench {

struct Options {
  std::vector<std::size_t> r{2}, d{2};
  std::vector<u64> N{1u << 14};
  u64 seeds = 1;
  u64 first_seed = 1;
  u64 prime = 0;  // 0: default resolution
  std::string csv;      // empty: stdout
  std::string summary;  // empty: no summary file
  bool parallel = false;
};

struct Record {
  std::size_t r, d;
  u64 N, seed;
  std::string stage;
  std::uint64_t time_ns;
  u64 prime;
  bool ok;
};

// Runs every (r, d, N, seed) cell; returns false if any cell failed.
bool run(const Options& opt, const polypow::Field& f, std::vector<Record>& out);
std::string csv_header();
std::string csv_row(const Record& rec);

}  // namespace polypow::bench
