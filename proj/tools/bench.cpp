#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <future>

#include "polypow/instance.hpp"
#include "polypow/power.hpp"

namespace polypow::bench {

namespace {

std::uint64_t now_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

std::uint64_t median(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

struct Cell {
  std::size_t r, d;
  u64 N, seed;
};

std::vector<Record> run_cell(const Cell& c, const Field& f) {
  const int reps = c.N >= (u64{1} << 16) ? 3 : 1;
  PolyMatrix M = random_matrix(f, c.r, c.d, c.seed);
  CFiniteSpec spec = entry_sequence_spec(M, 0, c.r - 1);
  std::vector<std::uint64_t> bp, ct, it, ur, total;
  bool ok = true;
  for (int rep = 0; rep < reps; ++rep) {
    try {
      std::uint64_t t0 = now_ns();
      PolyMatrix B = binpow_matrix(M, c.N);
      bp.push_back(now_ns() - t0);
      SeqTermSolver solver(spec);
      SeqTermTrace tr;
      Poly u = solver.term(c.N, &tr);
      ct.push_back(tr.ct_ns);
      it.push_back(tr.it_ns);
      ur.push_back(tr.ur_ns);
      total.push_back(tr.ct_ns + tr.it_ns + tr.ur_ns);
      ok = ok && u == B.at(0, c.r - 1);
    } catch (const std::exception&) {
      ok = false;
      break;
    }
  }
  std::vector<Record> out;
  auto add = [&](const char* stage, const std::vector<std::uint64_t>& v) {
    out.push_back({c.r, c.d, c.N, c.seed, stage, v.empty() ? 0 : median(v), f.modulus(), ok && !v.empty()});
  };
  add("BP", bp);
  add("CT", ct);
  add("IT", it);
  add("UR", ur);
  add("TOTAL", total);
  return out;
}

}  // namespace

std::string csv_header() { return "r,d,N,seed,stage,time_ns,prime,ok"; }

std::string csv_row(const Record& x) {
  return std::to_string(x.r) + "," + std::to_string(x.d) + "," + std::to_string(x.N) + "," + std::to_string(x.seed) +
         "," + x.stage + "," + std::to_string(x.time_ns) + "," + std::to_string(x.prime) + "," +
         (x.ok ? "true" : "false");
}

bool run(const Options& opt, const Field& f, std::vector<Record>& out) {
  std::vector<Cell> cells;
  for (auto r : opt.r) {
    for (auto d : opt.d) {
      for (auto N : opt.N) {
        for (u64 s = 0; s < opt.seeds; ++s) cells.push_back({r, d, N, opt.first_seed + s});
      }
    }
  }
  std::vector<std::vector<Record>> results(cells.size());
  if (opt.parallel) {
    std::vector<std::future<std::vector<Record>>> jobs;
    for (const auto& c : cells) jobs.push_back(std::async(std::launch::async, run_cell, c, std::cref(f)));
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < cells.size(); ++i) results[i] = run_cell(cells[i], f);
  }
  bool all_ok = true;
  for (auto& rs : results) {
    for (auto& x : rs) {
      all_ok = all_ok && x.ok;
      out.push_back(std::move(x));
    }
  }
  return all_ok;
}

}  // namespace polypow::bench
