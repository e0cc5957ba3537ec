#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "fvmcts/experiment.hpp"

namespace fvmcts {

namespace {

std::string format_g6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void write_csv(std::ostream& os, std::span<const EpisodeRecord> records) {
  std::vector<const EpisodeRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EpisodeRecord* a, const EpisodeRecord* b) { return a->seed < b->seed; });
  os << kCsvHeader << '\n';
  for (const auto* r : sorted) {
    os << r->algo << ',' << r->domain << ',' << r->topology << ',' << r->n_agents << ','
       << r->seed << ',' << format_g6(r->discounted_return) << ','
       << format_g6(r->mean_ms_per_action()) << ',' << r->peak_stats_entries << ',' << r->steps
       << ',' << (r->failed ? 1 : 0) << '\n';
  }
}

void emit_csv(std::span<const EpisodeRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, records);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::pair<double, double> mean_and_stddev(std::span<const double> xs) {
  if (xs.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

std::vector<CellSummary> summarize_stream(std::istream& csv) {
  using Key = std::tuple<std::string, std::string, std::string, std::size_t>;
  struct Acc {
    std::vector<double> returns, ms;
    std::size_t rows = 0, failures = 0;
  };
  std::map<Key, Acc> cells;

  std::string line;
  bool header = true;
  while (std::getline(csv, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + line);
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 10) throw std::runtime_error("malformed CSV row: " + line);
    Key key{f[0], f[1], f[2], std::stoul(f[3])};
    auto& acc = cells[key];
    ++acc.rows;
    if (f[9] == "1") {
      ++acc.failures;
      continue;
    }
    acc.returns.push_back(std::stod(f[5]));
    acc.ms.push_back(std::stod(f[6]));
  }

  std::vector<CellSummary> out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [key, acc] : cells) {
    CellSummary c;
    std::tie(c.algo, c.domain, c.topology, c.n_agents) = key;
    c.episodes = acc.rows;
    c.failures = acc.failures;
    if (acc.failures > 0) {
      c.return_mean = c.return_std = c.ms_mean = c.ms_std = nan;
    } else {
      std::tie(c.return_mean, c.return_std) = mean_and_stddev(acc.returns);
      std::tie(c.ms_mean, c.ms_std) = mean_and_stddev(acc.ms);
    }
    out.push_back(c);
  }
  return out;
}

std::vector<CellSummary> summarize(const std::vector<std::filesystem::path>& csv_files) {
  std::stringstream merged;
  merged << kCsvHeader << '\n';
  for (const auto& path : csv_files) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        if (line != kCsvHeader) throw std::runtime_error(path.string() + ": unexpected CSV header");
        continue;
      }
      merged << line << '\n';
    }
  }
  return summarize_stream(merged);
}

void print_summary(std::ostream& os, std::span<const CellSummary> cells) {
  os << std::left << std::setw(22) << "algo" << std::setw(10) << "domain" << std::setw(15)
     << "topology" << std::right << std::setw(8) << "agents" << std::setw(6) << "runs"
     << std::setw(14) << "return" << std::setw(12) << "+-sd" << std::setw(14) << "ms/action"
     << std::setw(12) << "+-sd" << '\n';
  for (const auto& c : cells) {
    os << std::left << std::setw(22) << c.algo << std::setw(10) << c.domain << std::setw(15)
       << c.topology << std::right << std::setw(8) << c.n_agents << std::setw(6) << c.episodes
       << std::setw(14) << format_g6(c.return_mean) << std::setw(12) << format_g6(c.return_std)
       << std::setw(14) << format_g6(c.ms_mean) << std::setw(12) << format_g6(c.ms_std) << '\n';
  }
}

}  // namespace fvmcts
