#include "popres/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace popres {

namespace {

// Parses a header of space-separated key=value tokens.
std::unordered_map<std::string, std::string> parse_header(
    const std::string& line, const std::string& what) {
  std::unordered_map<std::string, std::string> kv;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    std::size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::runtime_error(what + ": malformed header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::string need(const std::unordered_map<std::string, std::string>& kv,
                 const std::string& key, const std::string& what) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::runtime_error(what + ": missing header field '" + key + "'");
  return it->second;
}

}  // namespace

void write_population(const std::string& path,
                      const SparseDistribution& dist) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "n=" << dist.n << " k=" << dist.size() << "\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < dist.size(); ++i)
    out << dist.points[i].to_string() << " " << dist.weights[i] << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

SparseDistribution read_population(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("population file: empty: " + path);
  auto kv = parse_header(line, "population file");
  int n = std::stoi(need(kv, "n", "population file"));
  std::size_t k = std::stoul(need(kv, "k", "population file"));
  std::vector<BitVec> points;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string bits;
    double w;
    if (!(row >> bits >> w))
      throw std::runtime_error("population file: malformed row '" + line + "'");
    BitVec p = BitVec::from_string(bits);
    if (p.dimension() != n)
      throw std::runtime_error("population file: row dimension mismatch");
    points.push_back(std::move(p));
    weights.push_back(w);
  }
  if (points.size() != k)
    throw std::runtime_error("population file: row count disagrees with k");
  // Hand-edited files get 1e-9 of slack on the total mass; the drift is
  // renormalized away so the in-memory invariant stays tight.
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::runtime_error("population file: weights do not sum to 1");
  for (double& w : weights) w /= sum;
  return SparseDistribution(n, std::move(points), std::move(weights));
}

void write_samples(const std::string& path, double mu, std::uint64_t seed,
                   const std::vector<BitVec>& samples) {
  if (samples.empty())
    throw std::invalid_argument("write_samples: no samples");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "n=" << samples[0].dimension() << " mu=" << std::setprecision(17)
      << mu << " seed=" << seed << " count=" << samples.size() << "\n";
  for (const BitVec& s : samples) out << s.to_string() << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

SampleFile read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("sample file: empty: " + path);
  auto kv = parse_header(line, "sample file");
  SampleFile f;
  f.n = std::stoi(need(kv, "n", "sample file"));
  f.mu = std::stod(need(kv, "mu", "sample file"));
  f.seed = std::stoull(need(kv, "seed", "sample file"));
  std::size_t count = std::stoul(need(kv, "count", "sample file"));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    BitVec s = BitVec::from_string(line);
    if (s.dimension() != f.n)
      throw std::runtime_error("sample file: row dimension mismatch");
    f.samples.push_back(std::move(s));
  }
  if (f.samples.size() != count)
    throw std::runtime_error("sample file: row count disagrees with header");
  return f;
}

}  // namespace popres
