#include "rdsir/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rdsir/error.hpp"

namespace rdsir {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const std::filesystem::path& path) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && *b == ' ') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) {
    throw IoError(path.string() + ": not a number: '" + s + "'");
  }
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

void write_series_csv(const std::filesystem::path& path, const std::vector<SeriesRecord>& series) {
  std::ofstream os = open_out(path);
  os << kSeriesHeader << '\n';
  for (const SeriesRecord& r : series) {
    os << format_double(r.time) << ',' << format_double(r.total_mass) << ','
       << format_double(r.infected_fraction) << ',' << format_double(r.noncompliant_fraction) << ','
       << format_double(r.min_value) << ',' << format_double(r.bound_gap) << '\n';
  }
  if (!os) throw IoError("failed writing " + path.string());
}

std::vector<SeriesRecord> read_series_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kSeriesHeader) {
    throw IoError(path.string() + ": unexpected series header");
  }
  std::vector<SeriesRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cols = split(line, ',');
    if (cols.size() != 6) throw IoError(path.string() + ": expected 6 columns");
    out.push_back({to_double(cols[0], path), to_double(cols[1], path), to_double(cols[2], path),
                   to_double(cols[3], path), to_double(cols[4], path), to_double(cols[5], path)});
  }
  return out;
}

void write_snapshot_csv(const std::filesystem::path& path, const ScalarField& f, double time,
                        const std::string& field_name) {
  const GridSpec& g = f.grid();
  std::ofstream os = open_out(path);
  os << "# nx=" << g.nx << ",ny=" << g.ny << ",xmin=" << format_double(g.xmin)
     << ",xmax=" << format_double(g.xmax) << ",ymin=" << format_double(g.ymin)
     << ",ymax=" << format_double(g.ymax) << ",t=" << format_double(time) << ",field=" << field_name
     << '\n';
  for (int i = 0; i < g.nx; ++i) os << (i ? "," : "") << "x=" << format_double(g.x(i));
  os << '\n';
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) os << (i ? "," : "") << format_double(f(i, j));
    os << '\n';
  }
  if (!os) throw IoError("failed writing " + path.string());
}

Snapshot read_snapshot_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) {
    throw IoError(path.string() + ": missing grid metadata line");
  }
  std::map<std::string, std::string> meta;
  for (const std::string& kv : split(line.substr(2), ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw IoError(path.string() + ": bad metadata entry '" + kv + "'");
    meta[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  for (const char* key : {"nx", "ny", "xmin", "xmax", "ymin", "ymax", "t"}) {
    if (!meta.count(key)) throw IoError(path.string() + ": metadata lacks " + key);
  }
  GridSpec g;
  g.nx = static_cast<int>(to_double(meta["nx"], path));
  g.ny = static_cast<int>(to_double(meta["ny"], path));
  g.xmin = to_double(meta["xmin"], path);
  g.xmax = to_double(meta["xmax"], path);
  g.ymin = to_double(meta["ymin"], path);
  g.ymax = to_double(meta["ymax"], path);
  g.validate();
  if (!std::getline(is, line)) throw IoError(path.string() + ": missing column label line");
  std::vector<double> values;
  values.reserve(g.size());
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cols = split(line, ',');
    if (static_cast<int>(cols.size()) != g.nx) throw IoError(path.string() + ": row width mismatch");
    for (const auto& c : cols) values.push_back(to_double(c, path));
    ++rows;
  }
  if (rows != g.ny) throw IoError(path.string() + ": expected " + std::to_string(g.ny) + " rows");
  return {ScalarField(g, std::move(values)), to_double(meta["t"], path), meta["field"]};
}

}  // namespace rdsir
