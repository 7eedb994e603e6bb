#include "latgame/harness/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "latgame/error.hpp"

namespace latgame::harness {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc())
    throw ContractViolation("double formatting failed");
  return std::string(buf, ptr);
}

void write_text(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out)
    throw IoError("write failed for '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string encode_snapshot(const StrategyField& eta) {
  const Geometry& g = eta.geometry();
  if (g.dim() != 2)
    throw Unsupported("snapshots need d = 2, got d = " + std::to_string(g.dim()));
  std::string out = "P5\n" + std::to_string(g.sides()[1]) + " " + std::to_string(g.sides()[0]) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + eta.size());
  for (std::size_t x = 0; x < eta.size(); ++x)
    out[header + x] = eta.test(static_cast<Site>(x)) ? '\x00' : '\xff';
  return out;
}

void write_snapshot(const StrategyField& eta, const fs::path& path) { write_text(path, encode_snapshot(eta)); }

namespace {
void append_row(std::string& out, const SeriesPoint& row) {
  out += format_double(row.t);
  out += ',';
  out += format_double(row.density1);
  out += ',';
  out += std::to_string(row.flips);
  out += ',';
  out += std::to_string(row.active);
  out += '\n';
}
}  // namespace

std::string encode_density_csv(std::span<const SeriesPoint> series) {
  std::string out = "t,density1,flips,active\n";
  for (const auto& row : series)
    append_row(out, row);
  return out;
}

void write_density_csv(std::span<const SeriesPoint> series, const fs::path& path) {
  write_text(path, encode_density_csv(series));
}

std::string encode_aggregate_csv(std::span<const SeededSeries> runs) {
  std::string out = "seed,t,density1,flips,active\n";
  for (const auto& run : runs) {
    const std::string prefix = std::to_string(run.seed) + ",";
    for (const auto& row : run.series) {
      out += prefix;
      append_row(out, row);
    }
  }
  return out;
}

void write_aggregate_csv(std::span<const SeededSeries> runs, const fs::path& path) {
  write_text(path, encode_aggregate_csv(runs));
}

std::string encode_checkpoint(const StrategyField& eta) {
  const Geometry& g = eta.geometry();
  std::string out = "d " + std::to_string(g.dim()) + "\nsides";
  for (int s : g.sides())
    out += " " + std::to_string(s);
  out += "\nruns";
  bool current = false;
  std::size_t run = 0;
  for (std::size_t x = 0; x < eta.size(); ++x) {
    const bool bit = eta.test(static_cast<Site>(x));
    if (bit != current) {
      out += " " + std::to_string(run);
      current = bit;
      run = 0;
    }
    ++run;
  }
  out += " " + std::to_string(run) + "\n";
  return out;
}

StrategyField decode_checkpoint(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto next_line = [&](const char* tag) {
    do {
      if (!std::getline(in, line))
        throw ParseError(line_no, std::string("checkpoint ends before '") + tag + "' line");
      ++line_no;
    } while (line.empty());
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    if (word != tag)
      throw ParseError(line_no, std::string("expected '") + tag + "' line in checkpoint");
    return fields.str().substr(word.size());
  };
  auto numbers = [&](const std::string& rest) {
    std::istringstream fields(rest);
    std::vector<long long> v;
    std::string tok;
    while (fields >> tok) {
      long long value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 0)
        throw ParseError(line_no, "bad number '" + tok + "' in checkpoint");
      v.push_back(value);
    }
    return v;
  };

  const auto d = numbers(next_line("d"));
  if (d.size() != 1 || d[0] < 1)
    throw ParseError(line_no, "checkpoint dimension must be one positive integer");
  const auto sides_ll = numbers(next_line("sides"));
  if (static_cast<long long>(sides_ll.size()) != d[0])
    throw ParseError(line_no, "checkpoint sides do not match d");
  std::vector<int> sides(sides_ll.begin(), sides_ll.end());
  GeometryPtr g;
  try {
    g = Geometry::lattice(sides);
  } catch (const InvalidInput& e) {
    throw ParseError(line_no, e.what());
  }
  const auto runs = numbers(next_line("runs"));
  StrategyField eta(g);
  std::size_t x = 0;
  bool bit = false;
  for (long long run : runs) {
    if (x + static_cast<std::size_t>(run) > eta.size())
      throw ParseError(line_no, "checkpoint runs exceed the site count");
    if (bit)
      for (long long k = 0; k < run; ++k)
        eta.set(static_cast<Site>(x + static_cast<std::size_t>(k)));
    x += static_cast<std::size_t>(run);
    bit = !bit;
  }
  if (x != eta.size())
    throw ParseError(line_no, "checkpoint runs cover " + std::to_string(x) + " of " + std::to_string(eta.size()) +
                                  " sites");
  return eta;
}

void write_checkpoint(const StrategyField& eta, const fs::path& path) { write_text(path, encode_checkpoint(eta)); }

StrategyField read_checkpoint(const fs::path& path) { return decode_checkpoint(read_text(path)); }

std::uint32_t crc32_of(std::string_view bytes) noexcept {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths
  while (!bytes.empty()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size(), 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), chunk);
    bytes.remove_prefix(chunk);
  }
  return static_cast<std::uint32_t>(crc);
}

namespace {
std::string hex32(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}
}  // namespace

std::string RunManifest::result(std::string_view key) const {
  for (const auto& [k, v] : results)
    if (k == key)
      return v;
  return {};
}

std::string encode_manifest(const RunManifest& m) {
  std::string out;
  auto line = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  line("engine_version", m.engine_version);
  line("wall_clock_seconds", format_double(m.wall_seconds));
  for (const auto& [k, v] : m.config)
    line("config." + k, v);
  for (std::size_t i = 0; i < m.replica_seeds.size(); ++i)
    line("replica." + std::to_string(i) + ".seed", std::to_string(m.replica_seeds[i]));
  for (const auto& [k, v] : m.results)
    line("result." + k, v);
  for (const auto& a : m.artifacts)
    line("artifact." + a.name, "crc32:" + hex32(a.crc32) + " bytes:" + std::to_string(a.bytes));
  return out;
}

void write_manifest(const RunManifest& manifest, const fs::path& dir) {
  write_text(dir / "manifest.txt", encode_manifest(manifest));
}

std::vector<std::string> check_manifest(const fs::path& dir) {
  std::istringstream in(read_text(dir / "manifest.txt"));
  std::vector<std::string> bad;
  std::string line;
  const std::string prefix = "artifact.";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) != 0)
      continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos)
      continue;
    const std::string name = line.substr(prefix.size(), eq - prefix.size());
    const std::string expected = line.substr(eq + 3);
    std::error_code ec;
    if (!fs::exists(dir / name, ec)) {
      bad.push_back(name);
      continue;
    }
    const std::string bytes = read_text(dir / name);
    const std::string actual = "crc32:" + hex32(crc32_of(bytes)) + " bytes:" + std::to_string(bytes.size());
    if (actual != expected)
      bad.push_back(name);
  }
  return bad;
}

OutputDir::OutputDir(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec)
    throw IoError("cannot create output directory '" + root_.string() + "': " + ec.message());
}

void OutputDir::write(const std::string& name, std::string_view content) {
  write_text(root_ / name, content);
  artifacts_.push_back({name, content.size(), crc32_of(content)});
}

}  // namespace latgame::harness
