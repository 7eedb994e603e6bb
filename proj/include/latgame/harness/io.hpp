#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latgame/dynamics.hpp"
#include "latgame/field.hpp"

namespace latgame::harness {

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

// Binary greyscale PGM (P5, maxval 255); strategy 1 is black (0), strategy 2
// white (255). Rows follow the first coordinate. d must be 2.
std::string encode_snapshot(const StrategyField& eta);
void write_snapshot(const StrategyField& eta, const std::filesystem::path& path);

// Header `t,density1,flips,active`; `\n` line endings.
std::string encode_density_csv(std::span<const SeriesPoint> series);
void write_density_csv(std::span<const SeriesPoint> series, const std::filesystem::path& path);

struct SeededSeries {
  std::uint64_t seed;
  std::span<const SeriesPoint> series;
};

// Same rows with a leading `seed` column.
std::string encode_aggregate_csv(std::span<const SeededSeries> runs);
void write_aggregate_csv(std::span<const SeededSeries> runs, const std::filesystem::path& path);

// Run-length checkpoint:
//   d <dim>
//   sides <s1> ... <sd>
//   runs <r1> <r2> ...
// Runs alternate between strategy 2 and strategy 1 in row-major order,
// starting with strategy 2 (a leading 0 is allowed).
std::string encode_checkpoint(const StrategyField& eta);
StrategyField decode_checkpoint(std::string_view text);
void write_checkpoint(const StrategyField& eta, const std::filesystem::path& path);
StrategyField read_checkpoint(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

std::uint32_t crc32_of(std::string_view bytes) noexcept;

struct Artifact {
  std::string name;  // relative to the output directory
  std::uintmax_t bytes = 0;
  std::uint32_t crc32 = 0;
};

struct RunManifest {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::uint64_t> replica_seeds;
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<Artifact> artifacts;
  double wall_seconds = 0;
  std::string engine_version;
  bool verification_failed = false;

  std::string result(std::string_view key) const;  // empty when missing
};

std::string encode_manifest(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir);

// Re-hashes every artifact listed in dir/manifest.txt; returns the names that
// are missing or no longer match.
std::vector<std::string> check_manifest(const std::filesystem::path& dir);

// Collects artifacts as they are written, with their checksums.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  void write(const std::string& name, std::string_view content);
  const std::vector<Artifact>& artifacts() const noexcept { return artifacts_; }

 private:
  std::filesystem::path root_;
  std::vector<Artifact> artifacts_;
};

}  // namespace latgame::harness
