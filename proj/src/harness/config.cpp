#include "latgame/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "latgame/error.hpp"
#include "latgame/harness/io.hpp"

namespace latgame::harness {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "mode",   "d",      "sides",   "a1",        "a2",          "a11",          "a12",    "a21",
    "a22",    "p",      "t_max",   "record_every", "seeds",    "master_seed",  "snapshot_every",
    "output_dir", "workers", "scheme", "initial", "m",         "coarse_sides", "q",      "dt",
    "densities"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry, std::less<>> entries) : entries_(std::move(entries)) {}

  bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }
  int line_of(std::string_view key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  const Entry& require(std::string_view key, Mode mode) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
      throw ParseError(0, "missing required key '" + std::string(key) + "' for mode " + to_string(mode));
    return it->second;
  }

  template <class T>
  T number(const Entry& e, std::string_view key) const {
    return parse_number<T>(trim(e.value), e.line, key);
  }

  template <class T>
  std::vector<T> list(const Entry& e, std::string_view key) const {
    std::string_view v = trim(e.value);
    if (v.size() >= 2 && v.front() == '(' && v.back() == ')')
      v = trim(v.substr(1, v.size() - 2));
    std::vector<T> out;
    while (!v.empty()) {
      const auto comma = v.find(',');
      out.push_back(parse_number<T>(trim(v.substr(0, comma)), e.line, key));
      if (comma == std::string_view::npos)
        break;
      v = v.substr(comma + 1);
    }
    if (out.empty())
      throw ParseError(e.line, "key '" + std::string(key) + "' needs at least one value");
    return out;
  }

  template <class T>
  std::optional<T> optional_number(std::string_view key) const {
    auto it = entries_.find(key);
    if (it == entries_.end())
      return std::nullopt;
    return number<T>(it->second, key);
  }

 private:
  template <class T>
  static T parse_number(std::string_view text, int line, std::string_view key) {
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end)
      throw ParseError(line, "bad value '" + std::string(text) + "' for key '" + std::string(key) + "'");
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(value))
        throw ParseError(line, "non-finite value for key '" + std::string(key) + "'");
    }
    return value;
  }

  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  if (name == "simulate") return Mode::Simulate;
  if (name == "meanfield") return Mode::Meanfield;
  if (name == "bootstrap") return Mode::Bootstrap;
  if (name == "reduce") return Mode::Reduce;
  if (name == "verify") return Mode::Verify;
  if (name == "figure1") return Mode::Figure1;
  return std::nullopt;
}

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Simulate: return "simulate";
    case Mode::Meanfield: return "meanfield";
    case Mode::Bootstrap: return "bootstrap";
    case Mode::Reduce: return "reduce";
    case Mode::Verify: return "verify";
    case Mode::Figure1: return "figure1";
  }
  return "?";
}

ExperimentConfig parse_config(std::string_view text, std::optional<Mode> mode_override) {
  ExperimentConfig cfg;
  std::map<std::string, Entry, std::less<>> entries;

  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw ParseError(line_no, "empty key");
    if (!kKnownKeys.contains(key))
      throw ParseError(line_no, "unknown key '" + key + "'");
    if (entries.contains(key))
      throw ParseError(line_no, "duplicate key '" + key + "'");
    entries.emplace(key, Entry{value, line_no});
    cfg.entries.emplace_back(key, value);
  }
  const Reader r(std::move(entries));

  // mode
  if (r.has("mode")) {
    const auto& e = r.require("mode", Mode::Simulate);
    const auto m = parse_mode(e.value);
    if (!m)
      throw ParseError(e.line, "unknown mode '" + e.value + "'");
    if (mode_override && *mode_override != *m)
      throw ParseError(e.line, std::string("config mode '") + e.value + "' conflicts with requested mode '" +
                                   to_string(*mode_override) + "'");
    cfg.mode = *m;
  } else if (mode_override) {
    cfg.mode = *mode_override;
  } else {
    throw ParseError(0, "no mode given");
  }
  const Mode mode = cfg.mode;

  const bool lattice_mode = mode == Mode::Simulate || mode == Mode::Reduce || mode == Mode::Verify ||
                            mode == Mode::Figure1;
  const bool game_mode = lattice_mode || mode == Mode::Meanfield;

  // dimension and sides
  if (mode == Mode::Figure1) {
    cfg.d = r.optional_number<int>("d").value_or(2);
    if (cfg.d != 2)
      throw ParseError(r.line_of("d"), "figure1 runs on a two-dimensional lattice");
  } else if (lattice_mode || mode == Mode::Bootstrap) {
    cfg.d = r.number<int>(r.require("d", mode), "d");
  } else {
    cfg.d = r.optional_number<int>("d").value_or(2);
  }
  if (cfg.d < 1)
    throw ParseError(r.line_of("d"), "d must be at least 1");

  if (lattice_mode || r.has("sides")) {
    const auto& e = r.require("sides", mode);
    cfg.sides = r.list<int>(e, "sides");
    if (static_cast<int>(cfg.sides.size()) != cfg.d)
      throw ParseError(e.line, "sides lists " + std::to_string(cfg.sides.size()) + " lengths but d = " +
                                   std::to_string(cfg.d));
    for (int s : cfg.sides)
      if (s < 4 || s % 2 != 0)
        throw ParseError(e.line, "side length " + std::to_string(s) + " must be even and at least 4");
  }

  // payoff parameters
  const bool has_reduced = r.has("a1") || r.has("a2");
  const bool has_matrix = r.has("a11") || r.has("a12") || r.has("a21") || r.has("a22");
  if (has_reduced && has_matrix)
    throw ParseError(r.line_of(r.has("a11") ? "a11" : "a12"), "give either a1/a2 or the full payoff matrix, not both");
  try {
    if (has_matrix) {
      PayoffMatrix A;
      A.a11 = r.number<double>(r.require("a11", mode), "a11");
      A.a12 = r.number<double>(r.require("a12", mode), "a12");
      A.a21 = r.number<double>(r.require("a21", mode), "a21");
      A.a22 = r.number<double>(r.require("a22", mode), "a22");
      cfg.payoff = A;
      cfg.params = derive_params(A);
    } else if (has_reduced || (game_mode && mode != Mode::Figure1)) {
      cfg.params = GameParams(r.number<double>(r.require("a1", mode), "a1"),
                              r.number<double>(r.require("a2", mode), "a2"));
    } else if (mode == Mode::Figure1) {
      cfg.params = GameParams(1.01, 1.0);
    }
  } catch (const InvalidInput& e) {
    throw ParseError(r.line_of("a1"), e.what());
  }

  // density
  if (r.has("initial"))
    cfg.initial = r.require("initial", mode).value;
  const bool needs_p = (mode == Mode::Simulate || mode == Mode::Reduce) ? !cfg.initial
                                                                       : (mode == Mode::Verify || mode == Mode::Meanfield);
  if (needs_p || r.has("p")) {
    const auto& e = r.require("p", mode);
    cfg.p = r.number<double>(e, "p");
    if (!(cfg.p >= 0 && cfg.p <= 1))
      throw ParseError(e.line, "p must lie in [0, 1]");
  }

  // horizon
  const bool needs_t = mode == Mode::Simulate || mode == Mode::Verify || mode == Mode::Figure1 ||
                       mode == Mode::Meanfield;
  if (needs_t || r.has("t_max")) {
    const auto& e = r.require("t_max", mode);
    cfg.t_max = r.number<double>(e, "t_max");
    if (!(cfg.t_max > 0))
      throw ParseError(e.line, "t_max must be positive");
  }
  if (auto v = r.optional_number<double>("record_every")) {
    if (*v < 0)
      throw ParseError(r.line_of("record_every"), "record_every must be nonnegative");
    cfg.record_every = *v;
  }
  if (auto v = r.optional_number<double>("snapshot_every")) {
    if (!(*v > 0))
      throw ParseError(r.line_of("snapshot_every"), "snapshot_every must be positive");
    cfg.snapshot_every = *v;
  }

  // replicas and seeds
  const bool needs_seed = mode != Mode::Meanfield;
  if (needs_seed)
    cfg.master_seed = r.number<std::uint64_t>(r.require("master_seed", mode), "master_seed");
  else if (auto v = r.optional_number<std::uint64_t>("master_seed"))
    cfg.master_seed = *v;
  if (mode == Mode::Verify || mode == Mode::Bootstrap)
    cfg.seeds = r.number<int>(r.require("seeds", mode), "seeds");
  else if (auto v = r.optional_number<int>("seeds"))
    cfg.seeds = *v;
  if (cfg.seeds < 1)
    throw ParseError(r.line_of("seeds"), "seeds must be at least 1");
  if (auto v = r.optional_number<int>("workers")) {
    if (*v < 1)
      throw ParseError(r.line_of("workers"), "workers must be at least 1");
    cfg.workers = *v;
  }

  if (r.has("output_dir"))
    cfg.output_dir = r.require("output_dir", mode).value;
  if (r.has("scheme")) {
    const auto& e = r.require("scheme", mode);
    if (e.value == "naive")
      cfg.scheme = Scheme::Naive;
    else if (e.value == "active")
      cfg.scheme = Scheme::ActiveSet;
    else
      throw ParseError(e.line, "scheme must be 'naive' or 'active'");
  }

  if (mode == Mode::Bootstrap) {
    cfg.m = r.optional_number<int>("m").value_or(cfg.d);
    if (cfg.m < 1 || cfg.m > 2 * cfg.d)
      throw ParseError(r.line_of("m"), "m must lie in [1, 2d]");
    const auto& es = r.require("coarse_sides", mode);
    cfg.coarse_sides = r.list<int>(es, "coarse_sides");
    for (int s : cfg.coarse_sides)
      if (s < 2)
        throw ParseError(es.line, "coarse side lengths must be at least 2");
    const auto& eq = r.require("q", mode);
    cfg.q_values = r.list<double>(eq, "q");
    for (double q : cfg.q_values)
      if (!(q >= 0 && q <= 1))
        throw ParseError(eq.line, "q must lie in [0, 1]");
  }

  if (auto v = r.optional_number<double>("dt")) {
    if (!(*v > 0))
      throw ParseError(r.line_of("dt"), "dt must be positive");
    cfg.dt = *v;
  }

  if (r.has("densities")) {
    const auto& e = r.require("densities", mode);
    cfg.densities = r.list<double>(e, "densities");
    for (double q : cfg.densities)
      if (!(q >= 0 && q <= 1))
        throw ParseError(e.line, "densities must lie in [0, 1]");
  } else if (mode == Mode::Figure1 && r.has("p")) {
    cfg.densities = {cfg.p};
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<Mode> mode) {
  return parse_config(read_text(path), mode);
}

void apply_environment(ExperimentConfig& config) {
  const char* value = std::getenv("LATGAME_SEED");
  if (value == nullptr || *value == '\0')
    return;
  std::uint64_t seed = 0;
  const std::string_view text(value);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(0, "LATGAME_SEED is not an unsigned integer: '" + std::string(text) + "'");
  config.master_seed = seed;
  for (auto& [k, v] : config.entries) {
    if (k == "master_seed") {
      v = std::string(text);
      return;
    }
  }
  config.entries.emplace_back("master_seed", std::string(text));
}

}  // namespace latgame::harness
