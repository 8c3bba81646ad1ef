#include "selftaught/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "selftaught/errors.hpp"

namespace selftaught {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_count(const std::string& key, std::string_view value) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(key, "expected a non-negative integer, got '" + std::string(value) + "'");
  }
  return out;
}

double parse_real(const std::string& key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
    throw ConfigError(key, "expected a finite real number, got '" + std::string(value) + "'");
  }
  return out;
}

std::string format_real(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

Mode parse_mode(std::string_view value) {
  if (value == "EVO") return Mode::Evo;
  if (value == "EVO_SELF_TAUGHT") return Mode::EvoSelfTaught;
  if (value == "SELF_TAUGHT_ALONE") return Mode::SelfTaughtAlone;
  throw ConfigError("mode", "expected EVO, EVO_SELF_TAUGHT or SELF_TAUGHT_ALONE, got '" + std::string(value) + "'");
}

MapKind parse_map(std::string_view value) {
  if (value == "A") return MapKind::A;
  if (value == "B") return MapKind::B;
  throw ConfigError("map", "expected A or B, got '" + std::string(value) + "'");
}

struct Field {
  std::string key;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename Member>
Field count_field(std::string key, Member member) {
  return {key,
          [key, member](ExperimentConfig& c, std::string_view v) { std::invoke(member, c) = parse_count(key, v); },
          [member](const ExperimentConfig& c) { return std::to_string(std::invoke(member, c)); }};
}

template <typename Member>
Field real_field(std::string key, Member member) {
  return {key,
          [key, member](ExperimentConfig& c, std::string_view v) { std::invoke(member, c) = parse_real(key, v); },
          [member](const ExperimentConfig& c) { return format_real(std::invoke(member, c)); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"mode", [](ExperimentConfig& c, std::string_view v) { c.mode = parse_mode(v); },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.mode)); }});
    f.push_back({"map", [](ExperimentConfig& c, std::string_view v) { c.world.map = parse_map(v); },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.world.map)); }});
    f.push_back(count_field("n_generations", [](auto& c) -> auto& { return c.n_generations; }));
    f.push_back(count_field("steps_per_generation", [](auto& c) -> auto& { return c.steps_per_generation; }));
    f.push_back(count_field("n_runs", [](auto& c) -> auto& { return c.n_runs; }));
    f.push_back({"base_seed",
                 [](ExperimentConfig& c, std::string_view v) {
                   std::uint64_t seed = 0;
                   const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
                   if (ec != std::errc{} || ptr != v.data() + v.size()) {
                     throw ConfigError("base_seed", "expected an unsigned 64-bit integer, got '" + std::string(v) + "'");
                   }
                   c.base_seed = seed;
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.base_seed); }});
    f.push_back(real_field("width", [](auto& c) -> auto& { return c.world.width; }));
    f.push_back(real_field("height", [](auto& c) -> auto& { return c.world.height; }));
    f.push_back(count_field("n_agents", [](auto& c) -> auto& { return c.world.n_agents; }));
    f.push_back(count_field("n_food", [](auto& c) -> auto& { return c.world.n_food; }));
    f.push_back(real_field("body_size", [](auto& c) -> auto& { return c.world.body_size; }));
    f.push_back(real_field("vision_radius", [](auto& c) -> auto& { return c.world.vision_radius; }));
    f.push_back(real_field("eat_distance", [](auto& c) -> auto& { return c.world.eat_distance; }));
    f.push_back(real_field("base_speed", [](auto& c) -> auto& { return c.world.base_speed; }));
    f.push_back(real_field("turn_angle", [](auto& c) -> auto& { return c.world.turn_angle; }));
    f.push_back(real_field("spawn_radius", [](auto& c) -> auto& { return c.world.spawn_radius; }));
    f.push_back(count_field("population_size", [](auto& c) -> auto& { return c.evo.population_size; }));
    f.push_back(real_field("mutation_rate", [](auto& c) -> auto& { return c.evo.mutation_rate; }));
    f.push_back(real_field("mutation_amplitude", [](auto& c) -> auto& { return c.evo.mutation_amplitude; }));
    f.push_back(real_field("learning_rate", [](auto& c) -> auto& { return c.learning_rate; }));
    f.push_back(count_field("n_input", [](auto& c) -> auto& { return c.layers.n_input; }));
    f.push_back(count_field("n_hidden", [](auto& c) -> auto& { return c.layers.n_hidden; }));
    f.push_back(count_field("n_output", [](auto& c) -> auto& { return c.layers.n_output; }));
    return f;
  }();
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

ExperimentConfig parse_config(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": missing key");
    if (value.empty()) throw ConfigError(key, "missing value");
    if (!seen.insert(key).second) throw ConfigError(key, "given more than once");
    entries.emplace_back(std::move(key), std::move(value));
  }

  ExperimentConfig config = full_profile();
  for (const auto& [key, value] : entries) {
    if (key != "profile") continue;
    if (value == "full") {
      config = full_profile();
    } else if (value == "desk") {
      config = desk_profile();
    } else {
      throw ConfigError("profile", "expected full or desk, got '" + value + "'");
    }
  }

  const auto& table = fields();
  for (const auto& [key, value] : entries) {
    if (key == "profile") continue;
    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
    if (it == table.end()) throw ConfigError(key, "unknown key");
    it->set(config, value);
  }

  config.validate();
  return config;
}

std::string config_to_text(const ExperimentConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace selftaught
