#include "selftaught/world.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "selftaught/errors.hpp"

namespace selftaught {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double wrap_coordinate(double v, double extent) {
  double r = std::fmod(v, extent);
  if (r < 0.0) r += extent;
  // fmod of a tiny negative plus extent can round up to extent itself.
  if (r >= extent) r = 0.0;
  return r;
}

Vec2 sample_in_region(const FoodRegion& region, Rng& rng) {
  for (;;) {
    Vec2 p{rng.uniform(region.x_min, region.x_max), rng.uniform(region.y_min, region.y_max)};
    if (region.contains(p)) return p;
  }
}

}  // namespace

std::string_view to_string(MapKind map) { return map == MapKind::A ? "A" : "B"; }

void WorldConfig::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be a positive finite number");
  };
  positive(width, "width");
  positive(height, "height");
  positive(body_size, "body_size");
  positive(vision_radius, "vision_radius");
  positive(eat_distance, "eat_distance");
  positive(base_speed, "base_speed");
  positive(turn_angle, "turn_angle");
  positive(spawn_radius, "spawn_radius");
  if (n_agents == 0) throw ConfigError("n_agents", "must be at least 1");
  if (n_food == 0) throw ConfigError("n_food", "must be at least 1");
}

FoodRegion food_region(const WorldConfig& config) {
  const double w = config.width;
  const double h = config.height;
  if (config.map == MapKind::A) return {w * 5.0 / 8.0, w * 7.0 / 8.0, h * 1.0 / 8.0, h * 3.0 / 8.0};
  return {w * 5.0 / 8.0, w * 7.0 / 8.0, h * 5.0 / 8.0, h * 7.0 / 8.0};
}

double normalize_degrees(double degrees) { return wrap_coordinate(degrees, 360.0); }

Vec2 wrap_position(Vec2 p, const WorldConfig& config) {
  return {wrap_coordinate(p.x, config.width), wrap_coordinate(p.y, config.height)};
}

Vec2 toroidal_displacement(Vec2 from, Vec2 to, const WorldConfig& config) {
  auto shortest = [](double d, double extent) {
    const double half = 0.5 * extent;
    if (d >= half) {
      d -= extent;
    } else if (d < -half) {
      d += extent;
    }
    // Only reachable for unwrapped inputs.
    if (d >= half || d < -half) d -= extent * std::floor(d / extent + 0.5);
    return d;
  };
  return {shortest(to.x - from.x, config.width), shortest(to.y - from.y, config.height)};
}

double toroidal_distance(Vec2 a, Vec2 b, const WorldConfig& config) {
  return std::sqrt(toroidal_distance_squared(a, b, config));
}

double toroidal_distance_squared(Vec2 a, Vec2 b, const WorldConfig& config) {
  const Vec2 d = toroidal_displacement(a, b, config);
  return d.x * d.x + d.y * d.y;
}

double relative_bearing(const AgentState& agent, Vec2 target, const WorldConfig& config) {
  const Vec2 d = toroidal_displacement(agent.position, target, config);
  if (d.x == 0.0 && d.y == 0.0) return 0.0;
  return normalize_degrees(std::atan2(d.y, d.x) * kRadToDeg - agent.heading);
}

SensoryInput classify_bearing(double theta) {
  SensoryInput s;
  if (theta < 15.0 || theta > 345.0) {
    s.front = 1;
  } else if (theta > 15.0 && theta < 45.0) {
    s.right = 1;
  } else if (theta > 315.0 && theta < 345.0) {
    s.left = 1;
  }
  return s;
}

SensoryInput sense(const AgentState& agent, std::span<const Vec2> foods, const WorldConfig& config) {
  const Vec2* nearest = nullptr;
  double nearest_distance = std::numeric_limits<double>::infinity();
  const double reach = config.vision_radius * config.vision_radius;
  for (const auto& food : foods) {
    const double d = toroidal_distance_squared(agent.position, food, config);
    if (d <= reach && d < nearest_distance) {
      nearest = &food;
      nearest_distance = d;
    }
  }
  if (nearest == nullptr) return {};
  return classify_bearing(relative_bearing(agent, *nearest, config));
}

void apply_action(AgentState& agent, Action action, const WorldConfig& config) {
  double step = config.base_speed;
  switch (action) {
    case Action::TurnLeft: agent.heading = normalize_degrees(agent.heading - config.turn_angle); break;
    case Action::TurnRight: agent.heading = normalize_degrees(agent.heading + config.turn_angle); break;
    case Action::Forward: step = 2.0 * config.base_speed; break;
  }
  const double rad = agent.heading * kDegToRad;
  agent.position = wrap_position(
      {agent.position.x + step * std::cos(rad), agent.position.y + step * std::sin(rad)}, config);
}

std::size_t check_eat(World& world, std::size_t agent_index, Rng& rng) {
  auto& agent = world.agents.at(agent_index);
  std::size_t eaten = 0;
  const double reach = world.config.eat_distance * world.config.eat_distance;
  for (auto& food : world.foods) {
    if (toroidal_distance_squared(agent.position, food, world.config) > reach) continue;
    Vec2 replacement = sample_in_region(world.region, rng);
    while (replacement == food) replacement = sample_in_region(world.region, rng);
    food = replacement;
    ++eaten;
  }
  agent.energy += static_cast<long>(eaten);
  return eaten;
}

World init_world(const WorldConfig& config, std::vector<SelfTaughtController> controllers, Rng& rng) {
  config.validate();
  if (controllers.size() != config.n_agents) {
    throw ConfigError("n_agents", "expected " + std::to_string(config.n_agents) + " controllers, got " +
                                      std::to_string(controllers.size()));
  }

  World world;
  world.config = config;
  world.region = food_region(config);
  world.agents.reserve(config.n_agents);
  const Vec2 centre{config.width / 4.0, config.height / 4.0};
  for (auto& controller : controllers) {
    const double r = config.spawn_radius * std::sqrt(rng.uniform01());
    const double phi = 2.0 * std::numbers::pi * rng.uniform01();
    AgentState agent;
    agent.position = wrap_position({centre.x + r * std::cos(phi), centre.y + r * std::sin(phi)}, config);
    agent.heading = 0.0;
    agent.energy = 0;
    agent.controller = std::move(controller);
    world.agents.push_back(std::move(agent));
  }
  world.foods.reserve(config.n_food);
  for (std::size_t i = 0; i < config.n_food; ++i) world.foods.push_back(sample_in_region(world.region, rng));
  return world;
}

StepReport world_step(World& world, StepMode mode, Rng& rng) {
  StepReport report;
  report.actions.reserve(world.agents.size());
  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    auto& agent = world.agents[i];
    const SensoryInput input = sense(agent, world.foods, world.config);
    const Action action = choose_action(forward(agent.controller.action, input));
    apply_action(agent, action, world.config);
    report.respawns += check_eat(world, i, rng);
    if (mode == StepMode::SelfTaught) {
      self_teach(agent.controller, input);
      ++report.teach_calls;
    }
    report.actions.push_back(action);
  }
  return report;
}

}  // namespace selftaught
