#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "selftaught/neural.hpp"
#include "selftaught/rng.hpp"

namespace selftaught {

enum class MapKind { A, B };

std::string_view to_string(MapKind map);

struct WorldConfig {
  double width = 640.0;
  double height = 640.0;
  std::size_t n_agents = 20;
  std::size_t n_food = 50;
  double body_size = 10.0;
  double vision_radius = 40.0;
  double eat_distance = 10.0;
  double base_speed = 1.0;
  double turn_angle = 9.0;  // degrees
  double spawn_radius = 40.0;
  MapKind map = MapKind::A;

  /// Throws ConfigError naming the first non-positive field.
  void validate() const;

  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Open rectangle foods are sampled from.
struct FoodRegion {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool contains(const Vec2& p) const {
    return p.x > x_min && p.x < x_max && p.y > y_min && p.y < y_max;
  }
};

FoodRegion food_region(const WorldConfig& config);

struct AgentState {
  Vec2 position;
  double heading = 0.0;  // degrees in [0, 360), clockwise in a y-down frame
  long energy = 0;
  SelfTaughtController controller;
};

struct World {
  WorldConfig config;
  FoodRegion region;
  std::vector<AgentState> agents;
  std::vector<Vec2> foods;
};

/// Learning regime applied inside world_step.
enum class StepMode { Evo, SelfTaught };

/// What happened during one world_step.
struct StepReport {
  std::vector<Action> actions;  // per agent, index order
  std::size_t respawns = 0;
  std::size_t teach_calls = 0;
};

double normalize_degrees(double degrees);

Vec2 wrap_position(Vec2 p, const WorldConfig& config);

/// Shortest displacement from `from` to `to` on the torus; each component
/// lies in [-extent/2, extent/2).
Vec2 toroidal_displacement(Vec2 from, Vec2 to, const WorldConfig& config);

double toroidal_distance(Vec2 a, Vec2 b, const WorldConfig& config);
double toroidal_distance_squared(Vec2 a, Vec2 b, const WorldConfig& config);

/// Clockwise angle in [0, 360) from the agent's heading to the shortest
/// toroidal displacement toward `target`. Coincident points give 0.
double relative_bearing(const AgentState& agent, Vec2 target, const WorldConfig& config);

/// Maps a bearing onto the sensor bands: front (< 15 or > 345), right
/// (15, 45), left (315, 345). Boundary values and the rear arc set nothing.
SensoryInput classify_bearing(double theta);

/// Nearest visible food decides the single active sensor.
SensoryInput sense(const AgentState& agent, std::span<const Vec2> foods, const WorldConfig& config);

/// Turns (for the turning actions), then advances along the new heading:
/// one base_speed for turns, two for Forward.
void apply_action(AgentState& agent, Action action, const WorldConfig& config);

/// Eats every food within eat_distance of agent `agent_index`, respawning
/// each inside the region at a different location. Returns foods eaten.
std::size_t check_eat(World& world, std::size_t agent_index, Rng& rng);

/// Places agents in the spawn disc around (width/4, height/4) with heading 0
/// and zero energy, then samples n_food foods in the map's region.
/// Draw order: per agent (radius, angle), then per food (x, y).
World init_world(const WorldConfig& config, std::vector<SelfTaughtController> controllers, Rng& rng);

/// Advances every agent once, in index order: sense, act, eat, and in
/// SelfTaught mode one teaching step on the sensed input.
StepReport world_step(World& world, StepMode mode, Rng& rng);

}  // namespace selftaught
