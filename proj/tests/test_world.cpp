#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "selftaught/errors.hpp"
#include "selftaught/evolution.hpp"
#include "selftaught/world.hpp"
#include "oracles.hpp"

using namespace selftaught;

namespace {

constexpr double kPi = std::numbers::pi;

double circular_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

AgentState agent_at(double x, double y, double heading) {
  AgentState a;
  a.position = {x, y};
  a.heading = heading;
  return a;
}

std::vector<SelfTaughtController> random_controllers(std::size_t n, Rng& rng) {
  std::vector<SelfTaughtController> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(spawn_phenotype(random_genome(LayerSpec{}, rng), 0.01));
  return out;
}

}  // namespace

TEST_CASE("wrap_position") {
  WorldConfig c;
  CHECK(wrap_position({645, 100}, c) == Vec2{5, 100});
  CHECK(wrap_position({-3, 650}, c) == Vec2{637, 10});
  CHECK(wrap_position({0, 0}, c) == Vec2{0, 0});
  CHECK(wrap_position({640, 1280}, c) == Vec2{0, 0});
  const Vec2 tiny = wrap_position({-1e-17, -1e-17}, c);
  CHECK(tiny.x >= 0.0);
  CHECK(tiny.x < 640.0);
  CHECK(tiny.y < 640.0);
}

TEST_CASE("food regions") {
  WorldConfig c;
  const auto a = food_region(c);
  CHECK(a.x_min == 400.0);
  CHECK(a.x_max == 560.0);
  CHECK(a.y_min == 80.0);
  CHECK(a.y_max == 240.0);
  c.map = MapKind::B;
  const auto b = food_region(c);
  CHECK(b.x_min == 400.0);
  CHECK(b.x_max == 560.0);
  CHECK(b.y_min == 400.0);
  CHECK(b.y_max == 560.0);
}

TEST_CASE("relative_bearing") {
  WorldConfig c;
  CHECK(relative_bearing(agent_at(100, 100, 0), {130, 100}, c) == 0.0);
  CHECK(relative_bearing(agent_at(100, 100, 0), {100, 130}, c) == doctest::Approx(90.0).epsilon(1e-12));
  CHECK(relative_bearing(agent_at(100, 100, 90), {100, 130}, c) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(relative_bearing(agent_at(100, 100, 0), {100, 100}, c) == 0.0);
  // Shortest path crosses the right edge.
  CHECK(relative_bearing(agent_at(630, 100, 0), {5, 100}, c) == 0.0);
  CHECK(relative_bearing(agent_at(5, 100, 0), {630, 100}, c) == doctest::Approx(180.0));

  SUBCASE("matches the atan2 image-scan oracle") {
    Rng rng(314);
    for (int t = 0; t < 5000; ++t) {
      const auto a = agent_at(rng.uniform(0, 640), rng.uniform(0, 640), std::floor(rng.uniform(0, 40)) * 9.0);
      const Vec2 p{rng.uniform(0, 640), rng.uniform(0, 640)};
      const double got = relative_bearing(a, p, c);
      CHECK(got >= 0.0);
      CHECK(got < 360.0);
      CHECK(circular_gap(got, oracle::bearing(a.position, a.heading, p, 640, 640)) < 1e-9);
    }
  }
}

TEST_CASE("sense") {
  WorldConfig c;
  const auto agent = agent_at(100, 100, 0);
  auto at_bearing = [&](double deg, double dist) {
    return Vec2{100 + dist * std::cos(deg * kPi / 180.0), 100 + dist * std::sin(deg * kPi / 180.0)};
  };

  CHECK(sense(agent, std::vector<Vec2>{}, c) == SensoryInput{0, 0, 0});
  CHECK(sense(agent, std::vector<Vec2>{{300, 300}}, c) == SensoryInput{0, 0, 0});
  CHECK(sense(agent, std::vector<Vec2>{at_bearing(0, 20)}, c) == SensoryInput{0, 1, 0});
  CHECK(sense(agent, std::vector<Vec2>{at_bearing(30, 20)}, c) == SensoryInput{0, 0, 1});
  CHECK(sense(agent, std::vector<Vec2>{at_bearing(330, 20)}, c) == SensoryInput{1, 0, 0});
  CHECK(sense(agent, std::vector<Vec2>{at_bearing(90, 20)}, c) == SensoryInput{0, 0, 0});
  CHECK(sense(agent, std::vector<Vec2>{at_bearing(350, 39)}, c) == SensoryInput{0, 1, 0});
  // Only the nearest visible food counts, even when it sits in no band.
  CHECK(sense(agent, std::vector<Vec2>{at_bearing(0, 30), at_bearing(90, 10)}, c) == SensoryInput{0, 0, 0});
  CHECK(sense(agent, std::vector<Vec2>{at_bearing(90, 30), at_bearing(30, 10)}, c) == SensoryInput{0, 0, 1});

  SUBCASE("band boundaries detect nothing") {
    CHECK(classify_bearing(15.0) == SensoryInput{0, 0, 0});
    CHECK(classify_bearing(45.0) == SensoryInput{0, 0, 0});
    CHECK(classify_bearing(315.0) == SensoryInput{0, 0, 0});
    CHECK(classify_bearing(345.0) == SensoryInput{0, 0, 0});
    CHECK(classify_bearing(0.0) == SensoryInput{0, 1, 0});
    CHECK(classify_bearing(14.999) == SensoryInput{0, 1, 0});
    CHECK(classify_bearing(345.001) == SensoryInput{0, 1, 0});
    CHECK(classify_bearing(44.9) == SensoryInput{0, 0, 1});
    CHECK(classify_bearing(315.1) == SensoryInput{1, 0, 0});
    CHECK(classify_bearing(180.0) == SensoryInput{0, 0, 0});
  }

  SUBCASE("matches the brute-force oracle on random configurations") {
    Rng rng(2718);
    int with_signal = 0;
    for (int t = 0; t < 2000; ++t) {
      const auto a = agent_at(rng.uniform(0, 640), rng.uniform(0, 640), std::floor(rng.uniform(0, 40)) * 9.0);
      std::vector<Vec2> foods(1 + rng.index(60));
      // Cluster foods near the agent half the time so sensing fires often.
      for (auto& f : foods) {
        if (t % 2 == 0) {
          f = wrap_position({a.position.x + rng.uniform(-60, 60), a.position.y + rng.uniform(-60, 60)}, c);
        } else {
          f = {rng.uniform(0, 640), rng.uniform(0, 640)};
        }
      }
      const auto got = sense(a, foods, c);
      CHECK(got == oracle::sense(a.position, a.heading, foods, c));
      if (got.left + got.front + got.right > 0) ++with_signal;
    }
    CHECK(with_signal > 100);
  }
}

TEST_CASE("apply_action") {
  WorldConfig c;
  SUBCASE("forward moves at double speed") {
    auto a = agent_at(100, 100, 0);
    apply_action(a, Action::Forward, c);
    CHECK(a.position == Vec2{102, 100});
    CHECK(a.heading == 0.0);
  }
  SUBCASE("turn right from the origin") {
    auto a = agent_at(0, 0, 0);
    apply_action(a, Action::TurnRight, c);
    CHECK(a.heading == 9.0);
    CHECK(a.position.x == doctest::Approx(0.9876883405951378).epsilon(1e-12));
    CHECK(a.position.y == doctest::Approx(0.15643446504023087).epsilon(1e-12));
  }
  SUBCASE("turn left wraps the heading") {
    auto a = agent_at(320, 320, 0);
    apply_action(a, Action::TurnLeft, c);
    CHECK(a.heading == 351.0);
    CHECK(a.position.y < 320.0);
  }
  SUBCASE("left then right restores the heading") {
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
      auto a = agent_at(rng.uniform(0, 640), rng.uniform(0, 640), std::floor(rng.uniform(0, 40)) * 9.0);
      const double h = a.heading;
      apply_action(a, Action::TurnLeft, c);
      apply_action(a, Action::TurnRight, c);
      CHECK(a.heading == h);
    }
  }
  SUBCASE("positions and headings stay in range") {
    Rng rng(9);
    auto a = agent_at(639.5, 0.2, 0);
    for (int t = 0; t < 20000; ++t) {
      apply_action(a, static_cast<Action>(rng.index(3)), c);
      CHECK(a.position.x >= 0.0);
      CHECK(a.position.x < 640.0);
      CHECK(a.position.y >= 0.0);
      CHECK(a.position.y < 640.0);
      CHECK(a.heading >= 0.0);
      CHECK(a.heading < 360.0);
    }
  }
}

TEST_CASE("check_eat") {
  WorldConfig c;
  World w;
  w.config = c;
  w.region = food_region(c);
  w.agents.push_back(agent_at(450, 150, 0));
  Rng rng(17);

  SUBCASE("close food is eaten and respawned in the region") {
    w.foods = {{453, 150}, {500, 200}};
    CHECK(check_eat(w, 0, rng) == 1);
    CHECK(w.agents[0].energy == 1);
    CHECK(w.foods.size() == 2);
    CHECK(w.region.contains(w.foods[0]));
    CHECK(w.foods[0] != Vec2{453, 150});
    CHECK(w.foods[1] == Vec2{500, 200});
  }
  SUBCASE("far food is untouched") {
    w.foods = {{470, 150}};
    CHECK(check_eat(w, 0, rng) == 0);
    CHECK(w.agents[0].energy == 0);
    CHECK(w.foods[0] == Vec2{470, 150});
  }
  SUBCASE("the threshold is inclusive") {
    w.foods = {{460, 150}};
    CHECK(check_eat(w, 0, rng) == 1);
  }
  SUBCASE("every food in reach is eaten in one call") {
    w.foods = {{452, 150}, {450, 155}, {520, 200}, {445, 148}};
    // Brute-force count of foods within eat_distance.
    std::size_t expected = 0;
    for (const auto& f : w.foods) expected += std::hypot(f.x - 450, f.y - 150) <= c.eat_distance ? 1 : 0;
    REQUIRE(expected == 3);
    CHECK(check_eat(w, 0, rng) == expected);
    CHECK(w.agents[0].energy == 3);
    CHECK(w.foods.size() == 4);
    for (const auto& f : w.foods) CHECK(w.region.contains(f));
  }
}

TEST_CASE("init_world") {
  Rng rng(23);
  WorldConfig c;
  auto controllers = random_controllers(c.n_agents, rng);
  const auto w = init_world(c, controllers, rng);
  CHECK(w.agents.size() == 20);
  CHECK(w.foods.size() == 50);
  for (const auto& a : w.agents) {
    CHECK(std::hypot(a.position.x - 160.0, a.position.y - 160.0) <= 40.0);
    CHECK(a.heading == 0.0);
    CHECK(a.energy == 0);
  }
  for (const auto& f : w.foods) {
    CHECK(f.x > 400.0);
    CHECK(f.x < 560.0);
    CHECK(f.y > 80.0);
    CHECK(f.y < 240.0);
  }
  CHECK(w.agents[3].controller.action == controllers[3].action);

  controllers.pop_back();
  CHECK_THROWS_AS(init_world(c, controllers, rng), ConfigError);
}

TEST_CASE("world_step") {
  Rng rng(31);
  WorldConfig c;

  SUBCASE("EVO mode never changes controllers") {
    auto w = init_world(c, random_controllers(c.n_agents, rng), rng);
    std::vector<SelfTaughtController> before;
    for (const auto& a : w.agents) before.push_back(a.controller);
    for (int s = 0; s < 300; ++s) {
      const auto report = world_step(w, StepMode::Evo, rng);
      CHECK(report.teach_calls == 0);
    }
    for (std::size_t i = 0; i < w.agents.size(); ++i) {
      CHECK(w.agents[i].controller.action == before[i].action);
      CHECK(w.agents[i].controller.reinforcement == before[i].reinforcement);
    }
  }

  SUBCASE("energy gained equals respawns and the food count holds") {
    // Put the agents inside the food region so eating happens.
    auto w = init_world(c, random_controllers(c.n_agents, rng), rng);
    for (auto& a : w.agents) a.position = {rng.uniform(400, 560), rng.uniform(80, 240)};
    long total_respawns = 0;
    for (int s = 0; s < 500; ++s) {
      std::vector<long> energy_before;
      for (const auto& a : w.agents) energy_before.push_back(a.energy);
      const auto report = world_step(w, StepMode::SelfTaught, rng);
      long gained = 0;
      for (std::size_t i = 0; i < w.agents.size(); ++i) {
        CHECK(w.agents[i].energy >= energy_before[i]);
        gained += w.agents[i].energy - energy_before[i];
      }
      CHECK(gained == static_cast<long>(report.respawns));
      CHECK(report.teach_calls == w.agents.size());
      CHECK(w.foods.size() == c.n_food);
      for (const auto& f : w.foods) CHECK(w.region.contains(f));
      total_respawns += static_cast<long>(report.respawns);
    }
    CHECK(total_respawns > 0);
  }

  SUBCASE("an agent that never sees food repeats one action") {
    c.map = MapKind::B;
    c.n_agents = 1;
    for (int t = 0; t < 30; ++t) {
      auto w = init_world(c, random_controllers(1, rng), rng);
      const Vec2 start = w.agents[0].position;
      std::vector<Action> actions;
      std::vector<AgentState> states;
      for (int s = 0; s < 2000; ++s) {
        REQUIRE(sense(w.agents[0], w.foods, c) == SensoryInput{});
        actions.push_back(world_step(w, StepMode::Evo, rng).actions[0]);
        states.push_back(w.agents[0]);
      }
      for (Action a : actions) CHECK(a == actions.front());
      if (actions.front() == Action::Forward) {
        for (const auto& st : states) {
          CHECK(st.heading == 0.0);
          CHECK(st.position.y == start.y);
        }
      } else {
        // 40 turns of 9 degrees close the polygon.
        CHECK(std::hypot(states[39].position.x - start.x, states[39].position.y - start.y) < 1e-9);
      }
    }
  }
}

TEST_CASE("toroidal_displacement") {
  WorldConfig c;
  CHECK(toroidal_displacement({0, 0}, {330, 10}, c) == Vec2{-310, 10});
  CHECK(toroidal_displacement({0, 0}, {320, -320}, c) == Vec2{-320, -320});
  CHECK(toroidal_displacement({630, 5}, {5, 635}, c) == Vec2{15, -10});
  // Inputs outside the world still land in the half-open range.
  CHECK(toroidal_displacement({0, 0}, {1285, -650}, c) == Vec2{5, -10});
  Rng rng(21);
  for (int t = 0; t < 2000; ++t) {
    const Vec2 a{rng.uniform(0, 640), rng.uniform(0, 640)};
    const Vec2 b{rng.uniform(0, 640), rng.uniform(0, 640)};
    const Vec2 d = toroidal_displacement(a, b, c);
    const Vec2 o = oracle::image_scan_displacement(a, b, 640, 640);
    CHECK(std::hypot(d.x, d.y) == doctest::Approx(std::hypot(o.x, o.y)).epsilon(1e-12));
  }
}
