// Copyright 2026 The intentnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "intentnav/intentnav.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace intentnav;

namespace
{

struct Common
{
  std::uint64_t seed{1};
  std::string config;
  std::string out{"."};
};

void add_common(CLI::App * cmd, Common & c)
{
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--config", c.config, "key=value or JSON settings file");
  cmd->add_option("--out", c.out, "output directory");
}

/// Loads the config and rejects keys no subcommand understands.
Config load_config(const Common & c)
{
  Config cfg;
  if (!c.config.empty()) {
    cfg = Config::load(c.config);
  }
  SweepConfig sweep_probe;
  TrainingSetup setup_probe;
  TrainSchedule schedule_probe;
  apply(cfg, sweep_probe);
  apply(cfg, setup_probe);
  apply(cfg, schedule_probe);
  cfg.check_consumed();
  return cfg;
}

std::string out_path(const Common & c, const std::string & name)
{
  fs::create_directories(c.out);
  return (fs::path(c.out) / name).string();
}

json route_to_json(const std::vector<Vec2> & pts)
{
  json a = json::array();
  for (const auto & p : pts) {
    a.push_back({p.x, p.y});
  }
  return a;
}

std::vector<Vec2> route_from_json(const json & a)
{
  std::vector<Vec2> pts;
  for (const auto & p : a) {
    pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return pts;
}

json trajectory_to_json(const EpisodeSpec & spec, const EpisodeResult & r)
{
  json steps = json::array();
  for (const auto & s : r.trace) {
    steps.push_back({{"x", s.pose.position.x}, {"y", s.pose.position.y}, {"yaw", s.pose.yaw},
        {"phi", s.intent_phi}, {"status", to_string(s.status)}});
  }
  return {
    {"goal_label", spec.goal_label},
    {"start", {spec.start.position.x, spec.start.position.y, spec.start.yaw}},
    {"route", route_to_json(spec.mapping_route)},
    {"final", {r.final_pose.position.x, r.final_pose.position.y, r.final_pose.yaw}},
    {"success", r.success},
    {"steps", steps}};
}

void trajectory_from_json(const json & j, EpisodeSpec & spec, EpisodeResult & r)
{
  spec.goal_label = j.at("goal_label").get<int>();
  const auto & st = j.at("start");
  spec.start = {{st.at(0).get<double>(), st.at(1).get<double>()}, st.at(2).get<double>()};
  spec.mapping_route = route_from_json(j.at("route"));
  const auto & fin = j.at("final");
  r.final_pose = {{fin.at(0).get<double>(), fin.at(1).get<double>()}, fin.at(2).get<double>()};
  r.success = j.at("success").get<bool>();
  for (const auto & s : j.at("steps")) {
    StepRecord rec;
    rec.pose = {{s.at("x").get<double>(), s.at("y").get<double>()}, s.at("yaw").get<double>()};
    rec.intent_phi = s.at("phi").get<double>();
    r.trace.push_back(rec);
  }
}

PolicySet load_policies(const std::string & dir, const std::vector<SweepCell> & cells)
{
  PolicySet set;
  for (const auto & c : cells) {
    if (set.count(c.mode)) {
      continue;
    }
    const auto path = fs::path(dir) / ("weights_" + std::string(to_string(c.mode)) + ".json");
    if (!fs::exists(path)) {
      throw ConfigError("missing weights for mode " + std::string(to_string(c.mode)) + ": " + path.string());
    }
    set[c.mode] = load_weights(path.string());
  }
  return set;
}

int cmd_world_gen(const Common & c)
{
  const Config cfg = load_config(c);
  WorldConfig wc;
  apply(cfg, wc);
  const World w = generate_world(c.seed, wc);
  const auto path = out_path(c, "world.json");
  save_world(w, path);
  std::printf("world seed %llu: %dx%d cells, %zu objects -> %s\n",
    static_cast<unsigned long long>(c.seed), w.grid.width, w.grid.height, w.objects.size(), path.c_str());
  return 0;
}

int cmd_map_build(const Common & c, const std::string & world_file)
{
  const Config cfg = load_config(c);
  TaskConfig tc;
  apply(cfg, tc);
  const World w = load_world(world_file);
  const BaseTrajectory base = make_base_trajectory(w, c.seed, tc);
  save_map(*base.map, out_path(c, "map.json"));
  json route = {{"goal_label", base.goal_label}, {"route", route_to_json(base.route)}};
  json_util::write_file(out_path(c, "route.json"), route.dump(2) + "\n");
  std::printf("map: %zu nodes, %zu edges, goal label %d, route %.2f m -> %s\n",
    base.map->nodes().size(), base.map->edges().size(), base.goal_label, polyline_length(base.route),
    out_path(c, "map.json").c_str());
  return 0;
}

int cmd_plan(const std::string & world_file, const std::string & map_file, int goal_label,
  const std::vector<double> & pose)
{
  const World w = load_world(world_file);
  const TopoGraph map = load_map(map_file);
  const NodeId goal = goal_node_for(map, goal_label);
  if (goal < 0) {
    throw InvalidArgument("goal label " + std::to_string(goal_label) + " is not in the map");
  }
  const DistanceField field = dijkstra_distances(map, goal);
  double dmax = 0.0;
  for (const auto & [id, d] : field.distances()) {
    dmax = std::max(dmax, d);
  }
  std::printf("d-field: goal node %d, %zu/%zu nodes reachable, max d %.3f m\n",
    goal, field.distances().size(), map.nodes().size(), dmax);
  const Pose2 p{{pose.at(0), pose.at(1)}, pose.at(2) * kPi / 180.0};
  const LabelMatcher matcher(map, field);
  const auto view = match_observation(observe(w, p), matcher);
  std::printf("visible mapped nodes: %zu\n", view.nodes.size());
  const PlanResult r = plan_step(map, field, view.nodes, p);
  std::printf("sub-goal: node %d (label %d, d %.3f m)\n", r.subgoal, map.node(r.subgoal).instance_label,
    field.at(r.subgoal));
  std::printf("2-hop node: node %d (label %d, d %.3f m)\n", r.next_hop, map.node(r.next_hop).instance_label,
    field.at(r.next_hop));
  std::printf("intent: phi %.3f deg, z (%.6f, %.6f)\n", r.intent.phi.value() * 180.0 / kPi, r.intent.z.x,
    r.intent.z.y);
  return 0;
}

std::pair<int, int> parse_stage_epochs(const std::string & s)
{
  int a = 0, b = 0;
  char sep = 0;
  std::istringstream in(s);
  if (!(in >> a >> sep >> b) || sep != ',' || a < 0 || b < 0) {
    throw ConfigError("--stage-epochs expects two non-negative integers like 10,30");
  }
  return {a, b};
}

int cmd_train(const Common & c, const std::string & mode_name, const std::string & stage_epochs,
  double lr, const std::string & base_file)
{
  const Config cfg = load_config(c);
  TrainingSetup setup;
  TrainSchedule schedule;
  apply(cfg, setup);
  apply(cfg, schedule);
  schedule.seed = c.seed;
  if (!stage_epochs.empty()) {
    std::tie(schedule.stage1_epochs, schedule.stage2_epochs) = parse_stage_epochs(stage_epochs);
  }
  if (lr > 0.0) {
    schedule.lr = lr;
  }
  const ConditioningMode mode = parse_mode(mode_name);
  const auto data = build_training_set(setup);
  std::printf("training %s on %zu samples\n", mode_name.c_str(), data.size());
  std::optional<PolicyParams> base;
  if (!base_file.empty()) {
    base = load_weights(base_file);
  }
  const TrainResult r = train_policy(data, mode, schedule, {}, base ? &*base : nullptr);
  std::ofstream loss(out_path(c, "loss_" + mode_name + ".csv"));
  loss << "stage,epoch,loss\n";
  for (const auto & h : r.history) {
    loss << h.stage << ',' << h.epoch << ',' << format_double(h.mean_loss) << '\n';
  }
  save_weights(r.params, out_path(c, "weights_" + mode_name + ".json"));
  std::printf("final loss %.6f -> %s\n", r.history.empty() ? 0.0 : r.history.back().mean_loss,
    out_path(c, "weights_" + mode_name + ".json").c_str());
  return 0;
}

int cmd_run(const Common & c, const std::string & weights_dir, int episode, const std::string & task,
  double offset, double alpha, const std::string & mode_name, bool bev)
{
  const Config cfg = load_config(c);
  SweepConfig sc;
  apply(cfg, sc);
  sc.seed = c.seed;
  sc.worlds = episode / sc.goals_per_world + 1;
  const SweepCell cell{parse_task(task), offset, alpha, parse_mode(mode_name), bev};
  sc.cells = {cell};
  const PolicySet policies = load_policies(weights_dir, sc.cells);
  bool found = false;
  sweep_episode(sc, policies, episode, [&](const EpisodeSpec & spec, const EpisodeResult & r) {
      found = true;
      std::printf("episode %d %s: success %d steps %d p %.3f l %.3f d0 %.3f dT %.3f\n", episode,
      cell.task_name().c_str(), r.success ? 1 : 0, r.steps, r.p, r.l, r.d0, r.dT);
      save_world(*spec.world, out_path(c, "world.json"));
      json_util::write_file(out_path(c, "trajectory.json"), trajectory_to_json(spec, r).dump() + "\n");
      std::ofstream svg(out_path(c, "episode.svg"));
      write_trajectory_svg(svg, *spec.world, spec, r);
    });
  if (!found) {
    std::fprintf(stderr, "episode %d: task not available for this base trajectory\n", episode);
    return 1;
  }
  return 0;
}

int cmd_eval(const Common & c, const std::string & weights_dir, bool svgs)
{
  const Config cfg = load_config(c);
  SweepConfig sc;
  apply(cfg, sc);
  sc.seed = c.seed;
  const PolicySet policies = load_policies(weights_dir, sc.cells);
  std::size_t done = 0;
  const auto result = sweep(sc, policies, [&](const SweepCell & cell, int ep, const EpisodeSpec & spec, const EpisodeResult & r) {
        ++done;
        if (svgs) {
          char name[160];
          std::snprintf(name, sizeof(name), "traj_%s_%s_a%g_bev%d_ep%03d.svg", cell.task_name().c_str(),
          std::string(to_string(cell.mode)).c_str(), cell.alpha_deg, cell.bev ? 1 : 0, ep);
          std::ofstream svg(out_path(c, name));
          write_trajectory_svg(svg, *spec.world, spec, r);
        }
      });
  std::ofstream metrics(out_path(c, "metrics.csv"));
  write_metrics_csv(metrics, result);
  std::ofstream aggregate(out_path(c, "aggregate.csv"));
  write_aggregate_csv(aggregate, result);
  std::printf("%zu episodes over %zu cells -> %s\n", done, result.cells.size(), out_path(c, "metrics.csv").c_str());
  write_aggregate_csv(std::cout, result);
  return 0;
}

int cmd_plot(const Common & c, const std::string & world_file, const std::string & trajectory_file)
{
  auto world = std::make_shared<const World>(load_world(world_file));
  EpisodeSpec spec;
  EpisodeResult r;
  try {
    trajectory_from_json(json_util::parse(json_util::read_file(trajectory_file), trajectory_file), spec, r);
  } catch (const json::exception & e) {
    throw ParseError(trajectory_file + ": " + e.what());
  }
  const auto path = out_path(c, fs::path(trajectory_file).stem().string() + ".svg");
  std::ofstream svg(path);
  write_trajectory_svg(svg, *world, spec, r);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"intentnav: intent-conditioned object-centric navigation"};
  app.require_subcommand(1);

  Common world_c, map_c, plan_c, train_c, run_c, eval_c, plot_c;
  auto * world = app.add_subcommand("world", "world files");
  world->require_subcommand(1);
  auto * world_gen = world->add_subcommand("gen", "generate a world");
  add_common(world_gen, world_c);

  auto * map = app.add_subcommand("map", "object maps");
  map->require_subcommand(1);
  auto * map_build = map->add_subcommand("build", "map a demonstration route");
  add_common(map_build, map_c);
  std::string map_world;
  map_build->add_option("--world", map_world, "world file")->required();

  auto * plan = app.add_subcommand("plan", "print the plan at one pose");
  add_common(plan, plan_c);
  std::string plan_world, plan_map;
  int plan_goal = 0;
  std::vector<double> plan_pose;
  plan->add_option("--world", plan_world, "world file")->required();
  plan->add_option("--map", plan_map, "map file")->required();
  plan->add_option("--goal", plan_goal, "goal instance label")->required();
  plan->add_option("--pose", plan_pose, "x y yaw_deg")->expected(3)->required();

  auto * train = app.add_subcommand("train", "train a policy");
  add_common(train, train_c);
  std::string train_mode = "film", stage_epochs, base_weights;
  double lr = 0.0;
  train->add_option("--mode", train_mode, "none|film|film_sign|concat|film_dist");
  train->add_option("--stage-epochs", stage_epochs, "stage1,stage2 epochs");
  train->add_option("--lr", lr, "learning rate");
  train->add_option("--base", base_weights, "weights to start encoder and head from");

  auto * run = app.add_subcommand("run", "run one episode");
  add_common(run, run_c);
  std::string run_weights = ".", run_task = "imitate", run_mode = "film";
  int run_episode_index = 0;
  double run_offset = 0.0, run_alpha = 0.0;
  bool run_bev = true;
  run->add_option("--weights", run_weights, "directory holding weights_<mode>.json");
  run->add_option("--episode", run_episode_index, "episode index");
  run->add_option("--task", run_task, "imitate|alt_goal|shortcut|reverse|opposite");
  run->add_option("--offset", run_offset, "opposite heading offset, degrees");
  run->add_option("--alpha", run_alpha, "intent noise bound, degrees");
  run->add_option("--mode", run_mode, "conditioning mode");
  run->add_option("--bev", run_bev, "waypoint refinement on/off");

  auto * eval = app.add_subcommand("eval", "run the evaluation sweep");
  add_common(eval, eval_c);
  std::string eval_weights = ".";
  bool eval_svg = false;
  eval->add_option("--weights", eval_weights, "directory holding weights_<mode>.json");
  eval->add_flag("--svg", eval_svg, "write a trajectory SVG per episode");

  auto * plot = app.add_subcommand("plot", "plot a saved trajectory");
  add_common(plot, plot_c);
  std::string plot_world, plot_traj;
  plot->add_option("--world", plot_world, "world file")->required();
  plot->add_option("--trajectory", plot_traj, "trajectory file from run")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (world_gen->parsed()) {
      return cmd_world_gen(world_c);
    }
    if (map_build->parsed()) {
      return cmd_map_build(map_c, map_world);
    }
    if (plan->parsed()) {
      return cmd_plan(plan_world, plan_map, plan_goal, plan_pose);
    }
    if (train->parsed()) {
      return cmd_train(train_c, train_mode, stage_epochs, lr, base_weights);
    }
    if (run->parsed()) {
      return cmd_run(run_c, run_weights, run_episode_index, run_task, run_offset, run_alpha, run_mode, run_bev);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_c, eval_weights, eval_svg);
    }
    if (plot->parsed()) {
      return cmd_plot(plot_c, plot_world, plot_traj);
    }
  } catch (const Error & e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
