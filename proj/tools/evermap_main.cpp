/*
 * Copyright 2026 The Evermap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// evermap command-line tool. Talks to the library exclusively through the
// C interface in evermap/evermap.h.
//
// Exit codes: 0 success, 2 configuration/parse/usage error, 3 route not
// traversable, 4 no usable in-pipe data.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "evermap/evermap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNoData = 4;

int exit_code_for(evermap_status status) {
  switch (status) {
    case EVERMAP_OK:
      return kExitOk;
    case EVERMAP_ERR_INFEASIBLE:
      return kExitInfeasible;
    case EVERMAP_ERR_NO_IN_PIPE_SAMPLES:
    case EVERMAP_ERR_ILL_POSED:
      return kExitNoData;
    default:
      return kExitConfig;
  }
}

int report_failure(evermap_status status) {
  std::cerr << "evermap: " << evermap_status_name(status) << ": " << evermap_last_error()
            << "\n";
  return exit_code_for(status);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using RoutePtr = std::unique_ptr<evermap_route, Deleter<evermap_route, evermap_route_free>>;
using RobotPtr = std::unique_ptr<evermap_robot, Deleter<evermap_robot, evermap_robot_free>>;
using ScenePtr = std::unique_ptr<evermap_scene, Deleter<evermap_scene, evermap_scene_free>>;
using TracePtr = std::unique_ptr<evermap_trace, Deleter<evermap_trace, evermap_trace_free>>;
using MapPtr = std::unique_ptr<evermap_map, Deleter<evermap_map, evermap_map_free>>;
using StringPtr = std::unique_ptr<char, Deleter<char, evermap_string_free>>;

struct Paths {
  std::string route;
  std::string robot;
  std::string sources;
};

// Missing paths default to <EVERMAP_CONFIG_DIR>/{route,robot,sources}.cfg;
// relative paths that do not exist locally are also looked up there.
std::string resolve(const std::string& given, const char* fallback) {
  const char* dir = std::getenv("EVERMAP_CONFIG_DIR");
  if (given.empty()) {
    if (dir == nullptr) return {};
    return (std::filesystem::path(dir) / fallback).string();
  }
  if (dir != nullptr && !std::filesystem::exists(given) &&
      std::filesystem::path(given).is_relative()) {
    const auto candidate = std::filesystem::path(dir) / given;
    if (std::filesystem::exists(candidate)) return candidate.string();
  }
  return given;
}

bool require(const std::string& path, const char* flag) {
  if (!path.empty()) return true;
  std::cerr << "evermap: " << flag << " is required (or set EVERMAP_CONFIG_DIR)\n";
  return false;
}

bool write_file(const std::string& path, const char* data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << data;
  if (!out) {
    std::cerr << "evermap: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

struct Loaded {
  RoutePtr route;
  RobotPtr robot;
  ScenePtr scene;
};

// Loads whichever of route/robot/scene were requested.
std::optional<int> load(const Paths& paths, bool need_route, bool need_scene, Loaded& out) {
  evermap_status st;
  if (need_route) {
    if (!require(paths.route, "--route")) return kExitConfig;
    evermap_route* route = nullptr;
    if ((st = evermap_route_load(paths.route.c_str(), &route)) != EVERMAP_OK) {
      return report_failure(st);
    }
    out.route.reset(route);
  }
  if (!require(paths.robot, "--robot")) return kExitConfig;
  evermap_robot* robot = nullptr;
  if ((st = evermap_robot_load(paths.robot.c_str(), &robot)) != EVERMAP_OK) {
    return report_failure(st);
  }
  out.robot.reset(robot);
  if (need_scene || !paths.sources.empty()) {
    if (!require(paths.sources, "--sources")) return kExitConfig;
    evermap_scene* scene = nullptr;
    if ((st = evermap_scene_load(paths.sources.c_str(), out.route.get(), &scene)) !=
        EVERMAP_OK) {
      return report_failure(st);
    }
    out.scene.reset(scene);
  }
  return std::nullopt;
}

void print_verdict(const evermap_verdict& v) {
  if (v.feasible) {
    std::cout << "feasible\n";
    return;
  }
  const char* reason = v.reason == EVERMAP_BLOCK_SHARP_BEND ? "sharp-bend" : "bore";
  std::printf("infeasible: blocked at s=%.9g m (segment %zu, %s): %s\n", v.blocker_s,
              v.blocker_segment + 1, reason, v.description);
}

std::string with_seed(const std::string& out, std::uint64_t seed) {
  std::filesystem::path p(out);
  const std::string name = p.stem().string() + "_" + std::to_string(seed) + p.extension().string();
  return (p.parent_path() / name).string();
}

int run_simulate_one(const Loaded& cfg, evermap_sim_options opts, const std::string& out) {
  evermap_trace* raw = nullptr;
  evermap_verdict verdict;
  const evermap_status st =
      evermap_simulate(cfg.route.get(), cfg.robot.get(), cfg.scene.get(), &opts, &raw, &verdict);
  TracePtr trace(raw);
  if (st != EVERMAP_OK && st != EVERMAP_ERR_INFEASIBLE) return report_failure(st);
  if (trace) {
    const evermap_status save = evermap_trace_save(trace.get(), out.c_str());
    if (save != EVERMAP_OK) return report_failure(save);
  }
  if (st == EVERMAP_ERR_INFEASIBLE) {
    print_verdict(verdict);
    std::cerr << "evermap: partial trace written to " << out << "\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

// Parses "a..b" into an inclusive range.
bool parse_seed_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return false;
  try {
    std::size_t used = 0;
    lo = std::stoull(text.substr(0, dots), &used);
    if (used != dots) return false;
    const std::string rest = text.substr(dots + 2);
    hi = std::stoull(rest, &used);
    return used == rest.size() && lo <= hi;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eversion-robot pipe survey: simulate, map, plot, feasibility"};
  app.require_subcommand(1);

  Paths paths;
  std::uint64_t seed = 0;
  std::string seeds;
  std::string out;
  std::string trace_path;
  double sample_rate = 100.0;
  double crank_speed = 0.05;
  double bin_width = 0.01;
  bool include_retract = false;

  auto* simulate = app.add_subcommand("simulate", "synthesise a trace CSV");
  simulate->add_option("--route", paths.route, "route config");
  simulate->add_option("--robot", paths.robot, "robot config");
  simulate->add_option("--sources", paths.sources, "sources/sensor config");
  simulate->add_option("--seed", seed, "random seed");
  simulate->add_option("--seeds", seeds, "batch seed range a..b");
  simulate->add_option("--out", out, "trace CSV to write")->default_val("trace.csv");
  simulate->add_option("--sample-rate", sample_rate, "samples per second");
  simulate->add_option("--crank-speed", crank_speed, "tip speed, m/s");

  auto* map = app.add_subcommand("map", "localise sources from a trace");
  map->add_option("trace", trace_path, "trace CSV")->required();
  map->add_option("--route", paths.route, "route config");
  map->add_option("--robot", paths.robot, "robot config");
  map->add_option("--sources", paths.sources, "config whose [sensor] section calibrates readings");
  map->add_option("--out", out, "report prefix (<prefix>.txt, <prefix>.kv)")->default_val("report");
  map->add_option("--bin-width", bin_width, "profile bin width, m");
  map->add_flag("--include-retract", include_retract, "keep retraction samples");

  auto* plot = app.add_subcommand("plot", "render the profile as SVG");
  plot->add_option("trace", trace_path, "trace CSV")->required();
  plot->add_option("--robot", paths.robot, "robot config");
  plot->add_option("--sources", paths.sources, "config whose [sensor] section calibrates readings");
  plot->add_option("--out", out, "SVG to write")->default_val("profile.svg");
  plot->add_option("--bin-width", bin_width, "profile bin width, m");
  plot->add_flag("--include-retract", include_retract, "keep retraction samples");

  auto* feasibility = app.add_subcommand("feasibility", "check whether a robot can traverse a route");
  feasibility->add_option("--route", paths.route, "route config");
  feasibility->add_option("--robot", paths.robot, "robot config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  paths.route = resolve(paths.route, "route.cfg");
  paths.robot = resolve(paths.robot, "robot.cfg");
  paths.sources = resolve(paths.sources, "sources.cfg");

  evermap_map_options map_opts;
  evermap_map_options_init(&map_opts);
  map_opts.bin_width_m = bin_width;
  map_opts.include_retract = include_retract ? 1 : 0;

  Loaded cfg;
  if (*feasibility) {
    if (auto code = load(paths, true, false, cfg)) return *code;
    evermap_verdict verdict;
    const evermap_status st = evermap_check_feasibility(cfg.robot.get(), cfg.route.get(), &verdict);
    if (st != EVERMAP_OK) return report_failure(st);
    print_verdict(verdict);
    return verdict.feasible ? kExitOk : kExitInfeasible;
  }

  if (*simulate) {
    if (auto code = load(paths, true, true, cfg)) return *code;
    evermap_sim_options opts;
    evermap_sim_options_init(&opts);
    opts.seed = seed;
    opts.sample_rate_hz = sample_rate;
    opts.crank_speed_mps = crank_speed;
    if (seeds.empty()) return run_simulate_one(cfg, opts, out);

    std::uint64_t lo = 0, hi = 0;
    if (!parse_seed_range(seeds, lo, hi)) {
      std::cerr << "evermap: --seeds expects a..b\n";
      return kExitConfig;
    }
    // Independent runs, at most one per hardware thread; the exit code is
    // the first non-zero one in seed order.
    const std::uint64_t count = hi - lo + 1;
    std::vector<int> codes(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 20)),
                           kExitOk);
    if (count > codes.size()) {
      std::cerr << "evermap: --seeds range is too large\n";
      return kExitConfig;
    }
    std::atomic<std::size_t> next{0};
    const std::size_t workers = std::clamp<std::size_t>(
        std::thread::hardware_concurrency(), 1, codes.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < codes.size(); i = next++) {
          evermap_sim_options o = opts;
          o.seed = lo + i;
          codes[i] = run_simulate_one(cfg, o, with_seed(out, o.seed));
        }
      });
    }
    for (std::thread& t : pool) t.join();
    int code = kExitOk;
    for (int c : codes) {
      if (code == kExitOk) code = c;
    }
    return code;
  }

  evermap_trace* raw_trace = nullptr;
  evermap_status st = evermap_trace_load(trace_path.c_str(), &raw_trace);
  TracePtr trace(raw_trace);
  if (st != EVERMAP_OK) return report_failure(st);

  if (*map) {
    if (auto code = load(paths, true, false, cfg)) return *code;
    evermap_map* raw_map = nullptr;
    st = evermap_localize(trace.get(), cfg.robot.get(), cfg.route.get(), cfg.scene.get(),
                          &map_opts, &raw_map);
    MapPtr result(raw_map);
    if (st != EVERMAP_OK) return report_failure(st);
    char* text = nullptr;
    char* kv = nullptr;
    if ((st = evermap_map_report_text(result.get(), &text)) != EVERMAP_OK) return report_failure(st);
    StringPtr text_owner(text);
    if ((st = evermap_map_report_kv(result.get(), &kv)) != EVERMAP_OK) return report_failure(st);
    StringPtr kv_owner(kv);
    std::cout << text;
    if (!write_file(out + ".txt", text) || !write_file(out + ".kv", kv)) return kExitConfig;
    return kExitOk;
  }

  // plot
  if (auto code = load(paths, false, false, cfg)) return *code;
  evermap_map* raw_map = nullptr;
  st = evermap_profile(trace.get(), cfg.robot.get(), cfg.scene.get(), &map_opts, &raw_map);
  MapPtr result(raw_map);
  if (st != EVERMAP_OK) return report_failure(st);
  char* svg = nullptr;
  if ((st = evermap_map_svg(result.get(), &svg)) != EVERMAP_OK) return report_failure(st);
  StringPtr svg_owner(svg);
  return write_file(out, svg) ? kExitOk : kExitConfig;
}
