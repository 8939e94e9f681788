// Copyright 2026 The vidmix Authors. All rights reserved.
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

#include "cli.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vidmix/batch.hpp"
#include "vidmix/error.hpp"
#include "vidmix/masks.hpp"
#include "vidmix/pipeline.hpp"
#include "vidmix/random.hpp"
#include "vidmix/strategy.hpp"

namespace vidmix::cli {
namespace {

using nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void print_error(std::ostream& err, std::string_view kind,
                 const std::string& message) {
  ordered_json j = {{"error", kind}, {"message", message}};
  err << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
      << '\n';
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// VIDMIX_SEED, when set, overrides --seed.
std::uint64_t effective_seed(std::uint64_t flag_seed) {
  const char* env = std::getenv("VIDMIX_SEED");
  if (env == nullptr || *env == '\0') return flag_seed;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0' || env[0] == '-') {
    throw InvalidArgument(std::string("VIDMIX_SEED is not an unsigned "
                                      "integer: '") +
                          env + "'");
  }
  return static_cast<std::uint64_t>(v);
}

struct AugmentArgs {
  std::string manifest;
  std::string out;
  std::string strategy = "objectmix";
  std::string mode = "train";
  std::string lambda_source = "pasted";
  std::string videomix_label = "realized";
  std::string combined_mask = "spatial";
  std::string interp = "bilinear";
  bool no_hflip = false;
  AugConfig cfg;
};

AugConfig finish_config(AugmentArgs& a) {
  AugConfig cfg = a.cfg;
  cfg.strategy = parse_strategy(a.strategy);
  cfg.mode = a.mode == "val" ? TransformMode::kVal : TransformMode::kTrain;
  cfg.lambda_source = a.lambda_source == "m-prime" ? LambdaSource::kMPrime
                                                   : LambdaSource::kPastedMask;
  cfg.patch_label_source = a.videomix_label == "drawn"
                               ? PatchLabelSource::kDrawn
                               : PatchLabelSource::kRealized;
  cfg.combined_mask_mode = a.combined_mask == "spatiotemporal"
                               ? MaskMode::kSpatiotemporal
                               : MaskMode::kSpatial;
  cfg.pixel_interp = a.interp == "nearest" ? Interpolation::kNearest
                                           : Interpolation::kBilinear;
  cfg.hflip = !a.no_hflip;
  cfg.seed = effective_seed(cfg.seed);
  cfg.validate();
  return cfg;
}

int cmd_augment(AugmentArgs& a, std::ostream& out) {
  const AugConfig cfg = finish_config(a);
  const auto entries = load_manifest(a.manifest);
  const AugmentSummary s = run_augment(entries, cfg, a.out);
  ordered_json j = {{"samples", s.samples},
                    {"batches", s.batches},
                    {"applied_batches", s.applied_batches},
                    {"seed", cfg.seed},
                    {"out", a.out}};
  out << j.dump() << '\n';
  return 0;
}

struct PlanArgs {
  std::size_t batches = 1;
  std::size_t batch_size = 16;
  double p = 1.0;
  std::string strategy = "objectmix";
  std::uint64_t seed = 0;
};

int cmd_plan(const PlanArgs& a, std::ostream& out) {
  const Strategy strategy = parse_strategy(a.strategy);
  const std::uint64_t seed = effective_seed(a.seed);
  for (std::size_t b = 0; b < a.batches; ++b) {
    Rng rng = Rng::derive(seed, stream::kBatchPlan, b);
    out << plan_batch(rng, a.batch_size, a.p, strategy).to_json() << '\n';
  }
  return 0;
}

int cmd_simulate_loss(const std::string& input, std::ostream& out) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!input.empty() && input != "-") {
    file.open(input);
    if (!file) throw IoError("cannot open " + input);
    in = &file;
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out << format_double(simulate_loss_line(line)) << '\n';
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return 0;
}

struct MaskStatsArgs {
  std::string manifest;
  std::vector<std::string> files;
};

int cmd_mask_stats(const MaskStatsArgs& a, std::ostream& out) {
  std::vector<std::pair<std::string, std::filesystem::path>> inputs;
  if (!a.manifest.empty()) {
    for (const auto& e : load_manifest(a.manifest)) {
      inputs.emplace_back(e.id, e.mask_file);
    }
  }
  for (const auto& f : a.files) inputs.emplace_back(f, f);
  if (inputs.empty()) {
    throw InvalidArgument("mask-stats needs --manifest or mask files");
  }
  std::vector<double> spatial;
  std::vector<double> temporal;
  for (const auto& [id, path] : inputs) {
    const MaskStats s = compute_mask_stats(load_mask_file(path));
    spatial.push_back(s.lambda_spatial);
    temporal.push_back(s.lambda_spatiotemporal);
    ordered_json j = {{"clip_id", id},
                      {"lambda_spatial", s.lambda_spatial},
                      {"lambda_spatiotemporal", s.lambda_spatiotemporal}};
    out << j.dump() << '\n';
  }
  ordered_json summary = {{"clips", inputs.size()},
                          {"histogram_spatial", histogram10(spatial)},
                          {"histogram_spatiotemporal", histogram10(temporal)}};
  out << summary.dump() << '\n';
  return 0;
}

int cmd_decode_check(const std::vector<std::string>& files, std::ostream& out,
                     std::ostream& err) {
  int status = 0;
  for (const auto& f : files) {
    try {
      const InstanceMaskSet set = load_mask_file(f);
      std::size_t instances = 0;
      for (const auto& frame : set.frames()) instances += frame.size();
      ordered_json j = {{"file", f},
                        {"ok", true},
                        {"frames", set.frame_count()},
                        {"height", set.height()},
                        {"width", set.width()},
                        {"instances", instances}};
      out << j.dump() << '\n';
    } catch (const Error& e) {
      ordered_json j = {{"file", f},
                        {"ok", false},
                        {"error", to_string(e.kind())},
                        {"message", e.what()}};
      out << j.dump() << '\n';
      if (status == 0) print_error(err, to_string(e.kind()), e.what());
      status = kExitFailure;
    }
  }
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"vidmix: ObjectMix / S-VideoMix video augmentation"};
  app.require_subcommand(1);

  AugmentArgs aug;
  auto* augment = app.add_subcommand(
      "augment", "Compose clips from a manifest and write labels");
  augment->add_option("--manifest", aug.manifest, "Manifest JSON")
      ->required();
  augment->add_option("--out", aug.out, "Output directory")->required();
  augment
      ->add_option("--strategy", aug.strategy,
                   "none|objectmix|objectmix-or|videomix|combined")
      ->check(CLI::IsMember({"none", "objectmix", "objectmix-or",
                             "objectmix_or", "videomix", "combined"}));
  augment->add_option("--p", aug.cfg.p, "Per-batch application probability")
      ->check(CLI::Range(0.0, 1.0));
  augment->add_option("--alpha", aug.cfg.alpha, "VideoMix Beta parameter");
  augment->add_option("--seed", aug.cfg.seed, "Run seed");
  augment->add_option("--clip-len", aug.cfg.clip_len, "Frames per clip");
  augment->add_option("--mode", aug.mode, "train|val")
      ->check(CLI::IsMember({"train", "val"}));
  augment->add_flag("--no-hflip", aug.no_hflip, "Disable horizontal flips");
  augment->add_option("--lambda-source", aug.lambda_source, "pasted|m-prime")
      ->check(CLI::IsMember({"pasted", "m-prime"}));
  augment->add_option("--videomix-label", aug.videomix_label,
                      "realized|drawn")
      ->check(CLI::IsMember({"realized", "drawn"}));
  augment
      ->add_option("--combined-mask", aug.combined_mask,
                   "spatial|spatiotemporal")
      ->check(CLI::IsMember({"spatial", "spatiotemporal"}));
  augment->add_option("--interp", aug.interp, "bilinear|nearest")
      ->check(CLI::IsMember({"bilinear", "nearest"}));
  augment->add_option("--workers", aug.cfg.workers, "Worker threads");
  augment->add_option("--batch-size", aug.cfg.batch_size, "Batch size");
  augment->add_option("--num-classes", aug.cfg.num_classes,
                      "Class count (default: max label + 1)");
  augment->add_option("--resize-min", aug.cfg.resize_min);
  augment->add_option("--resize-max", aug.cfg.resize_max);
  augment->add_option("--crop", aug.cfg.crop);
  augment->add_option("--val-resize", aug.cfg.val_resize);
  augment->add_option("--val-crop", aug.cfg.val_crop);
  augment->add_option("--min-score", aug.cfg.min_score,
                      "Ignore instances scoring below this");

  PlanArgs plan;
  auto* plan_cmd =
      app.add_subcommand("plan", "Emit batch mixing plans as JSON lines");
  plan_cmd->add_option("--batches", plan.batches, "Number of batches");
  plan_cmd->add_option("--batch-size", plan.batch_size, "Batch size");
  plan_cmd->add_option("--p", plan.p, "Application probability")
      ->check(CLI::Range(0.0, 1.0));
  plan_cmd->add_option("--strategy", plan.strategy);
  plan_cmd->add_option("--seed", plan.seed);

  std::string loss_input;
  auto* loss = app.add_subcommand(
      "simulate-loss", "Evaluate mixed batch losses from JSON lines");
  loss->add_option("input", loss_input, "Input file, or - for stdin");

  MaskStatsArgs stats;
  auto* stats_cmd = app.add_subcommand(
      "mask-stats", "Mask coverage per clip under both aggregation modes");
  stats_cmd->add_option("--manifest", stats.manifest);
  stats_cmd->add_option("files", stats.files, "Mask files");

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("decode-check", "Validate mask files");
  check->add_option("files", check_files, "Mask files")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (*augment) return cmd_augment(aug, out);
    if (*plan_cmd) return cmd_plan(plan, out);
    if (*loss) return cmd_simulate_loss(loss_input, out);
    if (*stats_cmd) return cmd_mask_stats(stats, out);
    if (*check) return cmd_decode_check(check_files, out, err);
  } catch (const Error& e) {
    print_error(err, to_string(e.kind()), e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace vidmix::cli
