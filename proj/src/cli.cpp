// Copyright 2026 The SNF Authors. All Rights Reserved.
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

#include "snf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "snf/apps.hpp"
#include "snf/bench.hpp"
#include "snf/image_io.hpp"
#include "snf/parallel.hpp"
#include "snf/presets.hpp"

namespace snf::cli {
namespace {

// Filter flags shared by every subcommand. Unset flags fall back to the
// preset chosen by name or to the subcommand's default preset.
struct FilterFlags {
  std::string preset;
  std::optional<double> p;
  std::optional<int> radius;
  std::optional<int> bins;
  std::optional<double> eps;
  std::optional<int> iterations;
  std::string strategy;
  std::string color = "luma";
  int threads = 0;

  FilterParams resolve(const std::string& fallback, Index height, Index width) const {
    FilterParams fp = find_preset(preset.empty() ? fallback : preset).resolve(height, width);
    if (p) fp.p = *p;
    if (radius) fp.radius = *radius;
    if (bins) fp.bins = *bins;
    if (eps) fp.eps = *eps;
    if (iterations) fp.iterations = *iterations;
    if (strategy == "bruteforce") fp.strategy = Strategy::kBruteForce;
    if (strategy == "irls") fp.strategy = Strategy::kIrls;
    fp.validate();
    return fp;
  }

  ColorPolicy policy() const {
    return color == "per-channel" ? ColorPolicy::kPerChannel : ColorPolicy::kLuma;
  }
};

Image load_ldr(const std::string& path) { return load_image(path, ImageKind::kLdr); }

void save_ldr(const Image& img, const std::string& path) { save_image(img, path, ImageKind::kLdr); }

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Sparse norm filtering: edge-preserving smoothing and its applications", "snf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a key=value file");

  FilterFlags flags;
  app.add_option("--preset", flags.preset, "Named parameter set (see `snf presets`)");
  app.add_option("--p", flags.p, "Norm exponent, 0 < p <= 2");
  app.add_option("--r", flags.radius, "Window radius in pixels");
  app.add_option("--bins", flags.bins, "Quantization bins for the O(B N) paths");
  app.add_option("--eps", flags.eps, "Weight smoothing constant");
  app.add_option("--iters", flags.iterations, "Filter iterations");
  app.add_option("--strategy", flags.strategy, "irls or bruteforce")
      ->check(CLI::IsMember({"irls", "bruteforce"}));
  app.add_option("--color", flags.color, "luma or per-channel")
      ->check(CLI::IsMember({"luma", "per-channel"}));
  app.add_option("--threads", flags.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  std::string in, out, guide_path, aux_path;

  auto* smooth = app.add_subcommand("smooth", "Write the smoothed base layer");
  smooth->add_option("input", in)->required();
  smooth->add_option("output", out)->required();

  double factor = 2.0;
  auto* sharpen = app.add_subcommand("sharpen", "Boost the detail layer: base + factor * detail");
  sharpen->add_option("input", in)->required();
  sharpen->add_option("output", out)->required();
  sharpen->add_option("--factor", factor, "Detail multiplier")->check(CLI::NonNegativeNumber);

  auto* denoise = app.add_subcommand("denoise", "Outlier-tolerant two-stage smoothing");
  denoise->add_option("input", in)->required();
  denoise->add_option("output", out)->required();

  apps::HdrOptions hdr_opts;
  auto* hdr = app.add_subcommand("hdr", "Tone-map a PFM radiance map");
  hdr->add_option("input", in, "PFM file")->required();
  hdr->add_option("output", out)->required();
  hdr->add_option("--contrast", hdr_opts.target_contrast, "Output base range in decades");
  hdr->add_option("--saturation", hdr_opts.saturation, "Chroma saturation exponent");

  double lambda = 0.01;
  bool no_taper = false;
  auto* deconv = app.add_subcommand("deconv", "Non-blind deconvolution with a sparse prior");
  deconv->add_option("input", in)->required();
  deconv->add_option("output", out)->required();
  deconv->add_option("--kernel", aux_path, "Kernel grid file")->required();
  deconv->add_option("--lambda", lambda, "Prior weight")->check(CLI::NonNegativeNumber);
  deconv->add_flag("--no-taper", no_taper, "Skip edge tapering");

  auto* joint = app.add_subcommand("joint", "Filter an image with weights from a guide image");
  joint->add_option("input", in)->required();
  joint->add_option("guide", guide_path)->required();
  joint->add_option("output", out)->required();

  auto* colorize = app.add_subcommand("colorize", "Propagate stroke colours over a gray image");
  colorize->add_option("gray", in)->required();
  colorize->add_option("strokes", aux_path, "RGBA overlay; alpha > 0 marks strokes")->required();
  colorize->add_option("output", out)->required();

  Index offset_x = 0, offset_y = 0;
  int clone_iters = 10;
  auto* seamless = app.add_subcommand("seamless", "Non-local Poisson cloning");
  seamless->add_option("source", in)->required();
  seamless->add_option("target", guide_path)->required();
  seamless->add_option("mask", aux_path, "Binary fill-in region in target coordinates")->required();
  seamless->add_option("output", out)->required();
  seamless->add_option("--offset-x", offset_x, "Source-to-target shift, columns");
  seamless->add_option("--offset-y", offset_y, "Source-to-target shift, rows");
  seamless->add_option("--clone-iters", clone_iters, "Jacobi iterations")->check(CLI::NonNegativeNumber);

  int segments = 2, power_iters = 100;
  auto* segment = app.add_subcommand("segment", "Normalized-cut segmentation");
  segment->add_option("input", in)->required();
  segment->add_option("output", out, "Label image, labels spread over [0,1]")->required();
  segment->add_option("--segments", segments, "Number of segments")->check(CLI::Range(2, 1 << 20));
  segment->add_option("--power-iters", power_iters, "Power iterations per cut")->check(CLI::NonNegativeNumber);

  bench::Config bench_cfg;
  std::string bench_out;
  auto* benchmark = app.add_subcommand("bench", "Time filter passes; CSV op,npixels,B,r,seconds");
  benchmark->add_option("--op", bench_cfg.op)->check(CLI::IsMember({"box", "irls", "bruteforce", "direct"}));
  benchmark->add_option("--sizes", bench_cfg.megapixels, "Image sizes in megapixels")->delimiter(',');
  benchmark->add_option("--reps", bench_cfg.repetitions)->check(CLI::PositiveNumber);
  benchmark->add_option("--out", bench_out, "CSV file (default: stdout)");

  auto* list = app.add_subcommand("presets", "List named parameter sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    set_num_threads(flags.threads);
    if (!flags.preset.empty()) (void)find_preset(flags.preset);
    // Reject bad explicit values before touching any file.
    flags.resolve("smooth", 512, 512);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& p : presets()) std::cout << p.name << "\t" << p.summary << "\n";
    } else if (smooth->parsed() || sharpen->parsed()) {
      const Image img = load_ldr(in);
      const auto bd = apps::base_detail(img, flags.resolve("smooth", img.height(), img.width()),
                                        flags.policy());
      save_ldr(smooth->parsed() ? bd.base : apps::detail_boost(bd, factor), out);
    } else if (denoise->parsed()) {
      const Image img = load_ldr(in);
      save_ldr(apps::outlier_denoise(img, flags.resolve("denoise-sparse", img.height(), img.width())),
               out);
    } else if (hdr->parsed()) {
      const Image img = load_image(in, ImageKind::kHdr);
      save_ldr(apps::hdr_compress(img, flags.resolve("hdr", img.height(), img.width()), hdr_opts),
               out);
    } else if (deconv->parsed()) {
      const Image img = load_ldr(in);
      const apps::Kernel k = apps::Kernel::load(aux_path);
      const FilterParams fp = flags.resolve("deconv", img.height(), img.width());
      std::vector<PlaneD> planes;
      for (const auto& c : img.planes())
        planes.push_back(apps::deconvolve_snf(no_taper ? c : apps::edge_taper(c, k), k, lambda, fp));
      save_ldr(Image(std::move(planes)), out);
    } else if (joint->parsed()) {
      const Image img = load_ldr(in);
      const Image guide = load_ldr(guide_path);
      const ColorPolicy policy =
          app.get_option("--color")->count() ? flags.policy() : ColorPolicy::kPerChannel;
      save_ldr(apps::joint_filter(img, guide, flags.resolve("flash", img.height(), img.width()),
                                  policy),
               out);
    } else if (colorize->parsed()) {
      const Image gray_img = load_ldr(in);
      const PlaneD gray = luma(gray_img);
      const RgbaImage overlay = load_rgba(aux_path);
      if (overlay.color.width() != gray_img.width() || overlay.color.height() != gray_img.height())
        throw ShapeError("stroke overlay and gray image dimensions differ");
      const FilterParams fp = flags.resolve("colorize", gray_img.height(), gray_img.width());
      save_ldr(apps::colorize(gray, apps::StrokeMap::from_overlay(overlay), fp), out);
    } else if (seamless->parsed()) {
      apps::CloneTask task;
      task.source = load_ldr(in);
      task.target = load_ldr(guide_path);
      task.region = luma(load_ldr(aux_path)) > 0.5;
      task.offset_x = offset_x;
      task.offset_y = offset_y;
      const FilterParams fp = flags.resolve("smooth", task.target.height(), task.target.width());
      save_ldr(apps::seamless_clone(task, fp.radius, clone_iters), out);
    } else if (segment->parsed()) {
      const Image img = load_ldr(in);
      const FilterParams fp = flags.resolve("segment", img.height(), img.width());
      const apps::LabelMap labels = apps::ncut_segment(luma(img), segments, fp, power_iters);
      save_ldr(Image(PlaneD(labels.cast<double>() / double(segments - 1))), out);
    } else if (benchmark->parsed()) {
      bench_cfg.bins = flags.bins.value_or(bench_cfg.bins);
      bench_cfg.radius = flags.radius.value_or(bench_cfg.radius);
      bench_cfg.p = flags.p.value_or(bench_cfg.p);
      const auto rows = bench::run(bench_cfg);
      if (bench_out.empty()) {
        bench::write_csv(std::cout, rows);
      } else {
        std::ofstream os(bench_out);
        if (!os) throw IoError("cannot open '" + bench_out + "' for writing");
        bench::write_csv(os, rows);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("snf");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace snf::cli
