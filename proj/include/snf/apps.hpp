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

// Image-editing pipelines composed from the sparse norm filter.

#ifndef SNF_APPS_HPP_
#define SNF_APPS_HPP_

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snf/image.hpp"
#include "snf/image_io.hpp"
#include "snf/sparse_norm_filter.hpp"

namespace snf::apps {

using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using LabelMap = Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// --- detail manipulation ---------------------------------------------------

/// I = base + detail, base the filtered (cartoon) layer.
struct BaseDetail {
  Image base;
  Image detail;
};

BaseDetail base_detail(const Image& img, const FilterParams& params,
                       ColorPolicy policy = ColorPolicy::kLuma);

/// base + factor * detail. Not clamped; saving clamps.
Image detail_boost(const BaseDetail& bd, double factor);

// --- outlier-tolerant smoothing ---------------------------------------------

/// Brute-force pass (approximate global minimizer on the bin grid) followed
/// by one IRLS step taken from that estimate, which averages the original
/// values with weights snf_weight(estimate_i - I_j). Channels are processed
/// independently.
Image outlier_denoise(const Image& img, const FilterParams& params);

// --- HDR compression --------------------------------------------------------

struct HdrOptions {
  double target_contrast = 2.3;  // output base range, decades
  double saturation = 0.6;
};

/// Intermediate log10 layers, exposed for inspection.
struct HdrLayers {
  PlaneD log_luminance;
  PlaneD base;
  PlaneD detail;
  PlaneD compressed_base;  // base rescaled to target_contrast, anchored at max
  PlaneD output_log;       // compressed_base + detail - max(compressed_base + detail)
};

HdrLayers hdr_layers(const PlaneD& luminance, const FilterParams& params,
                     const HdrOptions& opts = {});

/// Tone-maps an HDR image (1 or 3 channels) into [0,1].
Image hdr_compress(const Image& hdr, const FilterParams& params, const HdrOptions& opts = {});

// --- deconvolution ---------------------------------------------------------

/// Odd-sized, non-negative, unit-sum point-spread function.
class Kernel {
 public:
  /// Throws ParameterError unless taps are odd-sized, non-negative and sum to 1.
  explicit Kernel(PlaneD taps);

  /// Rescales non-negative taps to unit sum.
  static Kernel normalized(PlaneD taps);
  static Kernel gaussian(int size, double sigma);
  static Kernel identity();
  /// Plain-text grid, one row of whitespace-separated reals per line.
  static Kernel load(const std::string& path);

  const PlaneD& taps() const { return taps_; }

 private:
  PlaneD taps_;
};

/// Doubling schedule 1, 2, 4, ..., 256.
std::vector<double> default_beta_schedule();

/// Minimizes ||k * I - obs||^2 + (lambda/|N|) sum_i sum_{j in N_i, j != i} |I_i - I_j|^p
/// with periodic boundaries by half-quadratic splitting: one auxiliary
/// variable per window offset, one v-step / I-step sweep per beta.
PlaneD deconvolve_snf(const PlaneD& obs, const Kernel& k, double lambda,
                      const FilterParams& params, std::span<const double> betas = {});

/// Closed-form ||k * I - obs||^2 + lambda ||grad I||^2 baseline.
PlaneD deconvolve_tikhonov(const PlaneD& obs, const Kernel& k, double lambda);

/// Blends the image borders towards a blurred copy so the periodic model
/// does not see a hard seam.
PlaneD edge_taper(const PlaneD& obs, const Kernel& k);

/// Minimizer of beta (v - d)^2 + alpha |v|^p over v.
double shrink_lp(double d, double beta, double alpha, double p);

// --- joint filtering -------------------------------------------------------

Image joint_filter(const Image& img, const Image& guide, const FilterParams& params,
                   ColorPolicy policy = ColorPolicy::kPerChannel);

// --- colorization ----------------------------------------------------------

/// Chroma constraints in YUV space.
struct StrokeMap {
  Mask mask;
  PlaneD u;
  PlaneD v;

  /// Pixels with alpha > 0 in an RGBA overlay become constraints.
  static StrokeMap from_overlay(const RgbaImage& overlay);
  Index count() const { return mask.count(); }
};

/// Spreads stroke chroma over a gray image with guide-weighted averaging,
/// params.iterations rounds (the colorization preset uses 10). Returns an RGB
/// image whose luma is `gray`.
Image colorize(const PlaneD& gray, const StrokeMap& strokes, const FilterParams& params);

/// Diffused (U, V) planes only.
std::pair<PlaneD, PlaneD> diffuse_chroma(const PlaneD& gray, const StrokeMap& strokes,
                                         const FilterParams& params);

// --- seamless cloning ------------------------------------------------------

struct CloneTask {
  Image source;
  Image target;
  Mask region;  // fill-in region, in target coordinates
  Index offset_y = 0;  // target = source shifted by the offset
  Index offset_x = 0;
};

/// Source resampled into target coordinates (edge-clamped outside its bounds).
PlaneD aligned_source(const CloneTask& task, int channel);

/// Jacobi iteration of the non-local Poisson system
///   |N_i| I_i - sum_{j in N_i} I_j = |N_i| J_i - sum_{j in N_i} J_j,  i in region,
/// with pixels outside the region fixed to the target. Starts from the pasted
/// source. When `residuals` is given it receives the relative residual of the
/// starting guess and after every iteration (first channel).
Image seamless_clone(const CloneTask& task, int r, int iters = 10,
                     std::vector<double>* residuals = nullptr);

/// ||LHS - RHS||_2 / ||RHS||_2 over the region for one channel.
double clone_relative_residual(const PlaneD& solution, const PlaneD& source_aligned,
                               const Mask& region, int r);

// --- normalized cut --------------------------------------------------------

/// W x with W_ij = snf_weight(G_i - G_j) for j in the window of i, computed
/// with the quantized O(B N) path.
class AffinityOperator {
 public:
  AffinityOperator(PlaneD guide, const FilterParams& params);

  Index rows() const { return guide_.rows(); }
  Index cols() const { return guide_.cols(); }
  Index size() const { return guide_.size(); }

  /// y_i = sum_{j in N_i} w_ij x_j, x in row-major pixel order.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// Row sums of W.
  const Eigen::VectorXd& degree() const { return degree_; }
  const PlaneD& guide() const { return guide_; }

 private:
  PlaneD weights_for_bin(int b) const;

  PlaneD guide_;
  FilterParams params_;
  QuantGrid grid_;
  Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> lo_;
  PlaneD frac_;
  std::vector<PlaneD> bin_weights_;  // cached when small enough
  Eigen::VectorXd degree_;
};

Eigen::VectorXd affinity_apply(const Eigen::VectorXd& x, const PlaneD& guide,
                               const FilterParams& params);

/// Leading non-trivial eigenvector z of D^-1/2 W D^-1/2 restricted to the
/// pixels in `subset` (all pixels when empty), returned as D^-1/2 z.
/// Entries outside the subset are zero.
Eigen::VectorXd ncut_eigenvector(const AffinityOperator& W, const Mask& subset, int power_iters);

/// Normalized-cut value of splitting `subset` into (in_a, subset \ in_a).
double ncut_value(const AffinityOperator& W, const Mask& subset, const Mask& in_a);

/// Recursive two-way normalized cuts until `segments` labels exist.
LabelMap ncut_segment(const PlaneD& img, int segments, const FilterParams& params,
                      int power_iters = 100);

}  // namespace snf::apps

#endif  // SNF_APPS_HPP_
