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

#include "snf/fft2.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <vector>

namespace snf {
namespace {

// Transforms every row, then every column, in place.
void transform2(ComplexPlane& a, bool inverse) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in, out;
  in.resize(static_cast<size_t>(a.cols()));
  for (Index y = 0; y < a.rows(); ++y) {
    for (Index x = 0; x < a.cols(); ++x) in[static_cast<size_t>(x)] = a(y, x);
    inverse ? fft.inv(out, in) : fft.fwd(out, in);
    for (Index x = 0; x < a.cols(); ++x) a(y, x) = out[static_cast<size_t>(x)];
  }
  in.resize(static_cast<size_t>(a.rows()));
  for (Index x = 0; x < a.cols(); ++x) {
    for (Index y = 0; y < a.rows(); ++y) in[static_cast<size_t>(y)] = a(y, x);
    inverse ? fft.inv(out, in) : fft.fwd(out, in);
    for (Index y = 0; y < a.rows(); ++y) a(y, x) = out[static_cast<size_t>(y)];
  }
}

}  // namespace

ComplexPlane fft2(const PlaneD& plane) {
  ComplexPlane a = plane.cast<std::complex<double>>();
  transform2(a, false);
  return a;
}

PlaneD ifft2_real(const ComplexPlane& spectrum) {
  ComplexPlane a = spectrum;
  transform2(a, true);
  return a.real();
}

ComplexPlane psf_to_otf(const PlaneD& kernel, Index height, Index width) {
  if (kernel.rows() > height || kernel.cols() > width)
    throw ShapeError("kernel larger than the image");
  PlaneD padded = PlaneD::Zero(height, width);
  const Index cy = kernel.rows() / 2, cx = kernel.cols() / 2;
  for (Index y = 0; y < kernel.rows(); ++y)
    for (Index x = 0; x < kernel.cols(); ++x)
      padded((y - cy + height) % height, (x - cx + width) % width) += kernel(y, x);
  return fft2(padded);
}

ComplexPlane difference_otf(Index height, Index width, int dy, int dx) {
  ComplexPlane otf(height, width);
  const double two_pi = 2.0 * std::numbers::pi;
  for (Index v = 0; v < height; ++v)
    for (Index u = 0; u < width; ++u) {
      const double phase = two_pi * (double(v) * dy / double(height) + double(u) * dx / double(width));
      otf(v, u) = 1.0 - std::polar(1.0, phase);
    }
  return otf;
}

PlaneD circular_convolve(const PlaneD& plane, const PlaneD& kernel) {
  return ifft2_real(fft2(plane) * psf_to_otf(kernel, plane.rows(), plane.cols()));
}

}  // namespace snf
