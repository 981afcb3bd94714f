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

#ifndef SNF_FFT2_HPP_
#define SNF_FFT2_HPP_

#include <complex>

#include "snf/image.hpp"

namespace snf {

using ComplexPlane =
    Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Unnormalized 2-D DFT.
ComplexPlane fft2(const PlaneD& plane);

/// Inverse 2-D DFT (scaled so ifft2(fft2(x)) == x), real part only.
PlaneD ifft2_real(const ComplexPlane& spectrum);

/// Transfer function of periodic convolution with `kernel` on a height x width
/// grid. The kernel centre (rows/2, cols/2) is moved to the origin.
ComplexPlane psf_to_otf(const PlaneD& kernel, Index height, Index width);

/// Transfer function of the periodic difference operator
/// (D x)(y, x) = x(y, x) - x(y + dy, x + dx).
ComplexPlane difference_otf(Index height, Index width, int dy, int dx);

/// Periodic (circular) convolution of `plane` with `kernel`.
PlaneD circular_convolve(const PlaneD& plane, const PlaneD& kernel);

}  // namespace snf

#endif  // SNF_FFT2_HPP_
