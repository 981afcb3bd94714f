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

#include "snf/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace snf {
namespace {

// Interleaved integer codes as stored in an LDR file.
struct Codes {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 gray, 2 gray+alpha, 3 rgb, 4 rgba
  int maxval = 255;
  std::vector<uint16_t> data;
};

std::string extension(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path + "'");
  return f;
}

// --- PNG -------------------------------------------------------------------

Codes read_png(const std::string& path) {
  FilePtr file = open_file(path, "rb");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw FormatError("'" + path + "' is not a PNG file");

  Codes out;
  std::vector<png_byte> buffer;
  std::vector<png_bytep> rows;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("corrupt PNG file '" + path + "'");
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (depth == 16 && std::endian::native == std::endian::little) png_set_swap(png);
  png_read_update_info(png, info);

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  const int out_depth = png_get_bit_depth(png, info);
  if (out_depth != 8 && out_depth != 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("unsupported PNG bit depth in '" + path + "'");
  }
  out.maxval = out_depth == 16 ? 65535 : 255;
  const size_t stride = png_get_rowbytes(png, info);
  buffer.resize(stride * static_cast<size_t>(out.height));
  rows.resize(static_cast<size_t>(out.height));
  for (int y = 0; y < out.height; ++y) rows[static_cast<size_t>(y)] = buffer.data() + stride * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const size_t n = static_cast<size_t>(out.width) * out.height * out.channels;
  out.data.resize(n);
  if (out_depth == 8) {
    for (size_t i = 0; i < n; ++i) out.data[i] = buffer[i];
  } else {
    for (size_t i = 0; i < n; ++i) std::memcpy(&out.data[i], buffer.data() + 2 * i, 2);
  }
  return out;
}

void write_png(const std::string& path, const Codes& codes) {
  FilePtr file = open_file(path, "wb");
  const int depth = codes.maxval > 255 ? 16 : 8;
  const size_t stride = static_cast<size_t>(codes.width) * codes.channels * (depth / 8);
  std::vector<png_byte> buffer(stride * static_cast<size_t>(codes.height));
  for (size_t i = 0; i < codes.data.size(); ++i) {
    if (depth == 8) {
      buffer[i] = static_cast<png_byte>(codes.data[i]);
    } else {
      buffer[2 * i] = static_cast<png_byte>(codes.data[i] >> 8);  // PNG is big-endian
      buffer[2 * i + 1] = static_cast<png_byte>(codes.data[i] & 0xff);
    }
  }
  std::vector<png_bytep> rows(static_cast<size_t>(codes.height));
  for (int y = 0; y < codes.height; ++y) rows[static_cast<size_t>(y)] = buffer.data() + stride * y;

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("failed writing PNG '" + path + "'");
  }
  png_init_io(png, file.get());
  const int color = codes.channels == 1   ? PNG_COLOR_TYPE_GRAY
                    : codes.channels == 2 ? PNG_COLOR_TYPE_GRAY_ALPHA
                    : codes.channels == 3 ? PNG_COLOR_TYPE_RGB
                                          : PNG_COLOR_TYPE_RGBA;
  png_set_IHDR(png, info, static_cast<png_uint_32>(codes.width),
               static_cast<png_uint_32>(codes.height), depth, color, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// --- PGM / PPM -------------------------------------------------------------

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

Codes read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  const std::string magic = pnm_token(in);
  Codes out;
  if (magic == "P5") {
    out.channels = 1;
  } else if (magic == "P6") {
    out.channels = 3;
  } else {
    throw FormatError("'" + path + "' is not a binary PGM/PPM file");
  }
  try {
    out.width = std::stoi(pnm_token(in));
    out.height = std::stoi(pnm_token(in));
    out.maxval = std::stoi(pnm_token(in));
  } catch (const std::exception&) {
    throw FormatError("malformed PNM header in '" + path + "'");
  }
  if (out.width < 1 || out.height < 1 || out.maxval < 1 || out.maxval > 65535)
    throw FormatError("unsupported PNM dimensions or bit depth in '" + path + "'");
  const size_t n = static_cast<size_t>(out.width) * out.height * out.channels;
  const size_t bytes = out.maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(n * bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<size_t>(in.gcount()) != raw.size())
    throw FormatError("truncated PNM data in '" + path + "'");
  out.data.resize(n);
  for (size_t i = 0; i < n; ++i)
    out.data[i] = bytes == 1 ? raw[i] : static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
  return out;
}

void write_pnm(const std::string& path, const Codes& codes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << (codes.channels == 1 ? "P5" : "P6") << '\n'
     << codes.width << ' ' << codes.height << '\n'
     << codes.maxval << '\n';
  std::vector<unsigned char> raw;
  raw.reserve(codes.data.size() * 2);
  for (uint16_t v : codes.data) {
    if (codes.maxval > 255) raw.push_back(static_cast<unsigned char>(v >> 8));
    raw.push_back(static_cast<unsigned char>(v & 0xff));
  }
  os.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!os) throw IoError("failed writing '" + path + "'");
}

// --- PFM -------------------------------------------------------------------

Image read_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  const std::string magic = pnm_token(in);
  int channels;
  if (magic == "Pf") {
    channels = 1;
  } else if (magic == "PF") {
    channels = 3;
  } else {
    throw FormatError("'" + path + "' is not a PFM file");
  }
  int width, height;
  double scale;
  try {
    width = std::stoi(pnm_token(in));
    height = std::stoi(pnm_token(in));
    scale = std::stod(pnm_token(in));
  } catch (const std::exception&) {
    throw FormatError("malformed PFM header in '" + path + "'");
  }
  if (width < 1 || height < 1 || scale == 0.0)
    throw FormatError("invalid PFM header in '" + path + "'");
  const bool little = scale < 0;
  const size_t n = static_cast<size_t>(width) * height * channels;
  std::vector<uint32_t> raw(n);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * 4));
  if (static_cast<size_t>(in.gcount()) != n * 4)
    throw FormatError("truncated PFM data in '" + path + "'");
  const bool swap = little != (std::endian::native == std::endian::little);
  Image img(width, height, channels, DynamicRange::kHdr);
  // PFM rows run bottom to top.
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        uint32_t bits = raw[(static_cast<size_t>(height - 1 - y) * width + x) * channels + c];
        if (swap) bits = __builtin_bswap32(bits);
        img(y, x, c) = static_cast<double>(std::bit_cast<float>(bits));
      }
    }
  }
  return img;
}

void write_pfm(const std::string& path, const Image& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  const int channels = img.channels();
  os << (channels == 1 ? "Pf" : "PF") << '\n'
     << img.width() << ' ' << img.height() << '\n'
     << "-1.0\n";
  std::vector<uint32_t> raw(static_cast<size_t>(img.size()));
  size_t i = 0;
  for (Index y = img.height() - 1; y >= 0; --y) {
    for (Index x = 0; x < img.width(); ++x) {
      for (int c = 0; c < channels; ++c) {
        uint32_t bits = std::bit_cast<uint32_t>(static_cast<float>(img(y, x, c)));
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
        raw[i++] = bits;
      }
    }
  }
  os.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 4));
  if (!os) throw IoError("failed writing '" + path + "'");
}

// --- conversions -----------------------------------------------------------

Codes read_codes(const std::string& path) {
  const std::string ext = extension(path);
  if (ext == "png") return read_png(path);
  if (ext == "pgm" || ext == "ppm" || ext == "pnm") return read_pnm(path);
  throw FormatError("unsupported LDR file extension '." + ext + "'");
}

Image codes_to_image(const Codes& codes, int color_channels) {
  Image img(codes.width, codes.height, color_channels, DynamicRange::kLdr);
  const double scale = 1.0 / codes.maxval;
  const bool gray = codes.channels <= 2;
  for (int y = 0; y < codes.height; ++y) {
    for (int x = 0; x < codes.width; ++x) {
      const size_t base = (static_cast<size_t>(y) * codes.width + x) * codes.channels;
      for (int c = 0; c < color_channels; ++c)
        img(y, x, c) = codes.data[base + (gray ? 0 : c)] * scale;
    }
  }
  return img;
}

}  // namespace

Image load_image(const std::string& path, ImageKind kind) {
  if (kind == ImageKind::kHdr) {
    if (extension(path) != "pfm") throw FormatError("HDR images must be PFM files");
    return read_pfm(path);
  }
  const Codes codes = read_codes(path);
  return codes_to_image(codes, codes.channels <= 2 ? 1 : 3);
}

RgbaImage load_rgba(const std::string& path) {
  const Codes codes = read_codes(path);
  RgbaImage out{codes_to_image(codes, 3), PlaneD::Ones(codes.height, codes.width)};
  if (codes.channels == 2 || codes.channels == 4) {
    const double scale = 1.0 / codes.maxval;
    for (int y = 0; y < codes.height; ++y)
      for (int x = 0; x < codes.width; ++x)
        out.alpha(y, x) =
            codes.data[(static_cast<size_t>(y) * codes.width + x) * codes.channels +
                       codes.channels - 1] * scale;
  }
  return out;
}

void save_image(const Image& img, const std::string& path, ImageKind kind, int bit_depth) {
  if (img.empty()) throw ShapeError("cannot save an empty image");
  const std::string ext = extension(path);
  if (kind == ImageKind::kHdr) {
    if (ext != "pfm") throw FormatError("HDR images must be saved as PFM");
    write_pfm(path, img);
    return;
  }
  if (bit_depth != 8 && bit_depth != 16) throw FormatError("bit depth must be 8 or 16");
  Codes codes;
  codes.width = static_cast<int>(img.width());
  codes.height = static_cast<int>(img.height());
  codes.channels = img.channels();
  codes.maxval = bit_depth == 16 ? 65535 : 255;
  codes.data.resize(static_cast<size_t>(img.size()));
  size_t i = 0;
  for (Index y = 0; y < img.height(); ++y)
    for (Index x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c) {
        const double v = std::clamp(img(y, x, c), 0.0, 1.0);
        codes.data[i++] = static_cast<uint16_t>(std::lround(v * codes.maxval));
      }
  if (ext == "png") {
    write_png(path, codes);
  } else if (ext == "pgm" || ext == "ppm" || ext == "pnm") {
    if ((ext == "pgm") != (codes.channels == 1))
      throw FormatError("PGM holds gray images and PPM colour images");
    write_pnm(path, codes);
  } else {
    throw FormatError("unsupported LDR file extension '." + ext + "'");
  }
}

}  // namespace snf
