// Copyright 2026 The adeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adeval/image_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <csetjmp>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include <jpeglib.h>
#include <png.h>

#include "adeval/error.hpp"

namespace adeval {

RgbImage RgbImage::from_bytes(std::size_t height, std::size_t width, const std::vector<std::uint8_t>& rgb) {
  RgbImage img(height, width);
  for (std::size_t i = 0; i < rgb.size() && i < img.data_.size(); ++i) img.data_[i] = rgb[i] / 255.0f;
  return img;
}

std::vector<std::uint8_t> RgbImage::to_bytes() const {
  std::vector<std::uint8_t> out(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const float v = std::clamp(data_[i], 0.0f, 1.0f);
    out[i] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
  }
  return out;
}

void RgbImage::clamp() {
  for (auto& v : data_) v = std::clamp(v, 0.0f, 1.0f);
}

namespace {

class PngReader {
public:
  explicit PngReader(const std::filesystem::path& path) : path_(path) {
    image_.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image_, path.c_str())) {
      throw IoError("cannot read PNG " + path.string() + ": " + image_.message);
    }
  }
  ~PngReader() { png_image_free(&image_); }
  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;

  bool sixteen_bit() const { return (image_.format & PNG_FORMAT_FLAG_LINEAR) != 0; }
  std::size_t height() const { return image_.height; }
  std::size_t width() const { return image_.width; }

  template <typename T>
  std::vector<T> finish(png_uint_32 format) {
    image_.format = format;
    std::vector<T> buf(PNG_IMAGE_SIZE(image_) / sizeof(T));
    if (!png_image_finish_read(&image_, nullptr, buf.data(), 0, nullptr)) {
      throw IoError("cannot decode PNG " + path_.string() + ": " + image_.message);
    }
    return buf;
  }

private:
  std::filesystem::path path_;
  png_image image_{};
};

void write_png(const std::filesystem::path& path, png_uint_32 format, std::size_t height, std::size_t width,
               const void* data) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.format = format;
  image.height = static_cast<png_uint_32>(height);
  image.width = static_cast<png_uint_32>(width);
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot write PNG " + path.string() + ": " + msg);
  }
  png_image_free(&image);
}

struct JpegErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

extern "C" void jpeg_error_exit(j_common_ptr info) {
  auto* err = reinterpret_cast<JpegErrorManager*>(info->err);
  (*info->err->format_message)(info, err->message);
  std::longjmp(err->jump, 1);
}

// No C++ objects with destructors may be created between setjmp and the
// libjpeg calls below; `out` and `message` are owned by the caller.
bool decode_jpeg(std::FILE* file, std::size_t& height, std::size_t& width, std::vector<std::uint8_t>& out,
                 char* message) {
  jpeg_decompress_struct info;
  JpegErrorManager err;
  info.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    std::snprintf(message, JMSG_LENGTH_MAX, "%s", err.message);
    jpeg_destroy_decompress(&info);
    return false;
  }
  jpeg_create_decompress(&info);
  jpeg_stdio_src(&info, file);
  jpeg_read_header(&info, TRUE);
  info.out_color_space = JCS_RGB;
  jpeg_start_decompress(&info);
  height = info.output_height;
  width = info.output_width;
  out.resize(height * width * 3);
  while (info.output_scanline < info.output_height) {
    JSAMPROW row = out.data() + static_cast<std::size_t>(info.output_scanline) * width * 3;
    jpeg_read_scanlines(&info, &row, 1);
  }
  jpeg_finish_decompress(&info);
  jpeg_destroy_decompress(&info);
  return true;
}

bool encode_jpeg(std::FILE* file, std::size_t height, std::size_t width, const std::vector<std::uint8_t>& rgb,
                 char* message) {
  jpeg_compress_struct info;
  JpegErrorManager err;
  info.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    std::snprintf(message, JMSG_LENGTH_MAX, "%s", err.message);
    jpeg_destroy_compress(&info);
    return false;
  }
  jpeg_create_compress(&info);
  jpeg_stdio_dest(&info, file);
  info.image_width = static_cast<JDIMENSION>(width);
  info.image_height = static_cast<JDIMENSION>(height);
  info.input_components = 3;
  info.in_color_space = JCS_RGB;
  jpeg_set_defaults(&info);
  jpeg_set_quality(&info, 95, TRUE);
  jpeg_start_compress(&info, TRUE);
  while (info.next_scanline < info.image_height) {
    auto* row = const_cast<JSAMPROW>(rgb.data() + static_cast<std::size_t>(info.next_scanline) * width * 3);
    jpeg_write_scanlines(&info, &row, 1);
  }
  jpeg_finish_compress(&info);
  jpeg_destroy_compress(&info);
  return true;
}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

bool is_jpeg_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".jpg" || ext == ".jpeg";
}

std::array<unsigned char, 8> leading_bytes(const std::filesystem::path& path) {
  std::array<unsigned char, 8> head{};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  return head;
}

}  // namespace

RgbImage load_rgb_image(const std::filesystem::path& path) {
  const auto head = leading_bytes(path);
  if (head[0] == 0xFF && head[1] == 0xD8) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("cannot open " + path.string());
    std::size_t h = 0, w = 0;
    std::vector<std::uint8_t> rgb;
    char message[JMSG_LENGTH_MAX] = {};
    if (!decode_jpeg(file.get(), h, w, rgb, message)) {
      throw IoError("cannot decode JPEG " + path.string() + ": " + message);
    }
    return RgbImage::from_bytes(h, w, rgb);
  }
  PngReader reader(path);
  const auto rgb = reader.finish<std::uint8_t>(PNG_FORMAT_RGB);
  return RgbImage::from_bytes(reader.height(), reader.width(), rgb);
}

void save_rgb_image(const std::filesystem::path& path, const RgbImage& image) {
  const auto rgb = image.to_bytes();
  if (is_jpeg_path(path)) {
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("cannot write " + path.string());
    char message[JMSG_LENGTH_MAX] = {};
    if (!encode_jpeg(file.get(), image.height(), image.width(), rgb, message)) {
      throw IoError("cannot encode JPEG " + path.string() + ": " + message);
    }
    return;
  }
  write_png(path, PNG_FORMAT_RGB, image.height(), image.width(), rgb.data());
}

Grid<std::uint8_t> read_png_gray8(const std::filesystem::path& path) {
  PngReader reader(path);
  auto px = reader.finish<std::uint8_t>(PNG_FORMAT_GRAY);
  return Grid<std::uint8_t>(reader.height(), reader.width(), std::move(px));
}

Grid<std::uint16_t> read_png_gray16(const std::filesystem::path& path) {
  PngReader reader(path);
  auto px = reader.finish<std::uint16_t>(PNG_FORMAT_LINEAR_Y);
  return Grid<std::uint16_t>(reader.height(), reader.width(), std::move(px));
}

int png_bit_depth(const std::filesystem::path& path) {
  PngReader reader(path);
  return reader.sixteen_bit() ? 16 : 8;
}

void write_png_gray8(const std::filesystem::path& path, const Grid<std::uint8_t>& pixels) {
  write_png(path, PNG_FORMAT_GRAY, pixels.height(), pixels.width(), pixels.values().data());
}

void write_png_gray16(const std::filesystem::path& path, const Grid<std::uint16_t>& pixels) {
  write_png(path, PNG_FORMAT_LINEAR_Y, pixels.height(), pixels.width(), pixels.values().data());
}

}  // namespace adeval
