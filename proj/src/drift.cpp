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

#include "adeval/drift.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <Eigen/Dense>

#include "adeval/error.hpp"
#include "adeval/parallel.hpp"

namespace adeval {

using nlohmann::json;

std::string_view to_string(DriftCategory category) noexcept {
  switch (category) {
    case DriftCategory::motion_quality: return "motion_quality";
    case DriftCategory::lighting: return "lighting";
    case DriftCategory::camera_position: return "camera_position";
  }
  return "motion_quality";
}

DriftCategory category_of(const DriftStep& step) noexcept {
  switch (step.index()) {
    case 0:
    case 1: return DriftCategory::motion_quality;
    case 2:
    case 3: return DriftCategory::lighting;
    default: return DriftCategory::camera_position;
  }
}

std::string_view transform_name(const DriftStep& step) noexcept {
  static constexpr std::string_view names[] = {"gaussian_blur", "gaussian_noise", "color_jitter", "random_shadow",
                                               "rotation",      "crop_resize",    "perspective"};
  return names[step.index()];
}

namespace {

double uniform_in(Rng& rng, const std::pair<double, double>& range) { return rng.uniform(range.first, range.second); }

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone chain; returns the hull counter-clockwise without collinear points.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  return hull;
}

std::array<Point2, 4> sample_quadrilateral(Rng& rng) {
  std::vector<Point2> hull;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Point2> pts(4);
    for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
    hull = convex_hull(pts);
    if (hull.size() == 4) break;
  }
  while (hull.size() < 4) hull.push_back(hull.back());
  return {hull[0], hull[1], hull[2], hull[3]};
}

}  // namespace

DriftPlan sample_plan(Seed seed, std::string_view sample_id, const DriftSettings& settings) {
  Rng rng = Rng::substream(seed, sample_id, "drift");
  const std::size_t count = 1 + rng.below(2);
  std::array<int, 3> categories = {0, 1, 2};
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(categories[i], categories[i + rng.below(3 - i)]);
  }
  std::sort(categories.begin(), categories.begin() + static_cast<std::ptrdiff_t>(count));

  DriftPlan plan;
  for (std::size_t i = 0; i < count; ++i) {
    switch (categories[i]) {
      case 0:
        if (rng.below(2) == 0) {
          plan.steps.emplace_back(BlurStep{settings.blur_kernel, uniform_in(rng, settings.blur_sigma)});
        } else {
          const double scale = uniform_in(rng, settings.noise_scale);
          plan.steps.emplace_back(NoiseStep{scale, settings.noise_mean, settings.noise_stddev, rng.next_u64()});
        }
        break;
      case 1:
        if (rng.below(2) == 0) {
          const double b = uniform_in(rng, settings.brightness);
          const double c = uniform_in(rng, settings.contrast);
          const double s = uniform_in(rng, settings.saturation);
          plan.steps.emplace_back(JitterStep{b, c, s});
        } else {
          ShadowStep shadow;
          shadow.brightness = settings.shadow_brightness;
          for (int l = 0; l < settings.shadow_layers; ++l) shadow.layers.push_back(sample_quadrilateral(rng));
          plan.steps.emplace_back(std::move(shadow));
        }
        break;
      default:
        switch (rng.below(3)) {
          case 0: plan.steps.emplace_back(RotationStep{uniform_in(rng, settings.rotation_deg)}); break;
          case 1: {
            const double area = uniform_in(rng, settings.crop_area);
            const double ox = rng.uniform();
            const double oy = rng.uniform();
            plan.steps.emplace_back(CropStep{area, ox, oy});
            break;
          }
          default: {
            PerspectiveStep p;
            p.distortion = settings.perspective_distortion;
            for (auto& c : p.corners) c = {rng.uniform(), rng.uniform()};
            plan.steps.emplace_back(p);
          }
        }
    }
  }
  return plan;
}

namespace {

json point_json(const Point2& p) { return json::array({p.x, p.y}); }
Point2 point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

struct StepToJson {
  json operator()(const BlurStep& s) const { return {{"kernel", s.kernel}, {"sigma", s.sigma}}; }
  json operator()(const NoiseStep& s) const {
    return {{"scale", s.scale}, {"mean", s.mean}, {"stddev", s.stddev}, {"noise_seed", s.noise_seed}};
  }
  json operator()(const JitterStep& s) const {
    return {{"brightness", s.brightness}, {"contrast", s.contrast}, {"saturation", s.saturation}};
  }
  json operator()(const ShadowStep& s) const {
    json layers = json::array();
    for (const auto& quad : s.layers) {
      json q = json::array();
      for (const auto& p : quad) q.push_back(point_json(p));
      layers.push_back(q);
    }
    return {{"brightness", s.brightness}, {"layers", layers}};
  }
  json operator()(const RotationStep& s) const { return {{"angle_deg", s.angle_deg}}; }
  json operator()(const CropStep& s) const {
    return {{"area", s.area}, {"offset_x", s.offset_x}, {"offset_y", s.offset_y}};
  }
  json operator()(const PerspectiveStep& s) const {
    json corners = json::array();
    for (const auto& p : s.corners) corners.push_back(point_json(p));
    return {{"distortion", s.distortion}, {"corners", corners}};
  }
};

DriftStep step_from_json(const json& j) {
  const auto name = j.at("transform").get<std::string>();
  const json& p = j.at("parameters");
  if (name == "gaussian_blur") return BlurStep{p.at("kernel").get<int>(), p.at("sigma").get<double>()};
  if (name == "gaussian_noise") {
    return NoiseStep{p.at("scale").get<double>(), p.at("mean").get<double>(), p.at("stddev").get<double>(),
                     p.at("noise_seed").get<std::uint64_t>()};
  }
  if (name == "color_jitter") {
    return JitterStep{p.at("brightness").get<double>(), p.at("contrast").get<double>(), p.at("saturation").get<double>()};
  }
  if (name == "random_shadow") {
    ShadowStep s;
    s.brightness = p.at("brightness").get<double>();
    for (const auto& q : p.at("layers")) {
      std::array<Point2, 4> quad{};
      for (std::size_t i = 0; i < 4; ++i) quad[i] = point_from(q.at(i));
      s.layers.push_back(quad);
    }
    return s;
  }
  if (name == "rotation") return RotationStep{p.at("angle_deg").get<double>()};
  if (name == "crop_resize") {
    return CropStep{p.at("area").get<double>(), p.at("offset_x").get<double>(), p.at("offset_y").get<double>()};
  }
  if (name == "perspective") {
    PerspectiveStep s;
    s.distortion = p.at("distortion").get<double>();
    for (std::size_t i = 0; i < 4; ++i) s.corners[i] = point_from(p.at("corners").at(i));
    return s;
  }
  throw ValidationError("unknown drift transform '" + name + "'");
}

}  // namespace

json to_json(const DriftPlan& plan) {
  json steps = json::array();
  for (const auto& step : plan.steps) {
    steps.push_back({{"category", to_string(category_of(step))},
                     {"transform", transform_name(step)},
                     {"parameters", std::visit(StepToJson{}, step)}});
  }
  return {{"steps", steps}};
}

DriftPlan plan_from_json(const json& doc) {
  DriftPlan plan;
  try {
    for (const auto& s : doc.at("steps")) plan.steps.push_back(step_from_json(s));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed drift plan: ") + e.what());
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Photometric transforms

RgbImage gaussian_blur(const RgbImage& image, double sigma, int kernel) {
  const int radius = std::max(kernel, 1) / 2;
  std::vector<double> weights(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
    weights[static_cast<std::size_t>(i + radius)] = w;
    total += w;
  }
  for (auto& w : weights) w /= total;

  const auto h = static_cast<std::ptrdiff_t>(image.height());
  const auto w = static_cast<std::ptrdiff_t>(image.width());
  // Reflect padding without repeating the edge pixel.
  auto reflect = [](std::ptrdiff_t i, std::ptrdiff_t n) {
    if (n == 1) return std::ptrdiff_t{0};
    while (i < 0 || i >= n) i = i < 0 ? -i : 2 * n - 2 - i;
    return i;
  };

  RgbImage tmp(image.height(), image.width());
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      for (std::size_t ch = 0; ch < 3; ++ch) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += weights[static_cast<std::size_t>(k + radius)] *
                 image.at(static_cast<std::size_t>(r), static_cast<std::size_t>(reflect(c + k, w)), ch);
        }
        tmp.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), ch) = static_cast<float>(acc);
      }
    }
  }
  RgbImage out(image.height(), image.width());
  for (std::ptrdiff_t r = 0; r < h; ++r) {
    for (std::ptrdiff_t c = 0; c < w; ++c) {
      for (std::size_t ch = 0; ch < 3; ++ch) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += weights[static_cast<std::size_t>(k + radius)] *
                 tmp.at(static_cast<std::size_t>(reflect(r + k, h)), static_cast<std::size_t>(c), ch);
        }
        out.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c), ch) = static_cast<float>(acc);
      }
    }
  }
  out.clamp();
  return out;
}

RgbImage gaussian_noise(const RgbImage& image, double scale, Rng& rng, double mean, double stddev) {
  RgbImage out = image;
  for (auto& v : out.data()) v = static_cast<float>(v + scale * (mean + stddev * rng.normal()));
  out.clamp();
  return out;
}

namespace {
float luma(float r, float g, float b) { return 0.299f * r + 0.587f * g + 0.114f * b; }
}  // namespace

RgbImage color_jitter(const RgbImage& image, double brightness, double contrast, double saturation) {
  // A factor of exactly 1 skips its stage so the identity is bit-exact.
  RgbImage out = image;
  auto& d = out.data();
  if (brightness != 1.0) {
    for (auto& v : d) v = static_cast<float>(v * brightness);
    out.clamp();
  }

  const std::size_t n = out.height() * out.width();
  if (contrast != 1.0) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += luma(d[3 * i], d[3 * i + 1], d[3 * i + 2]);
    mean = n ? mean / static_cast<double>(n) : 0.0;
    for (auto& v : d) v = static_cast<float>(mean + contrast * (v - mean));
    out.clamp();
  }

  if (saturation != 1.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const float gray = luma(d[3 * i], d[3 * i + 1], d[3 * i + 2]);
      for (std::size_t ch = 0; ch < 3; ++ch) {
        d[3 * i + ch] = static_cast<float>(gray + saturation * (d[3 * i + ch] - gray));
      }
    }
    out.clamp();
  }
  return out;
}

namespace {

bool inside_convex(const std::array<Point2, 4>& quad, double x, double y) {
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2& a = quad[i];
    const Point2& b = quad[(i + 1) % 4];
    const double c = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
    pos |= c > 0;
    neg |= c < 0;
  }
  return !(pos && neg);
}

}  // namespace

RgbImage random_shadow(const RgbImage& image, const ShadowStep& shadow) {
  RgbImage out = image;
  const double h = static_cast<double>(image.height());
  const double w = static_cast<double>(image.width());
  for (const auto& quad : shadow.layers) {
    for (std::size_t r = 0; r < image.height(); ++r) {
      for (std::size_t c = 0; c < image.width(); ++c) {
        if (!inside_convex(quad, (static_cast<double>(c) + 0.5) / w, (static_cast<double>(r) + 0.5) / h)) continue;
        for (std::size_t ch = 0; ch < 3; ++ch) out.at(r, c, ch) = static_cast<float>(out.at(r, c, ch) * shadow.brightness);
      }
    }
  }
  out.clamp();
  return out;
}

// ---------------------------------------------------------------------------
// Geometric transforms. Each one maps an output pixel to a source position.

namespace {

template <typename SourceOf>
void warp(RgbImage& image, PixelMask* mask, SourceOf&& source_of) {
  const std::size_t h = image.height();
  const std::size_t w = image.width();
  const double hd = static_cast<double>(h);
  const double wd = static_cast<double>(w);
  RgbImage out(h, w, 0.0f);
  PixelMask mask_out;
  if (mask) mask_out = PixelMask(h, w, 0);

  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const auto [sx, sy] = source_of(static_cast<double>(c), static_cast<double>(r));
      if (!(sx >= -0.5 && sx < wd - 0.5 && sy >= -0.5 && sy < hd - 0.5)) continue;
      const double cx = std::clamp(sx, 0.0, wd - 1.0);
      const double cy = std::clamp(sy, 0.0, hd - 1.0);
      const auto x0 = static_cast<std::size_t>(cx);
      const auto y0 = static_cast<std::size_t>(cy);
      const std::size_t x1 = std::min(x0 + 1, w - 1);
      const std::size_t y1 = std::min(y0 + 1, h - 1);
      const double fx = cx - static_cast<double>(x0);
      const double fy = cy - static_cast<double>(y0);
      for (std::size_t ch = 0; ch < 3; ++ch) {
        const double top = (1 - fx) * image.at(y0, x0, ch) + fx * image.at(y0, x1, ch);
        const double bottom = (1 - fx) * image.at(y1, x0, ch) + fx * image.at(y1, x1, ch);
        out.at(r, c, ch) = static_cast<float>((1 - fy) * top + fy * bottom);
      }
      if (mask) {
        const auto nx = std::min(static_cast<std::size_t>(std::floor(sx + 0.5)), w - 1);
        const auto ny = std::min(static_cast<std::size_t>(std::floor(sy + 0.5)), h - 1);
        mask_out(r, c) = (*mask)(ny, nx);
      }
    }
  }
  out.clamp();
  image = std::move(out);
  if (mask) *mask = std::move(mask_out);
}

}  // namespace

void rotate(RgbImage& image, PixelMask* mask, double angle_deg) {
  if (angle_deg == 0.0) return;
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double cx = (static_cast<double>(image.width()) - 1.0) / 2.0;
  const double cy = (static_cast<double>(image.height()) - 1.0) / 2.0;
  // With y pointing down, on-screen counter-clockwise rotation of the
  // content means sampling the source rotated clockwise.
  warp(image, mask, [&](double x, double y) {
    const double dx = x - cx;
    const double dy = y - cy;
    return std::pair{cs * dx - sn * dy + cx, sn * dx + cs * dy + cy};
  });
}

void crop_resize(RgbImage& image, PixelMask* mask, const CropStep& crop) {
  const double side = std::sqrt(std::clamp(crop.area, 0.0, 1.0));
  const double hd = static_cast<double>(image.height());
  const double wd = static_cast<double>(image.width());
  const double ch = std::max(1.0, std::round(side * hd));
  const double cw = std::max(1.0, std::round(side * wd));
  if (ch == hd && cw == wd) return;
  const double top = std::round(std::clamp(crop.offset_y, 0.0, 1.0) * (hd - ch));
  const double left = std::round(std::clamp(crop.offset_x, 0.0, 1.0) * (wd - cw));
  warp(image, mask, [&](double x, double y) {
    const double sx = std::clamp((x + 0.5) * cw / wd - 0.5, 0.0, cw - 1.0);
    const double sy = std::clamp((y + 0.5) * ch / hd - 0.5, 0.0, ch - 1.0);
    return std::pair{left + sx, top + sy};
  });
}

void perspective(RgbImage& image, PixelMask* mask, const PerspectiveStep& step) {
  const double w = static_cast<double>(image.width());
  const double h = static_cast<double>(image.height());
  const double max_dx = step.distortion * w / 2.0;
  const double max_dy = step.distortion * h / 2.0;
  const auto& k = step.corners;
  if (std::all_of(k.begin(), k.end(), [](const Point2& p) { return p.x == 0.0 && p.y == 0.0; })) return;

  const std::array<Point2, 4> src = {Point2{0, 0}, Point2{w - 1, 0}, Point2{w - 1, h - 1}, Point2{0, h - 1}};
  const std::array<Point2, 4> dst = {
      Point2{k[0].x * max_dx, k[0].y * max_dy},
      Point2{w - 1 - k[1].x * max_dx, k[1].y * max_dy},
      Point2{w - 1 - k[2].x * max_dx, h - 1 - k[2].y * max_dy},
      Point2{k[3].x * max_dx, h - 1 - k[3].y * max_dy},
  };
  // Homography taking output (displaced) corners back to source corners.
  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const double u = dst[i].x, v = dst[i].y, x = src[i].x, y = src[i].y;
    a.row(2 * i) << u, v, 1, 0, 0, 0, -u * x, -v * x;
    a.row(2 * i + 1) << 0, 0, 0, u, v, 1, -u * y, -v * y;
    b(2 * i) = x;
    b(2 * i + 1) = y;
  }
  const Eigen::Matrix<double, 8, 1> m = a.fullPivLu().solve(b);
  warp(image, mask, [&](double u, double v) {
    const double d = m(6) * u + m(7) * v + 1.0;
    return std::pair{(m(0) * u + m(1) * v + m(2)) / d, (m(3) * u + m(4) * v + m(5)) / d};
  });
}

namespace {

struct ApplyStep {
  RgbImage& image;
  PixelMask* mask;
  void operator()(const BlurStep& s) const { image = gaussian_blur(image, s.sigma, s.kernel); }
  void operator()(const NoiseStep& s) const {
    Rng rng(s.noise_seed);
    image = gaussian_noise(image, s.scale, rng, s.mean, s.stddev);
  }
  void operator()(const JitterStep& s) const { image = color_jitter(image, s.brightness, s.contrast, s.saturation); }
  void operator()(const ShadowStep& s) const { image = random_shadow(image, s); }
  void operator()(const RotationStep& s) const { rotate(image, mask, s.angle_deg); }
  void operator()(const CropStep& s) const { crop_resize(image, mask, s); }
  void operator()(const PerspectiveStep& s) const { perspective(image, mask, s); }
};

}  // namespace

std::pair<RgbImage, std::optional<PixelMask>> apply_plan(const RgbImage& image, const std::optional<PixelMask>& mask,
                                                         const DriftPlan& plan) {
  if (mask && !mask->same_shape(image.height(), image.width())) {
    throw ValidationError("mask dimensions differ from image dimensions");
  }
  RgbImage out = image;
  std::optional<PixelMask> mask_out = mask;
  std::vector<const DriftStep*> ordered;
  for (const auto& s : plan.steps) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const DriftStep* a, const DriftStep* b) { return category_of(*a) < category_of(*b); });
  for (const auto* s : ordered) std::visit(ApplyStep{out, mask_out ? &*mask_out : nullptr}, *s);
  return {std::move(out), std::move(mask_out)};
}

// ---------------------------------------------------------------------------

namespace {

bool is_image_file(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

json settings_json(const DriftSettings& s) {
  auto range = [](const std::pair<double, double>& r) { return json::array({r.first, r.second}); };
  return {{"blur_kernel", s.blur_kernel},
          {"blur_sigma", range(s.blur_sigma)},
          {"noise_mean", s.noise_mean},
          {"noise_stddev", s.noise_stddev},
          {"noise_scale", range(s.noise_scale)},
          {"brightness", range(s.brightness)},
          {"contrast", range(s.contrast)},
          {"saturation", range(s.saturation)},
          {"shadow_layers", s.shadow_layers},
          {"shadow_brightness", s.shadow_brightness},
          {"rotation_deg", range(s.rotation_deg)},
          {"crop_area", range(s.crop_area)},
          {"perspective_distortion", s.perspective_distortion}};
}

}  // namespace

CorpusSummary perturb_corpus(const std::filesystem::path& corpus_dir, const std::filesystem::path& out_dir, Seed seed,
                             const DriftSettings& settings) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus_dir)) throw IoError("corpus directory not found: " + corpus_dir.string());
  const bool structured = fs::is_directory(corpus_dir / "images");
  const fs::path image_root = structured ? corpus_dir / "images" : corpus_dir;
  const fs::path mask_root = corpus_dir / "masks";

  std::vector<fs::path> images;
  for (const auto& e : fs::recursive_directory_iterator(image_root)) {
    if (e.is_regular_file() && is_image_file(e.path())) images.push_back(fs::relative(e.path(), image_root));
  }
  std::sort(images.begin(), images.end());

  const fs::path image_out = structured ? out_dir / "images" : out_dir;
  std::vector<json> plans(images.size());
  std::vector<char> had_mask(images.size(), 0);
  parallel_for(images.size(), worker_threads_from_env(), [&](std::size_t i) {
    const fs::path& rel = images[i];
    const std::string id = rel.generic_string();
    const DriftPlan plan = sample_plan(seed, id, settings);
    const RgbImage image = load_rgb_image(image_root / rel);
    std::optional<PixelMask> mask;
    fs::path mask_rel = rel;
    mask_rel.replace_extension(".png");
    if (structured && fs::exists(mask_root / mask_rel)) mask = load_mask(mask_root / mask_rel);
    auto [img_out, mask_out] = apply_plan(image, mask, plan);
    fs::create_directories((image_out / rel).parent_path());
    save_rgb_image(image_out / rel, img_out);
    if (mask_out) {
      fs::create_directories((out_dir / "masks" / mask_rel).parent_path());
      save_mask_png(out_dir / "masks" / mask_rel, *mask_out);
      had_mask[i] = 1;
    }
    plans[i] = {{"sample_id", id}, {"plan", to_json(plan)}};
  });

  json log = {{"seed", seed.value}, {"settings", settings_json(settings)}, {"samples", plans}};
  fs::create_directories(out_dir);
  std::ofstream out(out_dir / "drift_plan.json", std::ios::binary);
  if (!out) throw IoError("cannot write " + (out_dir / "drift_plan.json").string());
  out << log.dump(2) << "\n";
  return {images.size(), static_cast<std::size_t>(std::count(had_mask.begin(), had_mask.end(), 1))};
}

}  // namespace adeval
