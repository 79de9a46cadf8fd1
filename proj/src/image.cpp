#include "scft/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace scft {

RgbImage::RgbImage(int h, int w, std::array<std::uint8_t, 3> fill)
    : height(h), width(w), data(static_cast<std::size_t>(h) * w * 3) {
  for (std::size_t i = 0; i < data.size(); i += 3) {
    data[i] = fill[0];
    data[i + 1] = fill[1];
    data[i + 2] = fill[2];
  }
}

GrayImage luminance(const RgbImage& image) {
  if (image.empty()) throw std::invalid_argument("luminance: empty image");
  GrayImage out(image.height, image.width);
  const std::uint8_t* p = image.data.data();
  for (std::size_t i = 0; i < out.values.size(); ++i, p += 3) {
    out.values[i] = (0.299f * p[0] + 0.587f * p[1] + 0.114f * p[2]) / 255.f;
  }
  return out;
}

RgbImage gray_to_rgb(const GrayImage& image) {
  RgbImage out(image.height, image.width);
  for (std::size_t i = 0; i < image.values.size(); ++i) {
    const float v = std::clamp(image.values[i], 0.f, 1.f);
    const auto u = static_cast<std::uint8_t>(std::lround(v * 255.f));
    out.data[3 * i] = out.data[3 * i + 1] = out.data[3 * i + 2] = u;
  }
  return out;
}

namespace {

cv::Mat to_mat_bgr(const RgbImage& image) {
  cv::Mat rgb(image.height, image.width, CV_8UC3,
              const_cast<std::uint8_t*>(image.data.data()));
  cv::Mat bgr;
  cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
  return bgr;
}

RgbImage from_mat_bgr(const cv::Mat& bgr) {
  cv::Mat rgb;
  cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
  RgbImage out(rgb.rows, rgb.cols);
  for (int r = 0; r < rgb.rows; ++r) {
    std::copy_n(rgb.ptr<std::uint8_t>(r), static_cast<std::size_t>(rgb.cols) * 3,
                out.data.data() + static_cast<std::size_t>(r) * rgb.cols * 3);
  }
  return out;
}

}  // namespace

RgbImage resize_center_crop(const RgbImage& image, int side) {
  if (image.empty()) throw std::invalid_argument("resize_center_crop: empty image");
  if (side <= 0) throw std::invalid_argument("resize_center_crop: side must be positive");
  const double scale = static_cast<double>(side) / std::min(image.height, image.width);
  const int nh = std::max(side, static_cast<int>(std::lround(image.height * scale)));
  const int nw = std::max(side, static_cast<int>(std::lround(image.width * scale)));
  cv::Mat bgr = to_mat_bgr(image);
  cv::Mat resized;
  cv::resize(bgr, resized, cv::Size(nw, nh), 0, 0, cv::INTER_LINEAR);
  const int r0 = (nh - side) / 2;
  const int c0 = (nw - side) / 2;
  cv::Mat crop = resized(cv::Rect(c0, r0, side, side)).clone();
  return from_mat_bgr(crop);
}

RgbImage load_image_rgb(const std::string& path) {
  cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
  if (bgr.empty()) throw std::runtime_error("failed to read image: " + path);
  return from_mat_bgr(bgr);
}

GrayImage load_image_gray(const std::string& path) {
  cv::Mat g = cv::imread(path, cv::IMREAD_GRAYSCALE);
  if (g.empty()) throw std::runtime_error("failed to read image: " + path);
  GrayImage out(g.rows, g.cols);
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) out.at(r, c) = g.at<std::uint8_t>(r, c) / 255.f;
  return out;
}

void save_png(const std::string& path, const RgbImage& image) {
  if (!cv::imwrite(path, to_mat_bgr(image)))
    throw std::runtime_error("failed to write image: " + path);
}

void save_png(const std::string& path, const GrayImage& image) {
  cv::Mat g(image.height, image.width, CV_8UC1);
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c)
      g.at<std::uint8_t>(r, c) =
          static_cast<std::uint8_t>(std::lround(std::clamp(image.at(r, c), 0.f, 1.f) * 255.f));
  if (!cv::imwrite(path, g)) throw std::runtime_error("failed to write image: " + path);
}

void save_png16(const std::string& path, const std::vector<float>& values, int height,
                int width) {
  if (values.size() != static_cast<std::size_t>(height) * width)
    throw std::invalid_argument("save_png16: size mismatch");
  cv::Mat g(height, width, CV_16UC1);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      g.at<std::uint16_t>(r, c) = static_cast<std::uint16_t>(
          std::lround(std::clamp(values[static_cast<std::size_t>(r) * width + c], 0.f, 1.f) * 65535.f));
  if (!cv::imwrite(path, g)) throw std::runtime_error("failed to write image: " + path);
}

}  // namespace scft
