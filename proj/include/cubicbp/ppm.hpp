#pragma once

// Binary PPM (P6, 8-bit RGB) images.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubicbp {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Image {
public:
  Image(std::size_t width, std::size_t height, Rgb fill = {});

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  Rgb& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  const std::vector<Rgb>& pixels() const { return pixels_; }

  std::string encode_ppm() const;
  // Throws IoError when the file cannot be written.
  void write_ppm(const std::string& path) const;
  static Image decode_ppm(const std::string& bytes);
  static Image read_ppm(const std::string& path);

private:
  std::size_t width_, height_;
  std::vector<Rgb> pixels_;
};

}  // namespace cubicbp
