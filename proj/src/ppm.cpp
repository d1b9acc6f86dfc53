#include "cubicbp/ppm.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

namespace cubicbp {

Image::Image(std::size_t width, std::size_t height, Rgb fill)
    : width_(width), height_(height), pixels_(width * height, fill) {}

std::string Image::encode_ppm() const {
  std::string out = "P6\n" + std::to_string(width_) + " " + std::to_string(height_) + "\n255\n";
  out.reserve(out.size() + pixels_.size() * 3);
  for (const Rgb& p : pixels_) {
    out.push_back(static_cast<char>(p.r));
    out.push_back(static_cast<char>(p.g));
    out.push_back(static_cast<char>(p.b));
  }
  return out;
}

void Image::write_ppm(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  const std::string bytes = encode_ppm();
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("failed writing '" + path + "'");
}

Image Image::decode_ppm(const std::string& bytes) {
  std::istringstream is(bytes);
  std::string magic;
  std::size_t w = 0, h = 0, maxval = 0;
  if (!(is >> magic >> w >> h >> maxval) || magic != "P6" || maxval != 255) {
    throw IoError("not an 8-bit P6 image");
  }
  is.get();  // single whitespace after the header
  Image img(w, h);
  for (Rgb& p : img.pixels_) {
    char c[3];
    if (!is.read(c, 3)) throw IoError("truncated P6 pixel data");
    p = {static_cast<std::uint8_t>(c[0]), static_cast<std::uint8_t>(c[1]), static_cast<std::uint8_t>(c[2])};
  }
  return img;
}

Image Image::read_ppm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  return decode_ppm(std::string(std::istreambuf_iterator<char>(f), {}));
}

}  // namespace cubicbp
