#include "percfpp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "percfpp/csv.hpp"

namespace percfpp {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_scatter_svg(const std::filesystem::path& path, std::span<const ScatterPoint> points,
                       double reference, const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  constexpr double kW = 640, kH = 420, kL = 60, kR = 20, kT = 40, kB = 50;
  double x_max = 1.0, y_max = 1e-9;
  for (const auto& p : points) {
    if (std::isfinite(p.x)) x_max = std::max(x_max, p.x);
    if (std::isfinite(p.y)) y_max = std::max(y_max, p.y);
  }
  if (std::isfinite(reference)) y_max = std::max(y_max, reference);
  y_max *= 1.05;
  auto sx = [&](double x) { return kL + (kW - kL - kR) * x / x_max; };
  auto sy = [&](double y) { return kH - kB - (kH - kT - kB) * y / y_max; };

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\">" << escape(title) << "</text>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\"" << kH - kB
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x_max * i / 4.0, yv = y_max * i / 4.0;
    out << "<text x=\"" << format_number(sx(xv)) << "\" y=\"" << kH - kB + 16
        << "\" text-anchor=\"middle\">" << format_number(std::round(xv * 100) / 100) << "</text>\n";
    out << "<text x=\"" << kL - 6 << "\" y=\"" << format_number(sy(yv) + 4)
        << "\" text-anchor=\"end\">" << format_number(std::round(yv * 1000) / 1000) << "</text>\n";
  }
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kH / 2 << ")\">" << escape(y_label) << "</text>\n";
  out << "<g fill=\"steelblue\" fill-opacity=\"0.5\">\n";
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    out << "<circle cx=\"" << format_number(sx(p.x)) << "\" cy=\"" << format_number(sy(p.y))
        << "\" r=\"2\"/>\n";
  }
  out << "</g>\n";
  if (std::isfinite(reference)) {
    out << "<line x1=\"" << kL << "\" y1=\"" << format_number(sy(reference)) << "\" x2=\""
        << kW - kR << "\" y2=\"" << format_number(sy(reference))
        << "\" stroke=\"firebrick\" stroke-width=\"2\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace percfpp
