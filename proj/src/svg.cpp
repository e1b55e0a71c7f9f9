#include "ekscat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ekscat/error.hpp"

namespace ekscat {
namespace {

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` steps over span.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void render_histogram_svg(std::ostream& os, const HistogramBins& bins,
                          const SvgPlotOptions& options) {
  if (bins.counts.empty() || bins.total == 0) {
    throw InvalidArgument("cannot plot an empty histogram");
  }
  const double W = options.width, H = options.height;
  const double left = 70, right = 20, top = 40, bottom = 60;
  const double plot_w = W - left - right, plot_h = H - top - bottom;
  const double lo = bins.lo, hi = bins.hi();

  double y_max = 0.0;
  for (std::size_t i = 0; i < bins.counts.size(); ++i) y_max = std::max(y_max, bins.density(i));
  if (options.normal_overlay) y_max = std::max(y_max, std_normal_pdf(0.0));
  y_max *= 1.08;

  auto px = [&](double x) { return left + (x - lo) / (hi - lo) * plot_w; };
  auto py = [&](double y) { return top + plot_h - y / y_max * plot_h; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
     << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
     << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    os << "<text x=\"" << fixed(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << xml_escape(options.title) << "</text>\n";
  }

  os << "<g fill=\"#6b9bd1\" stroke=\"#2d4f7c\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < bins.counts.size(); ++i) {
    if (bins.counts[i] == 0) continue;
    const double x0 = px(bins.bin_lo(i)), x1 = px(bins.bin_hi(i));
    const double y = py(bins.density(i));
    os << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y) << "\" width=\"" << fixed(x1 - x0)
       << "\" height=\"" << fixed(top + plot_h - y) << "\"/>\n";
  }
  os << "</g>\n";

  if (options.normal_overlay) {
    constexpr int samples = 240;
    os << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
    for (int k = 0; k <= samples; ++k) {
      const double x = lo + (hi - lo) * k / samples;
      if (k) os << ' ';
      os << fixed(px(x)) << ',' << fixed(py(std_normal_pdf(x)));
    }
    os << "\"/>\n";
  }

  // Axes.
  const double x_axis = top + plot_h;
  os << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(x_axis) << "\" x2=\""
     << fixed(left + plot_w) << "\" y2=\"" << fixed(x_axis) << "\"/>\n"
     << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left)
     << "\" y2=\"" << fixed(x_axis) << "\"/>\n";
  const double xstep = nice_step(hi - lo, 8);
  for (double x = std::ceil(lo / xstep) * xstep; x <= hi + 1e-9; x += xstep) {
    os << "<line x1=\"" << fixed(px(x)) << "\" y1=\"" << fixed(x_axis) << "\" x2=\""
       << fixed(px(x)) << "\" y2=\"" << fixed(x_axis + 5) << "\"/>\n";
  }
  const double ystep = nice_step(y_max, 5);
  for (double y = 0; y <= y_max; y += ystep) {
    os << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(py(y)) << "\" x2=\""
       << fixed(left) << "\" y2=\"" << fixed(py(y)) << "\"/>\n";
  }
  os << "</g>\n<g fill=\"black\">\n";
  const int xdec = xstep < 1 ? 1 : 0;
  for (double x = std::ceil(lo / xstep) * xstep; x <= hi + 1e-9; x += xstep) {
    os << "<text x=\"" << fixed(px(x)) << "\" y=\"" << fixed(x_axis + 18)
       << "\" text-anchor=\"middle\">" << fixed(x, xdec) << "</text>\n";
  }
  const int ydec = ystep < 0.1 ? 2 : 1;
  for (double y = 0; y <= y_max; y += ystep) {
    os << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(py(y) + 4)
       << "\" text-anchor=\"end\">" << fixed(y, ydec) << "</text>\n";
  }
  if (!options.x_label.empty()) {
    os << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << fixed(H - 14)
       << "\" text-anchor=\"middle\">" << xml_escape(options.x_label) << "</text>\n";
  }
  os << "<text transform=\"translate(18 " << fixed(top + plot_h / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">density</text>\n"
     << "</g>\n</svg>\n";
  if (!os) throw IoError("write failed");
}

}  // namespace ekscat
