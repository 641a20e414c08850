#include "szego/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "szego/errors.hpp"

namespace szego {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << x;
  return os.str();
}

std::string pow10_label(int e) {
  std::ostringstream os;
  if (e >= -3 && e <= 3) {
    os.precision(15);
    os << std::pow(10.0, e);
  } else {
    os << "1e" << e;
  }
  return os.str();
}

}  // namespace

void write_loglog_svg(std::ostream& out, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series, const std::string& config) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (const SvgSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0) || !std::isfinite(s.x[i]) ||
          !std::isfinite(s.y[i]))
        continue;
      const double lx = std::log10(s.x[i]), ly = std::log10(s.y[i]);
      if (!any) {
        xmin = xmax = lx;
        ymin = ymax = ly;
        any = true;
      } else {
        xmin = std::min(xmin, lx);
        xmax = std::max(xmax, lx);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
      }
    }
  }
  if (!any)
    throw InvalidArgument("write_loglog_svg: no positive finite points to draw");
  if (xmax - xmin < 1e-9) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-9) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  // a little margin around the data
  const double xpad = 0.04 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  const double W = 760, H = 520;
  const double L = 80, R = 20, T = 44, B = 56;  // margins
  auto X = [&](double lx) { return L + (lx - xmin) / (xmax - xmin) * (W - L - R); };
  auto Y = [&](double ly) { return H - B - (ly - ymin) / (ymax - ymin) * (H - T - B); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  if (!config.empty()) {
    std::string safe = config;
    // two consecutive hyphens are not allowed inside an XML comment
    std::size_t pos;
    while ((pos = safe.find("--")) != std::string::npos) safe.replace(pos, 2, "- -");
    out << "<!-- " << safe << " -->\n";
  }
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << xml_escape(title) << "</text>\n";

  // decade grid
  out << "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
  for (int e = static_cast<int>(std::ceil(xmin)); e <= std::floor(xmax); ++e)
    out << "<line x1=\"" << fmt(X(e)) << "\" y1=\"" << fmt(Y(ymin)) << "\" x2=\""
        << fmt(X(e)) << "\" y2=\"" << fmt(Y(ymax)) << "\"/>\n";
  for (int e = static_cast<int>(std::ceil(ymin)); e <= std::floor(ymax); ++e)
    out << "<line x1=\"" << fmt(X(xmin)) << "\" y1=\"" << fmt(Y(e)) << "\" x2=\""
        << fmt(X(xmax)) << "\" y2=\"" << fmt(Y(e)) << "\"/>\n";
  out << "</g>\n";

  // axes box
  out << "<rect x=\"" << fmt(L) << "\" y=\"" << fmt(T) << "\" width=\""
      << fmt(W - L - R) << "\" height=\"" << fmt(H - T - B)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // tick labels at powers of ten
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int e = static_cast<int>(std::ceil(xmin)); e <= std::floor(xmax); ++e)
    out << "<text x=\"" << fmt(X(e)) << "\" y=\"" << fmt(H - B + 18)
        << "\" text-anchor=\"middle\">" << pow10_label(e) << "</text>\n";
  for (int e = static_cast<int>(std::ceil(ymin)); e <= std::floor(ymax); ++e)
    out << "<text x=\"" << fmt(L - 8) << "\" y=\"" << fmt(Y(e) + 4)
        << "\" text-anchor=\"end\">" << pow10_label(e) << "</text>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\">" << xml_escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << H / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << H / 2 << ")\">"
      << xml_escape(y_label) << "</text>\n";
  out << "</g>\n";

  for (const SvgSeries& s : series) {
    std::ostringstream pts;
    bool started = false;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0) || !(s.y[i] > 0) || !std::isfinite(s.x[i]) ||
          !std::isfinite(s.y[i]))
        continue;
      pts << (started ? " " : "") << fmt(X(std::log10(s.x[i]))) << ','
          << fmt(Y(std::log10(s.y[i])));
      started = true;
    }
    if (!started) continue;
    out << "<polyline fill=\"none\" stroke=\"" << xml_escape(s.color)
        << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
  }

  // legend
  double ly = T + 16;
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (const SvgSeries& s : series) {
    if (s.label.empty()) continue;
    out << "<line x1=\"" << fmt(L + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(L + 36) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\""
        << xml_escape(s.color) << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(L + 42) << "\" y=\"" << fmt(ly) << "\">"
        << xml_escape(s.label) << "</text>\n";
    ly += 18;
  }
  out << "</g>\n";
  out << "</svg>\n";
}

}  // namespace szego
