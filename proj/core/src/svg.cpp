#include "gesem/svg.hpp"

#include <algorithm>
#include <sstream>

namespace gesem {

namespace {

struct Panel {
  const char* title;
  double (*u)(const Point3&);
  double (*v)(const Point3&);
};

const Panel kPanels[] = {
    {"sagittal (FT/UP)", [](const Point3& p) { return p.y; },
     [](const Point3& p) { return p.z; }},
    {"transverse (RT/FT)", [](const Point3& p) { return p.x; },
     [](const Point3& p) { return p.y; }},
    {"coronal (RT/UP)", [](const Point3& p) { return p.x; },
     [](const Point3& p) { return p.z; }},
};

const char* kColors[] = {"#1f6fb2", "#b23a1f", "#3a8f3a", "#7a4fb2"};

}  // namespace

std::string render_svg_planes(const std::vector<Path3>& paths,
                              const std::vector<std::string>& labels) {
  constexpr double kPanelSize = 220.0;
  constexpr double kMargin = 24.0;

  std::vector<Path3> sampled;
  for (const Path3& p : paths) sampled.push_back(sample_arcs(p));

  double lo = -1.0, hi = 1.0;
  for (const Path3& p : sampled) {
    for (const Point3& pt : p.points) {
      lo = std::min({lo, pt.x, pt.y, pt.z});
      hi = std::max({hi, pt.x, pt.y, pt.z});
    }
  }
  double span = std::max(hi - lo, 1e-9);

  std::ostringstream out;
  double width = 3 * kPanelSize + 4 * kMargin;
  double height = kPanelSize + 2 * kMargin + 18;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int panel = 0; panel < 3; ++panel) {
    double x0 = kMargin + panel * (kPanelSize + kMargin);
    double y0 = kMargin;
    out << "  <g>\n";
    out << "    <rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\""
        << kPanelSize << "\" height=\"" << kPanelSize
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    out << "    <text x=\"" << x0 + 4 << "\" y=\"" << y0 + kPanelSize + 14
        << "\" font-size=\"11\" font-family=\"sans-serif\">"
        << kPanels[panel].title << "</text>\n";
    for (std::size_t i = 0; i < sampled.size(); ++i) {
      out << "    <polyline fill=\"none\" stroke=\""
          << kColors[i % std::size(kColors)] << "\" stroke-width=\"1.5\" points=\"";
      for (const Point3& pt : sampled[i].points) {
        double u = (kPanels[panel].u(pt) - lo) / span;
        double v = (kPanels[panel].v(pt) - lo) / span;
        out << x0 + u * kPanelSize << "," << y0 + (1.0 - v) * kPanelSize << " ";
      }
      out << "\"/>\n";
    }
    out << "  </g>\n";
  }

  for (std::size_t i = 0; i < labels.size() && i < sampled.size(); ++i) {
    out << "  <text x=\"" << kMargin + 60 * i << "\" y=\"14\" font-size=\"11\""
        << " font-family=\"sans-serif\" fill=\""
        << kColors[i % std::size(kColors)] << "\">" << labels[i] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gesem
