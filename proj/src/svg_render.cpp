#include "bext/svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bext/tolerances.hpp"

namespace bext {
namespace {

struct Frame {
  double min_x = 0.0, min_y = 0.0, scale = 1.0;
  int size = 800;

  double px(double x) const { return (x - min_x) * scale; }
  double py(double y) const { return size - (y - min_y) * scale; }  // y grows upward
};

void append_attr(std::string& out, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  out += buf;
}

void line(std::string& out, const Frame& f, PlanarPoint a, PlanarPoint b, const char* style) {
  out += "  <line x1=\"";
  append_attr(out, f.px(a.x));
  out += "\" y1=\"";
  append_attr(out, f.py(a.y));
  out += "\" x2=\"";
  append_attr(out, f.px(b.x));
  out += "\" y2=\"";
  append_attr(out, f.py(b.y));
  out += "\" ";
  out += style;
  out += "/>\n";
}

}  // namespace

std::string render_svg(const Pipeline& pipeline, const RenderSpec& spec) {
  if (spec.density < 4) throw ScenarioError("render density must be at least 4");
  if (spec.size_px < 64) throw ScenarioError("render size must be at least 64 px");

  const PlanarDomain& domain = pipeline.planar_domain();
  Circle circle = pipeline.on_surface() ? pipeline.surface->planar().circle()
                                        : pipeline.planar->circle();

  double min_x = circle.center.x - circle.radius;
  double max_x = circle.center.x + circle.radius;
  double min_y = circle.center.y - circle.radius;
  double max_y = circle.center.y + circle.radius;
  std::vector<PlanarPoint> outline = domain_boundary_samples(domain, 512);
  for (const PlanarPoint& p : outline) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  double span = std::max(max_x - min_x, max_y - min_y);
  double margin = 0.05 * span;

  Frame frame;
  frame.size = spec.size_px;
  frame.min_x = min_x - margin;
  frame.min_y = min_y - margin;
  frame.scale = spec.size_px / (span + 2.0 * margin);

  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\">\n",
                spec.size_px, spec.size_px, spec.size_px, spec.size_px);
  out += buf;
  std::snprintf(buf, sizeof buf, "  <rect width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n",
                spec.size_px, spec.size_px);
  out += buf;

  out += "  <circle cx=\"";
  append_attr(out, frame.px(circle.center.x));
  out += "\" cy=\"";
  append_attr(out, frame.py(circle.center.y));
  out += "\" r=\"";
  append_attr(out, circle.radius * frame.scale);
  out += "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";

  out += "  <path d=\"";
  for (std::size_t i = 0; i < outline.size(); ++i) {
    out += i == 0 ? "M " : "L ";
    append_attr(out, frame.px(outline[i].x));
    out += ' ';
    append_attr(out, frame.py(outline[i].y));
    out += ' ';
  }
  out += "Z\" fill=\"#eaf2fb\" fill-opacity=\"0.6\" stroke=\"#1a6fb5\" stroke-width=\"1.5\"/>\n";

  // surface pictures live in the tangent plane: push through exp, extend,
  // and read the image back through log
  PlanarMap map = pipeline.on_surface()
                      ? PlanarMap([&pipeline](const PlanarPoint& q) {
                          const PoleSurface& s = *pipeline.scenario.surface;
                          double r = norm(q);
                          Angle th = r > 0.0 ? Angle(std::atan2(q.y, q.x)) : Angle(0.0);
                          SurfacePoint image = (*pipeline.surface)(s.exp({r, th}));
                          TangentVector v = s.log(image);
                          return PlanarPoint{v.r * v.theta.cos(), v.r * v.theta.sin()};
                        })
                      : pipeline.planar_map();

  const int n = spec.density;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      PlanarPoint q{min_x + (max_x - min_x) * (i + 0.5) / n,
                    min_y + (max_y - min_y) * (j + 0.5) / n};
      if (!domain.contains(q, 0.0)) continue;
      if (domain.boundary_distance(q) < 2.0 * kTol.interior_band) continue;
      PlanarPoint fq = map(q);
      line(out, frame, q, fq, "stroke=\"#c0392b\" stroke-width=\"1\" stroke-opacity=\"0.85\"");
      // arrow head: two short strokes back from the tip
      PlanarPoint d = fq - q;
      double len = norm(d);
      if (len > 1e-9) {
        PlanarPoint u = (1.0 / len) * d;
        PlanarPoint nvec{-u.y, u.x};
        double h = std::min(0.25 * len, 6.0 / frame.scale);
        PlanarPoint left = fq - h * u + (0.5 * h) * nvec;
        PlanarPoint right = fq - h * u - (0.5 * h) * nvec;
        line(out, frame, fq, left, "stroke=\"#c0392b\" stroke-width=\"1\"");
        line(out, frame, fq, right, "stroke=\"#c0392b\" stroke-width=\"1\"");
      }
    }
  }

  PlanarPoint anchor = domain.anchor();
  out += "  <circle cx=\"";
  append_attr(out, frame.px(anchor.x));
  out += "\" cy=\"";
  append_attr(out, frame.py(anchor.y));
  out += "\" r=\"3\" fill=\"#1a6fb5\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace bext
