#include "closure/newton.hpp"

#include <algorithm>
#include <sstream>

namespace closure {

namespace {

Exponent slope_between(const PolygonPoint& a, const PolygonPoint& b) {
  return (b.val.value - a.val.value) / Exponent(b.index - a.index);
}

}  // namespace

std::vector<std::pair<Exponent, unsigned>> NewtonPolygon::slopes() const {
  std::vector<std::pair<Exponent, unsigned>> out;
  for (const auto& s : segments) {
    if (!out.empty() && out.back().first == s.slope) out.back().second += s.length();
    else out.emplace_back(s.slope, s.length());
  }
  return out;
}

std::string NewtonPolygon::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < segments.size(); ++i)
    os << (i ? " " : "") << segments[i].slope << "x" << segments[i].length() << (segments[i].determined ? "" : "?");
  return os.str();
}

NewtonPolygon newton_polygon(std::vector<PolygonPoint> points) {
  if (points.size() < 2) throw DegeneratePolygon("need at least two points, got " + std::to_string(points.size()));
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].index == points[i - 1].index) throw InvalidInput("repeated polygon index");

  std::vector<PolygonPoint> hull;
  for (const auto& pt : points) {
    while (hull.size() >= 2 &&
           slope_between(hull[hull.size() - 2], hull.back()) >= slope_between(hull.back(), pt))
      hull.pop_back();
    hull.push_back(pt);
  }
  NewtonPolygon poly;
  poly.vertices = hull;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i)
    poly.segments.push_back({hull[i].index, hull[i + 1].index, slope_between(hull[i], hull[i + 1]),
                             hull[i].val.determined && hull[i + 1].val.determined});
  return poly;
}

NewtonPolygon newton_polygon(const std::vector<std::pair<int, std::optional<Exponent>>>& vals) {
  std::vector<PolygonPoint> pts;
  for (const auto& [i, v] : vals)
    if (v) pts.push_back({i, {*v, true}});
  return newton_polygon(std::move(pts));
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::string to_string(RootStatus s) {
  switch (s) {
    case RootStatus::certified: return "certified";
    case RootStatus::step_budget: return "step-budget";
    case RootStatus::precision: return "precision";
  }
  return "unknown";
}

std::vector<RootApprox<FqSeries>> solve_roots(const SeriesPoly<FqSeries>& P, const Exponent& target,
                                              unsigned max_steps) {
  return RootSolver<FqSeries>(P, target, max_steps).run();
}

}  // namespace closure
