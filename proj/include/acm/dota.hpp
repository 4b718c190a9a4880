#pragma once

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "acm/average_precision.hpp"
#include "acm/errors.hpp"
#include "acm/geometry.hpp"

namespace acm {

inline const std::vector<std::string>& dota_class_names() {
  static const std::vector<std::string> names{
      "plane",          "baseball-diamond", "bridge",   "ground-track-field",
      "small-vehicle",  "large-vehicle",    "ship",     "tennis-court",
      "basketball-court", "storage-tank",   "soccer-ball-field", "roundabout",
      "harbor",         "swimming-pool",    "helicopter"};
  return names;
}

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + tok.size() && !tok.empty();
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

}  // namespace detail

// One DOTA annotation file: optional imagesource/gsd headers, then lines of
// "x1 y1 x2 y2 x3 y3 x4 y4 category difficult". Quads become min-area boxes.
inline std::vector<GroundTruth> parse_dota(
    const std::string& text, const std::string& image_id = "",
    const std::vector<std::string>& class_names = dota_class_names()) {
  std::vector<GroundTruth> out;
  std::istringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0].rfind("imagesource", 0) == 0 || toks[0].rfind("gsd", 0) == 0) continue;
    if (toks.size() != 10)
      throw MalformedLine(line_no, line,
                          "expected 10 tokens, got " + std::to_string(toks.size()));
    std::vector<Vec2> quad(4);
    for (int i = 0; i < 4; ++i) {
      double x = 0.0;
      double y = 0.0;
      if (!detail::parse_double(toks[2 * i], x) || !detail::parse_double(toks[2 * i + 1], y))
        throw MalformedLine(line_no, line, "non-numeric coordinate");
      quad[i] = {x, y};
    }
    int cls = -1;
    for (size_t i = 0; i < class_names.size(); ++i)
      if (class_names[i] == toks[8]) cls = static_cast<int>(i);
    if (cls < 0) throw MalformedLine(line_no, line, "unknown category '" + toks[8] + "'");
    double difficult = 0.0;
    if (!detail::parse_double(toks[9], difficult))
      throw MalformedLine(line_no, line, "non-numeric difficult flag");
    GroundTruth g;
    g.image_id = image_id;
    g.class_id = cls;
    g.box = min_area_rect(quad);
    g.difficult = difficult != 0.0;
    out.push_back(std::move(g));
  }
  return out;
}

// Detection CSV: header "image_id,class,score,cx,cy,w,h,theta_deg".
inline std::vector<Detection> parse_detections_csv(
    const std::string& text, const std::vector<std::string>& class_names = dota_class_names()) {
  std::vector<Detection> out;
  std::istringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "image_id,class,score,cx,cy,w,h,theta_deg")
        throw MalformedLine(line_no, line, "unexpected CSV header");
      continue;
    }
    std::vector<std::string> toks;
    std::string tok;
    std::istringstream ls(line);
    while (std::getline(ls, tok, ',')) toks.push_back(tok);
    if (toks.size() != 8)
      throw MalformedLine(line_no, line, "expected 8 fields, got " + std::to_string(toks.size()));
    Detection d;
    d.image_id = toks[0];
    int cls = -1;
    for (size_t i = 0; i < class_names.size(); ++i)
      if (class_names[i] == toks[1]) cls = static_cast<int>(i);
    if (cls < 0) throw MalformedLine(line_no, line, "unknown category '" + toks[1] + "'");
    d.class_id = cls;
    double vals[6];
    for (int i = 0; i < 6; ++i)
      if (!detail::parse_double(toks[2 + i], vals[i]))
        throw MalformedLine(line_no, line, "non-numeric field '" + toks[2 + i] + "'");
    d.score = vals[0];
    d.box = RotatedBox{vals[1], vals[2], vals[3], vals[4], vals[5] * kPi / 180.0}.canonicalized();
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace acm
