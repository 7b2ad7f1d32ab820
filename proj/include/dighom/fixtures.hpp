#pragma once

// Named images: the m-gons, the irreducible 7- and 8-point images, the
// reducible 6-point image X6, the "Klein" image, the nested-loop images and
// the fifteen 7-point survivors of the two-lemma filter.

#include <map>
#include <string>
#include <vector>

#include "dighom/image.hpp"

namespace dighom {

namespace detail {

inline DigitalImage labeled(std::size_t n, const std::vector<Edge>& edges, std::vector<std::string> labels) {
  auto img = build_image(n, edges);
  img.set_labels(std::move(labels));
  return img;
}

// Survivor drawings give each drawn node a printed label; edges are listed
// between drawn nodes. label_of_node[k] is the printed label of node k.
inline DigitalImage from_drawing(const std::vector<Vertex>& label_of_node, const std::vector<Edge>& node_edges) {
  std::vector<Edge> edges;
  for (auto [a, b] : node_edges) edges.emplace_back(label_of_node[a], label_of_node[b]);
  return build_image(label_of_node.size(), edges);
}

inline const std::vector<DigitalImage>& appendix_images() {
  static const std::vector<DigitalImage> images = [] {
    const std::vector<Vertex> id = {0, 1, 2, 3, 4, 5, 6};
    std::vector<DigitalImage> out;
    out.push_back(from_drawing(id, {{0, 1}, {0, 6}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}));
    out.push_back(from_drawing(id, {{0, 1}, {0, 5}, {0, 6}, {1, 2}, {2, 3}, {3, 4}, {3, 6}, {4, 5}}));
    out.push_back(from_drawing({6, 5, 2, 1, 0, 3, 4},
                               {{0, 1}, {0, 5}, {0, 6}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {3, 6}, {4, 5}}));
    out.push_back(from_drawing({5, 4, 1, 0, 3, 6, 2},
                               {{0, 1}, {0, 5}, {0, 6}, {1, 2}, {1, 4}, {2, 3}, {2, 6}, {3, 4}, {4, 5}}));
    out.push_back(from_drawing(id, {{0, 1}, {0, 5}, {0, 6}, {1, 2}, {2, 3}, {2, 6}, {3, 4}, {4, 5}}));
    out.push_back(from_drawing(id, {{0, 1}, {0, 3}, {0, 6}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}));
    out.push_back(from_drawing({0, 4, 6, 5, 3, 2, 1},
                               {{0, 1}, {0, 3}, {0, 6}, {1, 2}, {1, 4}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}));
    out.push_back(from_drawing({0, 1, 2, 5, 6, 3, 4}, {{0, 1}, {0, 3}, {0, 6}, {1, 2}, {1, 4}, {2, 3}, {2, 5},
                                                       {3, 4}, {4, 5}, {5, 6}}));
    out.push_back(from_drawing(id, {{0, 1}, {0, 3}, {0, 6}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}}));
    out.push_back(
        from_drawing(id, {{0, 1}, {0, 3}, {0, 6}, {1, 2}, {1, 5}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}}));
    out.push_back(
        from_drawing(id, {{0, 1}, {0, 3}, {0, 6}, {1, 2}, {1, 6}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}}));
    out.push_back(from_drawing({0, 5, 6, 1, 2, 3, 4},
                               {{0, 1}, {0, 3}, {0, 6}, {1, 2}, {1, 5}, {2, 3}, {3, 4}, {4, 5}, {5, 6}}));
    out.push_back(from_drawing({1, 0, 3, 2, 4, 5, 6},
                               {{0, 1}, {0, 3}, {0, 5}, {0, 6}, {1, 4}, {2, 3}, {2, 4}, {4, 5}, {4, 6}}));
    out.push_back(from_drawing(id, {{0, 1}, {0, 6}, {1, 2}, {2, 3}, {2, 4}, {2, 6}, {3, 5}, {4, 5}}));
    out.push_back(from_drawing({0, 6, 3, 2, 5, 1, 4},
                               {{0, 1}, {0, 5}, {0, 6}, {1, 2}, {2, 3}, {2, 4}, {2, 6}, {3, 5}, {4, 5}}));
    return out;
  }();
  return images;
}

inline std::map<std::string, DigitalImage> build_fixtures() {
  std::map<std::string, DigitalImage> f;
  for (std::size_t m : {5, 6, 7, 8}) f["C" + std::to_string(m)] = cycle_image(m);

  // Hexagon a..f with a center g joined to a and d.
  f["IMG7_1"] = labeled(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 6}, {6, 3}},
                        {"a", "b", "c", "d", "e", "f", "g"});
  // Triangle 0,1,2 with spokes 0-3-6, 1-4-6, 2-5-6.
  f["IMG7_2"] = build_image(7, {{0, 1}, {0, 2}, {1, 4}, {0, 3}, {3, 6}, {4, 6}, {5, 6}, {1, 2}, {5, 2}});

  // Heptagon a,b,b1,c,d,e,f with a center g joined to a and d.
  f["IMG8_1"] = labeled(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0}, {0, 7}, {7, 4}},
                        {"a", "b", "b1", "c", "d", "e", "f", "g"});
  // Octagon a,b,b1,c,d,e,h,f with the chord a-d.
  f["IMG8_2"] = labeled(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}, {0, 4}},
                        {"a", "b", "b1", "c", "d", "e", "h", "f"});
  // Pentagon a..e, triangle c-d-g, and the spoke g-f-f1-a.
  f["IMG8_3"] = labeled(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {3, 7}, {7, 2}, {7, 5}, {5, 6}, {6, 0}},
                        {"a", "b", "c", "d", "e", "f", "f1", "g"});
  // Heptagon a,b1,b,c,d,e,e1, triangle c-d-g, and the spoke g-a.
  f["IMG8_4"] = labeled(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0}, {4, 7}, {7, 3}, {7, 0}},
                        {"a", "b1", "b", "c", "d", "e", "e1", "g"});

  // Pentagon x0..x4 plus x4' joined to x3 and x0.
  f["X6"] = labeled(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {3, 5}, {5, 0}},
                    {"x0", "x1", "x2", "x3", "x4", "x4'"});

  // Inner pentagon 0..4, outer pentagon 5..9, radial spokes, plus the four
  // long edges b1-e2, c1-d2, d1-c2, e1-b2.
  f["KLEIN"] = labeled(10,
                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 5},
                        {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}, {1, 9}, {2, 8}, {3, 7}, {4, 6}},
                       {"a1", "b1", "c1", "d1", "e1", "a2", "b2", "c2", "d2", "e2"});

  // Hexagon a..f around a pentagon a'..e'; spokes a-a', .., e-e', f-e'.
  f["NESTED_6_5"] = labeled(11,
                            {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {6, 7}, {7, 8}, {8, 9}, {9, 10},
                             {10, 6}, {0, 6}, {1, 7}, {2, 8}, {3, 9}, {4, 10}, {5, 10}},
                            {"a", "b", "c", "d", "e", "f", "a'", "b'", "c'", "d'", "e'"});
  // Pentagon a'..e' inside hexagon a..f inside pentagon a''..e''.
  f["NESTED_5_6_5"] = labeled(
      16,
      {{0, 1},  {1, 2},  {2, 3},  {3, 4},  {4, 5},  {5, 0},  {6, 7},  {7, 8},   {8, 9},  {9, 10},
       {10, 6}, {11, 12}, {12, 13}, {13, 14}, {14, 15}, {15, 11}, {11, 0}, {0, 6}, {12, 1}, {1, 7},
       {13, 2}, {2, 8},  {14, 3}, {3, 9},  {15, 4}, {4, 10}, {15, 5}, {5, 10}},
      {"a", "b", "c", "d", "e", "f", "a'", "b'", "c'", "d'", "e'", "a''", "b''", "c''", "d''", "e''"});
  // Two 7-loops sharing the arc f,g,a,b,c: outer c-d1-e1-f, inner c-d2-e2-f,
  // with rungs d1-d2 and e1-e2.
  f["TWIN_7"] = labeled(9,
                        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 7}, {7, 8}, {8, 0}, {2, 5}, {5, 6}, {6, 7},
                         {3, 5}, {4, 6}},
                        {"a", "b", "c", "d1", "e1", "d2", "e2", "f", "g"});

  const auto& appendix = appendix_images();
  for (std::size_t i = 0; i < appendix.size(); ++i) f["APPENDIX_" + std::to_string(i + 1)] = appendix[i];
  return f;
}

}  // namespace detail

inline const std::map<std::string, DigitalImage>& fixtures() {
  static const auto table = detail::build_fixtures();
  return table;
}

inline std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, img] : fixtures()) names.push_back(name);
  return names;
}

inline DigitalImage named_image(const std::string& name) {
  const auto& table = fixtures();
  auto it = table.find(name);
  if (it == table.end()) throw error("unknown fixture '" + name + "'");
  return it->second;
}

}  // namespace dighom
