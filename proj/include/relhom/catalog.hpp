#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relhom/quiver.hpp"

namespace relhom::catalog {

inline AlgebraPtr a2(std::uint32_t p = 5) {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  return build_algebra(q, {}, {p}, 2);
}

inline AlgebraPtr a3() {
  Quiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"a", 0, 1}, {"b", 1, 2}};
  return build_algebra(q, {}, {7}, 3);
}

inline AlgebraPtr kronecker() {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
  return build_algebra(q, {}, {5}, 2);
}

inline AlgebraPtr dualnum() {
  Quiver q;
  q.vertices = {"v"};
  q.arrows = {{"x", 0, 0}};
  return build_algebra(q, {RelationSpec{{{1, {"x", "x"}}}}}, {5}, 2);
}

inline AlgebraPtr semisimple2() {
  Quiver q;
  q.vertices = {"1", "2"};
  return build_algebra(q, {}, {5}, 2);
}

inline AlgebraPtr point(std::uint32_t p, const std::string& label) {
  Quiver q;
  q.vertices = {label};
  return build_algebra(q, {}, {p}, 2);
}

struct Entry {
  std::string name;
  AlgebraPtr algebra;
};

/// The standard regression set.
inline std::vector<Entry> regression_set() {
  return {{"a2", a2()},
          {"a3", a3()},
          {"kronecker", kronecker()},
          {"dualnum", dualnum()},
          {"semisimple2", semisimple2()}};
}

struct NamedGluing {
  std::string name;
  TriangularGluing gluing;
};

/// Triangular gluings for the recollement harness. The a2+a2 case glues
/// to a linear four-vertex quiver of dimension 10, which needs p = 11.
inline std::vector<NamedGluing> standard_gluings() {
  std::vector<NamedGluing> out;
  out.push_back({"point+point->a2", {point(5, "s"), point(5, "t"), {{"c", "t", "s"}}, {}}});
  {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    out.push_back(
        {"a2+point->a3", {build_algebra(q, {}, {7}, 2), point(7, "0"), {{"c", "0", "1"}}, {}}});
  }
  out.push_back({"dualnum+point-product", {dualnum(), point(5, "w"), {}, {}}});
  {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    auto left = build_algebra(q, {}, {11}, 2);
    Quiver q2;
    q2.vertices = {"3", "4"};
    q2.arrows = {{"b", 0, 1}};
    auto right = build_algebra(q2, {}, {11}, 2);
    out.push_back({"a2+a2->a4", {left, right, {{"c", "3", "2"}}, {}}});
  }
  out.push_back({"semisimple2+point->a2-and-point",
                 {semisimple2(), point(5, "u"), {{"c", "u", "1"}}, {}}});
  {
    auto left = dualnum();
    Quiver q;
    q.vertices = {"w"};
    q.arrows = {{"y", 0, 0}};
    auto right = build_algebra(q, {RelationSpec{{{1, {"y", "y"}}}}}, {5}, 2);
    out.push_back({"dualnum+dualnum-product", {left, right, {}, {}}});
  }
  return out;
}

}  // namespace relhom::catalog
