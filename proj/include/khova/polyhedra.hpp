#pragma once

#include <cstddef>
#include <vector>

#include "khova/linear.hpp"

namespace khova {

// Extreme rays and lineality basis of {y : A y >= 0, E y = 0}.
struct ConeGenerators {
  Mat rays;   // primitive integer vectors, sorted
  Mat lines;  // reduced echelon basis
};
ConeGenerators cone_generators(const Mat& inequalities, const Mat& equations, std::size_t dim);

// A rational polyhedron with both representations kept canonical:
// vertices and rays sorted, rays primitive, lines in reduced echelon form,
// inequalities irredundant with primitive integer normals.
struct Polyhedron {
  std::size_t dim = 0;
  Mat vertices;  // one point per minimal face (vertices when there are no lines)
  Mat rays;
  Mat lines;
  std::vector<LinearInequality> inequalities;  // a.x >= b
  std::vector<LinearInequality> equations;     // a.x == b

  static Polyhedron from_generators(std::size_t dim, const Mat& vertices, const Mat& rays = {},
                                    const Mat& lines = {});
  static Polyhedron from_inequalities(std::size_t dim, const std::vector<LinearInequality>& inequalities,
                                      const std::vector<LinearInequality>& equations = {});

  bool is_empty() const { return vertices.empty(); }
  bool is_bounded() const { return rays.empty() && lines.empty(); }
  bool contains(const Vec& x) const;
  // Inside the relative interior: every facet inequality is strict.
  bool in_relative_interior(const Vec& x) const;
  std::size_t affine_dimension() const;
};

// Both descriptions cut out the same set, checked generator by constraint in
// each direction.
bool same_set(const Polyhedron& a, const Polyhedron& b);

// q! times the Euclidean volume measured in the lattice Z^n intersected with
// the affine span, so a unimodular simplex has volume 1. Returns 0 when the
// polytope has smaller dimension than lattice_dim; throws PreconditionError
// when it is unbounded or larger.
Rational normalized_volume(const Polyhedron& p, std::size_t lattice_dim);

}  // namespace khova
