#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Everything here is deliberately naive: plain Gaussian elimination, Leibniz
// determinants, dense index tuples with bubble-sort signs.

#include <cstddef>
#include <map>
#include <vector>

#include "nonholonomy/forms.hpp"
#include "nonholonomy/sampling.hpp"
#include "nonholonomy/singularity.hpp"

namespace oracle {

using nonholonomy::Point;
using nonholonomy::Scalar;

/// Sorted index tuple -> coefficient; zero entries are never stored.
using Dense = std::map<std::vector<std::size_t>, Scalar>;

/// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int sort_sign(std::vector<std::size_t>& idx);

std::size_t rank(std::vector<std::vector<Scalar>> rows);
Scalar leibniz_det(const std::vector<std::vector<Scalar>>& m);

/// Value of the polynomial via direct monomial expansion.
Scalar eval(const nonholonomy::Polynomial& p, const Point& pt);
/// d p / d x_i at pt from Lagrange interpolation along the x_i line.
Scalar partial_at(const nonholonomy::Polynomial& p, std::size_t i, const Point& pt);

Dense at(const nonholonomy::DiffForm& a, const Point& pt);
std::vector<Scalar> at(const nonholonomy::VectorField& x, const Point& pt);
Dense add(const Dense& a, const Dense& b, const Scalar& scale = 1);
Dense wedge(const Dense& a, const Dense& b);
Dense power(const Dense& w, std::size_t k);
/// (d a)(pt) from oracle partials.
Dense d_at(const nonholonomy::DiffForm& a, const Point& pt);
/// (i_X a) with X and a already evaluated.
Dense iota(const std::vector<Scalar>& x, const Dense& a);
/// [X, Y](pt) from oracle partials.
std::vector<Scalar> bracket_at(const nonholonomy::VectorField& x, const nonholonomy::VectorField& y, const Point& pt);

/// Ranks of D and D + [D, D] at pt.
std::vector<std::size_t> two_step_flag(const std::vector<nonholonomy::VectorField>& frame, const Point& pt);

/// B^i_r as the signed sum over orderings of {0..n-1} \ {r}, the first m
/// entries feeding a^1..a^m and the rest an increasing A-tuple.
std::vector<Scalar> b_by_permutation_sum(const nonholonomy::FiberPoint& fp, std::size_t i);

/// Closed form k * sum sigma * a..a * A over {0..n-1} \ {0, r, l}. With
/// same_superscript every a-factor is a^i, otherwise a^1..a^m.
Scalar c_closed_form(const nonholonomy::FiberPoint& fp, std::size_t i, std::size_t r, std::size_t l,
                     bool same_superscript);

}  // namespace oracle
