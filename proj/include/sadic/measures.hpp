#pragma once

// Letter-measure simplex through nested cones of normalized telescoped columns.

#include "sadic/directive.hpp"
#include "sadic/quadratic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sadic {

using Box = std::vector<Interval>;

/// Normalized columns of M_{tau_{[1,n]}}.
struct MeasureCone {
  std::size_t depth = 0;
  RationalMatrix columns;  // d x d, every column non-negative with sum 1
  Rational diameter;       // max pairwise L1 distance of columns

  std::size_t dimension() const { return static_cast<std::size_t>(columns.rows()); }
  RationalVector column(std::size_t j) const { return columns.col(static_cast<Eigen::Index>(j)); }
  /// Per-coordinate [min_j, max_j] over the columns.
  Box box() const;
};

Rational l1_norm(const RationalVector& v);
Rational l1_distance(const RationalVector& a, const RationalVector& b);

/// Cone of an arbitrary non-negative square matrix with no zero column.
MeasureCone cone_of(const IntegerMatrix& product, std::size_t depth);

/// Cone at depth n (n = 0 gives the unit vectors). Requires a primitive sequence.
MeasureCone cone_at(const DirectiveSequence& ds, std::size_t n);

/// Coefficients K >= 0 with columns(n+1) = columns(n) K, each column of K summing to 1.
RationalMatrix nesting_coefficients(const DirectiveSequence& ds, std::size_t n);

/// Walks depths 0, 1, 2, ... reusing the running product.
class ConeSweep {
 public:
  explicit ConeSweep(const DirectiveSequence& ds);
  const MeasureCone& cone() const { return cone_; }
  const IntegerMatrix& product() const { return product_; }
  void advance();

 private:
  const DirectiveSequence* ds_;
  IntegerMatrix product_;
  MeasureCone cone_;
};

enum class ProbeKind { unique, multiple, inconclusive };
std::string to_string(ProbeKind k);

struct ProbeReport {
  ProbeKind kind = ProbeKind::inconclusive;
  /// Depth of the last cone examined (the certifying depth for "unique").
  std::size_t depth = 0;
  Rational eps;
  /// Box of the columns at `depth`; rigorous for every invariant measure.
  Box enclosure;
  /// For "multiple": one box per persistent cluster of columns, ordered by first column.
  std::vector<Box> clusters;
  /// Smallest L1 gap between clusters at the final depth.
  std::optional<Rational> cluster_gap;
  std::vector<Rational> diameters;  // per depth 0..depth
  bool truncated = false;           // max_depth cut down to a generator horizon
  std::string note;
};

/// "unique" once the cone diameter drops below eps; "multiple" when at least two
/// clusters (single linkage at 2 eps) persist with gap > 4 eps over the last quarter of
/// depths; "inconclusive" otherwise. Never reports more than d - 1 clusters.
/// Throws InputError for max_depth < 3 and PreconditionError for non-primitive input.
ProbeReport ergodicity_probe(const DirectiveSequence& ds, std::size_t max_depth, const Rational& eps);

/// Per-letter enclosure at the certifying depth. Throws InconclusiveError carrying the
/// probe verdict when the probe is not "unique".
Box letter_measure_enclosure(const DirectiveSequence& ds, std::size_t max_depth, const Rational& eps);

using QuadraticVector = std::vector<QuadraticNumber>;

/// Exact letter frequencies of an eventually periodic primitive sequence whose period
/// product has a rational or quadratic Perron root; empty otherwise.
std::optional<QuadraticVector> exact_letter_measure(const DirectiveSequence& ds);

/// Box of width <= width around each coordinate.
Box enclose(const QuadraticVector& v, const Rational& width);

nlohmann::json to_json(const ProbeReport& r);
nlohmann::json rational_json(const Rational& r);
nlohmann::json interval_json(const Interval& i);
nlohmann::json box_json(const Box& b);

}  // namespace sadic
